//! Closed-form generators: the nine quadrics through the sextic, the
//! constants alpha, beta, gamma read off at the distinguished point, and the
//! two cubics cutting out the secant variety.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve_embed::ThetaEmbedding;
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergContext;
use crate::polyspace::{FormSubspace, HomogeneousForm};

/// Relative tolerance for the constant relations.
pub const RELATION_TOL: f64 = 1e-9;

/// Relative tolerance for the coefficient-wise derivative identities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Tolerance for a partial derivative lying in the quadric span.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `|lhs - rhs| / (1 + |lhs|)`.
fn rel(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm())
}

/// A named scalar identity and how far it is from holding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
}

impl RelationCheck {
    fn new(name: &str, lhs: Complex64, rhs: Complex64) -> Self {
        Self {
            name: name.into(),
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            residual: rel(lhs, rhs),
        }
    }

    pub fn pass(&self) -> bool {
        self.residual < RELATION_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadricConstants {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// The distinguished point `c` the constants were read at.
    pub eval_point: Complex64,
    /// Embedding coordinates at `c` (not normalized).
    pub coords: Vec<Complex64>,
}

impl QuadricConstants {
    /// Constants from the coordinates of a point where only `x_0` vanishes,
    /// without checking the relations.
    pub fn evaluate(eval_point: Complex64, x: &[Complex64]) -> Result<Self> {
        if x.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                found: x.len(),
            });
        }
        Ok(Self {
            alpha: -x[3] * x[3] / (x[2] * x[4] + x[5] * x[1]),
            beta: x[3] * x[3] / (x[2] * x[4] - x[5] * x[1]),
            gamma: -x[3] * x[4] / (x[2] * x[5]),
            eval_point,
            coords: x.to_vec(),
        })
    }

    /// As [`QuadricConstants::evaluate`], failing if any relation is off.
    pub fn from_coords(eval_point: Complex64, x: &[Complex64]) -> Result<Self> {
        let k = Self::evaluate(eval_point, x)?;
        if let Some(bad) = k.relations().into_iter().find(|r| !r.pass()) {
            return Err(Error::RelationFailure(format!(
                "{} off by {:e} (lhs {:?}, rhs {:?})",
                bad.name, bad.residual, bad.lhs, bad.rhs
            )));
        }
        Ok(k)
    }

    /// Every identity the constants satisfy at `c`, including the
    /// intermediate ones used to derive the two main relations.
    pub fn relations(&self) -> Vec<RelationCheck> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let x = &self.coords;
        let finite = a.is_finite() && b.is_finite() && g.is_finite();
        let nonzero = if finite {
            a.norm().min(b.norm()).min(g.norm())
        } else {
            0.0
        };
        vec![
            RelationCheck::new("alpha_beta_sum", a * b * (a + b), cx(-2.0)),
            RelationCheck::new("gamma_eq_alpha_beta", g, a * b),
            RelationCheck::new("inverse_sum", a.inv() + b.inv(), -x[5] * x[1] * 2.0 / (x[3] * x[3])),
            RelationCheck::new("sum_via_x1", a + b, -x[1] * x[1] * 2.0 / (x[3] * x[5])),
            RelationCheck::new("sum_via_x5", a + b, -x[5] * x[5] * 2.0 / (x[1] * x[3])),
            RelationCheck::new("product_via_coords", a * b, x[1] * x[3] / (x[5] * x[5])),
            // Pass iff all three constants are nonzero and alpha != -beta.
            RelationCheck {
                name: "constants_nondegenerate".into(),
                lhs: [nonzero.min((a + b).norm()), 0.0],
                rhs: [0.0, 0.0],
                residual: if nonzero > RELATION_TOL && (a + b).norm() > RELATION_TOL {
                    0.0
                } else {
                    f64::INFINITY
                },
            },
        ]
    }
}

/// Reads the constants off a validated embedding at its distinguished point.
pub fn compute_constants(e: &ThetaEmbedding) -> Result<QuadricConstants> {
    if e.n() != 6 {
        return Err(Error::InvalidArgument(format!(
            "constants are defined for n = 6, got {}",
            e.n()
        )));
    }
    let c = e.c()?;
    QuadricConstants::from_coords(c, &e.coordinates(c)?)
}

/// Builds `sum_i coeff_i * prod x_j^{e_ij}` in six variables.
fn form(degree: usize, terms: &[(Complex64, &[usize])]) -> HomogeneousForm {
    let mut f = HomogeneousForm::zero(5, degree);
    for (coeff, vars) in terms {
        let mut e = vec![0u32; 6];
        for &v in *vars {
            e[v] += 1;
        }
        f.add_term(e, *coeff).expect("well-formed term");
    }
    f
}

/// The basis `Q_0, Q_1, Q_2, Q_0', Q_1', Q_2', Q_0'', Q_1'', Q_2''` of the
/// quadrics through the sextic.
#[derive(Debug, Clone)]
pub struct ExplicitQuadrics {
    forms: Vec<HomogeneousForm>,
    constants: QuadricConstants,
}

pub const QUADRIC_NAMES: [&str; 9] = ["Q0", "Q1", "Q2", "Q0'", "Q1'", "Q2'", "Q0''", "Q1''", "Q2''"];

impl ExplicitQuadrics {
    pub fn forms(&self) -> &[HomogeneousForm] {
        &self.forms
    }

    pub fn constants(&self) -> &QuadricConstants {
        &self.constants
    }

    pub fn q(&self, i: usize) -> &HomogeneousForm {
        &self.forms[i]
    }

    pub fn q_prime(&self, i: usize) -> &HomogeneousForm {
        &self.forms[3 + i]
    }

    pub fn q_double_prime(&self, i: usize) -> &HomogeneousForm {
        &self.forms[6 + i]
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, &HomogeneousForm)> {
        QUADRIC_NAMES.iter().copied().zip(&self.forms)
    }

    pub fn span(&self) -> Result<FormSubspace> {
        FormSubspace::span(&self.forms)
    }

    /// Residuals of the Heisenberg structure of the basis: `sigma` steps
    /// through each triple and `tau` fixes `Q_0`, `Q_0'` and scales `Q_0''`
    /// by `eps`.
    pub fn structure_residuals(&self) -> Vec<(String, f64)> {
        let h = HeisenbergContext::new(6).expect("n = 6");
        let diff = |a: &HomogeneousForm, b: &HomogeneousForm| (a - b).coeff_norm() / b.coeff_norm();
        let mut out = Vec::new();
        for (t, suffix) in ["", "p", "pp"].iter().enumerate() {
            for i in 0..2 {
                let lhs = h.act_sigma_form(&self.forms[3 * t + i]);
                out.push((
                    format!("sigma_q{i}{suffix}_to_q{}{suffix}", i + 1),
                    diff(&lhs, &self.forms[3 * t + i + 1]),
                ));
            }
        }
        out.push(("tau_fixes_q0".into(), diff(&h.act_tau_form(self.q(0)), self.q(0))));
        out.push((
            "tau_fixes_q0p".into(),
            diff(&h.act_tau_form(self.q_prime(0)), self.q_prime(0)),
        ));
        out.push((
            "tau_scales_q0pp".into(),
            diff(
                &h.act_tau_form(self.q_double_prime(0)),
                &(self.q_double_prime(0) * h.epsilon()),
            ),
        ));
        out
    }
}

pub fn build_quadrics(k: &QuadricConstants) -> ExplicitQuadrics {
    let (a, b, g) = (k.alpha, k.beta, k.gamma);
    let one = cx(1.0);
    let forms = vec![
        form(2, &[(one, &[0, 0]), (one, &[3, 3]), (a, &[2, 4]), (a, &[5, 1])]),
        form(2, &[(one, &[1, 1]), (one, &[4, 4]), (a, &[3, 5]), (a, &[0, 2])]),
        form(2, &[(one, &[2, 2]), (one, &[5, 5]), (a, &[4, 0]), (a, &[1, 3])]),
        form(2, &[(one, &[0, 0]), (-one, &[3, 3]), (b, &[2, 4]), (-b, &[5, 1])]),
        form(2, &[(one, &[1, 1]), (-one, &[4, 4]), (b, &[3, 5]), (-b, &[0, 2])]),
        form(2, &[(one, &[2, 2]), (-one, &[5, 5]), (b, &[4, 0]), (-b, &[1, 3])]),
        form(2, &[(one, &[0, 1]), (one, &[3, 4]), (g, &[2, 5])]),
        form(2, &[(one, &[1, 2]), (one, &[4, 5]), (g, &[3, 0])]),
        form(2, &[(one, &[2, 3]), (one, &[5, 0]), (g, &[4, 1])]),
    ];
    ExplicitQuadrics {
        forms,
        constants: k.clone(),
    }
}

/// The two cubics generating the ideal of the secant variety.
#[derive(Debug, Clone)]
pub struct SecantCubics {
    pub f1: HomogeneousForm,
    pub f2: HomogeneousForm,
}

impl SecantCubics {
    pub fn forms(&self) -> [&HomogeneousForm; 2] {
        [&self.f1, &self.f2]
    }

    pub fn span(&self) -> Result<FormSubspace> {
        FormSubspace::span(&[self.f1.clone(), self.f2.clone()])
    }
}

/// `2(a^2 b^2 - a - b) x_s x_{s+2} x_{s+4}` plus the orbit of
/// `-2 x_s^3 + 2(b - a) x_{s+1} x_{s+2} x_{s+3} + ab(b - a) x_s x_{s+3}^2`
/// under the shift by two.
fn secant_cubic(k: &QuadricConstants, s: usize) -> HomogeneousForm {
    let (a, b) = (k.alpha, k.beta);
    let lead = (a * a * b * b - a - b) * 2.0;
    let seed = form(
        3,
        &[
            (cx(-2.0), &[s, s, s]),
            ((b - a) * 2.0, &[s + 1, s + 2, s + 3].map(|i| i % 6)),
            (a * b * (b - a), &[s, (s + 3) % 6, (s + 3) % 6]),
        ],
    );
    let mut f = form(3, &[(lead, &[s, s + 2, s + 4].map(|i| i % 6))]);
    for shift in [0, 2, 4] {
        f = &f + &seed.permute_variables(|m| (m + shift) % 6);
    }
    f
}

/// Expands both cubics and checks that their monomials are distinct and
/// that they span a plane.
pub fn build_secant_cubics(k: &QuadricConstants) -> Result<SecantCubics> {
    let sc = SecantCubics {
        f1: secant_cubic(k, 0),
        f2: secant_cubic(k, 1),
    };
    for (name, f) in [("F1", &sc.f1), ("F2", &sc.f2)] {
        if f.num_terms() != 10 {
            return Err(Error::RelationFailure(format!(
                "{name} has {} monomials, expected 10 distinct ones",
                f.num_terms()
            )));
        }
    }
    if sc.f1.terms().any(|(e, _)| sc.f2.coefficient(e) != cx(0.0)) {
        return Err(Error::RelationFailure("F1 and F2 share a monomial".into()));
    }
    if sc.span()?.dim() != 2 {
        return Err(Error::RelationFailure("F1 and F2 are linearly dependent".into()));
    }
    Ok(sc)
}

/// Outcome of one coefficient-space identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: String, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

/// Checks the two displayed derivative identities for `F1` and membership of
/// all twelve first partials in the quadric span.
pub fn verify_derivative_identities(sc: &SecantCubics, eq: &ExplicitQuadrics) -> Result<Vec<IdentityCheck>> {
    let k = eq.constants();
    let (a, b) = (k.alpha, k.beta);
    let h = a * b * (b - a) / 2.0;
    let rel_diff = |f: &HomogeneousForm, g: &HomogeneousForm| (f - g).coeff_norm() / f.coeff_norm();

    let d0 = sc.f1.partial_derivative(0)?;
    let rhs0 = &(eq.q(0) * (h - 3.0)) + &(eq.q_prime(0) * (-h - 3.0));
    let d1 = sc.f1.partial_derivative(1)?;
    let rhs1 = eq.q_double_prime(2) * ((b - a) * 2.0);

    let mut out = vec![
        IdentityCheck::new("df1_dx0_identity".into(), rel_diff(&d0, &rhs0), IDENTITY_TOL),
        IdentityCheck::new("df1_dx1_identity".into(), rel_diff(&d1, &rhs1), IDENTITY_TOL),
    ];
    let span = eq.span()?;
    for (fi, f) in sc.forms().iter().enumerate() {
        for i in 0..6 {
            let d = f.partial_derivative(i)?;
            out.push(IdentityCheck::new(
                format!("df{}_dx{i}_in_quadrics", fi + 1),
                span.membership_residual(&d)?,
                MEMBERSHIP_TOL,
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::act_sigma_form;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn embedding(tau: Complex64) -> ThetaEmbedding {
        let mut e = ThetaEmbedding::sextic(tau).unwrap();
        e.validate().unwrap();
        e
    }

    #[test]
    fn constants_satisfy_relations() {
        for tau in [c(0.0, 1.0), c(0.5, 1.0), c(0.3, 1.2)] {
            let k = compute_constants(&embedding(tau)).unwrap();
            for r in k.relations() {
                assert!(r.pass(), "{tau}: {} residual {:e}", r.name, r.residual);
            }
        }
    }

    #[test]
    fn bogus_coordinates_fail_relations() {
        let x = [0.0, 1.0, 0.7, 1.3, -0.4, 0.9].map(|r| c(r, 0.1));
        assert!(matches!(
            QuadricConstants::from_coords(c(0.0, 0.0), &x),
            Err(Error::RelationFailure(_))
        ));
    }

    fn constants() -> QuadricConstants {
        compute_constants(&embedding(c(0.0, 1.0))).unwrap()
    }

    #[test]
    fn q0_has_four_terms() {
        let k = constants();
        let eq = build_quadrics(&k);
        let v = eq.q(0).coefficient_vector();
        let nz: Vec<Complex64> = v.iter().copied().filter(|z| z.norm() > 0.0).collect();
        assert_eq!(nz, vec![c(1.0, 0.0), k.alpha, k.alpha, c(1.0, 0.0)]);
    }

    #[test]
    fn quadric_structure() {
        let eq = build_quadrics(&constants());
        let res = eq.structure_residuals();
        assert_eq!(res.len(), 9);
        for (name, r) in res {
            assert!(r < 1e-14, "{name}: {r:e}");
        }
        assert_eq!(eq.span().unwrap().dim(), 9);
    }

    #[test]
    fn cubic_coefficients() {
        let k = constants();
        let sc = build_secant_cubics(&k).unwrap();
        let (a, b) = (k.alpha, k.beta);
        assert_eq!(sc.f1.coefficient(&[1, 0, 1, 0, 1, 0]), (a * a * b * b - a - b) * 2.0);
        assert_eq!(sc.f1.coefficient(&[3, 0, 0, 0, 0, 0]), c(-2.0, 0.0));
        assert_eq!(sc.f2.coefficient(&[0, 1, 0, 1, 0, 1]), (a * a * b * b - a - b) * 2.0);
        assert_eq!(act_sigma_form(&sc.f1), sc.f2);
        assert_eq!(act_sigma_form(&sc.f2), sc.f1);
    }

    #[test]
    fn derivative_identities_hold() {
        let k = constants();
        let eq = build_quadrics(&k);
        let sc = build_secant_cubics(&k).unwrap();
        let checks = verify_derivative_identities(&sc, &eq).unwrap();
        assert_eq!(checks.len(), 14);
        for ch in checks {
            assert!(ch.pass, "{}: {:e}", ch.name, ch.residual);
        }
    }

    #[test]
    fn full_index_orbit_breaks_the_identity() {
        // Summing the seed over every shift 0, 1, 2 instead of the even
        // shifts gives a cubic whose x0-partial leaves the quadric span.
        let k = constants();
        let (a, b) = (k.alpha, k.beta);
        let seed = form(
            3,
            &[
                (c(-2.0, 0.0), &[0, 0, 0]),
                ((b - a) * 2.0, &[1, 2, 3]),
                (a * b * (b - a), &[0, 3, 3]),
            ],
        );
        let mut f = form(3, &[((a * a * b * b - a - b) * 2.0, &[0, 2, 4])]);
        for shift in 0..3 {
            f = &f + &seed.permute_variables(|m| (m + shift) % 6);
        }
        let span = build_quadrics(&k).span().unwrap();
        assert!(span.membership_residual(&f.partial_derivative(0).unwrap()).unwrap() > 1e-3);
    }
}
