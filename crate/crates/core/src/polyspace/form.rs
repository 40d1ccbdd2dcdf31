use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::curve_embed::ProjectivePoint;
use crate::error::{Error, Result};

/// Coefficients below this modulus are dropped.
const PRUNE: f64 = 1e-30;

/// Exponent vector ordered so that iteration follows the global graded-lex
/// order (`x0^2 > x0 x1 > ... > x_d^2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `C(d+k, k)` exponent vectors of degree `k` in `d+1` variables, in
/// graded-lexicographic order.
pub fn monomials(d: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, remaining_vars: usize, out: &mut Vec<Vec<u32>>) {
        if remaining_vars == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, remaining_vars - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(d + k, k));
    rec(&mut Vec::with_capacity(d + 1), k as u32, d + 1, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of one degree with an index lookup.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(d: usize, k: usize) -> Self {
        let list = monomials(d, k);
        let index = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.list[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.list.iter().map(|m| m.as_slice())
    }
}

/// A homogeneous form of fixed degree in `ambient_dim + 1` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousForm {
    ambient_dim: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl HomogeneousForm {
    pub fn zero(ambient_dim: usize, degree: usize) -> Self {
        Self {
            ambient_dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(ambient_dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        let mut f = Self::zero(ambient_dim, degree);
        for (exps, c) in terms {
            f.add_term(exps, c)?;
        }
        Ok(f)
    }

    /// The coordinate function `x_i`.
    pub fn variable(ambient_dim: usize, i: usize) -> Self {
        let mut e = vec![0; ambient_dim + 1];
        e[i] = 1;
        let mut f = Self::zero(ambient_dim, 1);
        f.terms.insert(Monomial(e), Complex64::new(1.0, 0.0));
        f
    }

    /// A single monomial `coeff * prod x_i^{exps_i}`.
    pub fn monomial(exps: Vec<u32>, coeff: Complex64) -> Self {
        let d = exps.len() - 1;
        let k = exps.iter().map(|&e| e as usize).sum();
        let mut f = Self::zero(d, k);
        if coeff.norm() >= PRUNE {
            f.terms.insert(Monomial(exps), coeff);
        }
        f
    }

    /// Adds `c` to the coefficient of `exps`, merging and pruning.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Complex64) -> Result<()> {
        if exps.len() != self.ambient_dim + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim + 1,
                found: exps.len(),
            });
        }
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if deg != self.degree {
            return Err(Error::InvalidArgument(format!(
                "monomial {exps:?} has degree {deg}, form has degree {}",
                self.degree
            )));
        }
        let key = Monomial(exps);
        let v = self.terms.get(&key).copied().unwrap_or_default() + c;
        if v.norm() < PRUNE {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vars(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), *c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Complex64 {
        self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or_default()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).fold(0.0, |a, b| a + b).sqrt()
    }

    pub fn evaluate_coords(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                found: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(x)
                    .filter(|(&e, _)| e > 0)
                    .fold(*c, |acc, (&e, xi)| acc * xi.powu(e))
            })
            .sum())
    }

    /// Value at the canonical representative of `p`.
    pub fn evaluate(&self, p: &ProjectivePoint) -> Result<Complex64> {
        self.evaluate_coords(p.coords())
    }

    /// `|f(p)| / (|f| |p|^deg)`, a scale-free vanishing measure.
    pub fn relative_residual(&self, p: &ProjectivePoint) -> Result<f64> {
        let v = self.evaluate(p)?;
        let scale = self.coeff_norm() * p.norm().powi(self.degree as i32);
        Ok(if scale == 0.0 { v.norm() } else { v.norm() / scale })
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InvalidArgument("cannot differentiate a constant".into()));
        }
        if i > self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim + 1,
                found: i + 1,
            });
        }
        let mut out = Self::zero(self.ambient_dim, self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(exps, c * e as f64)?;
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut out = Self::zero(self.ambient_dim, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.ambient_dim, self.degree);
        for (m, c) in &self.terms {
            let v = c * s;
            if v.norm() >= PRUNE {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert_eq!(
            (self.ambient_dim, self.degree),
            (other.ambient_dim, other.degree),
            "forms must share ambient dimension and degree"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c * sign).expect("shapes checked above");
        }
        out
    }

    /// Coefficients in the canonical monomial order.
    pub fn coefficient_vector(&self) -> DVector<Complex64> {
        let basis = MonomialBasis::new(self.ambient_dim, self.degree);
        let mut v = DVector::zeros(basis.len());
        for (m, c) in &self.terms {
            v[basis.index_of(&m.0).expect("exponents validated on insert")] = *c;
        }
        v
    }

    pub fn from_coefficients(ambient_dim: usize, degree: usize, coeffs: &[Complex64]) -> Result<Self> {
        let basis = MonomialBasis::new(ambient_dim, degree);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Self::from_terms(
            ambient_dim,
            degree,
            basis.iter().zip(coeffs).map(|(m, c)| (m.to_vec(), *c)),
        )
    }

    /// Renames variables: `x_i` becomes `x_{map(i)}`.
    pub fn permute_variables(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.ambient_dim, self.degree);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.num_vars()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map(i)] += e;
            }
            out.add_term(exps, *c).expect("permutation preserves shape");
        }
        out
    }

    /// Substitutes `x_i -> s_i x_i`.
    pub fn scale_variables(&self, s: &[Complex64]) -> Self {
        let mut out = Self::zero(self.ambient_dim, self.degree);
        for (m, c) in &self.terms {
            let f = m.0.iter().zip(s).fold(*c, |acc, (&e, si)| acc * si.powu(e));
            out.add_term(m.0.clone(), f).expect("same shape");
        }
        out
    }

    /// Linear change of variables `y = L x`: returns `g(x) = f(L x)` where
    /// `L` has one row per variable of `f`.
    pub fn substitute(&self, l: &DMatrix<Complex64>) -> Result<Self> {
        if l.nrows() != self.num_vars() || l.ncols() < 2 {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                found: l.nrows(),
            });
        }
        let new_d = l.ncols() - 1;
        let linear: Vec<HomogeneousForm> = (0..l.nrows())
            .map(|j| {
                HomogeneousForm::from_terms(
                    new_d,
                    1,
                    (0..l.ncols()).map(|i| {
                        let mut e = vec![0; new_d + 1];
                        e[i] = 1;
                        (e, l[(j, i)])
                    }),
                )
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(new_d, self.degree);
        for (m, c) in &self.terms {
            let mut prod = HomogeneousForm::monomial(vec![0; new_d + 1], *c);
            for (j, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.multiply(&linear[j])?;
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Canonical text serialization: one `re im e0 ... ed` line per term in
    /// monomial order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&format!("{:e} {:e}", c.re, c.im));
            for e in &m.0 {
                s.push_str(&format!(" {e}"));
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`HomogeneousForm::to_text`] output. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_text(text: &str, ambient_dim: usize, degree: usize) -> Result<Self> {
        let mut f = Self::zero(ambient_dim, degree);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != ambient_dim + 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    ambient_dim + 3,
                    fields.len()
                )));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let c = Complex64::new(num(fields[0])?, num(fields[1])?);
            let exps = fields[2..]
                .iter()
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            f.add_term(exps, c)?;
        }
        Ok(f)
    }
}

impl Add for &HomogeneousForm {
    type Output = HomogeneousForm;
    fn add(self, rhs: Self) -> HomogeneousForm {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &HomogeneousForm {
    type Output = HomogeneousForm;
    fn sub(self, rhs: Self) -> HomogeneousForm {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &HomogeneousForm {
    type Output = HomogeneousForm;
    fn neg(self) -> HomogeneousForm {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &HomogeneousForm {
    type Output = HomogeneousForm;
    fn mul(self, rhs: Complex64) -> HomogeneousForm {
        self.scale(rhs)
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
