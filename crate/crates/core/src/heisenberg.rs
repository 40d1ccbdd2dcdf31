//! Action of the discrete Heisenberg group `H_n` on coordinates and forms,
//! and the isotypic decomposition of the 21 quadrics in six variables.
//!
//! On forms, `sigma` substitutes `x_m -> x_{m+1}` and `tau` substitutes
//! `x_m -> eps^m x_m` with `eps = exp(2 pi i / n)`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyspace::{containment_defect, intersection, FormSubspace, HomogeneousForm};

/// Residual under which a subspace counts as invariant.
pub const INVARIANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergContext {
    n: usize,
    epsilon: Complex64,
}

impl HeisenbergContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "Heisenberg group needs n >= 2, got {n}"
            )));
        }
        Ok(Self {
            n,
            epsilon: Complex64::from_polar(1.0, 2.0 * PI / n as f64),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    fn check(&self, f: &HomogeneousForm) {
        assert_eq!(
            f.num_vars(),
            self.n,
            "form has {} variables, group acts on {}",
            f.num_vars(),
            self.n
        );
    }

    pub fn act_sigma_form(&self, f: &HomogeneousForm) -> HomogeneousForm {
        self.check(f);
        let n = self.n;
        f.permute_variables(|m| (m + 1) % n)
    }

    pub fn act_tau_form(&self, f: &HomogeneousForm) -> HomogeneousForm {
        self.check(f);
        let scales: Vec<Complex64> = (0..self.n).map(|m| self.epsilon.powu(m as u32)).collect();
        f.scale_variables(&scales)
    }

    /// Largest coefficient-space defect of `S` under both generators.
    pub fn invariance_defect(&self, s: &FormSubspace) -> Result<f64> {
        if s.dim() == 0 {
            return Ok(0.0);
        }
        let sigma = s.map_forms(|f| self.act_sigma_form(f))?;
        let tau = s.map_forms(|f| self.act_tau_form(f))?;
        Ok(containment_defect(&sigma, s)?.max(containment_defect(&tau, s)?))
    }
}

pub fn act_sigma_form(f: &HomogeneousForm) -> HomogeneousForm {
    HeisenbergContext::new(f.num_vars())
        .expect("forms have at least two variables")
        .act_sigma_form(f)
}

pub fn act_tau_form(f: &HomogeneousForm) -> HomogeneousForm {
    HeisenbergContext::new(f.num_vars())
        .expect("forms have at least two variables")
        .act_tau_form(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Isotypic {
    V0Plus,
    V0Minus,
    V1Plus,
    V1Minus,
    V2Plus,
    V2Minus,
    V3,
}

impl Isotypic {
    pub const ALL: [Isotypic; 7] = [
        Isotypic::V0Plus,
        Isotypic::V0Minus,
        Isotypic::V1Plus,
        Isotypic::V1Minus,
        Isotypic::V2Plus,
        Isotypic::V2Minus,
        Isotypic::V3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Isotypic::V0Plus => "V0p",
            Isotypic::V0Minus => "V0m",
            Isotypic::V1Plus => "V1p",
            Isotypic::V1Minus => "V1m",
            Isotypic::V2Plus => "V2p",
            Isotypic::V2Minus => "V2m",
            Isotypic::V3 => "V3",
        }
    }

    /// Spanning quadrics `x_i x_{i+j} +- x_{i+3} x_{i+3+j}` for `i = 0, 1, 2`.
    fn generators(self) -> Vec<HomogeneousForm> {
        let (j, sign) = match self {
            Isotypic::V0Plus => (0, 1.0),
            Isotypic::V0Minus => (0, -1.0),
            Isotypic::V1Plus => (1, 1.0),
            Isotypic::V1Minus => (1, -1.0),
            Isotypic::V2Plus => (2, 1.0),
            Isotypic::V2Minus => (2, -1.0),
            Isotypic::V3 => (3, 0.0),
        };
        (0..3)
            .map(|i| {
                let a = quadric_monomial(i, i + j);
                if j == 3 {
                    a
                } else {
                    &a + &(&quadric_monomial(i + 3, i + 3 + j) * Complex64::new(sign, 0.0))
                }
            })
            .collect()
    }
}

impl fmt::Display for Isotypic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn quadric_monomial(i: usize, j: usize) -> HomogeneousForm {
    let mut e = vec![0u32; 6];
    e[i % 6] += 1;
    e[j % 6] += 1;
    HomogeneousForm::monomial(e, Complex64::new(1.0, 0.0))
}

/// The decomposition of the 21 quadrics in six variables into seven
/// three-dimensional `H_6`-modules.
#[derive(Debug, Clone)]
pub struct IsotypicTable {
    blocks: Vec<(Isotypic, FormSubspace)>,
}

impl IsotypicTable {
    pub fn block(&self, label: Isotypic) -> &FormSubspace {
        &self
            .blocks
            .iter()
            .find(|(l, _)| *l == label)
            .expect("all seven blocks present")
            .1
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Isotypic, &FormSubspace)> {
        self.blocks.iter().map(|(l, s)| (*l, s))
    }

    /// Direct sum of the given (mutually orthogonal) blocks.
    pub fn sum(&self, labels: &[Isotypic]) -> Result<FormSubspace> {
        let rows: usize = labels.iter().map(|l| self.block(*l).dim()).sum();
        let mut m = DMatrix::zeros(rows, 21);
        let mut r = 0;
        for l in labels {
            let b = self.block(*l).basis();
            m.view_mut((r, 0), (b.nrows(), 21)).copy_from(b);
            r += b.nrows();
        }
        FormSubspace::from_orthonormal_rows(5, 2, m, f64::INFINITY)
    }
}

pub fn build_isotypic_table() -> IsotypicTable {
    let blocks = Isotypic::ALL
        .iter()
        .map(|&l| {
            (
                l,
                FormSubspace::span(&l.generators()).expect("three independent quadrics"),
            )
        })
        .collect();
    IsotypicTable { blocks }
}

/// The four sums the quadric ideal is compared against.
pub const SUBMODULE_GROUPS: [&[Isotypic]; 4] = [
    &[Isotypic::V0Plus, Isotypic::V2Plus],
    &[Isotypic::V0Minus, Isotypic::V2Minus],
    &[Isotypic::V1Plus, Isotypic::V3],
    &[Isotypic::V1Minus],
];

/// Intersects an `H_6`-invariant space of quadrics with each of
/// [`SUBMODULE_GROUPS`].
pub fn split_into_submodules(s: &FormSubspace, table: &IsotypicTable) -> Result<Vec<FormSubspace>> {
    if (s.ambient_dim(), s.degree()) != (5, 2) {
        return Err(Error::InvalidArgument(
            "submodule split is defined for quadrics in P^5".into(),
        ));
    }
    let ctx = HeisenbergContext::new(6)?;
    let residual = ctx.invariance_defect(s)?;
    if !(residual < INVARIANCE_TOL) {
        return Err(Error::NotInvariant { residual });
    }
    let parts = SUBMODULE_GROUPS
        .iter()
        .map(|g| intersection(s, &table.sum(g)?))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    if dims.iter().sum::<usize>() != s.dim() {
        return Err(Error::DecompositionMismatch {
            parts: dims,
            total: s.dim(),
        });
    }
    Ok(parts)
}
