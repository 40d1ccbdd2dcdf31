//! Named pass/fail records shared by the pipelines and the report.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A value in a check record: a dimension, a real, a complex number, a list
/// of dimensions or free text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(i64),
    Real(#[serde(with = "crate::json::float")] f64),
    Dims(Vec<usize>),
    Complex([f64; 2]),
    Bool(bool),
    Text(String),
}

impl From<usize> for Quantity {
    fn from(v: usize) -> Self {
        Quantity::Int(v as i64)
    }
}

impl From<i64> for Quantity {
    fn from(v: i64) -> Self {
        Quantity::Int(v)
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Real(v)
    }
}

impl From<Complex64> for Quantity {
    fn from(v: Complex64) -> Self {
        Quantity::Complex([v.re, v.im])
    }
}

impl From<Vec<usize>> for Quantity {
    fn from(v: Vec<usize>) -> Self {
        Quantity::Dims(v)
    }
}

impl From<bool> for Quantity {
    fn from(v: bool) -> Self {
        Quantity::Bool(v)
    }
}

impl From<&str> for Quantity {
    fn from(v: &str) -> Self {
        Quantity::Text(v.into())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Real(v) => write!(f, "{v:.6e}"),
            Quantity::Dims(v) => write!(f, "{v:?}"),
            Quantity::Complex([re, im]) => write!(f, "{re:.6}{im:+.6}i"),
            Quantity::Bool(v) => write!(f, "{v}"),
            Quantity::Text(v) => f.write_str(v),
        }
    }
}

/// One verified claim. `residual_or_gap` is a residual when `tolerance` is an
/// upper bound and a singular-value gap when it is a lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub expected: Quantity,
    pub computed: Quantity,
    #[serde(with = "crate::json::float")]
    pub residual_or_gap: f64,
    #[serde(with = "crate::json::float")]
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// A residual that must stay below `tolerance`.
    pub fn residual(name: &str, claim: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            expected: Quantity::Real(0.0),
            computed: Quantity::Real(residual),
            residual_or_gap: residual,
            tolerance,
            pass: residual < tolerance,
        }
    }

    /// An exact count that must match and, when a gap is given, be certified
    /// by a singular-value gap above `min_gap`.
    pub fn dimension(name: &str, claim: &str, expected: usize, computed: usize, gap: f64, min_gap: f64) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            expected: expected.into(),
            computed: computed.into(),
            residual_or_gap: gap,
            tolerance: min_gap,
            pass: expected == computed && gap > min_gap,
        }
    }

    /// A value that must exceed `min`.
    pub fn lower_bound(name: &str, claim: &str, value: f64, min: f64) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            expected: Quantity::Text(format!("> {min:e}")),
            computed: Quantity::Real(value),
            residual_or_gap: value,
            tolerance: min,
            pass: value > min,
        }
    }

    /// A failure that prevented the check from being computed.
    pub fn error(name: &str, claim: &str, err: &crate::Error) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            expected: Quantity::Text("success".into()),
            computed: Quantity::Text(err.to_string()),
            residual_or_gap: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        }
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {}, computed {} ({:.3e} vs {:.1e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.computed,
            self.residual_or_gap,
            self.tolerance
        )
    }
}
