use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of complex projective space, stored in canonical form: the entry of
/// largest modulus (lowest index on ties) is exactly `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a projective point needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        let pivot = pivot_index(&coords);
        let p = coords[pivot];
        if !(p.norm() > 0.0) || !p.is_finite() {
            return Err(Error::DegeneratePoint("all coordinates are zero or non-finite".into()));
        }
        let mut coords: Vec<Complex64> = coords.iter().map(|c| c / p).collect();
        coords[pivot] = Complex64::new(1.0, 0.0);
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Dimension of the ambient projective space.
    pub fn dim_ambient(&self) -> usize {
        self.coords.len() - 1
    }

    /// Euclidean norm of the canonical representative.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn pivot(&self) -> usize {
        pivot_index(&self.coords)
    }

    /// Largest coordinate difference after rescaling `other` to agree with
    /// `self` at the pivot of `self`. Unlike comparing canonical forms
    /// directly, this is insensitive to near-ties in the pivot choice.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        if self.coords.len() != other.coords.len() {
            return f64::INFINITY;
        }
        let i = self.pivot();
        let s = other.coords[i];
        if s.norm() < 1e-300 {
            return f64::INFINITY;
        }
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b / s).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{:.6}{:+.6}i", c.re, c.im)?;
        }
        write!(f, ")")
    }
}

fn pivot_index(coords: &[Complex64]) -> usize {
    let mut best = 0;
    let mut best_norm = coords[0].norm();
    for (i, c) in coords.iter().enumerate().skip(1) {
        let n = c.norm();
        if n > best_norm {
            best = i;
            best_norm = n;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalizes_largest_entry_to_one() {
        let p = ProjectivePoint::new(vec![c(1.0, 0.0), c(0.0, -4.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(p.coords()[1], c(1.0, 0.0));
        assert!((p.coords()[0] - c(0.0, 0.25)).norm() < 1e-16);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let p = ProjectivePoint::new(vec![c(0.0, 2.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(p.pivot(), 0);
        assert_eq!(p.coords()[0], c(1.0, 0.0));
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(matches!(
            ProjectivePoint::new(vec![c(0.0, 0.0); 3]),
            Err(Error::DegeneratePoint(_))
        ));
    }

    #[test]
    fn distance_ignores_scaling() {
        let v = vec![c(0.3, 0.1), c(-0.7, 0.2), c(0.5, 0.5)];
        let w: Vec<_> = v.iter().map(|x| x * c(-2.0, 3.0)).collect();
        let p = ProjectivePoint::new(v).unwrap();
        let q = ProjectivePoint::new(w).unwrap();
        assert!(p.distance(&q) < 1e-15);
        assert!(p.distance(&ProjectivePoint::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap()) > 0.1);
    }
}
