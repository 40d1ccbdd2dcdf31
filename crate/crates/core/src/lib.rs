//! Numerical toolkit for elliptic normal curves of degree 6 in `P^5`.
//!
//! The curve is built from theta functions with characteristics, its ideal is
//! recovered degree by degree as the nullspace of monomial evaluation
//! matrices, and the closed-form quadrics and secant cubics are checked
//! against those interpolated spaces. Projections from generic points give
//! the curves `C_p` in `P^4` and `C_pq` in `P^3`, whose generator counts are
//! certified through multiplication-map ranks.

pub mod check;
pub mod curve_embed;
pub mod error;
pub mod explicit_eqs;
pub mod heisenberg;
mod json;
pub mod polyspace;
pub mod projections;
pub mod report;
pub mod vanishing_interp;

pub use error::{Error, Result};
pub use num_complex::Complex64;
