//! Theta series with rational characteristics.
//!
//! `theta(a, b, z, tau) = sum_k exp(pi i (k+a)^2 tau + 2 pi i (k+a)(z+b))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tail threshold used when no explicit one is given.
pub const DEFAULT_TRUNC_EPS: f64 = 1e-18;

/// Hard cap on `|k - k0|` for the series window.
pub const MAX_TERMS: usize = 500;

/// Number of consecutive sub-threshold terms required on each side.
const TAIL_RUN: usize = 3;

/// Value of a theta series together with its `z`-derivative.
#[derive(Debug, Clone, Copy)]
pub struct ThetaValue {
    pub value: Complex64,
    pub derivative: Complex64,
    /// Largest term modulus encountered while summing.
    pub max_term: f64,
}

/// Evaluates the theta function with characteristics `[a, b]`.
pub fn theta(a: f64, b: f64, z: Complex64, tau: Complex64, trunc_eps: f64) -> Result<Complex64> {
    theta_series(a, b, z, tau, trunc_eps).map(|t| t.value)
}

/// Sums the series and its termwise derivative.
///
/// The window is centred at the integer nearest `-a` and grows one term per
/// side per step until each side has seen three consecutive terms below
/// `trunc_eps` times the largest term so far. Log-concavity of the term
/// moduli in `k` makes this a sound stopping rule even when the peak is far
/// from the centre.
pub fn theta_series(a: f64, b: f64, z: Complex64, tau: Complex64, trunc_eps: f64) -> Result<ThetaValue> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidTau {
            tau,
            reason: "imaginary part must be positive",
        });
    }
    if !(trunc_eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "trunc_eps must be positive, got {trunc_eps}"
        )));
    }

    let i = Complex64::i();
    let zb = z + b;
    let term = |k: i64| -> (Complex64, Complex64) {
        let ka = k as f64 + a;
        let t = (i * PI * ka * ka * tau + 2.0 * i * PI * ka * zb).exp();
        (t, 2.0 * i * PI * ka * t)
    };

    let k0 = (-a).round() as i64;
    let (t0, d0) = term(k0);
    let mut value = t0;
    let mut derivative = d0;
    let mut max_term = t0.norm();
    let mut run_up = 0usize;
    let mut run_down = 0usize;

    for j in 1..=MAX_TERMS as i64 {
        let (tu, du) = term(k0 + j);
        let (td, dd) = term(k0 - j);
        value += tu + td;
        derivative += du + dd;
        let (mu, md) = (tu.norm(), td.norm());
        max_term = max_term.max(mu).max(md);
        let thr = trunc_eps * max_term;
        run_up = if mu < thr { run_up + 1 } else { 0 };
        run_down = if md < thr { run_down + 1 } else { 0 };
        if run_up >= TAIL_RUN && run_down >= TAIL_RUN {
            return Ok(ThetaValue {
                value,
                derivative,
                max_term,
            });
        }
    }
    Err(Error::NonConvergence { cap: MAX_TERMS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: f64, b: f64, z: Complex64, tau: Complex64, range: i64) -> Complex64 {
        let i = Complex64::i();
        (-range..=range)
            .map(|k| {
                let ka = k as f64 + a;
                (i * PI * ka * ka * tau + 2.0 * i * PI * ka * (z + b)).exp()
            })
            .sum()
    }

    #[test]
    fn odd_theta_vanishes_at_origin() {
        let v = theta(0.5, 0.5, Complex64::new(0.0, 0.0), Complex64::i(), 1e-18).unwrap();
        assert!(v.norm() < 1e-15, "{v}");
    }

    #[test]
    fn even_theta_matches_partial_sum() {
        let v = theta(0.0, 0.0, Complex64::new(0.0, 0.0), Complex64::i(), 1e-18).unwrap();
        let oracle = brute(0.0, 0.0, Complex64::new(0.0, 0.0), Complex64::i(), 20);
        assert!(v.im.abs() < 1e-15);
        assert!(v.re > 0.0);
        assert!((v - oracle).norm() < 1e-14 * oracle.norm());
        // theta_3(0, i) = pi^{1/4} / Gamma(3/4)
        assert!((v.re - 1.086_434_811_213_308_1).abs() < 1e-14);
    }

    #[test]
    fn partial_sum_agreement_at_generic_arguments() {
        let tau = Complex64::new(0.3, 1.2);
        for &(a, b) in &[(0.5, 0.5), (1.0 / 3.0, 0.5), (0.0, 0.25), (5.0 / 6.0, 0.0)] {
            let z = Complex64::new(0.37, 0.81);
            let v = theta(a, b, z, tau, 1e-18).unwrap();
            let oracle = brute(a, b, z, tau, 40);
            assert!((v - oracle).norm() < 1e-13 * oracle.norm(), "a={a} b={b}");
        }
    }

    #[test]
    fn quasi_periodic_in_real_period() {
        let tau = Complex64::new(0.3, 1.2);
        let z = Complex64::new(0.21, 0.43);
        for &(a, b) in &[(0.5, 0.5), (2.0 / 3.0, 0.5), (1.0 / 6.0, 0.1)] {
            let r = theta(a, b, z + 1.0, tau, 1e-18).unwrap() / theta(a, b, z, tau, 1e-18).unwrap();
            let expected = (Complex64::i() * 2.0 * PI * a).exp();
            assert!((r - expected).norm() < 1e-12, "a={a}: {r} vs {expected}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let tau = Complex64::new(0.1, 0.9);
        let z = Complex64::new(0.2, 0.3);
        let h = 1e-5;
        let t = theta_series(0.25, 0.5, z, tau, 1e-18).unwrap();
        let fd =
            (theta(0.25, 0.5, z + h, tau, 1e-18).unwrap() - theta(0.25, 0.5, z - h, tau, 1e-18).unwrap()) / (2.0 * h);
        assert!((t.derivative - fd).norm() < 1e-8 * t.derivative.norm());
    }

    #[test]
    fn rejects_lower_half_plane() {
        let err = theta(0.0, 0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0), 1e-18).unwrap_err();
        assert!(matches!(err, Error::InvalidTau { .. }));
    }

    #[test]
    fn reports_non_convergence() {
        // Im(tau) this small needs far more than MAX_TERMS terms.
        let err = theta(0.0, 0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 1e-6), 1e-18).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }
}
