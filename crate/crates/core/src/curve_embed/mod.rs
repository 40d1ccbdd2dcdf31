//! Theta-function embedding of `C/(Z + Z tau)` as an elliptic normal curve of
//! degree `n` in `P^{n-1}`.
//!
//! Coordinates are `x_m(z) = theta[a0 + m/n, b0](n z, n tau)`. Translation by
//! `tau/n` permutes them cyclically and translation by `1/n` multiplies `x_m`
//! by `eps^m` (up to a common factor), which is the Heisenberg symmetry the
//! rest of the crate relies on. [`ThetaEmbedding::validate`] certifies this
//! numerically and locates the distinguished point `c` where only `x_0`
//! vanishes.

mod point;
mod theta;

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use point::ProjectivePoint;
pub use theta::{theta, theta_series, ThetaValue, DEFAULT_TRUNC_EPS, MAX_TERMS};

use crate::error::{Error, Result};

/// Smallest accepted `Im(tau)`.
pub const MIN_IM_TAU: f64 = 0.05;

/// Tolerance on the equivariance residuals found by validation.
pub const EQUIVARIANCE_TOL: f64 = 1e-9;

/// Minimum pairwise distance between sampled points.
pub const DISTINCT_TOL: f64 = 1e-6;

const VALIDATION_POINTS: usize = 20;
const VALIDATION_SEED: u64 = 0x7e57_5eed;
const NEWTON_STEPS: usize = 20;

/// The lattice `Z + Z tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    tau: Complex64,
}

impl Lattice {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::InvalidTau {
                tau,
                reason: "imaginary part must be positive",
            });
        }
        if tau.im < MIN_IM_TAU {
            return Err(Error::InvalidTau {
                tau,
                reason: "imaginary part is below the series conditioning floor 0.05",
            });
        }
        Ok(Self { tau })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// Point `u + v tau` of the fundamental parallelogram.
    pub fn point(&self, u: f64, v: f64) -> Complex64 {
        Complex64::new(u, 0.0) + self.tau * v
    }

    /// Reduces `z` into `[0,1) + [0,1) tau`.
    pub fn reduce(&self, z: Complex64) -> Complex64 {
        let v = z.im / self.tau.im;
        let u = z.re - v * self.tau.re;
        let wrap = |x: f64| {
            let r = x - x.floor();
            if (1.0 - r).abs() < 1e-12 || r.abs() < 1e-12 {
                0.0
            } else {
                r
            }
        };
        self.point(wrap(u), wrap(v))
    }
}

/// How the characteristic of coordinate `m` is derived from `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexLaw {
    /// `a_m = a0 + m/n`; the Heisenberg-equivariant basis.
    Linear,
    /// `a_m = a0 + m^2/n`; not equivariant. Exists as a negative control.
    Quadratic,
}

/// Direction of the cyclic coordinate shift induced by the `sigma` translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDirection {
    /// `(x_0 : ... : x_{n-1}) -> (x_{n-1} : x_0 : ... : x_{n-2})`.
    Backward,
    /// `(x_0 : ... : x_{n-1}) -> (x_1 : ... : x_{n-1} : x_0)`.
    Forward,
}

impl ShiftDirection {
    pub fn apply(self, coords: &[Complex64]) -> Vec<Complex64> {
        let n = coords.len();
        (0..n)
            .map(|m| match self {
                ShiftDirection::Backward => coords[(m + n - 1) % n],
                ShiftDirection::Forward => coords[(m + 1) % n],
            })
            .collect()
    }
}

/// Outcome of [`ThetaEmbedding::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub t_sigma: Complex64,
    pub t_tau: Complex64,
    pub c: Complex64,
    pub shift: ShiftDirection,
    pub sigma_residual: f64,
    pub tau_residual: f64,
}

#[derive(Debug, Clone)]
pub struct ThetaEmbedding {
    lattice: Lattice,
    n: usize,
    characteristics: (f64, f64),
    index_law: IndexLaw,
    trunc_eps: f64,
    validation: Option<Validation>,
}

impl ThetaEmbedding {
    /// Embedding of degree `n` with the default characteristics `(1/2, 1/2)`.
    pub fn new(lattice: Lattice, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "curve degree must be at least 3, got {n}"
            )));
        }
        Ok(Self {
            lattice,
            n,
            characteristics: (0.5, 0.5),
            index_law: IndexLaw::Linear,
            trunc_eps: DEFAULT_TRUNC_EPS,
            validation: None,
        })
    }

    /// Degree-6 embedding for `tau`.
    pub fn sextic(tau: Complex64) -> Result<Self> {
        Self::new(Lattice::new(tau)?, 6)
    }

    pub fn with_characteristics(mut self, a0: f64, b0: f64) -> Self {
        self.characteristics = (a0, b0);
        self.validation = None;
        self
    }

    pub fn with_index_law(mut self, law: IndexLaw) -> Self {
        self.index_law = law;
        self.validation = None;
        self
    }

    pub fn with_trunc_eps(mut self, eps: f64) -> Self {
        self.trunc_eps = eps;
        self.validation = None;
        self
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn tau(&self) -> Complex64 {
        self.lattice.tau
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristics(&self) -> (f64, f64) {
        self.characteristics
    }

    pub fn validation(&self) -> Option<&Validation> {
        self.validation.as_ref()
    }

    /// The distinguished point, available after validation.
    pub fn c(&self) -> Result<Complex64> {
        self.validation.as_ref().map(|v| v.c).ok_or(Error::NotValidated)
    }

    fn characteristic(&self, m: usize) -> f64 {
        let n = self.n as f64;
        let m = m as f64;
        match self.index_law {
            IndexLaw::Linear => self.characteristics.0 + m / n,
            IndexLaw::Quadratic => self.characteristics.0 + m * m / n,
        }
    }

    fn coordinate_series(&self, m: usize, z: Complex64) -> Result<ThetaValue> {
        let n = self.n as f64;
        theta_series(
            self.characteristic(m),
            self.characteristics.1,
            z * n,
            self.lattice.tau * n,
            self.trunc_eps,
        )
    }

    /// Raw (unnormalized) coordinate values `x_m(z)`.
    pub fn coordinates(&self, z: Complex64) -> Result<Vec<Complex64>> {
        (0..self.n)
            .map(|m| self.coordinate_series(m, z).map(|t| t.value))
            .collect()
    }

    /// The curve point `(x_0(z) : ... : x_{n-1}(z))`.
    pub fn embed(&self, z: Complex64) -> Result<ProjectivePoint> {
        let mut values = Vec::with_capacity(self.n);
        let mut scale = 0.0f64;
        for m in 0..self.n {
            let t = self.coordinate_series(m, z)?;
            scale = scale.max(t.max_term);
            values.push(t.value);
        }
        let largest = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !(largest >= 1e-14 * scale) {
            return Err(Error::DegeneratePoint(format!(
                "all coordinates below 1e-14 of the largest series term at z = {z}"
            )));
        }
        ProjectivePoint::new(values)
    }

    /// Checks Heisenberg equivariance over all `n^2` torsion translations and
    /// locates the distinguished point. Caches the result.
    pub fn validate(&mut self) -> Result<Validation> {
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        let zs: Vec<Complex64> = (0..VALIDATION_POINTS)
            .map(|_| self.lattice.point(rng.random(), rng.random()))
            .collect();
        let base: Vec<ProjectivePoint> = zs.iter().map(|&z| self.embed(z)).collect::<Result<_>>()?;
        let eps = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
        let twisted: Vec<ProjectivePoint> = base
            .iter()
            .map(|p| {
                ProjectivePoint::new(
                    p.coords()
                        .iter()
                        .enumerate()
                        .map(|(m, x)| x * eps.powu(m as u32))
                        .collect(),
                )
            })
            .collect::<Result<_>>()?;
        let shifted = |dir: ShiftDirection| -> Result<Vec<ProjectivePoint>> {
            base.iter()
                .map(|p| ProjectivePoint::new(dir.apply(p.coords())))
                .collect()
        };
        let backward = shifted(ShiftDirection::Backward)?;
        let forward = shifted(ShiftDirection::Forward)?;

        let worst = |images: &[ProjectivePoint], target: &[ProjectivePoint]| {
            images
                .iter()
                .zip(target)
                .map(|(a, b)| b.distance(a))
                .fold(0.0, f64::max)
        };

        let mut sigma_scores = Vec::new();
        let mut tau_scores = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let t = self.lattice.point(j as f64 / n as f64, k as f64 / n as f64);
                let images: Vec<ProjectivePoint> = zs.iter().map(|&z| self.embed(z + t)).collect::<Result<_>>()?;
                let label = format!("{j}/{n} + {k}tau/{n}");
                sigma_scores.push((ShiftDirection::Backward, t, label.clone(), worst(&images, &backward)));
                sigma_scores.push((ShiftDirection::Forward, t, label.clone(), worst(&images, &forward)));
                tau_scores.push((t, label, worst(&images, &twisted)));
            }
        }

        let sigma = [ShiftDirection::Backward, ShiftDirection::Forward]
            .iter()
            .find_map(|&dir| {
                sigma_scores
                    .iter()
                    .find(|s| s.0 == dir && s.3 < EQUIVARIANCE_TOL)
                    .cloned()
            })
            .ok_or_else(|| Error::EquivarianceFailure {
                generator: "sigma (cyclic shift)",
                closest: closest(sigma_scores.iter().map(|s| (format!("{} {:?}", s.2, s.0), s.3))),
            })?;
        let tau = tau_scores
            .iter()
            .find(|s| s.2 < EQUIVARIANCE_TOL)
            .cloned()
            .ok_or_else(|| Error::EquivarianceFailure {
                generator: "tau (diagonal character)",
                closest: closest(tau_scores.iter().map(|s| (s.1.clone(), s.2))),
            })?;

        let c = self.find_distinguished_point()?;
        let validation = Validation {
            t_sigma: sigma.1,
            t_tau: tau.0,
            c,
            shift: sigma.0,
            sigma_residual: sigma.3,
            tau_residual: tau.2,
        };
        self.validation = Some(validation.clone());
        Ok(validation)
    }

    /// Whether `z` has `x_0(z) = 0` and every other coordinate nonzero, in the
    /// relative sense used throughout.
    pub fn is_distinguished(&self, z: Complex64) -> Result<bool> {
        let x = self.coordinates(z)?;
        let scale = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(x[0].norm() < 1e-8 * scale && x[1..].iter().all(|v| v.norm() > 1e-4 * scale))
    }

    /// Scans torsion translates of the known zero of `x_0`, refines each with
    /// Newton steps and keeps the candidate of smallest modulus.
    fn find_distinguished_point(&self) -> Result<Complex64> {
        let n = self.n as f64;
        let big_tau = self.lattice.tau * n;
        let (a0, b0) = (self.characteristic(0), self.characteristics.1);
        // theta[a, b](w, T) vanishes at w = (1/2 - b) + (1/2 - a) T.
        let z0 = (Complex64::new(0.5 - b0, 0.0) + big_tau * (0.5 - a0)) / n;

        let mut best: Option<Complex64> = None;
        for j in 0..self.n {
            for k in 0..self.n {
                let mut z = z0 + self.lattice.point(j as f64 / n, k as f64 / n);
                for _ in 0..NEWTON_STEPS {
                    let t = theta_series(a0, b0, z * n, big_tau, self.trunc_eps)?;
                    let d = t.derivative * n;
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = t.value / d;
                    z -= step;
                    if step.norm() < 1e-16 {
                        break;
                    }
                }
                let z = self.lattice.reduce(z);
                if !z.is_finite() || !self.is_distinguished(z)? {
                    continue;
                }
                if best.is_none_or(|b| z.norm() < b.norm() - 1e-12) {
                    best = Some(z);
                }
            }
        }
        best.ok_or(Error::NoDistinguishedPoint)
    }

    /// Draws `count` pairwise-distinct curve points, deterministically in `seed`.
    pub fn sample_curve(&self, count: usize, seed: u64) -> Result<Vec<(Complex64, ProjectivePoint)>> {
        if count == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(Complex64, ProjectivePoint)> = Vec::with_capacity(count);
        let max_attempts = 100 * count;
        let mut attempts = 0;
        while out.len() < count {
            if attempts >= max_attempts {
                return Err(Error::SamplingExhausted { attempts });
            }
            attempts += 1;
            let z = self.lattice.point(rng.random(), rng.random());
            let p = self.embed(z)?;
            if out.iter().all(|(_, q)| q.distance(&p) > DISTINCT_TOL) {
                out.push((z, p));
            }
        }
        Ok(out)
    }
}

fn closest(scores: impl Iterator<Item = (String, f64)>) -> Vec<(String, f64)> {
    let mut v: Vec<_> = scores.collect();
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    v.truncate(3);
    v
}

/// Writes samples as CSV: `re(z), im(z)` then real and imaginary parts of
/// each coordinate.
pub fn write_samples_csv<W: Write>(samples: &[(Complex64, ProjectivePoint)], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if let Some((_, p)) = samples.first() {
        let mut header = vec!["z_re".to_string(), "z_im".to_string()];
        for m in 0..p.coords().len() {
            header.push(format!("x{m}_re"));
            header.push(format!("x{m}_im"));
        }
        w.write_record(&header)?;
    }
    for (z, p) in samples {
        let mut row = vec![format!("{:e}", z.re), format!("{:e}", z.im)];
        for c in p.coords() {
            row.push(format!("{:e}", c.re));
            row.push(format!("{:e}", c.im));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_i() -> Complex64 {
        Complex64::i()
    }

    #[test]
    fn lattice_rejects_bad_tau() {
        assert!(matches!(
            Lattice::new(Complex64::new(0.0, -1.0)),
            Err(Error::InvalidTau { .. })
        ));
        assert!(matches!(
            Lattice::new(Complex64::new(0.3, 0.01)),
            Err(Error::InvalidTau { .. })
        ));
        assert!(Lattice::new(Complex64::new(0.3, 0.05)).is_ok());
    }

    #[test]
    fn degree_below_three_rejected() {
        assert!(ThetaEmbedding::new(Lattice::new(tau_i()).unwrap(), 2).is_err());
    }

    #[test]
    fn embedding_is_periodic_in_both_generators() {
        let e = ThetaEmbedding::sextic(Complex64::new(0.3, 1.2)).unwrap();
        let z = Complex64::new(0.31, 0.47);
        let p = e.embed(z).unwrap();
        assert!(p.distance(&e.embed(z + 1.0).unwrap()) < 1e-10);
        assert!(p.distance(&e.embed(z + e.tau()).unwrap()) < 1e-10);
    }

    #[test]
    fn coordinate_ratios_are_constant_under_lattice_shift() {
        let e = ThetaEmbedding::sextic(Complex64::new(0.5, 1.0)).unwrap();
        let z = Complex64::new(0.12, 0.66);
        for omega in [Complex64::new(1.0, 0.0), e.tau()] {
            let a = e.coordinates(z).unwrap();
            let b = e.coordinates(z + omega).unwrap();
            let r0 = b[0] / a[0];
            for m in 1..6 {
                let r = b[m] / a[m];
                assert!((r - r0).norm() < 1e-10 * r0.norm(), "m={m}");
            }
        }
    }

    #[test]
    fn validation_finds_distinguished_point() {
        let mut e = ThetaEmbedding::sextic(tau_i()).unwrap();
        let v = e.validate().unwrap();
        assert!(v.sigma_residual < EQUIVARIANCE_TOL);
        assert!(v.tau_residual < EQUIVARIANCE_TOL);
        let p = e.embed(v.c).unwrap();
        assert!(p.coords()[0].norm() < 1e-8);
        assert!(p.coords()[1..].iter().all(|x| x.norm() > 1e-4));
        assert_eq!(e.c().unwrap(), v.c);
    }

    #[test]
    fn unvalidated_embedding_has_no_c() {
        let e = ThetaEmbedding::sextic(tau_i()).unwrap();
        assert!(matches!(e.c(), Err(Error::NotValidated)));
    }

    #[test]
    fn quadratic_index_law_fails_validation() {
        let mut e = ThetaEmbedding::sextic(tau_i())
            .unwrap()
            .with_index_law(IndexLaw::Quadratic);
        match e.validate() {
            Err(Error::EquivarianceFailure { closest, .. }) => assert!(!closest.is_empty()),
            other => panic!("expected EquivarianceFailure, got {other:?}"),
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let e = ThetaEmbedding::sextic(tau_i()).unwrap();
        let a = e.sample_curve(15, 9).unwrap();
        let b = e.sample_curve(15, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(e.sample_curve(1, 3).unwrap().len(), 1);
        assert!(e.sample_curve(0, 3).is_err());
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let e = ThetaEmbedding::sextic(tau_i()).unwrap();
        let s = e.sample_curve(3, 1).unwrap();
        let mut buf = Vec::new();
        write_samples_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0].split(',').count(), 14);
        assert!(lines[0].starts_with("z_re,z_im,x0_re"));
    }

    #[test]
    fn reduce_wraps_into_fundamental_domain() {
        let l = Lattice::new(Complex64::new(0.3, 1.2)).unwrap();
        let z = l.point(0.25, 0.75);
        let w = z + 2.0 - l.tau() * 3.0;
        assert!((l.reduce(w) - z).norm() < 1e-12);
    }
}
