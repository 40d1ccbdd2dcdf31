//! Interpolated ideal slices: all degree-`k` forms vanishing on a sampled
//! variety, found as the nullspace of a monomial evaluation matrix.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve_embed::{ProjectivePoint, ThetaEmbedding, DISTINCT_TOL};
use crate::error::{Error, Result};
use crate::polyspace::{
    binomial, containment_defect, multiplication_map, nullspace, FormSubspace, MonomialBasis, DEFAULT_REL_TOL,
    MIN_CERTIFIED_GAP,
};

/// Number of samples required per unknown coefficient.
pub const OVERSAMPLING: usize = 3;

/// Seed offset separating the chord parameters from the endpoint draws.
const SECANT_T_STREAM: u64 = 0x5ec0_0000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Curve,
    Secant,
    ProjectedCurve,
    PlaneImage,
}

/// Sample points of a variety, all in the same projective space.
#[derive(Debug, Clone)]
pub struct PointCloud {
    ambient_dim: usize,
    points: Vec<ProjectivePoint>,
    provenance: Provenance,
    seed: u64,
    curve_degree: usize,
}

impl PointCloud {
    /// Checks shape and pairwise distinctness. `curve_degree` is the degree of
    /// the curve the points come from (used for the Riemann-Roch expectation).
    pub fn new(points: Vec<ProjectivePoint>, provenance: Provenance, seed: u64, curve_degree: usize) -> Result<Self> {
        let ambient_dim = points
            .first()
            .ok_or_else(|| Error::InvalidArgument("a point cloud needs at least one point".into()))?
            .dim_ambient();
        if let Some(p) = points.iter().find(|p| p.dim_ambient() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: p.dim_ambient(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q.distance(p) <= DISTINCT_TOL) {
                return Err(Error::InvalidArgument(format!("point {i} repeats an earlier point")));
            }
        }
        Ok(Self {
            ambient_dim,
            points,
            provenance,
            seed,
            curve_degree,
        })
    }

    pub fn from_curve(e: &ThetaEmbedding, count: usize, seed: u64) -> Result<Self> {
        let points = e.sample_curve(count, seed)?.into_iter().map(|(_, p)| p).collect();
        Self::new(points, Provenance::Curve, seed, e.n())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn curve_degree(&self) -> usize {
        self.curve_degree
    }

    /// Splits off the last `count` points as a second cloud.
    pub fn split_holdout(mut self, count: usize) -> Result<(Self, Self)> {
        if count == 0 || count >= self.points.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot hold out {count} of {} points",
                self.points.len()
            )));
        }
        let tail = self.points.split_off(self.points.len() - count);
        let holdout = Self {
            points: tail,
            ..self.clone()
        };
        Ok((self, holdout))
    }

    /// Short name used in reports: `C6`, `Sec(C6)`, `Cp`, `Cpq`, `plane`.
    pub fn variety_name(&self) -> String {
        let n = self.curve_degree;
        match self.provenance {
            Provenance::Curve => format!("C{n}"),
            Provenance::Secant => format!("Sec(C{n})"),
            Provenance::ProjectedCurve if self.ambient_dim + 2 == n => "Cp".into(),
            Provenance::ProjectedCurve if self.ambient_dim + 3 == n => "Cpq".into(),
            Provenance::ProjectedCurve => format!("C{n}_in_P{}", self.ambient_dim),
            Provenance::PlaneImage => "plane".into(),
        }
    }
}

impl fmt::Display for PointCloud {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points on {} in P^{}",
            self.len(),
            self.variety_name(),
            self.ambient_dim
        )
    }
}

/// Rows are points, columns are degree-`k` monomials in canonical order. Each
/// row is scaled to unit norm, which leaves the nullspace unchanged.
pub fn evaluation_matrix(points: &[ProjectivePoint], degree: usize) -> Result<DMatrix<Complex64>> {
    let d = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("no points to evaluate".into()))?
        .dim_ambient();
    let basis = MonomialBasis::new(d, degree);
    let mut m = DMatrix::zeros(points.len(), basis.len());
    for (r, p) in points.iter().enumerate() {
        if p.dim_ambient() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim_ambient(),
            });
        }
        let x = p.coords();
        for (c, exps) in basis.iter().enumerate() {
            m[(r, c)] = exps
                .iter()
                .zip(x)
                .fold(Complex64::new(1.0, 0.0), |acc, (&e, xi)| acc * xi.powu(e));
        }
        let norm = m.row(r).norm();
        m.row_mut(r).unscale_mut(norm);
    }
    Ok(m)
}

/// Degree-`k` forms vanishing on the cloud, with the default cut.
pub fn ideal_slice(cloud: &PointCloud, k: usize) -> Result<FormSubspace> {
    ideal_slice_with_tol(cloud, k, DEFAULT_REL_TOL)
}

pub fn ideal_slice_with_tol(cloud: &PointCloud, k: usize, rel_tol: f64) -> Result<FormSubspace> {
    let s = interpolate_slice(cloud, k, rel_tol)?;
    if !s.is_certified() {
        return Err(Error::WeakGap {
            dim: s.dim(),
            gap: s.sv_gap(),
            min_gap: MIN_CERTIFIED_GAP,
        });
    }
    Ok(s)
}

/// Like [`ideal_slice_with_tol`] but returns a weakly separated split as is;
/// callers inspect [`FormSubspace::is_certified`].
pub fn interpolate_slice(cloud: &PointCloud, k: usize, rel_tol: f64) -> Result<FormSubspace> {
    let needed = OVERSAMPLING * binomial(cloud.ambient_dim + k, k);
    if cloud.len() < needed {
        return Err(Error::InsufficientSamples {
            have: cloud.len(),
            needed,
        });
    }
    let m = evaluation_matrix(&cloud.points, k)?;
    let split = nullspace(&m, rel_tol);
    FormSubspace::from_orthonormal_rows(cloud.ambient_dim, k, split.basis, split.sv_gap)
}

/// Points `t P1 + (1 - t) P2` on chords of the curve, `t` uniform in
/// `(0.1, 0.9)`, endpoints taken as canonical representatives.
pub fn sample_secant(e: &ThetaEmbedding, count: usize, seed: u64) -> Result<PointCloud> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let ends = e.sample_curve(2 * count, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SECANT_T_STREAM);
    let points = ends
        .chunks_exact(2)
        .map(|pair| {
            let t: f64 = rng.random_range(0.1..0.9);
            let coords = pair[0]
                .1
                .coords()
                .iter()
                .zip(pair[1].1.coords())
                .map(|(a, b)| a * t + b * (1.0 - t))
                .collect();
            ProjectivePoint::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointCloud::new(points, Provenance::Secant, seed, e.n())
}

/// One row of a k-normality table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KNormalityRow {
    pub variety: String,
    pub degree: usize,
    pub dim: usize,
    #[serde(with = "crate::json::float")]
    pub sv_gap: f64,
    pub expected: i64,
    pub pass: bool,
}

/// Expected `h^0(I(k))` for a k-normal curve of degree `n` in `P^d`:
/// `C(d + k, k) - n k`.
pub fn expected_ideal_dim(ambient_dim: usize, curve_degree: usize, k: usize) -> i64 {
    binomial(ambient_dim + k, k) as i64 - (curve_degree * k) as i64
}

pub fn knormality_table(cloud: &PointCloud, degrees: &[usize]) -> Result<Vec<KNormalityRow>> {
    if !matches!(cloud.provenance, Provenance::Curve | Provenance::ProjectedCurve) {
        return Err(Error::InvalidArgument(format!(
            "k-normality is defined for curve clouds, not {:?}",
            cloud.provenance
        )));
    }
    degrees
        .iter()
        .map(|&k| {
            let s = ideal_slice(cloud, k)?;
            let expected = expected_ideal_dim(cloud.ambient_dim, cloud.curve_degree, k).max(0);
            Ok(KNormalityRow {
                variety: cloud.variety_name(),
                degree: k,
                dim: s.dim(),
                sv_gap: s.sv_gap(),
                expected,
                pass: s.dim() as i64 == expected && s.is_certified(),
            })
        })
        .collect()
}

/// `containment_defect(multiplication_map(S_k), S_{k+1})` for each
/// consecutive pair of the given slices (which must have increasing degrees).
pub fn containment_chain(slices: &[FormSubspace]) -> Result<Vec<(usize, f64)>> {
    slices
        .windows(2)
        .filter(|w| w[1].degree() == w[0].degree() + 1)
        .map(|w| Ok((w[0].degree(), containment_defect(&multiplication_map(&w[0])?, &w[1])?)))
        .collect()
}

/// Worst conditioning over random `size`-subsets of the points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralPosition {
    pub trials: usize,
    pub full_rank: usize,
    /// Smallest `sigma_min / sigma_max` seen.
    pub min_ratio: f64,
}

/// Draws `trials` random `size`-subsets and measures how close each is to
/// being linearly dependent.
pub fn general_position(points: &[ProjectivePoint], size: usize, trials: usize, seed: u64) -> Result<GeneralPosition> {
    if size == 0 || size > points.len() {
        return Err(Error::InvalidArgument(format!(
            "subset size {size} out of range for {} points",
            points.len()
        )));
    }
    let d = points[0].dim_ambient() + 1;
    if size > d {
        return Err(Error::InvalidArgument(format!(
            "{size} points in C^{d} cannot be independent"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GeneralPosition {
        trials,
        full_rank: 0,
        min_ratio: f64::INFINITY,
    };
    for _ in 0..trials {
        let idx = sample(&mut rng, points.len(), size);
        let m = DMatrix::from_fn(size, d, |r, c| {
            let p = points[idx.index(r)].coords();
            p[c] / p.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
        });
        let sv = m.singular_values();
        let smax = sv.max();
        let ratio = if smax > 0.0 { sv.min() / smax } else { 0.0 };
        if ratio > 0.0 {
            out.full_rank += 1;
        }
        out.min_ratio = out.min_ratio.min(ratio);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::HomogeneousForm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn curve() -> ThetaEmbedding {
        let mut e = ThetaEmbedding::sextic(c(0.0, 1.0)).unwrap();
        e.validate().unwrap();
        e
    }

    #[test]
    fn two_points_on_a_line_carry_no_linear_form() {
        let pts = vec![
            ProjectivePoint::new(vec![c(1.0, 0.0), c(0.3, 0.2)]).unwrap(),
            ProjectivePoint::new(vec![c(-0.4, 0.1), c(1.0, 0.0)]).unwrap(),
        ];
        let m = evaluation_matrix(&pts, 1).unwrap();
        assert_eq!(nullspace(&m, DEFAULT_REL_TOL).basis.nrows(), 0);
    }

    #[test]
    fn recovers_a_known_conic() {
        // Points on x0 x2 = x1^2, parameterized by (1 : s : s^2).
        let pts: Vec<_> = (0..30)
            .map(|i| {
                let s = c(0.1 * i as f64 - 1.3, 0.05 * i as f64);
                ProjectivePoint::new(vec![c(1.0, 0.0), s, s * s]).unwrap()
            })
            .collect();
        let cloud = PointCloud::new(pts, Provenance::Curve, 0, 2).unwrap();
        let s = ideal_slice(&cloud, 2).unwrap();
        assert_eq!(s.dim(), 1);
        let conic =
            HomogeneousForm::from_terms(2, 2, [(vec![1, 0, 1], c(1.0, 0.0)), (vec![0, 2, 0], c(-1.0, 0.0))]).unwrap();
        assert!(s.membership_residual(&conic).unwrap() < 1e-10);
    }

    #[test]
    fn riemann_roch_expectations() {
        assert_eq!(expected_ideal_dim(5, 6, 2), 9);
        assert_eq!(expected_ideal_dim(5, 6, 3), 38);
        assert_eq!(expected_ideal_dim(4, 6, 4), 46);
        assert_eq!(expected_ideal_dim(3, 6, 5), 26);
        assert_eq!(expected_ideal_dim(3, 6, 2), -2);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let cloud = PointCloud::from_curve(&curve(), 40, 1).unwrap();
        assert!(matches!(
            ideal_slice(&cloud, 2),
            Err(Error::InsufficientSamples { have: 40, needed: 63 })
        ));
    }

    #[test]
    fn sextic_quadric_and_linear_slices() {
        let cloud = PointCloud::from_curve(&curve(), 200, 7).unwrap();
        assert_eq!(ideal_slice(&cloud, 1).unwrap().dim(), 0);
        let s2 = ideal_slice(&cloud, 2).unwrap();
        assert_eq!(s2.dim(), 9);
        assert!(s2.sv_gap() > 1e6);
        let rows = knormality_table(&cloud, &[2]).unwrap();
        assert!(rows[0].pass);
        assert_eq!(rows[0].expected, 9);
        assert_eq!(rows[0].variety, "C6");
    }

    #[test]
    fn secant_points_lie_on_chords() {
        let cloud = sample_secant(&curve(), 20, 3).unwrap();
        assert_eq!(cloud.len(), 20);
        assert_eq!(cloud.provenance(), Provenance::Secant);
        assert!(knormality_table(&cloud, &[2]).is_err());
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let p = ProjectivePoint::new(vec![c(1.0, 0.0), c(0.5, 0.5)]).unwrap();
        assert!(PointCloud::new(vec![p.clone(), p], Provenance::Curve, 0, 2).is_err());
    }

    #[test]
    fn holdout_split_sizes() {
        let cloud = PointCloud::from_curve(&curve(), 30, 2).unwrap();
        let (train, hold) = cloud.split_holdout(10).unwrap();
        assert_eq!((train.len(), hold.len()), (20, 10));
    }

    #[test]
    fn general_position_detects_dependence() {
        let e = |i: usize| {
            let mut v = vec![c(0.0, 0.0); 3];
            v[i] = c(1.0, 0.0);
            ProjectivePoint::new(v).unwrap()
        };
        let dep = vec![
            e(0),
            e(1),
            ProjectivePoint::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
        ];
        let g = general_position(&dep, 3, 5, 0).unwrap();
        assert!(g.min_ratio < 1e-12);
        let g = general_position(&[e(0), e(1), e(2)], 3, 5, 0).unwrap();
        assert!((g.min_ratio - 1.0).abs() < 1e-12);
    }
}
