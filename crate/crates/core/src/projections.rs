//! Linear projections of the sextic from generic centers: `C_p` in `P^4`,
//! `C_pq` in `P^3` and the plane image, with the generator-count
//! certificates for the two space curves.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::CheckRecord;
use crate::curve_embed::{ProjectivePoint, ThetaEmbedding};
use crate::error::{Error, Result};
use crate::explicit_eqs::SecantCubics;
use crate::polyspace::{
    containment_defect, multiplication_map, subspace_distance, FormSubspace, HomogeneousForm, DEFAULT_REL_TOL,
    MIN_CERTIFIED_GAP,
};
use crate::vanishing_interp::{expected_ideal_dim, interpolate_slice, PointCloud, Provenance};

/// Images shorter than this fraction of the input count as hitting a center.
pub const CENTER_HIT_RATIO: f64 = 1e-8;

/// A center is accepted when both secant cubics are at least this large
/// relative to their coefficient norm.
pub const GENERIC_CENTER_TOL: f64 = 1e-3;

pub const MAX_CENTER_ATTEMPTS: usize = 100;

/// Containment and equality tolerance for interpolated subspaces.
pub const SUBSPACE_TOL: f64 = 1e-7;

pub const PULLBACK_TOL: f64 = 1e-8;

pub const HOLDOUT_TOL: f64 = 1e-8;

/// Held-out image points used to validate the plane sextic.
pub const HOLDOUT_POINTS: usize = 100;

/// Minimum number of image points used to fit the plane sextic.
pub const MIN_TRAINING_POINTS: usize = 150;

/// Projection from one or more centers: a unitary change of coordinates that
/// sends the centers onto the trailing axes, followed by dropping those axes.
#[derive(Debug, Clone)]
pub struct ProjectionMap {
    source_dim: usize,
    rotation: DMatrix<Complex64>,
    centers: Vec<ProjectivePoint>,
}

/// Reflection `I - 2 u u^H / |u|^2` on the first `w.len()` coordinates of a
/// `size`-dimensional space, sending `w` to a multiple of the last of them.
fn householder(w: &[Complex64], size: usize) -> DMatrix<Complex64> {
    let t = w.len() - 1;
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = if w[t].norm() > 0.0 {
        w[t] / w[t].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut u: Vec<Complex64> = w.to_vec();
    u[t] += phase * norm;
    let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let mut h = DMatrix::identity(size, size);
    for i in 0..w.len() {
        for j in 0..w.len() {
            h[(i, j)] -= u[i] * u[j].conj() * (2.0 / uu);
        }
    }
    h
}

impl ProjectionMap {
    /// Centers are points of the source space; they must be linearly
    /// independent.
    pub fn from_centers(centers: &[ProjectivePoint]) -> Result<Self> {
        let first = centers
            .first()
            .ok_or_else(|| Error::InvalidArgument("a projection needs at least one center".into()))?;
        let d = first.dim_ambient();
        if centers.len() > d {
            return Err(Error::InvalidArgument(format!(
                "{} centers leave nothing of P^{d}",
                centers.len()
            )));
        }
        let size = d + 1;
        let mut rotation = DMatrix::<Complex64>::identity(size, size);
        for (j, p) in centers.iter().enumerate() {
            if p.dim_ambient() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim_ambient(),
                });
            }
            let v = &rotation * nalgebra::DVector::from_column_slice(p.coords());
            let kept = size - j;
            let w: Vec<Complex64> = v.iter().take(kept).copied().collect();
            let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if wn < CENTER_HIT_RATIO * v.norm() {
                return Err(Error::InvalidArgument(format!(
                    "center {j} lies in the span of the previous ones"
                )));
            }
            rotation = householder(&w, size) * rotation;
        }
        Ok(Self {
            source_dim: d,
            rotation,
            centers: centers.to_vec(),
        })
    }

    /// Composes with a further projection from `q`, a point of the target.
    pub fn then(&self, q: &ProjectivePoint) -> Result<Self> {
        if q.dim_ambient() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                found: q.dim_ambient(),
            });
        }
        let mut lifted = vec![Complex64::new(0.0, 0.0); self.source_dim + 1];
        lifted[..q.coords().len()].copy_from_slice(q.coords());
        let lifted = self.rotation.adjoint() * nalgebra::DVector::from_vec(lifted);
        let mut centers = self.centers.clone();
        centers.push(ProjectivePoint::new(lifted.iter().copied().collect())?);
        Self::from_centers(&centers)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.source_dim - self.centers.len()
    }

    pub fn dropped(&self) -> usize {
        self.centers.len()
    }

    pub fn rotation(&self) -> &DMatrix<Complex64> {
        &self.rotation
    }

    /// Centers in source coordinates.
    pub fn centers(&self) -> &[ProjectivePoint] {
        &self.centers
    }

    /// The `(target + 1) x (source + 1)` matrix of the projection.
    pub fn linear_map(&self) -> DMatrix<Complex64> {
        self.rotation.rows(0, self.target_dim() + 1).into_owned()
    }

    pub fn unitarity_defect(&self) -> f64 {
        let n = self.source_dim + 1;
        let g = self.rotation.adjoint() * &self.rotation - DMatrix::<Complex64>::identity(n, n);
        g.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest relative norm of a center's image; zero for an exact map.
    pub fn center_residual(&self) -> f64 {
        let l = self.linear_map();
        self.centers
            .iter()
            .map(|p| (&l * nalgebra::DVector::from_column_slice(p.coords())).norm() / p.norm())
            .fold(0.0, f64::max)
    }

    pub fn project_point(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        if p.dim_ambient() != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: p.dim_ambient(),
            });
        }
        let y = self.linear_map() * nalgebra::DVector::from_column_slice(p.coords());
        let ratio = y.norm() / p.norm();
        if ratio < CENTER_HIT_RATIO {
            return Err(Error::CenterHit { ratio });
        }
        ProjectivePoint::new(y.iter().copied().collect())
    }

    /// `f o L`: a form on the target pulled back to the source.
    pub fn pull_back(&self, f: &HomogeneousForm) -> Result<HomogeneousForm> {
        if f.ambient_dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                found: f.ambient_dim(),
            });
        }
        f.substitute(&self.linear_map())
    }

    pub fn pull_back_subspace(&self, s: &FormSubspace) -> Result<FormSubspace> {
        if s.dim() == 0 {
            return Ok(FormSubspace::zero(self.source_dim, s.degree()));
        }
        let forms = s
            .forms()
            .iter()
            .map(|f| self.pull_back(f))
            .collect::<Result<Vec<_>>>()?;
        FormSubspace::span(&forms)
    }
}

/// Point of `P^d` with real and imaginary parts uniform in `[-1, 1]`.
pub fn random_point(d: usize, rng: &mut impl Rng) -> Result<ProjectivePoint> {
    let coords = (0..=d)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ProjectivePoint::new(coords)
}

/// True when neither secant cubic is small at `p`, which keeps `p` off the
/// secant variety.
pub fn is_generic_center(sc: &SecantCubics, p: &ProjectivePoint) -> Result<bool> {
    for f in sc.forms() {
        if !(f.evaluate(p)?.norm() > GENERIC_CENTER_TOL * f.coeff_norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random point of `P^5` off the secant variety, deterministic in `seed`.
pub fn pick_generic_center(sc: &SecantCubics, seed: u64) -> Result<ProjectivePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CENTER_ATTEMPTS {
        let p = random_point(sc.f1.ambient_dim(), &mut rng)?;
        if is_generic_center(sc, &p)? {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_CENTER_ATTEMPTS,
    })
}

/// Projects `count` curve samples. Samples that hit a center are skipped and
/// replaced by further draws.
pub fn build_projected_curve(e: &ThetaEmbedding, map: &ProjectionMap, count: usize, seed: u64) -> Result<PointCloud> {
    if map.source_dim() + 1 != e.n() {
        return Err(Error::DimensionMismatch {
            expected: e.n() - 1,
            found: map.source_dim(),
        });
    }
    let mut extra = 8;
    loop {
        let samples = e.sample_curve(count + extra, seed)?;
        let images: Vec<ProjectivePoint> = samples
            .iter()
            .filter_map(|(_, p)| match map.project_point(p) {
                Err(Error::CenterHit { .. }) => None,
                other => Some(other),
            })
            .take(count)
            .collect::<Result<_>>()?;
        if images.len() == count {
            return PointCloud::new(images, Provenance::ProjectedCurve, seed, e.n());
        }
        if extra >= count {
            return Err(Error::SamplingExhausted {
                attempts: count + extra,
            });
        }
        extra *= 2;
    }
}

fn slice_check(
    cloud: &PointCloud,
    k: usize,
    rel_tol: f64,
    name: &str,
    claim: &str,
) -> Result<(FormSubspace, CheckRecord)> {
    let s = interpolate_slice(cloud, k, rel_tol)?;
    let expected = expected_ideal_dim(cloud.ambient_dim(), cloud.curve_degree(), k).max(0) as usize;
    let rec = CheckRecord::dimension(name, claim, expected, s.dim(), s.sv_gap(), MIN_CERTIFIED_GAP);
    Ok((s, rec))
}

fn rank_check(name: &str, claim: &str, expected: usize, s: &FormSubspace) -> CheckRecord {
    CheckRecord::dimension(name, claim, expected, s.dim(), s.sv_gap(), MIN_CERTIFIED_GAP)
}

fn containment_check(name: &str, claim: &str, a: &FormSubspace, b: &FormSubspace) -> Result<CheckRecord> {
    Ok(CheckRecord::residual(
        name,
        claim,
        containment_defect(a, b)?,
        SUBSPACE_TOL,
    ))
}

fn equality_check(name: &str, claim: &str, a: &FormSubspace, b: &FormSubspace) -> Result<CheckRecord> {
    let d = if a.dim() == b.dim() {
        subspace_distance(a, b)?
    } else {
        f64::INFINITY
    };
    Ok(CheckRecord::residual(name, claim, d, SUBSPACE_TOL))
}

/// Three quadrics without linear syzygies plus two new cubics generate the
/// ideal of `C_p`, and the cubic part generates everything in degree 4.
pub fn certify_generators_cp(cloud: &PointCloud) -> Result<Vec<CheckRecord>> {
    certify_generators_cp_with_tol(cloud, DEFAULT_REL_TOL)
}

pub fn certify_generators_cp_with_tol(cloud: &PointCloud, rel_tol: f64) -> Result<Vec<CheckRecord>> {
    if cloud.ambient_dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: cloud.ambient_dim(),
        });
    }
    let mut out = Vec::new();
    let (_, r) = slice_check(cloud, 1, rel_tol, "h0_ICp_1", "C_p spans P^4")?;
    out.push(r);
    let (s2, r) = slice_check(
        cloud,
        2,
        rel_tol,
        "h0_ICp_2",
        "C_p lies on 15 - 12 = 3 independent quadrics",
    )?;
    out.push(r);
    let u = multiplication_map(&s2)?;
    out.push(rank_check(
        "cp_quadric_multiples_dim",
        "the quadrics through C_p have no linear syzygies: 3 * 5 = 15",
        15,
        &u,
    ));
    let (s3, r) = slice_check(
        cloud,
        3,
        rel_tol,
        "h0_ICp_3",
        "C_p lies on 35 - 18 = 17 independent cubics",
    )?;
    out.push(r);
    out.push(containment_check(
        "cp_quadric_multiples_in_cubics",
        "linear multiples of the quadrics vanish on C_p",
        &u,
        &s3,
    )?);
    out.push(CheckRecord::dimension(
        "cp_new_cubic_generators",
        "two cubics are needed beyond the quadric multiples",
        2,
        s3.dim().saturating_sub(u.dim()),
        u.sv_gap().min(s3.sv_gap()),
        MIN_CERTIFIED_GAP,
    ));
    let (s4, r) = slice_check(
        cloud,
        4,
        rel_tol,
        "h0_ICp_4",
        "C_p lies on 70 - 24 = 46 independent quartics",
    )?;
    out.push(r);
    let m3 = multiplication_map(&s3)?;
    out.push(rank_check(
        "cp_cubic_multiples_dim",
        "linear multiples of the cubics fill all quartics through C_p",
        s4.dim(),
        &m3,
    ));
    out.push(equality_check(
        "cp_generated_in_degree_3",
        "the degree-4 part of the ideal is generated by cubics",
        &m3,
        &s4,
    )?);
    Ok(out)
}

/// Two cubics without linear syzygies plus three new quartics generate the
/// ideal of `C_pq`, and the quartic part generates everything in degree 5.
pub fn certify_generators_cpq(cloud: &PointCloud) -> Result<Vec<CheckRecord>> {
    certify_generators_cpq_with_tol(cloud, DEFAULT_REL_TOL)
}

pub fn certify_generators_cpq_with_tol(cloud: &PointCloud, rel_tol: f64) -> Result<Vec<CheckRecord>> {
    if cloud.ambient_dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: cloud.ambient_dim(),
        });
    }
    let mut out = Vec::new();
    let (_, r) = slice_check(cloud, 2, rel_tol, "h0_ICpq_2", "C_pq lies on no quadric")?;
    out.push(r);
    let (s3, r) = slice_check(
        cloud,
        3,
        rel_tol,
        "h0_ICpq_3",
        "C_pq lies on 20 - 18 = 2 independent cubics",
    )?;
    out.push(r);
    let u = multiplication_map(&s3)?;
    out.push(rank_check(
        "cpq_cubic_multiples_dim",
        "the cubics through C_pq have no linear syzygies: 2 * 4 = 8",
        8,
        &u,
    ));
    let (s4, r) = slice_check(
        cloud,
        4,
        rel_tol,
        "h0_ICpq_4",
        "C_pq lies on 35 - 24 = 11 independent quartics",
    )?;
    out.push(r);
    out.push(containment_check(
        "cpq_cubic_multiples_in_quartics",
        "linear multiples of the cubics vanish on C_pq",
        &u,
        &s4,
    )?);
    out.push(CheckRecord::dimension(
        "cpq_new_quartic_generators",
        "three quartics are needed beyond the cubic multiples",
        3,
        s4.dim().saturating_sub(u.dim()),
        u.sv_gap().min(s4.sv_gap()),
        MIN_CERTIFIED_GAP,
    ));
    let (s5, r) = slice_check(
        cloud,
        5,
        rel_tol,
        "h0_ICpq_5",
        "C_pq lies on 56 - 30 = 26 independent quintics",
    )?;
    out.push(r);
    let m4 = multiplication_map(&s4)?;
    out.push(rank_check(
        "cpq_quartic_multiples_dim",
        "linear multiples of the quartics fill all quintics through C_pq",
        s5.dim(),
        &m4,
    ));
    out.push(equality_check(
        "cpq_generated_in_degree_4",
        "the degree-5 part of the ideal is generated by quartics",
        &m4,
        &s5,
    )?);
    Ok(out)
}

/// Largest relative residual of the pulled-back forms of `s` on `cloud`.
pub fn pullback_residual(map: &ProjectionMap, s: &FormSubspace, cloud: &PointCloud) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for f in s.forms() {
        let g = map.pull_back(&f)?;
        for p in cloud.points() {
            worst = worst.max(g.relative_residual(p)?);
        }
    }
    Ok(worst)
}

/// The plane curve obtained by projecting `C_pq` once more.
#[derive(Debug, Clone)]
pub struct PlaneSextic {
    pub form: HomogeneousForm,
    pub sv_gap: f64,
    pub center: ProjectivePoint,
    pub training_points: usize,
    /// Largest relative residual on the held-out image points.
    pub holdout_residual: f64,
    /// Dimension of the degree-5 slice of the training points.
    pub quintic_dim: usize,
    pub quintic_gap: f64,
    /// Centers tried before a unique sextic was found.
    pub attempts: usize,
}

fn fit_plane_sextic(cloud: &PointCloud, center: ProjectivePoint) -> Result<PlaneSextic> {
    let map = ProjectionMap::from_centers(std::slice::from_ref(&center))?;
    let images: Vec<ProjectivePoint> = cloud
        .points()
        .iter()
        .filter_map(|p| match map.project_point(p) {
            Err(Error::CenterHit { .. }) => None,
            other => Some(other),
        })
        .collect::<Result<_>>()?;
    let needed = MIN_TRAINING_POINTS + HOLDOUT_POINTS;
    if images.len() < needed {
        return Err(Error::InsufficientSamples {
            have: images.len(),
            needed,
        });
    }
    let image = PointCloud::new(images, Provenance::PlaneImage, cloud.seed(), cloud.curve_degree())?;
    let (train, holdout) = image.split_holdout(HOLDOUT_POINTS)?;
    let s6 = interpolate_slice(&train, 6, DEFAULT_REL_TOL)?;
    if s6.dim() != 1 || !s6.is_certified() {
        return Err(Error::NonUniqueSextic {
            dim: s6.dim(),
            gap: s6.sv_gap(),
        });
    }
    let form = s6.forms().remove(0);
    let mut holdout_residual: f64 = 0.0;
    for p in holdout.points() {
        holdout_residual = holdout_residual.max(form.relative_residual(p)?);
    }
    let s5 = interpolate_slice(&train, 5, DEFAULT_REL_TOL)?;
    Ok(PlaneSextic {
        form,
        sv_gap: s6.sv_gap(),
        center,
        training_points: train.len(),
        holdout_residual,
        quintic_dim: s5.dim(),
        quintic_gap: s5.sv_gap(),
        attempts: 1,
    })
}

/// Projects a `C_pq` cloud from a random point of `P^3` and interpolates the
/// unique sextic through the image. A non-unique fit is retried once with a
/// fresh center.
pub fn plane_image_sextic(cloud: &PointCloud, seed: u64) -> Result<PlaneSextic> {
    if cloud.ambient_dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: cloud.ambient_dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match fit_plane_sextic(cloud, random_point(3, &mut rng)?) {
        Err(Error::NonUniqueSextic { .. }) => {
            let mut s = fit_plane_sextic(cloud, random_point(3, &mut rng)?)?;
            s.attempts = 2;
            Ok(s)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit_eqs::{build_secant_cubics, compute_constants};
    use crate::vanishing_interp::sample_secant;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn setup() -> (ThetaEmbedding, SecantCubics) {
        let mut e = ThetaEmbedding::sextic(c(0.0, 1.0)).unwrap();
        e.validate().unwrap();
        let sc = build_secant_cubics(&compute_constants(&e).unwrap()).unwrap();
        (e, sc)
    }

    fn point(v: &[(f64, f64)]) -> ProjectivePoint {
        ProjectivePoint::new(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn rotation_is_unitary_and_kills_centers() {
        let p = point(&[
            (0.3, 0.1),
            (-0.2, 0.9),
            (0.5, -0.5),
            (1.0, 0.0),
            (0.1, 0.2),
            (-0.7, 0.3),
        ]);
        let q = point(&[(0.2, 0.0), (0.4, 0.4), (-1.0, 0.1), (0.3, -0.6), (0.5, 0.5)]);
        let m = ProjectionMap::from_centers(std::slice::from_ref(&p))
            .unwrap()
            .then(&q)
            .unwrap();
        assert_eq!((m.source_dim(), m.target_dim(), m.dropped()), (5, 3, 2));
        assert!(m.unitarity_defect() < 1e-12);
        assert!(m.center_residual() < 1e-12);
        assert!(matches!(m.project_point(&p), Err(Error::CenterHit { .. })));
    }

    #[test]
    fn composition_matches_sequential_projection() {
        let p = point(&[
            (0.3, 0.1),
            (-0.2, 0.9),
            (0.5, -0.5),
            (1.0, 0.0),
            (0.1, 0.2),
            (-0.7, 0.3),
        ]);
        let q = point(&[(0.2, 0.0), (0.4, 0.4), (-1.0, 0.1), (0.3, -0.6), (0.9, 0.9)]);
        let first = ProjectionMap::from_centers(&[p]).unwrap();
        let both = first.then(&q).unwrap();
        let second = ProjectionMap::from_centers(&[q]).unwrap();
        let x = point(&[(0.1, 0.0), (0.2, 0.3), (0.3, -0.1), (-0.4, 0.4), (1.0, 0.0), (0.6, 0.6)]);
        let a = second.project_point(&first.project_point(&x).unwrap()).unwrap();
        let b = both.project_point(&x).unwrap();
        // Same point up to a unitary change of coordinates on the target.
        let y = point(&[(0.5, 0.1), (0.7, -0.2), (-0.3, 0.3), (1.0, 0.0), (0.2, 0.2), (0.0, 0.4)]);
        let a2 = second.project_point(&first.project_point(&y).unwrap()).unwrap();
        let b2 = both.project_point(&y).unwrap();
        let inner = |u: &ProjectivePoint, v: &ProjectivePoint| {
            let s: Complex64 = u.coords().iter().zip(v.coords()).map(|(p, q)| p.conj() * q).sum();
            s.norm() / (u.norm() * v.norm())
        };
        assert!((inner(&a, &a2) - inner(&b, &b2)).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_points_keep_their_norm() {
        let p = point(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let m = ProjectionMap::from_centers(&[p]).unwrap();
        let l = m.linear_map();
        let x = nalgebra::DVector::from_vec(vec![c(0.0, 0.0), c(0.6, 0.0), c(0.0, -0.8)]);
        assert!(((&l * &x).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn generic_centers_avoid_the_secant_variety() {
        let (e, sc) = setup();
        let p = pick_generic_center(&sc, 11).unwrap();
        assert!(is_generic_center(&sc, &p).unwrap());
        assert_eq!(p, pick_generic_center(&sc, 11).unwrap());
        let on_curve = e.embed(c(0.31, 0.47)).unwrap();
        assert!(!is_generic_center(&sc, &on_curve).unwrap());
        let chords = sample_secant(&e, 1, 5).unwrap();
        assert!(!is_generic_center(&sc, &chords.points()[0]).unwrap());
    }

    #[test]
    fn pull_back_commutes_with_evaluation() {
        let p = point(&[
            (0.3, 0.1),
            (-0.2, 0.9),
            (0.5, -0.5),
            (1.0, 0.0),
            (0.1, 0.2),
            (-0.7, 0.3),
        ]);
        let m = ProjectionMap::from_centers(&[p]).unwrap();
        let f = HomogeneousForm::from_terms(
            4,
            2,
            [(vec![1, 0, 0, 1, 0], c(1.0, 2.0)), (vec![0, 0, 2, 0, 0], c(-0.5, 0.0))],
        )
        .unwrap();
        let g = m.pull_back(&f).unwrap();
        let x = point(&[(0.1, 0.0), (0.2, 0.3), (0.3, -0.1), (-0.4, 0.4), (1.0, 0.0), (0.6, 0.6)]);
        let y = m.linear_map() * nalgebra::DVector::from_column_slice(x.coords());
        let lhs = g.evaluate_coords(x.coords()).unwrap();
        let rhs = f.evaluate_coords(y.as_slice()).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn projected_cloud_has_three_quadrics() {
        let (e, sc) = setup();
        let m = ProjectionMap::from_centers(&[pick_generic_center(&sc, 1).unwrap()]).unwrap();
        let cloud = build_projected_curve(&e, &m, 60, 4).unwrap();
        assert_eq!(cloud.variety_name(), "Cp");
        let s2 = interpolate_slice(&cloud, 2, DEFAULT_REL_TOL).unwrap();
        assert_eq!(s2.dim(), 3);
        assert!(s2.is_certified());
        let c6 = PointCloud::from_curve(&e, 30, 9).unwrap();
        assert!(pullback_residual(&m, &s2, &c6).unwrap() < PULLBACK_TOL);
        assert_eq!(m.pull_back_subspace(&s2).unwrap().dim(), 3);
    }
}
