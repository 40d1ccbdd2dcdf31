// The secant variety sits between the curve and P^5, so its ideal sits
// inside the curve's ideal in every degree.

use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::explicit_eqs::{build_secant_cubics, compute_constants};
use elliptic_sextic::polyspace::{containment_defect, multiplication_map, subspace_distance, DEFAULT_REL_TOL};
use elliptic_sextic::vanishing_interp::{interpolate_slice, sample_secant, PointCloud};
use elliptic_sextic::Complex64;

#[test]
fn secant_ideal_is_sandwiched() {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0)).unwrap();
    e.validate().unwrap();
    let sc = build_secant_cubics(&compute_constants(&e).unwrap()).unwrap();
    let sec = sample_secant(&e, 700, 42).unwrap();
    let curve = PointCloud::from_curve(&e, 700, 42).unwrap();

    assert_eq!(interpolate_slice(&sec, 2, DEFAULT_REL_TOL).unwrap().dim(), 0);

    let sec3 = interpolate_slice(&sec, 3, DEFAULT_REL_TOL).unwrap();
    let c3 = interpolate_slice(&curve, 3, DEFAULT_REL_TOL).unwrap();
    assert_eq!(sec3.dim(), 2);
    assert!(subspace_distance(&sec3, &sc.span().unwrap()).unwrap() < 1e-7);
    assert!(containment_defect(&sec3, &c3).unwrap() < 1e-7);

    // Every quartic through the secant variety is a linear multiple of the
    // two cubics.
    let sec4 = interpolate_slice(&sec, 4, DEFAULT_REL_TOL).unwrap();
    let c4 = interpolate_slice(&curve, 4, DEFAULT_REL_TOL).unwrap();
    let multiples = multiplication_map(&sc.span().unwrap()).unwrap();
    assert_eq!(multiples.dim(), 12);
    assert_eq!(sec4.dim(), 12);
    assert!(containment_defect(&multiples, &sec4).unwrap() < 1e-7);
    assert!(containment_defect(&sec4, &c4).unwrap() < 1e-7);
    assert_eq!(c4.dim(), 102);
}

#[test]
fn secant_points_avoid_the_curve() {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.3, 1.2)).unwrap();
    e.validate().unwrap();
    let sec = sample_secant(&e, 50, 3).unwrap();
    let quadrics = interpolate_slice(&PointCloud::from_curve(&e, 200, 3).unwrap(), 2, DEFAULT_REL_TOL).unwrap();
    // Some quadric through the curve is nonzero on each secant point.
    for p in sec.points() {
        let worst = quadrics
            .forms()
            .iter()
            .map(|q| q.relative_residual(p).unwrap())
            .fold(0.0, f64::max);
        assert!(worst > 1e-6);
    }
}
