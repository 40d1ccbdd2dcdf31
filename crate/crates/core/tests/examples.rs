// Runs each example through its `run` function so they stay in sync with the
// library.

#[allow(dead_code)]
mod embed_curve {
    include!("../examples/embed_curve.rs");
}
#[allow(dead_code)]
mod heisenberg_split {
    include!("../examples/heisenberg_split.rs");
}
#[allow(dead_code)]
mod quadric_basis {
    include!("../examples/quadric_basis.rs");
}
#[allow(dead_code)]
mod secant_cubics {
    include!("../examples/secant_cubics.rs");
}
#[allow(dead_code)]
mod projections {
    include!("../examples/projections.rs");
}
#[allow(dead_code)]
mod plane_sextic {
    include!("../examples/plane_sextic.rs");
}
#[allow(dead_code)]
mod full_report {
    include!("../examples/full_report.rs");
}

#[test]
fn embed_curve_example() {
    let v = embed_curve::run().unwrap();
    assert!(v.sigma_residual < 1e-9 && v.tau_residual < 1e-9);
}

#[test]
fn heisenberg_split_example() {
    assert_eq!(heisenberg_split::run().unwrap(), vec![3, 3, 3, 0]);
}

#[test]
fn quadric_basis_example() {
    let s = quadric_basis::run().unwrap();
    assert!(s.max_residual < 1e-9);
    assert!(s.distance < 1e-7);
}

#[test]
fn secant_cubics_example() {
    let s = secant_cubics::run().unwrap();
    assert_eq!(s.slice_dim, 2);
    assert!(s.distance < 1e-7 && s.max_residual < 1e-8 && s.identities_pass);
}

#[test]
fn projections_example() {
    let records = projections::run().unwrap();
    assert_eq!(records.len(), 18);
    for r in &records {
        assert!(r.pass, "{r}");
    }
}

#[test]
fn plane_sextic_example() {
    let ps = plane_sextic::run().unwrap();
    assert_eq!(ps.form.degree(), 6);
    assert_eq!(ps.quintic_dim, 0);
    assert!(ps.holdout_residual < 1e-8);
}

#[test]
fn full_report_example() {
    let r = full_report::run().unwrap();
    assert!(r.passed(), "{}", r.table());
}
