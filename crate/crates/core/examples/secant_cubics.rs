// Builds the two cubics cutting out the secant variety, checks them on
// points of secant lines and verifies that their partials are quadrics
// through the curve.
//
//     cargo run --example secant_cubics

use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::explicit_eqs::{
    build_quadrics, build_secant_cubics, compute_constants, verify_derivative_identities,
};
use elliptic_sextic::polyspace::subspace_distance;
use elliptic_sextic::polyspace::DEFAULT_REL_TOL;
use elliptic_sextic::vanishing_interp::{interpolate_slice, sample_secant};
use elliptic_sextic::{Complex64, Result};

pub struct SecantSummary {
    pub slice_dim: usize,
    pub distance: f64,
    pub max_residual: f64,
    pub identities_pass: bool,
}

pub fn run() -> Result<SecantSummary> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    e.validate()?;
    let k = compute_constants(&e)?;
    let sc = build_secant_cubics(&k)?;
    println!("F1 = {}", sc.f1.to_text());
    println!("F2 = {}", sc.f2.to_text());

    let cloud = sample_secant(&e, 500, 42)?;
    let mut max_residual = 0.0f64;
    for f in sc.forms() {
        for p in cloud.points() {
            max_residual = max_residual.max(f.relative_residual(p)?);
        }
    }
    println!("worst residual on 500 secant points {max_residual:.2e}");

    let slice = interpolate_slice(&cloud, 3, DEFAULT_REL_TOL)?;
    let distance = subspace_distance(&slice, &sc.span()?)?;
    println!(
        "cubics through the secant cloud: {} (gap {:.2e}), distance {distance:.2e}",
        slice.dim(),
        slice.sv_gap()
    );

    let checks = verify_derivative_identities(&sc, &build_quadrics(&k))?;
    for c in &checks {
        println!(
            "  {:<24} {:.2e} {}",
            c.name,
            c.residual,
            if c.pass { "ok" } else { "FAILED" }
        );
    }
    Ok(SecantSummary {
        slice_dim: slice.dim(),
        distance,
        max_residual,
        identities_pass: checks.iter().all(|c| c.pass),
    })
}

fn main() -> Result<()> {
    run().map(|_| ())
}
