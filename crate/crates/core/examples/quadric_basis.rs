// Computes alpha, beta, gamma at the distinguished point, checks their
// relations, and compares the nine closed-form quadrics with the
// interpolated ideal.
//
//     cargo run --example quadric_basis

use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::explicit_eqs::{build_quadrics, compute_constants};
use elliptic_sextic::polyspace::subspace_distance;
use elliptic_sextic::vanishing_interp::{ideal_slice, PointCloud};
use elliptic_sextic::{Complex64, Result};

pub struct QuadricSummary {
    pub max_residual: f64,
    pub distance: f64,
}

pub fn run() -> Result<QuadricSummary> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    e.validate()?;
    let k = compute_constants(&e)?;
    println!("alpha = {:.12}", k.alpha);
    println!("beta  = {:.12}", k.beta);
    println!("gamma = {:.12}", k.gamma);
    for r in k.relations() {
        println!("  {:<24} residual {:.2e}", r.name, r.residual);
    }

    let eq = build_quadrics(&k);
    let fresh = PointCloud::from_curve(&e, 200, 1234)?;
    let mut max_residual = 0.0f64;
    for (name, q) in eq.named() {
        let worst = fresh
            .points()
            .iter()
            .map(|p| q.relative_residual(p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        max_residual = max_residual.max(worst);
        println!("{name:<4} {} terms, worst residual {worst:.2e}", q.num_terms());
    }

    let interpolated = ideal_slice(&PointCloud::from_curve(&e, 600, 42)?, 2)?;
    let distance = subspace_distance(&eq.span()?, &interpolated)?;
    println!("worst residual on 200 fresh points {max_residual:.2e}");
    println!("distance to the interpolated quadrics {distance:.2e}");
    Ok(QuadricSummary { max_residual, distance })
}

fn main() -> Result<()> {
    run().map(|_| ())
}
