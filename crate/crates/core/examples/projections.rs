// Projects the sextic from one and then two generic points and certifies
// where the ideals of the image curves are generated.
//
//     cargo run --example projections

use elliptic_sextic::check::CheckRecord;
use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::explicit_eqs::{build_secant_cubics, compute_constants};
use elliptic_sextic::projections::{
    build_projected_curve, certify_generators_cp, certify_generators_cpq, pick_generic_center, random_point,
    ProjectionMap,
};
use elliptic_sextic::vanishing_interp::knormality_table;
use elliptic_sextic::{Complex64, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> Result<Vec<CheckRecord>> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    e.validate()?;
    let sc = build_secant_cubics(&compute_constants(&e)?)?;

    let p = pick_generic_center(&sc, 1)?;
    let cp_map = ProjectionMap::from_centers(&[p])?;
    let cp = build_projected_curve(&e, &cp_map, 600, 42)?;
    for row in knormality_table(&cp, &[1, 2, 3, 4])? {
        println!(
            "{} k={} dim {} expected {}",
            row.variety, row.degree, row.dim, row.expected
        );
    }
    let mut records = certify_generators_cp(&cp)?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cpq_map = cp_map.then(&random_point(4, &mut rng)?)?;
    let cpq = build_projected_curve(&e, &cpq_map, 600, 42)?;
    println!("second projection lands in P^{}", cpq_map.target_dim());
    records.extend(certify_generators_cpq(&cpq)?);

    for r in &records {
        println!("{r}");
    }
    Ok(records)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
