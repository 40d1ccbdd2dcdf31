// Projects the sextic down to P^2 and fits the unique plane sextic through
// the image, checking it on held-out points.
//
//     cargo run --example plane_sextic

use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::projections::{
    build_projected_curve, plane_image_sextic, random_point, PlaneSextic, ProjectionMap,
};
use elliptic_sextic::{Complex64, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> Result<PlaneSextic> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    e.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let centers = vec![random_point(5, &mut rng)?, random_point(5, &mut rng)?];
    let map = ProjectionMap::from_centers(&centers)?;
    let cloud = build_projected_curve(&e, &map, 600, 42)?;

    let ps = plane_image_sextic(&cloud, 9)?;
    println!(
        "training points {}, center attempts {}",
        ps.training_points, ps.attempts
    );
    println!(
        "sextic gap {:.2e}, holdout residual {:.2e}",
        ps.sv_gap, ps.holdout_residual
    );
    println!(
        "quintics through the image: {} (gap {:.2e})",
        ps.quintic_dim, ps.quintic_gap
    );
    println!("{} terms", ps.form.num_terms());
    Ok(ps)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
