// Embeds C/(Z + Z i) in P^5 with theta functions of level 6, checks the
// Heisenberg symmetry and writes a few sample points as CSV.
//
//     cargo run --example embed_curve

use elliptic_sextic::curve_embed::{write_samples_csv, ThetaEmbedding, Validation};
use elliptic_sextic::{Complex64, Result};

pub fn run() -> Result<Validation> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    let v = e.validate()?;
    println!(
        "sigma translation t = {:.6}, residual {:.2e}",
        v.t_sigma, v.sigma_residual
    );
    println!("tau translation   t = {:.6}, residual {:.2e}", v.t_tau, v.tau_residual);
    println!("shift direction {:?}, distinguished point c = {:.3}", v.shift, v.c);

    let x = e.coordinates(v.c)?;
    for (m, xm) in x.iter().enumerate() {
        println!("  x{m}(c) = {xm:.6e}");
    }

    let samples = e.sample_curve(4, 7)?;
    let mut buf = Vec::new();
    write_samples_csv(&samples, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    Ok(v)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
