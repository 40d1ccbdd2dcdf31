// Interpolates the quadrics through the sextic and splits them into the
// four Heisenberg submodules of Sym^2.
//
//     cargo run --example heisenberg_split

use elliptic_sextic::curve_embed::ThetaEmbedding;
use elliptic_sextic::heisenberg::{build_isotypic_table, split_into_submodules, HeisenbergContext, Isotypic};
use elliptic_sextic::polyspace::FormSubspace;
use elliptic_sextic::vanishing_interp::{ideal_slice, PointCloud};
use elliptic_sextic::{Complex64, Result};

pub fn run() -> Result<Vec<usize>> {
    let mut e = ThetaEmbedding::sextic(Complex64::new(0.0, 1.0))?;
    e.validate()?;
    let cloud = PointCloud::from_curve(&e, 200, 42)?;
    let quadrics = ideal_slice(&cloud, 2)?;
    println!(
        "quadrics through the curve: {} (gap {:.2e})",
        quadrics.dim(),
        quadrics.sv_gap()
    );

    let h = HeisenbergContext::new(6)?;
    println!("invariance defect {:.2e}", h.invariance_defect(&quadrics)?);

    let table = build_isotypic_table();
    for (label, block) in table.blocks() {
        println!("  {:<4} dim {}", label.label(), block.dim());
    }
    let whole: Vec<usize> = split_into_submodules(&FormSubspace::full(5, 2), &table)?
        .iter()
        .map(FormSubspace::dim)
        .collect();
    let parts: Vec<usize> = split_into_submodules(&quadrics, &table)?
        .iter()
        .map(FormSubspace::dim)
        .collect();
    let labels = [
        &[Isotypic::V0Plus, Isotypic::V2Plus][..],
        &[Isotypic::V0Minus, Isotypic::V2Minus],
        &[Isotypic::V1Plus, Isotypic::V3],
        &[Isotypic::V1Minus],
    ];
    for ((ls, w), p) in labels.iter().zip(&whole).zip(&parts) {
        let name: Vec<&str> = ls.iter().map(|l| l.label()).collect();
        println!("{:<10} {p} of {w}", name.join("+"));
    }
    Ok(parts)
}

fn main() -> Result<()> {
    run().map(|_| ())
}
