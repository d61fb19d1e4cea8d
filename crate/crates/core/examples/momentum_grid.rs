//! Lattice construction and cloud-in-cell deposition of a composed momentum.

use fuzzy_fluid::su2::{self, CutoffParam};
use fuzzy_fluid::MomentumGrid;

fn main() -> fuzzy_fluid::Result<()> {
    let a = CutoffParam::new(0.2)?;
    let grid = MomentumGrid::new(1.0, 3.0, a)?;
    println!("h = {}, kmax = {}, {} nodes", grid.h(), grid.kmax(), grid.len());
    let total: f64 = grid.weights().iter().sum();
    println!("sum of Haar weights = {total:.6}");

    let (i, j) = (grid.index_of([1, 0, 0]).unwrap(), grid.index_of([0, 2, 0]).unwrap());
    let k = su2::compose_momenta(grid.node(i), grid.node(j), a)?;
    println!("(1,0,0) ∘ (0,2,0) -> {k:.4?}");
    let d = grid.deposit_pair(i, j)?;
    for &(m, w) in d.entries() {
        println!("  node {:?} weight {w:.4}", grid.lattice()[m]);
    }
    println!("  lost to the ball = {:.4}", d.lost());
    Ok(())
}
