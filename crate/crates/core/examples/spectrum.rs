//! Shell energy spectrum before and after a short fuzzy run.

use fuzzy_fluid::fuzzy::FuzzySystem;
use fuzzy_fluid::integrate;
use fuzzy_fluid::spectrum::shell_spectrum;
use fuzzy_fluid::{ClebschState, CutoffParam, MomentumGrid, PairingChoice};

fn main() -> fuzzy_fluid::Result<()> {
    let grid = MomentumGrid::new(1.0, 3.0, CutoffParam::new(0.1)?)?;
    let pairing = PairingChoice::PolarizedTrace;
    let sys = FuzzySystem::new(grid.clone(), pairing);
    let s0 = ClebschState::random(&grid, 5, 1.5, 0.2);
    let out = integrate::run(&sys, &s0, 2e-3, 0.2)?;
    let (before, after) = (shell_spectrum(&grid, pairing, &s0), shell_spectrum(&grid, pairing, &out.state));
    println!("{:>5} {:>6} {:>6} {:>12} {:>12}", "shell", "k", "nodes", "E(0)", "E(T)");
    for (b, e) in before.iter().zip(&after) {
        println!("{:>5} {:>6.2} {:>6} {:>12.4e} {:>12.4e}", b.index, b.k, b.nodes, b.energy, e.energy);
    }
    Ok(())
}
