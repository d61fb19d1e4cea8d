//! Classical Clebsch flow: velocity, vorticity, helicity and energy conservation.

use fuzzy_fluid::classical::ClassicalSystem;
use fuzzy_fluid::integrate;
use fuzzy_fluid::{ClebschState, CutoffParam, MomentumGrid};

fn main() -> fuzzy_fluid::Result<()> {
    let grid = MomentumGrid::new(1.0, 3.0, CutoffParam::new(0.0)?)?;
    let sys = ClassicalSystem::new(grid.clone())?;
    let s0 = ClebschState::random(&grid, 42, 1.5, 0.1);

    let v = sys.velocity(&s0);
    let w = sys.vorticity(&s0);
    let (hs, hv) = sys.helicity(&s0);
    println!("|v| = {:.4e}, |ω| = {:.4e}", v.l2_norm(&grid), w.l2_norm(&grid));
    println!("div v residual = {:.2e}", v.divergence_residual(&grid));
    println!(
        "helicity scalar = {hs:.3e}, vector = [{:.3e}, {:.3e}, {:.3e}]",
        hv[0], hv[1], hv[2]
    );

    let out = integrate::run(&sys, &s0, 1e-3, 0.5)?;
    let last = out.records.last().unwrap();
    println!("H(0) = {:.10e}, H(T) = {:.10e}", out.records[0].h, last.h);
    println!("relative drift = {:.2e}", out.relative_energy_drift());
    Ok(())
}
