//! Distance between fuzzy and classical end states as the cutoff shrinks.

use fuzzy_fluid::fuzzy::FuzzyConfig;
use fuzzy_fluid::integrate;
use fuzzy_fluid::{ClebschState, CutoffParam, PairingChoice};

fn main() -> fuzzy_fluid::Result<()> {
    let cfg = FuzzyConfig {
        a: CutoffParam::new(0.0)?,
        pairing: PairingChoice::PolarizedTrace,
        h: 1.0,
        kmax: 3.0,
        dt: 1e-3,
        t_end: 0.5,
    };
    let grid = cfg.grid()?;
    let s0 = ClebschState::random(&grid, 42, 1.5, 0.1);
    let a_list = [0.2, 0.1, 0.05, 0.025, 0.0125];
    println!("{:>8} {:>12} {:>8}", "a", "D(a)", "order");
    for row in integrate::limit_sweep(&s0, &cfg, &a_list)?.iter().skip(1) {
        let order = row.order.map_or("-".into(), |o| format!("{o:.3}"));
        println!("{:>8} {:>12.4e} {:>8}", row.a, row.distance, order);
    }
    Ok(())
}
