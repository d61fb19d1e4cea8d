//! Command implementations behind the `fuzzy-fluid` binary.
//!
//! Each command returns a process exit code: 0 on success, 2 for bad input
//! (config, snapshot or file errors) and 3 when a run produced non-finite
//! values.

use std::path::{Path, PathBuf};

use crate::config::SimConfig;
use crate::integrate::{self, RunOutput};
use crate::io::{self, StateSnapshot};
use crate::spectrum;
use crate::verify::{self, VerifyOptions};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NON_FINITE: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonFinite { .. } => EXIT_NON_FINITE,
        _ => EXIT_INPUT,
    }
}

fn report(res: Result<()>) -> i32 {
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Files written by [`simulate_config`].
#[derive(Debug, Clone)]
pub struct SimulateOutputs {
    pub diagnostics: PathBuf,
    pub final_state: PathBuf,
    pub resolved_config: PathBuf,
    pub snapshots: Vec<PathBuf>,
    pub run: RunOutput,
}

/// Runs a configuration and writes the diagnostics CSV, the config with all
/// defaults filled in, periodic snapshots and the final (or last finite)
/// state into `dir`. A non-finite run still writes everything and then
/// returns [`Error::NonFinite`].
pub fn simulate_config(cfg: &SimConfig, dir: &Path) -> Result<SimulateOutputs> {
    let grid = cfg.grid()?;
    let s0 = cfg.initial_state(&grid)?;
    let sys = integrate::system_for(&cfg.fuzzy())?;
    std::fs::create_dir_all(dir)?;

    let resolved_config = dir.join("resolved_config.json");
    io::write_atomic(&resolved_config, cfg.to_json().as_bytes())?;

    let mut snapshots = Vec::new();
    let every = cfg.snapshot_every;
    let run = integrate::run_with(sys.as_ref(), &s0, cfg.dt, cfg.t_end, |step, s| {
        if every > 0 && step % every == 0 {
            let p = dir.join(format!("snapshot_{step:06}.json"));
            StateSnapshot::new(&grid, cfg.pairing, s).write(&p)?;
            snapshots.push(p);
        }
        Ok(())
    })?;

    let diagnostics = dir.join(&cfg.output.diagnostics);
    io::write_diagnostics(&diagnostics, &run.records)?;
    let final_state = dir.join(&cfg.output.final_state);
    StateSnapshot::new(&grid, cfg.pairing, &run.state).write(&final_state)?;

    if let Some(t) = run.non_finite_at {
        return Err(Error::NonFinite { t });
    }
    Ok(SimulateOutputs {
        diagnostics,
        final_state,
        resolved_config,
        snapshots,
        run,
    })
}

pub fn simulate(config_path: &Path) -> i32 {
    report(
        SimConfig::load(config_path)
            .and_then(|cfg| simulate_config(&cfg, &cfg.output_dir(config_path)))
            .map(|out| {
                if let Some(last) = out.run.records.last() {
                    println!(
                        "t = {}  H = {:e}  drift = {:e}  -> {}",
                        last.t,
                        last.h,
                        out.run.relative_energy_drift(),
                        out.diagnostics.display()
                    );
                }
            }),
    )
}

pub fn verify(opts: &VerifyOptions) -> i32 {
    let rep = verify::run_suite(opts);
    for c in &rep.checks {
        println!("{c}");
    }
    if rep.all_passed() {
        println!("all {} checks passed", rep.checks.len());
        EXIT_OK
    } else {
        let n = rep.checks.iter().filter(|c| !c.passed()).count();
        println!("{n} of {} checks failed", rep.checks.len());
        1
    }
}

/// Default sweep: `a ∈ {0.2, 0.1, 0.05}·h`.
pub fn default_a_list(h: f64) -> Vec<f64> {
    vec![0.2 * h, 0.1 * h, 0.05 * h]
}

pub fn sweep_config(cfg: &SimConfig, a_list: &[f64], dir: &Path) -> Result<PathBuf> {
    let grid = cfg.grid()?;
    let s0 = cfg.initial_state(&grid)?;
    let rows = integrate::limit_sweep(&s0, &cfg.fuzzy(), a_list)?;
    let path = dir.join("sweep.csv");
    io::write_atomic(&path, io::sweep_csv(&rows).as_bytes())?;
    Ok(path)
}

pub fn sweep(config_path: &Path, a_list: Option<&[f64]>) -> i32 {
    report(SimConfig::load(config_path).and_then(|cfg| {
        let list = a_list.map_or_else(|| default_a_list(cfg.h), <[f64]>::to_vec);
        let path = sweep_config(&cfg, &list, &cfg.output_dir(config_path))?;
        print!("{}", std::fs::read_to_string(&path)?);
        Ok(())
    }))
}

/// Shell spectrum CSV of a state snapshot.
pub fn spectrum_csv(snapshot: &Path) -> Result<String> {
    let snap = StateSnapshot::read(snapshot)?;
    let (grid, state) = snap.restore()?;
    Ok(spectrum::spectrum_csv(&spectrum::shell_spectrum(&grid, snap.pairing, &state)))
}

pub fn spectrum(snapshot: &Path, out: Option<&Path>) -> i32 {
    report(spectrum_csv(snapshot).and_then(|csv| match out {
        Some(p) => io::write_atomic(p, csv.as_bytes()),
        None => {
            print!("{csv}");
            Ok(())
        }
    }))
}
