//! Time-stepping accuracy against exact solutions and refinement.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzy_fluid::fuzzy::FuzzyConfig;
use fuzzy_fluid::integrate::{self, rk4_step, ModeSystem};
use fuzzy_fluid::{ClebschState, ModeField, MomentumGrid, PairingChoice};

use common::*;

/// `λ̃' = A λ̃`, `μ̃' = A μ̃` with a fixed real matrix.
struct Linear {
    grid: MomentumGrid,
    a: DMatrix<f64>,
}

impl Linear {
    fn apply(&self, f: &ModeField) -> ModeField {
        let n = f.len();
        let amps = (0..n)
            .map(|i| (0..n).map(|j| f.amps[j] * self.a[(i, j)]).sum())
            .collect();
        ModeField::from_amps(amps)
    }
}

impl ModeSystem for Linear {
    fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    fn hamiltonian(&self, _s: &ClebschState) -> f64 {
        0.0
    }

    fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField) {
        (self.apply(&s.lambda), self.apply(&s.mu))
    }
}

fn linear_system() -> (Linear, ClebschState) {
    let g = grid(1.0, 1.0, 0.0);
    let n = g.len();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let f = |rng: &mut ChaCha8Rng| {
        ModeField::from_amps(
            (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
    };
    let s = ClebschState::new(f(&mut rng), f(&mut rng));
    (Linear { grid: g, a }, s)
}

fn exact(sys: &Linear, s: &ClebschState, t: f64) -> ClebschState {
    let e = (&sys.a * t).exp();
    let prop = Linear { grid: sys.grid.clone(), a: e };
    ClebschState::new(prop.apply(&s.lambda), prop.apply(&s.mu))
}

fn error(x: &ClebschState, y: &ClebschState) -> f64 {
    max_abs_diff(&x.lambda, &y.lambda).max(max_abs_diff(&x.mu, &y.mu))
}

#[test]
fn rk4_local_error_is_fifth_order() {
    let (sys, s) = linear_system();
    let local = |dt: f64| error(&rk4_step(&sys, &s, dt), &exact(&sys, &s, dt));
    let ratio = local(0.02) / local(0.01);
    assert!((ratio - 32.0).abs() <= 3.0, "{ratio}");
}

#[test]
fn rk4_global_error_is_fourth_order() {
    let (sys, s) = linear_system();
    let global = |n: usize| {
        let dt = 1.0 / n as f64;
        let mut x = s.clone();
        for _ in 0..n {
            x = rk4_step(&sys, &x, dt);
        }
        error(&x, &exact(&sys, &s, 1.0))
    };
    let ratio = global(20) / global(40);
    assert!((ratio - 16.0).abs() <= 1.5, "{ratio}");
}

fn drift(a: f64, dt: f64, amplitude: f64) -> f64 {
    let cfg = FuzzyConfig {
        a: cut(a),
        pairing: PairingChoice::PolarizedTrace,
        h: 1.0,
        kmax: 3.0,
        dt,
        t_end: 0.5,
    };
    let g = cfg.grid().unwrap();
    let s = ClebschState::random(&g, 42, 1.5, amplitude);
    integrate::run_config(&cfg, &s).unwrap().relative_energy_drift()
}

#[test]
fn energy_drift_converges_at_fourth_order_at_coarse_steps() {
    for a in [0.0, 0.05] {
        let ratio = drift(a, 4e-3, 0.1) / drift(a, 2e-3, 0.1);
        assert!((ratio - 16.0).abs() <= 0.3 * 16.0, "a={a}: {ratio}");
    }
}

#[test]
fn run_reports_non_finite_state() {
    let (mut sys, s) = linear_system();
    sys.a *= 1e3;
    let out = integrate::run(&sys, &s, 0.1, 50.0).unwrap();
    assert!(out.non_finite_at.is_some());
    assert!(out.state.is_finite());
}
