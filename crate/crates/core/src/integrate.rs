//! Time integration, per-step diagnostics and the `a → 0` sweep.

use serde::Serialize;

use crate::classical::ClassicalSystem;
use crate::field::{ClebschState, ModeField};
use crate::fuzzy::{FuzzyConfig, FuzzySystem};
use crate::grid::MomentumGrid;
use crate::su2::CutoffParam;
use crate::vec3::Vec3;
use crate::Result;

/// A Hamiltonian ODE on the mode amplitudes of a grid.
pub trait ModeSystem: Send + Sync {
    fn grid(&self) -> &MomentumGrid;

    fn hamiltonian(&self, s: &ClebschState) -> f64;

    /// `(∂_t λ̃, ∂_t μ̃)`.
    fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField);

    /// Out-of-band mass dropped by the truncation for this state.
    fn aliasing_loss(&self, _s: &ClebschState) -> f64 {
        0.0
    }

    /// Scalar and vector kinetic helicity, where defined.
    fn helicity(&self, _s: &ClebschState) -> Option<(f64, Vec3)> {
        None
    }
}

/// The dynamics selected by a run configuration: the flat-lattice Clebsch
/// system at `a = 0`, the SU(2) system otherwise.
pub fn system_for(cfg: &FuzzyConfig) -> Result<Box<dyn ModeSystem>> {
    let grid = cfg.grid()?;
    if cfg.a.is_classical() {
        Ok(Box::new(ClassicalSystem::new(grid)?))
    } else {
        Ok(Box::new(FuzzySystem::new(grid, cfg.pairing)))
    }
}

fn offset(s: &ClebschState, k: &(ModeField, ModeField), c: f64) -> ClebschState {
    ClebschState {
        lambda: s.lambda.axpy(c, &k.0),
        mu: s.mu.axpy(c, &k.1),
        t: s.t,
    }
}

/// One classical fourth-order Runge–Kutta step, no projection.
pub fn rk4_step<S: ModeSystem + ?Sized>(sys: &S, s: &ClebschState, dt: f64) -> ClebschState {
    let k1 = sys.rhs(s);
    let k2 = sys.rhs(&offset(s, &k1, 0.5 * dt));
    let k3 = sys.rhs(&offset(s, &k2, 0.5 * dt));
    let k4 = sys.rhs(&offset(s, &k3, dt));
    let combine = |x: &ModeField, a: &ModeField, b: &ModeField, c: &ModeField, d: &ModeField| {
        let amps = x
            .amps
            .iter()
            .enumerate()
            .map(|(n, z)| z + (a.amps[n] + (b.amps[n] + c.amps[n]) * 2.0 + d.amps[n]) * (dt / 6.0))
            .collect();
        ModeField::from_amps(amps)
    };
    ClebschState {
        lambda: combine(&s.lambda, &k1.0, &k2.0, &k3.0, &k4.0),
        mu: combine(&s.mu, &k1.1, &k2.1, &k3.1, &k4.1),
        t: s.t + dt,
    }
}

/// RK4 step followed by one reality projection. Returns the new state and the
/// reality residual that the projection removed.
pub fn step_rk4<S: ModeSystem + ?Sized>(sys: &S, s: &ClebschState, dt: f64) -> (ClebschState, f64) {
    let raw = rk4_step(sys, s, dt);
    let residual = raw.reality_residual(sys.grid());
    (raw.reality_project(sys.grid()), residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "L2_lambda")]
    pub l2_lambda: f64,
    #[serde(rename = "L2_mu")]
    pub l2_mu: f64,
    pub reality_residual: f64,
    pub aliasing_loss: f64,
    pub helicity_scalar: f64,
    pub helicity_vector: Vec3,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: &'static str = "t,H,L2_lambda,L2_mu,reality_residual,aliasing_loss,helicity_scalar,helicity_x,helicity_y,helicity_z";

    /// Diagnostics of `s`. Helicity columns are zero for systems that do not
    /// define it.
    pub fn measure<S: ModeSystem + ?Sized>(sys: &S, s: &ClebschState, reality_residual: f64) -> Self {
        let grid = sys.grid();
        let (hs, hv) = sys.helicity(s).unwrap_or((0.0, [0.0; 3]));
        Self {
            t: s.t,
            h: sys.hamiltonian(s),
            l2_lambda: s.lambda.l2_norm2(grid),
            l2_mu: s.mu.l2_norm2(grid),
            reality_residual,
            aliasing_loss: sys.aliasing_loss(s),
            helicity_scalar: hs,
            helicity_vector: hv,
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            self.t,
            self.h,
            self.l2_lambda,
            self.l2_mu,
            self.reality_residual,
            self.aliasing_loss,
            self.helicity_scalar,
        ]
        .iter()
        .chain(&self.helicity_vector)
        .all(|x| x.is_finite())
    }

    pub fn csv_row(&self) -> String {
        let v = self.helicity_vector;
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.t,
            self.h,
            self.l2_lambda,
            self.l2_mu,
            self.reality_residual,
            self.aliasing_loss,
            self.helicity_scalar,
            v[0],
            v[1],
            v[2]
        )
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    /// Final state, or the last finite state if the run blew up.
    pub state: ClebschState,
    /// Time at which a non-finite value appeared, if any.
    pub non_finite_at: Option<f64>,
}

impl RunOutput {
    pub fn max_reality_residual(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.reality_residual)
            .fold(0.0, f64::max)
    }

    pub fn relative_energy_drift(&self) -> f64 {
        let h0 = self.records.first().map_or(0.0, |r| r.h);
        let h1 = self.records.last().map_or(0.0, |r| r.h);
        ((h1 - h0) / h0).abs()
    }
}

/// Number of steps and the time of step `n` for a run to `t_end`.
fn schedule(t0: f64, dt: f64, t_end: f64) -> usize {
    if t_end <= t0 {
        0
    } else {
        ((t_end - t0) / dt - 1e-9).ceil() as usize
    }
}

/// Integrates to `t_end` with RK4, recording diagnostics at `t = t0` and after
/// every step. `observe` is called with the step index and state after each
/// record. The last step is shortened so the run ends exactly at `t_end`.
pub fn run_with<S, F>(
    sys: &S,
    s0: &ClebschState,
    dt: f64,
    t_end: f64,
    mut observe: F,
) -> Result<RunOutput>
where
    S: ModeSystem + ?Sized,
    F: FnMut(usize, &ClebschState) -> Result<()>,
{
    s0.check_grid(sys.grid())?;
    let t0 = s0.t;
    let steps = schedule(t0, dt, t_end);
    let mut state = s0.clone();
    let mut records = vec![DiagnosticsRecord::measure(sys, &state, state.reality_residual(sys.grid()))];
    observe(0, &state)?;
    for n in 1..=steps {
        let t_next = if n == steps { t_end } else { t0 + n as f64 * dt };
        let (mut next, residual) = step_rk4(sys, &state, t_next - state.t);
        next.t = t_next;
        let rec = DiagnosticsRecord::measure(sys, &next, residual);
        if !next.is_finite() || !rec.is_finite() {
            return Ok(RunOutput {
                records,
                state,
                non_finite_at: Some(t_next),
            });
        }
        records.push(rec);
        state = next;
        observe(n, &state)?;
    }
    Ok(RunOutput {
        records,
        state,
        non_finite_at: None,
    })
}

pub fn run<S: ModeSystem + ?Sized>(sys: &S, s0: &ClebschState, dt: f64, t_end: f64) -> Result<RunOutput> {
    run_with(sys, s0, dt, t_end, |_, _| Ok(()))
}

/// Runs the dynamics selected by `cfg` from `s0`.
pub fn run_config(cfg: &FuzzyConfig, s0: &ClebschState) -> Result<RunOutput> {
    let sys = system_for(cfg)?;
    run(sys.as_ref(), s0, cfg.dt, cfg.t_end)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    /// State distance to the classical run at `t_end`.
    pub distance: f64,
    /// `log(D_prev / D) / log(a_prev / a)` against the previous row.
    pub order: Option<f64>,
}

/// Runs the classical system and the fuzzy system at each `a` from the same
/// initial amplitudes and reports the final-state distance `D(a)`.
///
/// The first row is the classical baseline (`a = 0`, `D = 0`).
pub fn limit_sweep(s0: &ClebschState, cfg: &FuzzyConfig, a_list: &[f64]) -> Result<Vec<SweepRow>> {
    let base_cfg = FuzzyConfig {
        a: CutoffParam::classical(),
        ..*cfg
    };
    let base = run_config(&base_cfg, s0)?;
    let base_grid = base_cfg.grid()?;
    let mut rows = vec![SweepRow {
        a: 0.0,
        distance: 0.0,
        order: None,
    }];
    let mut prev: Option<(f64, f64)> = None;
    for &a in a_list {
        let c = FuzzyConfig {
            a: CutoffParam::new(a)?,
            ..*cfg
        };
        let out = run_config(&c, s0)?;
        let d = out.state.distance(&base.state, &base_grid);
        let order = prev.and_then(|(pa, pd)| {
            (a > 0.0 && pa > 0.0 && d > 0.0 && pd > 0.0).then(|| (pd / d).ln() / (pa / a).ln())
        });
        rows.push(SweepRow {
            a,
            distance: d,
            order,
        });
        prev = Some((a, d));
    }
    Ok(rows)
}
