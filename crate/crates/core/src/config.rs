//! Run configuration files.
//!
//! A configuration is a JSON object. The keys `a`, `h`, `kmax`, `dt`,
//! `t_end`, `pairing` and `initial` are required; `output`,
//! `snapshot_every` and `tolerances` fall back to defaults. Unknown keys are
//! rejected with an error naming the key.
//!
//! ```json
//! {
//!   "a": 0.1, "h": 1.0, "kmax": 3.0, "dt": 0.001, "t_end": 0.5,
//!   "pairing": "polarized_trace",
//!   "initial": { "random": { "seed": 42, "k0": 1.5, "amplitude": 0.1 } }
//! }
//! ```
//!
//! An explicit initial state lists lattice triples with `λ̃` and `μ̃`
//! amplitudes as `[re, im]`. The mirror mode is filled in automatically:
//!
//! ```json
//! "initial": { "modes": [ { "k": [1, 0, 0], "lambda": [0.5, 0.0], "mu": [0.0, 0.2] } ] }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::field::{ClebschState, ModeField};
use crate::fuzzy::FuzzyConfig;
use crate::grid::MomentumGrid;
use crate::su2::{CutoffParam, PairingChoice};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    /// Integer lattice triple; the momentum is `h · k`.
    pub k: [i64; 3],
    pub lambda: [f64; 2],
    pub mu: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub seed: u64,
    pub k0: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    Modes(Vec<ModeSpec>),
    Random(RandomSpec),
}

impl InitialCondition {
    pub fn build(&self, grid: &MomentumGrid) -> Result<ClebschState> {
        match self {
            Self::Random(r) => Ok(ClebschState::random(grid, r.seed, r.k0, r.amplitude)),
            Self::Modes(modes) => {
                let mut lambda = ModeField::zeros(grid.len());
                let mut mu = ModeField::zeros(grid.len());
                for m in modes {
                    let i = grid.index_of(m.k).ok_or_else(|| {
                        Error::Config(format!("initial.modes: k = {:?} is not a grid node", m.k))
                    })?;
                    lambda.set_mirrored(grid, i, Complex64::new(m.lambda[0], m.lambda[1]));
                    mu.set_mirrored(grid, i, Complex64::new(m.mu[0], m.mu[1]));
                }
                Ok(ClebschState::new(lambda, mu))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    /// Output directory. Relative paths resolve against the config file's
    /// directory.
    pub dir: PathBuf,
    pub diagnostics: String,
    pub final_state: String,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("output"),
            diagnostics: "diagnostics.csv".into(),
            final_state: "final_state.json".into(),
        }
    }
}

/// Pass/fail thresholds used by the verification suite and the run checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub reality: f64,
    pub energy_drift: f64,
    pub classical_equivalence: f64,
    pub gradient_relative: f64,
    pub brute_force: f64,
    pub divergence: f64,
    pub shell_sum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            reality: 1e-10,
            energy_drift: 1e-8,
            classical_equivalence: 1e-12,
            gradient_relative: 1e-6,
            brute_force: 1e-10,
            divergence: 1e-10,
            shell_sum: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub a: CutoffParam,
    pub h: f64,
    pub kmax: f64,
    pub dt: f64,
    pub t_end: f64,
    pub pairing: PairingChoice,
    pub initial: InitialCondition,
    #[serde(default)]
    pub output: OutputSpec,
    /// Write a state snapshot every this many steps; 0 writes only the final
    /// state.
    #[serde(default)]
    pub snapshot_every: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Output directory for a config read from `config_path`.
    pub fn output_dir(&self, config_path: &Path) -> PathBuf {
        match config_path.parent() {
            Some(base) if self.output.dir.is_relative() => base.join(&self.output.dir),
            _ => self.output.dir.clone(),
        }
    }

    /// The configuration with every default written out.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, why: &str| Err(Error::Config(format!("{key}: {why}")));
        if !(self.h.is_finite() && self.h > 0.0) {
            return bad("h", "must be positive");
        }
        if !(self.kmax.is_finite() && self.kmax >= self.h) {
            return bad("kmax", "must be at least h");
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt", "must be positive");
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return bad("t_end", "must be non-negative");
        }
        if let InitialCondition::Random(r) = &self.initial {
            if !(r.k0.is_finite() && r.k0 > 0.0) {
                return bad("initial.random.k0", "must be positive");
            }
            if !r.amplitude.is_finite() {
                return bad("initial.random.amplitude", "must be finite");
            }
        }
        Ok(())
    }

    pub fn fuzzy(&self) -> FuzzyConfig {
        FuzzyConfig {
            a: self.a,
            pairing: self.pairing,
            h: self.h,
            kmax: self.kmax,
            dt: self.dt,
            t_end: self.t_end,
        }
    }

    pub fn grid(&self) -> Result<MomentumGrid> {
        self.fuzzy().grid()
    }

    pub fn initial_state(&self, grid: &MomentumGrid) -> Result<ClebschState> {
        self.initial.build(grid)
    }

    pub fn with_cutoff(&self, a: f64) -> Result<Self> {
        Ok(Self {
            a: CutoffParam::new(a)?,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "a": 0.1, "h": 1.0, "kmax": 2.0, "dt": 0.01, "t_end": 0.0,
        "pairing": "chart_dot",
        "initial": { "random": { "seed": 7, "k0": 1.5, "amplitude": 0.1 } }
    }"#;

    #[test]
    fn minimal_config_parses_with_defaults() {
        let c = SimConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.pairing, PairingChoice::ChartDot);
        assert_eq!(c.tolerances, Tolerances::default());
        assert_eq!(c.snapshot_every, 0);
        let again = SimConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn unknown_key_is_named() {
        let text = MINIMAL.replace("\"dt\"", "\"dtt\"");
        let msg = SimConfig::from_json(&text).unwrap_err().to_string();
        assert!(msg.contains("dtt"), "{msg}");
        let text = MINIMAL.replace("\"pairing\": \"chart_dot\",", "");
        let msg = SimConfig::from_json(&text).unwrap_err().to_string();
        assert!(msg.contains("pairing"), "{msg}");
    }

    #[test]
    fn invalid_values_are_rejected() {
        for (from, to, key) in [
            ("\"dt\": 0.01", "\"dt\": 0.0", "dt"),
            ("\"a\": 0.1", "\"a\": -1.0", "cutoff"),
            ("\"kmax\": 2.0", "\"kmax\": 0.5", "kmax"),
        ] {
            let msg = SimConfig::from_json(&MINIMAL.replace(from, to))
                .unwrap_err()
                .to_string();
            assert!(msg.contains(key), "{msg}");
        }
    }

    #[test]
    fn explicit_modes_are_mirrored() {
        let text = MINIMAL.replace(
            r#"{ "random": { "seed": 7, "k0": 1.5, "amplitude": 0.1 } }"#,
            r#"{ "modes": [ { "k": [1, 0, 0], "lambda": [0.5, 0.25], "mu": [0.0, 1.0] } ] }"#,
        );
        let c = SimConfig::from_json(&text).unwrap();
        let g = c.grid().unwrap();
        let s = c.initial_state(&g).unwrap();
        let i = g.index_of([1, 0, 0]).unwrap();
        let j = g.index_of([-1, 0, 0]).unwrap();
        assert_eq!(s.lambda.amps[i], Complex64::new(0.5, 0.25));
        assert_eq!(s.lambda.amps[j], Complex64::new(0.5, -0.25));
        assert_eq!(s.reality_residual(&g), 0.0);

        let off = text.replace("[1, 0, 0]", "[5, 0, 0]");
        let c = SimConfig::from_json(&off).unwrap();
        assert!(c.initial_state(&c.grid().unwrap()).is_err());
    }
}
