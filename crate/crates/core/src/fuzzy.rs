//! Clebsch dynamics with SU(2)-valued momenta.
//!
//! The quartic Hamiltonian is evaluated in factorised form. For every node
//! pair the composed element `G_ij = g_i g_j` is deposited on the grid, and
//! the bilinear W-field
//!
//! ```text
//! W_m = Σ_{i,j} w_i w_j λ̃_i μ̃_j c_m(G_ij) q(g_j)
//! ```
//!
//! collects the amplitudes, where `q` factorises the pairing,
//! `B(g1, g2) = q(g1)·q(g2)`. Then
//!
//! ```text
//! H = ½ (2π)² Σ_{m ≠ e} W_m† (1 - Q̂_m Q̂_mᵀ) W_m / w_m,    Q_m = q(g_m)
//! ```
//!
//! which is a sum of non-negative node terms. The equations of motion are the
//! exact gradient of this discrete `H` under the bracket
//! `{λ̃*_i, μ̃_j} = δ_ij / w_i`:
//!
//! ```text
//! ∂_t μ̃_n = -(1/w_n) ∂H/∂λ̃*_n,    ∂_t λ̃_n = (1/w_n) ∂H/∂μ̃*_n
//! ```
//!
//! where the derivatives are taken on the reality-constrained phase space, so
//! the flow keeps `f̃(ī) = conj f̃(i)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::coupling::CouplingTable;
use crate::field::{ClebschState, ModeField};
use crate::grid::MomentumGrid;
use crate::integrate::ModeSystem;
use crate::su2::{self, CutoffParam, PairingChoice};
use crate::Result;

const CZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Run-level parameters of the cutoff theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyConfig {
    pub a: CutoffParam,
    #[serde(default)]
    pub pairing: PairingChoice,
    pub h: f64,
    pub kmax: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl FuzzyConfig {
    pub fn grid(&self) -> Result<MomentumGrid> {
        MomentumGrid::new(self.h, self.kmax, self.a)
    }
}

/// The W-field: one `d`-vector per node, `d = pairing.dim()`. Unused trailing
/// slots are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WField {
    pub dim: usize,
    pub values: Vec<[Complex64; 4]>,
}

#[derive(Debug, Clone)]
pub struct FuzzySystem {
    grid: MomentumGrid,
    pairing: PairingChoice,
    table: CouplingTable,
    q: Vec<[f64; 4]>,
}

impl FuzzySystem {
    pub fn new(grid: MomentumGrid, pairing: PairingChoice) -> Self {
        let table = CouplingTable::new(&grid);
        let q = grid
            .nodes()
            .iter()
            .map(|&k| su2::pairing_factor(k, grid.a(), pairing))
            .collect();
        Self {
            grid,
            pairing,
            table,
            q,
        }
    }

    pub fn from_config(cfg: &FuzzyConfig) -> Result<Self> {
        Ok(Self::new(cfg.grid()?, cfg.pairing))
    }

    pub fn pairing(&self) -> PairingChoice {
        self.pairing
    }

    pub fn a(&self) -> CutoffParam {
        self.grid.a()
    }

    pub fn table(&self) -> &CouplingTable {
        &self.table
    }

    /// Pairing factor `q(g_m)` of node `m`.
    pub fn factor(&self, m: usize) -> [f64; 4] {
        self.q[m]
    }

    pub fn wfield(&self, s: &ClebschState) -> WField {
        let w = self.grid.weights();
        let dim = self.pairing.dim();
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|m| {
                let mut acc = [CZERO; 4];
                for &(p, c) in self.table.into_target(m) {
                    let (i, j) = self.table.pair(p as usize);
                    let z = s.lambda.amps[i] * s.mu.amps[j] * (w[i] * w[j] * c);
                    let qj = &self.q[j];
                    for d in 0..dim {
                        acc[d] += z * qj[d];
                    }
                }
                acc
            })
            .collect();
        WField { dim, values }
    }

    /// Per-node energy `½ (2π)² W_m†Π_m W_m / w_m`; zero at the identity node.
    pub fn node_energies(&self, s: &ClebschState) -> Vec<f64> {
        let wf = self.wfield(s);
        (0..self.grid.len())
            .map(|m| self.node_energy(m, &wf.values[m]))
            .collect()
    }

    fn node_energy(&self, m: usize, wm: &[Complex64; 4]) -> f64 {
        if m == self.grid.origin() {
            return 0.0;
        }
        let dim = self.pairing.dim();
        let q = &self.q[m];
        let q2: f64 = q[..dim].iter().map(|x| x * x).sum();
        let mut w2 = 0.0;
        let mut qw = CZERO;
        for d in 0..dim {
            w2 += wm[d].norm_sqr();
            qw += wm[d] * q[d];
        }
        let proj = w2 - qw.norm_sqr() / q2;
        0.5 * (2.0 * PI) * (2.0 * PI) * proj / self.grid.weight(m)
    }

    pub fn hamiltonian(&self, s: &ClebschState) -> f64 {
        self.node_energies(s).iter().sum()
    }

    /// `V_m = (2π)² Π_m W_m / w_m`, zero at the identity node.
    fn velocity_like(&self, wf: &WField) -> Vec<[Complex64; 4]> {
        let dim = wf.dim;
        let scale = (2.0 * PI) * (2.0 * PI);
        (0..self.grid.len())
            .map(|m| {
                let mut out = [CZERO; 4];
                if m == self.grid.origin() {
                    return out;
                }
                let q = &self.q[m];
                let wm = &wf.values[m];
                let q2: f64 = q[..dim].iter().map(|x| x * x).sum();
                let mut qw = CZERO;
                for d in 0..dim {
                    qw += wm[d] * q[d];
                }
                let s = qw / q2;
                let f = scale / self.grid.weight(m);
                for d in 0..dim {
                    out[d] = (wm[d] - s * q[d]) * f;
                }
                out
            })
            .collect()
    }

    /// Hamilton's equations for the discrete fuzzy Hamiltonian.
    pub fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField) {
        let wf = self.wfield(s);
        let v = self.velocity_like(&wf);
        let dim = wf.dim;
        let w = self.grid.weights();

        // s_p = q(g_j) · Σ_m c_m(G_ij) V_m
        let sp: Vec<Complex64> = (0..self.table.num_pairs())
            .into_par_iter()
            .map(|p| {
                let (_, j) = self.table.pair(p);
                let mut acc = [CZERO; 4];
                for &(m, c) in self.table.deposit(p) {
                    let vm = &v[m as usize];
                    for d in 0..dim {
                        acc[d] += vm[d] * c;
                    }
                }
                let qj = &self.q[j];
                (0..dim).map(|d| acc[d] * qj[d]).sum()
            })
            .collect();

        let n = self.grid.len();
        let a_lambda: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = CZERO;
                for p in self.table.row(i) {
                    let (_, j) = self.table.pair(p);
                    acc += s.mu.amps[j].conj() * sp[p] * w[j];
                }
                acc * (0.5 * w[i])
            })
            .collect();
        let a_mu: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut acc = CZERO;
                for &p in self.table.column(j) {
                    let (i, _) = self.table.pair(p as usize);
                    acc += s.lambda.amps[i].conj() * sp[p as usize] * w[i];
                }
                acc * (0.5 * w[j])
            })
            .collect();

        let mut dl = vec![CZERO; n];
        let mut dm = vec![CZERO; n];
        for k in 0..n {
            let mk = self.grid.mirror(k);
            let g_lambda = a_lambda[k] + a_lambda[mk].conj();
            let g_mu = a_mu[k] + a_mu[mk].conj();
            dm[k] = -g_lambda / w[k];
            dl[k] = g_mu / w[k];
        }
        (ModeField::from_amps(dl), ModeField::from_amps(dm))
    }

    /// Deposit mass lost to truncation, `Σ w_i w_j |λ̃_i μ̃_j| ℓ_ij`, where
    /// `ℓ_ij` is one for out-of-band pairs and the lost corner weight
    /// otherwise.
    pub fn dropped_mass(&self, s: &ClebschState) -> f64 {
        self.table
            .lost_mass(self.grid.weights(), &s.lambda.amps, &s.mu.amps)
    }
}

impl ModeSystem for FuzzySystem {
    fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    fn hamiltonian(&self, s: &ClebschState) -> f64 {
        FuzzySystem::hamiltonian(self, s)
    }

    fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField) {
        FuzzySystem::rhs(self, s)
    }

    fn aliasing_loss(&self, s: &ClebschState) -> f64 {
        self.dropped_mass(s)
    }
}

pub fn build_wfield(s: &ClebschState, cfg: &FuzzyConfig) -> Result<WField> {
    Ok(FuzzySystem::from_config(cfg)?.wfield(s))
}

pub fn fuzzy_hamiltonian(s: &ClebschState, cfg: &FuzzyConfig) -> Result<f64> {
    Ok(FuzzySystem::from_config(cfg)?.hamiltonian(s))
}

pub fn fuzzy_rhs(s: &ClebschState, cfg: &FuzzyConfig) -> Result<(ModeField, ModeField)> {
    Ok(FuzzySystem::from_config(cfg)?.rhs(s))
}
