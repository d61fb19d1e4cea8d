//! The `a = 0` reference theory: spectral Clebsch dynamics on a flat lattice.
//!
//! With `f(x) = Σ_k w_k f̃(k) e^{2πi k·x}` the product of two fields has modes
//! `(fg)~(K) = (1/w_K) Σ_{k+p=K} w_k w_p f̃(k) g̃(p)`, restricted to pairs
//! whose sum stays on the grid. Velocity is `v = P(λ∇μ)`, vorticity
//! `ω = ∇λ × ∇μ`, and the Hamiltonian is the kinetic energy `½⟨v, v⟩`.
//! The mean-flow mode `K = 0` of the velocity is pinned to zero.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::field::{ClebschState, ModeField};
use crate::grid::MomentumGrid;
use crate::integrate::ModeSystem;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

pub type CVec3 = [Complex64; 3];

const CZERO: Complex64 = Complex64::new(0.0, 0.0);
const ZERO3: CVec3 = [CZERO; 3];

fn cdot(k: Vec3, v: &CVec3) -> Complex64 {
    v[0] * k[0] + v[1] * k[1] + v[2] * k[2]
}

fn norm_sqr3(v: &CVec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn ccross(a: &CVec3, b: &CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Velocity modes `ṽ(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityModes {
    pub modes: Vec<CVec3>,
}

/// Vorticity modes `ω̃(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VorticityModes {
    pub modes: Vec<CVec3>,
}

/// `max_k |k̂·f(k)| / |f(k)|` over non-zero modes with `f(k) ≠ 0`.
fn longitudinal_fraction(grid: &MomentumGrid, modes: &[CVec3]) -> f64 {
    modes
        .iter()
        .zip(grid.nodes())
        .filter(|(f, k)| vec3::norm2(**k) > 0.0 && norm_sqr3(f) > 0.0)
        .map(|(f, &k)| cdot(k, f).norm() / (vec3::norm(k) * norm_sqr3(f).sqrt()))
        .fold(0.0, f64::max)
}

fn vector_reality_residual(grid: &MomentumGrid, modes: &[CVec3]) -> f64 {
    let mut r: f64 = 0.0;
    for (i, f) in modes.iter().enumerate() {
        let g = &modes[grid.mirror(i)];
        for c in 0..3 {
            r = r.max((g[c] - f[c].conj()).norm());
        }
    }
    r
}

impl VelocityModes {
    pub fn zeros(n: usize) -> Self {
        Self {
            modes: vec![ZERO3; n],
        }
    }

    /// Relative divergence `max |k̂·ṽ| / |ṽ|`.
    pub fn divergence_residual(&self, grid: &MomentumGrid) -> f64 {
        longitudinal_fraction(grid, &self.modes)
    }

    pub fn reality_residual(&self, grid: &MomentumGrid) -> f64 {
        vector_reality_residual(grid, &self.modes)
    }

    /// `½ Σ_K w_K |ṽ(K)|²`.
    pub fn energy(&self, grid: &MomentumGrid) -> f64 {
        0.5 * self
            .modes
            .iter()
            .zip(grid.weights())
            .map(|(v, w)| w * norm_sqr3(v))
            .sum::<f64>()
    }

    /// `curl v`, i.e. `2πi k × ṽ(k)`.
    pub fn curl(&self, grid: &MomentumGrid) -> VorticityModes {
        let modes = self
            .modes
            .iter()
            .zip(grid.nodes())
            .map(|(v, &k)| {
                let ik = k.map(|c| Complex64::new(0.0, 2.0 * PI * c));
                ccross(&ik, v)
            })
            .collect();
        VorticityModes { modes }
    }

    pub fn l2_norm(&self, grid: &MomentumGrid) -> f64 {
        (2.0 * self.energy(grid)).sqrt()
    }
}

impl VorticityModes {
    pub fn transversality_residual(&self, grid: &MomentumGrid) -> f64 {
        longitudinal_fraction(grid, &self.modes)
    }

    pub fn reality_residual(&self, grid: &MomentumGrid) -> f64 {
        vector_reality_residual(grid, &self.modes)
    }

    pub fn l2_norm(&self, grid: &MomentumGrid) -> f64 {
        self.modes
            .iter()
            .zip(grid.weights())
            .map(|(v, w)| w * norm_sqr3(v))
            .sum::<f64>()
            .sqrt()
    }
}

/// Leray projection `ũ ← ũ - k (k·ũ)/|k|²`, with the `k = 0` mode removed.
pub fn project_divfree(grid: &MomentumGrid, u: &VelocityModes) -> VelocityModes {
    let modes = u
        .modes
        .iter()
        .zip(grid.nodes())
        .map(|(v, &k)| {
            let k2 = vec3::norm2(k);
            if k2 == 0.0 {
                return ZERO3;
            }
            let s = cdot(k, v) / k2;
            [v[0] - s * k[0], v[1] - s * k[1], v[2] - s * k[2]]
        })
        .collect();
    VelocityModes { modes }
}

/// Scalar helicity `Σ_K w_K Re(ṽ*·ω̃)` and the vector `Σ_K w_K Re(ω̃ × ṽ*)`.
pub fn helicity_of(grid: &MomentumGrid, v: &VelocityModes, w: &VorticityModes) -> (f64, Vec3) {
    let mut scalar = 0.0;
    let mut vector = [0.0; 3];
    for ((vk, ok), &wk) in v.modes.iter().zip(&w.modes).zip(grid.weights()) {
        let vc = vk.map(|z| z.conj());
        scalar += wk * (vc[0] * ok[0] + vc[1] * ok[1] + vc[2] * ok[2]).re;
        let c = ccross(ok, &vc);
        for d in 0..3 {
            vector[d] += wk * c[d].re;
        }
    }
    (scalar, vector)
}

/// Classical Clebsch system on a flat (`a = 0`) grid.
#[derive(Debug, Clone)]
pub struct ClassicalSystem {
    grid: MomentumGrid,
    /// `(i, j, K)` with `k_i + k_j = k_K`, in `(i, j)` order.
    sums: Vec<(u32, u32, u32)>,
    dropped: Vec<(u32, u32)>,
}

impl ClassicalSystem {
    pub fn new(grid: MomentumGrid) -> Result<Self> {
        if !grid.a().is_classical() {
            return Err(Error::InvalidCutoff(grid.a().value()));
        }
        let mut sums = Vec::new();
        let mut dropped = Vec::new();
        let lat = grid.lattice();
        for (i, ni) in lat.iter().enumerate() {
            for (j, nj) in lat.iter().enumerate() {
                match grid.index_of([ni[0] + nj[0], ni[1] + nj[1], ni[2] + nj[2]]) {
                    Some(m) => sums.push((i as u32, j as u32, m as u32)),
                    None => dropped.push((i as u32, j as u32)),
                }
            }
        }
        Ok(Self {
            grid,
            sums,
            dropped,
        })
    }

    /// `W(K) = Σ_{k+p=K} w_k w_p λ̃(k) μ̃(p) p`.
    pub fn w_field(&self, s: &ClebschState) -> Vec<CVec3> {
        let w = self.grid.weights();
        let mut out = vec![ZERO3; self.grid.len()];
        for &(i, j, m) in &self.sums {
            let (i, j, m) = (i as usize, j as usize, m as usize);
            let z = s.lambda.amps[i] * s.mu.amps[j] * (w[i] * w[j]);
            let p = self.grid.node(j);
            for d in 0..3 {
                out[m][d] += z * p[d];
            }
        }
        out
    }

    /// `v = P(λ∇μ)`.
    pub fn velocity(&self, s: &ClebschState) -> VelocityModes {
        let w = self.grid.weights();
        let raw = self
            .w_field(s)
            .iter()
            .zip(w)
            .map(|(wk, &wm)| wk.map(|z| z * Complex64::new(0.0, 2.0 * PI / wm)))
            .collect();
        project_divfree(&self.grid, &VelocityModes { modes: raw })
    }

    /// `ω = ∇λ × ∇μ`.
    pub fn vorticity(&self, s: &ClebschState) -> VorticityModes {
        let w = self.grid.weights();
        let mut out = vec![ZERO3; self.grid.len()];
        let c = -(2.0 * PI) * (2.0 * PI);
        for &(i, j, m) in &self.sums {
            let (i, j, m) = (i as usize, j as usize, m as usize);
            let z = s.lambda.amps[i] * s.mu.amps[j] * (w[i] * w[j] * c / w[m]);
            let kxp = vec3::cross(self.grid.node(i), self.grid.node(j));
            for d in 0..3 {
                out[m][d] += z * kxp[d];
            }
        }
        VorticityModes { modes: out }
    }

    /// `H = ½ (2π)² Σ_{K≠0} W(K)†(1 - K̂K̂ᵀ)W(K) / w_K`.
    pub fn hamiltonian(&self, s: &ClebschState) -> f64 {
        let w = self.w_field(s);
        let mut h = 0.0;
        for (m, wk) in w.iter().enumerate() {
            let k = self.grid.node(m);
            let k2 = vec3::norm2(k);
            if k2 == 0.0 {
                continue;
            }
            let proj = norm_sqr3(wk) - cdot(k, wk).norm_sqr() / k2;
            h += proj / self.grid.weight(m);
        }
        0.5 * (2.0 * PI) * (2.0 * PI) * h
    }

    /// Advection of both Clebsch fields by the reconstructed velocity:
    /// `∂_t f̃(K) = -(1/w_K) Σ_{k+p=K} w_k w_p ṽ(k)·(2πi p) f̃(p)`.
    pub fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField) {
        let v = self.velocity(s);
        self.advect(&v, s)
    }

    fn advect(&self, v: &VelocityModes, s: &ClebschState) -> (ModeField, ModeField) {
        let w = self.grid.weights();
        let n = self.grid.len();
        let mut dl = vec![CZERO; n];
        let mut dm = vec![CZERO; n];
        for &(i, j, m) in &self.sums {
            let (i, j, m) = (i as usize, j as usize, m as usize);
            let p = self.grid.node(j);
            let vdotp = cdot(p, &v.modes[i]) * Complex64::new(0.0, 2.0 * PI * w[i] * w[j]);
            dl[m] -= vdotp * s.lambda.amps[j];
            dm[m] -= vdotp * s.mu.amps[j];
        }
        for m in 0..n {
            dl[m] /= w[m];
            dm[m] /= w[m];
        }
        (ModeField::from_amps(dl), ModeField::from_amps(dm))
    }

    /// Scalar kinetic helicity and the vector `∫ ω × v`.
    pub fn helicity(&self, s: &ClebschState) -> (f64, Vec3) {
        helicity_of(&self.grid, &self.velocity(s), &self.vorticity(s))
    }

    pub fn dropped_mass(&self, s: &ClebschState) -> f64 {
        let w = self.grid.weights();
        self.dropped
            .iter()
            .map(|&(i, j)| {
                let (i, j) = (i as usize, j as usize);
                w[i] * w[j] * (s.lambda.amps[i] * s.mu.amps[j]).norm()
            })
            .sum()
    }
}

impl ModeSystem for ClassicalSystem {
    fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    fn hamiltonian(&self, s: &ClebschState) -> f64 {
        ClassicalSystem::hamiltonian(self, s)
    }

    fn rhs(&self, s: &ClebschState) -> (ModeField, ModeField) {
        ClassicalSystem::rhs(self, s)
    }

    fn aliasing_loss(&self, s: &ClebschState) -> f64 {
        self.dropped_mass(s)
    }

    fn helicity(&self, s: &ClebschState) -> Option<(f64, Vec3)> {
        Some(ClassicalSystem::helicity(self, s))
    }
}
