#![allow(dead_code)]

use fuzzy_fluid::su2::{self, CutoffParam, PairingChoice};
use fuzzy_fluid::vec3::{self, Vec3};
use fuzzy_fluid::{ClebschState, ModeField, MomentumGrid};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn cut(a: f64) -> CutoffParam {
    CutoffParam::new(a).unwrap()
}

pub fn grid(h: f64, kmax: f64, a: f64) -> MomentumGrid {
    MomentumGrid::new(h, kmax, cut(a)).unwrap()
}

/// The desk-scale grid: `h = 1`, `kmax = 3`.
pub fn reference_grid(a: f64) -> MomentumGrid {
    grid(1.0, 3.0, a)
}

pub fn random_vec(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    std::array::from_fn(|_| rng.random_range(-r..r))
}

/// Uniform direction, radius uniform in `[0, r]`.
pub fn random_in_ball(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    loop {
        let v = random_vec(rng, 1.0);
        let n = vec3::norm(v);
        if n > 1e-3 && n <= 1.0 {
            return vec3::scale(rng.random_range(0.0..r) / n, v);
        }
    }
}

pub fn gaussian_field(g: &MomentumGrid, centre: Vec3, sigma: f64) -> ModeField {
    ModeField::from_amps(
        g.nodes()
            .iter()
            .map(|&k| Complex64::new((-vec3::norm2(vec3::sub(k, centre)) / (sigma * sigma)).exp(), 0.0))
            .collect(),
    )
}

/// Fuzzy Hamiltonian summed directly over node quadruples `(i, j, k, l)` and
/// target nodes `m`, with every pairing evaluated from the group elements:
///
/// `H = ½(2π)² Σ_{m≠e} (1/w_m) Σ conj(Λ_ij) Λ_kl c_m(ij) c_m(kl)
///      [B(j,l) - B(m,j) B(m,l) / B(m,m)]`.
pub fn quartic_hamiltonian(g: &MomentumGrid, pairing: PairingChoice, s: &ClebschState) -> f64 {
    let n = g.len();
    let a = g.a();
    let w = g.weights();
    let b = |x: usize, y: usize| su2::pairing_momenta(g.node(x), g.node(y), a, pairing).unwrap();
    let dep: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut dense = vec![0.0; n];
                    if let Ok(d) = g.deposit_pair(i, j) {
                        for &(m, c) in d.entries() {
                            dense[m] = c;
                        }
                    }
                    dense
                })
                .collect()
        })
        .collect();
    let mut h = 0.0;
    for m in 0..n {
        if m == g.origin() {
            continue;
        }
        let bmm = b(m, m);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let c1 = dep[i][j][m];
                if c1 == 0.0 {
                    continue;
                }
                let z1 = (s.lambda.amps[i] * s.mu.amps[j]).conj() * (w[i] * w[j] * c1);
                for k in 0..n {
                    for l in 0..n {
                        let c2 = dep[k][l][m];
                        if c2 == 0.0 {
                            continue;
                        }
                        let z2 = s.lambda.amps[k] * s.mu.amps[l] * (w[k] * w[l] * c2);
                        let kern = b(j, l) - b(m, j) * b(m, l) / bmm;
                        acc += z1 * z2 * kern;
                    }
                }
            }
        }
        h += acc.re / w[m];
    }
    0.5 * (2.0 * PI) * (2.0 * PI) * h
}

/// `(1/w_K) Σ_{n_i + n_j = n_K} w_i w_j f_i g_j` by direct lattice search.
pub fn lattice_convolution(g: &MomentumGrid, f1: &ModeField, f2: &ModeField) -> ModeField {
    let w = g.weights();
    let mut out = vec![Complex64::new(0.0, 0.0); g.len()];
    for (i, ni) in g.lattice().iter().enumerate() {
        for (j, nj) in g.lattice().iter().enumerate() {
            if let Some(m) = g.index_of([ni[0] + nj[0], ni[1] + nj[1], ni[2] + nj[2]]) {
                out[m] += f1.amps[i] * f2.amps[j] * (w[i] * w[j]);
            }
        }
    }
    for (o, wm) in out.iter_mut().zip(w) {
        *o /= *wm;
    }
    ModeField::from_amps(out)
}

pub fn max_abs_diff(x: &ModeField, y: &ModeField) -> f64 {
    x.amps.iter().zip(&y.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

pub fn max_abs(x: &ModeField) -> f64 {
    x.amps.iter().map(|a| a.norm()).fold(0.0, f64::max)
}
