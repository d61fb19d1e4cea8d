//! Built-in self-check suite run by `fuzzy-fluid verify`.
//!
//! Every check measures one residual on a small grid and compares it with a
//! fixed threshold. The checks always run in the same order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt;

use crate::classical::ClassicalSystem;
use crate::config::Tolerances;
use crate::field::{ClebschState, ModeField};
use crate::fuzzy::FuzzySystem;
use crate::grid::MomentumGrid;
use crate::integrate::{self, ModeSystem};
use crate::spectrum::shell_spectrum;
use crate::su2::{self, CutoffParam, GroupElement, PairingChoice};
use crate::vec3::{self, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} residual={:.3e} tol={:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Scales the fuzzy right-hand side by `1 + 1e-3` inside the gradient
    /// check, so the suite must report a failure.
    pub inject_fault: bool,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Central finite-difference prediction of `(∂_t λ̃, ∂_t μ̃)` from `H` alone.
///
/// For a node `n ≠ 0` the amplitude and its mirror are perturbed together,
/// `f_n → f_n + ε`, `f_n̄ → f_n̄ + ε` (giving `∂_x H`) and `f_n → f_n + iε`,
/// `f_n̄ → f_n̄ - iε` (giving `∂_y H`); the constrained derivative is
/// `½(∂_x + i∂_y)H`. At the origin only the real direction exists and the
/// derivative is `∂_x H`. Hamilton's equations then read
/// `∂_t μ̃_n = -G^λ_n / w_n` and `∂_t λ̃_n = G^μ_n / w_n`.
pub fn fd_rhs<S: ModeSystem + ?Sized>(sys: &S, s: &ClebschState, eps: f64) -> (ModeField, ModeField) {
    let grid = sys.grid();
    let n = grid.len();
    let grad = |which: usize, k: usize| -> Complex64 {
        let mk = grid.mirror(k);
        let eval = |dz: Complex64| {
            let mut t = s.clone();
            let f = if which == 0 { &mut t.lambda } else { &mut t.mu };
            if mk == k {
                f.amps[k] += dz.re;
            } else {
                f.amps[k] += dz;
                f.amps[mk] += dz.conj();
            }
            sys.hamiltonian(&t)
        };
        let dx = (eval(Complex64::new(eps, 0.0)) - eval(Complex64::new(-eps, 0.0))) / (2.0 * eps);
        if mk == k {
            return Complex64::new(dx, 0.0);
        }
        let dy = (eval(Complex64::new(0.0, eps)) - eval(Complex64::new(0.0, -eps))) / (2.0 * eps);
        Complex64::new(dx, dy) * 0.5
    };
    let w = grid.weights();
    let dl = (0..n).map(|k| grad(1, k) / w[k]).collect();
    let dm = (0..n).map(|k| -grad(0, k) / w[k]).collect();
    (ModeField::from_amps(dl), ModeField::from_amps(dm))
}

/// `max |x - y| / max |y|` over both fields.
pub fn relative_rhs_error(x: &(ModeField, ModeField), y: &(ModeField, ModeField)) -> f64 {
    let pairs = x.0.amps.iter().zip(&y.0.amps).chain(x.1.amps.iter().zip(&y.1.amps));
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for (a, b) in pairs {
        num = num.max((a - b).norm());
        den = den.max(b.norm());
    }
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Fuzzy Hamiltonian as the unfactorised sum over two pairs of nodes,
/// built from fresh pair deposits:
///
/// ```text
/// H = ½(2π)² Σ_{m≠e} (1/w_m) Σ_{ij,kl} conj(Λ_ij) Λ_kl c_m(ij) c_m(kl) B_m(j, l)
/// ```
///
/// with `Λ_ij = w_i w_j λ̃_i μ̃_j` and
/// `B_m(j, l) = q_j·q_l - (Q_m·q_j)(Q_m·q_l)/|Q_m|²`.
pub fn quadruple_sum_hamiltonian(grid: &MomentumGrid, pairing: PairingChoice, s: &ClebschState) -> f64 {
    let n = grid.len();
    let w = grid.weights();
    let dim = pairing.dim();
    let q: Vec<[f64; 4]> = grid
        .nodes()
        .iter()
        .map(|&k| su2::pairing_factor(k, grid.a(), pairing))
        .collect();
    let dot = |x: &[f64; 4], y: &[f64; 4]| (0..dim).map(|d| x[d] * y[d]).sum::<f64>();

    let mut by_target: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if let Ok(dep) = grid.deposit_pair(i, j) {
                for &(m, c) in dep.entries() {
                    by_target[m].push((i, j, c));
                }
            }
        }
    }
    let mut h = 0.0;
    for (m, list) in by_target.iter().enumerate() {
        if m == grid.origin() {
            continue;
        }
        let qm = &q[m];
        let qm2 = dot(qm, qm);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(i, j, c1) in list {
            let z1 = (s.lambda.amps[i] * s.mu.amps[j]).conj() * (w[i] * w[j] * c1);
            for &(k, l, c2) in list {
                let z2 = s.lambda.amps[k] * s.mu.amps[l] * (w[k] * w[l] * c2);
                let b = dot(&q[j], &q[l]) - dot(qm, &q[j]) * dot(qm, &q[l]) / qm2;
                acc += z1 * z2 * b;
            }
        }
        h += acc.re / w[m];
    }
    0.5 * (2.0 * PI) * (2.0 * PI) * h
}

fn random_vec(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    std::array::from_fn(|_| rng.random_range(-r..r))
}

fn grid(a: f64, kmax: f64) -> MomentumGrid {
    MomentumGrid::new(1.0, kmax, CutoffParam::new(a).expect("valid cutoff")).expect("valid grid")
}

fn check_group(rng: &mut ChaCha8Rng) -> f64 {
    let a = CutoffParam::new(0.3).unwrap();
    (0..1000)
        .map(|_| {
            let g: [GroupElement; 3] =
                std::array::from_fn(|_| GroupElement::from_momentum(random_vec(rng, 5.0), a));
            ((g[0] * g[1]) * g[2]).distance(g[0] * (g[1] * g[2]))
        })
        .fold(0.0, f64::max)
}

fn check_chart(rng: &mut ChaCha8Rng) -> f64 {
    let a = CutoffParam::new(0.2).unwrap();
    (0..1000)
        .map(|_| {
            let k = random_vec(rng, 10.0);
            let back = GroupElement::from_momentum(k, a).to_momentum(a).unwrap();
            vec3::norm(vec3::sub(back, k)) / vec3::norm(k).max(1.0)
        })
        .fold(0.0, f64::max)
}

fn check_pairing(rng: &mut ChaCha8Rng) -> f64 {
    let a = CutoffParam::new(0.25).unwrap();
    let av = a.value();
    (0..1000)
        .map(|_| {
            let (k1, k2) = (random_vec(rng, 3.0), random_vec(rng, 3.0));
            let d1 = 1.0 + av * av * vec3::norm2(k1);
            let d2 = 1.0 + av * av * vec3::norm2(k2);
            let b = su2::pairing_momenta(k1, k2, a, PairingChoice::PolarizedTrace).unwrap();
            let closed = (vec3::dot(k1, k2) + av * av * vec3::norm2(k1) * vec3::norm2(k2)) / (d1 * d2);
            (b - closed).abs()
        })
        .fold(0.0, f64::max)
}

fn check_partition(rng: &mut ChaCha8Rng) -> f64 {
    let g = grid(0.2, 2.0);
    let a = g.a();
    (0..1000)
        .filter_map(|_| {
            let k = random_vec(rng, 1.0);
            let dep = g.deposit(GroupElement::from_momentum(k, a)).ok()?;
            Some((dep.entries().iter().map(|e| e.1).sum::<f64>() - 1.0).abs())
        })
        .fold(0.0, f64::max)
}

fn check_classical_equivalence() -> f64 {
    let g = grid(0.0, 2.0);
    let fz = FuzzySystem::new(g.clone(), PairingChoice::PolarizedTrace);
    let cl = ClassicalSystem::new(g.clone()).unwrap();
    (0..5)
        .map(|seed| {
            let s = ClebschState::random(&g, seed, 1.5, 0.3);
            let (hf, hc) = (fz.hamiltonian(&s), cl.hamiltonian(&s));
            let dh = (hf - hc).abs() / hc.abs().max(f64::MIN_POSITIVE);
            dh.max(relative_rhs_error(&fz.rhs(&s), &cl.rhs(&s)))
        })
        .fold(0.0, f64::max)
}

fn check_gradient(fault: bool) -> f64 {
    let mut worst = 0.0f64;
    for pairing in [PairingChoice::PolarizedTrace, PairingChoice::ChartDot] {
        let g = grid(0.2, 2.0);
        let sys = FuzzySystem::new(g.clone(), pairing);
        let s = ClebschState::random(&g, 11, 1.5, 0.3);
        let mut rhs = sys.rhs(&s);
        if fault {
            rhs.0 = rhs.0.scaled(Complex64::new(1.0 + 1e-3, 0.0));
        }
        let fd = fd_rhs(&sys, &s, 1e-5);
        worst = worst.max(relative_rhs_error(&rhs, &fd));
    }
    worst
}

/// Relative comparison on the 7-node and 33-node grids.
fn check_brute_force() -> f64 {
    let mut worst = 0.0f64;
    for kmax in [1.0, 2.0] {
        let g = grid(0.3, kmax);
        let s = ClebschState::random(&g, 5, 1.5, 0.5);
        let sys = FuzzySystem::new(g.clone(), PairingChoice::PolarizedTrace);
        let h = sys.hamiltonian(&s);
        let b = quadruple_sum_hamiltonian(&g, PairingChoice::PolarizedTrace, &s);
        worst = worst.max((h - b).abs() / b.abs().max(f64::MIN_POSITIVE));
    }
    worst
}

fn check_divergence() -> f64 {
    let g = grid(0.0, 2.0);
    let cl = ClassicalSystem::new(g.clone()).unwrap();
    let s = ClebschState::random(&g, 8, 1.5, 0.3);
    let v = cl.velocity(&s);
    v.divergence_residual(&g) / v.l2_norm(&g).max(f64::MIN_POSITIVE)
}

fn check_run() -> (f64, f64) {
    let cfg = crate::fuzzy::FuzzyConfig {
        a: CutoffParam::new(0.1).unwrap(),
        pairing: PairingChoice::PolarizedTrace,
        h: 1.0,
        kmax: 2.0,
        dt: 0.01,
        t_end: 0.1,
    };
    let g = cfg.grid().unwrap();
    let s = ClebschState::random(&g, 42, 1.5, 0.1);
    let out = integrate::run_config(&cfg, &s).unwrap();
    (out.max_reality_residual(), out.relative_energy_drift())
}

fn check_shells() -> f64 {
    let g = grid(0.2, 2.0);
    let s = ClebschState::random(&g, 13, 1.5, 0.3);
    let sys = FuzzySystem::new(g.clone(), PairingChoice::ChartDot);
    let h = sys.hamiltonian(&s);
    let total: f64 = shell_spectrum(&g, PairingChoice::ChartDot, &s)
        .iter()
        .map(|x| x.energy)
        .sum();
    (total - h).abs() / h.max(f64::MIN_POSITIVE)
}

pub fn run_suite(opts: &VerifyOptions) -> VerifyReport {
    let tol = &opts.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (reality, drift) = check_run();
    let checks = vec![
        Check {
            name: "group_associativity",
            residual: check_group(&mut rng),
            tolerance: 1e-14,
        },
        Check {
            name: "chart_roundtrip",
            residual: check_chart(&mut rng),
            tolerance: 1e-12,
        },
        Check {
            name: "pairing_closed_form",
            residual: check_pairing(&mut rng),
            tolerance: 1e-12,
        },
        Check {
            name: "deposit_partition_of_unity",
            residual: check_partition(&mut rng),
            tolerance: 1e-14,
        },
        Check {
            name: "classical_limit_equivalence",
            residual: check_classical_equivalence(),
            tolerance: tol.classical_equivalence,
        },
        Check {
            name: "gradient_consistency",
            residual: check_gradient(opts.inject_fault),
            tolerance: tol.gradient_relative,
        },
        Check {
            name: "brute_force_hamiltonian",
            residual: check_brute_force(),
            tolerance: tol.brute_force,
        },
        Check {
            name: "velocity_divergence",
            residual: check_divergence(),
            tolerance: tol.divergence,
        },
        Check {
            name: "reality_preservation",
            residual: reality,
            tolerance: tol.reality,
        },
        Check {
            name: "energy_drift",
            residual: drift,
            tolerance: tol.energy_drift,
        },
        Check {
            name: "shell_sum",
            residual: check_shells(),
            tolerance: tol.shell_sum,
        },
    ];
    VerifyReport { checks }
}
