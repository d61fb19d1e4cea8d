//! Mode fields on a [`MomentumGrid`] and the Clebsch state.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::{PI, SQRT_2};

use crate::grid::MomentumGrid;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Complex amplitudes, one per grid node, in the grid's node order.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeField {
    pub amps: Vec<Complex64>,
}

impl ModeField {
    pub fn zeros(n: usize) -> Self {
        Self {
            amps: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_amps(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn check_grid(&self, grid: &MomentumGrid) -> Result<()> {
        if self.len() == grid.len() {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                expected: grid.len(),
                found: self.len(),
            })
        }
    }

    /// Sets the amplitude at node `i` and its conjugate at the mirror node.
    /// At the origin only the real part is kept.
    pub fn set_mirrored(&mut self, grid: &MomentumGrid, i: usize, z: Complex64) {
        let m = grid.mirror(i);
        if m == i {
            self.amps[i] = Complex64::new(z.re, 0.0);
        } else {
            self.amps[i] = z;
            self.amps[m] = z.conj();
        }
    }

    /// `max_i |f(ī) - conj f(i)|`.
    pub fn reality_residual(&self, grid: &MomentumGrid) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, z)| (self.amps[grid.mirror(i)] - z.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Orthogonal projection onto fields with `f(ī) = conj f(i)`.
    pub fn reality_project(&self, grid: &MomentumGrid) -> Self {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, z)| 0.5 * (z + self.amps[grid.mirror(i)].conj()))
            .collect();
        Self { amps }
    }

    /// `f(x) = Σ_i w_i f_i exp(2πi k_i·x)`.
    pub fn evaluate_position(&self, grid: &MomentumGrid, x: Vec3) -> Complex64 {
        self.amps
            .iter()
            .zip(grid.nodes())
            .zip(grid.weights())
            .map(|((f, &k), &w)| f * w * Complex64::from_polar(1.0, 2.0 * PI * vec3::dot(k, x)))
            .sum()
    }

    /// Quadrature norm `Σ_i w_i |f_i|²`.
    pub fn l2_norm2(&self, grid: &MomentumGrid) -> f64 {
        self.amps
            .iter()
            .zip(grid.weights())
            .map(|(f, w)| w * f.norm_sqr())
            .sum()
    }

    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x + y * s)
            .collect();
        Self { amps }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Seeded random field satisfying reality, with per-mode amplitude
    /// `amplitude · exp(-|k|²/k0²)` times a unit complex Gaussian. Modes with
    /// `|k| > support` are left at zero.
    pub fn random_band_limited(
        grid: &MomentumGrid,
        rng: &mut ChaCha8Rng,
        k0: f64,
        amplitude: f64,
        support: f64,
    ) -> Self {
        let mut f = Self::zeros(grid.len());
        for i in 0..grid.len() {
            let m = grid.mirror(i);
            if m < i {
                continue;
            }
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            let k = grid.node(i);
            if vec3::norm(k) > support * (1.0 + 1e-12) {
                continue;
            }
            let env = amplitude * (-vec3::norm2(k) / (k0 * k0)).exp();
            let z = if m == i {
                Complex64::new(env * re, 0.0)
            } else {
                Complex64::new(re, im) * (env / SQRT_2)
            };
            f.set_mirrored(grid, i, z);
        }
        f
    }
}

/// The dynamical state: the Clebsch pair `(λ̃, μ̃)` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClebschState {
    pub lambda: ModeField,
    pub mu: ModeField,
    pub t: f64,
}

impl ClebschState {
    pub fn zeros(grid: &MomentumGrid) -> Self {
        Self {
            lambda: ModeField::zeros(grid.len()),
            mu: ModeField::zeros(grid.len()),
            t: 0.0,
        }
    }

    pub fn new(lambda: ModeField, mu: ModeField) -> Self {
        Self { lambda, mu, t: 0.0 }
    }

    pub fn check_grid(&self, grid: &MomentumGrid) -> Result<()> {
        self.lambda.check_grid(grid)?;
        self.mu.check_grid(grid)
    }

    /// Random band-limited pair drawn from one seeded stream (λ̃ first).
    pub fn random(grid: &MomentumGrid, seed: u64, k0: f64, amplitude: f64) -> Self {
        Self::random_with_support(grid, seed, k0, amplitude, f64::INFINITY)
    }

    /// As [`ClebschState::random`], restricted to `|k| ≤ support`.
    pub fn random_with_support(
        grid: &MomentumGrid,
        seed: u64,
        k0: f64,
        amplitude: f64,
        support: f64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = ModeField::random_band_limited(grid, &mut rng, k0, amplitude, support);
        let mu = ModeField::random_band_limited(grid, &mut rng, k0, amplitude, support);
        Self::new(lambda, mu)
    }

    pub fn reality_residual(&self, grid: &MomentumGrid) -> f64 {
        self.lambda
            .reality_residual(grid)
            .max(self.mu.reality_residual(grid))
    }

    pub fn reality_project(&self, grid: &MomentumGrid) -> Self {
        Self {
            lambda: self.lambda.reality_project(grid),
            mu: self.mu.reality_project(grid),
            t: self.t,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lambda.is_finite() && self.mu.is_finite() && self.t.is_finite()
    }

    /// `sqrt(h³ Σ_i |Δλ_i|² + |Δμ_i|²)`, a grid-independent distance that
    /// does not depend on the deformed weights.
    pub fn distance(&self, other: &Self, grid: &MomentumGrid) -> f64 {
        let h3 = grid.h().powi(3);
        let sum: f64 = self
            .lambda
            .amps
            .iter()
            .zip(&other.lambda.amps)
            .chain(self.mu.amps.iter().zip(&other.mu.amps))
            .map(|(x, y)| (x - y).norm_sqr())
            .sum();
        (h3 * sum).sqrt()
    }
}
