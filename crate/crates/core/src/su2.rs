//! SU(2) as the momentum space of the fuzzy fluid.
//!
//! A group element is stored as a unit quaternion `(u0, u)`, standing for the
//! 2×2 matrix
//!
//! ```text
//! g = u0·1 + i u·σ
//! ```
//!
//! with `σ` the Pauli matrices in [`PAULI`]. With this convention
//! `(i σ_a)(i σ_b) = -δ_ab - i ε_abc σ_c`, so the product of `(a0, a)` and
//! `(b0, b)` is `(a0 b0 - a·b, a0 b + b0 a - a×b)`.
//!
//! Momenta `k ∈ R³` are attached to group elements by the stereographic chart
//! of scale `a` (a length):
//!
//! ```text
//! g(k) = (1 - a²k²)/(1 + a²k²) + 2 i a σ·k/(1 + a²k²)
//! ```
//!
//! The origin maps to the identity and `|k| → ∞` maps to the antipode `-1`.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

use crate::vec3::{self, Vec3};
use crate::{Error, Result};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// The Pauli matrices `σ1, σ2, σ3`, row-major.
pub const PAULI: [[[Complex64; 2]; 2]; 3] = [
    [[C0, C1], [C1, C0]],
    [[C0, Complex64::new(0.0, -1.0)], [CI, C0]],
    [[C1, C0], [C0, Complex64::new(-1.0, 0.0)]],
];

/// Below this value of `1 + u0` an element is treated as the antipode.
pub const ANTIPODE_GUARD: f64 = 1e-12;

/// Below this `|det ω|` the Maurer–Cartan frame is reported singular.
pub const SINGULAR_FRAME_GUARD: f64 = 1e-12;

/// A point of SU(2), stored as a unit quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub u0: f64,
    pub u: Vec3,
}

impl GroupElement {
    /// Builds `u0 + i u·σ`, normalised to unit length.
    ///
    /// Panics if all four components vanish.
    pub fn new(u0: f64, u: Vec3) -> Self {
        let n = (u0 * u0 + vec3::norm2(u)).sqrt();
        assert!(n > 0.0, "cannot normalise the zero quaternion");
        Self {
            u0: u0 / n,
            u: vec3::scale(1.0 / n, u),
        }
    }

    pub const fn identity() -> Self {
        Self { u0: 1.0, u: [0.0; 3] }
    }

    pub const fn antipode() -> Self {
        Self { u0: -1.0, u: [0.0; 3] }
    }

    /// Renormalised group product `self · rhs`.
    pub fn multiply(self, rhs: Self) -> Self {
        let (a0, a) = (self.u0, self.u);
        let (b0, b) = (rhs.u0, rhs.u);
        let c = vec3::cross(a, b);
        let u0 = a0 * b0 - vec3::dot(a, b);
        let u = [
            a0 * b[0] + b0 * a[0] - c[0],
            a0 * b[1] + b0 * a[1] - c[1],
            a0 * b[2] + b0 * a[2] - c[2],
        ];
        Self::new(u0, u)
    }

    /// `g⁻¹ = g†`, i.e. the conjugate quaternion.
    pub fn inverse(self) -> Self {
        Self {
            u0: self.u0,
            u: vec3::neg(self.u),
        }
    }

    /// `tr g = 2 u0`.
    pub fn trace(self) -> f64 {
        2.0 * self.u0
    }

    /// Geodesic angle `ρ(g) = arccos(½ tr g) ∈ [0, π]`, evaluated as
    /// `atan2(|u|, u0)` to stay accurate near the identity.
    pub fn rho(self) -> f64 {
        vec3::norm(self.u).atan2(self.u0)
    }

    /// Stereographic image of the momentum `k`. At `a = 0` every momentum maps
    /// to the identity, so this chart is only informative for `a > 0`.
    pub fn from_momentum(k: Vec3, a: CutoffParam) -> Self {
        let a = a.value();
        let d = 1.0 + a * a * vec3::norm2(k);
        Self::new((1.0 - a * a * vec3::norm2(k)) / d, vec3::scale(2.0 * a / d, k))
    }

    /// Inverse chart `k = u / (a (1 + u0))`.
    pub fn to_momentum(self, a: CutoffParam) -> Result<Vec3> {
        if a.is_classical() {
            return Err(Error::ClassicalLimit);
        }
        let s = 1.0 + self.u0;
        if s < ANTIPODE_GUARD {
            return Err(Error::Antipode);
        }
        Ok(vec3::scale(1.0 / (a.value() * s), self.u))
    }

    /// The 2×2 matrix `u0·1 + i u·σ`.
    pub fn to_matrix(self) -> [[Complex64; 2]; 2] {
        let mut m = [[C0; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let mut z = if r == c { Complex64::new(self.u0, 0.0) } else { C0 };
                for (s, ui) in PAULI.iter().zip(self.u) {
                    z += CI * ui * s[r][c];
                }
                *entry = z;
            }
        }
        m
    }

    /// Euclidean distance between the quaternion 4-vectors.
    pub fn distance(self, other: Self) -> f64 {
        let d0 = self.u0 - other.u0;
        (d0 * d0 + vec3::norm2(vec3::sub(self.u, other.u))).sqrt()
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: Self) -> Self {
        self.multiply(rhs)
    }
}

/// The fuzziness scale `a ≥ 0`; `a = 0` is the classical limit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CutoffParam(f64);

impl CutoffParam {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a >= 0.0 {
            Ok(Self(a))
        } else {
            Err(Error::InvalidCutoff(a))
        }
    }

    pub const fn classical() -> Self {
        Self(0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 0.0
    }
}

impl TryFrom<f64> for CutoffParam {
    type Error = Error;

    fn try_from(a: f64) -> Result<Self> {
        Self::new(a)
    }
}

impl From<CutoffParam> for f64 {
    fn from(a: CutoffParam) -> f64 {
        a.0
    }
}

impl fmt::Display for CutoffParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which positive-definite bilinear form on SU(2) stands in for `k1·k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingChoice {
    /// `½[⟨g1,g2⟩ - ⟨g1,e⟩ - ⟨g2,e⟩]` built from the trace pairing.
    #[default]
    PolarizedTrace,
    /// `k(g1)·k(g2)` in the stereographic chart.
    ChartDot,
}

impl PairingChoice {
    /// Length of the factor vector `q(g)` with `B(g1, g2) = q(g1)·q(g2)`.
    pub fn dim(self) -> usize {
        match self {
            Self::PolarizedTrace => 4,
            Self::ChartDot => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PolarizedTrace => "polarized_trace",
            Self::ChartDot => "chart_dot",
        }
    }
}

impl fmt::Display for PairingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Momentum of the product `g(k1) g(k2)`. At `a = 0` this is `k1 + k2`.
pub fn compose_momenta(k1: Vec3, k2: Vec3, a: CutoffParam) -> Result<Vec3> {
    if a.is_classical() {
        return Ok(vec3::add(k1, k2));
    }
    let g = GroupElement::from_momentum(k1, a) * GroupElement::from_momentum(k2, a);
    g.to_momentum(a)
}

/// Haar density relative to Lebesgue `d³k`: `(1 + a²k²)⁻³`.
pub fn haar_weight(k: Vec3, a: CutoffParam) -> f64 {
    let d = 1.0 + a.value() * a.value() * vec3::norm2(k);
    1.0 / (d * d * d)
}

/// The trace pairing `(tr g1†g2 - 2) / 4a²`.
///
/// It vanishes on the diagonal; see [`pairing`] for the positive forms.
pub fn pairing_raw(g1: GroupElement, g2: GroupElement, a: CutoffParam) -> Result<f64> {
    if a.is_classical() {
        return Err(Error::ClassicalLimit);
    }
    let a = a.value();
    let s = g1.u0 * g2.u0 + vec3::dot(g1.u, g2.u);
    Ok((s - 1.0) / (2.0 * a * a))
}

/// Positive bilinear form on group elements. Requires `a > 0`; use
/// [`pairing_momenta`] when `a` may vanish.
pub fn pairing(
    g1: GroupElement,
    g2: GroupElement,
    a: CutoffParam,
    choice: PairingChoice,
) -> Result<f64> {
    match choice {
        PairingChoice::PolarizedTrace => {
            let e = GroupElement::identity();
            let b12 = pairing_raw(g1, g2, a)?;
            let b1 = pairing_raw(g1, e, a)?;
            let b2 = pairing_raw(g2, e, a)?;
            Ok(0.5 * (b12 - b1 - b2))
        }
        PairingChoice::ChartDot => Ok(vec3::dot(g1.to_momentum(a)?, g2.to_momentum(a)?)),
    }
}

/// [`pairing`] evaluated on chart momenta; at `a = 0` both choices give
/// `k1·k2` exactly.
pub fn pairing_momenta(k1: Vec3, k2: Vec3, a: CutoffParam, choice: PairingChoice) -> Result<f64> {
    if a.is_classical() {
        return Ok(vec3::dot(k1, k2));
    }
    pairing(
        GroupElement::from_momentum(k1, a),
        GroupElement::from_momentum(k2, a),
        a,
        choice,
    )
}

/// Factor vector `q(g(k))` with `B(g1, g2) = q(g1)·q(g2)`.
///
/// For [`PairingChoice::PolarizedTrace`] this is `(U - E)/2a` where `U` is the
/// quaternion 4-vector and `E = (1, 0, 0, 0)`, written in chart form
/// `(-a k²/D, k/D)` with `D = 1 + a²k²` so that it stays regular at `a = 0`.
/// For [`PairingChoice::ChartDot`] it is `k` itself (last slot unused).
pub fn pairing_factor(k: Vec3, a: CutoffParam, choice: PairingChoice) -> [f64; 4] {
    match choice {
        PairingChoice::PolarizedTrace => {
            let a = a.value();
            let k2 = vec3::norm2(k);
            let d = 1.0 + a * a * k2;
            [-a * k2 / d, k[0] / d, k[1] / d, k[2] / d]
        }
        PairingChoice::ChartDot => [k[0], k[1], k[2], 0.0],
    }
}

/// Maurer–Cartan matrix `ω` at `k`, normalised by the chart scale `4a` so that
/// `ω(0) = 1`.
///
/// Row `j` holds the components of `g⁻¹ ∂g/∂k_j` against the basis
/// `2a·iσ_l`, i.e. `ω[(j, l)] = ω^j_l`. In closed form
///
/// ```text
/// ω = [(1 - a²k²) 1 + 2a² k kᵀ - 2a [k]×] / (1 + a²k²)²
/// ```
///
/// and `det ω = (1 + a²k²)⁻³`, the Haar density.
pub fn maurer_cartan_omega(k: Vec3, a: CutoffParam) -> Matrix3<f64> {
    let a = a.value();
    let k2 = vec3::norm2(k);
    let d = 1.0 + a * a * k2;
    let kv = nalgebra::Vector3::from(k);
    let cross = kv.cross_matrix();
    let m = Matrix3::identity() * (1.0 - a * a * k2) + kv * kv.transpose() * (2.0 * a * a)
        - cross * (2.0 * a);
    m / (d * d)
}

/// Vector-field frame `ξ` dual to the Maurer–Cartan forms: `ξ·ω = 1`.
pub fn maurer_cartan_xi(k: Vec3, a: CutoffParam) -> Result<Matrix3<f64>> {
    let omega = maurer_cartan_omega(k, a);
    let det = omega.determinant();
    if det.abs() < SINGULAR_FRAME_GUARD {
        return Err(Error::SingularFrame { det });
    }
    omega.try_inverse().ok_or(Error::SingularFrame { det })
}
