//! Ball-shaped truncation of momentum space and cloud-in-cell deposition.
//!
//! Nodes are the lattice points `k = h·n`, `n ∈ Z³`, with `|k| ≤ kmax`,
//! ordered lexicographically by `n`. The lattice is closed under negation and
//! always contains the origin. Each node carries the quadrature weight
//! `h³ (1 + a²k²)⁻³`.
//!
//! Off-lattice chart points (composed momenta `k(g_i g_j)`) are spread over the
//! surrounding cell with trilinear weights. Corners that fall outside the ball
//! are not nodes; their weight is dropped and reported as the deposit's lost
//! fraction, which callers book as aliasing loss. Points outside the bounding
//! box `[-kmax, kmax]³`, or whose whole cell misses the ball, are out of band.

use num_complex::Complex64;

use crate::su2::{self, CutoffParam, GroupElement};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Fractional lattice offsets closer than this to an integer are snapped.
pub const SNAP: f64 = 1e-9;

const ABSENT: u32 = u32::MAX;

/// Trilinear deposit: at most eight `(node, weight)` pairs. The weights sum
/// to `1 - lost`, where `lost` is the weight of cell corners outside the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deposit {
    len: usize,
    slots: [(usize, f64); 8],
    lost: f64,
}

impl Deposit {
    fn single(m: usize) -> Self {
        let mut slots = [(0, 0.0); 8];
        slots[0] = (m, 1.0);
        Self {
            len: 1,
            slots,
            lost: 0.0,
        }
    }

    /// Total weight of the corners that are not grid nodes.
    pub fn lost(&self) -> f64 {
        self.lost
    }

    /// Whether every corner with non-zero weight is a node.
    pub fn is_complete(&self) -> bool {
        self.lost == 0.0
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.slots[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Adjoint of deposition: `Σ_m c_m u_m`.
    pub fn interpolate<T>(&self, values: &[T]) -> T
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::iter::Sum<T>,
    {
        self.entries().iter().map(|&(m, c)| values[m] * c).sum()
    }
}

#[derive(Debug, Clone)]
pub struct MomentumGrid {
    h: f64,
    kmax: f64,
    a: CutoffParam,
    radius: i64,
    lattice: Vec<[i64; 3]>,
    nodes: Vec<Vec3>,
    weights: Vec<f64>,
    mirror: Vec<usize>,
    origin: usize,
    lookup: Vec<u32>,
}

impl MomentumGrid {
    pub fn new(h: f64, kmax: f64, a: CutoffParam) -> Result<Self> {
        if !(h.is_finite() && kmax.is_finite() && h > 0.0 && kmax >= h) {
            return Err(Error::EmptyGrid { h, kmax });
        }
        let radius = (kmax / h * (1.0 + 1e-12)).floor() as i64;
        let side = (2 * radius + 1) as usize;
        let r2max = (kmax / h).powi(2) * (1.0 + 1e-12);
        let mut lookup = vec![ABSENT; side * side * side];
        let mut lattice = Vec::new();
        for i in -radius..=radius {
            for j in -radius..=radius {
                for l in -radius..=radius {
                    if ((i * i + j * j + l * l) as f64) <= r2max {
                        let slot = Self::slot(radius, [i, j, l]).expect("inside box");
                        lookup[slot] = lattice.len() as u32;
                        lattice.push([i, j, l]);
                    }
                }
            }
        }
        let nodes: Vec<Vec3> = lattice
            .iter()
            .map(|n| [h * n[0] as f64, h * n[1] as f64, h * n[2] as f64])
            .collect();
        let h3 = h * h * h;
        let weights = nodes.iter().map(|&k| h3 * su2::haar_weight(k, a)).collect();
        let index = |n: [i64; 3]| lookup[Self::slot(radius, n).unwrap()] as usize;
        let mirror = lattice.iter().map(|n| index([-n[0], -n[1], -n[2]])).collect();
        let origin = index([0, 0, 0]);
        Ok(Self {
            h,
            kmax,
            a,
            radius,
            lattice,
            nodes,
            weights,
            mirror,
            origin,
            lookup,
        })
    }

    fn slot(radius: i64, n: [i64; 3]) -> Option<usize> {
        let side = 2 * radius + 1;
        let mut s = 0i64;
        for c in n {
            if c < -radius || c > radius {
                return None;
            }
            s = s * side + (c + radius);
        }
        Some(s as usize)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn kmax(&self) -> f64 {
        self.kmax
    }

    pub fn a(&self) -> CutoffParam {
        self.a
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Chart momenta of the nodes.
    pub fn nodes(&self) -> &[Vec3] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Vec3 {
        self.nodes[i]
    }

    /// Integer lattice coordinates of the nodes.
    pub fn lattice(&self) -> &[[i64; 3]] {
        &self.lattice
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// Index of the node at `-k_i`.
    pub fn mirror(&self, i: usize) -> usize {
        self.mirror[i]
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// Group element of node `i` (only meaningful for `a > 0`).
    pub fn element(&self, i: usize) -> GroupElement {
        GroupElement::from_momentum(self.nodes[i], self.a)
    }

    pub fn index_of(&self, n: [i64; 3]) -> Option<usize> {
        let s = Self::slot(self.radius, n)?;
        match self.lookup[s] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// Trilinear deposit of a chart point.
    pub fn deposit_momentum(&self, k: Vec3) -> Result<Deposit> {
        let mut axes = [[(0i64, 0.0f64); 2]; 3];
        let mut counts = [0usize; 3];
        for d in 0..3 {
            let x = k[d] / self.h;
            if !x.is_finite() || k[d].abs() > self.kmax * (1.0 + SNAP) {
                return Err(Error::OutOfBand { k });
            }
            let mut f = x.floor();
            let mut t = x - f;
            if t < SNAP {
                t = 0.0;
            } else if t > 1.0 - SNAP {
                f += 1.0;
                t = 0.0;
            }
            let f = f as i64;
            if t == 0.0 {
                axes[d][0] = (f, 1.0);
                counts[d] = 1;
            } else {
                axes[d] = [(f, 1.0 - t), (f + 1, t)];
                counts[d] = 2;
            }
        }
        let mut out = Deposit {
            len: 0,
            slots: [(0, 0.0); 8],
            lost: 0.0,
        };
        for &(i, wi) in &axes[0][..counts[0]] {
            for &(j, wj) in &axes[1][..counts[1]] {
                for &(l, wl) in &axes[2][..counts[2]] {
                    let c = wi * wj * wl;
                    match self.index_of([i, j, l]) {
                        Some(m) => {
                            out.slots[out.len] = (m, c);
                            out.len += 1;
                        }
                        None => out.lost += c,
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::OutOfBand { k });
        }
        Ok(out)
    }

    /// Trilinear deposit of a group element at its chart momentum; needs `a > 0`.
    pub fn deposit(&self, g: GroupElement) -> Result<Deposit> {
        self.deposit_momentum(g.to_momentum(self.a)?)
    }

    /// Interpolates a node field at the chart point of `g`.
    pub fn interpolate(&self, values: &[Complex64], g: GroupElement) -> Result<Complex64> {
        Ok(self.deposit(g)?.interpolate(values))
    }

    /// Deposit of the composed momentum of nodes `i` and `j`: `k(g_i g_j)` for
    /// `a > 0`, the exact lattice sum `n_i + n_j` at `a = 0`.
    pub fn deposit_pair(&self, i: usize, j: usize) -> Result<Deposit> {
        if self.a.is_classical() {
            let (ni, nj) = (self.lattice[i], self.lattice[j]);
            let m = self
                .index_of([ni[0] + nj[0], ni[1] + nj[1], ni[2] + nj[2]])
                .ok_or_else(|| Error::OutOfBand {
                    k: vec3::add(self.nodes[i], self.nodes[j]),
                })?;
            Ok(Deposit::single(m))
        } else {
            self.deposit(self.element(i) * self.element(j))
        }
    }
}
