//! Star product of band-limited functions in mode space.
//!
//! Plane waves multiply by composing their momenta in SU(2):
//! `e_{k(g1)} * e_{k(g2)} = e_{k(g1 g2)}`. On the grid the composed momentum
//! is deposited trilinearly, giving
//!
//! ```text
//! (f1 * f2)_m = (1/w_m) Σ_{i,j} w_i w_j f1_i f2_j c_m(g_i g_j)
//! ```
//!
//! At `a = 0` the deposit is an exact Kronecker delta and this is the
//! truncated lattice convolution.

use num_complex::Complex64;

use crate::coupling::CouplingTable;
use crate::field::ModeField;
use crate::grid::MomentumGrid;

/// A grid together with its pair-coupling table.
#[derive(Debug, Clone)]
pub struct StarProduct<'g> {
    grid: &'g MomentumGrid,
    table: CouplingTable,
}

impl<'g> StarProduct<'g> {
    pub fn new(grid: &'g MomentumGrid) -> Self {
        Self {
            grid,
            table: CouplingTable::new(grid),
        }
    }

    pub fn grid(&self) -> &MomentumGrid {
        self.grid
    }

    /// Star product together with the mass lost to truncation (see
    /// [`CouplingTable::lost_mass`]).
    pub fn star_with_loss(&self, f1: &ModeField, f2: &ModeField) -> (ModeField, f64) {
        let w = self.grid.weights();
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for p in 0..self.table.num_pairs() {
            let (i, j) = self.table.pair(p);
            let z = f1.amps[i] * f2.amps[j] * (w[i] * w[j]);
            for &(m, c) in self.table.deposit(p) {
                out[m as usize] += z * c;
            }
        }
        for (o, wm) in out.iter_mut().zip(w) {
            *o /= *wm;
        }
        let loss = self.table.lost_mass(w, &f1.amps, &f2.amps);
        (ModeField::from_amps(out), loss)
    }

    pub fn star(&self, f1: &ModeField, f2: &ModeField) -> ModeField {
        self.star_with_loss(f1, f2).0
    }

    /// `f1 * f2 - f2 * f1`.
    pub fn commutator(&self, f1: &ModeField, f2: &ModeField) -> ModeField {
        let a = self.star(f1, f2);
        let b = self.star(f2, f1);
        a.axpy(-1.0, &b)
    }

    /// Weighted node norm `sqrt(Σ w_m |r_m|²)` of
    /// `r = (f1 * f2) * f3 - f1 * (f2 * f3)`.
    pub fn associator_norm(&self, f1: &ModeField, f2: &ModeField, f3: &ModeField) -> f64 {
        let left = self.star(&self.star(f1, f2), f3);
        let right = self.star(f1, &self.star(f2, f3));
        left.axpy(-1.0, &right).l2_norm2(self.grid).sqrt()
    }
}

/// One-shot star product; builds the coupling table on every call.
pub fn star(grid: &MomentumGrid, f1: &ModeField, f2: &ModeField) -> ModeField {
    StarProduct::new(grid).star(f1, f2)
}

pub fn star_commutator(grid: &MomentumGrid, f1: &ModeField, f2: &ModeField) -> ModeField {
    StarProduct::new(grid).commutator(f1, f2)
}

pub fn associator_norm(grid: &MomentumGrid, f1: &ModeField, f2: &ModeField, f3: &ModeField) -> f64 {
    StarProduct::new(grid).associator_norm(f1, f2, f3)
}
