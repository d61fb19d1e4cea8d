//! Precomputed deposits of all composed node pairs `g_i g_j`.

use rayon::prelude::*;

use num_complex::Complex64;

use crate::grid::MomentumGrid;
use crate::Error;

/// Sparse table of the trilinear deposits `c_m(g_i g_j)` for every ordered
/// node pair whose composed momentum stays in band, with the weight each
/// deposit lost to corners outside the ball.
///
/// Pairs are stored in `(i, j)` lexicographic order, so the pairs of row `i`
/// are contiguous. Two auxiliary indices give, for each target node `m`, the
/// contributing `(pair, c)` entries, and for each column `j` the pairs ending
/// in `j`. Every accumulation over these lists runs in a fixed order, which
/// keeps parallel evaluation bit-reproducible.
#[derive(Debug, Clone)]
pub struct CouplingTable {
    pairs: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    entries: Vec<(u32, f64)>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
    col_pairs: Vec<u32>,
    target_offsets: Vec<usize>,
    target_entries: Vec<(u32, f64)>,
    lost: Vec<f64>,
    dropped: Vec<(u32, u32)>,
}

impl CouplingTable {
    pub fn new(grid: &MomentumGrid) -> Self {
        let n = grid.len();
        type Row = (Vec<(u32, f64, Vec<(u32, f64)>)>, Vec<u32>);
        let rows: Vec<Row> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut kept = Vec::new();
                let mut dropped = Vec::new();
                for j in 0..n {
                    match grid.deposit_pair(i, j) {
                        Ok(d) => kept.push((
                            j as u32,
                            d.lost(),
                            d.entries().iter().map(|&(m, c)| (m as u32, c)).collect(),
                        )),
                        Err(Error::OutOfBand { .. }) | Err(Error::Antipode) => {
                            dropped.push(j as u32)
                        }
                        Err(e) => panic!("unexpected deposit failure: {e}"),
                    }
                }
                (kept, dropped)
            })
            .collect();

        let mut pairs = Vec::new();
        let mut offsets = vec![0];
        let mut entries = Vec::new();
        let mut row_offsets = vec![0];
        let mut lost = Vec::new();
        let mut dropped = Vec::new();
        for (i, (kept, out)) in rows.into_iter().enumerate() {
            for (j, l, dep) in kept {
                pairs.push((i as u32, j));
                lost.push(l);
                entries.extend(dep);
                offsets.push(entries.len());
            }
            row_offsets.push(pairs.len());
            dropped.extend(out.into_iter().map(|j| (i as u32, j)));
        }

        let mut col_count = vec![0usize; n];
        for &(_, j) in &pairs {
            col_count[j as usize] += 1;
        }
        let mut col_offsets = vec![0];
        for c in &col_count {
            col_offsets.push(col_offsets.last().unwrap() + c);
        }
        let mut fill = col_offsets[..n].to_vec();
        let mut col_pairs = vec![0u32; pairs.len()];
        for (p, &(_, j)) in pairs.iter().enumerate() {
            col_pairs[fill[j as usize]] = p as u32;
            fill[j as usize] += 1;
        }

        let mut tgt_count = vec![0usize; n];
        for &(m, _) in &entries {
            tgt_count[m as usize] += 1;
        }
        let mut target_offsets = vec![0];
        for c in &tgt_count {
            target_offsets.push(target_offsets.last().unwrap() + c);
        }
        let mut fill = target_offsets[..n].to_vec();
        let mut target_entries = vec![(0u32, 0.0); entries.len()];
        for p in 0..pairs.len() {
            for &(m, c) in &entries[offsets[p]..offsets[p + 1]] {
                target_entries[fill[m as usize]] = (p as u32, c);
                fill[m as usize] += 1;
            }
        }

        Self {
            pairs,
            offsets,
            entries,
            row_offsets,
            col_offsets,
            col_pairs,
            target_offsets,
            target_entries,
            lost,
            dropped,
        }
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// `(i, j)` of kept pair `p`.
    pub fn pair(&self, p: usize) -> (usize, usize) {
        let (i, j) = self.pairs[p];
        (i as usize, j as usize)
    }

    /// Deposit `(m, c_m)` of kept pair `p`.
    pub fn deposit(&self, p: usize) -> &[(u32, f64)] {
        &self.entries[self.offsets[p]..self.offsets[p + 1]]
    }

    /// Kept pairs with first index `i`.
    pub fn row(&self, i: usize) -> std::ops::Range<usize> {
        self.row_offsets[i]..self.row_offsets[i + 1]
    }

    /// Kept pairs with second index `j`, ordered by first index.
    pub fn column(&self, j: usize) -> &[u32] {
        &self.col_pairs[self.col_offsets[j]..self.col_offsets[j + 1]]
    }

    /// Entries `(pair, c)` depositing onto node `m`, in pair order.
    pub fn into_target(&self, m: usize) -> &[(u32, f64)] {
        &self.target_entries[self.target_offsets[m]..self.target_offsets[m + 1]]
    }

    /// Deposit weight of kept pair `p` that fell outside the ball.
    pub fn lost(&self, p: usize) -> f64 {
        self.lost[p]
    }

    /// Mass `Σ w_i w_j |f1_i f2_j| ℓ_ij` lost to truncation, with `ℓ_ij = 1`
    /// for out-of-band pairs and the lost corner weight for kept pairs.
    pub fn lost_mass(&self, w: &[f64], f1: &[Complex64], f2: &[Complex64]) -> f64 {
        let mass = |i: usize, j: usize| w[i] * w[j] * (f1[i] * f2[j]).norm();
        let partial: f64 = (0..self.num_pairs())
            .filter(|&p| self.lost[p] != 0.0)
            .map(|p| {
                let (i, j) = self.pair(p);
                mass(i, j) * self.lost[p]
            })
            .sum();
        let full: f64 = self
            .dropped
            .iter()
            .map(|&(i, j)| mass(i as usize, j as usize))
            .sum();
        partial + full
    }

    /// Ordered pairs whose composed momentum left the band.
    pub fn dropped(&self) -> &[(u32, u32)] {
        &self.dropped
    }
}
