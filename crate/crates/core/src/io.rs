//! CSV and JSON output, state snapshots.
//!
//! Every file is written to a temporary sibling and renamed into place, so a
//! reader never sees a partial file.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

use crate::field::{ClebschState, ModeField};
use crate::grid::MomentumGrid;
use crate::integrate::{DiagnosticsRecord, SweepRow};
use crate::su2::{CutoffParam, PairingChoice};
use crate::{Error, Result};

pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn diagnostics_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::from(DiagnosticsRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn write_diagnostics(path: &Path, records: &[DiagnosticsRecord]) -> Result<()> {
    write_atomic(path, diagnostics_csv(records).as_bytes())
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("a,D,order\n");
    for r in rows {
        let order = r.order.map_or(String::new(), |o| format!("{o:e}"));
        out.push_str(&format!("{:e},{:e},{}\n", r.a, r.distance, order));
    }
    out
}

/// One mode field with the grid it lives on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeFieldSnapshot {
    pub a: f64,
    pub h: f64,
    pub kmax: f64,
    pub nodes: Vec<[i64; 3]>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ModeFieldSnapshot {
    pub fn new(grid: &MomentumGrid, f: &ModeField) -> Self {
        Self {
            a: grid.a().value(),
            h: grid.h(),
            kmax: grid.kmax(),
            nodes: grid.lattice().to_vec(),
            re: f.amps.iter().map(|z| z.re).collect(),
            im: f.amps.iter().map(|z| z.im).collect(),
        }
    }

    pub fn grid(&self) -> Result<MomentumGrid> {
        let grid = MomentumGrid::new(self.h, self.kmax, CutoffParam::new(self.a)?)?;
        if grid.lattice() != self.nodes.as_slice() {
            return Err(Error::Snapshot("node list does not match the grid".into()));
        }
        Ok(grid)
    }

    pub fn field(&self) -> Result<ModeField> {
        if self.re.len() != self.nodes.len() || self.im.len() != self.nodes.len() {
            return Err(Error::Snapshot("amplitude arrays do not match node list".into()));
        }
        Ok(ModeField::from_amps(
            self.re
                .iter()
                .zip(&self.im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect(),
        ))
    }
}

/// A full Clebsch state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSnapshot {
    pub t: f64,
    pub pairing: PairingChoice,
    pub lambda: ModeFieldSnapshot,
    pub mu: ModeFieldSnapshot,
}

impl StateSnapshot {
    pub fn new(grid: &MomentumGrid, pairing: PairingChoice, s: &ClebschState) -> Self {
        Self {
            t: s.t,
            pairing,
            lambda: ModeFieldSnapshot::new(grid, &s.lambda),
            mu: ModeFieldSnapshot::new(grid, &s.mu),
        }
    }

    /// Rebuilds the grid and state, checking that both fields share the grid.
    pub fn restore(&self) -> Result<(MomentumGrid, ClebschState)> {
        let l = &self.lambda;
        let m = &self.mu;
        if (l.a, l.h, l.kmax) != (m.a, m.h, m.kmax) || l.nodes != m.nodes {
            return Err(Error::Snapshot("lambda and mu live on different grids".into()));
        }
        let grid = l.grid()?;
        let mut state = ClebschState::new(l.field()?, m.field()?);
        state.t = self.t;
        Ok((grid, state))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Snapshot(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Snapshot(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_roundtrip_is_exact() {
        let g = MomentumGrid::new(1.0, 2.0, CutoffParam::new(0.1).unwrap()).unwrap();
        let mut s = ClebschState::random(&g, 5, 1.5, 0.1);
        s.t = 0.25;
        let snap = StateSnapshot::new(&g, PairingChoice::PolarizedTrace, &s);
        let back: StateSnapshot = serde_json::from_str(&snap.to_json()).unwrap();
        let (g2, s2) = back.restore().unwrap();
        assert_eq!(g2.lattice(), g.lattice());
        assert_eq!(s2, s);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("x.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }

    #[test]
    fn csv_header_order() {
        let csv = diagnostics_csv(&[]);
        assert_eq!(
            csv.trim_end(),
            "t,H,L2_lambda,L2_mu,reality_residual,aliasing_loss,helicity_scalar,helicity_x,helicity_y,helicity_z"
        );
    }
}
