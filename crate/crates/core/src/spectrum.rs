//! Shell-binned energy spectrum.

use crate::field::ClebschState;
use crate::fuzzy::FuzzySystem;
use crate::grid::MomentumGrid;
use crate::su2::PairingChoice;
use crate::vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    /// Shell index `n`; the shell holds nodes with `round(|k| / h) = n`.
    pub index: usize,
    pub k: f64,
    pub nodes: usize,
    pub energy: f64,
}

/// Bins the per-node Hamiltonian terms into shells of width `h`. The shell
/// energies sum to the Hamiltonian.
pub fn shell_spectrum(grid: &MomentumGrid, pairing: PairingChoice, s: &ClebschState) -> Vec<Shell> {
    let sys = FuzzySystem::new(grid.clone(), pairing);
    let e = sys.node_energies(s);
    let h = grid.h();
    let n_shells = (grid.kmax() / h).round() as usize + 1;
    let mut shells: Vec<Shell> = (0..n_shells)
        .map(|index| Shell {
            index,
            k: index as f64 * h,
            nodes: 0,
            energy: 0.0,
        })
        .collect();
    for (m, &k) in grid.nodes().iter().enumerate() {
        let n = (vec3::norm(k) / h).round() as usize;
        let n = n.min(n_shells - 1);
        shells[n].nodes += 1;
        shells[n].energy += e[m];
    }
    shells
}

pub fn spectrum_csv(shells: &[Shell]) -> String {
    let mut out = String::from("shell,k,nodes,energy\n");
    for s in shells {
        out.push_str(&format!("{},{:e},{},{:e}\n", s.index, s.k, s.nodes, s.energy));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ModeField;
    use crate::su2::CutoffParam;
    use num_complex::Complex64;

    fn grid(a: f64) -> MomentumGrid {
        MomentumGrid::new(1.0, 2.0, CutoffParam::new(a).unwrap()).unwrap()
    }

    #[test]
    fn zero_state_gives_zero_shells() {
        let g = grid(0.1);
        let s = ClebschState::zeros(&g);
        let sh = shell_spectrum(&g, PairingChoice::PolarizedTrace, &s);
        assert_eq!(sh.len(), 3);
        assert!(sh.iter().all(|x| x.energy == 0.0));
        assert_eq!(sh.iter().map(|x| x.nodes).sum::<usize>(), g.len());
    }

    #[test]
    fn single_mode_fills_one_shell() {
        let g = grid(0.0);
        let mut lambda = ModeField::zeros(g.len());
        let mut mu = ModeField::zeros(g.len());
        lambda.set_mirrored(&g, g.index_of([1, 0, 0]).unwrap(), Complex64::new(0.5, 0.0));
        mu.set_mirrored(&g, g.index_of([0, 1, 0]).unwrap(), Complex64::new(0.0, 0.5));
        let s = ClebschState::new(lambda, mu);
        let sh = shell_spectrum(&g, PairingChoice::PolarizedTrace, &s);
        let nonzero: Vec<_> = sh.iter().filter(|x| x.energy != 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].index, 1);
    }

    #[test]
    fn shells_sum_to_hamiltonian() {
        for a in [0.0, 0.2] {
            let g = grid(a);
            let s = ClebschState::random(&g, 3, 1.5, 0.3);
            let sys = FuzzySystem::new(g.clone(), PairingChoice::PolarizedTrace);
            let h = sys.hamiltonian(&s);
            let total: f64 = shell_spectrum(&g, PairingChoice::PolarizedTrace, &s)
                .iter()
                .map(|x| x.energy)
                .sum();
            assert!((total - h).abs() <= 1e-10 * h.max(1.0));
        }
    }
}
