//! Independent oracles for the Hamiltonian and its gradient.

mod common;

use fuzzy_fluid::classical::ClassicalSystem;
use fuzzy_fluid::fuzzy::FuzzySystem;
use fuzzy_fluid::verify::{fd_rhs, quadruple_sum_hamiltonian, relative_rhs_error};
use fuzzy_fluid::{ClebschState, PairingChoice};

use common::*;

const PAIRINGS: [PairingChoice; 2] = [PairingChoice::PolarizedTrace, PairingChoice::ChartDot];

#[test]
fn wfield_hamiltonian_matches_quartic_sum() {
    for a in [0.0, 0.15, 0.4] {
        let g = grid(1.0, 1.5, a);
        for p in PAIRINGS {
            for seed in 0..3 {
                let s = ClebschState::random(&g, seed, 1.5, 0.7);
                let h = FuzzySystem::new(g.clone(), p).hamiltonian(&s);
                let b = quartic_hamiltonian(&g, p, &s);
                assert!((h - b).abs() <= 1e-12 * b.abs().max(1e-300), "a={a} {p}: {h} vs {b}");
            }
        }
    }
}

#[test]
fn library_quadruple_sum_agrees_with_test_oracle() {
    let g = grid(1.0, 1.5, 0.25);
    let s = ClebschState::random(&g, 11, 1.5, 0.5);
    for p in PAIRINGS {
        let x = quadruple_sum_hamiltonian(&g, p, &s);
        let y = quartic_hamiltonian(&g, p, &s);
        assert!((x - y).abs() <= 1e-12 * y.abs(), "{p}: {x} vs {y}");
    }
}

#[test]
fn seven_node_grid_keeps_partial_deposits() {
    let g = grid(1.0, 1.0, 0.3);
    assert_eq!(g.len(), 7);
    let s = ClebschState::random(&g, 3, 1.5, 1.0);
    for p in PAIRINGS {
        let h = FuzzySystem::new(g.clone(), p).hamiltonian(&s);
        let b = quartic_hamiltonian(&g, p, &s);
        assert!(b > 0.0, "{p}: {b:e}");
        assert!((h - b).abs() <= 1e-12 * b, "{p}: {h:e} vs {b:e}");
    }
}

#[test]
fn classical_hamiltonian_matches_quartic_sum() {
    let g = grid(1.0, 2.0, 0.0);
    let cl = ClassicalSystem::new(g.clone()).unwrap();
    for seed in 0..3 {
        let s = ClebschState::random(&g, seed, 1.5, 0.4);
        let b = quartic_hamiltonian(&g, PairingChoice::ChartDot, &s);
        let h = cl.hamiltonian(&s);
        assert!((h - b).abs() <= 1e-12 * b.abs(), "{h} vs {b}");
    }
}

#[test]
fn gradient_matches_finite_differences_off_reference_grid() {
    for (h, kmax, a) in [(0.5, 1.2, 0.1), (1.0, 2.5, 0.35)] {
        let g = grid(h, kmax, a);
        let s = ClebschState::random(&g, 5, 1.0, 0.3);
        for p in PAIRINGS {
            let sys = FuzzySystem::new(g.clone(), p);
            let err = relative_rhs_error(&sys.rhs(&s), &fd_rhs(&sys, &s, 1e-6));
            assert!(err <= 1e-6, "h={h} a={a} {p}: {err:e}");
        }
    }
}

#[test]
fn classical_gradient_matches_finite_differences() {
    let g = reference_grid(0.0);
    let sys = ClassicalSystem::new(g.clone()).unwrap();
    let s = ClebschState::random(&g, 9, 1.5, 0.2);
    let err = relative_rhs_error(&sys.rhs(&s), &fd_rhs(&sys, &s, 1e-6));
    assert!(err <= 1e-6, "{err:e}");
}

#[test]
fn hamiltonian_is_quartic_in_amplitude() {
    let g = grid(1.0, 2.0, 0.2);
    let sys = FuzzySystem::new(g.clone(), PairingChoice::PolarizedTrace);
    let s = ClebschState::random(&g, 1, 1.5, 0.3);
    let s2 = ClebschState::new(s.lambda.scaled(2.0.into()), s.mu.scaled(2.0.into()));
    let (h1, h2) = (sys.hamiltonian(&s), sys.hamiltonian(&s2));
    assert!((h2 / h1 - 16.0).abs() <= 1e-10, "{}", h2 / h1);
}
