//! Ideal incompressible flow in Clebsch variables, with momenta valued either
//! in flat R³ (the classical spectral theory) or in the group SU(2) seen
//! through a stereographic chart of radius `1/a` (the fuzzy theory).
//!
//! The crate is organised bottom-up:
//!
//! - [`su2`]: exact group algebra, chart maps, Haar density, pairings and the
//!   Maurer–Cartan frame.
//! - [`grid`] and [`field`]: the finite momentum lattice, cloud-in-cell
//!   deposition of off-lattice composed momenta, and mode fields with the
//!   reality involution.
//! - [`star`]: the non-commutative product induced by group multiplication.
//! - [`classical`]: the `a = 0` Clebsch Hamiltonian, velocity and vorticity
//!   reconstruction, helicity.
//! - [`fuzzy`]: the cutoff Hamiltonian in factorised W-field form and its
//!   exact gradient.
//! - [`integrate`]: RK4 time stepping, diagnostics and the `a → 0` sweep.
//! - [`config`], [`io`], [`spectrum`], [`verify`], [`app`]: run configuration,
//!   file formats and the command-line front end.

pub mod app;
pub mod classical;
pub mod config;
pub mod coupling;
mod error;
pub mod field;
pub mod fuzzy;
pub mod grid;
pub mod integrate;
pub mod io;
pub mod spectrum;
pub mod star;
pub mod su2;
pub mod vec3;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ClebschState, ModeField};
pub use grid::MomentumGrid;
pub use su2::{CutoffParam, GroupElement, PairingChoice};
