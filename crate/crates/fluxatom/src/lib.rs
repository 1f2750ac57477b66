//! Numerical model of a three-junction flux-qubit loop and of the driven
//! three-level artificial atom it realizes.
//!
//! The crate covers four layers:
//!
//! - [`circuit`]: the loop Hamiltonian in the two-dimensional charge basis,
//!   its low-lying spectrum versus reduced flux, and transition-frequency
//!   ratios. Energies are reported in units of `E_J`.
//! - [`transitions`]: the circulating-current operator, microwave transition
//!   matrix elements between circuit eigenstates, and the resulting
//!   selection-rule structure (ladder at half flux, cyclic elsewhere).
//! - [`delta_atom`]: the rotating-wave three-level Hamiltonian under three
//!   phased Gaussian pulses, its closed-form instantaneous eigensystem, and
//!   the nonadiabatic-coupling diagnostic.
//! - [`dynamics`]: time propagation of the driven system, population
//!   tracking, and pulse-phase sweeps.
//!
//! Driven-system quantities use dimensionless time `t / tau` (pulse widths)
//! and Rabi scales in units of `1 / tau`.
//!
//! The [`cli`] module serializes every table produced here into
//! deterministic CSV or JSON; the `fluxatom` binary exposes it.

pub mod circuit;
pub mod cli;
pub mod delta_atom;
pub mod dynamics;
pub mod error;
pub mod transitions;

pub use error::{Error, Result};
