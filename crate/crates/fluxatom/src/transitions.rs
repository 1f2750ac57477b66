//! Microwave-assisted transitions between circuit eigenstates.
//!
//! A small ac flux through the loop couples to the circulating current
//! `I = -(2 pi alpha E_J / Phi_0) sin(2 pi f + 2 phi_m)`. This module works
//! with the dimensionless part `sin(2 pi f + phi_1 - phi_2)`; the physical
//! prefactor `2 pi alpha E_J Phi_a / Phi_0` stays symbolic, so transition
//! strengths are reported as the dimensionless moduli
//! `|s_ij| = |<i| sin(2 pi f + 2 phi_m) |j>|`.
//!
//! At `f = 0.5` the drive operator is odd under the `phi_m` reflection while
//! the eigenstates carry definite parity, so `s_ii = 0` and the 0<->2
//! element vanishes: a ladder (Xi) configuration. Away from half flux all
//! three elements are generically nonzero and the three levels form a
//! cyclic (Delta) configuration.

use nalgebra::Matrix3;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::circuit::{
    build_hamiltonian, cdot, eigensolve, ChargeBasisOperator, CircuitParams, EigenSystem,
    DEFAULT_DIMENSION_LIMIT,
};
use crate::error::{Error, Result};

/// Default relative threshold below which a transition counts as forbidden.
/// Far above eigensolver residuals (1e-9) and far below the smallest
/// allowed element observed near half flux.
pub const STRUCTURE_THRESHOLD: f64 = 1e-6;

/// Minimum spacing between tracked levels during a sweep; energy ordering
/// is only trusted while the lowest levels stay separated.
const TRACKING_GAP: f64 = 1e-10;

/// Dimensionless transition moduli among the lowest three eigenstates at
/// one flux point, plus the diagonal elements used as parity diagnostics.
///
/// The physical scale `2 pi alpha E_J Phi_a / Phi_0` multiplying these
/// numbers is intentionally not applied.
#[derive(Clone, Copy, Debug)]
pub struct TransitionTable {
    pub f: f64,
    pub s01: f64,
    pub s12: f64,
    pub s02: f64,
    pub diag: [f64; 3],
}

impl TransitionTable {
    pub fn max_modulus(&self) -> f64 {
        self.s01.max(self.s12).max(self.s02)
    }
}

/// Level-coupling structure of the lowest three states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelStructure {
    /// Ladder: 0<->1 and 1<->2 allowed, 0<->2 forbidden.
    Xi,
    /// Cyclic: all three transitions allowed.
    Delta,
}

impl std::fmt::Display for LevelStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LevelStructure::Xi => write!(f, "Xi"),
            LevelStructure::Delta => write!(f, "Delta"),
        }
    }
}

/// Dimensionless circulating-current operator `sin(2 pi f + phi_1 - phi_2)`
/// in the same charge basis as the circuit Hamiltonian: `(1/2i) e^{+i 2 pi f}`
/// on `(n1+1, n2-1)` minus the conjugate on `(n1-1, n2+1)`.
pub fn current_operator(params: &CircuitParams) -> Result<ChargeBasisOperator> {
    let dim = params.dimension();
    if dim > DEFAULT_DIMENSION_LIMIT {
        return Err(Error::DimensionLimit {
            dim,
            limit: DEFAULT_DIMENSION_LIMIT,
        });
    }
    let n = params.cutoff();
    // (1/2i) e^{i 2 pi f} = -(i/2) e^{i 2 pi f}
    let up = C64::new(0.0, -0.5) * C64::from_polar(1.0, TAU * params.f());
    let mut op = ChargeBasisOperator::zeros_like(params);
    for n1 in -n..=n {
        for n2 in -n..=n {
            if n1 < n && n2 > -n {
                let row = params.charge_index(n1 + 1, n2 - 1);
                let col = params.charge_index(n1, n2);
                op.add_hermitian_pair(row, col, up);
            }
        }
    }
    Ok(op)
}

fn check_compatible(eig: &EigenSystem, op: &ChargeBasisOperator) -> Result<()> {
    if eig.dimension() != op.dimension() {
        return Err(Error::DimensionMismatch {
            expected: eig.dimension(),
            got: op.dimension(),
        });
    }
    if eig.params != *op.params() {
        return Err(Error::BasisMismatch {
            detail: format!(
                "eigensystem built at f = {}, operator at f = {}",
                eig.params.f(),
                op.params().f()
            ),
        });
    }
    Ok(())
}

/// Complex matrix elements `<i| op |j>` among the lowest three eigenstates,
/// in the deterministic eigenvector gauge fixed by `eigensolve`.
pub fn transition_elements(eig: &EigenSystem, op: &ChargeBasisOperator) -> Result<Matrix3<C64>> {
    check_compatible(eig, op)?;
    if eig.count() < 3 {
        return Err(Error::config(
            "eig",
            format!("need at least three states, got {}", eig.count()),
        ));
    }
    let mut out = Matrix3::<C64>::zeros();
    for j in 0..3 {
        let opj = op.apply(eig.state(j));
        for i in 0..3 {
            out[(i, j)] = cdot(eig.state(i), opj.as_ref());
        }
    }
    Ok(out)
}

/// Moduli `|s_ij|` and diagonal elements for the lowest three states.
pub fn transition_moduli(eig: &EigenSystem, op: &ChargeBasisOperator) -> Result<TransitionTable> {
    let m = transition_elements(eig, op)?;
    Ok(TransitionTable {
        f: eig.params.f(),
        s01: m[(0, 1)].norm(),
        s12: m[(1, 2)].norm(),
        s02: m[(0, 2)].norm(),
        diag: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re],
    })
}

/// Decide whether a transition table is ladder (Xi) or cyclic (Delta).
///
/// Xi requires exactly the 0<->2 modulus below `threshold * max`; Delta
/// requires all three above it. Any other pattern is reported as ambiguous
/// rather than guessed.
pub fn classify_structure(table: &TransitionTable, threshold: f64) -> Result<LevelStructure> {
    if !(threshold > 0.0) {
        return Err(Error::config(
            "threshold",
            format!("must be positive, got {threshold}"),
        ));
    }
    let max = table.max_modulus();
    if max <= 0.0 {
        return Err(Error::AmbiguousStructure {
            detail: "all transition moduli vanish".into(),
        });
    }
    let cut = threshold * max;
    let below = [table.s01 < cut, table.s12 < cut, table.s02 < cut];
    match below {
        [false, false, false] => Ok(LevelStructure::Delta),
        [false, false, true] => Ok(LevelStructure::Xi),
        _ => Err(Error::AmbiguousStructure {
            detail: format!(
                "suppressed pattern (s01 {:.3e}, s12 {:.3e}, s02 {:.3e}) matches neither Xi nor Delta",
                table.s01, table.s12, table.s02
            ),
        }),
    }
}

/// Transition tables over a flux grid. Points are independent; eigenvector
/// phase gauge cannot matter because only moduli are reported.
pub fn sweep_transitions(
    params_base: &CircuitParams,
    f_grid: &[f64],
) -> Result<Vec<TransitionTable>> {
    if f_grid.is_empty() {
        return Err(Error::config("f_grid", "must not be empty"));
    }
    f_grid
        .par_iter()
        .map(|&f| {
            let point = || -> Result<TransitionTable> {
                let params = params_base.with_flux(f)?;
                let h = build_hamiltonian(&params)?;
                let eig = eigensolve(&h, 4)?;
                for (k, w) in eig.levels.windows(2).enumerate().take(2) {
                    if w[1] - w[0] < TRACKING_GAP {
                        return Err(Error::DegenerateLevels {
                            detail: format!(
                                "levels {k} and {} split by {:.3e}; energy-order tracking unsafe",
                                k + 1,
                                w[1] - w[0]
                            ),
                        });
                    }
                }
                let op = current_operator(&params)?;
                transition_moduli(&eig, &op)
            };
            point().map_err(|e| Error::SweepPoint {
                f,
                source: Box::new(e),
            })
        })
        .collect()
}
