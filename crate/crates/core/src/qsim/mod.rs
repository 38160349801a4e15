//! Desk-scale simulation of the oracle models and counting algorithms.
//!
//! Everything here is double precision: the claims checked are structural
//! fits and success probabilities, not exact identities. Trials derive their
//! RNG stream from (seed, trial index), so results never depend on the
//! parallel schedule.

mod counting;
mod fit;
mod profile;
mod tracedist;

pub use counting::{
    classical_baselines, run_collision_counting, run_reflection_counting, ClassicalMode,
    CountingReport,
};
pub use fit::{laurent_fit, FitReport};
pub use profile::{
    acceptance_profile, run_circuit, Acceptance, Circuit, CircuitOutcome, Prim, ProfilePoint,
};
pub use tracedist::{qsample_density_matrix, trace_distance_qsamples, DensityMatrix};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QsimError {
    #[error("parameters rejected: {0}")]
    BadParams(String),
    #[error("state norm drifted by {0:e} (tolerance 1e-9)")]
    NormDrift(f64),
    #[error("unsupported primitive for this register: {0}")]
    UnsupportedPrimitive(String),
    #[error("exponent window of size {window} needs at least that many points, have N = {n}")]
    UnderdeterminedFit { window: usize, n: u64 },
    #[error("dimension cap exceeded: L^k = {0} > 4096")]
    DimensionCap(u64),
}

/// Resource counters; every oracle-model primitive increments exactly one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Counters {
    /// Membership queries T.
    pub queries: u64,
    /// QSample copies R1.
    pub samples: u64,
    /// Reflection uses R2.
    pub reflections: u64,
    /// Uses of the reflection unitary about (|0^m> - |S>|S>)/sqrt(2).
    pub v_uses: u64,
}

/// Dense complex state vector.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub amps: Vec<Complex64>,
}

impl StateVector {
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Asserts the squared norm is within 1e-9 of 1.
    pub fn check_norm(&self) -> Result<(), QsimError> {
        let drift = (self.norm_sq() - 1.0).abs();
        if drift > 1e-9 {
            return Err(QsimError::NormDrift(drift));
        }
        Ok(())
    }
}
