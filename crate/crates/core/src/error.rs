//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction, fitting, and simulation routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpincatError {
    #[error("spin length must satisfy 2I >= 1, got 2I = {0}")]
    InvalidSpinLength(u32),

    #[error("odd-parity cat state is degenerate: 1 - gamma(theta) = {0:.3e} < 1e-14")]
    DegenerateCat(f64),

    #[error("matrix is not Hermitian: max |M - M^dag| = {0:.3e}")]
    NonHermitian(f64),

    #[error("density matrix trace deviates from one by {0:.3e}")]
    NonUnitTrace(f64),

    #[error("EFG tensor is not symmetric: max |V - V^T| = {0:.3e}")]
    NonSymmetric(f64),

    #[error("EFG tensor is not traceless: |tr V| / |V| = {0:.3e}")]
    NonTraceless(f64),

    #[error("principal-axis ordering is degenerate: |D_yy| = |D_zz| within tolerance")]
    DegenerateAxes,

    #[error("eigenvector {index} is not a parity eigenstate: |<v|P|v>| = {expectation:.6}")]
    ParityMixing { index: usize, expectation: f64 },

    #[error("no clock transition found for eta = {eta}: {reason}")]
    NoClockTransition { eta: f64, reason: String },

    #[error("parameters outside validity regime: {0}")]
    InvalidRegime(String),

    #[error("regime violation: {0}")]
    RegimeViolation(String),

    #[error("no root bracketed when solving {0}")]
    NoRoot(String),

    #[error("degenerate denominator in first-order frame rotation: |D_zz - D_ii| = {0:.3e}")]
    DegenerateDenominator(f64),

    #[error("perturbation too strong for first-order treatment: ground-state depletion {0:.3}")]
    PerturbationTooStrong(f64),

    #[error("adiabaticity violated: {0}")]
    AdiabaticityViolated(String),

    #[error("ramp integral mismatch: got {0}, expected pi")]
    IntegralMismatch(f64),

    #[error("drive tone list incomplete: expected {expected} tones, got {got}")]
    MissingTone { expected: usize, got: usize },

    #[error("state has weight {0:.3e} outside the cat-qubit subspace")]
    NotInCatSubspace(f64),

    #[error("integrator tolerance exceeded: norm drift {0:.3e}")]
    IntegratorTolerance(f64),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SpincatError>;
