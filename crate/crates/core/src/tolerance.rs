//! Numerical tolerances shared across the crate.
//!
//! Every threshold that decides a verdict or validates an input lives here,
//! so callers (the CLI in particular) can override them in one place.

/// Max-norm tolerance for matrix equality and Hermiticity of constructed operators.
pub const MATRIX_EQ: f64 = 1e-12;

/// Hermiticity tolerance accepted on *input* to the eigensolver and decompositions.
pub const HERMITIAN_INPUT: f64 = 1e-10;

/// Unit-trace and unit-norm tolerance for states.
pub const NORMALIZATION: f64 = 1e-12;

/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-10;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop (scaled by max(1, ||M||_F)).
pub const JACOBI_OFF_DIAG: f64 = 1e-13;

/// Threshold for "has a negative eigenvalue".
pub const EIG_TOL: f64 = 1e-10;

/// Threshold below which a certified product minimum counts as a block-positivity violation.
pub const BP_TOL: f64 = 1e-6;

/// Default tolerance for correlation-class membership.
pub const CLASSIFY: f64 = 1e-10;

/// Orthogonality tolerance for O^T O = I.
pub const ORTHOGONAL: f64 = 1e-10;

/// Default significance threshold (in standard errors) for sampled records.
pub const SIGMA_THRESHOLD: f64 = 3.0;

/// Runtime-adjustable tolerance set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub bp_tol: f64,
    pub eig_tol: f64,
    pub sigma_threshold: f64,
    pub classify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            bp_tol: BP_TOL,
            eig_tol: EIG_TOL,
            sigma_threshold: SIGMA_THRESHOLD,
            classify: CLASSIFY,
        }
    }
}
