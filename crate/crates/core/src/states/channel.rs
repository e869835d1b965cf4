use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix, Subsystem};
use crate::tolerance;

use super::{bell_state, BellKind, DensityMatrix};

/// Kraus operators `A0 = |0><0| + sqrt(1-g)|1><1|`, `A1 = sqrt(g)|0><1|`.
pub fn amplitude_damping_kraus(gamma: f64) -> Result<[ComplexMatrix; 2]> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter(format!("damping must lie in [0, 1], got {gamma}")));
    }
    let a0 = ComplexMatrix::diagonal(&[1.0, (1.0 - gamma).sqrt()]);
    let a1 = ComplexMatrix::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0])?;
    Ok([a0, a1])
}

/// Applies the amplitude-damping channel to one qubit of a two-qubit state.
pub fn amplitude_damping_apply(rho: &DensityMatrix, gamma: f64, subsystem: Subsystem) -> Result<DensityMatrix> {
    if rho.dims() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "amplitude damping acts on two qubits, got dims {:?}",
            rho.dims()
        )));
    }
    let kraus = amplitude_damping_kraus(gamma)?;

    let completeness = kraus
        .iter()
        .fold(ComplexMatrix::zeros(2, 2), |acc, k| &acc + &(&k.adjoint() * k));
    assert!(
        completeness.max_abs_diff(&ComplexMatrix::identity(2)) <= tolerance::MATRIX_EQ,
        "Kraus operators must be trace preserving"
    );

    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in &kraus {
        let full = match subsystem {
            Subsystem::A => tensor(k, &id),
            Subsystem::B => tensor(&id, k),
        };
        out = &out + &(&(&full * rho.matrix()) * &full.adjoint());
    }
    DensityMatrix::new(out.hermitian_part(), (2, 2))
}

/// `(1 (x) E_gamma)(|phi+><phi+|)`.
pub fn damped_bell(gamma: f64) -> Result<DensityMatrix> {
    amplitude_damping_apply(&bell_state(BellKind::PhiPlus).to_density(), gamma, Subsystem::B)
}
