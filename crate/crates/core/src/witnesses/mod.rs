//! Entanglement-witness constructions, their parameter predicates, and numerical checks.
//!
//! A witness is a block-positive Hermitian operator with at least one negative
//! eigenvalue. Positivity on product vectors is certified numerically by
//! [`block_positivity_min`]; the PPT oracle [`ppt_min_eigenvalue`] decides
//! two-qubit entanglement exactly.

mod certify;
mod families;

pub use certify::{block_positivity_min, CertifyOptions, WitnessVerdict};
pub use families::{
    example1_witness, example2_is_valid, example2_witness, example3_conditions, example3_witness, extremal_witness,
    flip_operator, mc_conditions, mc_witness, orthogonal_witness, projector_witness, reduction_witness,
    Example3Class, Example3Witness, McConditions, McWitness,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, partial_transpose, ComplexMatrix, Subsystem};
use crate::states::DensityMatrix;
use crate::tolerance;

/// Where a witness came from, with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Extremal2Q { family: u8, a: f64, b: f64 },
    ProjectorPt { re: Vec<f64>, im: Vec<f64> },
    Flip { d: usize },
    Orthogonal { d: usize, o: Vec<f64> },
    Reduction { d: usize },
    Example1 { d: usize, k: usize },
    Example2 { d: usize, p0: f64, p: Vec<f64> },
    Example3 { a: f64, b: f64, c: f64 },
    McThreshold { lambda: f64, x: Vec<f64> },
    Custom,
}

/// Hermitian operator on `C^dA (x) C^dB` tagged with its construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    matrix: ComplexMatrix,
    dims: (usize, usize),
    provenance: Provenance,
}

impl Witness {
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize), provenance: Provenance) -> Result<Self> {
        let n = matrix.require_square("witness")?;
        if dims.0 * dims.1 != n {
            return Err(Error::DimensionMismatch(format!("size {n} does not match dims {dims:?}")));
        }
        let defect = matrix.hermitian_defect();
        if defect > tolerance::MATRIX_EQ {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self { matrix, dims, provenance })
    }

    pub(crate) fn from_parts(matrix: ComplexMatrix, dims: (usize, usize), provenance: Provenance) -> Self {
        debug_assert!(matrix.hermitian_defect() <= tolerance::MATRIX_EQ);
        Self { matrix, dims, provenance }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.matrix).expect("witness is Hermitian").min()
    }

    /// `Tr(W rho)`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dims() != self.dims {
            return Err(Error::DimensionMismatch(format!("state dims {:?} vs witness dims {:?}", rho.dims(), self.dims)));
        }
        rho.expectation(&self.matrix)
    }

    /// The partially transposed operator, which is again a witness for block-positive `W`.
    pub fn partner(&self, subsystem: Subsystem) -> ComplexMatrix {
        partial_transpose(&self.matrix, subsystem, self.dims).expect("dims validated")
    }
}

/// Smallest eigenvalue of `rho^{T_B}`; negative means the state is entangled.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), Subsystem::B, rho.dims())?;
    Ok(hermitian_eigen(&pt)?.min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, isotropic, werner, BellKind};

    #[test]
    fn ppt_examples() {
        for f in [0.3, 0.49, 0.51, 0.9] {
            let v = ppt_min_eigenvalue(&werner(f).unwrap()).unwrap();
            assert_eq!(v < 0.0, f > 0.5, "f = {f}");
        }
        let mixed = DensityMatrix::maximally_mixed((2, 2));
        assert!((ppt_min_eigenvalue(&mixed).unwrap() - 0.25).abs() < 1e-15);
        let phi = bell_state(BellKind::PhiPlus).to_density();
        assert!((ppt_min_eigenvalue(&phi).unwrap() + 0.5).abs() < 1e-14);
        // (1 - p)/4 - p/2 < 0 iff p > 1/3
        for p in [0.2, 0.5] {
            let v = ppt_min_eigenvalue(&isotropic(p).unwrap()).unwrap();
            assert!((v - ((1.0 - p) / 4.0 - p / 2.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn witness_new_validates() {
        assert!(Witness::new(ComplexMatrix::identity(4), (2, 3), Provenance::Custom).is_err());
        let nh = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(Witness::new(nh, (1, 2), Provenance::Custom).is_err());
    }

    #[test]
    fn provenance_serializes_with_tag() {
        let p = Provenance::Example1 { d: 3, k: 1 };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"kind":"example1","d":3,"k":1}"#);
    }
}
