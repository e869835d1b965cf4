//! Entanglement witnesses with diagonal correlation structure, and detection of
//! two-qubit entanglement from the three correlated Pauli settings `XX`, `YY`, `ZZ`.
//!
//! ```
//! use limwit::{detect, exact_record, werner};
//!
//! let rec = exact_record(&werner(0.8).unwrap()).unwrap();
//! let res = detect(&rec);
//! assert!(res.entangled);
//! assert!((res.min_value + 0.25).abs() < 1e-12);
//! ```

pub mod bases;
pub mod detection;
pub mod error;
pub mod io;
pub mod linalg;
pub mod states;
pub mod tolerance;
pub mod witnesses;

pub use bases::{
    bloch_decompose, classify_correlation, gell_mann_basis, pauli_basis, BasisLabel, BlochDecomposition,
    CorrelationClass, OperatorBasis,
};
pub use detection::{
    detect, detect_with, family_expectation, gamma_scan, minimize_family, werner_scan, witness_value, DetectOptions,
    DetectionResult, FamilyExpectation, FamilyMinimum, ScanRow, WernerRow,
};
pub use error::{Error, Result};
pub use io::MatrixFile;
pub use linalg::{partial_trace, partial_transpose, tensor, trace_inner, Complex64, ComplexMatrix, Subsystem};
pub use states::{
    bell_diagonal, bell_state, damped_bell, exact_record, isotropic, max_correlated, sampled_record, theorem1_state,
    theorem2_state, werner, BellKind, DensityMatrix, FamilyParams, MeasurementRecord, PureState,
};
pub use tolerance::Tolerances;
pub use witnesses::{
    block_positivity_min, extremal_witness, ppt_min_eigenvalue, CertifyOptions, Provenance, Witness, WitnessVerdict,
};
