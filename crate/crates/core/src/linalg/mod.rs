//! Dense complex linear algebra for small bipartite systems.

mod eigen;
mod matrix;
mod ops;

pub use eigen::{hermitian_eigen, min_eigenpair, min_eigenvalue, Spectrum};
pub use matrix::ComplexMatrix;
pub use ops::{partial_trace, partial_transpose, tensor, tensor_vec, trace_inner, Subsystem};

pub use num_complex::Complex64;
