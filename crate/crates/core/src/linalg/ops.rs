use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// One side of a bipartite system `H_A (x) H_B`.
///
/// Basis vector `|i> (x) |j>` sits at row `i * dB + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Kronecker product `A (x) B`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Kronecker product of two vectors.
pub fn tensor_vec(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

fn check_bipartite(m: &ComplexMatrix, dims: (usize, usize)) -> Result<()> {
    let n = m.require_square("bipartite operation")?;
    if dims.0 == 0 || dims.1 == 0 || dims.0 * dims.1 != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix of size {n} does not factor as {} x {}",
            dims.0, dims.1
        )));
    }
    Ok(())
}

/// Transposition of one tensor factor.
pub fn partial_transpose(m: &ComplexMatrix, subsystem: Subsystem, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(m, dims)?;
    let (da, db) = dims;
    let n = da * db;
    Ok(ComplexMatrix::from_fn(n, n, |row, col| {
        let (i, j) = (row / db, row % db);
        let (k, l) = (col / db, col % db);
        match subsystem {
            // <i j|M^{T_A}|k l> = <k j|M|i l>
            Subsystem::A => m[(k * db + j, i * db + l)],
            // <i j|M^{T_B}|k l> = <i l|M|k j>
            Subsystem::B => m[(i * db + l, k * db + j)],
        }
    }))
}

/// Traces out `subsystem`, returning the reduced operator on the other factor.
pub fn partial_trace(m: &ComplexMatrix, subsystem: Subsystem, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(m, dims)?;
    let (da, db) = dims;
    Ok(match subsystem {
        Subsystem::B => ComplexMatrix::from_fn(da, da, |i, k| (0..db).map(|j| m[(i * db + j, k * db + j)]).sum()),
        Subsystem::A => ComplexMatrix::from_fn(db, db, |j, l| (0..da).map(|i| m[(i * db + j, i * db + l)]).sum()),
    })
}

/// `Tr(A B)` without forming the product.
pub fn trace_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "Tr(AB) with A {}x{} and B {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    Ok(acc)
}
