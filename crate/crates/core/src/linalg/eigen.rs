use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::Result;
use crate::tolerance;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
///
/// `eigenvalues` are sorted ascending; column `i` of `eigenvectors` belongs to `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    /// `sum_i lambda_i v_i v_i^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k]).sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each pivot `(p, q)` first removes the phase of `a_pq` with a diagonal unitary and
/// then applies the real 2x2 Jacobi rotation. Sweeps stop once the off-diagonal
/// Frobenius norm falls below `JACOBI_OFF_DIAG * max(1, ||M||_F)`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.require_square("hermitian_eigen")?;
    m.require_hermitian(tolerance::HERMITIAN_INPUT)?;

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tolerance::JACOBI_OFF_DIAG * m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let h = g.norm();
                if h < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = g / h;
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let theta = 0.5 * (2.0 * h).atan2(beta - alpha);
                let (s, c) = theta.sin_cos();
                // U restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]]
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // A <- A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A <- U^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(m)?.min())
}

/// Eigenvector of the smallest eigenvalue, together with that eigenvalue.
pub fn min_eigenpair(m: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let spec = hermitian_eigen(m)?;
    Ok((spec.min(), spec.vector(0)))
}
