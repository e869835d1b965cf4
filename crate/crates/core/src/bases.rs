//! Orthonormal Hermitian operator bases and Bloch decompositions of bipartite operators.
//!
//! Elements are ordered `G_0 = 1/sqrt(d)`, then the diagonal matrices `G^D_l`
//! (`l = 1..d-1`), then the symmetric `G^S_jk` and antisymmetric `G^A_jk` matrices,
//! each with `(j, k)` in lexicographic order. All elements satisfy
//! `Tr(G_a G_b) = delta_ab`. Labels use 1-based level indices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix};
use crate::tolerance;

/// Unnormalized Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        ComplexMatrix::from_vec(2, 2, vec![0.0.into(), -i, i, 0.0.into()]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[1.0, -1.0])
    }

    /// `sigma_x`, `sigma_y`, `sigma_z` in that order.
    pub fn xyz() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisLabel {
    Identity,
    Diagonal(usize),
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
}

impl BasisLabel {
    fn kind(self) -> u8 {
        match self {
            BasisLabel::Identity => 0,
            BasisLabel::Diagonal(_) => 1,
            BasisLabel::Symmetric(..) => 2,
            BasisLabel::Antisymmetric(..) => 3,
        }
    }
}

/// Sparse view of a basis element: `(row, col, value)` triples.
type Sparse = Vec<(usize, usize, Complex64)>;

#[derive(Debug, Clone)]
pub struct OperatorBasis {
    d: usize,
    elements: Vec<ComplexMatrix>,
    labels: Vec<BasisLabel>,
    sparse: Vec<Sparse>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, alpha: usize) -> &ComplexMatrix {
        &self.elements[alpha]
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, alpha: usize) -> BasisLabel {
        self.labels[alpha]
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// `Tr(G_alpha X)` for every element, for a single-party `d x d` operator.
    pub fn coefficients(&self, x: &ComplexMatrix) -> Result<Vec<Complex64>> {
        if x.rows() != self.d || x.cols() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0} operator, got {1}x{2}",
                self.d,
                x.rows(),
                x.cols()
            )));
        }
        Ok(self
            .sparse
            .iter()
            .map(|g| g.iter().map(|&(i, k, v)| v * x[(k, i)]).sum())
            .collect())
    }

    /// `sum_alpha c_alpha G_alpha`.
    pub fn combine(&self, coeffs: &[Complex64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for (c, g) in coeffs.iter().zip(&self.sparse) {
            for &(i, k, v) in g {
                out[(i, k)] += c * v;
            }
        }
        out
    }

    /// `Tr[(G_alpha (x) G_beta) X]` on a `d^2 x d^2` operator.
    fn pair_coefficient(&self, alpha: usize, beta: usize, x: &ComplexMatrix) -> Complex64 {
        let d = self.d;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(i, k, ga) in &self.sparse[alpha] {
            for &(j, l, gb) in &self.sparse[beta] {
                acc += ga * gb * x[(k * d + l, i * d + j)];
            }
        }
        acc
    }
}

fn to_sparse(m: &ComplexMatrix) -> Sparse {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            if v.norm() > 0.0 {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// Generalized Gell-Mann basis of `d x d` Hermitian operators, including `G_0 = 1/sqrt(d)`.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("local dimension must be >= 2, got {d}")));
    }
    let mut elements = Vec::with_capacity(d * d);
    let mut labels = Vec::with_capacity(d * d);

    elements.push(ComplexMatrix::identity(d).scale(1.0 / (d as f64).sqrt()));
    labels.push(BasisLabel::Identity);

    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for entry in diag.iter_mut().take(l) {
            *entry = norm;
        }
        diag[l] = -(l as f64) * norm;
        elements.push(ComplexMatrix::diagonal(&diag));
        labels.push(BasisLabel::Diagonal(l));
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = s.into();
            m[(k, j)] = s.into();
            elements.push(m);
            labels.push(BasisLabel::Symmetric(j + 1, k + 1));
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            // (|j><k| - |k><j|) / (i sqrt 2)
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = Complex64::new(0.0, -s);
            m[(k, j)] = Complex64::new(0.0, s);
            elements.push(m);
            labels.push(BasisLabel::Antisymmetric(j + 1, k + 1));
        }
    }

    let sparse = elements.iter().map(to_sparse).collect();
    Ok(OperatorBasis { d, elements, labels, sparse })
}

/// Normalized Pauli basis `{1, sigma_z, sigma_x, sigma_y} / sqrt(2)`; identical to `gell_mann_basis(2)`.
pub fn pauli_basis() -> OperatorBasis {
    gell_mann_basis(2).expect("d = 2 is valid")
}

/// Orthonormal-expansion coefficients of a bipartite `d (x) d` Hermitian operator:
///
/// `X = alpha G_0(x)G_0 + sum a_i G_i(x)G_0 + sum b_j G_0(x)G_j + sum C_ij G_i(x)G_j`
///
/// with Latin indices running over the traceless elements `1..d^2-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochDecomposition {
    pub d: usize,
    pub alpha: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<Vec<f64>>,
}

/// The same operator written in the trace-normalized convention
/// `X = (1/d^2) { 1(x)1 + sum a_i G_i(x)1 + sum b_i 1(x)G_i + sum C_ij G_i(x)G_j }`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedBloch {
    pub trace: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<Vec<f64>>,
}

impl BlochDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let basis = gell_mann_basis(self.d).expect("stored dimension is valid");
        let n = basis.len();
        let mut out = ComplexMatrix::zeros(self.d * self.d, self.d * self.d);
        let mut add = |alpha: usize, beta: usize, coeff: f64| {
            if coeff != 0.0 {
                out = &out + &tensor(basis.element(alpha), basis.element(beta)).scale(coeff);
            }
        };
        add(0, 0, self.alpha);
        for i in 1..n {
            add(i, 0, self.a[i - 1]);
            add(0, i, self.b[i - 1]);
            for j in 1..n {
                add(i, j, self.c[i - 1][j - 1]);
            }
        }
        out
    }

    /// Largest off-diagonal `|C_ij|`.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    worst = worst.max(v.abs());
                }
            }
        }
        worst
    }

    /// Diagonal of the correlation matrix, `c_alpha = C_alpha,alpha`.
    pub fn correlation_diagonal(&self) -> Vec<f64> {
        (0..self.c.len()).map(|i| self.c[i][i]).collect()
    }

    /// Rescales to the trace-normalized convention. Fails for traceless operators.
    pub fn to_normalized(&self) -> Result<NormalizedBloch> {
        let d = self.d as f64;
        // Tr X = alpha * Tr(G_0 (x) G_0) = alpha * d
        let trace = self.alpha * d;
        if trace.abs() < 1e-300 {
            return Err(Error::InvalidParameter("traceless operator has no normalized Bloch form".into()));
        }
        let local = d * d.sqrt() / trace;
        let corr = d * d / trace;
        Ok(NormalizedBloch {
            trace,
            a: self.a.iter().map(|x| x * local).collect(),
            b: self.b.iter().map(|x| x * local).collect(),
            c: self.c.iter().map(|row| row.iter().map(|x| x * corr).collect()).collect(),
        })
    }
}

/// Decomposes a `d^2 x d^2` Hermitian operator in the `gell_mann_basis(d)` product basis.
pub fn bloch_decompose(x: &ComplexMatrix, d: usize) -> Result<BlochDecomposition> {
    let basis = gell_mann_basis(d)?;
    let n = x.require_square("bloch_decompose")?;
    if n != d * d {
        return Err(Error::DimensionMismatch(format!("expected {0}x{0}, got {n}x{n}", d * d)));
    }
    x.require_hermitian(tolerance::HERMITIAN_INPUT)?;

    let m = basis.len();
    let coeff = |alpha, beta| basis.pair_coefficient(alpha, beta, x).re;
    Ok(BlochDecomposition {
        d,
        alpha: coeff(0, 0),
        a: (1..m).map(|i| coeff(i, 0)).collect(),
        b: (1..m).map(|j| coeff(0, j)).collect(),
        c: (1..m).map(|i| (1..m).map(|j| coeff(i, j)).collect()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorrelationClass {
    /// Diagonal correlation matrix.
    C0,
    /// Diagonal-block `D_kl` plus matched `S_ij (x) S_ij` and `A_ij (x) A_ij` terms only.
    C1,
    General,
}

/// The structured coefficients of a class-C1 correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct C1View {
    /// `D_kl`, `(d-1) x (d-1)`.
    pub diagonal_block: Vec<Vec<f64>>,
    /// `S_ij` keyed by 1-based `(i, j)`.
    pub symmetric: Vec<((usize, usize), f64)>,
    /// `A_ij` keyed by 1-based `(i, j)`.
    pub antisymmetric: Vec<((usize, usize), f64)>,
}

/// Largest correlation entry that falls outside the C1 pattern, with the labels of the worst offender.
pub fn c1_violation(dec: &BlochDecomposition) -> (f64, Option<(BasisLabel, BasisLabel)>) {
    let basis = gell_mann_basis(dec.d).expect("stored dimension is valid");
    let mut worst = (0.0, None);
    for (i, row) in dec.c.iter().enumerate() {
        let li = basis.label(i + 1);
        for (j, &v) in row.iter().enumerate() {
            let lj = basis.label(j + 1);
            let allowed = (li.kind() == 1 && lj.kind() == 1) || i == j;
            if !allowed && v.abs() > worst.0 {
                worst = (v.abs(), Some((li, lj)));
            }
        }
    }
    worst
}

pub fn classify_correlation(dec: &BlochDecomposition, tol: f64) -> CorrelationClass {
    if dec.max_off_diagonal() <= tol {
        CorrelationClass::C0
    } else if c1_violation(dec).0 <= tol {
        CorrelationClass::C1
    } else {
        CorrelationClass::General
    }
}

/// Structured C1 coefficients, or `None` when the operator is outside C1.
pub fn c1_view(dec: &BlochDecomposition, tol: f64) -> Option<C1View> {
    if c1_violation(dec).0 > tol {
        return None;
    }
    let basis = gell_mann_basis(dec.d).expect("stored dimension is valid");
    let nd = dec.d - 1;
    let diagonal_block = (0..nd).map(|k| (0..nd).map(|l| dec.c[k][l]).collect()).collect();
    let mut symmetric = Vec::new();
    let mut antisymmetric = Vec::new();
    for i in nd..dec.c.len() {
        match basis.label(i + 1) {
            BasisLabel::Symmetric(j, k) => symmetric.push(((j, k), dec.c[i][i])),
            BasisLabel::Antisymmetric(j, k) => antisymmetric.push(((j, k), dec.c[i][i])),
            _ => unreachable!("diagonal elements come first"),
        }
    }
    Some(C1View {
        diagonal_block,
        symmetric,
        antisymmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.max_abs_diff(b)
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(gell_mann_basis(1).is_err());
        assert!(gell_mann_basis(0).is_err());
    }

    #[test]
    fn pauli_basis_elements() {
        let b = pauli_basis();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(b.len(), 4);
        let z = b.index_of(BasisLabel::Diagonal(1)).unwrap();
        assert!(max_dev(b.element(z), &pauli::z().scale(r)) < 1e-15);
        let x = b.index_of(BasisLabel::Symmetric(1, 2)).unwrap();
        assert!(max_dev(b.element(x), &pauli::x().scale(r)) < 1e-15);
        let y = b.index_of(BasisLabel::Antisymmetric(1, 2)).unwrap();
        assert!(max_dev(b.element(y), &pauli::y().scale(r)) < 1e-15);
        assert!(max_dev(b.element(0), &ComplexMatrix::identity(2).scale(r)) < 1e-15);
    }

    #[test]
    fn qutrit_diagonal_two() {
        let b = gell_mann_basis(3).unwrap();
        let g = b.element(b.index_of(BasisLabel::Diagonal(2)).unwrap());
        let s6 = 1.0 / 6f64.sqrt();
        assert!(max_dev(g, &ComplexMatrix::diagonal(&[s6, s6, -2.0 * s6])) < 1e-15);
    }

    #[test]
    fn element_counts_d4() {
        let b = gell_mann_basis(4).unwrap();
        assert_eq!(b.len(), 16);
        let count = |k: u8| b.labels().iter().filter(|l| l.kind() == k).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (1, 3, 6, 6));
    }

    #[test]
    fn ordering_is_diagonal_symmetric_antisymmetric() {
        let b = gell_mann_basis(3).unwrap();
        let expected = [
            BasisLabel::Identity,
            BasisLabel::Diagonal(1),
            BasisLabel::Diagonal(2),
            BasisLabel::Symmetric(1, 2),
            BasisLabel::Symmetric(1, 3),
            BasisLabel::Symmetric(2, 3),
            BasisLabel::Antisymmetric(1, 2),
            BasisLabel::Antisymmetric(1, 3),
            BasisLabel::Antisymmetric(2, 3),
        ];
        assert_eq!(b.labels(), &expected);
    }

    #[test]
    fn maximally_mixed_has_no_bloch_vectors() {
        let x = ComplexMatrix::identity(9).scale(1.0 / 9.0);
        let dec = bloch_decompose(&x, 3).unwrap();
        assert!(dec.a.iter().chain(&dec.b).all(|v| v.abs() < 1e-15));
        assert!(dec.c.iter().flatten().all(|v| v.abs() < 1e-15));
        let norm = dec.to_normalized().unwrap();
        assert!((norm.trace - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decompose_rejects_bad_input() {
        assert!(bloch_decompose(&ComplexMatrix::identity(8), 3).is_err());
        let nh = ComplexMatrix::from_fn(4, 4, |i, j| if j == i + 1 { 1.0.into() } else { 0.0.into() });
        assert!(matches!(bloch_decompose(&nh, 2), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn normalized_convention_roundtrip_for_pauli_form() {
        // 1/4 (1 + 0.3 sz(x)1 + 0.5 sx(x)sx) in Pauli form
        let id = ComplexMatrix::identity(2);
        let x = (&(&tensor(&id, &id) + &tensor(&pauli::z(), &id).scale(0.3))
            + &tensor(&pauli::x(), &pauli::x()).scale(0.5))
            .scale(0.25);
        let n = bloch_decompose(&x, 2).unwrap().to_normalized().unwrap();
        // sigma = sqrt(2) G, so the normalized coefficients pick up a factor 2 or sqrt 2
        let basis = pauli_basis();
        let z = basis.index_of(BasisLabel::Diagonal(1)).unwrap() - 1;
        let sx = basis.index_of(BasisLabel::Symmetric(1, 2)).unwrap() - 1;
        assert!((n.a[z] - 0.3 * 2f64.sqrt()).abs() < 1e-14);
        assert!((n.c[sx][sx] - 0.5 * 2.0).abs() < 1e-14);
    }
}
