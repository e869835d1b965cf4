//! Validated bipartite states and the constructors for every family used by the witnesses.

mod channel;
mod record;

pub use channel::{amplitude_damping_apply, amplitude_damping_kraus, damped_bell};
pub use record::{exact_record, sampled_record, MeasurementRecord, RecordErrors, Setting};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, partial_trace, ComplexMatrix, Subsystem};
use crate::tolerance;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Normalized vector in `C^dA (x) C^dB`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: (usize, usize),
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(dims: (usize, usize), amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > tolerance::NORMALIZATION {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalized(dims: (usize, usize), amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero vector cannot be normalized".into()));
        }
        Self::new(dims, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    pub fn from_real(dims: (usize, usize), amplitudes: &[f64]) -> Result<Self> {
        Self::new(dims, amplitudes.iter().map(|&x| x.into()).collect())
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.projector(),
            dims: self.dims,
        }
    }

    /// Number of Schmidt coefficients above `tol`.
    pub fn schmidt_rank(&self, tol: f64) -> usize {
        let reduced = partial_trace(&self.projector(), Subsystem::B, self.dims).expect("dims validated");
        hermitian_eigen(&reduced)
            .expect("reduced state is Hermitian")
            .eigenvalues
            .iter()
            .filter(|&&l| l > tol * tol)
            .count()
    }
}

/// Unit-trace positive semidefinite operator on `C^dA (x) C^dB`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let n = matrix.require_square("density matrix")?;
        if dims.0 * dims.1 != n {
            return Err(Error::DimensionMismatch(format!("size {n} does not match dims {dims:?}")));
        }
        let defect = matrix.hermitian_defect();
        if defect > tolerance::MATRIX_EQ {
            return Err(Error::NotHermitian { defect });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tolerance::NORMALIZATION {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        let min = hermitian_eigen(&matrix)?.min();
        if min < tolerance::PSD_FLOOR {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, dims })
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let n = dims.0 * dims.1;
        Self {
            matrix: ComplexMatrix::identity(n).scale(1.0 / n as f64),
            dims,
        }
    }

    /// `rho_A (x) rho_B`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        Self {
            matrix: crate::linalg::tensor(&a.matrix, &b.matrix),
            dims: (a.dim(), b.dim()),
        }
    }

    /// Convex combination `sum_i w_i rho_i`; weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let dims = first.1.dims;
        let n = first.1.matrix.rows();
        let mut m = ComplexMatrix::zeros(n, n);
        for (w, rho) in parts {
            if *w < 0.0 || rho.dims != dims {
                return Err(Error::InvalidParameter("mixture weights must be >= 0 over equal dims".into()));
            }
            m = &m + &rho.matrix.scale(*w);
        }
        Self::new(m, dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Total dimension for a bipartite state, or the single-party dimension.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `Tr(O rho)`, real part.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<f64> {
        Ok(crate::linalg::trace_inner(observable, &self.matrix)?.re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];
}

/// Two-qubit Bell state.
pub fn bell_state(kind: BellKind) -> PureState {
    generalized_bell(1, 2, kind, 2).expect("(1, 2) is valid for d = 2")
}

/// `|phi+-> = (|jj> +- |kk>)/sqrt2`, `|psi+-> = (|jk> +- |kj>)/sqrt2` in `C^d (x) C^d`,
/// with 1-based `1 <= j < k <= d`.
pub fn generalized_bell(j: usize, k: usize, kind: BellKind, d: usize) -> Result<PureState> {
    if !(1 <= j && j < k && k <= d) {
        return Err(Error::InvalidParameter(format!("need 1 <= j < k <= d, got j={j}, k={k}, d={d}")));
    }
    let (j, k) = (j - 1, k - 1);
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let (first, second, sign) = match kind {
        BellKind::PhiPlus => (j * d + j, k * d + k, 1.0),
        BellKind::PhiMinus => (j * d + j, k * d + k, -1.0),
        BellKind::PsiPlus => (j * d + k, k * d + j, 1.0),
        BellKind::PsiMinus => (j * d + k, k * d + j, -1.0),
    };
    amps[first] = FRAC_1_SQRT_2.into();
    amps[second] = (sign * FRAC_1_SQRT_2).into();
    PureState::new((d, d), amps)
}

/// One of the six superposition families with real `a^2 + b^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    family: u8,
    a: f64,
    b: f64,
}

impl FamilyParams {
    /// `b = +sqrt(1 - a^2)`.
    pub fn new(family: u8, a: f64) -> Result<Self> {
        Self::with_b_sign(family, a, false)
    }

    pub fn with_b_sign(family: u8, a: f64, negative_b: bool) -> Result<Self> {
        Self::check_family(family)?;
        if !(a.abs() <= 1.0) {
            return Err(Error::InvalidParameter(format!("|a| must be <= 1, got {a}")));
        }
        let b = (1.0 - a * a).max(0.0).sqrt();
        Ok(Self {
            family,
            a,
            b: if negative_b { -b } else { b },
        })
    }

    /// `a = cos(theta)`, `b = sin(theta)`.
    pub fn from_angle(family: u8, theta: f64) -> Result<Self> {
        Self::check_family(family)?;
        let (b, a) = theta.sin_cos();
        Ok(Self { family, a, b })
    }

    fn check_family(family: u8) -> Result<()> {
        if (1..=6).contains(&family) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("family must be in 1..=6, got {family}")))
        }
    }

    pub fn family(&self) -> u8 {
        self.family
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// The Bell pair `(first, second)` and whether `second` carries the factor `i`.
fn family_components(family: u8) -> (BellKind, BellKind, bool) {
    use BellKind::*;
    match family {
        1 => (PhiPlus, PhiMinus, false),
        2 => (PsiPlus, PsiMinus, false),
        3 => (PhiPlus, PsiPlus, false),
        4 => (PhiMinus, PsiMinus, false),
        5 => (PhiPlus, PsiMinus, true),
        6 => (PhiMinus, PsiPlus, true),
        _ => unreachable!("family validated on construction"),
    }
}

fn superpose(p: &FamilyParams, first: &PureState, second: &PureState, imaginary: bool) -> PureState {
    let coeff_b = if imaginary {
        Complex64::new(0.0, p.b)
    } else {
        Complex64::new(p.b, 0.0)
    };
    let amps = first
        .amplitudes
        .iter()
        .zip(&second.amplitudes)
        .map(|(x, y)| x * p.a + y * coeff_b)
        .collect();
    PureState {
        dims: first.dims,
        amplitudes: amps,
    }
}

/// `a|B1> + b|B2>` (or `+ i b|B2>` for families 5 and 6) over the two-qubit Bell states.
pub fn theorem1_state(p: &FamilyParams) -> PureState {
    let (first, second, imaginary) = family_components(p.family);
    superpose(p, &bell_state(first), &bell_state(second), imaginary)
}

/// The same families built from the `(j, k)` Bell states in `C^d (x) C^d`.
pub fn theorem2_state(p: &FamilyParams, j: usize, k: usize, d: usize) -> Result<PureState> {
    let (first, second, imaginary) = family_components(p.family);
    Ok(superpose(
        p,
        &generalized_bell(j, k, first, d)?,
        &generalized_bell(j, k, second, d)?,
        imaginary,
    ))
}

fn swap_matrix(d: usize) -> ComplexMatrix {
    let n = d * d;
    ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        if c == j * d + i {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

/// `(1 (x) 1 - f F) / (2 (2 - f))` for `f` in `[-1, 1]`.
pub fn werner(f: f64) -> Result<DensityMatrix> {
    if !(-1.0..=1.0).contains(&f) {
        return Err(Error::InvalidParameter(format!("Werner parameter must lie in [-1, 1], got {f}")));
    }
    let m = (&ComplexMatrix::identity(4) - &swap_matrix(2).scale(f)).scale(1.0 / (2.0 * (2.0 - f)));
    Ok(DensityMatrix { matrix: m, dims: (2, 2) })
}

/// `(1 - p) 1/4 + p |phi+><phi+|` for `p` in `[0, 1]`.
pub fn isotropic(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("isotropic weight must lie in [0, 1], got {p}")));
    }
    let m = &ComplexMatrix::identity(4).scale((1.0 - p) / 4.0) + &bell_state(BellKind::PhiPlus).projector().scale(p);
    Ok(DensityMatrix { matrix: m, dims: (2, 2) })
}

/// `sum_i p_i |B_i><B_i|` with Bell states ordered `phi+, phi-, psi+, psi-`.
pub fn bell_diagonal(p: [f64; 4]) -> Result<DensityMatrix> {
    if p.iter().any(|&x| !(x >= 0.0)) || (p.iter().sum::<f64>() - 1.0).abs() > tolerance::NORMALIZATION {
        return Err(Error::InvalidParameter(format!("Bell weights must be a probability vector, got {p:?}")));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for (w, kind) in p.iter().zip(BellKind::ALL) {
        m = &m + &bell_state(kind).projector().scale(*w);
    }
    Ok(DensityMatrix { matrix: m, dims: (2, 2) })
}

/// `sum_i x_i |ii>` with real `x`, `sum x_i^2 = 1`; `d = x.len()`.
pub fn max_correlated(x: &[f64]) -> Result<PureState> {
    let d = x.len();
    if d < 2 {
        return Err(Error::InvalidParameter("need at least two amplitudes".into()));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for (i, &xi) in x.iter().enumerate() {
        amps[i * d + i] = xi.into();
    }
    PureState::new((d, d), amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        x.into()
    }

    #[test]
    fn bell_states_amplitudes() {
        let r = FRAC_1_SQRT_2;
        assert_eq!(bell_state(BellKind::PhiPlus).amplitudes(), &[c(r), c(0.0), c(0.0), c(r)]);
        assert_eq!(bell_state(BellKind::PsiMinus).amplitudes(), &[c(0.0), c(r), c(-r), c(0.0)]);
        let ip = bell_state(BellKind::PhiPlus).inner(&bell_state(BellKind::PsiMinus));
        assert_eq!(ip, c(0.0));
    }

    #[test]
    fn generalized_bell_positions() {
        let r = FRAC_1_SQRT_2;
        let s = generalized_bell(1, 2, BellKind::PhiPlus, 3).unwrap();
        let mut expected = vec![c(0.0); 9];
        expected[0] = c(r); // |11>
        expected[4] = c(r); // |22>
        assert_eq!(s.amplitudes(), &expected[..]);

        let s = generalized_bell(1, 3, BellKind::PsiMinus, 3).unwrap();
        let mut expected = vec![c(0.0); 9];
        expected[2] = c(r); // |13>
        expected[6] = c(-r); // |31>
        assert_eq!(s.amplitudes(), &expected[..]);

        for kind in BellKind::ALL {
            assert_eq!(generalized_bell(1, 2, kind, 2).unwrap(), bell_state(kind));
        }
    }

    #[test]
    fn generalized_bell_rejects_bad_indices() {
        assert!(generalized_bell(0, 2, BellKind::PhiPlus, 3).is_err());
        assert!(generalized_bell(2, 2, BellKind::PhiPlus, 3).is_err());
        assert!(generalized_bell(2, 4, BellKind::PhiPlus, 3).is_err());
    }

    #[test]
    fn theorem1_examples() {
        let r = FRAC_1_SQRT_2;
        let p = FamilyParams::new(1, r).unwrap();
        let s = theorem1_state(&p);
        assert!((s.amplitudes()[0] - c(1.0)).norm() < 1e-15);
        assert!(s.amplitudes()[1..].iter().all(|z| z.norm() < 1e-15));

        let s = theorem1_state(&FamilyParams::new(2, 1.0).unwrap());
        assert_eq!(s, bell_state(BellKind::PsiPlus));

        let (a, b) = (0.6, 0.8);
        let s = theorem1_state(&FamilyParams::new(5, a).unwrap());
        let phi = bell_state(BellKind::PhiPlus);
        let psi = bell_state(BellKind::PsiMinus);
        assert!((phi.inner(&s) - c(a)).norm() < 1e-15);
        assert!((psi.inner(&s) - Complex64::new(0.0, b)).norm() < 1e-15);
    }

    #[test]
    fn theorem1_entangled_iff_a_not_one_over_sqrt2() {
        for family in 1..=6 {
            let s = theorem1_state(&FamilyParams::new(family, FRAC_1_SQRT_2).unwrap());
            assert_eq!(s.schmidt_rank(1e-7), 1, "family {family}");
            let s = theorem1_state(&FamilyParams::new(family, 0.3).unwrap());
            assert_eq!(s.schmidt_rank(1e-7), 2, "family {family}");
        }
    }

    #[test]
    fn theorem2_examples() {
        let s = theorem2_state(&FamilyParams::new(1, 1.0).unwrap(), 1, 3, 3).unwrap();
        assert_eq!(s, generalized_bell(1, 3, BellKind::PhiPlus, 3).unwrap());
        for family in 1..=6 {
            let p = FamilyParams::new(family, 0.37).unwrap();
            assert_eq!(theorem2_state(&p, 1, 2, 2).unwrap(), theorem1_state(&p));
            for d in 3..=5 {
                let s = theorem2_state(&p, 2, d, d).unwrap();
                assert!(s.schmidt_rank(1e-7) <= 2);
            }
        }
    }

    #[test]
    fn family_params_validation() {
        assert!(FamilyParams::new(0, 0.5).is_err());
        assert!(FamilyParams::new(7, 0.5).is_err());
        assert!(FamilyParams::new(1, 1.2).is_err());
        assert!(FamilyParams::new(1, f64::NAN).is_err());
        let p = FamilyParams::with_b_sign(3, 0.6, true).unwrap();
        assert!((p.b() + 0.8).abs() < 1e-15);
        let q = FamilyParams::from_angle(2, 1.0).unwrap();
        assert!((q.a() * q.a() + q.b() * q.b() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn werner_examples() {
        let singlet = bell_state(BellKind::PsiMinus).projector();
        assert!(werner(1.0).unwrap().matrix().max_abs_diff(&singlet) < 1e-15);
        assert!(werner(0.0).unwrap().matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
        for f in [-1.0, -0.3, 0.2, 0.5, 0.8] {
            let tr = werner(f).unwrap().expectation(&swap_matrix(2)).unwrap();
            assert!((tr - (1.0 - 2.0 * f) / (2.0 - f)).abs() < 1e-14);
        }
        assert!(werner(1.5).is_err());
    }

    #[test]
    fn isotropic_examples() {
        assert!(isotropic(0.0).unwrap().matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
        assert!(isotropic(1.0)
            .unwrap()
            .matrix()
            .max_abs_diff(&bell_state(BellKind::PhiPlus).projector())
            < 1e-15);
        assert!(isotropic(-0.1).is_err());
    }

    #[test]
    fn bell_diagonal_examples() {
        let rho = bell_diagonal([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(rho.matrix().max_abs_diff(&bell_state(BellKind::PhiPlus).projector()) < 1e-15);
        let rho = bell_diagonal([0.25; 4]).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
        assert!(bell_diagonal([0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(bell_diagonal([0.5, 0.6, 0.0, 0.0]).is_err());
    }

    #[test]
    fn max_correlated_examples() {
        let s = max_correlated(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.schmidt_rank(1e-7), 1);
        assert!((s.amplitudes()[0] - c(1.0)).norm() < 1e-15);
        assert!(matches!(max_correlated(&[1.0, 1.0]), Err(Error::NotNormalized { .. })));

        // d P+ = F^Gamma
        let d = 3;
        let x = vec![1.0 / (d as f64).sqrt(); d];
        let p = max_correlated(&x).unwrap().projector().scale(d as f64);
        let f_pt = crate::linalg::partial_transpose(&swap_matrix(d), Subsystem::B, (d, d)).unwrap();
        assert!(p.max_abs_diff(&f_pt) < 1e-14);
    }

    #[test]
    fn max_correlated_projector_matches_termwise_expansion() {
        use crate::bases::{gell_mann_basis, BasisLabel};
        use crate::linalg::tensor;
        let x = [0.2f64, 0.5, (1.0f64 - 0.04 - 0.25).sqrt()];
        let d = 3;
        let basis = gell_mann_basis(d).unwrap();
        let mut expansion = ComplexMatrix::zeros(9, 9);
        for i in 0..d {
            let mut e = ComplexMatrix::zeros(d, d);
            e[(i, i)] = 1.0.into();
            expansion = &expansion + &tensor(&e, &e).scale(x[i] * x[i]);
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let s = basis.element(basis.index_of(BasisLabel::Symmetric(i + 1, j + 1)).unwrap());
                let a = basis.element(basis.index_of(BasisLabel::Antisymmetric(i + 1, j + 1)).unwrap());
                // |ii><jj| + |jj><ii| = S(x)S - A(x)A for the unit-trace-norm elements
                let term = &tensor(s, s) - &tensor(a, a);
                expansion = &expansion + &term.scale(x[i] * x[j]);
            }
        }
        let p = max_correlated(&x).unwrap().projector();
        assert!(p.max_abs_diff(&expansion) < 1e-14);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(4), (2, 2)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diagonal(&[1.5, -0.5, 0.0, 0.0]), (2, 2)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(4).scale(0.25), (2, 3)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(4).scale(0.25), (2, 2)).is_ok());
    }
}
