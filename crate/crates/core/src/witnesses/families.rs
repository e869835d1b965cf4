use serde::{Deserialize, Serialize};

use crate::bases::{gell_mann_basis, pauli};
use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, tensor, ComplexMatrix, Subsystem};
use crate::states::{max_correlated, FamilyParams, PureState, Setting};
use crate::tolerance;

use super::{Provenance, Witness};

/// Pauli content of `W_k`:
/// `W_k = 1/4 [ 1(x)1 + s sigma_m(x)sigma_m + (a^2-b^2)(t1 P1(x)P1 + t2 P2(x)P2)
///              + 2ab (l sigma_m(x)1 + r 1(x)sigma_m) ]`.
struct ExtremalTerms {
    main: (Setting, f64),
    rotated: [(Setting, f64); 2],
    local: (Setting, f64, f64),
}

fn extremal_terms(family: u8) -> ExtremalTerms {
    use Setting::*;
    match family {
        1 => ExtremalTerms { main: (Z, 1.0), rotated: [(X, 1.0), (Y, 1.0)], local: (Z, 1.0, 1.0) },
        2 => ExtremalTerms { main: (Z, -1.0), rotated: [(X, 1.0), (Y, -1.0)], local: (Z, 1.0, -1.0) },
        3 => ExtremalTerms { main: (X, 1.0), rotated: [(Z, 1.0), (Y, 1.0)], local: (X, 1.0, 1.0) },
        4 => ExtremalTerms { main: (X, -1.0), rotated: [(Z, 1.0), (Y, -1.0)], local: (X, -1.0, 1.0) },
        5 => ExtremalTerms { main: (Y, 1.0), rotated: [(Z, 1.0), (X, 1.0)], local: (Y, 1.0, 1.0) },
        6 => ExtremalTerms { main: (Y, -1.0), rotated: [(Z, 1.0), (X, -1.0)], local: (Y, -1.0, 1.0) },
        _ => unreachable!("family validated by FamilyParams"),
    }
}

/// Extremal two-qubit witness `W_k(a, b)` built from its Pauli expansion.
///
/// Equals the partial transpose (on the first qubit) of the projector onto
/// `theorem1_state(p)`; on the second qubit families 5 and 6 map `b -> -b`.
pub fn extremal_witness(p: &FamilyParams) -> Witness {
    let id = pauli::identity();
    let terms = extremal_terms(p.family());
    let diff = p.a() * p.a() - p.b() * p.b();
    let cross = 2.0 * p.a() * p.b();

    let corr = |s: Setting| {
        let m = s.pauli();
        tensor(&m, &m)
    };
    let mut w = tensor(&id, &id);
    w = &w + &corr(terms.main.0).scale(terms.main.1);
    for (s, sign) in terms.rotated {
        w = &w + &corr(s).scale(sign * diff);
    }
    let (s, left, right) = terms.local;
    let m = s.pauli();
    w = &w + &tensor(&m, &id).scale(left * cross);
    w = &w + &tensor(&id, &m).scale(right * cross);

    Witness::from_parts(
        w.scale(0.25).hermitian_part(),
        (2, 2),
        Provenance::Extremal2Q {
            family: p.family(),
            a: p.a(),
            b: p.b(),
        },
    )
}

/// `|psi><psi|^{T_B}`.
pub fn projector_witness(psi: &PureState) -> Witness {
    let m = partial_transpose(&psi.projector(), Subsystem::B, psi.dims()).expect("state dims are consistent");
    Witness::from_parts(
        m,
        psi.dims(),
        Provenance::ProjectorPt {
            re: psi.amplitudes().iter().map(|z| z.re).collect(),
            im: psi.amplitudes().iter().map(|z| z.im).collect(),
        },
    )
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidParameter(format!("local dimension must be >= 2, got {d}")))
    } else {
        Ok(())
    }
}

/// Swap operator `F(u (x) v) = v (x) u` on `C^d (x) C^d`.
pub fn flip_operator(d: usize) -> Result<Witness> {
    check_dim(d)?;
    let n = d * d;
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        if c == j * d + i {
            1.0.into()
        } else {
            0.0.into()
        }
    });
    Ok(Witness::from_parts(m, (d, d), Provenance::Flip { d }))
}

/// `d P+_d = sum_ij |ii><jj|`.
fn d_pplus(d: usize) -> ComplexMatrix {
    let n = d * d;
    ComplexMatrix::from_fn(n, n, |r, c| {
        if r % (d + 1) == 0 && c % (d + 1) == 0 {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

/// `sum_ij D_ij |i><i| (x) |j><j| - d P+_d`.
fn diagonal_minus_pplus(d: usize, dmat: &[Vec<f64>]) -> ComplexMatrix {
    let diag: Vec<f64> = dmat.iter().flatten().copied().collect();
    &ComplexMatrix::diagonal(&diag) - &d_pplus(d)
}

/// `1 (x) 1 - sum_ab O_ab G_a (x) G_b^T` for an orthogonal `d^2 x d^2` matrix `O` (row-major).
pub fn orthogonal_witness(o: &[f64], d: usize) -> Result<Witness> {
    check_dim(d)?;
    let n = d * d;
    if o.len() != n * n {
        return Err(Error::DimensionMismatch(format!("O must be {n}x{n}, got {} entries", o.len())));
    }
    let mut defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| o[k * n + i] * o[k * n + j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((dot - target).abs());
        }
    }
    if defect > tolerance::ORTHOGONAL {
        return Err(Error::NotOrthogonal { defect });
    }

    let basis = gell_mann_basis(d)?;
    let transposed: Vec<ComplexMatrix> = basis.elements().iter().map(ComplexMatrix::transpose).collect();
    let mut w = ComplexMatrix::identity(n);
    for alpha in 0..n {
        for beta in 0..n {
            let coeff = o[alpha * n + beta];
            if coeff != 0.0 {
                w = &w - &tensor(basis.element(alpha), &transposed[beta]).scale(coeff);
            }
        }
    }
    Ok(Witness::from_parts(
        w.hermitian_part(),
        (d, d),
        Provenance::Orthogonal { d, o: o.to_vec() },
    ))
}

/// `1 (x) 1 - d P+_d`.
pub fn reduction_witness(d: usize) -> Result<Witness> {
    check_dim(d)?;
    let w = &ComplexMatrix::identity(d * d) - &d_pplus(d);
    Ok(Witness::from_parts(w, (d, d), Provenance::Reduction { d }))
}

/// `D - d P+_d` with `D_ii = d - k`, `D_{i,i+1} = ... = D_{i,i+k} = 1` (indices mod d).
///
/// `k = 1, d = 3` is the Choi witness; `k = d - 1` is the reduction witness.
pub fn example1_witness(d: usize, k: usize) -> Result<Witness> {
    check_dim(d)?;
    if !(1..d).contains(&k) {
        return Err(Error::InvalidParameter(format!("k must lie in 1..={}, got {k}", d - 1)));
    }
    let mut dmat = vec![vec![0.0; d]; d];
    for (i, row) in dmat.iter_mut().enumerate() {
        row[i] = (d - k) as f64;
        for j in 1..=k {
            row[(i + j) % d] = 1.0;
        }
    }
    Ok(Witness::from_parts(
        diagonal_minus_pplus(d, &dmat),
        (d, d),
        Provenance::Example1 { d, k },
    ))
}

/// `p0 in [d-2, d-1)`, every `p_i > 0`, and `p_1 ... p_d >= (d - 1 - p0)^d`.
pub fn example2_is_valid(d: usize, p0: f64, p: &[f64]) -> bool {
    let lower = d as f64 - 2.0;
    let upper = d as f64 - 1.0;
    p.len() == d
        && p0 > 0.0
        && p.iter().all(|&x| x > 0.0)
        && (lower..upper).contains(&p0)
        && p.iter().product::<f64>() >= (upper - p0).powi(d as i32)
}

/// `D - d P+_d` with `D_ii = p0 + 1` and `D_{i,i-1} = p_i` (indices mod d, `p` of length d).
///
/// The matrix is built for any parameters; the flag reports [`example2_is_valid`].
pub fn example2_witness(d: usize, p0: f64, p: &[f64]) -> Result<(Witness, bool)> {
    check_dim(d)?;
    if p.len() != d {
        return Err(Error::InvalidParameter(format!("expected {d} weights, got {}", p.len())));
    }
    let mut dmat = vec![vec![0.0; d]; d];
    for (i, row) in dmat.iter_mut().enumerate() {
        row[i] = p0 + 1.0;
        row[(i + d - 1) % d] += p[i];
    }
    let w = Witness::from_parts(
        diagonal_minus_pplus(d, &dmat),
        (d, d),
        Provenance::Example2 { d, p0, p: p.to_vec() },
    );
    Ok((w, example2_is_valid(d, p0, p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example3Class {
    pub is_valid: bool,
    pub is_extremal_class: bool,
    pub is_indecomposable_class: bool,
}

const SURFACE_TOL: f64 = 1e-12;

/// Parameter conditions for `W[a,b,c]` on two qutrits.
///
/// Valid: `a, b, c >= 0`, `a < 2`, `a + b + c >= 2` and, when `a < 1`, `bc >= (1-a)^2`.
/// Extremal class: `0 < a <= 1`, `a + b + c = 2`, `bc = (1-a)^2`.
/// Indecomposable: extremal class with `b != c`.
pub fn example3_conditions(a: f64, b: f64, c: f64) -> Example3Class {
    let nonneg = a >= 0.0 && b >= 0.0 && c >= 0.0;
    let is_valid = nonneg && a < 2.0 && a + b + c >= 2.0 - SURFACE_TOL && (a >= 1.0 || b * c >= (1.0 - a).powi(2) - SURFACE_TOL);
    let is_extremal_class = nonneg
        && a > 0.0
        && a <= 1.0
        && (a + b + c - 2.0).abs() <= SURFACE_TOL
        && (b * c - (1.0 - a).powi(2)).abs() <= SURFACE_TOL;
    Example3Class {
        is_valid,
        is_extremal_class,
        is_indecomposable_class: is_extremal_class && (b - c).abs() > SURFACE_TOL,
    }
}

#[derive(Debug, Clone)]
pub struct Example3Witness {
    pub witness: Witness,
    pub class: Example3Class,
}

/// `D[abc] - 3 P+_3` with `D_ii = a + 1`, `D_{i,i+1} = b`, `D_{i,i+2} = c` (indices mod 3).
pub fn example3_witness(a: f64, b: f64, c: f64) -> Result<Example3Witness> {
    if [a, b, c].iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("a, b, c must be finite".into()));
    }
    let d = 3;
    let mut dmat = vec![vec![0.0; d]; d];
    for (i, row) in dmat.iter_mut().enumerate() {
        row[i] = a + 1.0;
        row[(i + 1) % d] = b;
        row[(i + 2) % d] = c;
    }
    Ok(Example3Witness {
        witness: Witness::from_parts(diagonal_minus_pplus(d, &dmat), (d, d), Provenance::Example3 { a, b, c }),
        class: example3_conditions(a, b, c),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConditions {
    /// `1 > lambda >= max_i x_i^2`: block-positive with a negative eigenvalue.
    pub is_valid: bool,
    /// `1 > lambda >= max_i |x_i|`.
    pub meets_amplitude_bound: bool,
    pub amplitude_threshold: f64,
    pub certified_threshold: f64,
}

const THRESHOLD_TOL: f64 = 1e-12;

pub fn mc_conditions(lambda: f64, x: &[f64]) -> McConditions {
    let x_star = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let below_one = lambda < 1.0;
    McConditions {
        is_valid: below_one && lambda >= x_star * x_star - THRESHOLD_TOL,
        meets_amplitude_bound: below_one && lambda >= x_star - THRESHOLD_TOL,
        amplitude_threshold: x_star,
        certified_threshold: x_star * x_star,
    }
}

#[derive(Debug, Clone)]
pub struct McWitness {
    pub witness: Witness,
    pub conditions: McConditions,
}

/// `lambda 1 (x) 1 - |psi_MC><psi_MC|` for the maximally correlated state `sum x_i |ii>`.
pub fn mc_witness(lambda: f64, x: &[f64]) -> Result<McWitness> {
    let psi = max_correlated(x)?;
    let n = x.len() * x.len();
    let w = &ComplexMatrix::identity(n).scale(lambda) - &psi.projector();
    Ok(McWitness {
        witness: Witness::from_parts(
            w,
            psi.dims(),
            Provenance::McThreshold {
                lambda,
                x: x.to_vec(),
            },
        ),
        conditions: mc_conditions(lambda, x),
    })
}
