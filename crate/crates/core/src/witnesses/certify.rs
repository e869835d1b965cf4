use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{min_eigenpair, Complex64, ComplexMatrix};
use crate::tolerance;

use super::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub restarts: usize,
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub bp_tol: f64,
    pub eig_tol: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            iters: 200,
            tol: 1e-12,
            seed: 0,
            bp_tol: tolerance::BP_TOL,
            eig_tol: tolerance::EIG_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    /// Smallest `<a,b|W|a,b>` found over all restarts.
    pub min_product_value: f64,
    pub min_eigenvalue: f64,
    pub is_block_positive: bool,
    pub is_witness: bool,
    pub restarts_used: usize,
    /// Product vector attaining `min_product_value`.
    #[serde(skip)]
    pub minimizer: Option<(Vec<Complex64>, Vec<Complex64>)>,
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `(1 (x) <b|) W (1 (x) |b>)`.
fn contract_b(w: &ComplexMatrix, b: &[Complex64], da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(da, da, |i, k| {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, bj) in b.iter().enumerate() {
            for (l, bl) in b.iter().enumerate() {
                s += bj.conj() * w[(i * db + j, k * db + l)] * bl;
            }
        }
        s
    })
    .hermitian_part()
}

/// `(<a| (x) 1) W (|a> (x) 1)`.
fn contract_a(w: &ComplexMatrix, a: &[Complex64], db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(db, db, |j, l| {
        let mut s = Complex64::new(0.0, 0.0);
        for (i, ai) in a.iter().enumerate() {
            for (k, ak) in a.iter().enumerate() {
                s += ai.conj() * w[(i * db + j, k * db + l)] * ak;
            }
        }
        s
    })
    .hermitian_part()
}

type Descent = (f64, Vec<Complex64>, Vec<Complex64>);

fn descend(w: &ComplexMatrix, dims: (usize, usize), opts: &CertifyOptions, restart: usize) -> Result<Descent> {
    let (da, db) = dims;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let mut b = random_unit(&mut rng, db);
    let mut a = random_unit(&mut rng, da);
    let mut value = f64::INFINITY;
    for _ in 0..opts.iters {
        let (_, va) = min_eigenpair(&contract_b(w, &b, da, db))?;
        a = va;
        let (vb_val, vb) = min_eigenpair(&contract_a(w, &a, db))?;
        b = vb;
        let converged = (value - vb_val).abs() < opts.tol;
        value = vb_val;
        if converged {
            break;
        }
    }
    Ok((value, a, b))
}

/// Numerical minimum of `<a,b|W|a,b>` over unit product vectors by alternating
/// minimal-eigenvector updates from `opts.restarts` random starts.
///
/// The result is an upper bound on the true product minimum, so a negative
/// `min_product_value` proves `W` is not block-positive.
pub fn block_positivity_min(w: &Witness, opts: &CertifyOptions) -> Result<WitnessVerdict> {
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("at least one restart is required".into()));
    }
    let runs: Vec<Descent> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| descend(w.matrix(), w.dims(), opts, r))
        .collect::<Result<_>>()?;
    let (value, a, b) = runs
        .into_iter()
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("restarts > 0");
    let min_eigenvalue = w.min_eigenvalue();
    let is_block_positive = value >= -opts.bp_tol;
    Ok(WitnessVerdict {
        min_product_value: value,
        min_eigenvalue,
        is_block_positive,
        is_witness: is_block_positive && min_eigenvalue < -opts.eig_tol,
        restarts_used: opts.restarts,
        minimizer: Some((a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_vec;
    use crate::states::{bell_state, BellKind, FamilyParams};
    use crate::witnesses::{example1_witness, extremal_witness, projector_witness, reduction_witness, Provenance};

    fn quick() -> CertifyOptions {
        CertifyOptions {
            restarts: 16,
            ..CertifyOptions::default()
        }
    }

    #[test]
    fn flip_half_is_witness() {
        let w = projector_witness(&bell_state(BellKind::PhiPlus));
        let v = block_positivity_min(&w, &quick()).unwrap();
        assert!(v.min_product_value.abs() < 1e-9);
        assert!(v.is_witness);
    }

    #[test]
    fn entangled_projector_is_not_block_positive() {
        let w = Witness::new(bell_state(BellKind::PsiMinus).projector().scale(-1.0), (2, 2), Provenance::Custom).unwrap();
        let v = block_positivity_min(&w, &quick()).unwrap();
        assert!(!v.is_block_positive && !v.is_witness);
        assert!((v.min_product_value + 0.5).abs() < 1e-9);
    }

    #[test]
    fn minimizer_attains_value() {
        let w = extremal_witness(&FamilyParams::new(3, 0.3).unwrap());
        let v = block_positivity_min(&w, &quick()).unwrap();
        let (a, b) = v.minimizer.clone().unwrap();
        let ab = tensor_vec(&a, &b);
        let direct = w.matrix().sandwich(&ab, &ab).re;
        assert!((direct - v.min_product_value).abs() < 1e-12);
        assert!(v.is_witness);
    }

    #[test]
    fn qutrit_witnesses_certified() {
        for w in [reduction_witness(3).unwrap(), example1_witness(3, 1).unwrap()] {
            let v = block_positivity_min(&w, &quick()).unwrap();
            assert!(v.is_witness, "{:?}", w.provenance());
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let w = example1_witness(3, 1).unwrap();
        let a = block_positivity_min(&w, &quick()).unwrap();
        let b = block_positivity_min(&w, &quick()).unwrap();
        assert_eq!(a.min_product_value, b.min_product_value);
    }
}
