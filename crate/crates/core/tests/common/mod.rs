#![allow(dead_code)]

use limwit::{Complex64, ComplexMatrix, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| gaussian_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Ginibre ensemble `G G^dag / Tr`.
pub fn random_density(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> DensityMatrix {
    let n = dims.0 * dims.1;
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr).hermitian_part(), dims).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    (&g + &g.adjoint()).scale(0.5)
}

/// Convex mixture of `terms` random pure product states.
pub fn random_separable(rng: &mut ChaCha8Rng, dims: (usize, usize), terms: usize) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let parts: Vec<(f64, DensityMatrix)> = weights
        .into_iter()
        .map(|w| {
            let a = DensityMatrix::new(ComplexMatrix::outer(&random_unit(rng, dims.0)), (1, dims.0)).unwrap();
            let b = DensityMatrix::new(ComplexMatrix::outer(&random_unit(rng, dims.1)), (1, dims.1)).unwrap();
            (w, DensityMatrix::product(&a, &b))
        })
        .collect();
    DensityMatrix::mixture(&parts).unwrap()
}

/// Random point of the probability simplex.
pub fn random_simplex<const N: usize>(rng: &mut ChaCha8Rng) -> [f64; N] {
    let mut p = [0.0; N];
    for x in p.iter_mut() {
        *x = -rng.random::<f64>().max(1e-300).ln();
    }
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= s);
    p
}

/// Haar-random real orthogonal matrix via Gram-Schmidt, row-major.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for r in &rows {
            let d: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(r).for_each(|(x, y)| *x -= d * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    rows.concat()
}
