//! Entanglement detection from the nine numbers of a two-qubit measurement record.
//!
//! With `a = cos t`, `b = sin t` every extremal witness evaluates to
//! `Tr[W_k rho] = 1/4 (1 + w + u cos 2t + v sin 2t)`, where `(w, u, v)` are fixed
//! linear combinations of the record entries. The minimum over `t` is closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{damped_bell, exact_record, werner, FamilyParams, MeasurementRecord};
use crate::tolerance;
use crate::witnesses::ppt_min_eigenvalue;

/// Rows `w, u, v` over `exx, eyy, ezz, ax, ay, az, bx, by, bz`.
type Coefficients = [[f64; 9]; 3];

#[rustfmt::skip]
const TABLE: [Coefficients; 6] = [
    // family 1: w = ezz, u = exx + eyy, v = az + bz
    [[0., 0., 1., 0., 0., 0., 0., 0., 0.],
     [1., 1., 0., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., 0., 0., 1., 0., 0., 1.]],
    // family 2: w = -ezz, u = exx - eyy, v = az - bz
    [[0., 0., -1., 0., 0., 0., 0., 0., 0.],
     [1., -1., 0., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., 0., 0., 1., 0., 0., -1.]],
    // family 3: w = exx, u = ezz + eyy, v = ax + bx
    [[1., 0., 0., 0., 0., 0., 0., 0., 0.],
     [0., 1., 1., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., 1., 0., 0., 1., 0., 0.]],
    // family 4: w = -exx, u = ezz - eyy, v = bx - ax
    [[-1., 0., 0., 0., 0., 0., 0., 0., 0.],
     [0., -1., 1., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., -1., 0., 0., 1., 0., 0.]],
    // family 5: w = eyy, u = ezz + exx, v = ay + by
    [[0., 1., 0., 0., 0., 0., 0., 0., 0.],
     [1., 0., 1., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., 0., 1., 0., 0., 1., 0.]],
    // family 6: w = -eyy, u = ezz - exx, v = by - ay
    [[0., -1., 0., 0., 0., 0., 0., 0., 0.],
     [-1., 0., 1., 0., 0., 0., 0., 0., 0.],
     [0., 0., 0., 0., -1., 0., 0., 1., 0.]],
];

fn dot(c: &[f64; 9], e: &[f64; 9]) -> f64 {
    c.iter().zip(e).map(|(x, y)| x * y).sum()
}

fn check_family(family: u8) -> Result<()> {
    if (1..=6).contains(&family) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("family must be in 1..=6, got {family}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyExpectation {
    pub family: u8,
    pub w: f64,
    pub u: f64,
    pub v: f64,
}

impl FamilyExpectation {
    pub fn value_at(&self, theta: f64) -> f64 {
        let (s, c) = (2.0 * theta).sin_cos();
        0.25 * (1.0 + self.w + self.u * c + self.v * s)
    }
}

pub fn family_expectation(rec: &MeasurementRecord, family: u8) -> Result<FamilyExpectation> {
    check_family(family)?;
    let e = rec.entries();
    let [cw, cu, cv] = &TABLE[usize::from(family - 1)];
    Ok(FamilyExpectation {
        family,
        w: dot(cw, &e),
        u: dot(cu, &e),
        v: dot(cv, &e),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyMinimum {
    pub theta: f64,
    pub value: f64,
}

pub fn minimize_family(fe: &FamilyExpectation) -> FamilyMinimum {
    let r = fe.u.hypot(fe.v);
    let theta = if r == 0.0 { 0.0 } else { 0.5 * (-fe.v).atan2(-fe.u) };
    FamilyMinimum {
        theta,
        value: 0.25 * (1.0 + fe.w - r),
    }
}

/// `Tr[W_k(a, b) rho]` from the record alone, with `b` taken from `p`.
pub fn witness_value(rec: &MeasurementRecord, p: &FamilyParams) -> f64 {
    let fe = family_expectation(rec, p.family()).expect("family validated by FamilyParams");
    let (a, b) = (p.a(), p.b());
    0.25 * (1.0 + fe.w + (a * a - b * b) * fe.u + 2.0 * a * b * fe.v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectOptions {
    /// Multiple of the propagated standard error a sampled minimum must fall below.
    pub sigma_threshold: f64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            sigma_threshold: tolerance::SIGMA_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub min_value: f64,
    pub best_family: u8,
    /// `cos t*` on the branch `b = sin t* >= 0`.
    pub best_a: f64,
    pub entangled: bool,
    /// `-min_value / sigma` for sampled records; absent for exact ones.
    pub significance: Option<f64>,
}

/// First-order standard error of the family minimum.
fn propagated_sigma(fe: &FamilyExpectation, errs: &[f64; 9]) -> f64 {
    let [cw, cu, cv] = &TABLE[usize::from(fe.family - 1)];
    let r = fe.u.hypot(fe.v);
    let (gu, gv) = if r > 0.0 { (-fe.u / r, -fe.v / r) } else { (0.0, 0.0) };
    let var: f64 = (0..9)
        .map(|i| {
            let g = 0.25 * (cw[i] + gu * cu[i] + gv * cv[i]);
            g * g * errs[i] * errs[i]
        })
        .sum();
    var.sqrt()
}

pub fn detect(rec: &MeasurementRecord) -> DetectionResult {
    detect_with(rec, &DetectOptions::default())
}

pub fn detect_with(rec: &MeasurementRecord, opts: &DetectOptions) -> DetectionResult {
    let mut best: Option<(FamilyExpectation, FamilyMinimum)> = None;
    for family in 1..=6 {
        let fe = family_expectation(rec, family).expect("family in range");
        let m = minimize_family(&fe);
        if best.is_none_or(|(_, b)| m.value < b.value) {
            best = Some((fe, m));
        }
    }
    let (fe, m) = best.expect("six families");

    let theta = m.theta.rem_euclid(std::f64::consts::PI);
    let best_a = theta.cos();

    let (entangled, significance) = match rec.std_err {
        Some(errs) => {
            let sigma = propagated_sigma(&fe, &errs.as_array());
            let sig = if sigma > 0.0 {
                -m.value / sigma
            } else if m.value < 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
            (m.value < -opts.sigma_threshold * sigma, Some(sig))
        }
        None => (m.value < 0.0, None),
    };

    DetectionResult {
        min_value: m.value,
        best_family: fe.family,
        best_a,
        entangled,
        significance,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub gamma: f64,
    /// Ends of the interval of `a` in `[0, 1/sqrt 2]` where `W_2(a)` is negative.
    pub a_lower: Option<f64>,
    pub a_upper: Option<f64>,
    pub min_value: f64,
}

const SCAN_POINTS: usize = 4096;
const BISECT_TOL: f64 = 1e-10;
/// Values above this count as non-negative, so roundoff at an exact zero is not a crossing.
const NEGATIVE_FLOOR: f64 = -1e-14;

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) and f(hi) have opposite signs
    let lo_neg = f(lo) < NEGATIVE_FLOOR;
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < NEGATIVE_FLOOR) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bounds of the negative region of `f` on `[lo, hi]`, or `None` if it never dips below zero.
fn negative_region(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let grid: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let first = values.iter().position(|&v| v < NEGATIVE_FLOOR)?;
    let last = values.iter().rposition(|&v| v < NEGATIVE_FLOOR)?;
    let lower = if first == 0 { lo } else { bisect(&f, grid[first - 1], grid[first]) };
    let upper = if last + 1 >= SCAN_POINTS { hi } else { bisect(&f, grid[last], grid[last + 1]) };
    Some((lower, upper))
}

/// For each damping strength, the negative region of `a -> Tr[W_2(a) rho_gamma]` and the
/// overall detection minimum, where `rho_gamma` is `phi+` with one qubit amplitude-damped.
pub fn gamma_scan(gammas: &[f64]) -> Result<Vec<ScanRow>> {
    let edge = std::f64::consts::FRAC_1_SQRT_2;
    gammas
        .iter()
        .map(|&gamma| {
            let rec = exact_record(&damped_bell(gamma)?)?;
            let f = |a: f64| witness_value(&rec, &FamilyParams::new(2, a.min(1.0)).expect("a in range"));
            // the value at 1/sqrt 2 is exactly zero for every gamma
            let region = negative_region(f, 0.0, edge);
            Ok(ScanRow {
                gamma,
                a_lower: region.map(|r| r.0),
                a_upper: region.map(|r| r.1),
                min_value: detect(&rec).min_value,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerRow {
    pub f: f64,
    pub min_value: f64,
    pub entangled: bool,
    pub ppt_min_eigenvalue: f64,
}

pub fn werner_scan(fs: &[f64]) -> Result<Vec<WernerRow>> {
    fs.iter()
        .map(|&f| {
            let rho = werner(f)?;
            let res = detect(&exact_record(&rho)?);
            Ok(WernerRow {
                f,
                min_value: res.min_value,
                entangled: res.entangled,
                ppt_min_eigenvalue: ppt_min_eigenvalue(&rho)?,
            })
        })
        .collect()
}
