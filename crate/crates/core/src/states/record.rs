use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::bases::pauli;
use crate::error::{Error, Result};
use crate::linalg::{tensor, tensor_vec, ComplexMatrix};

use super::DensityMatrix;

/// Local Pauli setting measured on both qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    X,
    Y,
    Z,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::X, Setting::Y, Setting::Z];

    pub fn pauli(self) -> ComplexMatrix {
        match self {
            Setting::X => pauli::x(),
            Setting::Y => pauli::y(),
            Setting::Z => pauli::z(),
        }
    }

    /// Eigenvectors for outcomes `+1` and `-1`.
    fn eigenvectors(self) -> [[Complex64; 2]; 2] {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self {
            Setting::X => [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]],
            Setting::Y => [[c(r, 0.0), c(0.0, r)], [c(r, 0.0), c(0.0, -r)]],
            Setting::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        }
    }
}

/// Per-entry standard errors, keyed like the record itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecordErrors {
    pub exx: f64,
    pub eyy: f64,
    pub ezz: f64,
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

impl RecordErrors {
    pub fn as_array(&self) -> [f64; 9] {
        [self.exx, self.eyy, self.ezz, self.ax, self.ay, self.az, self.bx, self.by, self.bz]
    }

    pub fn from_array(v: [f64; 9]) -> Self {
        Self {
            exx: v[0],
            eyy: v[1],
            ezz: v[2],
            ax: v[3],
            ay: v[4],
            az: v[5],
            bx: v[6],
            by: v[7],
            bz: v[8],
        }
    }
}

/// The nine numbers available from `{sx(x)sx, sy(x)sy, sz(x)sz}`: three correlations
/// `<s_k (x) s_k>` and the marginals `a_k = <s_k (x) 1>`, `b_k = <1 (x) s_k>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub exx: f64,
    pub eyy: f64,
    pub ezz: f64,
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_err: Option<RecordErrors>,
}

impl MeasurementRecord {
    /// Entries in the order `exx, eyy, ezz, ax, ay, az, bx, by, bz`.
    pub fn entries(&self) -> [f64; 9] {
        [self.exx, self.eyy, self.ezz, self.ax, self.ay, self.az, self.bx, self.by, self.bz]
    }

    pub fn from_entries(v: [f64; 9]) -> Self {
        Self {
            exx: v[0],
            eyy: v[1],
            ezz: v[2],
            ax: v[3],
            ay: v[4],
            az: v[5],
            bx: v[6],
            by: v[7],
            bz: v[8],
            shots: None,
            std_err: None,
        }
    }

    /// Every magnitude is at most `1 + 3 std_err`.
    pub fn is_consistent(&self) -> bool {
        let errs = self.std_err.map(|e| e.as_array()).unwrap_or([0.0; 9]);
        self.entries()
            .iter()
            .zip(errs)
            .all(|(v, e)| v.is_finite() && v.abs() <= 1.0 + 3.0 * e + 1e-12)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: Self = serde_json::from_str(s)?;
        if !rec.is_consistent() {
            return Err(Error::Format("record entries exceed [-1, 1]".into()));
        }
        Ok(rec)
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() == (2, 2) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "measurement records need a two-qubit state, got dims {:?}",
            rho.dims()
        )))
    }
}

/// Noise-free expectation values.
pub fn exact_record(rho: &DensityMatrix) -> Result<MeasurementRecord> {
    require_two_qubits(rho)?;
    let id = ComplexMatrix::identity(2);
    let mut v = [0.0; 9];
    for (k, s) in Setting::ALL.iter().enumerate() {
        let p = s.pauli();
        v[k] = rho.expectation(&tensor(&p, &p))?;
        v[3 + k] = rho.expectation(&tensor(&p, &id))?;
        v[6 + k] = rho.expectation(&tensor(&id, &p))?;
    }
    Ok(MeasurementRecord::from_entries(v))
}

/// Outcome probabilities for `(+,+), (+,-), (-,+), (-,-)`.
fn outcome_probabilities(rho: &DensityMatrix, setting: Setting) -> [f64; 4] {
    let e = setting.eigenvectors();
    let mut p = [0.0; 4];
    for (sa, ea) in e.iter().enumerate() {
        for (sb, eb) in e.iter().enumerate() {
            let v = tensor_vec(ea, eb);
            p[2 * sa + sb] = rho.matrix().sandwich(&v, &v).re.max(0.0);
        }
    }
    let total: f64 = p.iter().sum();
    p.map(|x| x / total)
}

/// Multinomial draw via sequential conditional binomials.
fn draw_counts(rng: &mut ChaCha8Rng, probs: [f64; 4], shots: u64) -> Result<[u64; 4]> {
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut mass = 1.0;
    for i in 0..3 {
        if remaining == 0 {
            break;
        }
        let q = if mass > 0.0 { (probs[i] / mass).clamp(0.0, 1.0) } else { 0.0 };
        let n = Binomial::new(remaining, q)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .sample(rng);
        counts[i] = n;
        remaining -= n;
        mass -= probs[i];
    }
    counts[3] = remaining;
    Ok(counts)
}

/// Finite-shot record: each setting gets its own `shots` outcome pairs, and the marginals
/// are read off the same outcome pairs by ignoring the other side.
///
/// Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with stream `k` for setting
/// `k` (x = 0, y = 1, z = 2), so records are reproducible across platforms.
pub fn sampled_record(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    require_two_qubits(rho)?;
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be positive".into()));
    }
    let n = shots as f64;
    let mut v = [0.0; 9];
    for (k, &setting) in Setting::ALL.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let [pp, pm, mp, mm] = draw_counts(&mut rng, outcome_probabilities(rho, setting), shots)?;
        let (pp, pm, mp, mm) = (pp as f64, pm as f64, mp as f64, mm as f64);
        v[k] = (pp + mm - pm - mp) / n;
        v[3 + k] = (pp + pm - mp - mm) / n;
        v[6 + k] = (pp + mp - pm - mm) / n;
    }
    let err = v.map(|m| ((1.0 - m * m).max(0.0) / n).sqrt());
    let mut rec = MeasurementRecord::from_entries(v);
    rec.shots = Some(shots);
    rec.std_err = Some(RecordErrors::from_array(err));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, damped_bell, werner, BellKind};

    fn assert_entries(rec: &MeasurementRecord, expected: [f64; 9], tol: f64) {
        for (i, (got, want)) in rec.entries().iter().zip(expected).enumerate() {
            assert!((got - want).abs() <= tol, "entry {i}: {got} vs {want}");
        }
    }

    #[test]
    fn phi_plus_record() {
        let rec = exact_record(&bell_state(BellKind::PhiPlus).to_density()).unwrap();
        assert_entries(&rec, [1.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-15);
        assert_eq!(rec.shots, None);
    }

    #[test]
    fn werner_record() {
        for f in [-0.5, 0.3, 0.8] {
            let g = -f / (2.0 - f);
            let rec = exact_record(&werner(f).unwrap()).unwrap();
            assert_entries(&rec, [g, g, g, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-15);
        }
    }

    #[test]
    fn damped_record() {
        for gamma in [0.0f64, 0.3, 0.9] {
            let s = (1.0 - gamma).sqrt();
            let rec = exact_record(&damped_bell(gamma).unwrap()).unwrap();
            assert_entries(&rec, [s, -s, 1.0 - gamma, 0.0, 0.0, 0.0, 0.0, 0.0, gamma], 1e-15);
        }
    }

    #[test]
    fn sampled_is_deterministic_per_seed() {
        let rho = werner(0.6).unwrap();
        let a = sampled_record(&rho, 1000, 42).unwrap();
        let b = sampled_record(&rho, 1000, 42).unwrap();
        assert_eq!(a, b);
        let c = sampled_record(&rho, 1000, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_maximally_mixed_is_near_zero() {
        let rho = DensityMatrix::maximally_mixed((2, 2));
        let shots = 10_000u64;
        let rec = sampled_record(&rho, shots, 3).unwrap();
        let bound = 5.0 / (shots as f64).sqrt();
        assert!(rec.entries().iter().all(|v| v.abs() <= bound));
    }

    #[test]
    fn deterministic_outcomes_have_zero_error() {
        let rec = sampled_record(&bell_state(BellKind::PhiPlus).to_density(), 500, 1).unwrap();
        assert_eq!(rec.ezz, 1.0);
        assert_eq!(rec.exx, 1.0);
        assert_eq!(rec.eyy, -1.0);
        assert_eq!(rec.std_err.unwrap().ezz, 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let rho = werner(0.2).unwrap();
        assert!(sampled_record(&rho, 0, 1).is_err());
        assert!(exact_record(&DensityMatrix::maximally_mixed((3, 3))).is_err());
        assert!(MeasurementRecord::from_json(r#"{"exx":2,"eyy":0,"ezz":0,"ax":0,"ay":0,"az":0,"bx":0,"by":0,"bz":0}"#).is_err());
    }

    #[test]
    fn json_keys_are_flat() {
        let rec = sampled_record(&werner(0.5).unwrap(), 100, 9).unwrap();
        let value: serde_json::Value = serde_json::from_str(&rec.to_json().unwrap()).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["exx", "eyy", "ezz", "ax", "ay", "az", "bx", "by", "bz", "shots", "std_err"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        let exact = exact_record(&werner(0.5).unwrap()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&exact.to_json().unwrap()).unwrap();
        assert!(value.get("shots").is_none() && value.get("std_err").is_none());
    }
}
