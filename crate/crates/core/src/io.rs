//! JSON form of bipartite operators: `{"dims":[dA,dB], "re":[..], "im":[..]}`, row-major.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::witnesses::{Provenance, Witness};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dims: [usize; 2],
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, dims: (usize, usize), provenance: Option<Provenance>) -> Self {
        Self {
            dims: [dims.0, dims.1],
            re: m.as_slice().iter().map(|z| z.re).collect(),
            im: m.as_slice().iter().map(|z| z.im).collect(),
            provenance,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.dims[0] * self.dims[1];
        if self.re.len() != n * n || self.im.len() != n * n {
            return Err(Error::Format(format!(
                "dims {:?} need {} entries, got re {} / im {}",
                self.dims,
                n * n,
                self.re.len(),
                self.im.len()
            )));
        }
        let data = self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        ComplexMatrix::from_vec(n, n, data)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dims[0], self.dims[1])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl From<&DensityMatrix> for MatrixFile {
    fn from(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), rho.dims(), None)
    }
}

impl From<&Witness> for MatrixFile {
    fn from(w: &Witness) -> Self {
        Self::from_matrix(w.matrix(), w.dims(), Some(w.provenance().clone()))
    }
}

impl TryFrom<&MatrixFile> for DensityMatrix {
    type Error = Error;

    fn try_from(f: &MatrixFile) -> Result<Self> {
        DensityMatrix::new(f.to_matrix()?, f.dims())
    }
}

impl TryFrom<&MatrixFile> for Witness {
    type Error = Error;

    fn try_from(f: &MatrixFile) -> Result<Self> {
        Witness::new(f.to_matrix()?, f.dims(), f.provenance.clone().unwrap_or(Provenance::Custom))
    }
}

pub fn density_to_json(rho: &DensityMatrix) -> Result<String> {
    MatrixFile::from(rho).to_json()
}

pub fn density_from_json(s: &str) -> Result<DensityMatrix> {
    DensityMatrix::try_from(&MatrixFile::from_json(s)?)
}

pub fn witness_to_json(w: &Witness) -> Result<String> {
    MatrixFile::from(w).to_json()
}

pub fn witness_from_json(s: &str) -> Result<Witness> {
    Witness::try_from(&MatrixFile::from_json(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{werner, FamilyParams};
    use crate::witnesses::extremal_witness;

    #[test]
    fn density_round_trip_is_exact() {
        let rho = werner(0.8).unwrap();
        let back = density_from_json(&density_to_json(&rho).unwrap()).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn witness_round_trip_keeps_provenance() {
        let w = extremal_witness(&FamilyParams::new(4, 0.3).unwrap());
        let s = witness_to_json(&w).unwrap();
        assert!(s.contains("\"provenance\""));
        let back = witness_from_json(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = MatrixFile {
            dims: [2, 2],
            re: vec![0.0; 15],
            im: vec![0.0; 16],
            provenance: None,
        };
        assert!(matches!(f.to_matrix(), Err(Error::Format(_))));
        assert!(density_from_json("{\"dims\":[1,2],\"re\":[1,0,0,1],\"im\":[0,0,0,0]}").is_err());
    }
}
