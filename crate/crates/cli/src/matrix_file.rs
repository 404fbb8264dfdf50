//! On-disk matrix format: split real/imaginary arrays in JSON.
//!
//! Floats are encoded as shortest round-trip decimals, so write followed by
//! read reproduces the matrix bit-exactly while staying diffable.

use std::fs;
use std::path::Path;

use ccm_core::{Complex64, HermitianMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixFile {
    pub fn from_matrix(a: &HermitianMatrix, label: Option<String>) -> Self {
        let n = a.dim();
        let re = (0..n)
            .map(|i| (0..n).map(|k| a.get(i, k).re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|k| a.get(i, k).im).collect())
            .collect();
        Self { n, re, im, label }
    }

    /// Validate shapes and the Hermitian invariant (symmetric `re`,
    /// antisymmetric `im`) and produce the matrix.
    pub fn to_matrix(&self) -> Result<HermitianMatrix, String> {
        if self.n == 0 {
            return Err("matrix file declares n = 0".into());
        }
        for (name, rows) in [("re", &self.re), ("im", &self.im)] {
            if rows.len() != self.n {
                return Err(format!(
                    "field '{name}' has {} rows, expected n = {}",
                    rows.len(),
                    self.n
                ));
            }
            if let Some(row) = rows.iter().find(|row| row.len() != self.n) {
                return Err(format!(
                    "field '{name}' has a row of length {}, expected n = {}",
                    row.len(),
                    self.n
                ));
            }
        }
        let entries: Vec<Complex64> = (0..self.n * self.n)
            .map(|idx| {
                let (i, k) = (idx / self.n, idx % self.n);
                Complex64::new(self.re[i][k], self.im[i][k])
            })
            .collect();
        HermitianMatrix::new(self.n, entries).map_err(|e| e.to_string())
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| format!("failed to encode matrix file: {e}"))?;
        fs::write(path, body + "\n").map_err(|e| format!("failed to write {}: {e}", path.display()))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let body = fs::read_to_string(path)
            .map_err(|e| format!("failed to read {}: {e}", path.display()))?;
        serde_json::from_str(&body)
            .map_err(|e| format!("malformed matrix file {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccm_core::make_random_hermitian;

    #[test]
    fn round_trip_is_bit_exact() {
        let instance = make_random_hermitian(4, 11, 3.0).unwrap();
        let file = MatrixFile::from_matrix(&instance.a, Some("probe".into()));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        file.write(&path).unwrap();
        let reloaded = MatrixFile::load(&path).unwrap();
        assert_eq!(reloaded, file);
        assert_eq!(reloaded.to_matrix().unwrap(), instance.a);
    }

    #[test]
    fn rejects_shape_mismatch() {
        let file = MatrixFile {
            n: 2,
            re: vec![vec![1.0, 0.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            label: None,
        };
        assert!(file.to_matrix().is_err());
    }

    #[test]
    fn rejects_non_hermitian_data() {
        let file = MatrixFile {
            n: 2,
            re: vec![vec![1.0, 2.0], vec![3.0, 1.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            label: None,
        };
        let err = file.to_matrix().unwrap_err();
        assert!(err.contains("Hermitian"), "unexpected message: {err}");
    }
}
