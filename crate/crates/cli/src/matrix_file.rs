//! `{"n": 2, "entries": [[re, im], ...]}` with `n²` row-major entries.
//!
//! Floats are written in shortest round-trip form and parsed with correct rounding, so
//! write → read reproduces every entry bit for bit.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use num_complex::Complex64;
use pencil_persist::linalg::ComplexMatrix;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            n: m.n(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Checks the entry count and finiteness.
    pub fn to_matrix(&self) -> pencil_persist::Result<ComplexMatrix> {
        let data = self
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.n, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix files always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Reads and validates a matrix from `path`, or from stdin when `path` is `-`.
    pub fn load(path: &Path) -> Result<ComplexMatrix, CliError> {
        let io_err = |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        let text = if path == Path::new("-") {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(io_err)?;
            buf
        } else {
            fs::read_to_string(path).map_err(io_err)?
        };
        let file = Self::from_json(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        file.to_matrix().map_err(|source| CliError::Matrix {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn save(m: &ComplexMatrix, path: &Path) -> io::Result<()> {
        fs::write(path, Self::from_matrix(m).to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let f =
            MatrixFile::from_json(r#"{"n": 2, "entries": [[1, 0], [0, 1], [0, -1], [2.5, 0]]}"#)
                .unwrap();
        let m = f.to_matrix().unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 1.0));
        assert_eq!(MatrixFile::from_matrix(&m), f);

        let short = MatrixFile::from_json(r#"{"n": 2, "entries": [[1, 0]]}"#).unwrap();
        assert!(matches!(
            short.to_matrix(),
            Err(pencil_persist::Error::EntryCount { .. })
        ));
        assert!(MatrixFile::from_json(r#"{"n": 1, "entries": [[1, 0]], "extra": 1}"#).is_err());
        assert!(MatrixFile::from_json(r#"{"n": 1, "entries": [[null, 0]]}"#).is_err());
    }

    #[test]
    fn exact_round_trip_of_awkward_values() {
        let vals = [
            0.1,
            1.0 / 3.0,
            f64::MIN_POSITIVE,
            5e-324,
            f64::MAX,
            -0.0,
            2.0f64.sqrt(),
        ];
        let f = MatrixFile {
            n: 2,
            entries: vals
                .chunks(2)
                .map(|c| [c[0], *c.get(1).unwrap_or(&1e300)])
                .collect(),
        };
        let back = MatrixFile::from_json(&f.to_json()).unwrap();
        for (a, b) in f
            .entries
            .iter()
            .flatten()
            .zip(back.entries.iter().flatten())
        {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
