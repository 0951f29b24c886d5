use crate::error::{Error, Result};

/// Numerical thresholds shared by every operation in the crate.
///
/// All fields are relative or absolute thresholds in `(0, 1)`; see each field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative pivot threshold for rank decisions and singular solves.
    pub tol_rank: f64,
    /// Relative eigen-residual threshold.
    pub tol_eig: f64,
    /// Relative asymmetry allowed before a matrix is rejected as non-Hermitian.
    pub tol_herm: f64,
    /// Scaled threshold below which a determinant polynomial is identically zero.
    pub tol_zero_poly: f64,
    /// Imaginary-part threshold for treating a complex coupling as real.
    pub tol_real: f64,
    /// Radius for clustering roots and matching eigenvalues.
    pub tol_cluster: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_rank: 1e-10,
            tol_eig: 1e-10,
            tol_herm: 1e-12,
            tol_zero_poly: 1e-8,
            tol_real: 1e-8,
            tol_cluster: 1e-8,
        }
    }
}

impl ToleranceConfig {
    /// Field names in declaration order, paired with their values.
    pub fn fields(&self) -> [(&'static str, f64); 6] {
        [
            ("tol_rank", self.tol_rank),
            ("tol_eig", self.tol_eig),
            ("tol_herm", self.tol_herm),
            ("tol_zero_poly", self.tol_zero_poly),
            ("tol_real", self.tol_real),
            ("tol_cluster", self.tol_cluster),
        ]
    }

    /// Sets a field by name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "tol_rank" => &mut self.tol_rank,
            "tol_eig" => &mut self.tol_eig,
            "tol_herm" => &mut self.tol_herm,
            "tol_zero_poly" => &mut self.tol_zero_poly,
            "tol_real" => &mut self.tol_real,
            "tol_cluster" => &mut self.tol_cluster,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.fields() {
            // NaN fails both comparisons.
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}
