use nalgebra::Schur;
use num_complex::Complex64;
use serde::Serialize;

use super::drift::DriftMatrix;
use crate::error::{Error, Result};

/// Default stability margin as a fraction of `kappa`.
pub const STABILITY_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    /// Eigenvalues ordered by decreasing real part.
    pub eigenvalues: Vec<Complex64>,
    pub max_real_part: f64,
    pub tolerance: f64,
    pub stable: bool,
}

impl StabilityReport {
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Slowest decay rate, `|max Re(lambda)|`.
    pub fn slowest_decay(&self) -> f64 {
        self.max_real_part.abs()
    }
}

/// Eigenvalues of the drift matrix by complex Schur decomposition; the
/// system is stable when every real part is below `-tolerance`.
pub fn check_stability(drift: &DriftMatrix, tolerance: f64) -> Result<StabilityReport> {
    if !(tolerance >= 0.0) {
        return Err(Error::param("tol_stab", "must be >= 0"));
    }
    let scale = drift.m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let schur = Schur::try_new(drift.m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    let mut eigenvalues: Vec<Complex64> = (0..t.nrows()).map(|k| t[(k, k)]).collect();
    // A complex Schur form is upper triangular; leftover sub-diagonal mass
    // means the iteration stopped early.
    for k in 1..t.nrows() {
        if t[(k, k - 1)].norm() > 1e-12 * scale {
            return Err(Error::Numerical("Schur form not triangular".into()));
        }
    }
    if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvalue".into()));
    }
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    let max_real_part = eigenvalues[0].re;
    Ok(StabilityReport {
        stable: max_real_part < -tolerance,
        eigenvalues,
        max_real_part,
        tolerance,
    })
}
