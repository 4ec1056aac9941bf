//! Drive amplitude at which the isolation turns into amplification.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{build_drift_matrix, check_stability, SystemParams, STABILITY_MARGIN};
use crate::spectra::{scattering_probabilities, transfer_rows, Photon};

/// Signed nonreciprocity at the photon center for drive amplitude `eps_d`:
/// `S_out,L - S_out,R` using the amplification-regime spectra (with the
/// thermal terms, which vanish at `n_th = 0`).
///
/// Fails with [`Error::Unstable`] if the drift matrix is not stable.
pub fn reciprocity_metric(params: &SystemParams, eps_d: f64, photon: &Photon) -> Result<f64> {
    let p = SystemParams { eps_d, ..*params };
    let drift = build_drift_matrix(&p)?;
    let report = check_stability(&drift, STABILITY_MARGIN * p.kappa)?;
    if !report.stable {
        return Err(Error::Unstable {
            max_real_part: report.max_real_part,
        });
    }
    let (fl, fr) = scattering_probabilities(&transfer_rows(&drift, photon.center)?);
    let s_in = photon.peak();
    let left = fl[0] * s_in + fl[3] + fl[2] * p.n_th;
    let right = fr[1] * s_in + fr[2] * p.n_th;
    Ok(left - right)
}

/// Metric on several drive amplitudes, evaluated in parallel, in input order.
pub fn scan_metric(params: &SystemParams, values: &[f64], photon: &Photon) -> Result<Vec<f64>> {
    values
        .par_iter()
        .map(|&e| reciprocity_metric(params, e, photon))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct ThresholdOptions {
    /// Points in the initial stability/sign scan of the bracket.
    pub scan_points: usize,
    /// Stop once `|metric|` falls below this fraction of the input peak.
    pub metric_tolerance: f64,
    /// Stop once the bracket is narrower than this fraction of its midpoint.
    pub relative_width: f64,
    pub max_iterations: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            scan_points: 9,
            metric_tolerance: 1e-9,
            relative_width: 1e-12,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub eps_d_star: f64,
    /// Final bisection bracket, Hz.
    pub bracket: (f64, f64),
    pub metric_at_star: f64,
    /// Metric at the two ends of the final bracket; opposite signs.
    pub metric_at_bracket: (f64, f64),
    pub iterations: usize,
}

/// Bisection for the drive amplitude where the two ports' center outputs
/// coincide.
pub fn find_reciprocity_threshold(
    params: &SystemParams,
    range: (f64, f64),
    photon: &Photon,
    options: &ThresholdOptions,
) -> Result<ThresholdResult> {
    let (low, high) = range;
    if !(low < high) || !low.is_finite() || !high.is_finite() {
        return Err(Error::Precondition(format!("invalid drive range [{low:e}, {high:e}]")));
    }
    let n = options.scan_points.max(2);
    let values: Vec<f64> = (0..n).map(|k| low + (high - low) * k as f64 / (n - 1) as f64).collect();
    let metrics = scan_metric(params, &values, photon)?;

    let first = (0..n - 1)
        .find(|&k| metrics[k].signum() != metrics[k + 1].signum() || metrics[k] == 0.0)
        .ok_or(Error::Bracket { low, high })?;
    let (mut a, mut b) = (values[first], values[first + 1]);
    let (mut ga, mut gb) = (metrics[first], metrics[first + 1]);

    let tolerance = options.metric_tolerance * photon.peak();
    let mut iterations = 0;
    let (mut star, mut g_star) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
    while iterations < options.max_iterations {
        if g_star.abs() <= tolerance || (b - a) <= options.relative_width * 0.5 * (a + b).abs() {
            break;
        }
        let mid = 0.5 * (a + b);
        let gm = reciprocity_metric(params, mid, photon)?;
        iterations += 1;
        if gm.signum() == ga.signum() && gm != 0.0 {
            a = mid;
            ga = gm;
        } else {
            b = mid;
            gb = gm;
        }
        star = mid;
        g_star = gm;
    }
    Ok(ThresholdResult {
        eps_d_star: star,
        bracket: (a, b),
        metric_at_star: g_star,
        metric_at_bracket: (ga, gb),
        iterations,
    })
}
