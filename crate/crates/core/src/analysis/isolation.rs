//! Frequencies where one circulating direction transmits and the other blocks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::spectra::{Photon, ScatteringProfile, SpectrumSeries};

#[derive(Debug, Clone, Copy)]
pub struct IsolationOptions {
    /// Minimum `|FL_1 - FR_2|` for a point to count.
    pub contrast_threshold: f64,
    /// Maxima closer than this (Hz) are merged, keeping the larger one.
    pub merge_width: f64,
    /// Largest grid step (Hz) allowed inside the analysed window.
    pub max_step: f64,
}

impl IsolationOptions {
    pub fn for_params(params: &SystemParams) -> Self {
        Self {
            contrast_threshold: 0.5,
            merge_width: params.kappa,
            max_step: 0.05 * params.kappa,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsolationPoint {
    pub omega: f64,
    #[serde(rename = "FL_1")]
    pub fl_1: f64,
    #[serde(rename = "FR_2")]
    pub fr_2: f64,
    pub contrast: f64,
    /// Full width (Hz) over which the contrast stays above half its peak.
    pub half_contrast_width: f64,
}

/// Local maxima of `|FL_1 - FR_2|` above the contrast threshold.
///
/// The grid must cover `Delta_m ± 1.5 G_L` at a step no larger than
/// `options.max_step`.
pub fn locate_isolation_points(
    profile: &ScatteringProfile,
    params: &SystemParams,
    options: &IsolationOptions,
) -> Result<Vec<IsolationPoint>> {
    let grid = &profile.grid;
    let reach = 1.5 * params.g_l.abs();
    let (low, high) = (params.delta_m() - reach, params.delta_m() + reach);
    if !grid.covers(low, high) || grid.max_step_in(low, high) > options.max_step {
        return Err(Error::Coverage { low, high });
    }

    let contrast: Vec<f64> = profile
        .prob_l
        .iter()
        .zip(&profile.prob_r)
        .map(|(l, r)| (l[0] - r[1]).abs())
        .collect();
    let w = grid.points();
    let n = contrast.len();

    let mut candidates: Vec<usize> = (1..n - 1)
        .filter(|&i| contrast[i] > options.contrast_threshold)
        .filter(|&i| contrast[i] >= contrast[i - 1] && contrast[i] > contrast[i + 1])
        .collect();

    // Greedy merge, strongest first.
    candidates.sort_by(|&a, &b| contrast[b].total_cmp(&contrast[a]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for i in candidates {
        if kept.iter().all(|&k| (w[k] - w[i]).abs() > options.merge_width) {
            kept.push(i);
        }
    }
    kept.sort_unstable();

    Ok(kept
        .into_iter()
        .map(|i| IsolationPoint {
            omega: w[i],
            fl_1: profile.prob_l[i][0],
            fr_2: profile.prob_r[i][1],
            contrast: contrast[i],
            half_contrast_width: half_width(w, &contrast, i),
        })
        .collect())
}

fn half_width(w: &[f64], c: &[f64], peak: usize) -> f64 {
    let half = 0.5 * c[peak];
    let crossing = |from: usize, to: usize| {
        // linear interpolation between the last point above and first below
        let t = (c[from] - half) / (c[from] - c[to]);
        w[from] + t * (w[to] - w[from])
    };
    let mut left = w[0];
    let mut i = peak;
    while i > 0 {
        if c[i - 1] < half {
            left = crossing(i, i - 1);
            break;
        }
        i -= 1;
    }
    let mut right = w[w.len() - 1];
    let mut i = peak;
    while i + 1 < w.len() {
        if c[i + 1] < half {
            right = crossing(i, i + 1);
            break;
        }
        i += 1;
    }
    right - left
}

/// Qualitative behaviour at the photon center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Behaviour {
    Isolation,
    Reciprocal,
    Amplification,
}

#[derive(Debug, Clone, Copy)]
pub struct BehaviourThresholds {
    /// Output above `(1 + gain_margin) * S_in` counts as amplified.
    pub gain_margin: f64,
    /// Dimmer/brighter output ratio below which the ports count as isolated.
    pub isolation_ratio: f64,
}

impl Default for BehaviourThresholds {
    fn default() -> Self {
        Self {
            gain_margin: 0.05,
            isolation_ratio: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonreciprocityReport {
    pub isolation_points: Vec<IsolationPoint>,
    /// `S_out,L / S_out,R` at the photon center.
    pub contrast_at_peak: f64,
    pub regime: Behaviour,
}

pub fn classify(s_in: f64, s_out_l: f64, s_out_r: f64, thresholds: &BehaviourThresholds) -> Behaviour {
    let bright = s_out_l.max(s_out_r);
    let dim = s_out_l.min(s_out_r);
    if bright > (1.0 + thresholds.gain_margin) * s_in {
        Behaviour::Amplification
    } else if dim < thresholds.isolation_ratio * bright {
        Behaviour::Isolation
    } else {
        Behaviour::Reciprocal
    }
}

pub fn nonreciprocity_report(
    profile: &ScatteringProfile,
    series: &SpectrumSeries,
    params: &SystemParams,
    photon: &Photon,
    options: &IsolationOptions,
    thresholds: &BehaviourThresholds,
) -> Result<NonreciprocityReport> {
    let isolation_points = locate_isolation_points(profile, params, options)?;
    let (s_in, l, r) = series
        .at(photon.center)
        .ok_or_else(|| Error::Precondition("grid has no point at the photon center".into()))?;
    Ok(NonreciprocityReport {
        isolation_points,
        contrast_at_peak: l / r,
        regime: classify(s_in, l, r, thresholds),
    })
}
