use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::DIM;
use crate::spectra::{Probabilities, ScatteringProfile};

/// Largest scattering probability of every channel over a frequency window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelMagnitudes {
    #[serde(rename = "FL")]
    pub fl: Probabilities,
    #[serde(rename = "FR")]
    pub fr: Probabilities,
    pub window: (f64, f64),
}

impl ChannelMagnitudes {
    /// Channel-wise maximum over several reports (e.g. a drive-amplitude scan).
    pub fn envelope(reports: &[ChannelMagnitudes]) -> Option<ChannelMagnitudes> {
        let first = *reports.first()?;
        Some(reports[1..].iter().fold(first, |acc, r| ChannelMagnitudes {
            fl: std::array::from_fn(|j| acc.fl[j].max(r.fl[j])),
            fr: std::array::from_fn(|j| acc.fr[j].max(r.fr[j])),
            window: (acc.window.0.min(r.window.0), acc.window.1.max(r.window.1)),
        }))
    }
}

pub fn channel_magnitude_report(profile: &ScatteringProfile, window: (f64, f64)) -> Result<ChannelMagnitudes> {
    let (low, high) = window;
    let grid = &profile.grid;
    if !(low <= high) || low < grid.min() || high > grid.max() {
        return Err(Error::Precondition(format!(
            "window [{low:e}, {high:e}] not inside the grid"
        )));
    }
    let mut fl = [0.0_f64; DIM];
    let mut fr = [0.0_f64; DIM];
    let mut seen = false;
    for (i, &w) in grid.points().iter().enumerate() {
        if w < low || w > high {
            continue;
        }
        seen = true;
        for j in 0..DIM {
            fl[j] = fl[j].max(profile.prob_l[i][j]);
            fr[j] = fr[j].max(profile.prob_r[i][j]);
        }
    }
    if !seen {
        return Err(Error::Precondition("window contains no grid point".into()));
    }
    Ok(ChannelMagnitudes { fl, fr, window })
}
