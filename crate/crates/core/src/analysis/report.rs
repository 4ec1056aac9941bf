use serde::Serialize;

use super::isolation::{Behaviour, IsolationPoint};
use super::magnitudes::ChannelMagnitudes;
use super::threshold::ThresholdResult;

/// Analysis summary written as JSON. Field order is fixed by declaration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub isolation_points: Vec<IsolationPoint>,
    pub eps_d_star: Option<f64>,
    pub n_thres: f64,
    pub channel_magnitudes: ChannelMagnitudes,
    pub regime: Behaviour,
    pub contrast_at_peak: f64,
    pub threshold: Option<ThresholdResult>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}
