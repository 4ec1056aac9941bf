//! Isolation points, reciprocity threshold, channel magnitudes and thermal
//! tolerance.

mod isolation;
mod magnitudes;
mod report;
mod thermal;
mod threshold;

pub use isolation::{
    classify, locate_isolation_points, nonreciprocity_report, Behaviour, BehaviourThresholds, IsolationOptions,
    IsolationPoint, NonreciprocityReport,
};
pub use magnitudes::{channel_magnitude_report, ChannelMagnitudes};
pub use report::AnalysisReport;
pub use thermal::{thermal_threshold, DEFAULT_SAFETY_FACTOR};
pub use threshold::{find_reciprocity_threshold, reciprocity_metric, scan_metric, ThresholdOptions, ThresholdResult};
