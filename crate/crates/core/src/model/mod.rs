//! Device parameters, mean fields, drift matrix and its stability.

mod drift;
mod params;
mod stability;
mod steady_state;

pub use drift::{build_drift_matrix, DriftMatrix, BASIS, DIM};
pub use params::SystemParams;
pub use stability::{check_stability, StabilityReport, STABILITY_MARGIN};
pub use steady_state::{
    pump_amplitude_from_power, solve_steady_state, steady_state_residuals, DetuningMode, SteadyState,
    SteadyStateOptions, HBAR,
};
