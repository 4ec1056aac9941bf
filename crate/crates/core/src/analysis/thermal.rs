//! Tolerable thermal phonon occupation.

use super::magnitudes::ChannelMagnitudes;

/// Default factor encoding "much smaller than".
pub const DEFAULT_SAFETY_FACTOR: f64 = 10.0;

/// Largest `n_th` for which the thermal channel stays `safety_factor` times
/// below the signal on both ports:
/// `min(FL_1 S_in / FL_3, FR_2 S_in / FR_3) / safety_factor`.
///
/// Returns `f64::INFINITY` when neither port has a thermal channel.
pub fn thermal_threshold(magnitudes: &ChannelMagnitudes, peak_density: f64, safety_factor: f64) -> f64 {
    let port = |signal: f64, thermal: f64| {
        if thermal == 0.0 {
            f64::INFINITY
        } else {
            signal * peak_density / (thermal * safety_factor)
        }
    };
    port(magnitudes.fl[0], magnitudes.fl[2]).min(port(magnitudes.fr[1], magnitudes.fr[2]))
}
