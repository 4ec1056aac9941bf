//! Single-photon nonreciprocal transmission in a two-mode optomechanical
//! ring cavity with a parametrically driven mechanical resonator.
//!
//! The linearized Langevin equations are solved in the frequency domain to
//! obtain the output-port transfer rows, the scattering probabilities of all
//! six input channels, and the output spectra for a Lorentzian single-photon
//! input. All rates are in Hz.
//!
//! ```
//! use nonrecip::model::{build_drift_matrix, SystemParams};
//! use nonrecip::spectra::{scattering_probabilities, transfer_rows};
//!
//! let drift = build_drift_matrix(&SystemParams::default()).unwrap();
//! let (fl, fr) = scattering_probabilities(&transfer_rows(&drift, 0.0).unwrap());
//! assert!(fl[0] < 1e-3 && fr[1] > 0.9);
//! ```

// Negated comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod model;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
