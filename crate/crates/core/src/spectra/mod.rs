//! Frequency-domain response: transfer rows, scattering probabilities and
//! output spectra.

mod csv;
mod grid;
mod spectrum;
mod transfer;

pub use csv::{fmt_sci, write_spectrum_csv, HEADER as CSV_HEADER};
pub use grid::FrequencyGrid;
pub use spectrum::{
    assemble, input_spectrum, output_spectra_full, output_spectra_reduced, Assembly, InputSpectra, Photon, Regime,
    SpectrumSeries,
};
pub use transfer::{
    conjugate_transfer_rows, scattering_probabilities, transfer_rows, Probabilities, Row, ScatteringProfile,
    TransferRows,
};
