//! Input photon lineshape and assembled output spectra.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::FrequencyGrid;
use super::transfer::{Probabilities, ScatteringProfile};
use crate::error::{Error, Result};
use crate::model::DIM;

/// Lorentzian single-photon spectrum `(Gamma/pi) / ((omega - center)^2 + Gamma^2)`.
pub fn input_spectrum(omega: f64, linewidth: f64, center: f64) -> f64 {
    let x = omega - center;
    (linewidth / PI) / (x * x + linewidth * linewidth)
}

/// Single-photon wavepacket: Lorentzian of half-width `linewidth` centered at
/// the rotating-frame frequency `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Photon {
    pub linewidth: f64,
    pub center: f64,
}

impl Photon {
    pub fn new(linewidth: f64, center: f64) -> Result<Self> {
        if !(linewidth > 0.0) || !linewidth.is_finite() {
            return Err(Error::param("Gamma", "photon linewidth must be > 0"));
        }
        if !center.is_finite() {
            return Err(Error::param("center", "must be finite"));
        }
        Ok(Self { linewidth, center })
    }

    pub fn density(&self, omega: f64) -> f64 {
        input_spectrum(omega, self.linewidth, self.center)
    }

    /// `1 / (pi Gamma)`.
    pub fn peak(&self) -> f64 {
        self.density(self.center)
    }
}

/// Input spectral densities of both optical ports on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSpectra {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl InputSpectra {
    /// The same photon lineshape on both ports.
    pub fn photon(grid: &FrequencyGrid, photon: &Photon) -> Self {
        let s: Vec<f64> = grid.points().iter().map(|&w| photon.density(w)).collect();
        Self {
            left: s.clone(),
            right: s,
        }
    }
}

/// Which truncation of the six-channel output sum to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `F1^L S_L,in` and `F2^R S_R,in`.
    Isolation,
    /// Adds the `F4^L` vacuum gain term on the left output.
    Amplification,
    /// Isolation plus the `F3 n_th` thermal terms.
    ThermalIsolation,
    /// Amplification plus the `F3 n_th` thermal terms.
    ThermalAmplification,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::Isolation => "isolation",
            Regime::Amplification => "amplification",
            Regime::ThermalIsolation => "thermal-isolation",
            Regime::ThermalAmplification => "thermal-amplification",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isolation" => Ok(Regime::Isolation),
            "amplification" => Ok(Regime::Amplification),
            "thermal-isolation" => Ok(Regime::ThermalIsolation),
            "thermal-amplification" => Ok(Regime::ThermalAmplification),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// Full six-channel sum or one of the reduced forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assembly {
    Full,
    Isolation,
    Amplification,
    ThermalIsolation,
    ThermalAmplification,
}

impl Assembly {
    pub fn regime(&self) -> Option<Regime> {
        match self {
            Assembly::Full => None,
            Assembly::Isolation => Some(Regime::Isolation),
            Assembly::Amplification => Some(Regime::Amplification),
            Assembly::ThermalIsolation => Some(Regime::ThermalIsolation),
            Assembly::ThermalAmplification => Some(Regime::ThermalAmplification),
        }
    }
}

impl FromStr for Assembly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "full" {
            return Ok(Assembly::Full);
        }
        Ok(match s.parse::<Regime>()? {
            Regime::Isolation => Assembly::Isolation,
            Regime::Amplification => Assembly::Amplification,
            Regime::ThermalIsolation => Assembly::ThermalIsolation,
            Regime::ThermalAmplification => Assembly::ThermalAmplification,
        })
    }
}

/// Sampled input and output spectral densities, 1/Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    pub grid: FrequencyGrid,
    pub s_in_l: Vec<f64>,
    pub s_in_r: Vec<f64>,
    pub s_out_l: Vec<f64>,
    pub s_out_r: Vec<f64>,
    /// Per-channel contributions; each row sums to the corresponding total.
    pub breakdown_l: Vec<Probabilities>,
    pub breakdown_r: Vec<Probabilities>,
}

impl SpectrumSeries {
    fn from_breakdown(
        grid: &FrequencyGrid,
        inputs: &InputSpectra,
        breakdown_l: Vec<Probabilities>,
        breakdown_r: Vec<Probabilities>,
    ) -> Self {
        let total = |rows: &[Probabilities]| rows.iter().map(|r| r.iter().sum()).collect::<Vec<f64>>();
        Self {
            grid: grid.clone(),
            s_in_l: inputs.left.clone(),
            s_in_r: inputs.right.clone(),
            s_out_l: total(&breakdown_l),
            s_out_r: total(&breakdown_r),
            breakdown_l,
            breakdown_r,
        }
    }

    /// Values at the grid point exactly at `omega`.
    pub fn at(&self, omega: f64) -> Option<(f64, f64, f64)> {
        self.grid
            .index_of(omega)
            .map(|i| (self.s_in_l[i], self.s_out_l[i], self.s_out_r[i]))
    }
}

fn check_inputs(profile: &ScatteringProfile, inputs: &InputSpectra, n_th: f64) -> Result<()> {
    let n = profile.len();
    if inputs.left.len() != n || inputs.right.len() != n {
        return Err(Error::Precondition(format!(
            "input spectra have {}/{} points, profile has {n}",
            inputs.left.len(),
            inputs.right.len()
        )));
    }
    if !(n_th >= 0.0) {
        return Err(Error::param("n_th", "must be >= 0"));
    }
    Ok(())
}

/// The complete six-channel output spectra. Channels 4 and 5 see the
/// vacuum-shifted input at `-omega`, so the grid must be symmetric.
pub fn output_spectra_full(profile: &ScatteringProfile, inputs: &InputSpectra, n_th: f64) -> Result<SpectrumSeries> {
    check_inputs(profile, inputs, n_th)?;
    let grid = &profile.grid;
    if !grid.is_symmetric() {
        return Err(Error::Precondition(
            "full output assembly needs a symmetric grid".into(),
        ));
    }
    let n = grid.len();
    let mut breakdown_l = Vec::with_capacity(n);
    let mut breakdown_r = Vec::with_capacity(n);
    for i in 0..n {
        let m = grid.mirror_index(i).expect("symmetric grid");
        let weights = [
            inputs.left[i],
            inputs.right[i],
            n_th,
            inputs.left[m] + 1.0,
            inputs.right[m] + 1.0,
            n_th + 1.0,
        ];
        let fl = &profile.prob_l[i];
        let fr = &profile.prob_r[i];
        breakdown_l.push(std::array::from_fn::<f64, DIM, _>(|j| fl[j] * weights[j]));
        breakdown_r.push(std::array::from_fn::<f64, DIM, _>(|j| fr[j] * weights[j]));
    }
    Ok(SpectrumSeries::from_breakdown(grid, inputs, breakdown_l, breakdown_r))
}

/// Reduced output spectra keeping only the channels named by `regime`.
pub fn output_spectra_reduced(
    profile: &ScatteringProfile,
    inputs: &InputSpectra,
    n_th: f64,
    regime: Regime,
) -> Result<SpectrumSeries> {
    check_inputs(profile, inputs, n_th)?;
    let (gain, thermal) = match regime {
        Regime::Isolation => (false, false),
        Regime::Amplification => (true, false),
        Regime::ThermalIsolation => (false, true),
        Regime::ThermalAmplification => (true, true),
    };
    let n = profile.len();
    let mut breakdown_l = Vec::with_capacity(n);
    let mut breakdown_r = Vec::with_capacity(n);
    for i in 0..n {
        let fl = &profile.prob_l[i];
        let fr = &profile.prob_r[i];
        let mut l = [0.0; DIM];
        let mut r = [0.0; DIM];
        l[0] = fl[0] * inputs.left[i];
        r[1] = fr[1] * inputs.right[i];
        if gain {
            l[3] = fl[3];
        }
        if thermal {
            l[2] = fl[2] * n_th;
            r[2] = fr[2] * n_th;
        }
        breakdown_l.push(l);
        breakdown_r.push(r);
    }
    Ok(SpectrumSeries::from_breakdown(
        &profile.grid,
        inputs,
        breakdown_l,
        breakdown_r,
    ))
}

/// Assemble with either the full sum or a reduced regime.
pub fn assemble(
    profile: &ScatteringProfile,
    inputs: &InputSpectra,
    n_th: f64,
    assembly: Assembly,
) -> Result<SpectrumSeries> {
    match assembly.regime() {
        None => output_spectra_full(profile, inputs, n_th),
        Some(regime) => output_spectra_reduced(profile, inputs, n_th, regime),
    }
}
