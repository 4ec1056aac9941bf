//! Physical parameters of the pumped ring cavity.
//!
//! All rates, detunings and amplitudes are plain numbers in Hz, taken at the
//! magnitudes quoted for the device (25 MHz is stored as `2.5e7`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One record with every rate of the device.
///
/// Field names on disk are the conventional symbols (`J`, `Delta_c`, `G_L`,
/// ...); unknown keys are rejected and missing keys fall back to the
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemParams {
    /// Mechanical frequency.
    pub omega_m: f64,
    /// Mechanical damping rate.
    pub gamma: f64,
    /// External (coupling) cavity decay rate.
    pub kappa: f64,
    /// Intrinsic cavity loss rate.
    pub kappa_in: f64,
    /// Single-photon optomechanical coupling.
    pub g0: f64,
    /// Coherent backscattering between the two circulating modes.
    #[serde(rename = "J")]
    pub j: f64,
    /// Cavity-pump detuning.
    #[serde(rename = "Delta_c")]
    pub delta_c: f64,
    /// Frequency of the parametric mechanical drive.
    pub omega_d: f64,
    /// Amplitude of the parametric mechanical drive.
    pub eps_d: f64,
    /// Enhanced coupling of the pumped (clockwise) mode.
    #[serde(rename = "G_L")]
    pub g_l: f64,
    /// Enhanced coupling of the counter-clockwise mode.
    #[serde(rename = "G_R")]
    pub g_r: f64,
    /// Linewidth of the single-photon wavepacket.
    #[serde(rename = "Gamma")]
    pub photon_linewidth: f64,
    /// Thermal phonon occupation.
    pub n_th: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        let kappa = 1.0e6;
        let omega_m = 25.0e6;
        Self {
            omega_m,
            gamma: 100.0,
            kappa,
            kappa_in: 1.0e6,
            g0: 1.0e3,
            j: 1.0e4,
            delta_c: omega_m,
            omega_d: 18.0 * kappa,
            eps_d: 6.0e-5 * kappa,
            g_l: 16.0e6,
            g_r: 1.0e3,
            photon_linewidth: kappa,
            n_th: 0.0,
        }
    }
}

impl SystemParams {
    /// Total cavity decay rate `kappa + kappa_in`.
    pub fn kappa_t(&self) -> f64 {
        self.kappa + self.kappa_in
    }

    /// Cavity detuning in the frame rotating at half the drive frequency.
    pub fn delta_cavity(&self) -> f64 {
        self.delta_c - self.omega_d / 2.0
    }

    /// Effective mechanical frequency `omega_m - omega_d / 2`.
    pub fn delta_m(&self) -> f64 {
        self.omega_m - self.omega_d / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_m", self.omega_m),
            ("gamma", self.gamma),
            ("kappa", self.kappa),
            ("kappa_in", self.kappa_in),
            ("g0", self.g0),
            ("J", self.j),
            ("Delta_c", self.delta_c),
            ("omega_d", self.omega_d),
            ("eps_d", self.eps_d),
            ("G_L", self.g_l),
            ("G_R", self.g_r),
            ("Gamma", self.photon_linewidth),
            ("n_th", self.n_th),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::param(name, format!("{value} is not finite")));
            }
        }
        if self.gamma <= 0.0 {
            return Err(Error::param("gamma", "must be > 0"));
        }
        if self.kappa <= 0.0 {
            return Err(Error::param("kappa", "must be > 0"));
        }
        if self.kappa_in < 0.0 {
            return Err(Error::param("kappa_in", "must be >= 0"));
        }
        if self.photon_linewidth <= 0.0 {
            return Err(Error::param("Gamma", "must be > 0"));
        }
        if self.n_th < 0.0 {
            return Err(Error::param("n_th", "must be >= 0"));
        }
        Ok(())
    }

    /// Parse a flat key-value (TOML) parameter document and validate it.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let params: SystemParams = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        params.validate()?;
        Ok(params)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("flat record of floats always serializes")
    }

    /// Set a field by its on-disk name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "omega_m" => &mut self.omega_m,
            "gamma" => &mut self.gamma,
            "kappa" => &mut self.kappa,
            "kappa_in" => &mut self.kappa_in,
            "g0" => &mut self.g0,
            "J" => &mut self.j,
            "Delta_c" => &mut self.delta_c,
            "omega_d" => &mut self.omega_d,
            "eps_d" => &mut self.eps_d,
            "G_L" => &mut self.g_l,
            "G_R" => &mut self.g_r,
            "Gamma" => &mut self.photon_linewidth,
            "n_th" => &mut self.n_th,
            other => return Err(Error::UnknownTag(other.to_string())),
        };
        *slot = value;
        Ok(())
    }

    /// Multiply every rate that enters the drift matrix by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        Self {
            omega_m: self.omega_m * factor,
            gamma: self.gamma * factor,
            kappa: self.kappa * factor,
            kappa_in: self.kappa_in * factor,
            j: self.j * factor,
            delta_c: self.delta_c * factor,
            omega_d: self.omega_d * factor,
            eps_d: self.eps_d * factor,
            g_l: self.g_l * factor,
            g_r: self.g_r * factor,
            ..*self
        }
    }
}
