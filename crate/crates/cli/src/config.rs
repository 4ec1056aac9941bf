//! Run configuration: one TOML file per figure, plus command-line overrides.

use std::fmt;
use std::path::Path;

use nonrecip::model::SystemParams;
use nonrecip::spectra::{Assembly, FrequencyGrid, Photon};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Spectrum,
    Sweep,
    Stability,
    Threshold,
    OracleCheck,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Spectrum => "spectrum",
            Mode::Sweep => "sweep",
            Mode::Stability => "stability",
            Mode::Threshold => "threshold",
            Mode::OracleCheck => "oracle-check",
        })
    }
}

/// Evenly spaced rotating-frame frequencies, Hz. The photon center is added
/// to the grid if it is not already a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            min: -40e6,
            max: 40e6,
            count: 8001,
        }
    }
}

/// Photon wavepacket; its linewidth is `params.Gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhotonSpec {
    pub center: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVariable {
    #[serde(rename = "eps_d")]
    EpsD,
    #[serde(rename = "omega_d")]
    OmegaD,
    #[serde(rename = "n_th")]
    NTh,
    #[serde(rename = "Gamma")]
    Gamma,
}

impl ScanVariable {
    pub fn key(&self) -> &'static str {
        match self {
            ScanVariable::EpsD => "eps_d",
            ScanVariable::OmegaD => "omega_d",
            ScanVariable::NTh => "n_th",
            ScanVariable::Gamma => "Gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub variable: ScanVariable,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl ScanSpec {
    /// Linearly spaced values; endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / last
                }
            })
            .collect()
    }
}

/// Settings of the `threshold` analysis. Drive bounds default to
/// `[1e-4, 8e-4] * kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ThresholdSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_d_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_d_max: Option<f64>,
    pub scan_points: usize,
    pub safety_factor: f64,
}

impl Default for ThresholdSpec {
    fn default() -> Self {
        Self {
            eps_d_min: None,
            eps_d_max: None,
            scan_points: 9,
            safety_factor: nonrecip::analysis::DEFAULT_SAFETY_FACTOR,
        }
    }
}

impl ThresholdSpec {
    pub fn range(&self, params: &SystemParams) -> (f64, f64) {
        (
            self.eps_d_min.unwrap_or(1e-4 * params.kappa),
            self.eps_d_max.unwrap_or(8e-4 * params.kappa),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSpec {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for OracleSpec {
    fn default() -> Self {
        Self {
            samples: 24,
            seed: 1,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Mode used by `nonrecip run`; the other subcommands ignore it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default = "full_assembly")]
    pub assembly: Assembly,
    #[serde(default)]
    pub params: SystemParams,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub photon: PhotonSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSpec>,
    #[serde(default)]
    pub threshold: ThresholdSpec,
    #[serde(default)]
    pub oracle: OracleSpec,
}

fn full_assembly() -> Assembly {
    Assembly::Full
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: None,
            assembly: Assembly::Full,
            params: SystemParams::default(),
            grid: GridSpec::default(),
            photon: PhotonSpec::default(),
            scan: None,
            threshold: ThresholdSpec::default(),
            oracle: OracleSpec::default(),
        }
    }
}

/// Top-level keys that `--override` may address without a section prefix.
const TOP_LEVEL_KEYS: [&str; 2] = ["mode", "assembly"];

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        Self::from_toml_with_overrides(text, &[])
    }

    /// Parse, apply `key=value` overrides, then validate.
    ///
    /// A bare key names a parameter (`eps_d=1e2` is `params.eps_d`) unless it
    /// is `mode` or `assembly`; dotted keys address any section
    /// (`grid.count=2001`). Values are TOML literals; anything that does not
    /// parse as one is taken as a string.
    pub fn from_toml_with_overrides(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let mut table: toml::Table = text.parse().map_err(|e| CliError::Config(format!("{e}")))?;
        for item in overrides {
            apply_override(&mut table, item)?;
        }
        let config: RunConfig = table.try_into().map_err(|e| CliError::Config(format!("{e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml_with_overrides(&text, overrides)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration is plain data")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate()?;
        self.frequency_grid()?;
        self.photon()?;
        if let Some(scan) = &self.scan {
            if scan.count == 0 {
                return Err(CliError::Config("scan.count must be >= 1".into()));
            }
            if !(scan.min.is_finite() && scan.max.is_finite() && scan.min <= scan.max) {
                return Err(CliError::Config(format!(
                    "invalid scan range [{}, {}]",
                    scan.min, scan.max
                )));
            }
            for value in scan.values() {
                let mut p = self.params;
                p.set(scan.variable.key(), value)?;
                p.validate()?;
            }
        }
        let (low, high) = self.threshold.range(&self.params);
        if !(low.is_finite() && high.is_finite() && 0.0 <= low && low < high) {
            return Err(CliError::Config(format!("invalid threshold range [{low}, {high}]")));
        }
        if self.threshold.scan_points < 2 {
            return Err(CliError::Config("threshold.scan_points must be >= 2".into()));
        }
        if !(self.threshold.safety_factor > 0.0) {
            return Err(CliError::Config("threshold.safety_factor must be > 0".into()));
        }
        if !(self.oracle.tolerance > 0.0) {
            return Err(CliError::Config("oracle.tolerance must be > 0".into()));
        }
        Ok(())
    }

    /// The configured grid with the photon center inserted.
    pub fn frequency_grid(&self) -> Result<FrequencyGrid, CliError> {
        let g = &self.grid;
        Ok(FrequencyGrid::uniform(g.min, g.max, g.count)?.with_point(self.photon.center)?)
    }

    pub fn photon(&self) -> Result<Photon, CliError> {
        Ok(Photon::new(self.params.photon_linewidth, self.photon.center)?)
    }
}

fn apply_override(table: &mut toml::Table, item: &str) -> Result<(), CliError> {
    let (key, raw) = item
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override '{item}' is not key=value")))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(CliError::Config(format!("override '{item}' has an empty key")));
    }
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));

    let path: Vec<&str> = if key.contains('.') {
        key.split('.').collect()
    } else if TOP_LEVEL_KEYS.contains(&key) {
        vec![key]
    } else {
        vec!["params", key]
    };
    let (last, sections) = path.split_last().expect("non-empty path");
    let mut node = table;
    for section in sections {
        let entry = node
            .entry(section.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("override '{key}': '{section}' is not a section")))?;
    }
    node.insert(last.to_string(), value);
    Ok(())
}
