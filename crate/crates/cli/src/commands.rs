//! One function per mode; each writes its artifacts into the output directory
//! and returns their paths.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use nonrecip::analysis::{
    channel_magnitude_report, find_reciprocity_threshold, nonreciprocity_report, thermal_threshold, AnalysisReport,
    BehaviourThresholds, IsolationOptions, ThresholdOptions,
};
use nonrecip::model::{build_drift_matrix, check_stability, StabilityReport, SystemParams, DIM, STABILITY_MARGIN};
use nonrecip::oracle::{time_domain_transfer, ProbeOptions};
use nonrecip::spectra::{
    assemble, transfer_rows, write_spectrum_csv, FrequencyGrid, InputSpectra, Photon, ScatteringProfile, SpectrumSeries,
};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Mode, RunConfig};
use crate::error::CliError;

pub fn run(mode: Mode, config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    match mode {
        Mode::Spectrum => spectrum(config, out),
        Mode::Sweep => sweep(config, out),
        Mode::Stability => stability(config, out),
        Mode::Threshold => threshold(config, out),
        Mode::OracleCheck => oracle_check(config, out),
    }
}

fn write_file(path: PathBuf, fill: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<PathBuf, CliError> {
    let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    let mut w = BufWriter::new(file);
    fill(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn write_json<T: Serialize>(path: PathBuf, value: &T) -> Result<PathBuf, CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports are plain data");
    write_file(path, |w| writeln!(w, "{text}"))
}

fn require_stable(params: &SystemParams) -> Result<StabilityReport, CliError> {
    let report = check_stability(&build_drift_matrix(params)?, STABILITY_MARGIN * params.kappa)?;
    if !report.stable {
        return Err(CliError::Unstable(format!(
            "max Re(lambda) = {:.6e} Hz is not below -{:.1e} Hz",
            report.max_real_part, report.tolerance
        )));
    }
    Ok(report)
}

struct Computed {
    profile: ScatteringProfile,
    series: SpectrumSeries,
    photon: Photon,
}

fn compute(config: &RunConfig, params: &SystemParams, grid: &FrequencyGrid) -> Result<Computed, CliError> {
    let photon = Photon::new(params.photon_linewidth, config.photon.center)?;
    let profile = ScatteringProfile::compute(&build_drift_matrix(params)?, grid)?;
    let inputs = InputSpectra::photon(grid, &photon);
    let series = assemble(&profile, &inputs, params.n_th, config.assembly)?;
    Ok(Computed {
        profile,
        series,
        photon,
    })
}

fn spectrum(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    require_stable(&config.params)?;
    let grid = config.frequency_grid()?;
    let c = compute(config, &config.params, &grid)?;
    let path = write_file(out.join("spectrum.csv"), |w| {
        write_spectrum_csv(w, &c.profile, &c.series, c.photon.center)
    })?;
    Ok(vec![path])
}

#[derive(Serialize)]
struct SweepPoint {
    index: usize,
    value: f64,
    file: String,
    max_real_part: f64,
    #[serde(rename = "S_in_peak")]
    s_in_peak: f64,
    #[serde(rename = "S_out_L_peak")]
    s_out_l_peak: f64,
    #[serde(rename = "S_out_R_peak")]
    s_out_r_peak: f64,
    #[serde(rename = "FL_4_peak")]
    fl_4_peak: f64,
}

#[derive(Serialize)]
struct Monotone {
    #[serde(rename = "FL_4_peak")]
    fl_4_peak: bool,
    #[serde(rename = "S_out_L_peak")]
    s_out_l_peak: bool,
}

#[derive(Serialize)]
struct SweepSummary {
    variable: &'static str,
    assembly: nonrecip::spectra::Assembly,
    photon_center: f64,
    points: Vec<SweepPoint>,
    /// Whether each column is non-decreasing along the scan.
    non_decreasing: Monotone,
}

fn sweep(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let scan = config
        .scan
        .ok_or_else(|| CliError::Config("sweep needs a [scan] section".into()))?;
    let grid = config.frequency_grid()?;
    let values = scan.values();
    let points: Vec<SystemParams> = values
        .iter()
        .map(|&v| {
            let mut p = config.params;
            p.set(scan.variable.key(), v)?;
            Ok(p)
        })
        .collect::<Result<_, CliError>>()?;

    // Every point must be stable before anything is written.
    let reports: Vec<StabilityReport> = points
        .par_iter()
        .zip(&values)
        .map(|(p, v)| {
            require_stable(p).map_err(|e| match e {
                CliError::Unstable(msg) => CliError::Unstable(format!("{} = {v:e}: {msg}", scan.variable.key())),
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let computed: Vec<Computed> = points
        .par_iter()
        .map(|p| compute(config, p, &grid))
        .collect::<Result<_, _>>()?;

    let width = values.len().saturating_sub(1).to_string().len().max(3);
    let mut files = Vec::with_capacity(values.len() + 1);
    let mut summary = Vec::with_capacity(values.len());
    for (k, c) in computed.iter().enumerate() {
        let name = format!("sweep_{k:0width$}.csv");
        files.push(write_file(out.join(&name), |w| {
            write_spectrum_csv(w, &c.profile, &c.series, c.photon.center)
        })?);
        let i = grid.index_of(c.photon.center).expect("grid contains the photon center");
        summary.push(SweepPoint {
            index: k,
            value: values[k],
            file: name,
            max_real_part: reports[k].max_real_part,
            s_in_peak: c.series.s_in_l[i],
            s_out_l_peak: c.series.s_out_l[i],
            s_out_r_peak: c.series.s_out_r[i],
            fl_4_peak: c.profile.prob_l[i][3],
        });
    }
    let non_decreasing = |f: fn(&SweepPoint) -> f64| summary.windows(2).all(|w| f(&w[1]) >= f(&w[0]));
    let monotone = Monotone {
        fl_4_peak: non_decreasing(|p| p.fl_4_peak),
        s_out_l_peak: non_decreasing(|p| p.s_out_l_peak),
    };
    let photon_center = config.photon.center;
    files.push(write_json(
        out.join("sweep_summary.json"),
        &SweepSummary {
            variable: scan.variable.key(),
            assembly: config.assembly,
            photon_center,
            points: summary,
            non_decreasing: monotone,
        },
    )?);
    Ok(files)
}

fn stability(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let p = &config.params;
    let report = check_stability(&build_drift_matrix(p)?, STABILITY_MARGIN * p.kappa)?;
    Ok(vec![write_json(out.join("stability.json"), &report)?])
}

fn threshold(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let params = &config.params;
    require_stable(params)?;
    let grid = config.frequency_grid()?;
    let c = compute(config, params, &grid)?;

    let nonrecip = nonreciprocity_report(
        &c.profile,
        &c.series,
        params,
        &c.photon,
        &IsolationOptions::for_params(params),
        &BehaviourThresholds::default(),
    )?;
    let magnitudes = channel_magnitude_report(&c.profile, (grid.min(), grid.max()))?;
    let n_thres = thermal_threshold(&magnitudes, c.photon.peak(), config.threshold.safety_factor);

    let options = ThresholdOptions {
        scan_points: config.threshold.scan_points,
        ..Default::default()
    };
    let threshold = match find_reciprocity_threshold(params, config.threshold.range(params), &c.photon, &options) {
        Ok(t) => Some(t),
        Err(nonrecip::Error::Bracket { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let report = AnalysisReport {
        isolation_points: nonrecip.isolation_points,
        eps_d_star: threshold.map(|t| t.eps_d_star),
        n_thres,
        channel_magnitudes: magnitudes,
        regime: nonrecip.regime,
        contrast_at_peak: nonrecip.contrast_at_peak,
        threshold,
    };
    let path = out.join("threshold.json");
    write_file(path.clone(), |w| writeln!(w, "{}", report.to_json()))?;
    Ok(vec![path])
}

#[derive(Serialize)]
struct OracleSample {
    /// 1-based input channel in `(a_L, a_R, b, a_L†, a_R†, b†)`.
    channel: usize,
    omega: f64,
    time_domain: [Complex64; 2],
    frequency_domain: [Complex64; 2],
    relative_error: f64,
    settle_time: f64,
    step: f64,
}

#[derive(Serialize)]
struct OracleReport {
    samples: Vec<OracleSample>,
    max_relative_error: f64,
    tolerance: f64,
    pass: bool,
}

fn oracle_check(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let params = &config.params;
    require_stable(params)?;
    let drift = build_drift_matrix(params)?;
    let grid = config.frequency_grid()?;

    // The transmitting channel at the photon center, then random probes.
    let mut rng = StdRng::seed_from_u64(config.oracle.seed);
    let mut probes = vec![(1usize, config.photon.center)];
    probes.extend((0..config.oracle.samples).map(|_| (rng.gen_range(0..DIM), rng.gen_range(grid.min()..=grid.max()))));

    let samples: Vec<OracleSample> = probes
        .par_iter()
        .map(|&(channel, omega)| {
            let run = time_domain_transfer(&drift, channel, omega, &ProbeOptions::default())?;
            let rows = transfer_rows(&drift, omega)?;
            let reference = [rows.fl[channel], rows.fr[channel]];
            let relative_error = (0..2)
                .map(|k| (run.amplitude_out[k] - reference[k]).norm() / reference[k].norm())
                .fold(0.0, f64::max);
            Ok(OracleSample {
                channel: channel + 1,
                omega,
                time_domain: run.amplitude_out,
                frequency_domain: reference,
                relative_error,
                settle_time: run.settle_time,
                step: run.step,
            })
        })
        .collect::<Result<_, nonrecip::Error>>()?;

    let max_relative_error = samples.iter().map(|s| s.relative_error).fold(0.0, f64::max);
    let tolerance = config.oracle.tolerance;
    let pass = max_relative_error <= tolerance;
    let path = write_json(
        out.join("oracle.json"),
        &OracleReport {
            samples,
            max_relative_error,
            tolerance,
            pass,
        },
    )?;
    if !pass {
        return Err(CliError::Numerical(format!(
            "time-domain probes disagree by {max_relative_error:.3e} (tolerance {tolerance:.1e}); see {}",
            path.display()
        )));
    }
    Ok(vec![path])
}
