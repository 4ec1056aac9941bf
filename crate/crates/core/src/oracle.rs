//! Time-domain cross-check of the transfer rows.
//!
//! The linear system `dv/dt = M v + s_j e^{-i omega t}` is integrated with
//! fixed-step RK4 from rest. Once the transients have decayed, `v(t)` is a
//! pure `V e^{-i omega t}` oscillation; `V` is read off by averaging
//! `v(t) e^{i omega t}` over the last probe periods and mapped to the output
//! ports with `a_out = -a_in + sqrt(2 kappa) a`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{check_stability, DriftMatrix, DIM};

type State = [Complex64; DIM];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy)]
pub struct ProbeOptions {
    pub amplitude: f64,
    /// Step bound `h <= 1 / (steps_per_rate * max(|omega|, spectral radius))`.
    pub steps_per_rate: f64,
    /// Settle time in units of the slowest decay time `1 / |max Re(lambda)|`.
    pub settle_decays: f64,
    /// Probe periods in the projection window.
    pub periods: usize,
    /// Largest allowed relative change between the two halves of the window.
    pub drift_tolerance: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            steps_per_rate: 50.0,
            settle_decays: 25.0,
            periods: 10,
            drift_tolerance: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRun {
    /// Driven input channel, 0-based in `(a_L, a_R, b, a_L†, a_R†, b†)`.
    pub channel: usize,
    pub omega: f64,
    pub settle_time: f64,
    pub window: f64,
    pub step: f64,
    /// Extracted coefficients of `a_L,out` and `a_R,out` against the driven channel.
    pub amplitude_out: [Complex64; 2],
    pub drift: f64,
}

fn matvec(m: &[[Complex64; DIM]; DIM], v: &State) -> State {
    std::array::from_fn(|r| m[r].iter().zip(v).fold(ZERO, |acc, (a, b)| acc + a * b))
}

fn axpy(v: &State, k: &State, h: f64) -> State {
    std::array::from_fn(|i| v[i] + k[i] * h)
}

/// Integrate one probe and return the output coefficients.
pub fn time_domain_transfer(
    drift: &DriftMatrix,
    channel: usize,
    omega: f64,
    options: &ProbeOptions,
) -> Result<ProbeRun> {
    if channel >= DIM {
        return Err(Error::Precondition(format!("channel {channel} out of range")));
    }
    if !omega.is_finite() {
        return Err(Error::Precondition("probe frequency must be finite".into()));
    }
    let stability = check_stability(drift, 0.0)?;
    if !stability.stable {
        return Err(Error::Unstable {
            max_real_part: stability.max_real_part,
        });
    }
    let decay = stability.slowest_decay();
    let settle_time = options.settle_decays / decay;

    let window = if omega == 0.0 {
        settle_time
    } else {
        let period = TAU / omega.abs();
        let fitting = (settle_time / period).floor() as usize;
        match fitting.min(options.periods) {
            0 if period > 4.0 * settle_time => settle_time,
            0 => period,
            k => k as f64 * period,
        }
    };

    let h_max = 1.0 / (options.steps_per_rate * omega.abs().max(stability.spectral_radius()));
    let total = settle_time + window;
    let mut window_steps = (window / h_max).ceil() as usize;
    window_steps += window_steps % 2;
    let h = window / window_steps as f64;
    let settle_steps = (settle_time / h).ceil() as usize;
    let steps = settle_steps + window_steps;
    debug_assert!(steps as f64 * h >= total * (1.0 - 1e-12));

    let m = drift.as_array();
    let force_scale = options.amplitude * drift.input_scale(channel);
    let forcing = |t: f64| Complex64::from_polar(force_scale, -omega * t);
    let rhs = |t: f64, v: &State| {
        let mut dv = matvec(&m, v);
        dv[channel] += forcing(t);
        dv
    };

    let mut v: State = [ZERO; DIM];
    let t_start_window = settle_steps as f64 * h;
    // trapezoid sums of v e^{i omega t} over the two halves of the window
    let mut halves = [[ZERO; DIM]; 2];
    let half_steps = window_steps / 2;
    let accumulate = |halves: &mut [[Complex64; DIM]; 2], k: usize, v: &State| {
        let t = k as f64 * h;
        let phase = Complex64::from_polar(1.0, omega * t);
        let local = k - settle_steps;
        let (slots, weight): (&[usize], f64) = if local == 0 || local == window_steps {
            (if local == 0 { &[0] } else { &[1] }, 0.5)
        } else if local == half_steps {
            (&[0, 1], 0.5)
        } else if local < half_steps {
            (&[0], 1.0)
        } else {
            (&[1], 1.0)
        };
        for &s in slots {
            for i in 0..DIM {
                halves[s][i] += v[i] * phase * weight;
            }
        }
    };

    for k in 0..steps {
        let t = k as f64 * h;
        if k >= settle_steps {
            accumulate(&mut halves, k, &v);
        }
        let k1 = rhs(t, &v);
        let k2 = rhs(t + 0.5 * h, &axpy(&v, &k1, 0.5 * h));
        let k3 = rhs(t + 0.5 * h, &axpy(&v, &k2, 0.5 * h));
        let k4 = rhs(t + h, &axpy(&v, &k3, h));
        v = std::array::from_fn(|i| v[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0));
    }
    accumulate(&mut halves, steps, &v);
    debug_assert!((t_start_window + window - steps as f64 * h).abs() <= 1e-9 * window);

    let half = half_steps as f64;
    let first: State = halves[0].map(|z| z / half);
    let second: State = halves[1].map(|z| z / half);
    let amplitude: State = std::array::from_fn(|i| (first[i] + second[i]) * 0.5);
    let norm = amplitude.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let drift_rel = first
        .iter()
        .zip(&second)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / norm.max(f64::MIN_POSITIVE);
    if !(drift_rel <= options.drift_tolerance) {
        return Err(Error::Settling { drift: drift_rel });
    }

    let out = drift.output_scale();
    let coefficient = |port: usize| {
        let direct = if port == channel { -options.amplitude } else { 0.0 };
        (amplitude[port] * out + direct) / options.amplitude
    };
    Ok(ProbeRun {
        channel,
        omega,
        settle_time,
        window,
        step: h,
        amplitude_out: [coefficient(0), coefficient(1)],
        drift: drift_rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_drift_matrix, SystemParams};

    #[test]
    fn bare_cavity_critical_coupling() {
        // The uncoupled mechanical mode sets the settle time, so give it a
        // cavity-scale damping to keep the run short.
        let p = SystemParams {
            gamma: 1e6,
            g0: 0.0,
            g_l: 0.0,
            g_r: 0.0,
            j: 0.0,
            eps_d: 0.0,
            ..Default::default()
        };
        let d = build_drift_matrix(&p).unwrap();
        let run = time_domain_transfer(&d, 0, p.delta_cavity(), &ProbeOptions::default()).unwrap();
        assert!(run.amplitude_out[0].norm() < 1e-6, "{}", run.amplitude_out[0]);
        assert_eq!(run.amplitude_out[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn linear_in_probe_amplitude() {
        let d = build_drift_matrix(&SystemParams::default()).unwrap();
        let a = time_domain_transfer(&d, 1, 3e6, &ProbeOptions::default()).unwrap();
        let b = time_domain_transfer(
            &d,
            1,
            3e6,
            &ProbeOptions {
                amplitude: 10.0,
                ..Default::default()
            },
        )
        .unwrap();
        for k in 0..2 {
            let rel = (a.amplitude_out[k] - b.amplitude_out[k]).norm() / a.amplitude_out[k].norm();
            assert!(rel < 1e-9, "port {k}: {rel:e}");
        }
    }

    #[test]
    fn settle_time_covers_transients() {
        let d = build_drift_matrix(&SystemParams::default()).unwrap();
        let run = time_domain_transfer(&d, 2, -5e6, &ProbeOptions::default()).unwrap();
        let decay = check_stability(&d, 0.0).unwrap().slowest_decay();
        assert!(run.settle_time >= 10.0 / decay);
    }

    #[test]
    fn unsettled_run_is_reported() {
        let d = build_drift_matrix(&SystemParams::default()).unwrap();
        let opts = ProbeOptions {
            settle_decays: 0.5,
            ..Default::default()
        };
        assert!(matches!(
            time_domain_transfer(&d, 0, 1e6, &opts),
            Err(Error::Settling { .. })
        ));
    }

    #[test]
    fn rejects_bad_channel() {
        let d = build_drift_matrix(&SystemParams::default()).unwrap();
        assert!(time_domain_transfer(&d, 6, 0.0, &ProbeOptions::default()).is_err());
    }
}
