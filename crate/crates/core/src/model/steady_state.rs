//! Classical mean fields of the pumped cavity.

use num_complex::Complex64;
use serde::Serialize;

use super::params::SystemParams;
use crate::error::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.0545718e-34;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Pump amplitude `sqrt(2 P kappa / (hbar omega_p))` for an optical power `power` in watts.
pub fn pump_amplitude_from_power(power: f64, omega_p: f64, kappa: f64) -> Result<f64> {
    if !(power >= 0.0) || !power.is_finite() {
        return Err(Error::param("P", "power must be finite and >= 0"));
    }
    if !(omega_p > 0.0) || !omega_p.is_finite() {
        return Err(Error::param("omega_p", "must be > 0"));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::param("kappa", "must be > 0"));
    }
    Ok((2.0 * power * kappa / (HBAR * omega_p)).sqrt())
}

/// How the radiation-pressure shift `g0 (beta + beta*)` of the cavity
/// detuning is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetuningMode {
    /// Drop the shift, `Delta' = Delta_c`.
    #[default]
    Approximate,
    /// Keep `Delta' = Delta_c + g0 (beta + beta*)`.
    Exact,
}

#[derive(Debug, Clone, Copy)]
pub struct SteadyStateOptions {
    pub mode: DetuningMode,
    pub damping: f64,
    pub max_iterations: usize,
    /// Residual tolerance relative to `max(|eps_p|, 1)`.
    pub tolerance: f64,
}

impl Default for SteadyStateOptions {
    fn default() -> Self {
        Self {
            mode: DetuningMode::Approximate,
            damping: 0.5,
            max_iterations: 10_000,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    pub alpha_l: Complex64,
    pub alpha_r: Complex64,
    pub beta: Complex64,
    /// Max absolute residual of the three mean-field equations.
    pub residual: f64,
    pub iterations: usize,
    pub mode: DetuningMode,
    /// `g0 (beta + beta*)`, the radiation-pressure detuning shift.
    pub kerr_shift: f64,
}

impl SteadyState {
    /// Enhanced couplings `g0 alpha_L`, `g0 alpha_R`.
    pub fn couplings(&self, g0: f64) -> (Complex64, Complex64) {
        (self.alpha_l * g0, self.alpha_r * g0)
    }

    /// Copy of `params` with `G_L`, `G_R` taken from the mean fields (phases
    /// absorbed, so the couplings are real). In exact mode the cavity
    /// detuning also picks up the radiation-pressure shift.
    pub fn apply_to(&self, params: &SystemParams) -> SystemParams {
        let mut out = *params;
        out.g_l = params.g0 * self.alpha_l.norm();
        out.g_r = params.g0 * self.alpha_r.norm();
        if self.mode == DetuningMode::Exact {
            out.delta_c += self.kerr_shift;
        }
        out
    }
}

/// Residuals of the three mean-field equations, in the order
/// (mechanical, counter-clockwise, clockwise).
pub fn steady_state_residuals(
    params: &SystemParams,
    eps_p: f64,
    mode: DetuningMode,
    alpha_l: Complex64,
    alpha_r: Complex64,
    beta: Complex64,
) -> [Complex64; 3] {
    let kappa_t = params.kappa_t();
    let cavity = I * params.delta_c + kappa_t;
    let shift = match mode {
        DetuningMode::Approximate => 0.0,
        DetuningMode::Exact => params.g0 * 2.0 * beta.re,
    };
    let photons = alpha_l.norm_sqr() + alpha_r.norm_sqr();
    let mech = -(params.gamma + I * params.omega_m) * beta - I * params.g0 * photons;
    let ccw = -cavity * alpha_r - I * shift * alpha_r - I * params.j * alpha_l;
    let cw = -cavity * alpha_l - I * shift * alpha_l - I * params.j * alpha_r + eps_p;
    [mech, ccw, cw]
}

/// Damped fixed-point solution of the mean-field equations.
///
/// Each sweep computes `beta` from the photon number and then both cavity
/// amplitudes from the 2x2 linear system at fixed `beta`.
pub fn solve_steady_state(params: &SystemParams, eps_p: f64, options: &SteadyStateOptions) -> Result<SteadyState> {
    params.validate()?;
    if !(eps_p >= 0.0) || !eps_p.is_finite() {
        return Err(Error::param("eps_p", "must be finite and >= 0"));
    }
    if !(options.damping > 0.0 && options.damping <= 1.0) {
        return Err(Error::param("damping", "must lie in (0, 1]"));
    }
    let scale = eps_p.abs().max(1.0);
    let mechanical = params.gamma + I * params.omega_m;

    let mut alpha_l = Complex64::new(0.0, 0.0);
    let mut alpha_r = Complex64::new(0.0, 0.0);
    let mut beta = Complex64::new(0.0, 0.0);
    let mut residual = f64::INFINITY;

    for iteration in 0..=options.max_iterations {
        residual = steady_state_residuals(params, eps_p, options.mode, alpha_l, alpha_r, beta)
            .iter()
            .map(|r| r.norm())
            .fold(0.0, f64::max);
        if !residual.is_finite() {
            break;
        }
        if residual <= options.tolerance * scale {
            let kerr_shift = params.g0 * 2.0 * beta.re;
            return Ok(SteadyState {
                alpha_l,
                alpha_r,
                beta,
                residual,
                iterations: iteration,
                mode: options.mode,
                kerr_shift,
            });
        }
        if iteration == options.max_iterations {
            break;
        }

        let photons = alpha_l.norm_sqr() + alpha_r.norm_sqr();
        let beta_next = -I * params.g0 * photons / mechanical;
        let shift = match options.mode {
            DetuningMode::Approximate => 0.0,
            DetuningMode::Exact => params.g0 * 2.0 * beta_next.re,
        };
        // [d, -iJ; -iJ, d] [aL; aR] = [-eps_p; 0]
        let d = -(I * (params.delta_c + shift) + params.kappa_t());
        let off = -I * params.j;
        let det = d * d - off * off;
        if det.norm() == 0.0 {
            return Err(Error::Numerical("singular mean-field system".into()));
        }
        let al_next = -eps_p * d / det;
        let ar_next = eps_p * off / det;

        let w = options.damping;
        alpha_l = alpha_l * (1.0 - w) + al_next * w;
        alpha_r = alpha_r * (1.0 - w) + ar_next * w;
        beta = beta * (1.0 - w) + beta_next * w;
    }
    Err(Error::Convergence {
        iterations: options.max_iterations,
        residual,
    })
}
