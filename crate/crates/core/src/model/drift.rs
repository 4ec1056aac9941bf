//! Linearized Langevin drift matrix.

use nalgebra::Matrix6;
use num_complex::Complex64;

use super::params::SystemParams;
use crate::error::Result;

/// Number of fluctuation operators in the linearized system.
pub const DIM: usize = 6;

/// Basis labels, in matrix order.
pub const BASIS: [&str; DIM] = ["a_L", "a_R", "b", "a_L^dag", "a_R^dag", "b^dag"];

/// The 6x6 drift matrix in the basis `(a_L, a_R, b, a_L†, a_R†, b†)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix {
    pub m: Matrix6<Complex64>,
    /// Cavity diagonal `-kappa_t - i delta_c` (its conjugate sits in the lower block).
    pub cavity_rate: Complex64,
    /// Mechanical diagonal `-gamma - i Delta_m`.
    pub mechanical_rate: Complex64,
    /// External coupling rate of both optical ports.
    pub kappa: f64,
    /// Mechanical damping, which sets the mechanical input coupling.
    pub gamma: f64,
}

impl DriftMatrix {
    /// Input coupling of channel `j` (0-based): `sqrt(2 kappa)` for the
    /// optical channels, `sqrt(2 gamma)` for the mechanical ones.
    pub fn input_scale(&self, channel: usize) -> f64 {
        match channel % 3 {
            2 => (2.0 * self.gamma).sqrt(),
            _ => (2.0 * self.kappa).sqrt(),
        }
    }

    pub fn output_scale(&self) -> f64 {
        (2.0 * self.kappa).sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn as_array(&self) -> [[Complex64; DIM]; DIM] {
        let mut out = [[Complex64::new(0.0, 0.0); DIM]; DIM];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.m[(r, c)];
            }
        }
        out
    }
}

/// Assemble the drift matrix. The enhanced couplings `G_L`, `G_R` are taken
/// as real numbers.
pub fn build_drift_matrix(params: &SystemParams) -> Result<DriftMatrix> {
    params.validate()?;
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);

    let cavity_rate = Complex64::new(-params.kappa_t(), -params.delta_cavity());
    let mechanical_rate = Complex64::new(-params.gamma, -params.delta_m());
    let j = i * params.j;
    let gl = i * params.g_l;
    let gr = i * params.g_r;
    let pd = Complex64::new(2.0 * params.eps_d, 0.0);

    #[rustfmt::skip]
    let m = Matrix6::new(
        cavity_rate, -j,          -gl,             zero,               zero,               zero,
        -j,          cavity_rate, -gr,             zero,               zero,               zero,
        -gl,         -gr,         mechanical_rate, zero,               zero,               pd,
        zero,        zero,        zero,            cavity_rate.conj(), j,                  gl,
        zero,        zero,        zero,            j,                  cavity_rate.conj(), gr,
        zero,        zero,        pd,              gl,                 gr,                 mechanical_rate.conj(),
    );

    Ok(DriftMatrix {
        m,
        cavity_rate,
        mechanical_rate,
        kappa: params.kappa,
        gamma: params.gamma,
    })
}
