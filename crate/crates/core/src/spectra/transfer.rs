//! Frequency-domain solution and input-output transfer rows.

use nalgebra::Matrix6;
use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::FrequencyGrid;
use crate::error::{Error, Result};
use crate::model::{DriftMatrix, DIM};

pub type Row = [Complex64; DIM];
pub type Probabilities = [f64; DIM];

/// Output-port coefficients against the input vector
/// `(a_L,in, a_R,in, b_in, a_L,in†, a_R,in†, b_in†)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferRows {
    pub fl: Row,
    pub fr: Row,
}

/// `(M + i omega I)^{-1}` via LU with partial pivoting.
fn resolvent(drift: &DriftMatrix, omega: f64) -> Result<Matrix6<Complex64>> {
    let shifted = drift.m + Matrix6::identity() * Complex64::new(0.0, omega);
    shifted
        .lu()
        .try_inverse()
        .filter(|inv| inv.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
        .ok_or_else(|| Error::Numerical(format!("M + i omega I is singular at omega = {omega:e}")))
}

fn output_row(drift: &DriftMatrix, inv: &Matrix6<Complex64>, mode: usize, direct: usize) -> Row {
    let out = drift.output_scale();
    let mut row = [Complex64::new(0.0, 0.0); DIM];
    for (j, slot) in row.iter_mut().enumerate() {
        *slot = -inv[(mode, j)] * (out * drift.input_scale(j));
    }
    row[direct] -= 1.0;
    row
}

/// Rows of `a_L,out(omega)` and `a_R,out(omega)`: `-sqrt(2 kappa)` times the
/// resolvent rows scaled per input channel, with the direct `-a_in` term on
/// the own port.
pub fn transfer_rows(drift: &DriftMatrix, omega: f64) -> Result<TransferRows> {
    let inv = resolvent(drift, omega)?;
    Ok(TransferRows {
        fl: output_row(drift, &inv, 0, 0),
        fr: output_row(drift, &inv, 1, 1),
    })
}

/// Rows of the conjugate outputs `a_L,out†(omega)` and `a_R,out†(omega)`.
pub fn conjugate_transfer_rows(drift: &DriftMatrix, omega: f64) -> Result<TransferRows> {
    let inv = resolvent(drift, omega)?;
    Ok(TransferRows {
        fl: output_row(drift, &inv, 3, 3),
        fr: output_row(drift, &inv, 4, 4),
    })
}

pub fn scattering_probabilities(rows: &TransferRows) -> (Probabilities, Probabilities) {
    (rows.fl.map(|z| z.norm_sqr()), rows.fr.map(|z| z.norm_sqr()))
}

/// Transfer rows and scattering probabilities on every grid point.
#[derive(Debug, Clone)]
pub struct ScatteringProfile {
    pub grid: FrequencyGrid,
    pub rows: Vec<TransferRows>,
    pub prob_l: Vec<Probabilities>,
    pub prob_r: Vec<Probabilities>,
}

impl ScatteringProfile {
    /// Solve at every grid point. Points are independent and are solved in
    /// parallel; results keep grid order.
    pub fn compute(drift: &DriftMatrix, grid: &FrequencyGrid) -> Result<Self> {
        let rows = grid
            .points()
            .par_iter()
            .map(|&w| transfer_rows(drift, w))
            .collect::<Result<Vec<_>>>()?;
        let (prob_l, prob_r) = rows.iter().map(scattering_probabilities).unzip();
        Ok(Self {
            grid: grid.clone(),
            rows,
            prob_l,
            prob_r,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
