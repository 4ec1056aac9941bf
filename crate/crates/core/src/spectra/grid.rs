use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered rotating-frame frequencies, Hz.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    symmetric: bool,
}

impl FrequencyGrid {
    /// `count` evenly spaced points on `[min, max]`. When `min == -max` the
    /// points are generated as exact mirror images of each other.
    pub fn uniform(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 3 {
            return Err(Error::Precondition(format!(
                "grid needs at least 3 points, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::Precondition(format!("invalid grid range [{min}, {max}]")));
        }
        let mid = 0.5 * (min + max);
        let half_step = 0.5 * (max - min) / (count - 1) as f64;
        let points = (0..count)
            .map(|i| {
                let k = 2 * i as i64 - (count as i64 - 1);
                if mid == 0.0 {
                    k as f64 * half_step
                } else {
                    mid + k as f64 * half_step
                }
            })
            .collect();
        Self::from_points(points)
    }

    /// Symmetric grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::uniform(-half_width, half_width, count)
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::Precondition("grid needs at least 3 points".into()));
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(Error::Precondition("grid contains non-finite points".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("grid must be strictly increasing".into()));
        }
        let n = points.len();
        let symmetric = (0..n).all(|i| points[i] == -points[n - 1 - i]);
        Ok(Self { points, symmetric })
    }

    /// Insert `omega` (and `-omega`, to keep a symmetric grid symmetric) if
    /// not already present.
    pub fn with_point(self, omega: f64) -> Result<Self> {
        let symmetric = self.symmetric;
        let mut points = self.points;
        let mut extra = vec![omega];
        if symmetric {
            extra.push(-omega);
        }
        for w in extra {
            if let Err(pos) = points.binary_search_by(|p| p.partial_cmp(&w).expect("finite")) {
                points.insert(pos, w);
            }
        }
        Self::from_points(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Index of the point exactly equal to `omega`.
    pub fn index_of(&self, omega: f64) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.partial_cmp(&omega).unwrap_or(std::cmp::Ordering::Less))
            .ok()
    }

    pub fn nearest_index(&self, omega: f64) -> usize {
        match self
            .points
            .binary_search_by(|p| p.partial_cmp(&omega).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i == self.points.len() => i - 1,
            Err(i) => {
                if (omega - self.points[i - 1]) <= (self.points[i] - omega) {
                    i - 1
                } else {
                    i
                }
            }
        }
    }

    /// Index of `-omega_i`; only defined on symmetric grids.
    pub fn mirror_index(&self, i: usize) -> Option<usize> {
        self.symmetric.then(|| self.points.len() - 1 - i)
    }

    /// Largest spacing between neighbouring points touching `[low, high]`.
    pub fn max_step_in(&self, low: f64, high: f64) -> f64 {
        self.points
            .windows(2)
            .filter(|w| w[1] >= low && w[0] <= high)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    pub fn covers(&self, low: f64, high: f64) -> bool {
        self.min() <= low && self.max() >= high
    }
}
