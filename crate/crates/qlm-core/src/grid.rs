//! Rectangular grids of complex samples over two labeled axes.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{QlmError, Result};

#[derive(Debug, Clone)]
pub struct Axis {
    pub label: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(QlmError::Config("axis must be nonempty".into()));
        }
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(QlmError::Config(
                "axis values must be strictly increasing".into(),
            ));
        }
        Ok(Self { label: label.into(), values })
    }

    /// Uniformly spaced axis with `n` points on `[lo, hi]`.
    pub fn linspace(label: impl Into<String>, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 1 || !(hi > lo) {
            return Err(QlmError::Config("bad linspace axis".into()));
        }
        let step = if n == 1 { 0.0 } else { (hi - lo) / (n - 1) as f64 };
        Self::new(label, (0..n).map(|i| lo + step * i as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// 2D array of complex samples; `samples[[i, j]]` belongs to
/// `(axis_x.values[i], axis_y.values[j])`.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub axis_x: Axis,
    pub axis_y: Axis,
    pub samples: Array2<C64>,
}

impl ScanGrid {
    pub fn new(axis_x: Axis, axis_y: Axis, samples: Array2<C64>) -> Result<Self> {
        if samples.nrows() != axis_x.len() || samples.ncols() != axis_y.len() {
            return Err(QlmError::Config(format!(
                "samples shape {:?} does not match axes ({}, {})",
                samples.dim(),
                axis_x.len(),
                axis_y.len()
            )));
        }
        Ok(Self { axis_x, axis_y, samples })
    }

    pub fn shape(&self) -> (usize, usize) {
        self.samples.dim()
    }
}
