//! Zeros of complex functions on 2D grids, located by wrapped-phase
//! plaquette winding numbers.

use serde::Serialize;

use crate::error::{QlmError, Result};
use crate::grid::ScanGrid;

/// Map an angle difference into `(-π, π]`.
pub fn wrap_angle(delta: f64) -> Result<f64> {
    if !delta.is_finite() {
        return Err(QlmError::Numerical(format!(
            "wrap_angle: non-finite input {delta}"
        )));
    }
    let tau = std::f64::consts::TAU;
    let mut w = delta.rem_euclid(tau); // in [0, 2π)
    if w > std::f64::consts::PI {
        w -= tau;
    }
    Ok(w)
}

/// One plaquette with nonzero winding; `x`/`y` index the lower-left grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Vortex {
    pub cell_x: usize,
    pub cell_y: usize,
    pub winding: i32,
}

/// Nonzero plaquette windings of a grid, plus cells that could not be
/// classified because a corner sample is exactly zero.
#[derive(Debug, Clone, Default)]
pub struct VortexList {
    pub entries: Vec<Vortex>,
    pub indeterminate: Vec<(usize, usize)>,
}

impl VortexList {
    pub fn count_positive(&self) -> usize {
        self.entries.iter().filter(|v| v.winding > 0).count()
    }

    pub fn count_negative(&self) -> usize {
        self.entries.iter().filter(|v| v.winding < 0).count()
    }

    /// Cell center in axis coordinates for a detected vortex.
    pub fn cell_center(grid: &ScanGrid, v: &Vortex) -> (f64, f64) {
        let x = 0.5 * (grid.axis_x.values[v.cell_x] + grid.axis_x.values[v.cell_x + 1]);
        let y = 0.5 * (grid.axis_y.values[v.cell_y] + grid.axis_y.values[v.cell_y + 1]);
        (x, y)
    }
}

fn check_grid(grid: &ScanGrid) -> Result<()> {
    let (nx, ny) = grid.shape();
    if nx < 2 || ny < 2 {
        return Err(QlmError::Config(
            "winding requires a grid of at least 2x2 samples".into(),
        ));
    }
    Ok(())
}

/// Winding of each unit plaquette: the counter-clockwise sum of wrapped
/// phase differences divided by 2π, an exact integer.
pub fn plaquette_windings(grid: &ScanGrid) -> Result<VortexList> {
    check_grid(grid)?;
    let (nx, ny) = grid.shape();
    let tau = std::f64::consts::TAU;
    let phases: Vec<f64> = grid.samples.iter().map(|z| z.arg()).collect();
    let zero: Vec<bool> = grid.samples.iter().map(|z| z.norm() == 0.0).collect();
    let at = |i: usize, j: usize| i * ny + j;

    let mut list = VortexList::default();
    for i in 0..nx - 1 {
        for j in 0..ny - 1 {
            let corners = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if corners.iter().any(|&c| zero[c]) {
                list.indeterminate.push((i, j));
                continue;
            }
            let mut sum = 0.0;
            for k in 0..4 {
                sum += wrap_angle(phases[corners[(k + 1) % 4]] - phases[corners[k]])?;
            }
            let winding = (sum / tau).round() as i32;
            if winding != 0 {
                list.entries.push(Vortex { cell_x: i, cell_y: j, winding });
            }
        }
    }
    Ok(list)
}

/// Winding of the outer boundary loop, traversed counter-clockwise. By the
/// telescoping of interior edges this equals the sum of all plaquette
/// windings, which is tested rather than assumed.
pub fn boundary_winding(grid: &ScanGrid) -> Result<i32> {
    check_grid(grid)?;
    let (nx, ny) = grid.shape();
    let tau = std::f64::consts::TAU;
    let phase = |i: usize, j: usize| -> Result<f64> {
        let z = grid.samples[[i, j]];
        if z.norm() == 0.0 {
            return Err(QlmError::Numerical(format!(
                "exact zero sample on the boundary at ({i}, {j})"
            )));
        }
        Ok(z.arg())
    };
    let mut path: Vec<(usize, usize)> = Vec::new();
    for i in 0..nx - 1 {
        path.push((i, 0));
    }
    for j in 0..ny - 1 {
        path.push((nx - 1, j));
    }
    for i in (1..nx).rev() {
        path.push((i, ny - 1));
    }
    for j in (1..ny).rev() {
        path.push((0, j));
    }
    let mut sum = 0.0;
    for k in 0..path.len() {
        let (i0, j0) = path[k];
        let (i1, j1) = path[(k + 1) % path.len()];
        sum += wrap_angle(phase(i1, j1)? - phase(i0, j0)?)?;
    }
    Ok((sum / tau).round() as i32)
}

/// Summary counts for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct VortexSummary {
    pub n_plus: usize,
    pub n_minus: usize,
    pub boundary: i32,
}

pub fn summarize(grid: &ScanGrid, list: &VortexList) -> Result<VortexSummary> {
    Ok(VortexSummary {
        n_plus: list.count_positive(),
        n_minus: list.count_negative(),
        boundary: boundary_winding(grid)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;
    use ndarray::Array2;
    use num_complex::Complex64 as C64;

    fn grid_from(f: impl Fn(f64, f64) -> C64, nx: usize, ny: usize) -> ScanGrid {
        let ax = Axis::linspace("x", -1.0, 1.0, nx).unwrap();
        let ay = Axis::linspace("y", -1.0, 1.0, ny).unwrap();
        let mut samples = Array2::zeros((nx, ny));
        for (i, &x) in ax.values.iter().enumerate() {
            for (j, &y) in ay.values.iter().enumerate() {
                samples[[i, j]] = f(x, y);
            }
        }
        ScanGrid::new(ax, ay, samples).unwrap()
    }

    #[test]
    fn wrap_angle_conventions() {
        assert_eq!(wrap_angle(0.0).unwrap(), 0.0);
        let w = wrap_angle(3.0 * std::f64::consts::FRAC_PI_2).unwrap();
        assert!((w + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // boundary maps to +π
        let w = wrap_angle(-std::f64::consts::PI).unwrap();
        assert!((w - std::f64::consts::PI).abs() < 1e-15);
        assert!(wrap_angle(f64::NAN).is_err());
    }

    #[test]
    fn single_zero_and_conjugate() {
        let (x0, y0) = (0.137, -0.222);
        let f = |x: f64, y: f64| C64::new(x - x0, y - y0);
        let grid = grid_from(f, 21, 19);
        let list = plaquette_windings(&grid).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].winding, 1);
        let (cx, cy) = VortexList::cell_center(&grid, &list.entries[0]);
        assert!((cx - x0).abs() < 0.1 && (cy - y0).abs() < 0.12);
        assert_eq!(boundary_winding(&grid).unwrap(), 1);

        let conj_grid = grid_from(|x, y| f(x, y).conj(), 21, 19);
        let list = plaquette_windings(&conj_grid).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].winding, -1);
        assert_eq!(boundary_winding(&conj_grid).unwrap(), -1);
    }

    #[test]
    fn nowhere_zero_field_has_no_vortices() {
        let grid = grid_from(|x, y| C64::from_polar(1.0, x * y), 15, 15);
        assert!(plaquette_windings(&grid).unwrap().entries.is_empty());
        assert_eq!(boundary_winding(&grid).unwrap(), 0);
    }

    #[test]
    fn pair_cancels_on_boundary() {
        let f = |x: f64, y: f64| {
            C64::new(x - 0.3, y - 0.1) * C64::new(x + 0.3, y + 0.1).conj()
        };
        let grid = grid_from(f, 41, 41);
        let list = plaquette_windings(&grid).unwrap();
        assert_eq!(list.count_positive(), 1);
        assert_eq!(list.count_negative(), 1);
        assert_eq!(boundary_winding(&grid).unwrap(), 0);
    }

    #[test]
    fn exact_zero_sample_is_flagged() {
        let grid = grid_from(|x, y| C64::new(x, y), 5, 5);
        // the (0,0) node sits exactly at x = y = 0 only for odd sizes with
        // symmetric range; 5 points on [-1,1] include 0
        let list = plaquette_windings(&grid).unwrap();
        assert!(!list.indeterminate.is_empty());
    }

    #[test]
    fn windings_invariant_under_nonvanishing_multiplication() {
        let f = |x: f64, y: f64| C64::new(x - 0.21, y + 0.4);
        let grid = grid_from(f, 31, 31);
        let reference = plaquette_windings(&grid).unwrap();
        let modulated = grid_from(
            |x, y| f(x, y) * C64::from_polar(1.0 + 0.5 * x * x, 0.8 * (x + y).sin()),
            31,
            31,
        );
        let list = plaquette_windings(&modulated).unwrap();
        assert_eq!(reference.entries, list.entries);
    }

    #[test]
    fn plaquette_sum_equals_boundary_winding() {
        // a few synthetic rational fields with zeros inside
        let fields: Vec<Box<dyn Fn(f64, f64) -> C64>> = vec![
            Box::new(|x, y| C64::new(x - 0.2, y) * C64::new(x + 0.4, y - 0.3)),
            Box::new(|x, y| {
                C64::new(x, y - 0.5) * C64::new(x - 0.1, y + 0.1).conj()
                    * C64::from_polar(1.0, x)
            }),
            Box::new(|x, y| C64::new(0.3 + x * y, x - y + 0.05)),
        ];
        for f in fields {
            let grid = grid_from(&f, 27, 33);
            let list = plaquette_windings(&grid).unwrap();
            let total: i32 = list.entries.iter().map(|v| v.winding).sum();
            assert_eq!(total, boundary_winding(&grid).unwrap());
        }
    }
}
