//! Thin wrappers around the LAPACK-backed eigensolver plus a few vector
//! helpers shared across modules.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{QlmError, Result};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermEig {
    pub values: Array1<f64>,
    /// Eigenvectors as columns, same order as `values`.
    pub vectors: Array2<C64>,
}

/// Diagonalize a Hermitian matrix. The input is not checked for hermiticity
/// beyond what LAPACK assumes (lower triangle is used).
pub fn eigh(h: &Array2<C64>) -> Result<HermEig> {
    let (values, vectors) = h
        .eigh(UPLO::Lower)
        .map_err(|e| QlmError::Numerical(format!("eigh failed: {e}")))?;
    // LAPACK works on the transposed (column-major) view, so the returned
    // matrix holds eigenvectors of conj(H); conjugate to restore H v = λ v
    // with eigenvectors as columns. A no-op for real matrices.
    let vectors = vectors.mapv(|x| x.conj());
    Ok(HermEig { values, vectors })
}

/// Largest absolute entry of `values` (spectral norm once `values` are the
/// eigenvalues of a Hermitian matrix).
pub fn spectral_norm(values: &Array1<f64>) -> f64 {
    values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
}

/// Max absolute deviation from hermiticity, relative to the largest entry.
pub fn hermiticity_error(h: &Array2<C64>) -> f64 {
    let n = h.nrows();
    let mut max_dev = 0.0_f64;
    let mut max_entry = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            max_dev = max_dev.max((h[[i, j]] - h[[j, i]].conj()).norm());
            max_entry = max_entry.max(h[[i, j]].norm());
        }
    }
    if max_entry == 0.0 {
        0.0
    } else {
        max_dev / max_entry
    }
}

/// Max absolute entry of `u† u - 1`.
pub fn unitarity_error(u: &Array2<C64>) -> f64 {
    let n = u.nrows();
    let mut max_dev = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..n {
                s += u[[k, i]].conj() * u[[k, j]];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            max_dev = max_dev.max((s - target).norm());
        }
    }
    max_dev
}

/// Inner product `⟨a|b⟩` with the physics convention (conjugate on the left).
pub fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &Array1<C64>) -> f64 {
    inner(v, v).re.sqrt()
}

/// Fix the global phase of a state so its largest-magnitude component is
/// real and positive.
pub fn fix_phase(v: &mut Array1<C64>) {
    let mut idx = 0;
    let mut best = 0.0_f64;
    for (i, x) in v.iter().enumerate() {
        let m = x.norm();
        if m > best {
            best = m;
            idx = i;
        }
    }
    if best == 0.0 {
        return;
    }
    let phase = v[idx] / best;
    let corr = phase.conj();
    v.mapv_inplace(|x| x * corr);
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn eigh_two_level() {
        let h = array![
            [C64::new(1.0, 0.0), C64::new(0.0, -0.5)],
            [C64::new(0.0, 0.5), C64::new(-1.0, 0.0)]
        ];
        let eig = eigh(&h).unwrap();
        let e = (1.0_f64 + 0.25).sqrt();
        assert!((eig.values[0] + e).abs() < 1e-12);
        assert!((eig.values[1] - e).abs() < 1e-12);
    }

    #[test]
    fn eigh_columns_are_eigenvectors_for_complex_input() {
        let n = 5;
        let mut m = Array2::<C64>::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let re = ((i * 5 + j * 2) % 7) as f64 - 3.0;
                let im = ((i + 3 * j) % 4) as f64 - 1.5;
                m[[i, j]] = C64::new(re, if i == j { 0.0 } else { im });
            }
        }
        let h = &m + &m.t().mapv(|x| x.conj());
        let eig = eigh(&h).unwrap();
        for k in 0..n {
            let col = eig.vectors.column(k).to_owned();
            let hv = h.dot(&col);
            let dev: f64 = hv
                .iter()
                .zip(col.iter())
                .map(|(a, b)| (a - b * eig.values[k]).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "column {k} is not an eigenvector: {dev:e}");
        }
        assert!(unitarity_error(&eig.vectors) < 1e-12);
    }

    #[test]
    fn phase_fix_makes_largest_component_real() {
        let mut v = array![C64::new(0.1, 0.2), C64::new(0.0, -0.9)];
        fix_phase(&mut v);
        assert!(v[1].im.abs() < 1e-15);
        assert!(v[1].re > 0.0);
    }
}
