//! Complex operators in a declared basis, stored dense or as sparse rows.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{QlmError, Result};
use crate::linalg;

/// Which basis the matrix entries refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisTag {
    /// The `G_n = 0` sector of an N-site quantum link model.
    GaugeSector { n_sites: usize },
    /// Product of `n_modes` truncated oscillator modes with `n_levels` each.
    FockProduct { n_modes: usize, n_levels: usize },
    /// Product of spin-1/2s (z basis, index bit 0 ⇔ z = +1).
    SpinHalf { n_spins: usize },
}

/// Sparse rows in CSR form.
#[derive(Debug, Clone)]
pub struct SparseRows {
    pub dim: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub values: Vec<C64>,
}

impl SparseRows {
    /// Build from (row, col, value) triplets; duplicate entries are summed.
    pub fn from_triplets(dim: usize, triplets: &[(usize, usize, C64)]) -> Self {
        let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
        for &(r, c, v) in triplets {
            rows[r].push((c, v));
        }
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut last: Option<usize> = None;
            for &(c, v) in row.iter() {
                if last == Some(c) {
                    let n = values.len();
                    values[n - 1] += v;
                } else {
                    indices.push(c);
                    values.push(v);
                    last = Some(c);
                }
            }
            indptr.push(indices.len());
        }
        Self { dim, indptr, indices, values }
    }

    pub fn matvec(&self, x: &Array1<C64>, out: &mut Array1<C64>) {
        for r in 0..self.dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k]];
            }
            out[r] = acc;
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for r in 0..self.dim {
            for k in self.indptr[r]..self.indptr[r + 1] {
                m[[r, self.indices[k]]] += self.values[k];
            }
        }
        m
    }
}

#[derive(Debug, Clone)]
pub enum Storage {
    Dense(Array2<C64>),
    Sparse(SparseRows),
}

/// A complex matrix tagged with the basis it acts in.
#[derive(Debug, Clone)]
pub struct ComplexOperator {
    pub basis: BasisTag,
    storage: Storage,
}

impl ComplexOperator {
    pub fn from_dense(basis: BasisTag, m: Array2<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        Self { basis, storage: Storage::Dense(m) }
    }

    pub fn from_triplets(
        basis: BasisTag,
        dim: usize,
        triplets: &[(usize, usize, C64)],
    ) -> Self {
        Self {
            basis,
            storage: Storage::Sparse(SparseRows::from_triplets(dim, triplets)),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.storage {
            Storage::Dense(m) => m.nrows(),
            Storage::Sparse(s) => s.dim,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn sparse(&self) -> Option<&SparseRows> {
        match &self.storage {
            Storage::Sparse(s) => Some(s),
            Storage::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        match &self.storage {
            Storage::Dense(m) => m.clone(),
            Storage::Sparse(s) => s.to_dense(),
        }
    }

    pub fn matvec(&self, x: &Array1<C64>) -> Array1<C64> {
        let mut out = Array1::zeros(self.dim());
        match &self.storage {
            Storage::Dense(m) => out.assign(&m.dot(x)),
            Storage::Sparse(s) => s.matvec(x, &mut out),
        }
        out
    }

    pub fn expectation(&self, psi: &Array1<C64>) -> C64 {
        linalg::inner(psi, &self.matvec(psi))
    }

    /// Relative deviation from hermiticity (max entry scale).
    pub fn hermiticity_error(&self) -> f64 {
        linalg::hermiticity_error(&self.to_dense())
    }

    /// Max deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        linalg::unitarity_error(&self.to_dense())
    }

    pub fn require_same_space(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis || self.dim() != other.dim() {
            return Err(QlmError::Config(
                "operators act in different bases".into(),
            ));
        }
        Ok(())
    }

    /// `[A, B]` as a dense matrix.
    pub fn commutator(&self, other: &Self) -> Array2<C64> {
        let a = self.to_dense();
        let b = other.to_dense();
        a.dot(&b) - b.dot(&a)
    }
}

/// Max absolute entry, a cheap matrix norm for exact-zero checks.
pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.norm()))
}
