//! Gauge-invariant basis of the periodic U(1) quantum link model.
//!
//! Matter spins live on sites, link spins on bonds; both are spin-1/2 with
//! Pauli (±1) z eigenvalues. Physical states satisfy the Gauss law
//! `G_n = S^z_{n-1,n} - S^z_{n,n+1} + σ^z_n - (-1)^n = 0` at every site, so
//! the matter configuration is a function of the link configuration and a
//! basis state is fully specified by its link pattern.

use serde::Serialize;
use std::collections::HashMap;

use crate::error::{QlmError, Result};

/// Problem definition: lattice size and quench Hamiltonian couplings.
///
/// Energies are in units of inverse time (ħ = 1); dimensionless scans use
/// `J/m` and `t·m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeConfig {
    /// Number of matter sites, even and ≥ 2.
    pub n_sites: usize,
    /// Staggered mass m.
    pub mass: f64,
    /// Matter-gauge coupling J = 1/a, strictly positive.
    pub coupling: f64,
}

impl LatticeConfig {
    pub fn new(n_sites: usize, mass: f64, coupling: f64) -> Result<Self> {
        if n_sites < 2 || n_sites % 2 != 0 {
            return Err(QlmError::Config(format!(
                "n_sites must be even and >= 2, got {n_sites}"
            )));
        }
        if !(coupling > 0.0) {
            return Err(QlmError::Config(format!(
                "coupling J must be > 0, got {coupling}"
            )));
        }
        if !mass.is_finite() {
            return Err(QlmError::Config("mass must be finite".into()));
        }
        Ok(Self { n_sites, mass, coupling })
    }

    /// The post-quench Hamiltonian parameters (m → −m).
    pub fn quenched(&self) -> Self {
        Self { mass: -self.mass, ..*self }
    }
}

/// One Gauss-law-valid configuration. Only the link pattern is stored
/// canonically; matter values are derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisState {
    /// Packed link pattern: bit n set ⇔ link (n, n+1) has z = +1.
    pub encoding: u32,
    /// z eigenvalue (±1) of link (n, n+1).
    pub link_z: Vec<i8>,
    /// z eigenvalue (±1) of the matter spin at site n, from the Gauss law.
    pub matter_z: Vec<i8>,
}

/// Matter value demanded by the Gauss law at site `n`, which may fall
/// outside {−1, +1} for invalid link patterns.
#[inline]
pub fn gauss_matter(n_sites: usize, link_z: &[i8], n: usize) -> i32 {
    let stagger = if n % 2 == 0 { 1 } else { -1 };
    let prev = link_z[(n + n_sites - 1) % n_sites] as i32;
    stagger - prev + link_z[n] as i32
}

fn decode_links(n_sites: usize, enc: u32) -> Vec<i8> {
    (0..n_sites)
        .map(|n| if enc >> n & 1 == 1 { 1 } else { -1 })
        .collect()
}

fn try_state(n_sites: usize, enc: u32) -> Option<BasisState> {
    let link_z = decode_links(n_sites, enc);
    let mut matter_z = Vec::with_capacity(n_sites);
    for n in 0..n_sites {
        let m = gauss_matter(n_sites, &link_z, n);
        if m != 1 && m != -1 {
            return None;
        }
        matter_z.push(m as i8);
    }
    Some(BasisState { encoding: enc, link_z, matter_z })
}

/// The ordered gauge-invariant basis with a link-pattern → index lookup.
#[derive(Debug, Clone)]
pub struct GaugeBasis {
    pub n_sites: usize,
    /// States in ascending `encoding` order.
    pub states: Vec<BasisState>,
    index: HashMap<u32, usize>,
}

/// Enumerate the `G_n = 0` sector by scanning all 2^N link patterns.
pub fn enumerate_gauge_basis(n_sites: usize) -> Result<GaugeBasis> {
    if n_sites < 2 || n_sites % 2 != 0 {
        return Err(QlmError::Config(format!(
            "n_sites must be even and >= 2, got {n_sites}"
        )));
    }
    if n_sites > 24 {
        return Err(QlmError::Config(format!(
            "n_sites = {n_sites} exceeds the enumeration guard (24)"
        )));
    }
    let states: Vec<BasisState> = (0..(1_u32 << n_sites))
        .filter_map(|enc| try_state(n_sites, enc))
        .collect();
    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.encoding, i))
        .collect();
    Ok(GaugeBasis { n_sites, states, index })
}

impl GaugeBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Basis index of a packed link pattern, if it is in the sector.
    pub fn index_of(&self, encoding: u32) -> Option<usize> {
        self.index.get(&encoding).copied()
    }

    pub fn state(&self, idx: usize) -> &BasisState {
        &self.states[idx]
    }

    /// JSON dump of the basis for debugging.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.states).expect("basis serializes")
    }
}
