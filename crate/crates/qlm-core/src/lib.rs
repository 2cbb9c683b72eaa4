//! Simulator for the periodic (1+1)D U(1) spin-1/2 quantum link model and a
//! superconducting-circuit pipeline that realizes one module of it.

pub mod error;
pub mod grid;
pub mod hamiltonian;
pub mod krylov;
pub mod lattice;
pub mod linalg;
pub mod operator;
pub mod quench;
