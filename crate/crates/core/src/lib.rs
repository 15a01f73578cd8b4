//! # pagelab
//!
//! Numerics for the average entanglement entropy of random pure states.
//!
//! The crate samples pure states from the unitarily invariant (Haar) measure,
//! reduces them to subsystems, and compares Monte Carlo averages of subsystem
//! purity and entropy with closed-form expectations.
//!
//! ## Layout
//!
//! - [`state`]: pure states, density matrices, bipartitions, partial trace,
//!   Schmidt decomposition, and the single-qubit Bloch vector.
//! - [`entropy`]: spectra, Rényi and von Neumann entropies, purity.
//! - [`sampler`]: reproducible Haar and flat-simplex sampling.
//! - [`pauli`]: Pauli strings and the predictability budget.
//! - [`lab`]: Page-curve estimation, analytic references, concentration.
//! - [`stats`]: compensated accumulators and ensemble estimates.
//! - [`report`]: CSV, JSON and SVG emitters for curve results.
//!
//! ## Conventions
//!
//! Qubit `0` is the most significant bit of a computational-basis index: for
//! `n` qubits, qubit `q` is bit `n - 1 - q` of the index. Every module follows
//! this rule, including the base-4 Pauli string codes.

#![forbid(unsafe_code)]

pub mod entropy;
pub mod error;
pub mod lab;
pub mod pauli;
pub mod report;
pub mod sampler;
pub mod state;
pub mod stats;

pub use error::{Error, Result};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Largest qubit count supported by the dense representations.
pub const MAX_QUBITS: usize = 14;
