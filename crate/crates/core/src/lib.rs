//! Gaussian-state toolkit for optomechanical entanglement and work
//! extraction.
//!
//! The crate models two systems. [`system1`] computes the steady state of
//! two optomechanical cavities sharing a two-mode squeezed drive, both by
//! solving the Lyapunov equation and from closed-form block expressions.
//! [`system2`] evaluates the closed-form time evolution of a single cavity
//! with a vibrating mirror, a pure tripartite state of two optical modes and
//! the mirror.
//!
//! [`gaussian`] supplies the shared covariance-matrix machinery (Lyapunov
//! solver, symplectic spectra, logarithmic negativity, reductions, two-mode
//! standard form) and [`thermo`] the measurement-based work extraction
//! quantities with their separable and maximal bounds.
//!
//! Conventions: vacuum quadrature variance `1/2`, quadratures interleaved as
//! `(X_1, Y_1, ..., X_n, Y_n)`, work in units of `k_B T` (natural log).

pub mod error;
pub mod gaussian;
pub mod system1;
pub mod system2;
pub mod thermo;

pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, TwoModeStandardForm};
pub use thermo::{MeasurementKind, WitnessVerdict, WorkReport};
