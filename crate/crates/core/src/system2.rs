//! Closed-form time evolution of a cavity with one vibrating mirror.
//!
//! Starting from the joint vacuum, the trilinear interaction between two
//! cavity modes and the mirror generates a pure tripartite Gaussian state
//! whose covariance matrix is known in closed form. The state depends on two
//! dimensionless quantities: the mode-frequency ratio `x > 1` (the ratio of
//! the two optical frequencies fixed by the cavity geometry) and the phase
//! `omega_t` accumulated by the mirror oscillation.
//!
//! Mode ordering of the 3-mode state: `(optic 1, optic 2, mirror)` with the
//! usual interleaved quadratures `(X_1, Y_1, X_2, Y_2, X_d, Y_d)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::{reduce, standard_form, CovarianceMatrix, TwoModeStandardForm};

/// Mode indices of the two optical modes within the tripartite state.
pub const OPTIC_MODES: [usize; 2] = [0, 1];

/// Mode index of the mirror within the tripartite state.
pub const MIRROR_MODE: usize = 2;

/// The frequency ratio must exceed 1 by at least this margin; the
/// coefficients diverge as `x -> 1`.
pub const MIN_RATIO_MARGIN: f64 = 1e-9;

/// Parameters of the vibrating-mirror model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct System2Params {
    coupling_ratio: f64,
    phase: f64,
}

impl System2Params {
    pub fn new(coupling_ratio: f64, phase: f64) -> Result<Self> {
        if !(coupling_ratio.is_finite() && coupling_ratio > 1.0 + MIN_RATIO_MARGIN) {
            return Err(Error::domain(format!(
                "coupling ratio must exceed 1 + {MIN_RATIO_MARGIN:e}, got {coupling_ratio}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::domain(format!("phase must be finite, got {phase}")));
        }
        Ok(Self {
            coupling_ratio,
            phase,
        })
    }

    /// Frequency ratio `x`.
    pub fn coupling_ratio(&self) -> f64 {
        self.coupling_ratio
    }

    /// Accumulated phase `omega_t`.
    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// Bogoliubov coefficients of the closed-form evolution. `k1, k2, k3` weight
/// each mode's own initial operators, `l1` mixes the two optical modes, and
/// `l2, l3` mix each optical mode with the mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionCoefficients {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

/// Evaluates the evolution coefficients at the given parameters:
///
/// ```text
/// k1 = (x^2 - cos wt) / (x^2 - 1)       l1 = x (cos wt - 1) / (x^2 - 1)
/// k2 = (x^2 cos wt - 1) / (x^2 - 1)     l2 = sin wt / sqrt(x^2 - 1)
/// k3 = cos wt                           l3 = x sin wt / sqrt(x^2 - 1)
/// ```
///
/// At `wt = 0` this is the identity (`k = 1`, `l = 0`); it is periodic in
/// `wt` with period `2 pi`.
pub fn evolution_coefficients(p: &System2Params) -> EvolutionCoefficients {
    let x = p.coupling_ratio;
    let (s, c) = p.phase.sin_cos();
    let d = x * x - 1.0;
    EvolutionCoefficients {
        k1: (x * x - c) / d,
        k2: (x * x * c - 1.0) / d,
        k3: c,
        l1: x * (c - 1.0) / d,
        l2: s / d.sqrt(),
        l3: x * s / d.sqrt(),
    }
}

/// Symplectic transformation built from the evolution coefficients, acting
/// on the quadrature vector `(X_1, Y_1, X_2, Y_2, X_d, Y_d)`.
fn evolution_matrix(p: &System2Params) -> DMatrix<f64> {
    let EvolutionCoefficients {
        k1,
        k2,
        k3,
        l1,
        l2,
        l3,
    } = evolution_coefficients(p);
    DMatrix::from_row_slice(
        6,
        6,
        &[
            k1, 0.0, l1, 0.0, l2, 0.0, //
            0.0, k1, 0.0, -l1, 0.0, -l2, //
            -l1, 0.0, k2, 0.0, l3, 0.0, //
            0.0, l1, 0.0, k2, 0.0, l3, //
            l2, 0.0, -l3, 0.0, k3, 0.0, //
            0.0, -l2, 0.0, -l3, 0.0, k3, //
        ],
    )
}

/// Tripartite covariance matrix from the printed closed-form entries.
///
/// The matrix has equal X and Y variances per mode and three nonzero
/// correlation pairs: optic-optic `(+v21, -v21)`, optic1-mirror
/// `(+v31, -v31)`, and optic2-mirror `(+v32, +v32)`; the last pair carries
/// equal signs on both quadratures, so the optic2-mirror reduction is not in
/// standard form as written. The state is pure: all symplectic eigenvalues
/// equal 1/2 and `det V = 1/64`.
pub fn tripartite_cm(p: &System2Params) -> CovarianceMatrix {
    let x = p.coupling_ratio;
    let (s, c) = p.phase.sin_cos();
    let d = x * x - 1.0;
    let x2 = x * x;
    let (s2, c2) = (s * s, c * c);

    let v11 = (x2 * x2 + (1.0 + c2 - 4.0 * c) * x2 + c2 + d * s2) / (d * d);
    let v22 = (x2 * x2 * c2 + (1.0 + c2 - 4.0 * c) * x2 + 1.0 + x2 * d * s2) / (d * d);
    let v33 = (1.0 + x2) * s2 / d + c2;
    let v21 = x * (1.0 + x2) * (1.0 - c).powi(2) / (d * d) + x * s2 / d;
    let v31 = (2.0 * x2 * s - (1.0 + x2) * s * c) / d.powf(1.5) + s * c / d.sqrt();
    let v32 = (2.0 * x * s - (1.0 + x2) * x * s * c) / d.powf(1.5) + x * s * c / d.sqrt();

    let mut v = DMatrix::zeros(6, 6);
    v[(0, 0)] = v11;
    v[(1, 1)] = v11;
    v[(2, 2)] = v22;
    v[(3, 3)] = v22;
    v[(4, 4)] = v33;
    v[(5, 5)] = v33;
    v[(0, 2)] = v21;
    v[(2, 0)] = v21;
    v[(1, 3)] = -v21;
    v[(3, 1)] = -v21;
    v[(0, 4)] = v31;
    v[(4, 0)] = v31;
    v[(1, 5)] = -v31;
    v[(5, 1)] = -v31;
    v[(2, 4)] = v32;
    v[(4, 2)] = v32;
    v[(3, 5)] = v32;
    v[(5, 3)] = v32;
    v /= 2.0;

    CovarianceMatrix::new(v).expect("closed-form tripartite state is physical for x > 1")
}

/// Tripartite covariance matrix obtained independently by conjugating the
/// vacuum with the evolution matrix, `V = S S^T / 2`. Agrees with
/// [`tripartite_cm`] to near machine precision and is kept as a built-in
/// cross-check of the printed entries.
pub fn coefficient_composition_cm(p: &System2Params) -> CovarianceMatrix {
    let s = evolution_matrix(p);
    let v = &s * s.transpose() / 2.0;
    CovarianceMatrix::new(v).expect("composed tripartite state is physical for x > 1")
}

/// Reduced state of the two optical modes, brought to two-mode standard
/// form `(x, y, z)`. The reduction has equal-variance quadratures per mode
/// and an antisymmetric correlation pair, so the pattern check is exact up
/// to rounding.
pub fn optic_optic_cm(p: &System2Params) -> Result<TwoModeStandardForm> {
    standard_form(&reduce(&tripartite_cm(p), &OPTIC_MODES)?)
}
