//! Steady state of two optomechanical cavities driven by a shared two-mode
//! squeezed light source.
//!
//! Each cavity couples its movable mirror to the intracavity field in the
//! beam-splitter (red-sideband) regime; the common squeezed drive correlates
//! the two optical modes and, through the coupling, the two mirrors. The
//! model is fully characterized by the damping rates `kappa` (optical) and
//! `gamma` (mechanical), the coupling (as the rate `G` or the dimensionless
//! cooperativity `C = 4 G^2 / (gamma kappa)`), the squeezing parameter `r`,
//! and the thermal phonon occupation `n_th`.
//!
//! Quadrature ordering of the 4-mode state:
//! `(X_m1, Y_m1, X_m2, Y_m2, X_c1, Y_c1, X_c2, Y_c2)`, mirrors first.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::{solve_lyapunov, CovarianceMatrix, TwoModeStandardForm};

/// Reduced Planck constant in J*s, used by the physical-cavity conversions.
pub const HBAR: f64 = 1.054571817e-34;

/// Mode indices of the mirror pair within the 4-mode steady state.
pub const MIRROR_MODES: [usize; 2] = [0, 1];

/// Mode indices of the optical pair within the 4-mode steady state.
pub const OPTIC_MODES: [usize; 2] = [2, 3];

/// Eigenvalue real parts must lie below this threshold to count as stable.
pub const STABILITY_MARGIN: f64 = -1e-12;

/// Coupling strength, given either directly as the rate `G` or as the
/// cooperativity `C = 4 G^2 / (gamma kappa)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Cooperativity(f64),
    Rate(f64),
}

/// Parameters of the two-cavity model. `kappa` sets the rate scale; all
/// other rates are usually quoted as multiples of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct System1Params {
    kappa: f64,
    gamma: f64,
    coupling: Coupling,
    r: f64,
    n_th: f64,
}

impl System1Params {
    pub fn new(kappa: f64, gamma: f64, coupling: Coupling, r: f64, n_th: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::domain(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::domain(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("r must be nonnegative, got {r}")));
        }
        if !(n_th.is_finite() && n_th >= 0.0) {
            return Err(Error::domain(format!(
                "n_th must be nonnegative, got {n_th}"
            )));
        }
        match coupling {
            Coupling::Cooperativity(c) if !(c.is_finite() && c >= 0.0) => {
                return Err(Error::domain(format!(
                    "cooperativity must be nonnegative, got {c}"
                )));
            }
            Coupling::Rate(g) if !g.is_finite() => {
                return Err(Error::domain(format!(
                    "coupling rate must be finite, got {g}"
                )));
            }
            _ => {}
        }
        Ok(Self {
            kappa,
            gamma,
            coupling,
            r,
            n_th,
        })
    }

    /// Shorthand for the common case of specifying the cooperativity.
    pub fn from_cooperativity(kappa: f64, gamma: f64, c: f64, r: f64, n_th: f64) -> Result<Self> {
        Self::new(kappa, gamma, Coupling::Cooperativity(c), r, n_th)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    /// Cooperativity `C = 4 G^2 / (gamma kappa)`.
    pub fn cooperativity(&self) -> f64 {
        match self.coupling {
            Coupling::Cooperativity(c) => c,
            Coupling::Rate(g) => 4.0 * g * g / (self.gamma * self.kappa),
        }
    }

    /// Coupling rate `G = sqrt(C gamma kappa) / 2`.
    pub fn coupling_rate(&self) -> f64 {
        match self.coupling {
            Coupling::Cooperativity(c) => (c * self.gamma * self.kappa).sqrt() / 2.0,
            Coupling::Rate(g) => g,
        }
    }

    /// Squeezed-bath occupation `N = sinh^2(r)`.
    pub fn squeezed_occupation(&self) -> f64 {
        self.r.sinh().powi(2)
    }

    /// Squeezed-bath correlation `M = sinh(r) cosh(r)`; satisfies
    /// `M^2 = N (N + 1)` exactly (pure squeezed drive).
    pub fn squeezed_correlation(&self) -> f64 {
        self.r.sinh() * self.r.cosh()
    }
}

/// Linear-dynamics generator of the quadrature fluctuations: mechanical
/// damping `-gamma/2` and optical damping `-kappa/2` on the diagonal, with
/// the beam-splitter coupling `+G` (mirrors from fields) and `-G` (fields
/// from mirrors). Every eigenvalue has real part
/// `-(kappa + gamma)/4 +- sqrt((kappa - gamma)^2/16 - G^2)`, so the drift is
/// stable for all parameter values.
pub fn drift_matrix(p: &System1Params) -> DMatrix<f64> {
    let g = p.coupling_rate();
    let mut a = DMatrix::zeros(8, 8);
    for i in 0..4 {
        a[(i, i)] = -p.gamma / 2.0;
        a[(4 + i, 4 + i)] = -p.kappa / 2.0;
        a[(i, 4 + i)] = g;
        a[(4 + i, i)] = -g;
    }
    a
}

/// Stationary noise correlation matrix: thermal mechanical input
/// `gamma (n_th + 1/2)` per mirror quadrature, squeezed optical input
/// `kappa (N + 1/2)` per field quadrature, and the two-mode squeezing
/// cross-correlations `+M kappa` between the optical X quadratures and
/// `-M kappa` between the optical Y quadratures (symmetrized).
pub fn noise_matrix(p: &System1Params) -> DMatrix<f64> {
    let n = p.squeezed_occupation();
    let m = p.squeezed_correlation();
    let mut d = DMatrix::zeros(8, 8);
    for i in 0..4 {
        d[(i, i)] = p.gamma * (p.n_th + 0.5);
        d[(4 + i, 4 + i)] = p.kappa * (n + 0.5);
    }
    d[(4, 6)] = m * p.kappa;
    d[(6, 4)] = m * p.kappa;
    d[(5, 7)] = -m * p.kappa;
    d[(7, 5)] = -m * p.kappa;
    d
}

/// Outcome of a drift-spectrum stability test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub is_stable: bool,
    /// Largest eigenvalue real part of the drift matrix.
    pub max_real_part: f64,
}

/// Stable iff every drift eigenvalue has real part below
/// [`STABILITY_MARGIN`].
pub fn stability_check(p: &System1Params) -> Stability {
    let eigs = drift_matrix(p).complex_eigenvalues();
    let max_real_part = eigs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    Stability {
        is_stable: max_real_part < STABILITY_MARGIN,
        max_real_part,
    }
}

/// Steady-state covariance matrix of the 4-mode system, from the Lyapunov
/// equation `A V + V A^T = -D`. Mirror and optical diagonal blocks agree
/// with [`closed_form_blocks`] to better than 1e-10; the mirror-optical
/// cross block is nonzero for `C > 0` and is only available through this
/// numerical route.
pub fn steady_state_cm(p: &System1Params) -> Result<CovarianceMatrix> {
    let stability = stability_check(p);
    if !stability.is_stable {
        return Err(Error::domain(format!(
            "drift matrix is not stable (max eigenvalue real part {:.3e})",
            stability.max_real_part
        )));
    }
    let v = solve_lyapunov(&drift_matrix(p), &noise_matrix(p))?;
    CovarianceMatrix::new(v)
}

/// The two closed-form diagonal blocks of the steady state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormBlocks {
    pub mirror_mirror: TwoModeStandardForm,
    pub optic_optic: TwoModeStandardForm,
}

/// Evaluates the closed-form block elements of the steady state:
///
/// ```text
/// v11 = [kappa C cosh(2r) + (1 + 2 n_th)(kappa + gamma (1 + C))] / s
/// v13 = kappa C sinh(2r) / s
/// v22 = [(gamma + kappa (1 + C)) cosh(2r) + (1 + 2 n_th) gamma C] / s
/// v57 = (gamma + kappa (1 + C)) sinh(2r) / s
/// ```
///
/// with `s = 2 (kappa + gamma)(1 + C)`. The mirror pair is `(v11, v11, v13)`
/// and the optical pair `(v22, v22, v57)`. Both blocks are physical for any
/// valid parameters, with the vacuum `(1/2, 1/2, 0)` at `r = n_th = C*r = 0`.
pub fn closed_form_blocks(p: &System1Params) -> ClosedFormBlocks {
    let (kappa, gamma) = (p.kappa, p.gamma);
    let c = p.cooperativity();
    let ch = (2.0 * p.r).cosh();
    let sh = (2.0 * p.r).sinh();
    let s = 2.0 * (kappa + gamma) * (1.0 + c);
    let v11 = (kappa * c * ch + (1.0 + 2.0 * p.n_th) * (kappa + gamma * (1.0 + c))) / s;
    let v13 = kappa * c * sh / s;
    let v22 = ((gamma + kappa * (1.0 + c)) * ch + (1.0 + 2.0 * p.n_th) * gamma * c) / s;
    let v57 = (gamma + kappa * (1.0 + c)) * sh / s;
    ClosedFormBlocks {
        mirror_mirror: TwoModeStandardForm::new(v11, v11, v13)
            .expect("closed-form mirror block is physical for valid parameters"),
        optic_optic: TwoModeStandardForm::new(v22, v22, v57)
            .expect("closed-form optical block is physical for valid parameters"),
    }
}

/// Laboratory description of one cavity, for converting pump power into a
/// cooperativity. All fields in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalCavitySpec {
    /// Pump power in W.
    pub pump_power: f64,
    /// Mirror effective mass in kg.
    pub mass: f64,
    /// Mechanical angular frequency in rad/s.
    pub omega_m: f64,
    /// Cavity angular frequency in rad/s.
    pub omega_c: f64,
    /// Laser angular frequency in rad/s.
    pub omega_l: f64,
    /// Cavity length in m.
    pub length: f64,
    /// Optical damping rate in rad/s.
    pub kappa: f64,
    /// Mechanical damping rate in rad/s.
    pub gamma: f64,
}

impl PhysicalCavitySpec {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("pump_power", self.pump_power),
            ("mass", self.mass),
            ("omega_m", self.omega_m),
            ("omega_c", self.omega_c),
            ("omega_l", self.omega_l),
            ("length", self.length),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Cooperativity from laboratory parameters:
/// `C = 8 Omega_c^2 P / (m gamma Omega_m Omega_L L^2 [(kappa/2)^2 + Omega_m^2])`.
pub fn cooperativity_from_physical(s: &PhysicalCavitySpec) -> f64 {
    8.0 * s.omega_c.powi(2) * s.pump_power
        / (s.mass
            * s.gamma
            * s.omega_m
            * s.omega_l
            * s.length.powi(2)
            * ((s.kappa / 2.0).powi(2) + s.omega_m.powi(2)))
}

/// Effective coupling rate from laboratory parameters,
/// `G = g_0 |<c>|` with the single-photon coupling
/// `g_0 = (Omega_c / L) sqrt(hbar / (m Omega_m))` and the steady field
/// amplitude `|<c>| = sqrt(2 kappa P / (hbar Omega_L)) / sqrt((kappa/2)^2 + Omega_m^2)`.
/// Satisfies `4 G^2 / (gamma kappa) = `[`cooperativity_from_physical`]
/// identically.
pub fn coupling_rate_from_physical(s: &PhysicalCavitySpec) -> f64 {
    let g0 = s.omega_c / s.length * (HBAR / (s.mass * s.omega_m)).sqrt();
    let amplitude = (2.0 * s.kappa * s.pump_power / (HBAR * s.omega_l)).sqrt()
        / ((s.kappa / 2.0).powi(2) + s.omega_m.powi(2)).sqrt();
    g0 * amplitude
}
