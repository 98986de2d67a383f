//! Symplectic linear algebra over quadrature covariance matrices.
//!
//! Conventions used across the crate: an `n`-mode state is a real symmetric
//! `2n x 2n` matrix over the quadratures `(X_1, Y_1, ..., X_n, Y_n)`, and the
//! vacuum has variance 1/2 in every quadrature. Entanglement and work
//! formulas operate on the sparse two-mode pattern
//!
//! ```text
//! [ x  0  z  0 ]
//! [ 0  x  0 -z ]
//! [ z  0  y  0 ]
//! [ 0 -z  0  y ]
//! ```
//!
//! carried as [`TwoModeStandardForm`].

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Variance of each vacuum quadrature in the convention used here.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Largest asymmetry accepted when ingesting a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Largest off-pattern deviation accepted by [`standard_form`].
pub const PATTERN_TOL: f64 = 1e-9;

/// Slack below the vacuum variance tolerated in physicality checks.
pub const PHYSICALITY_SLACK: f64 = 1e-9;

/// Symmetric second-moment matrix of an `n`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    mat: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a `2n x 2n` matrix, checking shape, finiteness, and symmetry
    /// (entries may differ across the diagonal by at most [`SYMMETRY_TOL`];
    /// the stored matrix is exactly symmetrized).
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 || !mat.nrows().is_multiple_of(2) {
            return Err(Error::domain(format!(
                "covariance matrix must be 2n x 2n, got {} x {}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("covariance matrix has non-finite entries"));
        }
        let asym = (&mat - mat.transpose()).abs().max();
        if asym > SYMMETRY_TOL {
            return Err(Error::domain(format!(
                "covariance matrix asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}"
            )));
        }
        let sym = (&mat + mat.transpose()) * 0.5;
        Ok(Self { mat: sym })
    }

    /// The `n`-mode vacuum state, `I/2`.
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            mat: DMatrix::identity(2 * n_modes, 2 * n_modes) * VACUUM_VARIANCE,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.mat.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Whether every symplectic eigenvalue is at least
    /// `1/2 - `[`PHYSICALITY_SLACK`].
    pub fn is_physical(&self) -> bool {
        match symplectic_eigenvalues(self) {
            Ok(nus) => nus
                .iter()
                .all(|nu| *nu >= VACUUM_VARIANCE - PHYSICALITY_SLACK),
            Err(_) => false,
        }
    }
}

/// The triple `(x, y, z)` of the sparse two-mode pattern: `x` and `y` are the
/// per-quadrature variances of modes A and B, `z` is the X-X correlation
/// (the Y-Y correlation is `-z`).
///
/// Construction validates physicality, so the analysis functions taking a
/// standard form are total. All formulas downstream depend on `z` only
/// through `z^2`; the stored sign is whatever the source state carried.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeStandardForm {
    x: f64,
    y: f64,
    z: f64,
}

impl TwoModeStandardForm {
    /// Validates `x, y >= 1/2 - 1e-9` and `x*y - z^2 > 0`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::domain("standard form entries must be finite"));
        }
        let floor = VACUUM_VARIANCE - PHYSICALITY_SLACK;
        if x < floor || y < floor {
            return Err(Error::domain(format!(
                "local variances must be at least 1/2, got x={x}, y={y}"
            )));
        }
        if x * y - z * z <= 0.0 {
            return Err(Error::domain(format!(
                "unphysical correlations: x*y - z^2 = {} is not positive",
                x * y - z * z
            )));
        }
        Ok(Self { x, y, z })
    }

    /// The two-mode vacuum, `(1/2, 1/2, 0)`.
    pub fn vacuum() -> Self {
        Self {
            x: VACUUM_VARIANCE,
            y: VACUUM_VARIANCE,
            z: 0.0,
        }
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r`:
    /// `(cosh(2r)/2, cosh(2r)/2, sinh(2r)/2)`.
    pub fn two_mode_squeezed_vacuum(r: f64) -> Result<Self> {
        Self::new(
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).sinh() / 2.0,
        )
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Embeds the pattern back into a full 4x4 [`CovarianceMatrix`].
    pub fn to_covariance(&self) -> CovarianceMatrix {
        let (x, y, z) = (self.x, self.y, self.z);
        let mat = DMatrix::from_row_slice(
            4,
            4,
            &[
                x, 0.0, z, 0.0, //
                0.0, x, 0.0, -z, //
                z, 0.0, y, 0.0, //
                0.0, -z, 0.0, y,
            ],
        );
        CovarianceMatrix { mat }
    }
}

/// Block-diagonal symplectic form, `n` copies of `[[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for i in 0..n_modes {
        omega[(2 * i, 2 * i + 1)] = 1.0;
        omega[(2 * i + 1, 2 * i)] = -1.0;
    }
    omega
}

/// Solves `A V + V A^T = -D` for the unique symmetric `V` by dense Kronecker
/// vectorization: `(I (x) A + A (x) I) vec(V) = -vec(D)`.
///
/// The matrices here are at most 8x8, so the direct `(2n)^2 x (2n)^2` solve
/// is exact to machine precision and trivially cheap. Fails with
/// [`Error::SingularSystem`] when the vectorized system is rank-deficient,
/// which happens exactly when `A` has eigenvalue pairs summing to zero (an
/// unstable or marginally stable drift).
pub fn solve_lyapunov(a: &DMatrix<f64>, d: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    if a.ncols() != n || d.nrows() != n || d.ncols() != n {
        return Err(Error::domain(format!(
            "Lyapunov operands must be square and matching, got A {}x{}, D {}x{}",
            a.nrows(),
            a.ncols(),
            d.nrows(),
            d.ncols()
        )));
    }
    let id = DMatrix::<f64>::identity(n, n);
    let system = id.kronecker(a) + a.kronecker(&id);
    let rhs = DVector::from_column_slice(d.as_slice()) * -1.0;
    let lu = system.lu();
    if !lu.is_invertible() {
        return Err(Error::SingularSystem);
    }
    let vec_v = lu.solve(&rhs).ok_or(Error::SingularSystem)?;
    let v = DMatrix::from_column_slice(n, n, vec_v.as_slice());
    Ok((&v + v.transpose()) * 0.5)
}

/// Symplectic spectrum of a positive-definite covariance matrix, ascending,
/// one entry per mode.
///
/// Uses the Cholesky route: for `V = L L^T`, the singular values of
/// `L^T Omega L` are the symplectic eigenvalues of `V`, each appearing
/// twice. For a pure `n`-mode state all entries equal 1/2.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    let chol = v
        .matrix()
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let k = l.transpose() * symplectic_form(v.n_modes()) * &l;
    let svd = k.svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| a.partial_cmp(b).expect("singular values are finite"));
    Ok(sv
        .chunks_exact(2)
        .map(|pair| (pair[0] + pair[1]) / 2.0)
        .collect())
}

/// Minimum symplectic eigenvalue of the partial transpose of a standard-form
/// state.
///
/// The textbook expression `sqrt((L - sqrt(L^2 - 4 det V)) / 2)` with
/// `L = x^2 + y^2 + 2 z^2` and `det V = (x y - z^2)^2` cancels
/// catastrophically for strongly squeezed states, so the algebraically
/// identical cancellation-free form is used instead: the discriminant
/// factors as `L^2 - 4 det V = (x + y)^2 ((x - y)^2 + 4 z^2)`, giving
///
/// ```text
/// theta_minus = |x y - z^2| * sqrt(2 / (L + (x + y) * sqrt((x - y)^2 + 4 z^2)))
/// ```
///
/// which is exact to machine precision and manifestly nonnegative, so the
/// printed formula's guard against a slightly negative discriminant never
/// arises. For symmetric states (`x = y`) it reduces to `x - |z|` exactly.
pub fn min_pt_symplectic_eigenvalue(f: &TwoModeStandardForm) -> f64 {
    let (x, y, z) = (f.x(), f.y(), f.z());
    let root = ((x - y) * (x - y) + 4.0 * z * z).sqrt();
    let lambda = x * x + y * y + 2.0 * z * z;
    (x * y - z * z).abs() * (2.0 / (lambda + (x + y) * root)).sqrt()
}

/// Logarithmic negativity `max(0, -ln(2 theta_minus))`; strictly positive
/// exactly when the partial-transpose eigenvalue drops below the vacuum
/// value 1/2.
pub fn logarithmic_negativity(f: &TwoModeStandardForm) -> f64 {
    let nu = min_pt_symplectic_eigenvalue(f);
    (-(2.0 * nu).ln()).max(0.0)
}

/// Second-order Renyi entropy `(1/2) ln(det V)`.
///
/// In the vacuum-1/2 convention this is offset-shifted (the vacuum value is
/// negative); only entropy differences are physically meaningful.
pub fn renyi2_entropy(v: &CovarianceMatrix) -> Result<f64> {
    let chol = v
        .matrix()
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?;
    Ok(chol.l().diagonal().iter().map(|d| d.ln()).sum())
}

/// Principal submatrix on the selected modes, in the order given.
pub fn reduce(v: &CovarianceMatrix, modes: &[usize]) -> Result<CovarianceMatrix> {
    let n = v.n_modes();
    for (i, m) in modes.iter().enumerate() {
        if *m >= n || modes[..i].contains(m) {
            return Err(Error::IndexOutOfRange {
                index: *m,
                n_modes: n,
            });
        }
    }
    let rows: Vec<usize> = modes.iter().flat_map(|m| [2 * m, 2 * m + 1]).collect();
    let k = rows.len();
    let mut out = DMatrix::zeros(k, k);
    for (i, ri) in rows.iter().enumerate() {
        for (j, rj) in rows.iter().enumerate() {
            out[(i, j)] = v.matrix()[(*ri, *rj)];
        }
    }
    Ok(CovarianceMatrix { mat: out })
}

/// Reads `(x, y, z)` off a two-mode matrix matching the sparse pattern
/// within [`PATTERN_TOL`]; deviations beyond that raise
/// [`Error::PatternMismatch`] to signal that the general-form machinery
/// (out of scope here) would be needed.
pub fn standard_form(v: &CovarianceMatrix) -> Result<TwoModeStandardForm> {
    if v.n_modes() != 2 {
        return Err(Error::domain(format!(
            "standard form requires 2 modes, got {}",
            v.n_modes()
        )));
    }
    let m = v.matrix();
    let x = (m[(0, 0)] + m[(1, 1)]) / 2.0;
    let y = (m[(2, 2)] + m[(3, 3)]) / 2.0;
    let z = (m[(0, 2)] - m[(1, 3)]) / 2.0;
    let pattern = TwoModeStandardForm { x, y, z }.to_covariance();
    let deviation = (m - pattern.matrix()).abs().max();
    if deviation > PATTERN_TOL {
        return Err(Error::PatternMismatch {
            deviation,
            tolerance: PATTERN_TOL,
        });
    }
    TwoModeStandardForm::new(x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lyapunov_scalar_balance() {
        let a = DMatrix::from_row_slice(1, 1, &[-1.0]);
        let d = DMatrix::from_row_slice(1, 1, &[2.0]);
        let v = solve_lyapunov(&a, &d).unwrap();
        assert_abs_diff_eq!(v[(0, 0)], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn lyapunov_decoupled_channels() {
        let a = DMatrix::from_diagonal(&DVector::from_column_slice(&[-0.7, -3.0]));
        let d = DMatrix::from_diagonal(&DVector::from_column_slice(&[1.1, 0.4]));
        let v = solve_lyapunov(&a, &d).unwrap();
        assert_abs_diff_eq!(v[(0, 0)], 1.1 / 1.4, epsilon = 1e-14);
        assert_abs_diff_eq!(v[(1, 1)], 0.4 / 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v[(0, 1)], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn lyapunov_rejects_unstable_drift() {
        let a = DMatrix::from_row_slice(1, 1, &[0.0]);
        let d = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert_eq!(solve_lyapunov(&a, &d), Err(Error::SingularSystem));
    }

    #[test]
    fn lyapunov_rejects_shape_mismatch() {
        let a = DMatrix::zeros(2, 3);
        let d = DMatrix::zeros(2, 2);
        assert!(matches!(solve_lyapunov(&a, &d), Err(Error::DomainError(_))));
    }

    #[test]
    fn vacuum_symplectic_spectrum() {
        let v = CovarianceMatrix::vacuum(3);
        let nus = symplectic_eigenvalues(&v).unwrap();
        assert_eq!(nus.len(), 3);
        for nu in nus {
            assert_abs_diff_eq!(nu, 0.5, epsilon = 1e-12);
        }
        assert!(v.is_physical());
    }

    #[test]
    fn thermal_symplectic_spectrum() {
        let n_th = 2.3;
        let v = CovarianceMatrix::new(DMatrix::identity(2, 2) * (n_th + 0.5)).unwrap();
        let nus = symplectic_eigenvalues(&v).unwrap();
        assert_eq!(nus.len(), 1);
        assert_abs_diff_eq!(nus[0], n_th + 0.5, epsilon = 1e-12);
    }

    #[test]
    fn not_positive_definite_is_reported() {
        let v = CovarianceMatrix::new(DMatrix::identity(2, 2) * -1.0).unwrap();
        assert_eq!(symplectic_eigenvalues(&v), Err(Error::NotPositiveDefinite));
        assert_eq!(renyi2_entropy(&v), Err(Error::NotPositiveDefinite));
        assert!(!v.is_physical());
    }

    #[test]
    fn covariance_rejects_asymmetry_and_odd_dims() {
        let mut m = DMatrix::identity(4, 4);
        m[(0, 1)] = 1e-6;
        assert!(CovarianceMatrix::new(m).is_err());
        assert!(CovarianceMatrix::new(DMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn pt_eigenvalue_vacuum() {
        assert_abs_diff_eq!(
            min_pt_symplectic_eigenvalue(&TwoModeStandardForm::vacuum()),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(logarithmic_negativity(&TwoModeStandardForm::vacuum()), 0.0);
    }

    #[test]
    fn pt_eigenvalue_symmetric_reduction() {
        let f = TwoModeStandardForm::new(1.9, 1.9, 1.2).unwrap();
        assert_abs_diff_eq!(min_pt_symplectic_eigenvalue(&f), 1.9 - 1.2, epsilon = 1e-14);
    }

    #[test]
    fn squeezed_vacuum_negativity_is_twice_r() {
        for r in [0.5, 1.0, 2.0] {
            let f = TwoModeStandardForm::two_mode_squeezed_vacuum(r).unwrap();
            assert_abs_diff_eq!(logarithmic_negativity(&f), 2.0 * r, epsilon = 1e-10);
            assert_abs_diff_eq!(
                min_pt_symplectic_eigenvalue(&f),
                (-2.0 * r).exp() / 2.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn negativity_threshold_continuity() {
        let x = 1.3;
        for sign in [-1.0, 1.0] {
            let z = x - 0.5 + sign * 1e-9;
            let f = TwoModeStandardForm::new(x, x, z).unwrap();
            assert!(logarithmic_negativity(&f).abs() < 1e-8);
        }
    }

    #[test]
    fn renyi2_of_simple_states() {
        let v = CovarianceMatrix::vacuum(2);
        assert_abs_diff_eq!(renyi2_entropy(&v).unwrap(), -(4.0f64.ln()), epsilon = 1e-13);
        let nu = 1.7;
        let v = CovarianceMatrix::new(DMatrix::identity(4, 4) * nu).unwrap();
        assert_abs_diff_eq!(renyi2_entropy(&v).unwrap(), 2.0 * nu.ln(), epsilon = 1e-13);
    }

    #[test]
    fn reduce_selects_modes() {
        let v = CovarianceMatrix::vacuum(3);
        let r = reduce(&v, &[0, 1]).unwrap();
        assert_eq!(r, CovarianceMatrix::vacuum(2));
        assert_eq!(
            reduce(&v, &[0, 3]),
            Err(Error::IndexOutOfRange {
                index: 3,
                n_modes: 3
            })
        );
        assert_eq!(
            reduce(&v, &[1, 1]),
            Err(Error::IndexOutOfRange {
                index: 1,
                n_modes: 3
            })
        );
    }

    #[test]
    fn standard_form_round_trip() {
        let f = TwoModeStandardForm::new(1.25, 0.8, -0.55).unwrap();
        let g = standard_form(&f.to_covariance()).unwrap();
        assert_eq!(f, g);
        assert_eq!(
            standard_form(&CovarianceMatrix::vacuum(2)).unwrap(),
            TwoModeStandardForm::vacuum()
        );
    }

    #[test]
    fn standard_form_rejects_off_pattern() {
        let mut m = TwoModeStandardForm::new(1.25, 0.8, 0.55)
            .unwrap()
            .to_covariance()
            .matrix()
            .clone();
        m[(0, 1)] = 1e-6;
        m[(1, 0)] = 1e-6;
        let v = CovarianceMatrix::new(m).unwrap();
        assert!(matches!(
            standard_form(&v),
            Err(Error::PatternMismatch { .. })
        ));
    }

    #[test]
    fn standard_form_rejects_wrong_mode_count() {
        assert!(matches!(
            standard_form(&CovarianceMatrix::vacuum(3)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn unphysical_forms_are_rejected() {
        assert!(TwoModeStandardForm::new(0.4, 1.0, 0.0).is_err());
        assert!(TwoModeStandardForm::new(1.0, 1.0, 1.0).is_err());
        assert!(TwoModeStandardForm::new(1.0, f64::NAN, 0.0).is_err());
    }
}
