//! The `optowork check` suite: every cross-module identity the library
//! promises, evaluated on its stated grids with the worst residual reported
//! per check.
//!
//! Checks are pure recomputations against independent routes (Lyapunov
//! solve vs closed forms, coefficient composition vs printed entries,
//! conditional-state determinants vs work formulas), so a failure localizes
//! the module that drifted.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use optowork_core::gaussian::{
    logarithmic_negativity, min_pt_symplectic_eigenvalue, renyi2_entropy, solve_lyapunov,
    symplectic_eigenvalues, CovarianceMatrix, TwoModeStandardForm,
};
use optowork_core::system1::{
    closed_form_blocks, cooperativity_from_physical, coupling_rate_from_physical, drift_matrix,
    noise_matrix, stability_check, steady_state_cm, PhysicalCavitySpec, System1Params,
};
use optowork_core::system2::{
    coefficient_composition_cm, optic_optic_cm, tripartite_cm, System2Params,
};
use optowork_core::thermo::{
    conditional_cm, work_double, work_max, work_separable_bound, work_single,
    DoubleMeasurementSpec, MeasurementKind, MeasurementSpec,
};

use crate::config::SweepConfig;
use crate::sweep::{run_sweep, SweepOptions};

const SEED: u64 = 0x6f70746f776f726b;

/// One named check: passes iff the worst observed residual stays within the
/// stated tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

/// Runs the whole suite. Deterministic: random samples use a fixed seed.
pub fn run_self_check() -> Vec<CheckResult> {
    let mut results = Vec::new();
    let mut push = |name: &'static str, residual: f64, tolerance: f64| {
        results.push(CheckResult {
            name,
            residual,
            tolerance,
        });
    };

    push(
        "lyapunov_vs_closed_form",
        lyapunov_vs_closed_form_residual(noise_matrix),
        1e-10,
    );
    push(
        "lyapunov_equation_residual",
        lyapunov_equation_residual(),
        1e-10,
    );
    push("steady_state_physicality", steady_state_physicality(), 1e-9);
    push("vacuum_fixed_point", vacuum_fixed_point(), 1e-12);
    push(
        "drift_eigenvalue_structure",
        drift_eigenvalue_structure(),
        1e-12,
    );
    push(
        "cooperativity_route_consistency",
        cooperativity_route_consistency(),
        1e-9,
    );
    push("tmsv_calibration", tmsv_calibration(), 1e-10);
    push(
        "partial_transpose_eigenvalue",
        partial_transpose_eigenvalue(),
        1e-12,
    );
    push("renyi2_determinant", renyi2_determinant(), 1e-12);
    push(
        "system2_route_equivalence",
        system2_route_equivalence(),
        1e-12,
    );
    push("system2_purity", system2_purity(), 1e-9);
    push("system2_determinant", system2_determinant(), 1e-9);
    push("system2_periodicity", system2_periodicity(), 1e-12);
    push(
        "system2_mirror_decoupling",
        system2_mirror_decoupling(),
        1e-12,
    );
    push(
        "worked_point_standard_form",
        worked_point_standard_form(),
        1e-12,
    );
    push("worked_point_negativity", worked_point_negativity(), 1e-10);
    push("angle_identity", angle_identity(), 1e-12);
    push("backaction_consistency", backaction_consistency(), 1e-12);
    push(
        "sequential_heterodyne_work",
        sequential_heterodyne_work(),
        1e-12,
    );
    push("sep_bound_identity", sep_bound_identity(), 1e-12);
    push("witness_consistency", witness_consistency(), 0.0);
    push("homodyne_bound_ordering", homodyne_bound_ordering(), 1e-12);
    push("monotonic_trends", monotonic_trends(), 1e-12);
    results
}

/// Renders the per-check report plus a summary line; the flag is true iff
/// everything passed.
pub fn render_report(results: &[CheckResult]) -> (String, bool) {
    let mut out = String::new();
    let mut passed = 0;
    for r in results {
        out.push_str(&format!(
            "[{}] {:<32} residual {:>12.3e}  tolerance {:>8.1e}\n",
            if r.passed() { "pass" } else { "FAIL" },
            r.name,
            r.residual,
            r.tolerance
        ));
        if r.passed() {
            passed += 1;
        }
    }
    out.push_str(&format!(
        "self-check: {passed}/{} checks passed\n",
        results.len()
    ));
    (out, passed == results.len())
}

/// The steady-state verification grid: every combination of
/// C in {1, 5, 34, 68}, r in {0, 0.5, 1, 1.5, 2}, n_th in {0, 1, 2, 5},
/// gamma/kappa in {0.05, 0.2}.
fn steady_state_grid() -> Vec<System1Params> {
    let mut grid = Vec::new();
    for &gamma in &[0.05, 0.2] {
        for &c in &[1.0, 5.0, 34.0, 68.0] {
            for &r in &[0.0, 0.5, 1.0, 1.5, 2.0] {
                for &n_th in &[0.0, 1.0, 2.0, 5.0] {
                    grid.push(
                        System1Params::from_cooperativity(1.0, gamma, c, r, n_th)
                            .expect("grid parameters are valid"),
                    );
                }
            }
        }
    }
    grid
}

/// The phase-evolution verification grid:
/// x in {1.1, 1.5, 2.5, 5} times 64 phases over one period.
fn phase_grid() -> Vec<System2Params> {
    let mut grid = Vec::new();
    for &x in &[1.1, 1.5, 2.5, 5.0] {
        for i in 0..64 {
            let wt = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
            grid.push(System2Params::new(x, wt).expect("grid parameters are valid"));
        }
    }
    grid
}

fn random_standard_form(rng: &mut ChaCha8Rng) -> TwoModeStandardForm {
    let x: f64 = rng.random_range(0.5..5.0);
    let y: f64 = rng.random_range(0.5..5.0);
    let z_bound = ((x - 0.5) * (y + 0.5)).min((x + 0.5) * (y - 0.5)).sqrt();
    let z = rng.random_range(-0.999..0.999) * z_bound;
    TwoModeStandardForm::new(x, y, z).expect("sampled form is physical")
}

/// Worst deviation between the Lyapunov steady state and the four printed
/// block entries, over the steady-state grid, with a caller-supplied noise
/// matrix. Passing a perturbed noise builder makes this check fail, which
/// the test suite uses to prove the comparison has teeth.
pub fn lyapunov_vs_closed_form_residual(noise: impl Fn(&System1Params) -> DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for p in steady_state_grid() {
        let v = solve_lyapunov(&drift_matrix(&p), &noise(&p)).expect("grid drift is stable");
        let blocks = closed_form_blocks(&p);
        let m = &blocks.mirror_mirror;
        let o = &blocks.optic_optic;
        for (lhs, rhs) in [
            (v[(0, 0)], m.x()),
            (v[(1, 1)], m.x()),
            (v[(0, 2)], m.z()),
            (v[(1, 3)], -m.z()),
            (v[(4, 4)], o.x()),
            (v[(5, 5)], o.x()),
            (v[(4, 6)], o.z()),
            (v[(5, 7)], -o.z()),
        ] {
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

fn lyapunov_equation_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for p in steady_state_grid() {
        let a = drift_matrix(&p);
        let d = noise_matrix(&p);
        let v = solve_lyapunov(&a, &d).expect("grid drift is stable");
        let residual = (&a * &v + &v * a.transpose() + &d).abs().max();
        worst = worst.max(residual / d.abs().max());
    }
    worst
}

fn steady_state_physicality() -> f64 {
    let mut worst: f64 = 0.0;
    for p in steady_state_grid() {
        let v = steady_state_cm(&p).expect("grid drift is stable");
        let nu_min = symplectic_eigenvalues(&v).expect("steady state is positive definite")[0];
        worst = worst.max(0.5 - nu_min);
    }
    worst
}

fn vacuum_fixed_point() -> f64 {
    let mut worst: f64 = 0.0;
    for &c in &[0.0, 1.0, 34.0] {
        let p = System1Params::from_cooperativity(1.0, 0.05, c, 0.0, 0.0).unwrap();
        let v = steady_state_cm(&p).expect("stable");
        worst = worst.max(
            (v.matrix() - CovarianceMatrix::vacuum(4).matrix())
                .abs()
                .max(),
        );
    }
    worst
}

fn drift_eigenvalue_structure() -> f64 {
    let mut worst: f64 = 0.0;
    for &c in &[34.0, 68.0] {
        let p = System1Params::from_cooperativity(1.0, 0.05, c, 1.0, 1.0).unwrap();
        let s = stability_check(&p);
        worst = worst.max((s.max_real_part + (1.0 + 0.05) / 4.0).abs());
    }
    worst
}

fn cooperativity_route_consistency() -> f64 {
    let spec = PhysicalCavitySpec {
        pump_power: 30e-3,
        mass: 145e-12,
        omega_m: 2.0 * std::f64::consts::PI * 947e3,
        omega_c: 2.0 * std::f64::consts::PI * 2.82e14,
        omega_l: 2.0 * std::f64::consts::PI * 2.82e14,
        length: 25e-3,
        kappa: 2.0 * std::f64::consts::PI * 215e3,
        gamma: 2.0 * std::f64::consts::PI * 141.0,
    };
    let c_direct = cooperativity_from_physical(&spec);
    let g = coupling_rate_from_physical(&spec);
    let c_via_rate = 4.0 * g * g / (spec.gamma * spec.kappa);
    (c_direct - c_via_rate).abs() / c_direct
}

fn tmsv_calibration() -> f64 {
    let mut worst: f64 = 0.0;
    for &r in &[0.5, 1.0, 2.0] {
        let f = TwoModeStandardForm::two_mode_squeezed_vacuum(r).unwrap();
        worst = worst.max((logarithmic_negativity(&f) - 2.0 * r).abs());
    }
    worst
}

fn partial_transpose_eigenvalue() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let f = random_standard_form(&mut rng);
        let mut m = f.to_covariance().matrix().clone();
        for i in 0..4 {
            m[(i, 3)] = -m[(i, 3)];
            m[(3, i)] = -m[(3, i)];
        }
        let transposed = CovarianceMatrix::new(m).expect("partial transpose stays symmetric");
        let nu = symplectic_eigenvalues(&transposed).expect("positive definite")[0];
        worst = worst.max((nu - min_pt_symplectic_eigenvalue(&f)).abs());
    }
    worst
}

fn renyi2_determinant() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let v = random_standard_form(&mut rng).to_covariance();
        let direct = 0.5 * v.matrix().determinant().ln();
        let via_cholesky = renyi2_entropy(&v).expect("positive definite");
        worst = worst.max((direct - via_cholesky).abs());
    }
    worst
}

fn system2_route_equivalence() -> f64 {
    let mut worst: f64 = 0.0;
    for p in phase_grid() {
        let dev = (tripartite_cm(&p).matrix() - coefficient_composition_cm(&p).matrix())
            .abs()
            .max();
        worst = worst.max(dev);
    }
    worst
}

fn system2_purity() -> f64 {
    let mut worst: f64 = 0.0;
    for p in phase_grid() {
        let nus = symplectic_eigenvalues(&tripartite_cm(&p)).expect("positive definite");
        for nu in nus {
            worst = worst.max((nu - 0.5).abs());
        }
    }
    worst
}

fn system2_determinant() -> f64 {
    let mut worst: f64 = 0.0;
    for p in phase_grid() {
        worst = worst.max((tripartite_cm(&p).matrix().determinant() - 1.0 / 64.0).abs());
    }
    worst
}

fn system2_periodicity() -> f64 {
    let mut worst: f64 = 0.0;
    for &x in &[1.5, 2.5] {
        for &wt in &[0.7, 2.3] {
            let a = tripartite_cm(&System2Params::new(x, wt).unwrap());
            let b = tripartite_cm(&System2Params::new(x, wt + 2.0 * std::f64::consts::PI).unwrap());
            worst = worst.max((a.matrix() - b.matrix()).abs().max());
        }
    }
    worst
}

fn system2_mirror_decoupling() -> f64 {
    let v = tripartite_cm(&System2Params::new(1.5, std::f64::consts::PI).unwrap());
    let m = v.matrix();
    let mut worst: f64 = 0.0;
    for optic_row in 0..4 {
        for mirror_col in 4..6 {
            worst = worst.max(m[(optic_row, mirror_col)].abs());
        }
    }
    worst
}

fn worked_point_form() -> TwoModeStandardForm {
    optic_optic_cm(&System2Params::new(1.5, std::f64::consts::PI).unwrap())
        .expect("reduction is in standard form")
}

fn worked_point_standard_form() -> f64 {
    let f = worked_point_form();
    (f.x() - 6.26)
        .abs()
        .max((f.y() - 6.26).abs())
        .max((f.z() - 6.24).abs())
}

fn worked_point_negativity() -> f64 {
    (logarithmic_negativity(&worked_point_form()) + 0.04f64.ln()).abs()
}

fn angle_identity() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let f = random_standard_form(&mut rng);
        let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let phi = std::f64::consts::FRAC_PI_6 - theta;
        let double = DoubleMeasurementSpec::new(MeasurementKind::Homodyne, theta, phi);
        let w00 = work_double(&f, &double).expect("angle sum keeps the variance positive");
        let w0 = work_single(&f, MeasurementKind::Homodyne);
        worst = worst.max((w00 - w0).abs());
    }
    worst
}

fn backaction_consistency() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let f = random_standard_form(&mut rng);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        for kind in [MeasurementKind::Homodyne, MeasurementKind::Heterodyne] {
            let cond =
                conditional_cm(&f, &MeasurementSpec::new(kind, angle)).expect("valid variances");
            let via_determinant = 0.5 * (f.x() * f.x() / cond.determinant()).ln();
            worst = worst.max((work_single(&f, kind) - via_determinant).abs());
        }
    }
    worst
}

fn sequential_heterodyne_work() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let f = random_standard_form(&mut rng);
        let cond = conditional_cm(&f, &MeasurementSpec::new(MeasurementKind::Heterodyne, 0.0))
            .expect("valid variances");
        let sequential = ((f.x() + 0.5) / (cond[(0, 0)] + 0.5)).ln();
        let printed = work_double(
            &f,
            &DoubleMeasurementSpec::with_default_angles(MeasurementKind::Heterodyne),
        )
        .expect("heterodyne double work is total");
        worst = worst.max((sequential - printed).abs());
    }
    worst
}

fn sep_bound_identity() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let x: f64 = rng.random_range(0.5..5.0);
        let y: f64 = rng.random_range(0.5..5.0);
        let z = ((x - 0.5) * (y - 0.5)).sqrt();
        let f = TwoModeStandardForm::new(x, y, z).expect("boundary form is physical");
        for kind in [MeasurementKind::Homodyne, MeasurementKind::Heterodyne] {
            let w = work_single(&f, kind);
            let w_sep = work_separable_bound(x, y, kind).expect("valid variances");
            worst = worst.max((w - w_sep).abs());
        }
    }
    worst
}

/// Counts (w > w_sep) vs (L_N > 0) disagreements over both systems' grids
/// and both measurement kinds, excluding ties within 1e-10 of the bound.
fn witness_consistency() -> f64 {
    let mut violations = 0usize;
    let mut check = |f: &TwoModeStandardForm| {
        let entangled = logarithmic_negativity(f) > 0.0;
        for kind in [MeasurementKind::Homodyne, MeasurementKind::Heterodyne] {
            let w = work_single(f, kind);
            let w_sep = work_separable_bound(f.x(), f.y(), kind).expect("valid variances");
            if (w - w_sep).abs() < 1e-10 {
                continue;
            }
            if (w > w_sep) != entangled {
                violations += 1;
            }
        }
    };
    for p in steady_state_grid() {
        let blocks = closed_form_blocks(&p);
        check(&blocks.mirror_mirror);
        check(&blocks.optic_optic);
    }
    for p in phase_grid() {
        check(&optic_optic_cm(&p).expect("reduction is in standard form"));
    }
    violations as f64
}

fn homodyne_bound_ordering() -> f64 {
    let mut worst: f64 = 0.0;
    let mut check = |f: &TwoModeStandardForm| {
        if let Ok(w_max) = work_max(f.x(), f.y(), MeasurementKind::Homodyne) {
            worst = worst.max(work_single(f, MeasurementKind::Homodyne) - w_max);
        }
    };
    for p in steady_state_grid() {
        let blocks = closed_form_blocks(&p);
        check(&blocks.mirror_mirror);
        check(&blocks.optic_optic);
    }
    for p in phase_grid() {
        check(&optic_optic_cm(&p).expect("reduction is in standard form"));
    }
    worst.max(0.0)
}

/// Worst adverse discrete difference across the published trends:
/// entanglement nonincreasing in the thermal occupation, the four works
/// nondecreasing in the cooperativity (and zero at zero cooperativity),
/// entanglement nondecreasing in the squeezing with a strict net rise.
fn monotonic_trends() -> f64 {
    let sweep = |text: &str| {
        let config = SweepConfig::parse_str(text).expect("trend config is valid");
        run_sweep(&config, &SweepOptions::default()).expect("trend sweep evaluates")
    };
    let mut worst: f64 = 0.0;

    let d = sweep(
        "system = 1\nswept_parameter = n_th:0:5:201\nfixed_parameters.C = 34\n\
         fixed_parameters.gamma = 0.05\nfixed_parameters.r = 1.5\n\
         quantities = L_N_mirror, L_N_optic\n",
    );
    for col in 1..=2 {
        let series: Vec<f64> = d.rows.iter().map(|r| r[col].unwrap()).collect();
        for pair in series.windows(2) {
            worst = worst.max(pair[1] - pair[0]);
        }
    }

    let d = sweep(
        "system = 1\nswept_parameter = C:0:100:201\nfixed_parameters.gamma = 0.05\n\
         fixed_parameters.r = 1.5\nfixed_parameters.n_th = 1\n\
         quantities = W0, W1, W00, W11\n",
    );
    for col in 1..=4 {
        let series: Vec<f64> = d.rows.iter().map(|r| r[col].unwrap()).collect();
        worst = worst.max(series[0].abs());
        for pair in series.windows(2) {
            worst = worst.max(pair[0] - pair[1]);
        }
    }

    let d = sweep(
        "system = 1\nswept_parameter = r:0:2:201\nfixed_parameters.C = 34\n\
         fixed_parameters.gamma = 0.05\nfixed_parameters.n_th = 1\n\
         quantities = L_N_mirror, L_N_optic\n",
    );
    for col in 1..=2 {
        let series: Vec<f64> = d.rows.iter().map(|r| r[col].unwrap()).collect();
        for pair in series.windows(2) {
            worst = worst.max(pair[0] - pair[1]);
        }
        if series[200] - series[0] < 1.0 {
            worst = worst.max(f64::INFINITY);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes_every_check() {
        let results = run_self_check();
        assert!(results.len() >= 12);
        for r in &results {
            assert!(
                r.passed(),
                "{} failed: residual {:.3e} > tolerance {:.1e}",
                r.name,
                r.residual,
                r.tolerance
            );
        }
        let (report, all_passed) = render_report(&results);
        assert!(all_passed);
        assert!(report.contains("lyapunov_vs_closed_form"));
        assert!(report.lines().count() == results.len() + 1);
    }

    #[test]
    fn flipped_noise_cross_terms_are_caught() {
        let flipped = |p: &System1Params| {
            let mut d = noise_matrix(p);
            for (i, j) in [(4, 6), (6, 4), (5, 7), (7, 5)] {
                d[(i, j)] = -d[(i, j)];
            }
            d
        };
        let residual = lyapunov_vs_closed_form_residual(flipped);
        assert!(
            residual > 1e-10,
            "sign flip went unnoticed: residual {residual:.3e}"
        );
    }

    #[test]
    fn reports_mark_failures() {
        let results = vec![
            CheckResult {
                name: "always_fine",
                residual: 0.0,
                tolerance: 1e-12,
            },
            CheckResult {
                name: "broken",
                residual: 1.0,
                tolerance: 1e-12,
            },
        ];
        let (report, all_passed) = render_report(&results);
        assert!(!all_passed);
        assert!(report.contains("[FAIL] broken"));
        assert!(report.contains("1/2 checks passed"));
    }
}
