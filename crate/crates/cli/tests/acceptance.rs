//! Acceptance suite: one test per release criterion. Each test prints a
//! single `criterion N: pass|fail` line with the measured residual and the
//! pinned tolerance, then asserts.

use std::f64::consts::{FRAC_PI_6, PI, TAU};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use optowork::config::SweepConfig;
use optowork::sweep::{run_sweep, SweepOptions};
use optowork_core::gaussian::{
    logarithmic_negativity, reduce, standard_form, symplectic_eigenvalues, TwoModeStandardForm,
};
use optowork_core::system1::{closed_form_blocks, steady_state_cm, System1Params};
use optowork_core::system2::{
    coefficient_composition_cm, optic_optic_cm, tripartite_cm, System2Params,
};
use optowork_core::thermo::{
    conditional_cm, work_double, work_report, work_single, DoubleMeasurementSpec, MeasurementKind,
    MeasurementSpec,
};

const SEED: u64 = 0x6163636570746564;

fn verdict(criterion: usize, ok: bool, summary: &str) -> bool {
    let status = if ok { "pass" } else { "fail" };
    println!("criterion {criterion}: {status} - {summary}");
    ok
}

fn system1_grid() -> Vec<System1Params> {
    let mut grid = Vec::new();
    for &c in &[1.0, 5.0, 34.0, 68.0] {
        for &r in &[0.0, 0.5, 1.0, 1.5, 2.0] {
            for &n_th in &[0.0, 1.0, 2.0, 5.0] {
                for &gamma in &[0.05, 0.2] {
                    grid.push(System1Params::from_cooperativity(1.0, gamma, c, r, n_th).unwrap());
                }
            }
        }
    }
    grid
}

fn system2_grid() -> Vec<System2Params> {
    let mut grid = Vec::new();
    for &x in &[1.1, 1.5, 2.5, 5.0] {
        for k in 0..64 {
            grid.push(System2Params::new(x, k as f64 * TAU / 64.0).unwrap());
        }
    }
    grid
}

fn random_form(rng: &mut ChaCha8Rng) -> TwoModeStandardForm {
    let x: f64 = rng.random_range(0.5..5.0);
    let y: f64 = rng.random_range(0.5..5.0);
    let bound = ((x - 0.5) * (y + 0.5)).min((x + 0.5) * (y - 0.5)).sqrt();
    let z = rng.random_range(-0.999..0.999) * bound;
    TwoModeStandardForm::new(x, y, z).unwrap()
}

#[test]
fn criterion_01_lyapunov_matches_closed_forms_on_the_grid() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in system1_grid() {
        let v = steady_state_cm(&p).unwrap();
        let m = v.matrix();
        let blocks = closed_form_blocks(&p);
        let pairs = [
            (m[(0, 0)], blocks.mirror_mirror.x()),
            (m[(1, 1)], blocks.mirror_mirror.x()),
            (m[(0, 2)], blocks.mirror_mirror.z()),
            (m[(1, 3)], -blocks.mirror_mirror.z()),
            (m[(4, 4)], blocks.optic_optic.x()),
            (m[(5, 5)], blocks.optic_optic.x()),
            (m[(4, 6)], blocks.optic_optic.z()),
            (m[(5, 7)], -blocks.optic_optic.z()),
        ];
        for (solved, printed) in pairs {
            worst = worst.max((solved - printed).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = verdict(
        1,
        worst < 1e-10 && elapsed < 5.0,
        &format!(
            "steady-state solve vs closed forms on 160-point grid: \
             max abs error {worst:.3e} (tol 1e-10), runtime {elapsed:.2}s (limit 5s)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_02_tmsv_negativity_calibration() {
    let mut worst = 0.0f64;
    for &r in &[0.5f64, 1.0, 2.0] {
        let f = TwoModeStandardForm::new(
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).sinh() / 2.0,
        )
        .unwrap();
        worst = worst.max((logarithmic_negativity(&f) - 2.0 * r).abs());
    }
    let ok = verdict(
        2,
        worst < 1e-10,
        &format!("two-mode squeezed vacuum gives L_N = 2r: max abs error {worst:.3e} (tol 1e-10)"),
    );
    assert!(ok);
}

#[test]
fn criterion_03_phase_evolution_purity_and_identity() {
    let mut worst_nu = 0.0f64;
    let mut worst_det = 0.0f64;
    for p in system2_grid() {
        let v = tripartite_cm(&p);
        for nu in symplectic_eigenvalues(&v).unwrap() {
            worst_nu = worst_nu.max((nu - 0.5).abs());
        }
        worst_det = worst_det.max((v.matrix().determinant() - 1.0 / 64.0).abs());
    }
    let mut exact_identity = true;
    let at_zero = tripartite_cm(&System2Params::new(1.5, 0.0).unwrap());
    for i in 0..6 {
        for j in 0..6 {
            let expected = if i == j { 0.5 } else { 0.0 };
            exact_identity &= at_zero.matrix()[(i, j)] == expected;
        }
    }
    let f = optic_optic_cm(&System2Params::new(1.5, 0.0).unwrap()).unwrap();
    exact_identity &= logarithmic_negativity(&f) == 0.0;
    exact_identity &= work_single(&f, MeasurementKind::Homodyne) == 0.0;
    exact_identity &= work_single(&f, MeasurementKind::Heterodyne) == 0.0;
    let ok = verdict(
        3,
        worst_nu < 1e-9 && worst_det < 1e-9 && exact_identity,
        &format!(
            "tripartite state pure on 256-point grid: max |nu - 1/2| {worst_nu:.3e}, \
             max |det - 1/64| {worst_det:.3e} (tol 1e-9); zero phase exactly vacuum \
             with L_N = W = 0: {exact_identity}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_04_phase_evolution_route_equivalence() {
    let mut worst = 0.0f64;
    for p in system2_grid() {
        let dev = (tripartite_cm(&p).matrix() - coefficient_composition_cm(&p).matrix())
            .abs()
            .max();
        worst = worst.max(dev);
    }
    let ok = verdict(
        4,
        worst < 1e-12,
        &format!(
            "coefficient composition vs trigonometric closed forms on 256-point grid: \
             max abs deviation {worst:.3e} (tol 1e-12)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_05_worked_optical_point() {
    let p = System2Params::new(1.5, PI).unwrap();
    let mut worst_form = 0.0f64;
    let mut worst_ln = 0.0f64;
    for v in [tripartite_cm(&p), coefficient_composition_cm(&p)] {
        let f = standard_form(&reduce(&v, &[0, 1]).unwrap()).unwrap();
        worst_form = worst_form
            .max((f.x() - 6.26).abs())
            .max((f.y() - 6.26).abs())
            .max((f.z() - 6.24).abs());
        worst_ln = worst_ln.max((logarithmic_negativity(&f) + 0.04f64.ln()).abs());
    }
    let ok = verdict(
        5,
        worst_form < 1e-12 && worst_ln < 1e-10,
        &format!(
            "optical block at coupling 1.5, phase pi is (6.26, 6.26, 6.24) by both routes: \
             max form error {worst_form:.3e} (tol 1e-12), \
             max |L_N + ln 0.04| {worst_ln:.3e} (tol 1e-10)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_06_work_witness_matches_negativity() {
    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut examine = |f: &TwoModeStandardForm| {
        let entangled = logarithmic_negativity(f) > 0.0;
        for kind in [MeasurementKind::Homodyne, MeasurementKind::Heterodyne] {
            let report = work_report(f, kind);
            if (report.w - report.w_sep).abs() < 1e-10 {
                continue;
            }
            checked += 1;
            if (report.w > report.w_sep) != entangled {
                violations += 1;
            }
        }
    };
    for p in system1_grid() {
        let blocks = closed_form_blocks(&p);
        examine(&blocks.mirror_mirror);
        examine(&blocks.optic_optic);
    }
    for p in system2_grid() {
        examine(&optic_optic_cm(&p).unwrap());
    }
    let ok = verdict(
        6,
        violations == 0 && checked > 200,
        &format!(
            "(w > w_sep) iff (L_N > 0) across both systems and both measurement kinds: \
             {violations} violations in {checked} comparisons (ties within 1e-10 excluded)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_07_double_homodyne_angle_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let f = random_form(&mut rng);
        let theta = rng.random_range(-PI..PI);
        let spec = DoubleMeasurementSpec::new(MeasurementKind::Homodyne, theta, FRAC_PI_6 - theta);
        let w00 = work_double(&f, &spec).unwrap();
        worst = worst.max((w00 - work_single(&f, MeasurementKind::Homodyne)).abs());
    }
    let ok = verdict(
        7,
        worst < 1e-12,
        &format!(
            "double homodyne equals single homodyne when the angles sum to pi/6: \
             max abs error {worst:.3e} over 1000 random states (tol 1e-12)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_08_monotonic_trends() {
    let thermal = "\
system = 1
swept_parameter = n_th:0:5:201
fixed_parameters.kappa = 1
fixed_parameters.gamma = 0.05
fixed_parameters.C = 34
fixed_parameters.r = 1.5
quantities = L_N_mirror, L_N_optic
";
    let coupling = "\
system = 1
swept_parameter = C:0:100:201
fixed_parameters.kappa = 1
fixed_parameters.gamma = 0.05
fixed_parameters.r = 1.5
fixed_parameters.n_th = 1
block = mirror
quantities = W0, W1, W00, W11
";
    let squeezing = "\
system = 1
swept_parameter = r:0:2.5:201
fixed_parameters.kappa = 1
fixed_parameters.gamma = 0.05
fixed_parameters.C = 34
fixed_parameters.n_th = 1
quantities = L_N_mirror
";
    let run = |text: &str| {
        let config = SweepConfig::parse_str(text).unwrap();
        run_sweep(&config, &SweepOptions::default()).unwrap()
    };
    let column = |dataset: &optowork::Dataset, index: usize| -> Vec<f64> {
        dataset.rows.iter().map(|row| row[index].unwrap()).collect()
    };
    let nonincreasing = |values: &[f64]| values.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let nondecreasing = |values: &[f64]| values.windows(2).all(|w| w[1] >= w[0] - 1e-12);

    let thermal_data = run(thermal);
    let entanglement_decays =
        nonincreasing(&column(&thermal_data, 1)) && nonincreasing(&column(&thermal_data, 2));

    let coupling_data = run(coupling);
    let mut works_grow = true;
    let mut works_vanish = true;
    for index in 1..=4 {
        let values = column(&coupling_data, index);
        works_grow &= nondecreasing(&values);
        works_vanish &= values[0].abs() < 1e-12;
    }

    let squeezing_data = run(squeezing);
    let negativity = column(&squeezing_data, 1);
    let negativity_grows = nondecreasing(&negativity)
        && negativity.last().unwrap() - negativity.first().unwrap() > 1e-3;

    let ok = verdict(
        8,
        entanglement_decays && works_grow && works_vanish && negativity_grows,
        &format!(
            "201-point sweeps: L_N nonincreasing in n_th ({entanglement_decays}), \
             works nondecreasing in C and zero at C=0 ({works_grow}, {works_vanish}), \
             L_N increasing in r ({negativity_grows}); noise band 1e-12"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_backaction_determinant_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xff);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let f = random_form(&mut rng);
        let angle = rng.random_range(0.0..TAU);
        for kind in [MeasurementKind::Homodyne, MeasurementKind::Heterodyne] {
            let cond = conditional_cm(&f, &MeasurementSpec::new(kind, angle)).unwrap();
            let via_det = 0.5 * (f.x() * f.x() / cond.determinant()).ln();
            worst = worst.max((work_single(&f, kind) - via_det).abs());
        }
    }
    let ok = verdict(
        9,
        worst < 1e-12,
        &format!(
            "work equals the conditional-determinant route: max abs error {worst:.3e} \
             over 1000 random states, both kinds (tol 1e-12)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_10_cli_determinism_and_self_check() {
    let exe = env!("CARGO_BIN_EXE_optowork");
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for path in [&first, &second] {
        let status = Command::new(exe)
            .args(["preset", "fig3", "--out"])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success(), "preset run failed");
    }
    let identical = std::fs::read(&first).unwrap() == std::fs::read(&second).unwrap();
    let check = Command::new(exe).arg("check").output().unwrap();
    let check_passed = check.status.code() == Some(0);
    let ok = verdict(
        10,
        identical && check_passed,
        &format!(
            "repeated preset runs byte-identical ({identical}); \
             self-check exits 0 ({check_passed})"
        ),
    );
    assert!(ok);
}
