//! Acceptance criteria, one check per criterion.
//!
//! Run with `cargo test -p unsharp-chsh --test acceptance -- --nocapture` to
//! see the PASS/FAIL table. Tolerances are fixed here and not configurable.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unsharp_chsh::analysis::{
    critical_eta_standard, delta_modified_unbiased, max_alpha_modified, scan_region, ViolationClass,
};
use unsharp_chsh::lhv::{chsh_from_plus_probabilities, lhv_bound_bruteforce};
use unsharp_chsh::linalg::{min_eigenvalue_hermitian2, BlochVector};
use unsharp_chsh::povm::{biased_povm, PovmParams};
use unsharp_chsh::quantum::{
    chsh_value, closed_form_biased, pure_state, werner_state, MeasurementSettings,
};
use unsharp_chsh::Error;

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn criterion(id: u32, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let (passed, detail) = f();
    Outcome {
        id,
        title,
        passed,
        detail,
    }
}

fn tsirelson_saturation() -> (bool, String) {
    let sharp = PovmParams::sharp();
    let v = chsh_value(
        &pure_state(FRAC_PI_4),
        &MeasurementSettings::canonical(),
        sharp,
        sharp,
    )
    .expect("valid inputs");
    let err = (v - 2.0 * SQRT_2).abs();
    (
        err <= 1e-10,
        format!("value {v:.12}, |err| {err:.1e} (tol 1e-10)"),
    )
}

fn unbiased_bound_theorem() -> (bool, String) {
    let mut worst = 0.0_f64;
    for k in 0..=20 {
        let eta = k as f64 * 0.05;
        let r = lhv_bound_bruteforce(0.0, eta).expect("valid");
        worst = worst.max((r.bound - 2.0 * eta * eta).abs());
    }
    (
        worst <= 1e-12,
        format!("21 sharpness values, max |err| {worst:.1e} (tol 1e-12)"),
    )
}

fn biased_bound_theorem() -> (bool, String) {
    let mut worst = 0.0_f64;
    let mut points = 0;
    for i in -50i32..=50 {
        let alpha = i as f64 * 0.02;
        for j in 0..=(50 - i.abs()) {
            let eta = j as f64 * 0.02;
            let r = lhv_bound_bruteforce(alpha, eta).expect("grid point is feasible");
            let oracle = 2.0 * (alpha.abs() + eta).powi(2);
            worst = worst.max((r.bound - oracle).abs());
            points += 1;
        }
    }
    (
        worst <= 1e-12,
        format!("{points} grid points, max |err| {worst:.1e} (tol 1e-12)"),
    )
}

fn closed_form_vs_matrix() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let canon = MeasurementSettings::canonical();
    let mut worst = 0.0_f64;
    let mut n = 0;
    while n < 1000 {
        let theta = rng.gen_range(0.0..PI);
        let alpha = rng.gen_range(-1.0..=1.0);
        let eta = rng.gen_range(0.0..=1.0);
        let Ok(params) = PovmParams::new(alpha, eta) else {
            continue;
        };
        let matrix = chsh_value(&pure_state(theta), &canon, params, params).expect("valid");
        let closed = closed_form_biased(theta, alpha, eta).expect("valid");
        worst = worst.max((matrix - closed).abs());
        n += 1;
    }
    (
        worst <= 1e-10,
        format!("1000 samples, max |err| {worst:.1e} (tol 1e-10)"),
    )
}

fn standard_threshold() -> (bool, String) {
    let eta = critical_eta_standard(FRAC_PI_4, 0.0)
        .expect("valid")
        .expect("threshold exists at pi/4");
    let exact = 2f64.powf(-0.25);
    let err = (eta - exact).abs();
    (
        err <= 1e-8 && (eta - 0.840_896_42).abs() <= 1e-8,
        format!("eta* {eta:.10} vs 2^(-1/4) {exact:.10}, |err| {err:.1e} (tol 1e-8)"),
    )
}

fn unbiased_violation_persistence() -> (bool, String) {
    let failures: Vec<f64> = (1..=100)
        .map(|k| k as f64 / 100.0)
        .filter(|&eta| delta_modified_unbiased(FRAC_PI_4, eta).expect("valid") <= 0.0)
        .collect();
    (
        failures.is_empty(),
        format!("100 sharpness values, {} without violation", failures.len()),
    )
}

fn figure_topology() -> (bool, String) {
    let cells = scan_region(FRAC_PI_4, 201, 201).expect("valid grid");
    let modified_only = cells
        .iter()
        .filter(|c| c.class == ViolationClass::ModifiedOnly)
        .count();
    let standard_only = cells
        .iter()
        .filter(|c| c.feasible && c.delta_standard > 0.0 && c.delta_modified <= 0.0)
        .count();
    let both_not_modified = cells
        .iter()
        .filter(|c| c.class == ViolationClass::Both && !(c.delta_modified > 0.0))
        .count();
    let alpha_sup = max_alpha_modified(FRAC_PI_4).expect("valid");
    let ok = modified_only > 0
        && (0.16..=0.18).contains(&alpha_sup)
        && standard_only == 0
        && both_not_modified == 0;
    (
        ok,
        format!(
            "MODIFIED_ONLY cells {modified_only}, alpha sup {alpha_sup:.6} in [0.16, 0.18], \
             standard-only cells {standard_only}"
        ),
    )
}

fn extremality() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    let mut worst_excess = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        let params = loop {
            if let Ok(p) = PovmParams::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.0..=1.0)) {
                break p;
            }
        };
        let vertex_max = lhv_bound_bruteforce(params.alpha(), params.eta())
            .expect("valid")
            .bound;
        let probs: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
        let v = chsh_from_plus_probabilities(probs, params, params);
        worst_excess = worst_excess.max(v - vertex_max);
    }
    (
        worst_excess <= 1e-12,
        format!(
            "1e5 interior assignments, max excess over vertices {worst_excess:.2e} (tol 1e-12)"
        ),
    )
}

fn povm_validity_gate() -> (bool, String) {
    let rejects = [
        (0.3, 0.71),
        (-0.3, 0.71),
        (0.5, 0.5 + 1e-9),
        (0.0, 1.01),
        (1.0, 0.1),
    ]
    .iter()
    .all(|&(a, e)| {
        matches!(
            PovmParams::new(a, e),
            Err(Error::NotPositive { .. }) | Err(Error::SharpnessOutOfRange(_))
        )
    });
    let mut worst = 0.0_f64;
    let mut accepted = true;
    for &(a, e) in &[
        (0.2, 0.8),
        (-0.2, 0.8),
        (0.0, 1.0),
        (0.5, 0.5),
        (1.0, 0.0),
        (-0.35, 0.65),
    ] {
        match PovmParams::new(a, e) {
            Ok(params) => {
                for dir in [
                    BlochVector::z_axis(),
                    BlochVector::x_axis(),
                    BlochVector::from_angles(1.0, 2.0),
                ] {
                    let pair = biased_povm(&dir, params);
                    let lo = min_eigenvalue_hermitian2(pair.plus())
                        .unwrap()
                        .min(min_eigenvalue_hermitian2(pair.minus()).unwrap());
                    worst = worst.max(lo.abs());
                }
            }
            Err(_) => accepted = false,
        }
    }
    (
        rejects && accepted && worst <= 1e-12,
        format!(
            "rejects outside: {rejects}, boundary accepted: {accepted}, max |min eig| {worst:.1e}"
        ),
    )
}

fn werner_scaling() -> (bool, String) {
    let canon = MeasurementSettings::canonical();
    let mut worst = 0.0_f64;
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let rho = werner_state(p).expect("valid");
        for k in 0..=10 {
            let eta = k as f64 / 10.0;
            let params = PovmParams::unbiased(eta).expect("valid");
            let v = chsh_value(&rho, &canon, params, params).expect("valid");
            worst = worst.max((v - p * SQRT_2 * eta * eta * 2.0).abs());
        }
    }
    (
        worst <= 1e-10,
        format!("5 weights x 11 sharpness values, max |err| {worst:.1e} (tol 1e-10)"),
    )
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let outcomes = vec![
        criterion(1, "Tsirelson saturation", tsirelson_saturation),
        criterion(2, "unbiased local bound 2 eta^2", unbiased_bound_theorem),
        criterion(
            3,
            "biased local bound 2(|alpha|+eta)^2",
            biased_bound_theorem,
        ),
        criterion(4, "closed form vs density matrix", closed_form_vs_matrix),
        criterion(5, "standard threshold 2^(-1/4)", standard_threshold),
        criterion(
            6,
            "unbiased violation persistence",
            unbiased_violation_persistence,
        ),
        criterion(7, "violation-region topology", figure_topology),
        criterion(8, "multilinearity / extremality", extremality),
        criterion(9, "POVM validity gate", povm_validity_gate),
        criterion(10, "Werner scaling", werner_scaling),
    ];
    let elapsed = start.elapsed();
    for o in &outcomes {
        println!(
            "[{}] criterion {:>2}: {:<38} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
    println!("suite runtime: {:.2?}", elapsed);
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(
        elapsed.as_secs() < 60,
        "suite exceeded one minute: {elapsed:?}"
    );
}
