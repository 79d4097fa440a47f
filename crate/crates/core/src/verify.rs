//! Self-check suite behind `unsharp-chsh verify`.
//!
//! Every structural property the library relies on is re-checked here on
//! seeded random or gridded inputs. Each check reports the worst deviation it
//! saw next to the tolerance it was held to.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    critical_eta_standard, delta_modified_unbiased, max_alpha_modified, scan_region, ScanCell,
    ViolationClass, STANDARD_BOUND,
};
use crate::lhv::{chsh_from_plus_probabilities, closed_form_local_bound, lhv_bound_bruteforce};
use crate::linalg::{
    bloch_to_observable, kron, min_eigenvalue_hermitian2, trace_product, BlochVector,
    ComplexMatrix2, ComplexMatrix4,
};
use crate::povm::{biased_povm, projectors, unbiased_povm, PovmParams};
use crate::quantum::{
    chsh_value, closed_form_biased, closed_form_unbiased, correlation, pure_state, werner_state,
    DensityMatrix, MeasurementSettings,
};

pub const DEFAULT_SEED: u64 = 0x5EED_C45B;

/// Outcome of a single check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

/// Tracks the largest deviation seen against a fixed tolerance.
struct Worst {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    violated: bool,
}

impl Worst {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            violated: false,
        }
    }

    fn deviation(&mut self, d: f64) {
        if d.is_nan() || d > self.tolerance {
            self.violated = true;
        }
        if d.is_nan() || d > self.worst {
            self.worst = d;
        }
    }

    /// Records a boolean condition that has no natural magnitude.
    fn holds(&mut self, ok: bool) {
        if !ok {
            self.violated = true;
            self.worst = f64::INFINITY;
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: !self.violated,
            worst: self.worst,
            tolerance: self.tolerance,
        }
    }
}

pub fn random_bloch<R: Rng>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    BlochVector::from_angles(z.acos(), phi)
}

/// Uniform over the feasible triangle `|α| + η ≤ 1`.
pub fn random_params<R: Rng>(rng: &mut R) -> PovmParams {
    loop {
        let alpha: f64 = rng.gen_range(-1.0..=1.0);
        let eta: f64 = rng.gen_range(0.0..=1.0);
        if let Ok(p) = PovmParams::new(alpha, eta) {
            return p;
        }
    }
}

/// `G G† / Tr[G G†]` for a Gaussian-ish complex `G`; full rank almost surely.
pub fn random_density_matrix<R: Rng>(rng: &mut R) -> DensityMatrix {
    let mut g = ComplexMatrix4::zeros();
    for z in g.0.iter_mut().flatten() {
        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let mut m = g * g.adjoint();
    let tr = m.trace().re;
    m = m.scale(1.0 / tr);
    // Clean rounding asymmetry before validation.
    let herm = (m + m.adjoint()).scale(0.5);
    DensityMatrix::new(herm).expect("G G† is a valid state")
}

fn random_hermitian2<R: Rng>(rng: &mut R) -> ComplexMatrix2 {
    let a = rng.gen_range(-1.0..1.0);
    let d = rng.gen_range(-1.0..1.0);
    let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    ComplexMatrix2::new([
        [Complex64::new(a, 0.0), b],
        [b.conj(), Complex64::new(d, 0.0)],
    ])
}

fn random_settings<R: Rng>(rng: &mut R) -> MeasurementSettings {
    MeasurementSettings {
        a1: random_bloch(rng),
        a2: random_bloch(rng),
        b1: random_bloch(rng),
        b2: random_bloch(rng),
    }
}

/// Runs every check with the default seed.
pub fn run_all() -> VerifyReport {
    run_with_seed(DEFAULT_SEED)
}

pub fn run_with_seed(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        observable_squares_to_identity(&mut rng),
        kron_mixed_product(&mut rng),
        trace_product_symmetry(&mut rng),
        min_eigenvalue_agreement(&mut rng),
        povm_completeness_and_spectral_form(&mut rng),
        zero_bias_reduces_to_unbiased(&mut rng),
        correlation_factorization(&mut rng),
        correlation_bias_decomposition(&mut rng),
        closed_form_agreement(&mut rng),
        tsirelson_ceiling(&mut rng),
        werner_scaling(),
        lhv_closed_form_equivalence(),
        lhv_unbiased_reduction(),
        lhv_sign_symmetry(),
        lhv_extremality(&mut rng),
        lhv_dominance(),
        standard_threshold(),
        unbiased_violation_persistence(),
        region_monotonicity(),
        scan_matrix_path(&mut rng),
        scan_bruteforce_bound(),
        alpha_supremum_band(),
    ];
    VerifyReport { checks }
}

fn observable_squares_to_identity(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("observable a·σ squares to identity", 1e-12);
    for _ in 0..500 {
        let obs = bloch_to_observable(&random_bloch(rng));
        w.deviation((obs * obs).max_abs_diff(&ComplexMatrix2::identity()));
    }
    w.finish()
}

fn kron_mixed_product(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("kron mixed-product property", 1e-12);
    for _ in 0..200 {
        let (m1, m2, n1, n2) = (
            random_hermitian2(rng),
            random_hermitian2(rng),
            random_hermitian2(rng),
            random_hermitian2(rng),
        );
        let lhs = kron(&(m1 * m2), &(n1 * n2));
        let rhs = kron(&m1, &n1) * kron(&m2, &n2);
        w.deviation(lhs.max_abs_diff(&rhs));
    }
    w.finish()
}

fn trace_product_symmetry(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("trace_product symmetric", 1e-12);
    for _ in 0..200 {
        let a = *random_density_matrix(rng).matrix();
        let b = kron(&random_hermitian2(rng), &random_hermitian2(rng));
        match (trace_product(&a, &b), trace_product(&b, &a)) {
            (Ok(x), Ok(y)) => w.deviation((x - y).abs()),
            _ => w.holds(false),
        }
    }
    w.finish()
}

fn min_eigenvalue_agreement(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("2x2 min eigenvalue vs trace/det formula", 1e-12);
    for _ in 0..500 {
        let m = random_hermitian2(rng);
        // Characteristic-polynomial route with a different evaluation order.
        let tr = m.get(1, 1).re + m.get(0, 0).re;
        let det = -(m.get(1, 0) * m.get(0, 1)).re + m.get(1, 1).re * m.get(0, 0).re;
        let oracle = 0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt());
        match min_eigenvalue_hermitian2(&m) {
            Ok(v) => w.deviation((v - oracle).abs()),
            Err(_) => w.holds(false),
        }
    }
    w.finish()
}

fn povm_completeness_and_spectral_form(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("POVM completeness, positivity, spectral form", 1e-12);
    let id = ComplexMatrix2::identity();
    for _ in 0..500 {
        let a = random_bloch(rng);
        let params = random_params(rng);
        let e = biased_povm(&a, params);
        w.deviation((*e.plus() + *e.minus()).max_abs_diff(&id));
        w.deviation((-e.min_eigenvalue()).max(0.0));
        let (sp, sm) = e.spectral_form();
        w.deviation(sp.max_abs_diff(e.plus()));
        w.deviation(sm.max_abs_diff(e.minus()));
        let expected_diff = id.scale(params.alpha()) + bloch_to_observable(&a).scale(params.eta());
        w.deviation(e.difference().max_abs_diff(&expected_diff));
        let p = projectors(&a);
        w.deviation((p.plus * p.plus).max_abs_diff(&p.plus));
        w.deviation((p.plus * p.minus).max_abs_diff(&ComplexMatrix2::zeros()));
    }
    w.finish()
}

fn zero_bias_reduces_to_unbiased(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("biased POVM at alpha=0 equals unbiased", 0.0);
    for _ in 0..200 {
        let a = random_bloch(rng);
        let eta = rng.gen_range(0.0..=1.0);
        let biased = biased_povm(&a, PovmParams::new(0.0, eta).expect("valid"));
        let unbiased = unbiased_povm(&a, eta).expect("valid");
        w.holds(biased == unbiased);
    }
    w.finish()
}

fn correlation_factorization(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("unbiased correlation = eta^2 x sharp correlation", 1e-12);
    for _ in 0..200 {
        let rho = random_density_matrix(rng);
        let (a, b) = (random_bloch(rng), random_bloch(rng));
        let eta = rng.gen_range(0.0..=1.0);
        let sharp = correlation(
            &rho,
            &unbiased_povm(&a, 1.0).expect("valid"),
            &unbiased_povm(&b, 1.0).expect("valid"),
        );
        let unsharp = correlation(
            &rho,
            &unbiased_povm(&a, eta).expect("valid"),
            &unbiased_povm(&b, eta).expect("valid"),
        );
        match (sharp, unsharp) {
            (Ok(s), Ok(u)) => w.deviation((u - eta * eta * s).abs()),
            _ => w.holds(false),
        }
    }
    w.finish()
}

fn correlation_bias_decomposition(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("biased correlation decomposition", 1e-12);
    let id = ComplexMatrix2::identity();
    for _ in 0..200 {
        let rho = random_density_matrix(rng);
        let (a, b) = (random_bloch(rng), random_bloch(rng));
        let (pa, pb) = (random_params(rng), random_params(rng));
        let (oa, ob) = (bloch_to_observable(&a), bloch_to_observable(&b));
        let ex = |m: ComplexMatrix4| rho.expectation(&m).expect("Hermitian");
        let expected = pa.alpha() * pb.alpha()
            + pa.alpha() * pb.eta() * ex(kron(&id, &ob))
            + pa.eta() * pb.alpha() * ex(kron(&oa, &id))
            + pa.eta() * pb.eta() * ex(kron(&oa, &ob));
        match correlation(&rho, &biased_povm(&a, pa), &biased_povm(&b, pb)) {
            Ok(c) => w.deviation((c - expected).abs()),
            Err(_) => w.holds(false),
        }
    }
    w.finish()
}

fn closed_form_agreement(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("closed form vs density-matrix CHSH", 1e-10);
    let canon = MeasurementSettings::canonical();
    for _ in 0..500 {
        let theta = rng.gen_range(-PI..PI);
        let p = random_params(rng);
        let matrix = chsh_value(&pure_state(theta), &canon, p, p);
        let closed = closed_form_biased(theta, p.alpha(), p.eta());
        match (matrix, closed) {
            (Ok(m), Ok(c)) => w.deviation((m - c).abs()),
            _ => w.holds(false),
        }
    }
    w.finish()
}

fn tsirelson_ceiling(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("|CHSH| <= 2 sqrt 2", 1e-9);
    for _ in 0..300 {
        let rho = random_density_matrix(rng);
        let settings = random_settings(rng);
        let (pa, pb) = (random_params(rng), random_params(rng));
        match chsh_value(&rho, &settings, pa, pb) {
            Ok(v) => w.deviation((v.abs() - 2.0 * SQRT_2).max(0.0)),
            Err(_) => w.holds(false),
        }
    }
    w.finish()
}

fn werner_scaling() -> Check {
    let mut w = Worst::new("Werner CHSH = p x pure-state value", 1e-10);
    let canon = MeasurementSettings::canonical();
    for pk in 0..=20 {
        let p = pk as f64 / 20.0;
        let rho = werner_state(p).expect("valid weight");
        for ek in 0..=10 {
            let eta = ek as f64 / 10.0;
            let params = PovmParams::unbiased(eta).expect("valid");
            let expected = p * closed_form_unbiased(FRAC_PI_4, eta).expect("valid");
            match chsh_value(&rho, &canon, params, params) {
                Ok(v) => w.deviation((v - expected).abs()),
                Err(_) => w.holds(false),
            }
        }
    }
    w.finish()
}

/// Feasible `(α, η)` on a grid of the given step, including negative α.
fn triangle_grid(step_inverse: i32) -> impl Iterator<Item = (f64, f64)> {
    let n = step_inverse;
    (-n..=n).flat_map(move |i| {
        (0..=(n - i.abs())).map(move |j| (i as f64 / n as f64, j as f64 / n as f64))
    })
}

fn lhv_closed_form_equivalence() -> Check {
    let mut w = Worst::new("brute-force local bound = 2(|alpha|+eta)^2", 1e-12);
    for (alpha, eta) in triangle_grid(100) {
        match lhv_bound_bruteforce(alpha, eta) {
            Ok(r) => w.deviation(r.closed_form_gap().unwrap_or(f64::INFINITY)),
            Err(_) => w.holds(false),
        }
    }
    w.finish()
}

fn lhv_unbiased_reduction() -> Check {
    let mut w = Worst::new("unbiased local bound = 2 eta^2, = 2 when sharp", 1e-12);
    for k in 0..=100 {
        let eta = k as f64 / 100.0;
        match lhv_bound_bruteforce(0.0, eta) {
            Ok(r) => w.deviation((r.bound - 2.0 * eta * eta).abs()),
            Err(_) => w.holds(false),
        }
    }
    match lhv_bound_bruteforce(0.0, 1.0) {
        Ok(r) => w.deviation((r.bound - 2.0).abs()),
        Err(_) => w.holds(false),
    }
    w.finish()
}

fn lhv_sign_symmetry() -> Check {
    let mut w = Worst::new("local bound symmetric under alpha -> -alpha", 0.0);
    for (alpha, eta) in triangle_grid(50).filter(|&(a, _)| a > 0.0) {
        let (Ok(pos), Ok(neg)) = (
            lhv_bound_bruteforce(alpha, eta),
            lhv_bound_bruteforce(-alpha, eta),
        ) else {
            w.holds(false);
            continue;
        };
        w.holds(pos.bound == neg.bound);
        for s in &pos.maximizing_strategies {
            let mirrored = s.flipped();
            w.holds(neg.maximizing_strategies.contains(&mirrored));
        }
    }
    w.finish()
}

fn lhv_extremality(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("random response assignments never beat the vertices", 1e-12);
    for _ in 0..200 {
        let params = random_params(rng);
        let vertex_max = lhv_bound_bruteforce(params.alpha(), params.eta())
            .expect("valid")
            .bound;
        for _ in 0..500 {
            let probs: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..=1.0));
            let v = chsh_from_plus_probabilities(probs, params, params);
            w.deviation((v - vertex_max).max(0.0));
        }
    }
    w.finish()
}

fn lhv_dominance() -> Check {
    let mut w = Worst::new("modified bound never exceeds 2", 1e-12);
    for (alpha, eta) in triangle_grid(100) {
        let params = PovmParams::new(alpha, eta).expect("grid is feasible");
        w.deviation((closed_form_local_bound(params) - STANDARD_BOUND).max(0.0));
    }
    w.finish()
}

fn standard_threshold() -> Check {
    let mut w = Worst::new("critical eta at theta=pi/4 is 2^(-1/4)", 1e-8);
    match critical_eta_standard(FRAC_PI_4, 0.0) {
        Ok(Some(eta)) => w.deviation((eta - 2f64.powf(-0.25)).abs()),
        _ => w.holds(false),
    }
    w.finish()
}

fn unbiased_violation_persistence() -> Check {
    let mut w = Worst::new("unbiased modified violation for every eta > 0", 0.0);
    for k in 1..=100 {
        let eta = k as f64 / 100.0;
        w.holds(matches!(delta_modified_unbiased(FRAC_PI_4, eta), Ok(d) if d > 0.0));
    }
    w.finish()
}

fn region_monotonicity() -> Check {
    let mut w = Worst::new(
        "no standard-only violations; alpha=0 line split at 2^(-1/4)",
        0.0,
    );
    let threshold = 2f64.powf(-0.25);
    for theta in [0.0, 0.3, FRAC_PI_4, 1.0, 2.0] {
        let cells = scan_region(theta, 101, 101).expect("valid grid");
        for c in cells.iter().filter(|c| c.feasible) {
            w.holds(c.delta_modified >= c.delta_standard - 1e-12);
        }
    }
    for k in 1..=100 {
        let eta = k as f64 / 100.0;
        let class = ScanCell::evaluate(FRAC_PI_4, 0.0, eta).class;
        let expected = if eta > threshold {
            ViolationClass::Both
        } else {
            ViolationClass::ModifiedOnly
        };
        w.holds(class == expected);
    }
    w.finish()
}

fn scan_matrix_path(rng: &mut ChaCha8Rng) -> Check {
    let mut w = Worst::new("scan quantum values match the matrix path", 1e-10);
    let canon = MeasurementSettings::canonical();
    let cells = scan_region(FRAC_PI_4, 101, 101).expect("valid grid");
    let rho = pure_state(FRAC_PI_4);
    for c in cells.iter().filter(|c| c.feasible) {
        if rng.gen_bool(0.05) {
            let p = PovmParams::new(c.alpha, c.eta).expect("feasible cell");
            match chsh_value(&rho, &canon, p, p) {
                Ok(v) => w.deviation((v - c.quantum_value).abs()),
                Err(_) => w.holds(false),
            }
        }
    }
    w.finish()
}

fn scan_bruteforce_bound() -> Check {
    let mut w = Worst::new(
        "region from closed-form bound = region from brute force",
        0.0,
    );
    for theta in [FRAC_PI_4, 0.5, 0.0] {
        for c in scan_region(theta, 101, 101)
            .expect("valid grid")
            .iter()
            .filter(|c| c.feasible)
        {
            let brute = lhv_bound_bruteforce(c.alpha, c.eta)
                .expect("feasible")
                .bound;
            let class = ViolationClass::classify(c.delta_standard, c.quantum_value - brute);
            w.holds(class == c.class);
        }
    }
    w.finish()
}

fn alpha_supremum_band() -> Check {
    let mut w = Worst::new("max modified-violating alpha at pi/4 in [0.16, 0.18]", 0.0);
    w.holds(matches!(max_alpha_modified(FRAC_PI_4), Ok(a) if (0.16..=0.18).contains(&a)));
    w.finish()
}
