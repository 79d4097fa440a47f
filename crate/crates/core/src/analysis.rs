//! Violation margins against the standard local bound (2) and the modified
//! bound `2(|α|+η)²`, critical parameter values, and `(α, η)` region scans at
//! fixed θ for the canonical settings.

use std::fmt;

use crate::error::{Error, Result};
use crate::lhv::closed_form_local_bound;
use crate::povm::PovmParams;
use crate::quantum::closed_form_biased_unchecked;

/// Standard CHSH local bound.
pub const STANDARD_BOUND: f64 = 2.0;
/// A margin must exceed this to count as a violation.
pub const VIOLATION_TOL: f64 = 1e-12;
/// Bisection width for sharpness thresholds.
pub const ETA_TOL: f64 = 1e-9;
/// Bisection width for bias suprema.
pub const ALPHA_TOL: f64 = 1e-6;

/// Which bounds a quantum CHSH value violates. A value violating the standard
/// bound always violates the modified one too, so there is no standard-only
/// class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationClass {
    None,
    ModifiedOnly,
    Both,
}

impl ViolationClass {
    pub fn classify(delta_standard: f64, delta_modified: f64) -> Self {
        if delta_standard > VIOLATION_TOL {
            ViolationClass::Both
        } else if delta_modified > VIOLATION_TOL {
            ViolationClass::ModifiedOnly
        } else {
            ViolationClass::None
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ViolationClass::None => "NONE",
            ViolationClass::ModifiedOnly => "MODIFIED_ONLY",
            ViolationClass::Both => "BOTH",
        }
    }
}

impl fmt::Display for ViolationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `Δ^η = η² (√2 (1 + sin 2θ) − 2)`: quantum value minus `2η²` for unbiased
/// POVMs.
pub fn delta_modified_unbiased(theta: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::unbiased(eta)?;
    let eta = params.eta();
    Ok(eta * eta * (std::f64::consts::SQRT_2 * (1.0 + (2.0 * theta).sin()) - 2.0))
}

/// Quantum value minus the standard bound 2.
pub fn delta_standard_biased(theta: f64, alpha: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::new(alpha, eta)?;
    Ok(delta_standard_unchecked(theta, params))
}

/// Quantum value minus the modified bound `2(|α|+η)²`.
pub fn delta_modified_biased(theta: f64, alpha: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::new(alpha, eta)?;
    Ok(delta_modified_unchecked(theta, params))
}

fn delta_standard_unchecked(theta: f64, params: PovmParams) -> f64 {
    closed_form_biased_unchecked(theta, params.alpha(), params.eta()) - STANDARD_BOUND
}

fn delta_modified_unchecked(theta: f64, params: PovmParams) -> f64 {
    closed_form_biased_unchecked(theta, params.alpha(), params.eta())
        - closed_form_local_bound(params)
}

/// Shrinks `[lo, hi]` with `!pred(lo)` and `pred(hi)` until it is narrower
/// than `tol`, returning the final bracket.
fn bisect(mut lo: f64, mut hi: f64, tol: f64, pred: impl Fn(f64) -> bool) -> (f64, f64) {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Smallest sharpness `η ∈ [0, 1−|α|]` at which the quantum value exceeds the
/// standard bound, or `None` if no feasible η does.
///
/// For fixed θ and α the margin is a convex quadratic in η that is negative at
/// η = 0 (it equals `2α² − 2`), so the violating set is an interval ending at
/// `1−|α|` and its left end is found by bisection.
pub fn critical_eta_standard(theta: f64, alpha: f64) -> Result<Option<f64>> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            name: "theta",
            value: theta,
        });
    }
    let top = PovmParams::new(alpha, 1.0 - alpha.abs())?;
    if alpha.abs() >= 1.0 {
        return Ok(None);
    }
    let violates =
        |eta: f64| closed_form_biased_unchecked(theta, alpha, eta) - STANDARD_BOUND > VIOLATION_TOL;
    if !violates(top.eta()) {
        return Ok(None);
    }
    let (_, hi) = bisect(0.0, top.eta(), ETA_TOL, violates);
    Ok(Some(hi))
}

/// Supremum of `α ≥ 0` for which some feasible η (`α + η ≤ 1`) violates the
/// modified bound.
///
/// For `α ≥ 0` the modified margin factors as `η·(K η + L α)` with
/// `L = (2+√2) cos 2θ − 4 < 0`, so at fixed α it is largest on the feasibility
/// boundary `η = 1 − α`. Along that boundary the violating α form an interval
/// `[0, α*)`, and α* is located by bisection.
pub fn max_alpha_modified(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            name: "theta",
            value: theta,
        });
    }
    let violates_on_boundary = |alpha: f64| {
        let params = PovmParams::new(alpha, 1.0 - alpha).expect("boundary point is feasible");
        delta_modified_unchecked(theta, params) > VIOLATION_TOL
    };
    if !violates_on_boundary(0.0) {
        return Ok(0.0);
    }
    let (lo, hi) = bisect(0.0, 1.0, ALPHA_TOL, |alpha| !violates_on_boundary(alpha));
    Ok(0.5 * (lo + hi))
}

/// One grid point of an `(α, η)` scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanCell {
    pub alpha: f64,
    pub eta: f64,
    pub theta: f64,
    pub quantum_value: f64,
    pub standard_bound: f64,
    pub modified_bound: f64,
    pub delta_standard: f64,
    pub delta_modified: f64,
    /// `false` when `α + η > 1`; the numeric fields are then NaN.
    pub feasible: bool,
    pub class: ViolationClass,
}

impl ScanCell {
    /// Evaluates a single cell. Infeasible parameters give a NaN-filled cell
    /// classed `None`.
    pub fn evaluate(theta: f64, alpha: f64, eta: f64) -> Self {
        match PovmParams::new(alpha, eta) {
            Ok(params) => {
                let quantum_value = closed_form_biased_unchecked(theta, alpha, eta);
                let modified_bound = closed_form_local_bound(params);
                let delta_standard = quantum_value - STANDARD_BOUND;
                let delta_modified = quantum_value - modified_bound;
                ScanCell {
                    alpha,
                    eta,
                    theta,
                    quantum_value,
                    standard_bound: STANDARD_BOUND,
                    modified_bound,
                    delta_standard,
                    delta_modified,
                    feasible: true,
                    class: ViolationClass::classify(delta_standard, delta_modified),
                }
            }
            Err(_) => ScanCell {
                alpha,
                eta,
                theta,
                quantum_value: f64::NAN,
                standard_bound: STANDARD_BOUND,
                modified_bound: f64::NAN,
                delta_standard: f64::NAN,
                delta_modified: f64::NAN,
                feasible: false,
                class: ViolationClass::None,
            },
        }
    }
}

/// Uniform grid over `α ∈ [0, 1] × η ∈ [0, 1]`, row-major with α outer.
/// Infeasible cells are kept so the output is always rectangular.
pub fn scan_region(theta: f64, alpha_steps: usize, eta_steps: usize) -> Result<Vec<ScanCell>> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            name: "theta",
            value: theta,
        });
    }
    for steps in [alpha_steps, eta_steps] {
        if steps < 2 {
            return Err(Error::TooFewSteps(steps));
        }
    }
    let axis = |i: usize, n: usize| i as f64 / (n - 1) as f64;
    let mut cells = Vec::with_capacity(alpha_steps * eta_steps);
    for i in 0..alpha_steps {
        let alpha = axis(i, alpha_steps);
        for j in 0..eta_steps {
            cells.push(ScanCell::evaluate(theta, alpha, axis(j, eta_steps)));
        }
    }
    Ok(cells)
}

/// Cell counts per class over the feasible part of a scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub feasible: usize,
    pub infeasible: usize,
    pub none: usize,
    pub modified_only: usize,
    pub both: usize,
}

impl ScanSummary {
    pub fn of(cells: &[ScanCell]) -> Self {
        let mut s = Self::default();
        for cell in cells {
            if !cell.feasible {
                s.infeasible += 1;
                continue;
            }
            s.feasible += 1;
            match cell.class {
                ViolationClass::None => s.none += 1,
                ViolationClass::ModifiedOnly => s.modified_only += 1,
                ViolationClass::Both => s.both += 1,
            }
        }
        s
    }
}
