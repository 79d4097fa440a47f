//! Local hidden-variable model for unsharp measurements.
//!
//! An ontic state assigns response functions to the *projectors* `P±` in the
//! spectral decomposition of each POVM; the POVM's response function is the
//! same convex combination of those projector responses that builds the effect
//! from the projectors. A deterministic strategy fixes, for each of the four
//! observables, which projector fires. Because the CHSH expression is
//! multilinear in the four projector-response probabilities, its maximum over
//! arbitrary (indeterministic) assignments, and hence over any mixture
//! `μ(λ|ρ)`, is attained at one of the 16 deterministic strategies.

use std::fmt;

use crate::error::Result;
use crate::povm::PovmParams;

/// Tolerance used to collect all strategies attaining the maximum.
pub const MAXIMIZER_TOL: f64 = 1e-12;

/// Which projector of a pair fires: `Plus` means `ξ(+1|P+) = 1, ξ(−1|P−) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Probability that `P+` fires under this assignment.
    pub fn plus_probability(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => 0.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One deterministic projector assignment for `A1, A2, B1, B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub s_a1: Sign,
    pub s_a2: Sign,
    pub s_b1: Sign,
    pub s_b2: Sign,
}

impl DeterministicStrategy {
    pub const fn new(s_a1: Sign, s_a2: Sign, s_b1: Sign, s_b2: Sign) -> Self {
        Self {
            s_a1,
            s_a2,
            s_b1,
            s_b2,
        }
    }

    pub const fn all_plus() -> Self {
        Self::new(Sign::Plus, Sign::Plus, Sign::Plus, Sign::Plus)
    }

    /// The 16 strategies, in binary order with `s_a1` as the most significant
    /// bit and `Plus` before `Minus`.
    pub fn all() -> impl Iterator<Item = Self> {
        (0u8..16).map(|bits| {
            let sign = |shift: u8| {
                if bits >> shift & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            };
            Self::new(sign(3), sign(2), sign(1), sign(0))
        })
    }

    /// Every sign reversed. Maps maximizers at `(α, η)` onto maximizers at
    /// `(−α, η)`: the `η²` part is even in the signs and the `αη` part odd.
    pub fn flipped(&self) -> Self {
        Self::new(
            self.s_a1.flip(),
            self.s_a2.flip(),
            self.s_b1.flip(),
            self.s_b2.flip(),
        )
    }

    pub fn signs(&self) -> [Sign; 4] {
        [self.s_a1, self.s_a2, self.s_b1, self.s_b2]
    }

    /// Probabilities that `P+` fires, in the order `A1, A2, B1, B2`.
    pub fn plus_probabilities(&self) -> [f64; 4] {
        self.signs().map(Sign::plus_probability)
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A1{} A2{} B1{} B2{})",
            self.s_a1, self.s_a2, self.s_b1, self.s_b2
        )
    }
}

/// POVM response function `[ξ(+|Π+), ξ(−|Π−)]` induced by an ontic state in
/// which `P+` fires with probability `p_plus` (and `P−` with `1 − p_plus`).
pub fn povm_response(p_plus: f64, params: PovmParams) -> [f64; 2] {
    let w = params.spectral_weights();
    let p_minus = 1.0 - p_plus;
    [
        w[0][0] * p_plus + w[0][1] * p_minus,
        w[1][0] * p_plus + w[1][1] * p_minus,
    ]
}

/// Outcome mean `ξ(+) − ξ(−)` of the POVM response; equals `α + η(2p − 1)`.
pub fn response_mean(p_plus: f64, params: PovmParams) -> f64 {
    let [plus, minus] = povm_response(p_plus, params);
    plus - minus
}

/// Per-ontic-state correlation `⟨A B⟩_λ` for a factorizable deterministic
/// assignment with common parameters `(α, η)`: `(α + η s_a)(α + η s_b)`.
pub fn strategy_correlation(s_a: Sign, s_b: Sign, alpha: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::new(alpha, eta)?;
    Ok(response_mean(s_a.plus_probability(), params)
        * response_mean(s_b.plus_probability(), params))
}

/// CHSH combination `c11 + c12 + c21 − c22` of a deterministic strategy.
pub fn strategy_chsh(strategy: &DeterministicStrategy, alpha: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::new(alpha, eta)?;
    Ok(strategy_chsh_with(strategy, params, params))
}

/// [`strategy_chsh`] with separate parameters for Alice and Bob.
pub fn strategy_chsh_with(
    strategy: &DeterministicStrategy,
    params_a: PovmParams,
    params_b: PovmParams,
) -> f64 {
    chsh_from_plus_probabilities(strategy.plus_probabilities(), params_a, params_b)
}

/// CHSH combination for an arbitrary factorizable assignment, given the
/// probabilities `[A1, A2, B1, B2]` that each observable's `P+` fires.
pub fn chsh_from_plus_probabilities(
    p_plus: [f64; 4],
    params_a: PovmParams,
    params_b: PovmParams,
) -> f64 {
    let a1 = response_mean(p_plus[0], params_a);
    let a2 = response_mean(p_plus[1], params_a);
    let b1 = response_mean(p_plus[2], params_b);
    let b2 = response_mean(p_plus[3], params_b);
    a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2
}

/// Outcome of exhaustive maximisation over the 16 deterministic strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct LhvBoundResult {
    pub bound: f64,
    pub maximizing_strategies: Vec<DeterministicStrategy>,
    /// `2(|α| + η)²` when both sides share `(α, η)`; `None` otherwise, since
    /// no closed form is known for unequal parameters.
    pub closed_form: Option<f64>,
}

impl LhvBoundResult {
    /// `|bound − closed_form|`, or `None` when there is no closed form.
    pub fn closed_form_gap(&self) -> Option<f64> {
        self.closed_form.map(|c| (self.bound - c).abs())
    }
}

/// `2(|α| + η)²`; reduces to `2η²` for unbiased POVMs and to 2 for projectors.
pub fn closed_form_local_bound(params: PovmParams) -> f64 {
    2.0 * (params.alpha().abs() + params.eta()).powi(2)
}

/// Local CHSH bound for common POVM parameters `(α, η)`.
pub fn lhv_bound_bruteforce(alpha: f64, eta: f64) -> Result<LhvBoundResult> {
    let params = PovmParams::new(alpha, eta)?;
    let mut result = maximize(params, params);
    result.closed_form = Some(closed_form_local_bound(params));
    Ok(result)
}

/// Local CHSH bound for per-side parameters. Reports a closed form only when
/// the two sides coincide.
pub fn lhv_bound_bruteforce_with(params_a: PovmParams, params_b: PovmParams) -> LhvBoundResult {
    let mut result = maximize(params_a, params_b);
    if params_a == params_b {
        result.closed_form = Some(closed_form_local_bound(params_a));
    }
    result
}

fn maximize(params_a: PovmParams, params_b: PovmParams) -> LhvBoundResult {
    let scored: Vec<(DeterministicStrategy, f64)> = DeterministicStrategy::all()
        .map(|s| (s, strategy_chsh_with(&s, params_a, params_b)))
        .collect();
    let bound = scored
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let maximizing_strategies = scored
        .into_iter()
        .filter(|&(_, v)| bound - v <= MAXIMIZER_TOL)
        .map(|(s, _)| s)
        .collect();
    LhvBoundResult {
        bound,
        maximizing_strategies,
        closed_form: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use Sign::{Minus, Plus};

    #[test]
    fn enumerates_sixteen_distinct_strategies() {
        let all: Vec<_> = DeterministicStrategy::all().collect();
        assert_eq!(all.len(), 16);
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), 16);
        assert_eq!(all[0], DeterministicStrategy::all_plus());
    }

    #[test]
    fn response_function_is_a_probability_distribution() {
        let params = PovmParams::new(-0.3, 0.6).unwrap();
        for p in [0.0, 0.25, 1.0] {
            let [plus, minus] = povm_response(p, params);
            assert!((plus + minus - 1.0).abs() < 1e-15);
            assert!((0.0..=1.0).contains(&plus) && (0.0..=1.0).contains(&minus));
            assert!((plus - minus - (-0.3 + 0.6 * (2.0 * p - 1.0))).abs() < 1e-15);
        }
    }

    #[test]
    fn strategy_correlation_examples() {
        assert!((strategy_correlation(Plus, Plus, 0.0, 0.7).unwrap() - 0.49).abs() < 1e-15);
        assert_eq!(strategy_correlation(Plus, Minus, 0.0, 1.0).unwrap(), -1.0);
        assert!((strategy_correlation(Plus, Minus, 0.3, 0.4).unwrap() + 0.07).abs() < 1e-15);
        assert!(matches!(
            strategy_correlation(Plus, Plus, 0.5, 0.6),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn strategy_chsh_examples() {
        let s = DeterministicStrategy::all_plus();
        assert!((strategy_chsh(&s, 0.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((strategy_chsh(&s, 0.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((strategy_chsh(&s, 0.2, 0.6).unwrap() - 1.28).abs() < 1e-15);
    }

    #[test]
    fn strategy_chsh_matches_expansion() {
        // η²(s_a1 s_b1 + s_a1 s_b2 + s_a2 s_b1 − s_a2 s_b2) + 2α² + 2αη(s_a1 + s_b1)
        for (alpha, eta) in [(0.0, 1.0), (0.3, 0.4), (-0.25, 0.55), (0.1, 0.0)] {
            for s in DeterministicStrategy::all() {
                let [a1, a2, b1, b2] = s.signs().map(Sign::value);
                let expansion = eta * eta * (a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2)
                    + 2.0 * alpha * alpha
                    + 2.0 * alpha * eta * (a1 + b1);
                let v = strategy_chsh(&s, alpha, eta).unwrap();
                assert!((v - expansion).abs() < 1e-14, "{s} at ({alpha}, {eta})");
            }
        }
    }

    #[test]
    fn bound_examples() {
        let sharp = lhv_bound_bruteforce(0.0, 1.0).unwrap();
        assert!((sharp.bound - 2.0).abs() < 1e-15);
        assert_eq!(sharp.closed_form, Some(2.0));
        // Sharp CHSH is maximised by 8 of the 16 strategies.
        assert_eq!(sharp.maximizing_strategies.len(), 8);

        let half = lhv_bound_bruteforce(0.0, 0.5).unwrap();
        assert!((half.bound - 0.5).abs() < 1e-15);

        let neg = lhv_bound_bruteforce(-0.3, 0.4).unwrap();
        assert!((neg.bound - 0.98).abs() < 1e-15);
        assert!(neg
            .maximizing_strategies
            .iter()
            .all(|s| s.s_a1 == Minus && s.s_b1 == Minus));
        assert!(!neg.maximizing_strategies.is_empty());
        assert!(neg.closed_form_gap().unwrap() < 1e-12);
    }

    #[test]
    fn asymmetric_bound_has_no_closed_form() {
        let a = PovmParams::new(0.1, 0.6).unwrap();
        let b = PovmParams::new(0.0, 0.9).unwrap();
        let r = lhv_bound_bruteforce_with(a, b);
        assert_eq!(r.closed_form, None);
        assert_eq!(r.closed_form_gap(), None);
        assert!(r.bound > 0.0);
        let sym = lhv_bound_bruteforce_with(a, a);
        assert!(sym.closed_form_gap().unwrap() < 1e-12);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(lhv_bound_bruteforce(0.6, 0.6).is_err());
        assert!(lhv_bound_bruteforce(0.0, 1.5).is_err());
    }
}
