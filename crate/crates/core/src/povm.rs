//! Dichotomic spin-POVMs of the form `Π± = (𝕀 ± (α𝕀 + η a·σ))/2`.
//!
//! `η` is the sharpness and `α` the bias. `α = 0` gives the unbiased family
//! and `α = 0, η = 1` gives the projective measurement along `a`. All
//! parameter validation happens in [`PovmParams::new`].

use crate::error::{Error, Result};
use crate::linalg::{bloch_to_observable, min_eigenvalue_hermitian2, BlochVector, ComplexMatrix2};

/// Slack on `|α| + η ≤ 1`, so boundary POVMs built from rounded inputs
/// (e.g. `0.3 + 0.7`) are still accepted.
pub const POSITIVITY_SLACK: f64 = 1e-12;

/// Bias and sharpness of a dichotomic spin-POVM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmParams {
    alpha: f64,
    eta: f64,
}

impl PovmParams {
    /// Validates `0 ≤ η ≤ 1` and `|α| + η ≤ 1`. Negative `α` is allowed.
    pub fn new(alpha: f64, eta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite {
                name: "alpha",
                value: alpha,
            });
        }
        if !eta.is_finite() {
            return Err(Error::NonFinite {
                name: "eta",
                value: eta,
            });
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::SharpnessOutOfRange(eta));
        }
        let sum = alpha.abs() + eta;
        if sum > 1.0 + POSITIVITY_SLACK {
            return Err(Error::NotPositive { alpha, eta, sum });
        }
        Ok(Self { alpha, eta })
    }

    /// `α = 0` with the given sharpness.
    pub fn unbiased(eta: f64) -> Result<Self> {
        Self::new(0.0, eta)
    }

    /// The projective limit `α = 0, η = 1`.
    pub const fn sharp() -> Self {
        Self {
            alpha: 0.0,
            eta: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Weights of the projector decomposition: `Π± = w[±][0] P+ + w[±][1] P−`
    /// with `w[+] = ((1+α+η)/2, (1+α−η)/2)` and `w[−] = ((1−α−η)/2, (1−α+η)/2)`.
    /// These four numbers are also the effect eigenvalues.
    pub fn spectral_weights(&self) -> [[f64; 2]; 2] {
        let (a, e) = (self.alpha, self.eta);
        [
            [(1.0 + a + e) / 2.0, (1.0 + a - e) / 2.0],
            [(1.0 - a - e) / 2.0, (1.0 - a + e) / 2.0],
        ]
    }
}

/// Sharp projectors `P± = (𝕀 ± a·σ)/2` onto the spin-up/down states along `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorPair {
    pub plus: ComplexMatrix2,
    pub minus: ComplexMatrix2,
    pub direction: BlochVector,
}

pub fn projectors(a: &BlochVector) -> ProjectorPair {
    let id = ComplexMatrix2::identity();
    let obs = bloch_to_observable(a);
    ProjectorPair {
        plus: (id + obs).scale(0.5),
        minus: (id - obs).scale(0.5),
        direction: *a,
    }
}

/// The two effects `{Π+, Π−}` of a dichotomic spin-POVM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectPair {
    plus: ComplexMatrix2,
    minus: ComplexMatrix2,
    params: PovmParams,
    direction: BlochVector,
}

impl EffectPair {
    pub fn plus(&self) -> &ComplexMatrix2 {
        &self.plus
    }

    pub fn minus(&self) -> &ComplexMatrix2 {
        &self.minus
    }

    pub fn params(&self) -> PovmParams {
        self.params
    }

    pub fn direction(&self) -> BlochVector {
        self.direction
    }

    /// `Π+ − Π− = α𝕀 + η a·σ`, the operator whose expectation is the outcome mean.
    pub fn difference(&self) -> ComplexMatrix2 {
        self.plus - self.minus
    }

    /// Rebuilds both effects from the projector decomposition
    /// `Σ_s w[k][s] P^s`. Agrees with the direct form to rounding.
    pub fn spectral_form(&self) -> (ComplexMatrix2, ComplexMatrix2) {
        let p = projectors(&self.direction);
        let w = self.params.spectral_weights();
        (
            p.plus.scale(w[0][0]) + p.minus.scale(w[0][1]),
            p.plus.scale(w[1][0]) + p.minus.scale(w[1][1]),
        )
    }

    /// Smallest eigenvalue over both effects; non-negative for a valid POVM.
    pub fn min_eigenvalue(&self) -> f64 {
        // Both effects are Hermitian by construction.
        let lo_plus = min_eigenvalue_hermitian2(&self.plus).expect("effect is Hermitian");
        let lo_minus = min_eigenvalue_hermitian2(&self.minus).expect("effect is Hermitian");
        lo_plus.min(lo_minus)
    }
}

/// `Π± = (𝕀 ± η a·σ)/2`.
pub fn unbiased_povm(a: &BlochVector, eta: f64) -> Result<EffectPair> {
    Ok(biased_povm(a, PovmParams::unbiased(eta)?))
}

/// `Π± = (𝕀 ± (α𝕀 + η a·σ))/2` for already-validated parameters.
pub fn biased_povm(a: &BlochVector, params: PovmParams) -> EffectPair {
    let id = ComplexMatrix2::identity();
    let diff = id.scale(params.alpha) + bloch_to_observable(a).scale(params.eta);
    EffectPair {
        plus: (id + diff).scale(0.5),
        minus: (id - diff).scale(0.5),
        params,
        direction: *a,
    }
}
