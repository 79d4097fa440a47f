//! Two-qubit states, Born-rule correlations and CHSH values under POVM
//! measurement, along with the closed-form CHSH expressions for the
//! `cos θ|00⟩ + sin θ|11⟩` family at the canonical settings.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, trace_product, BlochVector, ComplexMatrix4, HERMITIAN_TOL};
use crate::povm::{biased_povm, EffectPair, PovmParams};

/// Most negative eigenvalue tolerated in a density matrix.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-12;

/// A validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix4,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::InvalidDensityMatrix("not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        // M + εI is positive definite iff every eigenvalue of M exceeds -ε.
        if !matrix.is_positive_with_shift(POSITIVITY_TOL) {
            return Err(Error::InvalidDensityMatrix(
                "not positive semidefinite".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// Builds a state from 16 complex entries given as 32 reals, row-major,
    /// each entry as a `(re, im)` pair.
    pub fn from_row_major_pairs(values: &[f64]) -> Result<Self> {
        if values.len() != 32 {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected 32 reals (16 complex entries), got {}",
                values.len()
            )));
        }
        let mut m = ComplexMatrix4::zeros();
        for (k, pair) in values.chunks_exact(2).enumerate() {
            m.0[k / 4][k % 4] = Complex64::new(pair[0], pair[1]);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    /// `Tr[ρ O]` for a Hermitian observable `O`.
    pub fn expectation(&self, observable: &ComplexMatrix4) -> Result<f64> {
        trace_product(&self.matrix, observable)
    }
}

/// `|ψ⟩⟨ψ|` for `|ψ⟩ = cos θ|00⟩ + sin θ|11⟩` (θ in radians).
pub fn pure_state(theta: f64) -> DensityMatrix {
    let (s, c) = theta.sin_cos();
    let mut m = ComplexMatrix4::zeros();
    m.0[0][0] = Complex64::new(c * c, 0.0);
    m.0[0][3] = Complex64::new(c * s, 0.0);
    m.0[3][0] = Complex64::new(c * s, 0.0);
    m.0[3][3] = Complex64::new(s * s, 0.0);
    DensityMatrix { matrix: m }
}

/// `p·|Φ+⟩⟨Φ+| + (1−p)·𝕀/4`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::WernerWeightOutOfRange(p));
    }
    let bell = pure_state(FRAC_PI_4).matrix;
    let noise = ComplexMatrix4::identity().scale(0.25);
    DensityMatrix::new(bell.scale(p) + noise.scale(1.0 - p))
}

/// Alice's directions `a1, a2` and Bob's `b1, b2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    pub a1: BlochVector,
    pub a2: BlochVector,
    pub b1: BlochVector,
    pub b2: BlochVector,
}

impl MeasurementSettings {
    /// `a1 = ẑ, a2 = x̂, b1 = (ẑ+x̂)/√2, b2 = (ẑ−x̂)/√2`. The closed forms in
    /// this module assume these settings.
    pub fn canonical() -> Self {
        Self {
            a1: BlochVector::z_axis(),
            a2: BlochVector::x_axis(),
            b1: BlochVector::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).expect("unit"),
            b2: BlochVector::new(-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).expect("unit"),
        }
    }
}

/// Born-rule probabilities `Tr[ρ (E_a ⊗ F_b)]`, indexed `[a][b]` with index 0
/// for outcome +1 and 1 for outcome −1.
pub fn joint_probabilities(
    rho: &DensityMatrix,
    alice: &EffectPair,
    bob: &EffectPair,
) -> Result<[[f64; 2]; 2]> {
    let a_effects = [alice.plus(), alice.minus()];
    let b_effects = [bob.plus(), bob.minus()];
    let mut out = [[0.0; 2]; 2];
    for (i, ea) in a_effects.iter().enumerate() {
        for (j, fb) in b_effects.iter().enumerate() {
            out[i][j] = rho.expectation(&kron(ea, fb))?;
        }
    }
    Ok(out)
}

/// `⟨AB⟩ = Σ_{a,b=±1} a·b·Tr[ρ (E_a ⊗ F_b)]`.
pub fn correlation(rho: &DensityMatrix, alice: &EffectPair, bob: &EffectPair) -> Result<f64> {
    let p = joint_probabilities(rho, alice, bob)?;
    Ok(p[0][0] - p[0][1] - p[1][0] + p[1][1])
}

/// `⟨A1B1⟩ + ⟨A1B2⟩ + ⟨A2B1⟩ − ⟨A2B2⟩` with every observable measured by the
/// POVM of its side's parameters.
pub fn chsh_value(
    rho: &DensityMatrix,
    settings: &MeasurementSettings,
    params_a: PovmParams,
    params_b: PovmParams,
) -> Result<f64> {
    let a1 = biased_povm(&settings.a1, params_a);
    let a2 = biased_povm(&settings.a2, params_a);
    let b1 = biased_povm(&settings.b1, params_b);
    let b2 = biased_povm(&settings.b2, params_b);
    Ok(
        correlation(rho, &a1, &b1)? + correlation(rho, &a1, &b2)? + correlation(rho, &a2, &b1)?
            - correlation(rho, &a2, &b2)?,
    )
}

/// `√2 η² (1 + sin 2θ)`: the CHSH value of `pure_state(θ)` at the canonical
/// settings with unbiased POVMs of sharpness η on both sides.
pub fn closed_form_unbiased(theta: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::unbiased(eta)?;
    Ok(SQRT_2 * params.eta().powi(2) * (1.0 + (2.0 * theta).sin()))
}

/// `√2 η (α cos 2θ + η sin 2θ + η) + 2α (α + η cos 2θ)`: the same for biased
/// POVMs with parameters `(α, η)` on both sides.
pub fn closed_form_biased(theta: f64, alpha: f64, eta: f64) -> Result<f64> {
    let params = PovmParams::new(alpha, eta)?;
    Ok(closed_form_biased_unchecked(
        theta,
        params.alpha(),
        params.eta(),
    ))
}

pub(crate) fn closed_form_biased_unchecked(theta: f64, alpha: f64, eta: f64) -> f64 {
    let (s, c) = (2.0 * theta).sin_cos();
    SQRT_2 * eta * (alpha * c + eta * s + eta) + 2.0 * alpha * (alpha + eta * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix2;
    use crate::povm::{projectors, unbiased_povm};
    use std::f64::consts::{FRAC_PI_6, PI};

    fn re(m: &ComplexMatrix4, r: usize, c: usize) -> f64 {
        m.get(r, c).re
    }

    #[test]
    fn pure_state_examples() {
        let product = pure_state(0.0);
        assert_eq!(
            *product.matrix(),
            ComplexMatrix4::diag([1.0, 0.0, 0.0, 0.0])
        );

        let bell = pure_state(FRAC_PI_4);
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((re(bell.matrix(), r, c) - 0.5).abs() < 1e-15);
        }

        let s = pure_state(FRAC_PI_6);
        let m = s.matrix();
        assert!((re(m, 0, 0) - 0.75).abs() < 1e-15);
        assert!((re(m, 3, 3) - 0.25).abs() < 1e-15);
        assert!((re(m, 0, 3) - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert!(DensityMatrix::new(*m).is_ok());
    }

    #[test]
    fn pure_states_pass_validation_everywhere() {
        for k in 0..64 {
            let theta = -PI + k as f64 * 0.1;
            assert!(
                DensityMatrix::new(*pure_state(theta).matrix()).is_ok(),
                "theta {theta}"
            );
        }
    }

    #[test]
    fn werner_examples() {
        assert!(
            werner_state(1.0)
                .unwrap()
                .matrix()
                .max_abs_diff(pure_state(FRAC_PI_4).matrix())
                < 1e-15
        );
        assert_eq!(
            *werner_state(0.0).unwrap().matrix(),
            ComplexMatrix4::identity().scale(0.25)
        );
        let half = werner_state(0.5).unwrap();
        let m = half.matrix();
        for (k, expected) in [0.375, 0.125, 0.125, 0.375].into_iter().enumerate() {
            assert!((re(m, k, k) - expected).abs() < 1e-15);
        }
        assert!((re(m, 0, 3) - 0.25).abs() < 1e-15);
        assert!((re(m, 3, 0) - 0.25).abs() < 1e-15);
        assert_eq!(werner_state(1.5), Err(Error::WernerWeightOutOfRange(1.5)));
        assert!(werner_state(-0.1).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let not_unit = ComplexMatrix4::identity();
        assert!(DensityMatrix::new(not_unit).is_err());

        let negative = ComplexMatrix4::diag([0.6, 0.6, -0.2, 0.0]);
        assert!(DensityMatrix::new(negative).is_err());

        let mut non_herm = ComplexMatrix4::diag([0.5, 0.5, 0.0, 0.0]);
        non_herm.0[0][1] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(non_herm).is_err());

        // Off-diagonal coherence too large for the populations.
        let mut too_coherent = ComplexMatrix4::diag([0.5, 0.0, 0.0, 0.5]);
        too_coherent.0[0][3] = Complex64::new(0.0, 0.6);
        too_coherent.0[3][0] = Complex64::new(0.0, -0.6);
        assert!(DensityMatrix::new(too_coherent).is_err());
        too_coherent.0[0][3] = Complex64::new(0.0, 0.5);
        too_coherent.0[3][0] = Complex64::new(0.0, -0.5);
        assert!(DensityMatrix::new(too_coherent).is_ok());
    }

    #[test]
    fn row_major_pairs() {
        let mut values = vec![0.0; 32];
        values[0] = 0.5; // (0,0)
        values[6] = 0.5; // (0,3)
        values[24] = 0.5; // (3,0)
        values[30] = 0.5; // (3,3)
        let rho = DensityMatrix::from_row_major_pairs(&values).unwrap();
        assert!(rho.matrix().max_abs_diff(pure_state(FRAC_PI_4).matrix()) < 1e-15);
        assert!(DensityMatrix::from_row_major_pairs(&values[..30]).is_err());
    }

    #[test]
    fn trace_product_state_examples() {
        let zz = kron(&ComplexMatrix2::pauli_z(), &ComplexMatrix2::pauli_z());
        let xx = kron(&ComplexMatrix2::pauli_x(), &ComplexMatrix2::pauli_x());
        assert!((pure_state(FRAC_PI_4).expectation(&zz).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(pure_state(0.0).expectation(&xx).unwrap(), 0.0);
    }

    #[test]
    fn correlation_examples() {
        let z = BlochVector::z_axis();
        let bell = pure_state(FRAC_PI_4);
        let sharp = unbiased_povm(&z, 1.0).unwrap();
        assert!((correlation(&bell, &sharp, &sharp).unwrap() - 1.0).abs() < 1e-15);

        let trivial = unbiased_povm(&z, 0.0).unwrap();
        assert_eq!(
            correlation(&pure_state(0.3), &trivial, &trivial).unwrap(),
            0.0
        );

        let unsharp = unbiased_povm(&z, 0.6).unwrap();
        assert!((correlation(&bell, &unsharp, &unsharp).unwrap() - 0.36).abs() < 1e-15);
    }

    #[test]
    fn correlation_matches_difference_operator() {
        let rho = werner_state(0.7).unwrap();
        let a = biased_povm(
            &BlochVector::from_angles(0.3, 1.2),
            PovmParams::new(0.1, 0.5).unwrap(),
        );
        let b = biased_povm(
            &BlochVector::from_angles(2.0, -0.4),
            PovmParams::new(-0.2, 0.7).unwrap(),
        );
        let direct = rho
            .expectation(&kron(&a.difference(), &b.difference()))
            .unwrap();
        assert!((correlation(&rho, &a, &b).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn joint_probabilities_sum_to_one() {
        let rho = pure_state(0.4);
        let a = biased_povm(&BlochVector::x_axis(), PovmParams::new(0.2, 0.5).unwrap());
        let b = biased_povm(
            &projectors(&BlochVector::z_axis()).direction,
            PovmParams::sharp(),
        );
        let p = joint_probabilities(&rho, &a, &b).unwrap();
        let total: f64 = p.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!(p.iter().flatten().all(|&x| x >= -1e-15));
    }

    #[test]
    fn chsh_examples() {
        let canon = MeasurementSettings::canonical();
        let bell = pure_state(FRAC_PI_4);
        let sharp = PovmParams::sharp();
        let v = chsh_value(&bell, &canon, sharp, sharp).unwrap();
        assert!((v - 2.0 * SQRT_2).abs() < 1e-12);

        let trivial = PovmParams::unbiased(0.0).unwrap();
        assert_eq!(chsh_value(&bell, &canon, trivial, trivial).unwrap(), 0.0);

        let p = PovmParams::new(0.2, 0.5).unwrap();
        let matrix = chsh_value(&pure_state(FRAC_PI_6), &canon, p, p).unwrap();
        let closed = closed_form_biased(FRAC_PI_6, 0.2, 0.5).unwrap();
        assert!((matrix - closed).abs() < 1e-10);
    }

    #[test]
    fn closed_form_unbiased_examples() {
        assert!((closed_form_unbiased(FRAC_PI_4, 1.0).unwrap() - 2.0 * SQRT_2).abs() < 1e-15);
        assert!((closed_form_unbiased(0.0, 0.7).unwrap() - SQRT_2 * 0.49).abs() < 1e-15);
        assert!(
            (closed_form_unbiased(FRAC_PI_4, 0.5).unwrap() - 0.707_106_781_186_547_5).abs() < 1e-15
        );
        assert!(closed_form_unbiased(0.0, 1.1).is_err());
    }

    #[test]
    fn closed_form_biased_examples() {
        for theta in [0.0, 0.3, FRAC_PI_6, FRAC_PI_4, 1.2] {
            for eta in [0.0, 0.4, 1.0] {
                let biased = closed_form_biased(theta, 0.0, eta).unwrap();
                assert!((biased - closed_form_unbiased(theta, eta).unwrap()).abs() < 1e-15);
            }
        }
        let v = closed_form_biased(FRAC_PI_4, 0.1, 0.6).unwrap();
        assert!((v - 1.038_233_764_908_627).abs() < 1e-12);
        let v = closed_form_biased(FRAC_PI_6, 0.2, 0.5).unwrap();
        assert!((v - 0.910_450_286_559_826).abs() < 1e-12);
        assert!(closed_form_biased(0.0, 0.5, 0.6).is_err());
    }
}
