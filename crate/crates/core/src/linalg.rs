//! Fixed-size complex matrices for single-qubit (2×2) and two-qubit (4×4)
//! operators, plus the handful of operations the rest of the crate needs.
//!
//! Everything here is a `Copy` value type. There is deliberately no general
//! N×N machinery.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the imaginary residue of `Tr[ab]` for Hermitian inputs.
pub const TRACE_IMAG_TOL: f64 = 1e-10;
/// Tolerance used when checking that a matrix is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Inputs to [`BlochVector::new`] within this distance of unit norm are
/// renormalised; anything farther is rejected.
pub const BLOCH_NORM_SLACK: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2(pub [[Complex64; 2]; 2]);

/// A 4×4 complex matrix, stored row-major in the computational basis
/// `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self(entries)
    }

    /// Builds a matrix from real entries.
    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in entries.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out[r][c] = Complex64::new(v, 0.0);
            }
        }
        Self(out)
    }

    pub const fn zeros() -> Self {
        Self([[ZERO; 2]; 2])
    }

    pub const fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        Self([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Self([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = self.0;
        for z in out.iter_mut().flatten() {
            *z = f(*z);
        }
        Self(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let mut out = [[ZERO; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = f(self.0[r][c], other.0[r][c]);
            }
        }
        Self(out)
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Neg for ComplexMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c];
            }
        }
        Self(out)
    }
}

impl ComplexMatrix4 {
    pub const fn new(entries: [[Complex64; 4]; 4]) -> Self {
        Self(entries)
    }

    pub const fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (k, row) in out.iter_mut().enumerate() {
            row[k] = ONE;
        }
        Self(out)
    }

    /// Builds a diagonal matrix from real entries.
    pub fn diag(values: [f64; 4]) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (k, &v) in values.iter().enumerate() {
            out[k][k] = Complex64::new(v, 0.0);
        }
        Self(out)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.0;
        for z in out.iter_mut().flatten() {
            *z *= factor;
        }
        Self(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[c][r].conj();
            }
        }
        Self(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Attempts a Cholesky factorisation of `self + shift·𝕀`. Succeeds iff the
    /// shifted matrix is positive definite, i.e. iff every eigenvalue of a
    /// Hermitian `self` exceeds `-shift`.
    pub fn is_positive_with_shift(&self, shift: f64) -> bool {
        let mut l = [[ZERO; 4]; 4];
        for j in 0..4 {
            let mut pivot = self.0[j][j].re + shift;
            for k in 0..j {
                pivot -= l[j][k].norm_sqr();
            }
            if !(pivot > 0.0) {
                return false;
            }
            let d = pivot.sqrt();
            l[j][j] = Complex64::new(d, 0.0);
            for i in (j + 1)..4 {
                let mut s = self.0[i][j];
                for k in 0..j {
                    s -= l[i][k] * l[j][k].conj();
                }
                l[i][j] = s / d;
            }
        }
        true
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] += rhs.0[r][c];
            }
        }
        Self(out)
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self.0;
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] -= rhs.0[r][c];
            }
        }
        Self(out)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        Self(out)
    }
}

/// A unit vector on the Bloch sphere, naming a spin-observable direction.
///
/// Construction renormalises inputs whose norm lies within
/// [`BLOCH_NORM_SLACK`] of one and rejects everything else, so a value of this
/// type is always unit length to machine precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > BLOCH_NORM_SLACK {
            return Err(Error::NonUnitBlochVector { x, y, z, norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Direction from spherical angles (polar angle from +z, azimuth from +x).
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        Self {
            x: polar.sin() * azimuth.cos(),
            y: polar.sin() * azimuth.sin(),
            z: polar.cos(),
        }
    }

    pub const fn x_axis() -> Self {
        Self {
            x: 1.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub const fn y_axis() -> Self {
        Self {
            x: 0.0,
            y: 1.0,
            z: 0.0,
        }
    }

    pub const fn z_axis() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
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

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn negated(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// The spin observable `a·σ = x σ_x + y σ_y + z σ_z`.
///
/// Hermitian, traceless, with eigenvalues ±1. Unit length is guaranteed by
/// [`BlochVector`], so this cannot fail.
pub fn bloch_to_observable(a: &BlochVector) -> ComplexMatrix2 {
    let (x, y, z) = (a.x, a.y, a.z);
    ComplexMatrix2([
        [Complex64::new(z, 0.0), Complex64::new(x, -y)],
        [Complex64::new(x, y), Complex64::new(-z, 0.0)],
    ])
}

/// Kronecker product `m ⊗ n`, with `m` acting on the first (Alice's) qubit.
pub fn kron(m: &ComplexMatrix2, n: &ComplexMatrix2) -> ComplexMatrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, m_row) in m.0.iter().enumerate() {
        for (j, &mij) in m_row.iter().enumerate() {
            for (k, n_row) in n.0.iter().enumerate() {
                for (l, &nkl) in n_row.iter().enumerate() {
                    out[2 * i + k][2 * j + l] = mij * nkl;
                }
            }
        }
    }
    ComplexMatrix4(out)
}

/// `Tr[a·b]` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix4, b: &ComplexMatrix4) -> Complex64 {
    let mut acc = ZERO;
    for r in 0..4 {
        for k in 0..4 {
            acc += a.0[r][k] * b.0[k][r];
        }
    }
    acc
}

/// `Re Tr[a·b]` for Hermitian `a`, `b`. An imaginary residue larger than
/// [`TRACE_IMAG_TOL`] means one of the inputs was not Hermitian.
pub fn trace_product(a: &ComplexMatrix4, b: &ComplexMatrix4) -> Result<f64> {
    let t = trace_of_product(a, b);
    if t.im.abs() >= TRACE_IMAG_TOL {
        return Err(Error::ImaginaryTrace { residue: t.im });
    }
    Ok(t.re)
}

/// Smaller eigenvalue of a Hermitian 2×2 matrix, `(tr − √(tr² − 4 det))/2`.
///
/// The discriminant is evaluated as `(m₀₀ − m₁₁)² + 4|m₀₁|²`, which is the same
/// quantity for Hermitian input but is never negative.
pub fn min_eigenvalue_hermitian2(m: &ComplexMatrix2) -> Result<f64> {
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NotHermitian);
    }
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let disc = (a - d) * (a - d) + 4.0 * m.0[0][1].norm_sqr();
    Ok(((a + d) - disc.sqrt()) / 2.0)
}
