//! Dual real/complex vector representations and the gradient calculus for
//! real-valued quadratic costs of complex vectors.
//!
//! A complex vector in C^n is identified with a real vector in R^{2n} by
//! interleaving real and imaginary parts, `(v1.re, v1.im, ..., vn.re, vn.im)`.
//! Real-valued functions of complex vectors are differentiated through their
//! real coordinates; the complex derivative of coordinate `m` is assembled as
//! `d/d(re_m) + j * d/d(im_m)`. Under this convention the gradient of the
//! Hermitian quadratic form `f(x) = x^H A x` is `2 A x`.
//!
//! Note: this assembly carries no 1/2 factor, so for real-valued `f` it equals
//! twice the conjugate-Wirtinger derivative. The finite-difference oracle
//! [`fd_gradient`] uses the same convention, so the two routes are directly
//! comparable.

use num_complex::Complex;

use crate::error::{CcmError, Result};

/// Double-precision complex scalar used throughout.
pub type Complex64 = Complex<f64>;

/// Relative factor for the Hermitian symmetry check: a matrix is accepted when
/// `max |a_ik - conj(a_ki)| <= HERMITIAN_TOL_FACTOR * max |a_ik|`.
pub const HERMITIAN_TOL_FACTOR: f64 = 1e-10;

/// Relative factor bounding the residual imaginary part of the quadratic form.
pub const IMAG_TOL_FACTOR: f64 = 1e-10;

/// Default central-difference step for [`fd_gradient`].
pub const FD_DEFAULT_STEP: f64 = 1e-6;

/// Complex vector of dimension n >= 1 with all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec {
    entries: Vec<Complex64>,
}

impl ComplexVec {
    /// Validate and wrap a vector of complex entries.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(CcmError::EmptyVector);
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(CcmError::NonFinite {
                what: "complex vector entry",
            });
        }
        Ok(Self { entries })
    }

    /// All-zero vector of dimension `n`. Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "zero-dimensional vectors are not representable");
        Self {
            entries: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Euclidean norm, `sqrt(sum |v_i|^2)`.
    ///
    /// Accumulates real and imaginary squares in interleaved order, so the
    /// result is bitwise the square root of `inner_real(to_real(v), to_real(v))`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0, |acc, c| (acc + c.re * c.re) + c.im * c.im)
    }

    /// Max modulus over entries.
    pub fn norm_inf(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &ComplexVec) -> Result<ComplexVec> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ComplexVec) -> Result<ComplexVec> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Scale by a real factor.
    pub fn scale(&self, factor: f64) -> ComplexVec {
        Self {
            entries: self.entries.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn conj(&self) -> ComplexVec {
        Self {
            entries: self.entries.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Real coordinate vector of even length 2n, interleaved as
/// `(v1.re, v1.im, ..., vn.re, vn.im)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVec {
    entries: Vec<f64>,
}

impl RealVec {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(CcmError::EmptyVector);
        }
        if !entries.len().is_multiple_of(2) {
            return Err(CcmError::OddLength { len: entries.len() });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(CcmError::NonFinite {
                what: "real vector entry",
            });
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Interleave a complex vector into its 2n real coordinates.
pub fn to_real(v: &ComplexVec) -> RealVec {
    let mut entries = Vec::with_capacity(2 * v.dim());
    for c in v.entries() {
        entries.push(c.re);
        entries.push(c.im);
    }
    RealVec { entries }
}

/// Reassemble a complex vector from interleaved real coordinates.
/// Exact inverse of [`to_real`].
pub fn to_complex(v: &RealVec) -> ComplexVec {
    let entries = v
        .entries
        .chunks_exact(2)
        .map(|pair| Complex64::new(pair[0], pair[1]))
        .collect();
    ComplexVec { entries }
}

/// Real inner product `sum_i v_i w_i` over all 2n coordinates.
///
/// For complex forms `u`, `v` this equals `Re(sum_i u_i conj(v_i))`.
pub fn inner_real(v: &RealVec, w: &RealVec) -> Result<f64> {
    check_dims(v.len(), w.len())?;
    Ok(v.entries
        .iter()
        .zip(&w.entries)
        .fold(0.0, |acc, (a, b)| acc + a * b))
}

/// Element-wise product `u_i * v_i` (full complex multiplication).
pub fn hadamard(u: &ComplexVec, v: &ComplexVec) -> Result<ComplexVec> {
    check_dims(u.dim(), v.dim())?;
    Ok(ComplexVec {
        entries: u
            .entries
            .iter()
            .zip(&v.entries)
            .map(|(a, b)| a * b)
            .collect(),
    })
}

/// Hermitian n x n matrix, stored row-major. Construction validates
/// conjugate symmetry; it never repairs the input.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validate a row-major entry buffer of length n*n.
    ///
    /// Fails when `max |a_ik - conj(a_ki)|` exceeds
    /// `HERMITIAN_TOL_FACTOR * max |a_ik|`, naming the worst entry pair.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(CcmError::InvalidParameter(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(CcmError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(CcmError::NonFinite {
                what: "matrix entry",
            });
        }
        let max_abs = entries.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tolerance = HERMITIAN_TOL_FACTOR * max_abs;
        let mut worst = (0usize, 0usize, 0.0f64);
        for i in 0..n {
            for k in i..n {
                let dev = (entries[i * n + k] - entries[k * n + i].conj()).norm();
                if dev > worst.2 {
                    worst = (i, k, dev);
                }
            }
        }
        if worst.2 > tolerance {
            return Err(CcmError::NotHermitian {
                row: worst.0,
                col: worst.1,
                deviation: worst.2,
                tolerance,
            });
        }
        Ok(Self { n, entries })
    }

    /// Build from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(CcmError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    /// Explicit repair: build `(B + B^H) / 2` from an arbitrary square buffer.
    pub fn symmetrize(n: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(CcmError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let repaired: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (i, k) = (idx / n, idx % n);
                (entries[i * n + k] + entries[k * n + i].conj()) * 0.5
            })
            .collect();
        Self::new(n, repaired)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &ComplexVec) -> Result<ComplexVec> {
        check_dims(self.n, x.dim())?;
        let entries = (0..self.n)
            .map(|i| {
                x.entries()
                    .iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (k, w)| {
                        acc + self.entries[i * self.n + k] * w
                    })
            })
            .collect();
        Ok(ComplexVec { entries })
    }

    /// Max row sum of entry moduli (the infinity operator norm).
    pub fn row_inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                self.entries[i * self.n..(i + 1) * self.n]
                    .iter()
                    .map(|c| c.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(n: usize, entries: Vec<Complex64>) -> Self {
        Self { n, entries }
    }
}

/// Real value of the quadratic form `x^H A x`.
///
/// The imaginary part cancels for Hermitian `A`; it is verified to be below
/// `IMAG_TOL_FACTOR * (1 + |re|)` before being discarded.
pub fn quadratic_cost(a: &HermitianMatrix, x: &ComplexVec) -> Result<f64> {
    check_dims(a.dim(), x.dim())?;
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let wi_conj = x.entries()[i].conj();
        for k in 0..n {
            acc += wi_conj * a.get(i, k) * x.entries()[k];
        }
    }
    let tolerance = IMAG_TOL_FACTOR * (1.0 + acc.re.abs());
    if acc.im.abs() > tolerance {
        return Err(CcmError::NonRealCost {
            imag: acc.im.abs(),
            tolerance,
        });
    }
    Ok(acc.re)
}

/// Which real coordinate of a complex entry a partial derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Real part (the first coordinate of the R^2 pair).
    Real,
    /// Imaginary part (the second coordinate).
    Imag,
}

/// Partial derivative of `x^H A x` with respect to one real coordinate of
/// entry `m` (0-based): `2 Re(sum_k a_mk w_k)` for the real part,
/// `2 Im(sum_k a_mk w_k)` for the imaginary part.
pub fn partial_derivative(
    a: &HermitianMatrix,
    x: &ComplexVec,
    m: usize,
    part: Part,
) -> Result<f64> {
    check_dims(a.dim(), x.dim())?;
    if m >= a.dim() {
        return Err(CcmError::IndexOutOfRange {
            index: m,
            dim: a.dim(),
        });
    }
    let row_sum = x
        .entries()
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, w)| {
            acc + a.get(m, k) * w
        });
    Ok(match part {
        Part::Real => 2.0 * row_sum.re,
        Part::Imag => 2.0 * row_sum.im,
    })
}

/// Gradient of `x^H A x` in complex form: `2 A x`.
///
/// Component `m` equals
/// `partial_derivative(m, Real) + j * partial_derivative(m, Imag)`.
pub fn euclidean_gradient(a: &HermitianMatrix, x: &ComplexVec) -> Result<ComplexVec> {
    Ok(a.mul_vec(x)?.scale(2.0))
}

/// Central-difference gradient of an arbitrary real-valued cost, assembled
/// with the same convention as [`euclidean_gradient`]: component `m` is the
/// derivative along the real coordinate of entry `m` plus `j` times the
/// derivative along its imaginary coordinate.
pub fn fd_gradient<F>(mut cost: F, x: &ComplexVec, h: f64) -> Result<ComplexVec>
where
    F: FnMut(&ComplexVec) -> Result<f64>,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(CcmError::InvalidParameter(format!(
            "finite-difference step must be positive and finite, got {h}"
        )));
    }
    let mut work = x.entries().to_vec();
    let mut eval = |entries: &[Complex64]| -> Result<f64> {
        let value = cost(&ComplexVec {
            entries: entries.to_vec(),
        })?;
        if !value.is_finite() {
            return Err(CcmError::NonFinite {
                what: "cost evaluation",
            });
        }
        Ok(value)
    };
    let mut entries = Vec::with_capacity(x.dim());
    for m in 0..x.dim() {
        let original = work[m];

        work[m] = Complex64::new(original.re + h, original.im);
        let f_plus_re = eval(&work)?;
        work[m] = Complex64::new(original.re - h, original.im);
        let f_minus_re = eval(&work)?;

        work[m] = Complex64::new(original.re, original.im + h);
        let f_plus_im = eval(&work)?;
        work[m] = Complex64::new(original.re, original.im - h);
        let f_minus_im = eval(&work)?;

        work[m] = original;
        entries.push(Complex64::new(
            (f_plus_re - f_minus_re) / (2.0 * h),
            (f_plus_im - f_minus_im) / (2.0 * h),
        ));
    }
    Ok(ComplexVec { entries })
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(CcmError::DimensionMismatch { expected, found });
    }
    Ok(())
}
