//! The complex circle manifold: unit-modulus complex vectors, their tangent
//! spaces, the orthogonal projection, the Riemannian gradient, and a
//! componentwise retraction.
//!
//! A point `x` has `|x_i| = 1` in every entry. A direction `z` is tangent at
//! `x` when `Re(z_i * conj(x_i)) = 0` for all `i`, i.e. each component is
//! perpendicular (in the R^2 sense) to its base-point component. The
//! projection removes the normal part: `P_x(z) = z - Re(z ⊙ conj(x)) ⊙ x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cr_calculus::{euclidean_gradient, Complex64, ComplexVec, HermitianMatrix};
use crate::error::{CcmError, Result};

/// Membership tolerance on `| |x_i| - 1 |` for manifold points.
pub const POINT_TOL: f64 = 1e-9;

/// Relative factor for tangency validation: residual must stay below
/// `TANGENT_TOL_FACTOR * (1 + max |z_i|)`.
pub const TANGENT_TOL_FACTOR: f64 = 1e-9;

/// Below this modulus of `x_i + xi_i` the retraction direction is undefined.
pub const RETRACT_FLOOR: f64 = 1e-12;

/// A point on the product of unit circles: every entry has modulus 1
/// within [`POINT_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldPoint {
    x: ComplexVec,
}

impl ManifoldPoint {
    /// Validate with the default [`POINT_TOL`].
    pub fn new(x: ComplexVec) -> Result<Self> {
        check_point(x, POINT_TOL)
    }

    /// Wrap without validating the unit-modulus invariant.
    ///
    /// Intended for negative-control diagnostics that need a deliberately
    /// off-manifold "point"; everything built on top will report honest
    /// residuals for it.
    pub fn new_unchecked(x: ComplexVec) -> Self {
        Self { x }
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn as_vec(&self) -> &ComplexVec {
        &self.x
    }

    pub fn into_vec(self) -> ComplexVec {
        self.x
    }
}

/// Validate that every entry of `x` has modulus 1 within `tol`, reporting the
/// worst offender otherwise.
pub fn check_point(x: ComplexVec, tol: f64) -> Result<ManifoldPoint> {
    let mut worst = (0usize, 0.0f64, 0.0f64);
    for (i, c) in x.entries().iter().enumerate() {
        let modulus = c.norm();
        let dev = (modulus - 1.0).abs();
        if dev > worst.1 {
            worst = (i, dev, modulus);
        }
    }
    if worst.1 > tol {
        return Err(CcmError::OffManifold {
            index: worst.0,
            modulus: worst.2,
            tolerance: tol,
        });
    }
    Ok(ManifoldPoint { x })
}

/// Deterministic random point: entry `i` is `exp(j theta_i)` with phases
/// drawn i.i.d. uniform on `[0, 2 pi)` from a seeded stream.
pub fn random_point(n: usize, seed: u64) -> Result<ManifoldPoint> {
    if n == 0 {
        return Err(CcmError::InvalidParameter(
            "manifold dimension must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n)
        .map(|_| {
            let theta = std::f64::consts::TAU * rng.gen::<f64>();
            Complex64::from_polar(1.0, theta)
        })
        .collect();
    check_point(ComplexVec::new(entries)?, POINT_TOL)
}

/// A direction `z` anchored at a point `x` with `Re(z ⊙ conj(x)) = 0`
/// within the scaled tangency tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    base: ManifoldPoint,
    z: ComplexVec,
}

impl TangentVector {
    /// Validate tangency of `z` at `base`.
    pub fn new(base: &ManifoldPoint, z: ComplexVec) -> Result<Self> {
        if base.dim() != z.dim() {
            return Err(CcmError::DimensionMismatch {
                expected: base.dim(),
                found: z.dim(),
            });
        }
        let residual = normal_residual_inf(base.as_vec(), &z);
        let tolerance = TANGENT_TOL_FACTOR * (1.0 + z.norm_inf());
        if residual > tolerance {
            return Err(CcmError::NotTangent {
                residual,
                tolerance,
            });
        }
        Ok(Self {
            base: base.clone(),
            z,
        })
    }

    /// The zero direction at `base`.
    pub fn zero(base: &ManifoldPoint) -> Self {
        Self {
            base: base.clone(),
            z: ComplexVec::zeros(base.dim()),
        }
    }

    fn from_parts(base: ManifoldPoint, z: ComplexVec) -> Self {
        Self { base, z }
    }

    pub fn base(&self) -> &ManifoldPoint {
        &self.base
    }

    pub fn as_vec(&self) -> &ComplexVec {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.z.dim()
    }

    /// Norm induced by the real inner product on interleaved coordinates.
    pub fn norm(&self) -> f64 {
        self.z.norm()
    }

    /// Scale by a real factor; real scaling preserves tangency.
    pub fn scale(&self, factor: f64) -> TangentVector {
        Self {
            base: self.base.clone(),
            z: self.z.scale(factor),
        }
    }
}

/// The removed normal part `Re(z ⊙ conj(x)) ⊙ x`; each entry is a real
/// multiple of the corresponding base entry.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalComponent {
    v: ComplexVec,
}

impl NormalComponent {
    pub fn as_vec(&self) -> &ComplexVec {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }
}

fn normal_part_entries(x: &ComplexVec, z: &ComplexVec) -> Vec<Complex64> {
    x.entries()
        .iter()
        .zip(z.entries())
        .map(|(xi, zi)| {
            let r = (zi * xi.conj()).re;
            xi * r
        })
        .collect()
}

fn normal_residual_inf(x: &ComplexVec, z: &ComplexVec) -> f64 {
    x.entries()
        .iter()
        .zip(z.entries())
        .map(|(xi, zi)| (zi * xi.conj()).re.abs())
        .fold(0.0, f64::max)
}

/// Orthogonal projection of `z` onto the tangent space at `x`:
/// `P_x(z) = z - Re(z ⊙ conj(x)) ⊙ x`.
pub fn project(x: &ManifoldPoint, z: &ComplexVec) -> Result<TangentVector> {
    if x.dim() != z.dim() {
        return Err(CcmError::DimensionMismatch {
            expected: x.dim(),
            found: z.dim(),
        });
    }
    let normal = normal_part_entries(x.as_vec(), z);
    let entries = z
        .entries()
        .iter()
        .zip(&normal)
        .map(|(zi, ni)| zi - ni)
        .collect();
    Ok(TangentVector::from_parts(
        x.clone(),
        ComplexVec::new(entries)?,
    ))
}

/// The complement of [`project`]: `Re(z ⊙ conj(x)) ⊙ x`, computed from the
/// same per-entry terms so that projection plus normal part reproduces `z`
/// up to one rounding of each component.
pub fn normal_component(x: &ManifoldPoint, z: &ComplexVec) -> Result<NormalComponent> {
    if x.dim() != z.dim() {
        return Err(CcmError::DimensionMismatch {
            expected: x.dim(),
            found: z.dim(),
        });
    }
    let v = ComplexVec::new(normal_part_entries(x.as_vec(), z))?;
    debug_assert!({
        let worst = x
            .as_vec()
            .entries()
            .iter()
            .zip(v.entries())
            .map(|(xi, vi)| (vi * xi.conj()).im.abs())
            .fold(0.0, f64::max);
        worst <= TANGENT_TOL_FACTOR * (1.0 + v.norm_inf())
    });
    Ok(NormalComponent { v })
}

/// True iff the max normal residual `|Re(z_i conj(x_i))|` stays below `tol`.
pub fn is_tangent(x: &ManifoldPoint, z: &ComplexVec, tol: f64) -> Result<bool> {
    if x.dim() != z.dim() {
        return Err(CcmError::DimensionMismatch {
            expected: x.dim(),
            found: z.dim(),
        });
    }
    Ok(normal_residual_inf(x.as_vec(), z) <= tol)
}

/// Riemannian gradient of the quadratic form: the projection of the
/// complex-form gradient `2 A x` onto the tangent space at `x`.
pub fn riemannian_gradient(a: &HermitianMatrix, x: &ManifoldPoint) -> Result<TangentVector> {
    let grad = euclidean_gradient(a, x.as_vec())?;
    project(x, &grad)
}

/// Componentwise retraction `x_i + xi_i` renormalized to its circle.
///
/// Entries with an exactly zero step pass through unchanged, so the zero
/// tangent vector is an exact fixed point. A combined entry with modulus
/// below [`RETRACT_FLOOR`] has no well-defined direction and is an error.
pub fn retract(x: &ManifoldPoint, xi: &TangentVector) -> Result<ManifoldPoint> {
    if x.dim() != xi.dim() {
        return Err(CcmError::DimensionMismatch {
            expected: x.dim(),
            found: xi.dim(),
        });
    }
    if xi.base().as_vec() != x.as_vec() {
        return Err(CcmError::InvalidParameter(
            "tangent vector is anchored at a different base point".into(),
        ));
    }
    let mut entries = Vec::with_capacity(x.dim());
    for (i, (base_entry, step)) in x
        .as_vec()
        .entries()
        .iter()
        .zip(xi.as_vec().entries())
        .enumerate()
    {
        if step.re == 0.0 && step.im == 0.0 {
            entries.push(*base_entry);
            continue;
        }
        let moved = base_entry + step;
        let modulus = moved.norm();
        if modulus < RETRACT_FLOOR {
            return Err(CcmError::DegenerateRetraction {
                index: i,
                modulus,
                floor: RETRACT_FLOOR,
            });
        }
        entries.push(moved / modulus);
    }
    check_point(ComplexVec::new(entries)?, POINT_TOL)
}

/// Trace of the tangent-space projector in the 2n real coordinates,
/// measured by applying [`project`] to every standard basis vector. Equals
/// the tangent-space dimension `n` up to rounding.
pub fn tangent_projector_trace(x: &ManifoldPoint) -> Result<f64> {
    let n = x.dim();
    let mut trace = 0.0;
    for j in 0..2 * n {
        let mut basis = vec![Complex64::new(0.0, 0.0); n];
        if j % 2 == 0 {
            basis[j / 2] = Complex64::new(1.0, 0.0);
        } else {
            basis[j / 2] = Complex64::new(0.0, 1.0);
        }
        let image = project(x, &ComplexVec::new(basis)?)?;
        let entry = image.as_vec().entries()[j / 2];
        trace += if j % 2 == 0 { entry.re } else { entry.im };
    }
    Ok(trace)
}
