//! Problem instance generators, the exhaustive phase-grid oracle for small
//! instances, and the spectral lower bound `n * lambda_min(A)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cr_calculus::{Complex64, ComplexVec, HermitianMatrix};
use crate::error::{CcmError, Result};

/// Largest dimension the exhaustive oracle will accept.
pub const BRUTE_FORCE_MAX_DIM: usize = 4;

/// Smallest phase-grid resolution the oracle will accept.
pub const MIN_GRID_LEVELS: usize = 8;

const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_OFF_TOL: f64 = 1e-14;

/// A cost matrix with a record of how it was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub a: HermitianMatrix,
    pub label: String,
    /// Generator name plus every parameter, so runs are reproducible.
    pub provenance: String,
}

/// Result of the exhaustive phase-grid search. The first phase is fixed to
/// zero; `argmin_phases` holds the grid indices of the remaining `n - 1`
/// entries.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub argmin_phases: Vec<usize>,
    pub grid_levels: usize,
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller: one uniform pair gives independent N(0,1) parts.
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
    Complex64::from_polar(radius, std::f64::consts::TAU * u2)
}

/// Deterministic complex vector with i.i.d. standard-Gaussian parts, for
/// exercising projections and gradients at random directions.
pub fn random_gaussian_vec(n: usize, seed: u64) -> Result<ComplexVec> {
    if n == 0 {
        return Err(CcmError::InvalidParameter(
            "vector dimension must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexVec::new((0..n).map(|_| complex_gaussian(&mut rng)).collect())
}

/// Random Hermitian instance: `A = (B + B^H) / 2` with i.i.d. complex
/// Gaussian entries in `B`, scaled by `scale`. Exactly Hermitian by
/// construction and bitwise reproducible for a fixed seed.
pub fn make_random_hermitian(n: usize, seed: u64, scale: f64) -> Result<ProblemInstance> {
    if n == 0 {
        return Err(CcmError::InvalidParameter(
            "instance dimension must be at least 1".into(),
        ));
    }
    if scale <= 0.0 || !scale.is_finite() {
        return Err(CcmError::InvalidParameter(format!(
            "scale must be positive and finite, got {scale}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b: Vec<Complex64> = (0..n * n)
        .map(|_| complex_gaussian(&mut rng) * scale)
        .collect();
    let entries: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, k) = (idx / n, idx % n);
            (b[i * n + k] + b[k * n + i].conj()) * 0.5
        })
        .collect();
    Ok(ProblemInstance {
        a: HermitianMatrix::new(n, entries)?,
        label: "random-hermitian".into(),
        provenance: format!("random-hermitian(n={n}, seed={seed}, scale={scale})"),
    })
}

/// Beamforming-style instance for a half-wavelength uniform linear array:
/// `A = sum_k weights_k a(theta_k) a(theta_k)^H` with steering vectors
/// `a(theta)_m = exp(j pi m sin(theta))`. Positive semidefinite by
/// construction.
pub fn make_steering_problem(
    n_elements: usize,
    angles: &[f64],
    weights: &[f64],
) -> Result<ProblemInstance> {
    if n_elements == 0 {
        return Err(CcmError::InvalidParameter(
            "array must have at least one element".into(),
        ));
    }
    if angles.is_empty() {
        return Err(CcmError::InvalidParameter(
            "at least one steering angle is required".into(),
        ));
    }
    if angles.len() != weights.len() {
        return Err(CcmError::DimensionMismatch {
            expected: angles.len(),
            found: weights.len(),
        });
    }
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
        return Err(CcmError::InvalidParameter(format!(
            "steering weights must be non-negative, got {w}"
        )));
    }
    let n = n_elements;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (theta, weight) in angles.iter().zip(weights) {
        let steering: Vec<Complex64> = (0..n)
            .map(|m| Complex64::from_polar(1.0, std::f64::consts::PI * m as f64 * theta.sin()))
            .collect();
        for i in 0..n {
            for k in 0..n {
                entries[i * n + k] += steering[i] * steering[k].conj() * *weight;
            }
        }
    }
    Ok(ProblemInstance {
        a: HermitianMatrix::new(n, entries)?,
        label: "steering".into(),
        provenance: format!("steering(n={n}, angles={angles:?}, weights={weights:?})"),
    })
}

fn quadratic_form_real(a: &HermitianMatrix, x: &[Complex64]) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for (k, w) in x.iter().enumerate() {
            row += a.get(i, k) * w;
        }
        acc += (x[i].conj() * row).re;
    }
    acc
}

/// Exhaustive minimum of the quadratic form over the phase grid
/// `x_1 = 1`, `x_i = exp(j 2 pi k_i / grid_levels)`.
///
/// Fixing the first phase is lossless because the cost is invariant under a
/// global phase, and it cuts the grid from `g^n` to `g^(n-1)` points. Ties
/// are broken toward the lexicographically smallest index tuple.
pub fn brute_force_min(a: &HermitianMatrix, grid_levels: usize) -> Result<OracleResult> {
    let n = a.dim();
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(CcmError::InstanceTooLarge {
            n,
            max: BRUTE_FORCE_MAX_DIM,
        });
    }
    if grid_levels < MIN_GRID_LEVELS {
        return Err(CcmError::InvalidParameter(format!(
            "grid_levels must be at least {MIN_GRID_LEVELS}, got {grid_levels}"
        )));
    }

    let phases: Vec<Complex64> = (0..grid_levels)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / grid_levels as f64))
        .collect();

    let mut x = vec![Complex64::new(1.0, 0.0); n];
    let mut indices = vec![0usize; n - 1];
    let mut best_value = f64::INFINITY;
    let mut best_indices = indices.clone();

    loop {
        for (slot, &k) in indices.iter().enumerate() {
            x[slot + 1] = phases[k];
        }
        let value = quadratic_form_real(a, &x);
        if value < best_value {
            best_value = value;
            best_indices.copy_from_slice(&indices);
        }

        // Odometer increment in lexicographic order.
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                return Ok(OracleResult {
                    value: best_value,
                    argmin_phases: best_indices,
                    grid_levels,
                });
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < grid_levels {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Spectral lower bound `n * lambda_min(A)`: on the manifold `||x||^2 = n`,
/// so `x^H A x >= n * lambda_min`.
///
/// The minimum eigenvalue comes from cyclic Jacobi sweeps on the real
/// symmetric embedding `[[Re A, -Im A], [Im A, Re A]]`, whose spectrum is
/// that of `A` with doubled multiplicities.
pub fn eigen_lower_bound(a: &HermitianMatrix) -> Result<f64> {
    let n = a.dim();
    let dim = 2 * n;
    let mut s = vec![0.0f64; dim * dim];
    for i in 0..n {
        for k in 0..n {
            let entry = a.get(i, k);
            s[i * dim + k] = entry.re;
            s[i * dim + (n + k)] = -entry.im;
            s[(n + i) * dim + k] = entry.im;
            s[(n + i) * dim + (n + k)] = entry.re;
        }
    }
    // The Hermitian tolerance admits slightly asymmetric inputs; fold them
    // onto the symmetric part before rotating.
    for i in 0..dim {
        for k in (i + 1)..dim {
            let mean = 0.5 * (s[i * dim + k] + s[k * dim + i]);
            s[i * dim + k] = mean;
            s[k * dim + i] = mean;
        }
    }
    let lambda_min = jacobi_min_eigenvalue(&mut s, dim)?;
    Ok(n as f64 * lambda_min)
}

fn off_diagonal_norm(s: &[f64], dim: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for k in 0..dim {
            if i != k {
                acc += s[i * dim + k] * s[i * dim + k];
            }
        }
    }
    acc.sqrt()
}

fn jacobi_min_eigenvalue(s: &mut [f64], dim: usize) -> Result<f64> {
    let frob = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    if frob == 0.0 {
        return Ok(0.0);
    }
    let target = JACOBI_OFF_TOL * frob;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(s, dim) <= target {
            let min = (0..dim)
                .map(|i| s[i * dim + i])
                .fold(f64::INFINITY, f64::min);
            return Ok(min);
        }
        for p in 0..dim - 1 {
            for q in (p + 1)..dim {
                let apq = s[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[q * dim + q] - s[p * dim + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (theta - (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;

                for j in 0..dim {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = s[j * dim + p];
                    let ajq = s[j * dim + q];
                    s[j * dim + p] = c * ajp - sn * ajq;
                    s[p * dim + j] = s[j * dim + p];
                    s[j * dim + q] = sn * ajp + c * ajq;
                    s[q * dim + j] = s[j * dim + q];
                }
                s[p * dim + p] -= t * apq;
                s[q * dim + q] += t * apq;
                s[p * dim + q] = 0.0;
                s[q * dim + p] = 0.0;
            }
        }
    }
    Err(CcmError::EigenNoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr_calculus::quadratic_cost;
    use crate::manifold::random_point;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn random_hermitian_is_deterministic() {
        let first = make_random_hermitian(4, 7, 1.0).unwrap();
        let second = make_random_hermitian(4, 7, 1.0).unwrap();
        assert_eq!(first.a, second.a);
        assert_ne!(first.a, make_random_hermitian(4, 8, 1.0).unwrap().a);
    }

    #[test]
    fn random_hermitian_is_exactly_symmetric() {
        let instance = make_random_hermitian(5, 3, 2.5).unwrap();
        let a = &instance.a;
        for i in 0..5 {
            assert_eq!(a.get(i, i).im, 0.0);
            for k in 0..5 {
                assert_eq!(a.get(i, k), a.get(k, i).conj());
            }
        }
    }

    #[test]
    fn random_hermitian_rejects_bad_parameters() {
        assert!(make_random_hermitian(0, 1, 1.0).is_err());
        assert!(make_random_hermitian(3, 1, 0.0).is_err());
        assert!(make_random_hermitian(3, 1, -1.0).is_err());
    }

    #[test]
    fn steering_broadside_is_all_ones() {
        let instance = make_steering_problem(3, &[0.0], &[1.0]).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                assert!((instance.a.get(i, k) - c(1.0, 0.0)).norm() <= 1e-15);
            }
        }
        // Two elements cancel at opposite phases.
        let two = make_steering_problem(2, &[0.0], &[1.0]).unwrap();
        let x = ComplexVec::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(quadratic_cost(&two.a, &x).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn steering_zero_weights_give_zero_matrix() {
        let instance = make_steering_problem(3, &[0.0, 0.5], &[0.0, 0.0]).unwrap();
        assert!(instance.a.entries().iter().all(|e| e.norm() == 0.0));
        assert_eq!(eigen_lower_bound(&instance.a).unwrap(), 0.0);
    }

    #[test]
    fn steering_rejects_negative_weight() {
        assert!(make_steering_problem(3, &[0.1], &[-0.5]).is_err());
    }

    #[test]
    fn steering_is_positive_semidefinite() {
        let instance =
            make_steering_problem(4, &[0.0, std::f64::consts::FRAC_PI_6], &[1.0, 2.0]).unwrap();
        let scale = instance.a.row_inf_norm();
        for seed in 0..50u64 {
            let x = random_gaussian_vec(4, seed).unwrap();
            let value = quadratic_cost(&instance.a, &x).unwrap();
            assert!(value >= -1e-10 * scale * 4.0);
        }
    }

    #[test]
    fn brute_force_single_entry() {
        let a = HermitianMatrix::from_rows(&[vec![c(2.5, 0.0)]]).unwrap();
        let result = brute_force_min(&a, 16).unwrap();
        assert_eq!(result.value, 2.5);
        assert!(result.argmin_phases.is_empty());
    }

    #[test]
    fn brute_force_kernel_instance() {
        let a = HermitianMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(-1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let result = brute_force_min(&a, 8).unwrap();
        assert_eq!(result.value, 0.0);
        assert_eq!(result.argmin_phases, vec![0]);
    }

    #[test]
    fn brute_force_argmin_reconstructs_value() {
        let instance = make_random_hermitian(3, 12, 1.0).unwrap();
        let grid = 32usize;
        let result = brute_force_min(&instance.a, grid).unwrap();
        assert_eq!(result.argmin_phases.len(), 2);
        assert!(result.argmin_phases.iter().all(|&k| k < grid));

        let mut x = vec![Complex64::new(1.0, 0.0); 3];
        for (slot, &k) in result.argmin_phases.iter().enumerate() {
            x[slot + 1] =
                Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / grid as f64);
        }
        assert_eq!(quadratic_form_real(&instance.a, &x), result.value);
    }

    #[test]
    fn brute_force_enforces_bounds() {
        let a = HermitianMatrix::identity(5);
        assert!(matches!(
            brute_force_min(&a, 16),
            Err(CcmError::InstanceTooLarge { n: 5, max: 4 })
        ));
        let small = HermitianMatrix::identity(2);
        assert!(brute_force_min(&small, 4).is_err());
    }

    #[test]
    fn brute_force_refinement_never_increases() {
        let instance = make_random_hermitian(3, 91, 1.0).unwrap();
        let coarse = brute_force_min(&instance.a, 16).unwrap();
        let fine = brute_force_min(&instance.a, 32).unwrap();
        let finer = brute_force_min(&instance.a, 64).unwrap();
        assert!(fine.value <= coarse.value);
        assert!(finer.value <= fine.value);
    }

    #[test]
    fn phase_fixing_matches_full_search() {
        // Independent route: search the full g^n grid without fixing the
        // first phase; global-phase invariance makes the minima coincide.
        for (n, seed) in [(2usize, 5u64), (3, 6)] {
            let grid = 16usize;
            let instance = make_random_hermitian(n, seed, 1.0).unwrap();
            let fixed = brute_force_min(&instance.a, grid).unwrap();

            let phases: Vec<Complex64> = (0..grid)
                .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / grid as f64))
                .collect();
            let mut best = f64::INFINITY;
            let mut indices = vec![0usize; n];
            'outer: loop {
                let x: Vec<Complex64> = indices.iter().map(|&k| phases[k]).collect();
                best = best.min(quadratic_form_real(&instance.a, &x));
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break 'outer;
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < grid {
                        break;
                    }
                    indices[pos] = 0;
                }
            }
            assert!(
                (fixed.value - best).abs() <= 1e-10 * (1.0 + best.abs()),
                "n={n}: fixed {} vs full {}",
                fixed.value,
                best
            );
        }
    }

    #[test]
    fn eigen_bound_identity_and_diagonal() {
        assert!((eigen_lower_bound(&HermitianMatrix::identity(4)).unwrap() - 4.0).abs() <= 1e-10);

        let single = HermitianMatrix::from_rows(&[vec![c(-3.0, 0.0)]]).unwrap();
        assert!((eigen_lower_bound(&single).unwrap() - (-3.0)).abs() <= 1e-10);

        let diag = HermitianMatrix::from_rows(&[
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0)],
        ])
        .unwrap();
        assert!((eigen_lower_bound(&diag).unwrap() - (-2.0)).abs() <= 1e-10);
    }

    #[test]
    fn eigen_bound_complex_offdiagonal() {
        // [[2, j], [-j, 2]] has eigenvalues 1 and 3.
        let a = HermitianMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert!((eigen_lower_bound(&a).unwrap() - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn eigen_bound_matches_closed_form_2x2() {
        // Independent route: (a+d)/2 - sqrt(((a-d)/2)^2 + |b|^2).
        for seed in 0..20u64 {
            let instance = make_random_hermitian(2, seed, 1.5).unwrap();
            let a = instance.a.get(0, 0).re;
            let d = instance.a.get(1, 1).re;
            let b = instance.a.get(0, 1);
            let lambda_min = 0.5 * (a + d) - (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            let bound = eigen_lower_bound(&instance.a).unwrap();
            assert!(
                (bound - 2.0 * lambda_min).abs() <= 1e-10 * (1.0 + lambda_min.abs()),
                "seed {seed}: jacobi {bound} vs closed form {}",
                2.0 * lambda_min
            );
        }
    }

    #[test]
    fn eigen_bound_dominates_manifold_costs() {
        let instance = make_random_hermitian(5, 17, 1.0).unwrap();
        let bound = eigen_lower_bound(&instance.a).unwrap();
        for seed in 0..1000u64 {
            let x = random_point(5, seed).unwrap();
            let value = quadratic_cost(&instance.a, x.as_vec()).unwrap();
            assert!(
                bound <= value + 1e-9,
                "bound {bound} exceeds cost {value} at seed {seed}"
            );
        }
    }

    #[test]
    fn oracle_value_respects_eigen_bound() {
        for seed in [1u64, 2, 3] {
            let instance = make_random_hermitian(3, seed, 1.0).unwrap();
            let oracle = brute_force_min(&instance.a, 32).unwrap();
            let bound = eigen_lower_bound(&instance.a).unwrap();
            assert!(oracle.value >= bound - 1e-9);
        }
    }

    #[test]
    fn gaussian_vec_is_seeded() {
        assert_eq!(
            random_gaussian_vec(6, 9).unwrap(),
            random_gaussian_vec(6, 9).unwrap()
        );
        assert_ne!(
            random_gaussian_vec(6, 9).unwrap(),
            random_gaussian_vec(6, 10).unwrap()
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            // Doubling the grid embeds the coarse phases in the fine grid,
            // so the oracle value can only improve.
            #[test]
            fn refinement_is_monotone(seed in 0u64..100_000, n in 2usize..=3) {
                let instance = make_random_hermitian(n, seed, 1.0).unwrap();
                let coarse = brute_force_min(&instance.a, 8).unwrap().value;
                let fine = brute_force_min(&instance.a, 16).unwrap().value;
                let finer = brute_force_min(&instance.a, 32).unwrap().value;
                prop_assert!(fine <= coarse);
                prop_assert!(finer <= fine);
            }

            #[test]
            fn oracle_never_beats_spectral_bound(seed in 0u64..100_000) {
                let instance = make_random_hermitian(3, seed, 1.0).unwrap();
                let oracle = brute_force_min(&instance.a, 16).unwrap();
                let bound = eigen_lower_bound(&instance.a).unwrap();
                prop_assert!(oracle.value >= bound - 1e-9 * (1.0 + bound.abs()));
            }
        }
    }
}
