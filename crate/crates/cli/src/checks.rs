//! Verification suite behind `ccm check`: re-derives the library's core
//! identities on random data and reports the worst residual per check.

use ccm_core::cr_calculus::FD_DEFAULT_STEP;
use ccm_core::{
    euclidean_gradient, fd_gradient, project, quadratic_cost, random_gaussian_vec, random_point,
    retract, tangent_projector_trace, ComplexVec, HermitianMatrix, ManifoldPoint,
};

/// Worst observed residual for one identity, against its pinned tolerance.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

const RETRACTION_STEPS: (f64, f64) = (1e-2, 1e-3);

/// Run every check for `trials` random points (and directions) drawn from
/// `seed`. `perturb_modulus`, when set, scales the first coordinate of each
/// sampled point off its circle — a negative control that must trip the
/// manifold-sensitive checks.
pub fn run_checks(
    a: &HermitianMatrix,
    trials: usize,
    seed: u64,
    perturb_modulus: Option<f64>,
) -> Result<Vec<CheckOutcome>, String> {
    let n = a.dim();
    let mut gradient_vs_fd = 0.0f64;
    let mut tangency = 0.0f64;
    let mut idempotence = 0.0f64;
    let mut pythagoras = 0.0f64;
    let mut dimension = 0.0f64;
    let mut retraction = 0.0f64;

    for trial in 0..trials as u64 {
        let x = sample_point(n, seed.wrapping_add(trial), perturb_modulus)
            .map_err(|e| e.to_string())?;
        let z =
            random_gaussian_vec(n, seed.wrapping_add(10_000 + trial)).map_err(|e| e.to_string())?;

        let analytic = euclidean_gradient(a, x.as_vec()).map_err(|e| e.to_string())?;
        let numeric = fd_gradient(|v| quadratic_cost(a, v), x.as_vec(), FD_DEFAULT_STEP)
            .map_err(|e| e.to_string())?;
        let gradient_residual =
            analytic.sub(&numeric).map_err(|e| e.to_string())?.norm() / (1.0 + analytic.norm());
        gradient_vs_fd = gradient_vs_fd.max(gradient_residual);

        let p = project(&x, &z).map_err(|e| e.to_string())?;
        let scale = 1.0 + z.norm_inf();
        let tangency_residual = p
            .as_vec()
            .entries()
            .iter()
            .zip(x.as_vec().entries())
            .map(|(pi, xi)| (pi * xi.conj()).re.abs())
            .fold(0.0, f64::max)
            / scale;
        tangency = tangency.max(tangency_residual);

        let twice = project(&x, p.as_vec()).map_err(|e| e.to_string())?;
        idempotence = idempotence.max(
            twice
                .as_vec()
                .sub(p.as_vec())
                .map_err(|e| e.to_string())?
                .norm_inf()
                / scale,
        );

        let normal = z.sub(p.as_vec()).map_err(|e| e.to_string())?;
        pythagoras = pythagoras.max(
            (z.norm_sqr() - p.as_vec().norm_sqr() - normal.norm_sqr()).abs() / (1.0 + z.norm_sqr()),
        );

        let trace = tangent_projector_trace(&x).map_err(|e| e.to_string())?;
        dimension = dimension.max((trace - n as f64).abs());

        if p.norm() > 1e-9 {
            let error_at = |t: f64| -> Result<f64, String> {
                let moved = retract(&x, &p.scale(t)).map_err(|e| e.to_string())?;
                let linear = x
                    .as_vec()
                    .add(&p.as_vec().scale(t))
                    .map_err(|e| e.to_string())?;
                Ok(moved
                    .as_vec()
                    .sub(&linear)
                    .map_err(|e| e.to_string())?
                    .norm())
            };
            let ratio = error_at(RETRACTION_STEPS.1)? / error_at(RETRACTION_STEPS.0)?;
            let exact = (RETRACTION_STEPS.1 / RETRACTION_STEPS.0).powi(2);
            retraction = retraction.max((ratio / exact).log2().abs());
        }
    }

    Ok(vec![
        CheckOutcome {
            name: "gradient-vs-fd",
            residual: gradient_vs_fd,
            tolerance: 1e-6,
        },
        CheckOutcome {
            name: "projection-tangency",
            residual: tangency,
            tolerance: 1e-12,
        },
        CheckOutcome {
            name: "projection-idempotence",
            residual: idempotence,
            tolerance: 1e-14,
        },
        CheckOutcome {
            name: "pythagoras",
            residual: pythagoras,
            tolerance: 1e-10,
        },
        CheckOutcome {
            name: "dimension-trace",
            residual: dimension,
            tolerance: 1e-10,
        },
        CheckOutcome {
            name: "retraction-scaling",
            residual: retraction,
            tolerance: 1.0,
        },
    ])
}

fn sample_point(
    n: usize,
    seed: u64,
    perturb_modulus: Option<f64>,
) -> ccm_core::Result<ManifoldPoint> {
    let point = random_point(n, seed)?;
    match perturb_modulus {
        None => Ok(point),
        Some(factor) => {
            let mut entries = point.as_vec().entries().to_vec();
            entries[0] *= factor;
            Ok(ManifoldPoint::new_unchecked(ComplexVec::new(entries)?))
        }
    }
}
