//! Riemannian gradient descent on the complex circle manifold with Armijo
//! backtracking, a gradient-norm stopping rule, and full iteration tracing.

use crate::cr_calculus::{quadratic_cost, HermitianMatrix};
use crate::error::{CcmError, Result};
use crate::manifold::{retract, riemannian_gradient, ManifoldPoint, TangentVector};

/// Default iteration budget.
pub const DEFAULT_MAX_ITERS: usize = 1000;
/// Default stopping threshold on the Riemannian gradient norm.
pub const DEFAULT_GRAD_TOL: f64 = 1e-8;
/// Default Armijo sufficient-decrease constant.
pub const DEFAULT_ARMIJO_C: f64 = 1e-4;
/// Default step-shrink factor per backtrack.
pub const DEFAULT_BACKTRACK_FACTOR: f64 = 0.5;
/// Default cap on backtracks per iteration.
pub const DEFAULT_MAX_BACKTRACKS: usize = 60;
/// Regularizer in the initial-step heuristic `1 / (2 ||A||_inf + eps)`.
pub const STEP_SCALE_EPS: f64 = 1e-12;

/// Parameters of the descent loop and its line search.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub max_iters: usize,
    /// Stop when the Riemannian gradient norm drops to this value.
    pub grad_tol: f64,
    /// First trial step length of every line search.
    pub initial_step: f64,
    /// Armijo constant in (0, 1).
    pub armijo_c: f64,
    /// Step-shrink factor in (0, 1).
    pub backtrack_factor: f64,
    pub max_backtracks: usize,
}

impl OptimizerConfig {
    /// Defaults with the initial step scaled to the problem,
    /// `1 / (2 ||A||_inf + eps)`, so behavior is size-independent.
    pub fn for_problem(a: &HermitianMatrix) -> Self {
        Self {
            max_iters: DEFAULT_MAX_ITERS,
            grad_tol: DEFAULT_GRAD_TOL,
            initial_step: 1.0 / (2.0 * a.row_inf_norm() + STEP_SCALE_EPS),
            armijo_c: DEFAULT_ARMIJO_C,
            backtrack_factor: DEFAULT_BACKTRACK_FACTOR,
            max_backtracks: DEFAULT_MAX_BACKTRACKS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(CcmError::InvalidParameter("max_iters must be >= 1".into()));
        }
        if self.grad_tol.is_nan() || self.grad_tol < 0.0 {
            return Err(CcmError::InvalidParameter(
                "grad_tol must be non-negative".into(),
            ));
        }
        if self.initial_step <= 0.0 || !self.initial_step.is_finite() {
            return Err(CcmError::InvalidParameter(
                "initial_step must be positive and finite".into(),
            ));
        }
        if self.armijo_c.is_nan() || self.armijo_c <= 0.0 || self.armijo_c >= 1.0 {
            return Err(CcmError::InvalidParameter(
                "armijo_c must lie in (0, 1)".into(),
            ));
        }
        if self.backtrack_factor.is_nan()
            || self.backtrack_factor <= 0.0
            || self.backtrack_factor >= 1.0
        {
            return Err(CcmError::InvalidParameter(
                "backtrack_factor must lie in (0, 1)".into(),
            ));
        }
        if self.max_backtracks == 0 {
            return Err(CcmError::InvalidParameter(
                "max_backtracks must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// One row of the iteration trace. Row 0 records the starting point with a
/// zero step; every later row is an accepted descent step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub cost: f64,
    /// Riemannian gradient norm at this iterate.
    pub grad_norm: f64,
    /// Accepted step length (0 for the initial row).
    pub step: f64,
    /// Backtracks spent finding the accepted step.
    pub backtracks: usize,
}

/// Why the loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Gradient norm reached `grad_tol`.
    Converged,
    /// Iteration budget exhausted.
    MaxIters,
    /// No step satisfied the Armijo condition within the backtrack budget.
    LineSearchFailed,
}

/// Final iterate, cost, status, and the complete per-iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub x_final: ManifoldPoint,
    pub cost_final: f64,
    pub trace: Vec<IterationRecord>,
    pub status: SolveStatus,
}

impl SolveResult {
    pub fn grad_norm_final(&self) -> f64 {
        self.trace.last().map(|rec| rec.grad_norm).unwrap_or(0.0)
    }

    pub fn iterations(&self) -> usize {
        self.trace.last().map(|rec| rec.iter).unwrap_or(0)
    }
}

/// Backtracking line search along the negative of `g`.
///
/// Tries `t = initial_step * backtrack_factor^k` for `k = 0..=max_backtracks`
/// and returns the first (largest) `t` whose retracted point satisfies
/// `f(new) <= f(x) - armijo_c * t * ||g||^2`, together with the new point and
/// the number of backtracks spent.
pub fn armijo_step(
    a: &HermitianMatrix,
    x: &ManifoldPoint,
    g: &TangentVector,
    config: &OptimizerConfig,
) -> Result<(f64, ManifoldPoint, usize)> {
    config.validate()?;
    let f_current = quadratic_cost(a, x.as_vec())?;
    let g_norm_sqr = g.as_vec().norm_sqr();
    let mut step = config.initial_step;
    for backtracks in 0..=config.max_backtracks {
        let candidate = retract(x, &g.scale(-step))?;
        let f_candidate = quadratic_cost(a, candidate.as_vec())?;
        // Strict decrease is required on top of the sufficient-decrease
        // bound: once the cost sits at its rounding floor the bound
        // saturates to f_current, and accepting equal-cost steps would
        // stall the loop without progress.
        if f_candidate < f_current && f_candidate <= f_current - config.armijo_c * step * g_norm_sqr
        {
            return Ok((step, candidate, backtracks));
        }
        step *= config.backtrack_factor;
    }
    Err(CcmError::LineSearchFailed {
        backtracks: config.max_backtracks,
    })
}

/// Riemannian gradient descent: repeat `x <- retract(x, -t * grad)` with `t`
/// from [`armijo_step`] until the gradient norm reaches `grad_tol`, the
/// iteration budget runs out, or the line search fails. The cost sequence is
/// strictly decreasing across accepted steps and every iterate stays on the
/// manifold.
pub fn solve_rgd(
    a: &HermitianMatrix,
    x0: &ManifoldPoint,
    config: &OptimizerConfig,
) -> Result<SolveResult> {
    config.validate()?;
    if a.dim() != x0.dim() {
        return Err(CcmError::DimensionMismatch {
            expected: a.dim(),
            found: x0.dim(),
        });
    }

    let mut x = x0.clone();
    let mut cost = quadratic_cost(a, x.as_vec())?;
    if !cost.is_finite() {
        return Err(CcmError::NonFiniteCost { iter: 0 });
    }
    let mut grad = riemannian_gradient(a, &x)?;
    let mut grad_norm = grad.norm();

    let mut trace = vec![IterationRecord {
        iter: 0,
        cost,
        grad_norm,
        step: 0.0,
        backtracks: 0,
    }];

    if grad_norm <= config.grad_tol {
        return Ok(SolveResult {
            x_final: x,
            cost_final: cost,
            trace,
            status: SolveStatus::Converged,
        });
    }

    for iter in 1..=config.max_iters {
        let (step, x_new, backtracks) = match armijo_step(a, &x, &grad, config) {
            Ok(accepted) => accepted,
            Err(CcmError::LineSearchFailed { .. }) => {
                return Ok(SolveResult {
                    x_final: x,
                    cost_final: cost,
                    trace,
                    status: SolveStatus::LineSearchFailed,
                });
            }
            Err(other) => return Err(other),
        };

        x = x_new;
        cost = quadratic_cost(a, x.as_vec())?;
        if !cost.is_finite() {
            return Err(CcmError::NonFiniteCost { iter });
        }
        grad = riemannian_gradient(a, &x)?;
        grad_norm = grad.norm();
        trace.push(IterationRecord {
            iter,
            cost,
            grad_norm,
            step,
            backtracks,
        });

        if grad_norm <= config.grad_tol {
            return Ok(SolveResult {
                x_final: x,
                cost_final: cost,
                trace,
                status: SolveStatus::Converged,
            });
        }
    }

    Ok(SolveResult {
        x_final: x,
        cost_final: cost,
        trace,
        status: SolveStatus::MaxIters,
    })
}
