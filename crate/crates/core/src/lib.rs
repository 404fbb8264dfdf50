//! Riemannian optimization on the complex circle manifold, the set of
//! complex vectors whose every entry has unit modulus.
//!
//! The crate covers the full loop for minimizing the Hermitian quadratic
//! form `x^H A x` under that constraint:
//!
//! - [`cr_calculus`] — dual real/complex vector representations and the
//!   analytic gradient `2 A x`, with a finite-difference oracle built to the
//!   same derivative convention;
//! - [`manifold`] — point validation, tangent spaces, the orthogonal
//!   projection, the Riemannian gradient, and a renormalizing retraction;
//! - [`optimizer`] — gradient descent with Armijo backtracking and a full
//!   iteration trace;
//! - [`problems`] — seeded instance generators, an exhaustive phase-grid
//!   oracle for desk-scale instances, and the spectral lower bound.
//!
//! ```
//! use ccm_core::{make_random_hermitian, random_point, solve_rgd, OptimizerConfig};
//!
//! let instance = make_random_hermitian(4, 7, 1.0).unwrap();
//! let x0 = random_point(4, 1).unwrap();
//! let result = solve_rgd(&instance.a, &x0, &OptimizerConfig::for_problem(&instance.a)).unwrap();
//! assert!(result.cost_final <= result.trace[0].cost);
//! ```

pub mod cr_calculus;
pub mod error;
pub mod manifold;
pub mod optimizer;
pub mod problems;

pub use cr_calculus::{
    euclidean_gradient, fd_gradient, hadamard, inner_real, partial_derivative, quadratic_cost,
    to_complex, to_real, Complex64, ComplexVec, HermitianMatrix, Part, RealVec,
};
pub use error::{CcmError, Result};
pub use manifold::{
    check_point, is_tangent, normal_component, project, random_point, retract, riemannian_gradient,
    tangent_projector_trace, ManifoldPoint, NormalComponent, TangentVector,
};
pub use optimizer::{
    armijo_step, solve_rgd, IterationRecord, OptimizerConfig, SolveResult, SolveStatus,
};
pub use problems::{
    brute_force_min, eigen_lower_bound, make_random_hermitian, make_steering_problem,
    random_gaussian_vec, OracleResult, ProblemInstance,
};
