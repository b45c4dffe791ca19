//! Simultaneous approximation of all zeros of a complex polynomial.
//!
//! Three iterations are provided: Weierstrass (Durand-Kerner), Ehrlich
//! (Aberth) and Dochev-Byrnev, which coincides with the Prešić-Tanabe
//! iteration. For Ehrlich and Dochev-Byrnev the crate checks a computable
//! initial condition on the starting vector and, when it holds, issues a
//! [`Certificate`] carrying error bounds and disjoint inclusion disks.
//!
//! ```
//! use certiroot::{solve, MethodKind, PExponent, Polynomial, SolveConfig};
//! use num_complex::Complex64;
//!
//! let f = Polynomial::from_real(&[1.0, 0.0, -1.0]).unwrap();
//! let x0 = vec![Complex64::new(2.0, 0.0), Complex64::new(-2.0, 0.0)];
//! let cfg = SolveConfig::new(MethodKind::Ehrlich, PExponent::Infinity);
//! let result = solve(&f, &x0.into(), &cfg).unwrap();
//! assert!(result.converged);
//! assert!(result.certificate.unwrap().issued);
//! ```

pub mod certify;
pub mod corrections;
mod dd;
mod error;
pub mod methods;
pub mod oracle;
pub mod poly;
pub mod serde_complex;
pub mod solver;

pub use certify::{
    a_posteriori_bound_1, a_posteriori_bound_2, a_priori_bound, certify_initial,
    corollary_threshold, inclusion_disks, solve_r, threshold_is_strict, w_contraction_bound, Certificate, Disk,
    GaugeBundle,
};
pub use corrections::{
    cone_norm, e_measure, norm_context, separation, sigma_sum, weierstrass_correction,
    ApproxVector, ConeVector, NormContext, PExponent,
};
pub use error::{Error, Result};
pub use methods::{
    dochev_byrnev_step, ehrlich_step_bs, ehrlich_step_newton, step, tanabe_step,
    weierstrass_step, MethodKind, StepResult,
};
pub use num_complex::Complex64;
pub use poly::{viete, CoeffVector, Polynomial};
pub use solver::{
    default_init, estimate_order, init_on_circle, seeded_init, solve, IterationTrace, SolveConfig, SolveResult,
};
