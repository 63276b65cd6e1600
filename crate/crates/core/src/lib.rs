//! Exact closed-form antiderivatives of products of Airy-equation solutions.
//!
//! `A` and `B` solve `A'' = (x + a) A` and `B'' = (x + b) B`. Integrals of
//! `x^n A B`, `x^n A B'`, `x^n A' B` and `x^n A' B'` are returned as
//! [`BilinearForm`]s with exact rational polynomial coefficients, derived
//! from hypervirial-type identities for the operator `L = D^2 - x`. Every
//! result can be checked exactly by differentiating it back, and
//! numerically against [`quadrature`].

pub mod airy;
pub mod cli;
mod dd;
pub mod error;
pub mod quadrature;
pub mod reduction;
pub mod symbolic;

pub use airy::{eval_airy_basis, eval_solution, wronskian_numeric, BasisValues, SolutionSpec};
pub use error::{Error, Result};
pub use quadrature::{integrate_adaptive, integrate_improper, QuadratureResult};
pub use reduction::{
    antider_ab_distinct, antider_ab_equal, antider_abp, antider_apb, antider_apbp, antider_poly,
    differentiate_back_check, verify_hvt, HvtReport, Operator, ReductionRequest,
};
pub use symbolic::{
    wronskian_form, BilinearForm, Pattern, RationalPolynomial, WronskianOrientation,
};
