//! Polynomials in the point ring `S` and the operator ring `T`, the apolarity
//! action, and Cox-ring bases for surfaces.

pub mod apolarity;
pub mod cox;
pub mod monomial;
#[allow(clippy::module_inception)]
pub mod poly;

pub use apolarity::{
    apolar_apply, catalecticant, contract_monomial, evaluate_at, pairing, pairing_gram,
    power_of_linear_form, LinearFormPoint,
};
pub use cox::{cox_basis, cox_multiply_and_reduce, CoxBasis, CoxClass, CoxRing, SurfaceKind};
pub use monomial::{binomial, factorial, falling_factorial, GradedBasis, Monomial};
pub use poly::{Poly, RingSide};
