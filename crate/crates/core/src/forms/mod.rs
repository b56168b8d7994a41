//! Binary forms in `(u, v)` and ternary forms in `(x0, x1, x2)`.
//!
//! Binary coefficients are stored u-descending: index `k` multiplies
//! `u^(n−k) v^k`.

mod binary;
mod pseudo;
mod roots;
mod ternary;

pub use binary::{from_roots, BinaryForm, DivRem};
pub use pseudo::{compose_with_parametrization, pseudo_remainder, quadric_of_point};
pub use roots::{rational_roots, roots, roots_any};
pub use ternary::{monomials, Monomial, PlaneCurve, TernaryForm};
