//! Exact rationals, sparse multivariate polynomials, monomial orders, and
//! matrices over polynomial rings.

mod context;
pub mod linalg;
mod matrix;
mod monomial;
mod poly;
pub mod rational;

pub use context::{Ctx, VariableContext};
pub use linalg::{evaluate_at_matrices, QMatrix};
pub use matrix::{evaluate_matrix_hom, MatrixPoly};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use rational::{q, qf, Rational};

pub(crate) use context::{check_same, same_context};
