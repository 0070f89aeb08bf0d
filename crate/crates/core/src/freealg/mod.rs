//! Free associative algebras over ℚ and truncated rewriting for finitely
//! presented quotients.

mod poly;
mod rewrite;
mod word;

pub use poly::{nc_mul, FreePolynomial};
pub use rewrite::{
    build_rewrite_system, commutative_presentation, is_central, nc_is_zero, nc_normal_form,
    NCPresentation, NormalForm, Rule, DEFAULT_DEGREE_CAP,
};
pub use word::Word;

#[cfg(test)]
mod tests;
