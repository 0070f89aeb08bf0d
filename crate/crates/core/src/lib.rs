//! Exact computer algebra for Azumaya-probe constructions on the conifold
//! `z1*z2 - z3*z4 = 0`: polynomial rings and Groebner bases, free algebras
//! with truncated rewriting, toric cones, representation-scheme fibers,
//! blow-up chart liftings, and the representation theory of the conifold
//! algebra.

pub mod conifold;
pub mod error;
pub mod freealg;
pub mod groebner;
pub mod ncres;
pub mod probe;
pub mod resolution;
pub mod symcore;
pub mod toric;

pub use error::{AlgebraError, Result};
