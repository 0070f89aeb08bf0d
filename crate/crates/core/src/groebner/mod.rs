//! Commutative Groebner bases, ideal operations and ring homomorphisms.

mod audit;
mod engine;
mod hom;
mod ideal;

pub use audit::{audit_groebner_basis, divide_remainder, AuditReport};
pub use hom::{check_well_defined, kernel_of_hom, RingHom, RingPresentation};
pub use ideal::{buchberger, ideal_equal, ideal_member, GroebnerBasis, Ideal};
