//! The conifold `Y = Spec ℚ[z1..z4]/(z1*z2 - z3*z4)` and its fixed names.

use crate::groebner::{Ideal, RingPresentation};
use crate::symcore::{Ctx, Polynomial, VariableContext};

pub const Z_NAMES: [&str; 4] = ["z1", "z2", "z3", "z4"];

pub fn ctx() -> Ctx {
    VariableContext::new(Z_NAMES).expect("distinct names")
}

/// `z1*z2 - z3*z4` in any context containing the four names.
pub fn relation(ctx: &Ctx) -> Polynomial {
    let z = |n: &str| Polynomial::var(ctx, n).expect("conifold variable present");
    z("z1") * z("z2") - z("z3") * z("z4")
}

pub fn ideal() -> Ideal {
    let c = ctx();
    Ideal::new(&c, vec![relation(&c)]).expect("same context")
}

pub fn presentation() -> RingPresentation {
    let c = ctx();
    RingPresentation::new(&c, vec![relation(&c)]).expect("same context")
}
