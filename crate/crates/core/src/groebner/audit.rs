//! Groebner basis audit that shares no code with the engine: S-polynomials
//! are formed with ordinary polynomial arithmetic and reduced by textbook
//! multivariate division.

use num_traits::One;

use crate::error::Result;
use crate::symcore::{check_same, Ctx, MonomialOrder, Polynomial};

/// Outcome of [`audit_groebner_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub pairs_checked: usize,
    /// Index pairs whose S-polynomial has a nonzero remainder.
    pub failing_pairs: Vec<(usize, usize)>,
    /// Input generators with a nonzero remainder.
    pub failing_generators: Vec<usize>,
    /// Every element is monic and no term is divisible by another leading term.
    pub reduced: bool,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failing_pairs.is_empty() && self.failing_generators.is_empty()
    }
}

/// Remainder of `f` on division by `divisors` (first divisor that applies).
pub fn divide_remainder(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ctx = f.ctx().clone();
    let mut p = f.clone();
    let mut r = Polynomial::zero(&ctx);
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = divisors.iter().find_map(|g| {
            let (gm, gc) = g.leading_term(order)?;
            gm.divides(&m).then(|| (g, gm.quotient_of(&m), gc.clone()))
        });
        match hit {
            Some((g, qm, gc)) => {
                p = &p - &g.mul_monomial(&qm, &(&c / &gc));
            }
            None => {
                let t = Polynomial::monomial(&ctx, m, c);
                p = &p - &t;
                r = &r + &t;
            }
        }
    }
    r
}

fn s_poly(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l), &fc.recip());
    let b = g.mul_monomial(&gm.quotient_of(&l), &gc.recip());
    &a - &b
}

/// Checks Buchberger's criterion on `basis` over all pairs and that each
/// input generator reduces to zero.
pub fn audit_groebner_basis(
    ctx: &Ctx,
    generators: &[Polynomial],
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<AuditReport> {
    for p in generators.iter().chain(basis) {
        check_same(p.ctx(), ctx)?;
    }
    let basis: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut failing_pairs = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs_checked += 1;
            let s = s_poly(&basis[i], &basis[j], order);
            if !divide_remainder(&s, &basis, order).is_zero() {
                failing_pairs.push((i, j));
            }
        }
    }
    let failing_generators = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !divide_remainder(g, &basis, order).is_zero())
        .map(|(i, _)| i)
        .collect();
    let lms: Vec<_> = basis.iter().map(|g| g.leading_term(order).expect("nonzero")).collect();
    let reduced = lms.iter().all(|(_, c)| c.is_one()) && basis.iter().enumerate().all(|(i, g)| {
        g.terms().all(|(m, _)| {
            lms.iter()
                .enumerate()
                .all(|(j, (lm, _))| j == i || !lm.divides(m))
        })
    });
    Ok(AuditReport {
        pairs_checked,
        failing_pairs,
        failing_generators,
        reduced,
    })
}
