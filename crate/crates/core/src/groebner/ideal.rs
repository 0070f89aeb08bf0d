use std::collections::BTreeSet;
use std::fmt;

use super::engine::{self, GPoly, Reducers};
use crate::error::{AlgebraError, Result};
use crate::symcore::{check_same, Ctx, Monomial, MonomialOrder, Polynomial, VariableContext};

/// A Groebner basis of an ideal under a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: Ctx,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero").clone())
            .collect()
    }

    /// Remainder of multivariate division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same(p.ctx(), &self.ctx)?;
        let gp: Vec<GPoly> = self
            .basis
            .iter()
            .map(|g| GPoly::from_poly(g, &self.order))
            .collect();
        let reducers = Reducers::new(gp.iter().collect());
        let nf = engine::normal_form(&GPoly::from_poly(p, &self.order), &reducers, &self.order);
        Ok(nf.to_poly(&self.ctx))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Elements that only involve the given variable indices.
    pub fn restricted_to(&self, vars: &[usize]) -> Vec<Polynomial> {
        self.basis
            .iter()
            .filter(|g| g.support().iter().all(|i| vars.contains(i)))
            .cloned()
            .collect()
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|g| g.format_with(&self.order)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(ctx: &Ctx, gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    for g in gens {
        check_same(g.ctx(), ctx)?;
    }
    let basis = engine::buchberger(gens, order)
        .into_iter()
        .map(|g| g.to_poly(ctx))
        .collect();
    Ok(GroebnerBasis {
        ctx: ctx.clone(),
        order: order.clone(),
        basis,
        reduced: true,
    })
}

/// An ideal of a polynomial ring, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ctx: Ctx,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ctx: &Ctx, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same(g.ctx(), ctx)?;
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Ideal {
            ctx: ctx.clone(),
            generators: Vec::new(),
        }
    }

    pub fn unit(ctx: &Ctx) -> Self {
        Ideal {
            ctx: ctx.clone(),
            generators: vec![Polynomial::one(ctx)],
        }
    }

    /// The ideal generated by all variables, shifted to the point `p`.
    pub fn point(ctx: &Ctx, p: &[crate::symcore::Rational]) -> Result<Self> {
        if p.len() != ctx.len() {
            return Err(AlgebraError::ShapeMismatch("point dimension".into()));
        }
        let gens = (0..ctx.len())
            .map(|i| Polynomial::var_index(ctx, i) - Polynomial::constant(ctx, p[i].clone()))
            .collect();
        Ideal::new(ctx, gens)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self, order: &MonomialOrder) -> GroebnerBasis {
        buchberger(&self.ctx, &self.generators, order).expect("generators share the context")
    }

    pub fn grevlex_basis(&self) -> GroebnerBasis {
        self.groebner(&MonomialOrder::GrevLex)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        check_same(p.ctx(), &self.ctx)?;
        self.grevlex_basis().contains(p)
    }

    pub fn is_unit(&self) -> bool {
        self.grevlex_basis().is_unit()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ctx, &other.ctx)?;
        let gb = self.grevlex_basis();
        for g in &other.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by mutual containment of generators.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ctx, &other.ctx)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ctx, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ctx, &other.ctx)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ctx, gens)
    }

    /// `self ∩ ℚ[keep]`, as an ideal of the subring on `keep` (variables
    /// listed in the original context order).
    pub fn eliminate_to(&self, keep: &[&str]) -> Result<Ideal> {
        let keep_idx: BTreeSet<usize> = keep
            .iter()
            .map(|n| self.ctx.require(n))
            .collect::<Result<_>>()?;
        let front: Vec<usize> = (0..self.ctx.len()).filter(|i| !keep_idx.contains(i)).collect();
        let order = MonomialOrder::block_elim(self.ctx.len(), &front);
        let gb = self.groebner(&order);
        let keep_vec: Vec<usize> = keep_idx.iter().copied().collect();
        let sub_ctx = VariableContext::new(keep_vec.iter().map(|&i| self.ctx.name(i).to_string()))?;
        let gens = gb
            .restricted_to(&keep_vec)
            .iter()
            .map(|g| g.embed(&sub_ctx))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&sub_ctx, gens)
    }

    /// `self ∩ other` via `t*I + (1-t)*J` and elimination of `t`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ctx, &other.ctx)?;
        let t_name = self.ctx.fresh_name("t");
        let big = self.ctx.prepended(&[t_name.as_str()])?;
        let t = Polynomial::var_index(&big, 0);
        let one_minus_t = Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.embed(&big)?);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.embed(&big)?);
        }
        let keep: Vec<&str> = self.ctx.names().iter().map(String::as_str).collect();
        Ideal::new(&big, gens)?.eliminate_to(&keep)?.rebased(&self.ctx)
    }

    /// `I : f^∞` via `I + (t*f - 1)` and elimination of `t`.
    pub fn saturation(&self, f: &Polynomial) -> Result<Ideal> {
        check_same(&self.ctx, f.ctx())?;
        let t_name = self.ctx.fresh_name("t");
        let big = self.ctx.prepended(&[t_name.as_str()])?;
        let t = Polynomial::var_index(&big, 0);
        let mut gens = self
            .generators
            .iter()
            .map(|g| g.embed(&big))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&t * &f.embed(&big)? - Polynomial::one(&big));
        let keep: Vec<&str> = self.ctx.names().iter().map(String::as_str).collect();
        Ideal::new(&big, gens)?.eliminate_to(&keep)?.rebased(&self.ctx)
    }

    /// Re-embeds into a context with the same variable names.
    fn rebased(&self, ctx: &Ctx) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(ctx))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ctx, gens)
    }

    /// Dimension of `V(I)`: the largest set of variables containing the
    /// support of no leading monomial of the reduced grevlex basis.
    pub fn krull_dimension(&self) -> Result<usize> {
        let gb = self.grevlex_basis();
        krull_dimension_of(&gb)
    }

    /// `dim_ℚ ℚ[x]/I` for a zero-dimensional ideal.
    pub fn quotient_dimension(&self) -> Result<usize> {
        let gb = self.grevlex_basis();
        if gb.is_unit() {
            return Ok(0);
        }
        if krull_dimension_of(&gb)? != 0 {
            return Err(AlgebraError::Unsupported(
                "quotient dimension of a positive-dimensional ideal".into(),
            ));
        }
        Ok(standard_monomials(&gb).len())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub(crate) fn krull_dimension_of(gb: &GroebnerBasis) -> Result<usize> {
    if gb.is_unit() {
        return Err(AlgebraError::EmptyVariety);
    }
    let n = gb.ctx().len();
    let masks: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    if n > 24 {
        return Err(AlgebraError::Unsupported(format!("dimension search over {n} variables")));
    }
    let mut best = 0;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        if masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Monomials outside the leading-term ideal of a zero-dimensional basis.
pub(crate) fn standard_monomials(gb: &GroebnerBasis) -> Vec<Monomial> {
    let n = gb.ctx().len();
    let lms = gb.leading_monomials();
    let mut out = Vec::new();
    let mut frontier = vec![Monomial::one(n)];
    let mut seen = BTreeSet::new();
    while let Some(m) = frontier.pop() {
        if !seen.insert(m.clone()) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
        out.push(m);
    }
    out.sort_by(|a, b| gb.order().cmp(a, b));
    out
}

/// Equality of two ideals in the same context.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

/// Membership `p ∈ I`.
pub fn ideal_member(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(p)
}
