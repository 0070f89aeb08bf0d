use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::context::{check_same, Ctx};
use super::monomial::{Monomial, MonomialOrder};
use super::rational::{fmt_rational, Rational};
use crate::error::{AlgebraError, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. Operators (`+`, `-`, `*`) panic when
/// the operands live in different contexts; the `checked_*` methods return
/// [`AlgebraError::ContextMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::var_index(ctx, ctx.require(name)?))
    }

    pub fn var_index(ctx: &Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i), Rational::one())
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ctx.len());
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Ctx, terms: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Indices of variables that occur with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ctx.len()];
        for m in self.terms.keys() {
            for (i, _) in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial::from_terms(
            &self.ctx,
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)),
        )
    }

    /// Leading `(monomial, coefficient)` under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Evaluates at a point given in context order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ctx.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ctx.len()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                t *= num_traits::pow(point[i].clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Image under the homomorphism sending variable `i` to `images[i]`.
    /// All images must share one target context.
    pub fn compose(&self, images: &[Polynomial], target: &Ctx) -> Result<Polynomial> {
        if images.len() != self.ctx.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ctx.len()
            )));
        }
        for img in images {
            check_same(img.ctx(), target)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, e) in m.support() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitution by variable name. Every variable occurring in `self`
    /// must be mapped; variables absent from `self` may be omitted.
    pub fn substitute(&self, sigma: &HashMap<String, Polynomial>) -> Result<Polynomial> {
        let target = match sigma.values().next() {
            Some(p) => p.ctx().clone(),
            None if self.is_constant() => return Ok(self.clone()),
            None => {
                let i = self.support()[0];
                return Err(AlgebraError::UnmappedVariable(self.ctx.name(i).into()));
            }
        };
        let used = self.support();
        let mut images = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            let name = self.ctx.name(i);
            match sigma.get(name) {
                Some(p) => images.push(p.clone()),
                None if used.contains(&i) => {
                    return Err(AlgebraError::UnmappedVariable(name.to_string()))
                }
                None => images.push(Polynomial::zero(&target)),
            }
        }
        self.compose(&images, &target)
    }

    /// Re-expresses `self` in `target`, matching variables by name. Only
    /// variables that occur in `self` need to exist in `target`.
    pub fn embed(&self, target: &Ctx) -> Result<Polynomial> {
        let used = self.support();
        let map: Vec<usize> = (0..self.ctx.len())
            .map(|i| {
                if used.contains(&i) {
                    target.require(self.ctx.name(i))
                } else {
                    Ok(usize::MAX)
                }
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, e) in m.support() {
                exps[map[i]] = e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Text form with terms in the given order.
    pub fn format_with(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(&self.ctx);
            if m.is_one() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&MonomialOrder::GrevLex))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands in different contexts")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Builds polynomials in a fixed context from variable names.
#[derive(Clone, Debug)]
pub struct PolyRing {
    ctx: Ctx,
}

impl PolyRing {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(PolyRing {
            ctx: super::context::VariableContext::new(names)?,
        })
    }

    pub fn from_ctx(ctx: &Ctx) -> Self {
        PolyRing { ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Panics on an unknown name; use [`Polynomial::var`] for a fallible lookup.
    pub fn var(&self, name: &str) -> Polynomial {
        Polynomial::var(&self.ctx, name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.ctx.len())
            .map(|i| Polynomial::var_index(&self.ctx, i))
            .collect()
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(&self.ctx, c)
    }

    pub fn int(&self, n: i64) -> Polynomial {
        Polynomial::constant(&self.ctx, super::rational::q(n))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ctx)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rational::q;

    fn conifold() -> (PolyRing, Polynomial) {
        let r = PolyRing::new(["z1", "z2", "z3", "z4"]).unwrap();
        let f = r.var("z1") * r.var("z2") - r.var("z3") * r.var("z4");
        (r, f)
    }

    #[test]
    fn cancellation() {
        let (r, f) = conifold();
        assert_eq!(&f + &(r.var("z3") * r.var("z4")), r.var("z1") * r.var("z2"));
    }

    #[test]
    fn binomial_square() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let (x, y) = (r.var("x"), r.var("y"));
        let lhs = (&x + &y).pow(2);
        let rhs = &x * &x + r.int(2) * &x * &y + &y * &y;
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn annihilation() {
        let (r, f) = conifold();
        assert!((&f * &r.zero()).is_zero());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let (_, f) = conifold();
        let other = PolyRing::new(["x"]).unwrap();
        assert!(matches!(
            f.checked_add(&other.var("x")),
            Err(AlgebraError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn toric_substitution_kills_conifold() {
        let (_, f) = conifold();
        let xi = PolyRing::new(["xi1", "xi2", "xi3", "xi4"]).unwrap();
        let mut s = HashMap::new();
        s.insert("z1".to_string(), xi.var("xi1") * xi.var("xi2"));
        s.insert("z2".to_string(), xi.var("xi3") * xi.var("xi4"));
        s.insert("z3".to_string(), xi.var("xi1") * xi.var("xi3"));
        s.insert("z4".to_string(), xi.var("xi2") * xi.var("xi4"));
        assert!(f.substitute(&s).unwrap().is_zero());
    }

    #[test]
    fn identity_substitution() {
        let (r, f) = conifold();
        let s: HashMap<String, Polynomial> = r
            .ctx()
            .names()
            .iter()
            .map(|n| (n.clone(), r.var(n)))
            .collect();
        assert_eq!(f.substitute(&s).unwrap(), f);
    }

    #[test]
    fn cusp_substitution() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let t = PolyRing::new(["t"]).unwrap();
        let p = r.var("x").pow(2) + r.var("y");
        let mut s = HashMap::new();
        s.insert("x".to_string(), t.var("t").pow(2));
        s.insert("y".to_string(), t.var("t").pow(3));
        assert_eq!(p.substitute(&s).unwrap(), t.var("t").pow(4) + t.var("t").pow(3));
    }

    #[test]
    fn unmapped_variable() {
        let (_, f) = conifold();
        let t = PolyRing::new(["t"]).unwrap();
        let mut s = HashMap::new();
        s.insert("z1".to_string(), t.var("t"));
        assert!(matches!(f.substitute(&s), Err(AlgebraError::UnmappedVariable(_))));
    }

    #[test]
    fn eval_and_derivative() {
        let (_, f) = conifold();
        assert_eq!(f.eval(&[q(2), q(3), q(6), q(1)]).unwrap(), q(0));
        assert_eq!(f.derivative(0).to_string(), "z2");
    }

    #[test]
    fn printing_signs() {
        let r = PolyRing::new(["x"]).unwrap();
        let p = r.int(-1) * r.var("x") + r.constant(crate::symcore::rational::qf(1, 2));
        assert_eq!(p.to_string(), "-x + 1/2");
        assert_eq!(r.zero().to_string(), "0");
    }
}
