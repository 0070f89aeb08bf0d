use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::word::Word;
use crate::error::{AlgebraError, Result};
use crate::symcore::rational::fmt_rational;
use crate::symcore::{q, same_context, Ctx, MatrixPoly, Monomial, Polynomial, QMatrix, Rational};

/// Element of the free associative algebra `ℚ⟨ctx⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePolynomial {
    ctx: Ctx,
    terms: BTreeMap<Word, Rational>,
}

impl FreePolynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        FreePolynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        Self::term(ctx, Word::empty(), c)
    }

    pub fn term(ctx: &Ctx, w: Word, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(w, c);
        p
    }

    pub fn generator(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::generator_index(ctx, ctx.require(name)?))
    }

    pub fn generator_index(ctx: &Ctx, i: usize) -> Self {
        Self::term(ctx, Word::letter(i), Rational::one())
    }

    /// Product of the named generators in order.
    pub fn word(ctx: &Ctx, names: &[&str]) -> Result<Self> {
        let letters = names.iter().map(|n| ctx.require(n)).collect::<Result<Vec<_>>>()?;
        Ok(Self::term(ctx, Word::from_letters(letters), Rational::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(ctx: &Ctx, terms: I) -> Self {
        let mut p = Self::zero(ctx);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    pub fn leading_term(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Rational)> {
        self.terms.pop_last()
    }

    fn check(&self, other: &FreePolynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(AlgebraError::GeneratorMismatch)
        }
    }

    pub fn checked_add(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Concatenation product.
    pub fn checked_mul(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> FreePolynomial {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        FreePolynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// `c · left · self · right`.
    pub fn wrap(&self, c: &Rational, left: &[usize], right: &[usize]) -> FreePolynomial {
        let mut out = Self::zero(&self.ctx);
        for (w, a) in &self.terms {
            out.add_term(w.wrap(left, right), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> FreePolynomial {
        let mut out = Self::one(&self.ctx);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Image in the commutative polynomial ring on the same names.
    pub fn abelianize(&self) -> Polynomial {
        let n = self.ctx.len();
        Polynomial::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .map(|(w, c)| (Monomial::from_exponents(w.content(n)), c.clone())),
        )
    }

    /// Lift of a commutative polynomial, each monomial written as the
    /// sorted word.
    pub fn from_commutative(p: &Polynomial) -> FreePolynomial {
        let ctx = p.ctx();
        let mut out = Self::zero(ctx);
        for (m, c) in p.terms() {
            let mut letters = Vec::new();
            for (i, e) in m.support() {
                letters.extend(std::iter::repeat(i).take(e as usize));
            }
            out.add_term(Word::from_letters(letters), c.clone());
        }
        out
    }

    fn check_images(&self, n: usize) -> Result<()> {
        if n != self.ctx.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{n} images for {} generators",
                self.ctx.len()
            )));
        }
        Ok(())
    }

    /// Substitutes square rational matrices for the generators, keeping
    /// products ordered.
    pub fn eval_matrices(&self, images: &[QMatrix]) -> Result<QMatrix> {
        self.check_images(images.len())?;
        let n = images.first().map_or(1, QMatrix::rows);
        let mut acc = QMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            let mut m = QMatrix::identity(n);
            for &l in w.letters() {
                m = m.mul(&images[l])?;
            }
            acc = acc.add(&m.scale(c))?;
        }
        Ok(acc)
    }

    /// Substitutes square polynomial matrices (all over `ctx`).
    pub fn eval_matrix_polys(&self, ctx: &Ctx, images: &[MatrixPoly]) -> Result<MatrixPoly> {
        self.check_images(images.len())?;
        let n = images.first().map_or(1, MatrixPoly::rows);
        let mut acc = MatrixPoly::zeros(ctx, n, n);
        for (w, c) in &self.terms {
            let mut m = MatrixPoly::identity(ctx, n);
            for &l in w.letters() {
                m = m.mul(&images[l])?;
            }
            acc = acc.add(&m.scale(&Polynomial::constant(ctx, c.clone())))?;
        }
        Ok(acc)
    }

    /// Text form with the largest word first, e.g. `xi1*xi3 - 1/2*xi2 + 1`.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&w.format(&self.ctx));
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&w.format(&self.ctx));
            }
        }
        out
    }

    pub fn int(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, q(n))
    }
}

impl fmt::Display for FreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FreePolynomial> for &FreePolynomial {
            type Output = FreePolynomial;
            fn $method(self, rhs: &FreePolynomial) -> FreePolynomial {
                self.$checked(rhs).expect("free polynomials over different generators")
            }
        }
        impl $tr<FreePolynomial> for FreePolynomial {
            type Output = FreePolynomial;
            fn $method(self, rhs: FreePolynomial) -> FreePolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FreePolynomial> for FreePolynomial {
            type Output = FreePolynomial;
            fn $method(self, rhs: &FreePolynomial) -> FreePolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<FreePolynomial> for &FreePolynomial {
            type Output = FreePolynomial;
            fn $method(self, rhs: FreePolynomial) -> FreePolynomial {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FreePolynomial {
    type Output = FreePolynomial;
    fn neg(self) -> FreePolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for FreePolynomial {
    type Output = FreePolynomial;
    fn neg(self) -> FreePolynomial {
        -&self
    }
}

/// Bilinear product, as a free function.
pub fn nc_mul(f: &FreePolynomial, g: &FreePolynomial) -> Result<FreePolynomial> {
    f.checked_mul(g)
}
