//! Expression grammar shared by the commutative and noncommutative modes.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' expr ')'
//! matrix := '[' row (',' row)* ']'     row := '[' expr (',' expr)* ']'
//! ```
//!
//! Division is only allowed by nonzero constants. In noncommutative mode
//! products keep their word order.

use std::collections::HashMap;

use azp_core::freealg::FreePolynomial;
use azp_core::symcore::{Ctx, MatrixPoly, Polynomial, QMatrix, Rational, VariableContext};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error(transparent)]
    Algebra(#[from] azp_core::AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                col: cc,
            });
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Name(s),
                line: l,
                col: cc,
            });
        } else if "+-*/^()[],".contains(c) {
            chars.next();
            col += 1;
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l,
                col: cc,
            });
        } else {
            return Err(ParseError::Syntax {
                line: l,
                col: cc,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// Values the parser can build. Implemented for commutative and free
/// polynomials.
trait Algebra: Clone {
    fn constant(&self, c: Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn as_constant(&self) -> Option<Rational>;
}

impl Algebra for Polynomial {
    fn constant(&self, c: Rational) -> Self {
        Polynomial::constant(self.ctx(), c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        self.constant_value()
    }
}

impl Algebra for FreePolynomial {
    fn constant(&self, c: Rational) -> Self {
        FreePolynomial::constant(self.ctx(), c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        FreePolynomial::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        FreePolynomial::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        self.constant_value()
    }
}

struct Parser<'a, A> {
    toks: Vec<Spanned>,
    pos: usize,
    zero: A,
    var: &'a dyn Fn(&str) -> Option<A>,
}

impl<A: Algebra> Parser<'_, A> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: at.line,
            col: at.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error(&t, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expr(&mut self) -> Result<A, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                acc = acc.add(&self.term()?);
            } else if self.is_sym('-') {
                self.next();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = acc.mul(&self.unary()?);
            } else if self.is_sym('/') {
                let at = self.next();
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return self.error(&at, "division by zero"),
                    None => return self.error(&at, "division by a non-constant"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A, ParseError> {
        if self.is_sym('-') {
            self.next();
            let v = self.unary()?;
            return Ok(self.zero.sub(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<A, ParseError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => match u32::try_from(n) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => self.error(&t, "exponent too large"),
            },
            other => self.error(&t, format!("expected an exponent, found {}", describe(other))),
        }
    }

    fn atom(&mut self) -> Result<A, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(self.zero.constant(Rational::from_integer(n.clone()))),
            Tok::Name(name) => (self.var)(name).ok_or(ParseError::UnknownVariable {
                line: t.line,
                col: t.col,
                name: name.clone(),
            }),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            other => self.error(&t, format!("expected a term, found {}", describe(other))),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            self.error(&t, format!("unexpected {}", describe(&t.tok)))
        }
    }

    /// `[[e, e], [e, e]]` as rows of values.
    fn matrix(&mut self) -> Result<Vec<Vec<A>>, ParseError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.expr()?];
            while self.is_sym(',') {
                self.next();
                row.push(self.expr()?);
            }
            self.expect(']')?;
            rows.push(row);
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        let close = self.peek().clone();
        self.expect(']')?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return self.error(&close, "rows of different lengths");
        }
        Ok(rows)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Name(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

fn run<A: Algebra, T>(
    text: &str,
    zero: A,
    var: &dyn Fn(&str) -> Option<A>,
    body: impl FnOnce(&mut Parser<'_, A>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        zero,
        var,
    };
    let v = body(&mut p)?;
    p.end()?;
    Ok(v)
}

fn commutative_vars(ctx: &Ctx) -> impl Fn(&str) -> Option<Polynomial> + '_ {
    move |n| ctx.index_of(n).map(|i| Polynomial::var_index(ctx, i))
}

fn free_vars(ctx: &Ctx) -> impl Fn(&str) -> Option<FreePolynomial> + '_ {
    move |n| ctx.index_of(n).map(|i| FreePolynomial::generator_index(ctx, i))
}

/// Commutative polynomial over `ctx`.
pub fn parse_polynomial(text: &str, ctx: &Ctx) -> Result<Polynomial, ParseError> {
    run(text, Polynomial::zero(ctx), &commutative_vars(ctx), |p| p.expr())
}

/// Element of the free algebra on `ctx`; word order is preserved.
pub fn parse_free(text: &str, ctx: &Ctx) -> Result<FreePolynomial, ParseError> {
    run(text, FreePolynomial::zero(ctx), &free_vars(ctx), |p| p.expr())
}

/// Matrix of polynomials over `ctx`, written `[[a, b], [c, d]]`.
pub fn parse_matrix(text: &str, ctx: &Ctx) -> Result<MatrixPoly, ParseError> {
    let rows = run(text, Polynomial::zero(ctx), &commutative_vars(ctx), |p| p.matrix())?;
    Ok(MatrixPoly::from_rows(ctx, rows)?)
}

/// Matrix with constant rational entries.
pub fn parse_rational_matrix(text: &str) -> Result<QMatrix, ParseError> {
    let empty = VariableContext::new(Vec::<String>::new())?;
    let m = parse_matrix(text, &empty)?;
    Ok(m.to_rational().expect("no variables in an empty context"))
}

/// Variable names in order of first appearance.
pub fn collect_names<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Vec<String>, ParseError> {
    let mut seen = Vec::new();
    for t in texts {
        for s in lex(t)? {
            if let Tok::Name(n) = s.tok {
                if !seen.contains(&n) {
                    seen.push(n);
                }
            }
        }
    }
    Ok(seen)
}

/// Polynomials over a context built from the variables they mention.
pub fn parse_polynomials_auto(texts: &[&str]) -> Result<(Ctx, Vec<Polynomial>), ParseError> {
    let ctx = VariableContext::new(collect_names(texts.iter().copied())?)?;
    let ps = texts.iter().map(|t| parse_polynomial(t, &ctx)).collect::<Result<_, _>>()?;
    Ok((ctx, ps))
}

/// `name=expr` bindings separated by commas or given one per item.
pub fn parse_bindings(items: &[String], ctx: &Ctx) -> Result<HashMap<String, Polynomial>, ParseError> {
    let mut out = HashMap::new();
    for item in items {
        let Some((name, expr)) = item.split_once('=') else {
            return Err(ParseError::Syntax {
                line: 1,
                col: 1,
                msg: format!("expected `name=expression` in `{item}`"),
            });
        };
        out.insert(name.trim().to_string(), parse_polynomial(expr, ctx)?);
    }
    Ok(out)
}

/// Comma-separated rationals, e.g. `1,-1/2,0`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, ParseError> {
    text.split(',')
        .map(|s| {
            azp_core::symcore::rational::parse_rational(s.trim()).map_err(|_| ParseError::Syntax {
                line: 1,
                col: 1,
                msg: format!("`{}` is not a rational number", s.trim()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use azp_core::conifold;

    #[test]
    fn conifold_relation() {
        let ctx = conifold::ctx();
        assert_eq!(parse_polynomial("z1*z2 - z3*z4", &ctx).unwrap(), conifold::relation(&ctx));
    }

    #[test]
    fn noncommutative_order_is_kept() {
        let ctx = VariableContext::new(["x1", "x2", "x3"]).unwrap();
        let p = parse_free("x1*x3 + x3*x1", &ctx).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(parse_polynomial("x1*x3 + x3*x1", &ctx).unwrap().to_string(), "2*x1*x3");
    }

    #[test]
    fn matrices() {
        let ctx = VariableContext::new(["a1", "a2", "d1", "d2"]).unwrap();
        let m = parse_matrix("[[a1,d1],[a2,d2]]", &ctx).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.get(1, 0).to_string(), "a2");
        let q = parse_rational_matrix("[[0, 1/2], [-3, 0]]").unwrap();
        assert_eq!(q.det().unwrap(), azp_core::symcore::qf(3, 2));
    }

    #[test]
    fn rationals_and_powers() {
        let ctx = VariableContext::new(["x", "y"]).unwrap();
        let p = parse_polynomial("(x - 1/2*y)^2 / 3", &ctx).unwrap();
        assert_eq!(p.to_string(), "1/3*x^2 - 1/3*x*y + 1/12*y^2");
    }

    #[test]
    fn positioned_errors() {
        let ctx = VariableContext::new(["x"]).unwrap();
        assert_eq!(
            parse_polynomial("x +\n  w", &ctx).unwrap_err(),
            ParseError::UnknownVariable {
                line: 2,
                col: 3,
                name: "w".into()
            }
        );
        let e = parse_polynomial("x * (x + 1", &ctx).unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, col: 11, .. }), "{e}");
        assert!(parse_polynomial("x / x", &ctx).is_err());
        assert!(parse_polynomial("x # 1", &ctx).is_err());
        assert!(parse_matrix("[[x],[x, x]]", &ctx).is_err());
    }
}
