use std::cmp::Ordering;

use super::context::VariableContext;

/// A monomial as an exponent vector laid out in context order. The layout
/// is dense; [`Monomial::support`] gives the sparse view.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Nonzero `(variable index, exponent)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn format(&self, ctx: &VariableContext) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|(i, e)| {
                if e == 1 {
                    ctx.name(i).to_string()
                } else {
                    format!("{}^{}", ctx.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial orders. All are total, multiplicative, and well-founded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic with the context's first variable largest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Any monomial involving a front-block variable beats every monomial in
    /// the remaining variables. Ties inside each block use grevlex.
    BlockElim { front: Vec<bool> },
}

impl MonomialOrder {
    pub fn block_elim(nvars: usize, front: &[usize]) -> Self {
        let mut mask = vec![false; nvars];
        for &i in front {
            mask[i] = true;
        }
        MonomialOrder::BlockElim { front: mask }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b, |_| true),
            MonomialOrder::BlockElim { front } => grevlex(a, b, |i| front[i])
                .then_with(|| grevlex(a, b, |i| !front[i])),
        }
    }

    pub fn is_elimination_for(&self, i: usize) -> bool {
        matches!(self, MonomialOrder::BlockElim { front } if front[i])
    }
}

fn grevlex(a: &[u32], b: &[u32], keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |v: &[u32]| -> u64 {
        v.iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e as u64)
            .sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if !keep(i) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial::from_exponents(v.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 > xz in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_prefers_first_variable() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn block_elimination_property() {
        let o = MonomialOrder::block_elim(3, &[0]);
        // anything with x beats any monomial in y, z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 7])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 0, 2]).divides(&m(&[1, 1, 2])));
        assert!(!m(&[2, 0, 0]).divides(&m(&[1, 1, 2])));
        assert_eq!(m(&[2, 0, 1]).lcm(&m(&[1, 3, 0])), m(&[2, 3, 1]));
        assert_eq!(m(&[1, 0, 2]).quotient_of(&m(&[1, 1, 2])), m(&[0, 1, 0]));
    }
}
