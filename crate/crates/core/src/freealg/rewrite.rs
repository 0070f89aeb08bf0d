//! Degree-truncated noncommutative Buchberger procedure.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use num_traits::One;

use super::poly::FreePolynomial;
use super::word::Word;
use crate::error::{AlgebraError, Result};
use crate::symcore::{Ctx, Rational};

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Oriented rule `lhs -> rhs` with every word of `rhs` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: FreePolynomial,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs.format(self.rhs.ctx()), self.rhs)
    }
}

/// A finitely presented algebra together with its rewrite system.
#[derive(Clone, Debug)]
pub struct NCPresentation {
    ctx: Ctx,
    relations: Vec<FreePolynomial>,
    degree_cap: usize,
    rules: Vec<Rule>,
    index: HashMap<Vec<usize>, usize>,
    lengths: Vec<usize>,
    stabilized: bool,
    complete: bool,
}

/// A normal form, flagged when the rewrite system did not stabilize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub value: FreePolynomial,
    pub cap_limited: bool,
}

impl NCPresentation {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn relations(&self) -> &[FreePolynomial] {
        &self.relations
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Rules sorted by left-hand side.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// No rule was produced by an ambiguity of length equal to the cap.
    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    /// Every ambiguity of the final rules fits under the cap and resolves,
    /// so the rules form a finite confluent system and normal forms are
    /// exact in every degree.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_rule_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for start in 0..letters.len() {
            for &len in &self.lengths {
                if start + len > letters.len() {
                    continue;
                }
                if let Some(&r) = self.index.get(&letters[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// Full reduction without the degree-budget check.
    pub fn reduce(&self, f: &FreePolynomial) -> FreePolynomial {
        reduce_with(f, |w| {
            self.find_redex(w).map(|(start, r)| {
                let rule = &self.rules[r];
                (start, rule.lhs.len(), &rule.rhs)
            })
        })
    }

    fn budget(&self, f: &FreePolynomial) -> Result<()> {
        if self.complete {
            return Ok(());
        }
        let degree = f.degree();
        let rule_degree = self.max_rule_degree();
        if degree + rule_degree > self.degree_cap {
            return Err(AlgebraError::DegreeBudget {
                degree,
                rule_degree,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &FreePolynomial) -> Result<NormalForm> {
        if f.ctx().names() != self.ctx.names() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        self.budget(f)?;
        Ok(NormalForm {
            value: self.reduce(f),
            cap_limited: !(self.stabilized || self.complete),
        })
    }

    pub fn is_zero(&self, f: &FreePolynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.value.is_zero())
    }

    /// `[x, g]` reduces to zero for every generator `g`.
    pub fn is_central(&self, x: &FreePolynomial) -> Result<bool> {
        for i in 0..self.ctx.len() {
            let g = FreePolynomial::generator_index(&self.ctx, i);
            if !self.is_zero(&x.commutator(&g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal words (irreducible under the rules) of length at most `d`.
    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        let n = self.ctx.len();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..n {
                    let v = w.concat(&Word::letter(l));
                    // only suffixes can be new redexes
                    if self.find_redex(&v).is_none() {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

fn reduce_with<'a, F>(f: &FreePolynomial, find: F) -> FreePolynomial
where
    F: Fn(&Word) -> Option<(usize, usize, &'a FreePolynomial)>,
{
    let mut p = f.clone();
    let mut out = FreePolynomial::zero(f.ctx());
    while let Some((w, c)) = p.pop_leading() {
        match find(&w) {
            Some((start, len, rhs)) => {
                let letters = w.letters();
                let repl = rhs.wrap(&c, &letters[..start], &letters[start + len..]);
                p = &p + &repl;
            }
            None => out.add_term(w, c),
        }
    }
    out
}

/// S-elements of all ambiguities between `a` and `b` (in this order):
/// suffixes of `a.lhs` that are prefixes of `b.lhs`. Returns
/// `(word length, element)` pairs.
fn overlaps(a: &Rule, b: &Rule) -> Vec<(usize, FreePolynomial)> {
    let la = a.lhs.letters();
    let lb = b.lhs.letters();
    let mut out = Vec::new();
    for k in 1..la.len().min(lb.len()) {
        if la[la.len() - k..] == lb[..k] {
            let one = Rational::one();
            // (rhs_a) * tail_b - head_a * (rhs_b)
            let left = a.rhs.wrap(&one, &[], &lb[k..]);
            let right = b.rhs.wrap(&one, &la[..la.len() - k], &[]);
            out.push((la.len() + lb.len() - k, &left - &right));
        }
    }
    out
}

struct Builder {
    ctx: Ctx,
    cap: usize,
    rules: Vec<Option<Rule>>,
    index: HashMap<Vec<usize>, usize>,
    queue: BinaryHeap<Reverse<(usize, u64)>>,
    items: HashMap<u64, FreePolynomial>,
    seq: u64,
    stabilized: bool,
}

impl Builder {
    fn push(&mut self, degree: usize, p: FreePolynomial) {
        if p.is_zero() {
            return;
        }
        self.items.insert(self.seq, p);
        self.queue.push(Reverse((degree, self.seq)));
        self.seq += 1;
    }

    fn reduce(&self, f: &FreePolynomial) -> FreePolynomial {
        let mut lengths: BTreeSet<usize> = BTreeSet::new();
        for r in self.rules.iter().flatten() {
            lengths.insert(r.lhs.len());
        }
        reduce_with(f, |w| {
            let letters = w.letters();
            for start in 0..letters.len() {
                for &len in &lengths {
                    if start + len > letters.len() {
                        continue;
                    }
                    if let Some(&r) = self.index.get(&letters[start..start + len]) {
                        let rule = self.rules[r].as_ref().expect("indexed rule is live");
                        return Some((start, len, &rule.rhs));
                    }
                }
            }
            None
        })
    }

    fn add_rule(&mut self, lhs: Word, rhs: FreePolynomial) {
        // rules whose left side contains the new one go back to the queue
        let mut demoted = Vec::new();
        for slot in self.rules.iter_mut() {
            if let Some(r) = slot {
                if r.lhs.find(&lhs).is_some() {
                    let r = slot.take().expect("checked");
                    self.index.remove(r.lhs.letters());
                    demoted.push(r);
                }
            }
        }
        for r in demoted {
            let back = FreePolynomial::term(&self.ctx, r.lhs.clone(), Rational::one()) - &r.rhs;
            self.push(r.lhs.len(), back);
        }
        let new_rule = Rule { lhs, rhs };
        let id = self.rules.len();
        self.index.insert(new_rule.lhs.letters().to_vec(), id);
        self.rules.push(Some(new_rule));
        // keep right-hand sides reduced
        for k in 0..self.rules.len() {
            let Some(r) = self.rules[k].clone() else { continue };
            let reduced = self.reduce(&r.rhs);
            if reduced != r.rhs {
                self.rules[k] = Some(Rule { lhs: r.lhs, rhs: reduced });
            }
        }
        let new_rule = self.rules[id].clone().expect("just inserted");
        let live: Vec<Rule> = self.rules.iter().flatten().cloned().collect();
        for other in &live {
            for (len, s) in overlaps(&new_rule, other)
                .into_iter()
                .chain(if other.lhs == new_rule.lhs { Vec::new() } else { overlaps(other, &new_rule) })
            {
                if len <= self.cap {
                    self.push(len, s);
                }
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        while let Some(Reverse((degree, id))) = self.queue.pop() {
            let p = self.items.remove(&id).expect("queued item");
            let r = self.reduce(&p);
            let Some((lw, lc)) = r.leading_term().map(|(w, c)| (w.clone(), c.clone())) else {
                continue;
            };
            if lw.is_empty() {
                return Err(AlgebraError::InconsistentPresentation(format!(
                    "the relations reduce to the nonzero constant {}",
                    r
                )));
            }
            let monic = r.scale(&lc.recip());
            let rhs = FreePolynomial::term(&self.ctx, lw.clone(), Rational::one()) - &monic;
            if degree >= self.cap {
                self.stabilized = false;
            }
            self.add_rule(lw, rhs);
        }
        Ok(())
    }
}

/// Builds the rewrite system of `relations` under the degree-lexicographic
/// word order, resolving ambiguities of length at most `degree_cap`.
pub fn build_rewrite_system(
    ctx: &Ctx,
    relations: Vec<FreePolynomial>,
    degree_cap: usize,
) -> Result<NCPresentation> {
    for r in &relations {
        if r.ctx().names() != ctx.names() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        if r.is_zero() {
            return Err(AlgebraError::Invalid("zero relation".into()));
        }
        if r.degree() > degree_cap {
            return Err(AlgebraError::Invalid(format!(
                "relation of degree {} exceeds the degree cap {degree_cap}",
                r.degree()
            )));
        }
    }
    let mut b = Builder {
        ctx: ctx.clone(),
        cap: degree_cap,
        rules: Vec::new(),
        index: HashMap::new(),
        queue: BinaryHeap::new(),
        items: HashMap::new(),
        seq: 0,
        stabilized: true,
    };
    for r in &relations {
        b.push(r.degree(), r.clone());
    }
    b.run()?;
    let mut rules: Vec<Rule> = b.rules.into_iter().flatten().collect();
    rules.sort_by(|x, y| x.lhs.cmp(&y.lhs));
    let index = rules
        .iter()
        .enumerate()
        .map(|(i, r)| (r.lhs.letters().to_vec(), i))
        .collect();
    let lengths: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
    let mut p = NCPresentation {
        ctx: ctx.clone(),
        relations,
        degree_cap,
        rules,
        index,
        lengths: lengths.into_iter().collect(),
        stabilized: b.stabilized,
        complete: false,
    };
    p.complete = p.check_complete();
    Ok(p)
}

impl NCPresentation {
    fn check_complete(&self) -> bool {
        for a in &self.rules {
            for b in &self.rules {
                for (len, s) in overlaps(a, b) {
                    if len > self.degree_cap || !self.reduce(&s).is_zero() {
                        return false;
                    }
                }
            }
        }
        self.relations.iter().all(|r| self.reduce(r).is_zero())
    }
}

/// Relations `x_j x_i - x_i x_j` for `i < j`: the commutative polynomial
/// ring as a finitely presented algebra.
pub fn commutative_presentation(ctx: &Ctx, degree_cap: usize) -> Result<NCPresentation> {
    let mut rels = Vec::new();
    for i in 0..ctx.len() {
        for j in i + 1..ctx.len() {
            let xi = FreePolynomial::generator_index(ctx, i);
            let xj = FreePolynomial::generator_index(ctx, j);
            rels.push(xj.commutator(&xi)?);
        }
    }
    build_rewrite_system(ctx, rels, degree_cap)
}

pub fn nc_normal_form(f: &FreePolynomial, p: &NCPresentation) -> Result<NormalForm> {
    p.normal_form(f)
}

pub fn nc_is_zero(f: &FreePolynomial, p: &NCPresentation) -> Result<bool> {
    p.is_zero(f)
}

pub fn is_central(x: &FreePolynomial, p: &NCPresentation) -> Result<bool> {
    p.is_central(x)
}

