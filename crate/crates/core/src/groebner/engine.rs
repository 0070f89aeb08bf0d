//! Buchberger's algorithm over sorted term vectors.
//!
//! Terms are stored in ascending order so the leading term sits at the end
//! of the vector and can be popped in O(1).

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::symcore::{Monomial, MonomialOrder, Polynomial, Rational};
use crate::symcore::Ctx;

#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    /// Ascending under the active order; last entry is the leading term.
    terms: Vec<(Monomial, Rational)>,
}

fn support_mask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, (i, _)| acc | (1u64 << (i % 64)))
}

impl GPoly {
    pub(crate) fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        GPoly { terms }
    }

    pub(crate) fn to_poly(&self, ctx: &Ctx) -> Polynomial {
        Polynomial::from_terms(ctx, self.terms.iter().cloned())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub(crate) fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * g`, all ascending.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &GPoly, order: &MonomialOrder) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let v = ac - bc;
                    if !v.is_zero() {
                        out.push((am.clone(), v));
                    }
                }
            }
        }
        GPoly { terms: out }
    }
}

/// A reducer set with cached leading data.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a GPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: Vec<&'a GPoly>) -> Self {
        let masks = polys.iter().map(|g| support_mask(g.lm())).collect();
        Reducers { polys, masks }
    }

    fn find_divisor(&self, m: &Monomial, mask: u64) -> Option<&'a GPoly> {
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(g, &gm)| gm & !mask == 0 && g.lm().divides(m))
            .map(|(g, _)| *g)
    }
}

/// Complete reduction of `f` modulo the reducer set.
pub(crate) fn normal_form(f: &GPoly, reducers: &Reducers<'_>, order: &MonomialOrder) -> GPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        match reducers.find_divisor(&m, support_mask(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                let coef = &c / g.lc();
                p = p.sub_scaled(&coef, &q, g, order);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    GPoly { terms: rem }
}

fn s_polynomial(f: &GPoly, g: &GPoly, order: &MonomialOrder) -> GPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let scaled_f = GPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&mf), c / f.lc()))
            .collect(),
    };
    scaled_f.sub_scaled(&g.lc().recip(), &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'o> {
    order: &'o MonomialOrder,
    basis: Vec<GPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'o> State<'o> {
    /// Gebauer-Moeller update for a new basis element `h`.
    fn update(&mut self, h: GPoly) {
        let k = self.basis.len();
        let hm = h.lm().clone();
        let mut c: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| Pair {
                i,
                j: k,
                lcm: self.basis[i].lm().lcm(&hm),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = self.basis[p.i].lm().is_coprime(&hm);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !self.basis[p.i].lm().is_coprime(&hm))
            .collect();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && basis[p.i].lm().lcm(&hm) != p.lcm
                && basis[p.j].lm().lcm(&hm) != p.lcm)
        });
        self.pairs.extend(e);
        for i in 0..k {
            if self.active[i] && hm.divides(self.basis[i].lm()) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    /// Normal selection: smallest lcm, ties by index.
    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis, sorted by descending leading monomial.
pub(crate) fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Vec<GPoly> {
    let mut state = State {
        order,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let mut p = GPoly::from_poly(g, order);
        if p.is_zero() {
            continue;
        }
        let nf = {
            let refs: Vec<&GPoly> = active_refs(&state);
            normal_form(&p, &Reducers::new(refs), order)
        };
        p = nf;
        if p.is_zero() {
            continue;
        }
        p.make_monic();
        state.update(p);
    }
    while let Some(pair) = state.select() {
        let s = s_polynomial(&state.basis[pair.i], &state.basis[pair.j], order);
        if s.is_zero() {
            continue;
        }
        let mut h = {
            let refs = active_refs(&state);
            normal_form(&s, &Reducers::new(refs), order)
        };
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        state.update(h);
    }
    interreduce(
        state
            .basis
            .into_iter()
            .zip(state.active)
            .filter(|(_, a)| *a)
            .map(|(g, _)| g)
            .collect(),
        order,
    )
}

fn active_refs<'s>(state: &'s State<'_>) -> Vec<&'s GPoly> {
    state
        .basis
        .iter()
        .zip(&state.active)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g)
        .collect()
}

/// Minimal, fully reduced, monic, sorted.
fn interreduce(mut basis: Vec<GPoly>, order: &MonomialOrder) -> Vec<GPoly> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    // minimal: drop elements whose leading monomial is divisible by an earlier one
    let mut minimal: Vec<GPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g)
            .collect();
        let g = &minimal[k];
        // the leading term is irreducible by the others, so only the tail moves
        let mut nf = normal_form(g, &Reducers::new(others), order);
        nf.make_monic();
        reduced.push(nf);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    reduced
}
