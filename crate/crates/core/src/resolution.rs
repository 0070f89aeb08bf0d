//! Single-point probes `ρ(z_i) = [[a_i, ε_i], [0, a_i]]`, the blow-up charts
//! of the small and big resolutions of the conifold, their liftings into
//! `W_ut`, and orbit checks on chart overlaps.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conifold;
use crate::error::{AlgebraError, Result};
use crate::groebner::{Ideal, RingHom, RingPresentation};
use crate::symcore::rational::random_rational;
use crate::symcore::{evaluate_matrix_hom, Ctx, MatrixPoly, Polynomial, QMatrix, Rational, VariableContext};

pub const WUT_NAMES: [&str; 8] = ["a1", "a2", "a3", "a4", "eps1", "eps2", "eps3", "eps4"];

pub fn wut_ctx() -> Ctx {
    VariableContext::new(WUT_NAMES).expect("distinct names")
}

/// `[[a_i, ε_i], [0, a_i]]` for `i = 1..4`.
pub fn wut_templates(ctx: &Ctx) -> Result<Vec<MatrixPoly>> {
    (1..=4)
        .map(|i| {
            let a = Polynomial::var(ctx, &format!("a{i}"))?;
            let e = Polynomial::var(ctx, &format!("eps{i}"))?;
            Ok(MatrixPoly::two_by_two(&a, &e, &Polynomial::zero(ctx), &a))
        })
        .collect()
}

/// Entries of `z1*z2 - z3*z4` evaluated on the templates.
pub fn derive_wut_ideal() -> Result<Ideal> {
    let ctx = wut_ctx();
    let zctx = conifold::ctx();
    let m = evaluate_matrix_hom(&wut_templates(&ctx)?, &conifold::relation(&zctx))?;
    Ideal::new(&ctx, m.entries().to_vec())
}

/// `(a1*a2 - a3*a4, a2*ε1 + a1*ε2 - a4*ε3 - a3*ε4)`.
pub fn wut_relations(ctx: &Ctx) -> Result<Vec<Polynomial>> {
    let v = |n: &str| Polynomial::var(ctx, n);
    Ok(vec![
        v("a1")? * v("a2")? - v("a3")? * v("a4")?,
        v("a2")? * v("eps1")? + v("a1")? * v("eps2")? - v("a4")? * v("eps3")? - v("a3")? * v("eps4")?,
    ])
}

pub fn wut_ideal() -> Ideal {
    let ctx = wut_ctx();
    Ideal::new(&ctx, wut_relations(&ctx).expect("W_ut names")).expect("same context")
}

/// `(a1..a4, ε1..ε4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WutPoint(pub [Rational; 8]);

impl WutPoint {
    pub fn is_valid(&self) -> bool {
        let ctx = wut_ctx();
        wut_relations(&ctx)
            .expect("W_ut names")
            .iter()
            .all(|r| r.eval(&self.0).map(|v| v.is_zero()).unwrap_or(false))
    }

    /// `ρ(z_1..z_4)`.
    pub fn rep_tuple(&self) -> RepTuple {
        let v = &self.0;
        RepTuple(std::array::from_fn(|i| {
            QMatrix::two_by_two(v[i].clone(), v[i + 4].clone(), Rational::zero(), v[i].clone())
        }))
    }
}

/// `π^W`: half-traces `(a1, a2, a3, a4)`.
pub fn pi_w(p: &WutPoint) -> Result<[Rational; 4]> {
    if !p.is_valid() {
        return Err(AlgebraError::Invalid("point does not satisfy the W_ut relations".into()));
    }
    Ok(std::array::from_fn(|i| p.0[i].clone()))
}

/// Which blow-up of the conifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Blow-up of the vertex, ideal `(z1, z2, z3, z4)`.
    Tilde,
    /// Small resolution, ideal `(z1, z3)`.
    Plus,
    /// Small resolution, ideal `(z1, z4)`.
    Minus,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Tilde, Case::Plus, Case::Minus];

    /// Indices (1-based) of the generators of the blown-up ideal.
    pub fn generators(self) -> &'static [usize] {
        match self {
            Case::Tilde => &[1, 2, 3, 4],
            Case::Plus => &[1, 3],
            Case::Minus => &[1, 4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::Tilde => "tilde",
            Case::Plus => "plus",
            Case::Minus => "minus",
        }
    }

    /// Unordered chart pairs `(i, j)` with `i < j`.
    pub fn pairs(self) -> Vec<(usize, usize)> {
        let g = self.generators();
        let mut out = Vec::new();
        for (k, &i) in g.iter().enumerate() {
            for &j in &g[k + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    fn check_index(self, i: usize) -> Result<()> {
        if self.generators().contains(&i) {
            Ok(())
        } else {
            Err(AlgebraError::Invalid(format!("no chart {i} for case {self}")))
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tilde" => Ok(Case::Tilde),
            "plus" => Ok(Case::Plus),
            "minus" => Ok(Case::Minus),
            _ => Err(AlgebraError::Invalid(format!("unknown case `{s}` (tilde, plus, minus)"))),
        }
    }
}

/// Variable names of chart `i`: `z_i`, `u_k` for the other generators,
/// `z_m` outside the generator set, in index order.
fn chart_names(case: Case, i: usize) -> Vec<String> {
    (1..=4)
        .map(|k| {
            if k != i && case.generators().contains(&k) {
                format!("u{k}")
            } else {
                format!("z{k}")
            }
        })
        .collect()
}

/// An affine chart `U^{(z_i)}` with its map to the conifold.
#[derive(Clone, Debug)]
pub struct Chart {
    pub case: Case,
    pub index: usize,
    presentation: RingPresentation,
    structure_map: RingHom,
}

impl Chart {
    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn ctx(&self) -> &Ctx {
        self.presentation.ctx()
    }

    /// `Y -> U^{(z_i)}` on coordinate rings.
    pub fn structure_map(&self) -> &RingHom {
        &self.structure_map
    }

    pub fn relation(&self) -> &Polynomial {
        &self.presentation.relations().generators()[0]
    }

    /// The chart is `A³`: one variable occurs only as a linear term with a
    /// constant coefficient. Returns its index and the expression solving
    /// for it.
    fn solved_variable(&self) -> (usize, Polynomial) {
        let rel = self.relation();
        let ctx = self.ctx();
        for v in 0..ctx.len() {
            let lin = crate::symcore::Monomial::var(ctx.len(), v);
            let c = rel.coefficient(&lin);
            let elsewhere = rel
                .terms()
                .any(|(m, _)| m != &lin && m.exponents()[v] > 0);
            if !c.is_zero() && !elsewhere {
                let rest = rel - &Polynomial::monomial(ctx, lin, c.clone());
                return (v, rest.scale(&(-c.recip())));
            }
        }
        unreachable!("every chart relation is solved for one variable")
    }

    /// Indices of the three free coordinates.
    pub fn free_variables(&self) -> Vec<usize> {
        let (v, _) = self.solved_variable();
        (0..self.ctx().len()).filter(|&k| k != v).collect()
    }

    /// Chart point with the given free coordinates.
    pub fn point_from_free(&self, free: &[Rational]) -> Result<Vec<Rational>> {
        let (v, expr) = self.solved_variable();
        let mut p = vec![Rational::zero(); self.ctx().len()];
        for (k, x) in self.free_variables().into_iter().zip(free) {
            p[k] = x.clone();
        }
        p[v] = expr.eval(&p)?;
        Ok(p)
    }

    /// Image in `Y` under the structure map.
    pub fn to_conifold(&self, p: &[Rational]) -> Result<[Rational; 4]> {
        let imgs = self.structure_map.images();
        let v: Vec<Rational> = imgs.iter().map(|g| g.eval(p)).collect::<Result<_>>()?;
        Ok([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }

    /// Ratios `g_k / g_i` over the case generators (`1` at `i`).
    pub fn ratios(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        self.case
            .generators()
            .iter()
            .map(|&k| {
                if k == self.index {
                    Ok(Rational::one())
                } else {
                    Ok(p[self.ctx().require(&format!("u{k}"))?].clone())
                }
            })
            .collect()
    }

    /// Chart coordinates of the point with conifold image `y` and ratio
    /// vector `r` (indexed like the case generators), when `r_i ≠ 0`.
    pub fn point_from_blowup(&self, y: &[Rational; 4], r: &[Rational]) -> Option<Vec<Rational>> {
        let gens = self.case.generators();
        let pos = gens.iter().position(|&k| k == self.index)?;
        if r[pos].is_zero() {
            return None;
        }
        Some(
            (1..=4)
                .map(|k| match gens.iter().position(|&g| g == k) {
                    Some(kp) if k != self.index => &r[kp] / &r[pos],
                    _ => y[k - 1].clone(),
                })
                .collect(),
        )
    }

    /// Rank of the Jacobian of the chart relation at `p`.
    pub fn jacobian_rank_at(&self, p: &[Rational]) -> Result<usize> {
        let rel = self.relation();
        let row = (0..self.ctx().len())
            .map(|k| rel.derivative(k).eval(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(vec![row])?.rank())
    }
}

fn structure_map(case: Case, i: usize, presentation: &RingPresentation) -> Result<RingHom> {
    let ctx = presentation.ctx();
    let zi = Polynomial::var(ctx, &format!("z{i}"))?;
    let images = (1..=4)
        .map(|k| {
            if k != i && case.generators().contains(&k) {
                Ok(&zi * &Polynomial::var(ctx, &format!("u{k}"))?)
            } else {
                Polynomial::var(ctx, &format!("z{k}"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    RingHom::new(conifold::presentation(), presentation.clone(), images)
}

/// Hand-written chart presentations; the tests check them against `rees_chart`.
pub fn explicit_chart(case: Case, i: usize) -> Result<Chart> {
    case.check_index(i)?;
    let names = chart_names(case, i);
    let ctx = VariableContext::new(names.iter().cloned())?;
    let v = |n: &str| Polynomial::var(&ctx, n).expect("chart variable");
    let rel = match (case, i) {
        (Case::Tilde, 1) => v("u2") - v("u3") * v("u4"),
        (Case::Tilde, 2) => v("u1") - v("u3") * v("u4"),
        (Case::Tilde, 3) => v("u1") * v("u2") - v("u4"),
        (Case::Tilde, 4) => v("u1") * v("u2") - v("u3"),
        (Case::Plus, 1) => v("z2") - v("z4") * v("u3"),
        (Case::Plus, 3) => v("z2") * v("u1") - v("z4"),
        (Case::Minus, 1) => v("z2") - v("z3") * v("u4"),
        (Case::Minus, 4) => v("z2") * v("u1") - v("z3"),
        _ => unreachable!("index checked"),
    };
    let presentation = RingPresentation::new(&ctx, vec![rel])?;
    let structure_map = structure_map(case, i, &presentation)?;
    Ok(Chart {
        case,
        index: i,
        presentation,
        structure_map,
    })
}

/// Chart ring computed from the Rees algebra: `(z_k − u_k z_i) + conifold`,
/// saturated at `z_i`, with the redundant `z_k` eliminated.
pub fn rees_chart(case: Case, i: usize) -> Result<RingPresentation> {
    case.check_index(i)?;
    let others: Vec<usize> = case.generators().iter().copied().filter(|&k| k != i).collect();
    let names: Vec<String> = conifold::Z_NAMES
        .iter()
        .map(|s| s.to_string())
        .chain(others.iter().map(|k| format!("u{k}")))
        .collect();
    let big = VariableContext::new(names.iter().cloned())?;
    let z = |k: usize| Polynomial::var(&big, &format!("z{k}"));
    let mut gens = vec![conifold::relation(&big)];
    for &k in &others {
        gens.push(z(k)? - Polynomial::var(&big, &format!("u{k}"))? * z(i)?);
    }
    let sat = Ideal::new(&big, gens)?.saturation(&z(i)?)?;
    let chart_names = chart_names(case, i);
    let keep: Vec<&str> = chart_names.iter().map(String::as_str).collect();
    let elim = sat.eliminate_to(&keep)?;
    let ctx = VariableContext::new(chart_names.iter().cloned())?;
    let gens = elim.generators().iter().map(|g| g.embed(&ctx)).collect::<Result<Vec<_>>>()?;
    RingPresentation::new(&ctx, gens)
}

/// `ℚ[a, ε] -> chart ring`, realizing the lift of the chart into `W_ut`.
#[derive(Clone, Debug)]
pub struct Lifting {
    pub chart: Chart,
    pub hom: RingHom,
}

/// The displayed liftings, images of `(a1..a4, ε1..ε4)`.
pub fn lifting(case: Case, i: usize) -> Result<Lifting> {
    let chart = explicit_chart(case, i)?;
    let ctx = chart.ctx().clone();
    let v = |n: &str| Polynomial::var(&ctx, n).expect("chart variable");
    let one = Polynomial::one(&ctx);
    let zero = Polynomial::zero(&ctx);
    let images: Vec<Polynomial> = match (case, i) {
        (Case::Tilde, 1) => {
            let z = v("z1");
            vec![z.clone(), &z * &v("u2"), &z * &v("u3"), &z * &v("u4"), one, v("u2"), v("u3"), v("u4")]
        }
        (Case::Tilde, 2) => {
            let z = v("z2");
            vec![&z * &v("u1"), z.clone(), &z * &v("u3"), &z * &v("u4"), v("u1"), one, v("u3"), v("u4")]
        }
        (Case::Tilde, 3) => {
            let z = v("z3");
            vec![&z * &v("u1"), &z * &v("u2"), z.clone(), &z * &v("u4"), v("u1"), v("u2"), one, v("u4")]
        }
        (Case::Tilde, 4) => {
            let z = v("z4");
            vec![&z * &v("u1"), &z * &v("u2"), &z * &v("u3"), z.clone(), v("u1"), v("u2"), v("u3"), one]
        }
        (Case::Plus, 1) => vec![
            v("z1"),
            &v("z4") * &v("u3"),
            &v("z1") * &v("u3"),
            v("z4"),
            one,
            zero.clone(),
            v("u3"),
            zero,
        ],
        (Case::Plus, 3) => vec![
            &v("z3") * &v("u1"),
            v("z2"),
            v("z3"),
            &v("z2") * &v("u1"),
            v("u1"),
            zero.clone(),
            one,
            zero,
        ],
        (Case::Minus, 1) => vec![
            v("z1"),
            &v("z3") * &v("u4"),
            v("z3"),
            &v("z1") * &v("u4"),
            one,
            zero.clone(),
            zero,
            v("u4"),
        ],
        (Case::Minus, 4) => vec![
            &v("z4") * &v("u1"),
            v("z2"),
            &v("z2") * &v("u1"),
            v("z4"),
            v("u1"),
            zero.clone(),
            zero,
            one,
        ],
        _ => unreachable!("index checked by explicit_chart"),
    };
    let hom = RingHom::new(
        RingPresentation::new(&wut_ctx(), wut_relations(&wut_ctx())?)?,
        chart.presentation().clone(),
        images,
    )?;
    Ok(Lifting { chart, hom })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingReport {
    /// Both W_ut relations vanish in the chart ring.
    pub relations_vanish: bool,
    /// `a_k ↦` the structure map's image of `z_k`, modulo the chart ideal.
    pub trace_descent: bool,
}

impl LiftingReport {
    pub fn passed(&self) -> bool {
        self.relations_vanish && self.trace_descent
    }
}

pub fn verify_lifting(l: &Lifting) -> Result<LiftingReport> {
    let relations_vanish = l.hom.check_well_defined()?;
    let pres = l.chart.presentation();
    let mut trace_descent = true;
    for k in 0..4 {
        if !pres.equal(&l.hom.images()[k], &l.chart.structure_map().images()[k])? {
            trace_descent = false;
        }
    }
    Ok(LiftingReport {
        relations_vanish,
        trace_descent,
    })
}

impl Lifting {
    /// `W_ut` point over a chart point.
    pub fn at(&self, p: &[Rational]) -> Result<WutPoint> {
        let v: Vec<Rational> = self.hom.images().iter().map(|g| g.eval(p)).collect::<Result<_>>()?;
        Ok(WutPoint(std::array::from_fn(|k| v[k].clone())))
    }
}

/// Values `ρ(z_1..z_4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTuple(pub [QMatrix; 4]);

impl RepTuple {
    pub fn transpose(&self) -> RepTuple {
        RepTuple(std::array::from_fn(|k| self.0[k].transpose()))
    }

    pub fn conjugate_by(&self, g: &QMatrix) -> Result<RepTuple> {
        let v = self.0.iter().map(|m| m.conjugate_by(g)).collect::<Result<Vec<_>>>()?;
        Ok(RepTuple(std::array::from_fn(|k| v[k].clone())))
    }
}

/// `g · X_k = Y_k · g` for every `k`, with `g` invertible.
pub fn is_similarity(g: &QMatrix, x: &RepTuple, y: &RepTuple) -> Result<bool> {
    if g.det()?.is_zero() {
        return Ok(false);
    }
    for k in 0..4 {
        if g.mul(&x.0[k])? != y.0[k].mul(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An invertible `g` with `g X_k g⁻¹ = Y_k`, if one exists.
///
/// The solutions of `g X_k − Y_k g = 0` form a subspace with basis
/// `b_1..b_d`. `det` restricted to it is a quadratic form; substituting
/// `c_j = s^(3^(j-1))` keeps its monomials apart, so it is nonzero somewhere
/// iff the univariate polynomial in `s` (degree ≤ 2·3^(d−1)) is nonzero
/// at one of `s = 0..=2·3^(d−1)`.
pub fn simultaneous_similarity(x: &RepTuple, y: &RepTuple) -> Result<Option<QMatrix>> {
    // unknowns g = [[g0, g1], [g2, g3]]
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in 0..4 {
        let (xm, ym) = (&x.0[k], &y.0[k]);
        if xm.rows() != 2 || ym.rows() != 2 {
            return Err(AlgebraError::ShapeMismatch("2x2 tuples expected".into()));
        }
        for r in 0..2 {
            for c in 0..2 {
                // (gX)_{rc} - (Yg)_{rc}
                let mut row = vec![Rational::zero(); 4];
                for t in 0..2 {
                    row[2 * r + t] += xm.get(t, c);
                    row[2 * t + c] -= ym.get(r, t);
                }
                rows.push(row);
            }
        }
    }
    let basis = QMatrix::from_rows(rows)?.nullspace();
    let to_matrix = |v: &[Rational]| QMatrix::two_by_two(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    for b in &basis {
        let g = to_matrix(b);
        if !g.det()?.is_zero() {
            return Ok(Some(g));
        }
    }
    let d = basis.len();
    if d < 2 {
        return Ok(None);
    }
    let top = 2 * 3u64.pow(d as u32 - 1);
    for s in 0..=top {
        let mut v = vec![Rational::zero(); 4];
        for (j, b) in basis.iter().enumerate() {
            let c = Rational::from_integer(num_bigint::BigInt::from(s).pow(3u32.pow(j as u32)));
            for t in 0..4 {
                v[t] += &c * &b[t];
            }
        }
        let g = to_matrix(&v);
        if !g.det()?.is_zero() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// One sampled overlap point with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueCertificate {
    pub point_i: Vec<Rational>,
    pub point_j: Vec<Rational>,
    pub exceptional: bool,
    pub g: Option<QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub case: Case,
    pub i: usize,
    pub j: usize,
    pub certificates: Vec<GlueCertificate>,
}

impl GlueReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.g.is_some())
    }

    /// First overlap point without a similarity, if any.
    pub fn counterexample(&self) -> Option<&GlueCertificate> {
        self.certificates.iter().find(|c| c.g.is_none())
    }
}

/// Samples `trials` points of `U_i ∩ U_j` (every third one on the
/// exceptional locus `z_i = 0`), lifts them through both charts and asks for
/// a simultaneous similarity between the two representation tuples.
pub fn verify_gluable(case: Case, i: usize, j: usize, trials: usize, seed: u64) -> Result<GlueReport> {
    let li = lifting(case, i)?;
    let lj = lifting(case, j)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((i * 10 + j) as u64) ^ ((case as u64) << 8));
    let mut certificates = Vec::with_capacity(trials);
    let zi = li.chart.ctx().require(&format!("z{i}"))?;
    let mut attempts = 0;
    while certificates.len() < trials {
        attempts += 1;
        if attempts > 50 * trials.max(1) {
            return Err(AlgebraError::SamplingExhausted(format!(
                "overlap of {case} charts {i} and {j}"
            )));
        }
        let exceptional = certificates.len() % 3 == 2;
        let free_idx = li.chart.free_variables();
        let mut free: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng, 6, 3)).collect();
        if exceptional {
            if let Some(pos) = free_idx.iter().position(|&k| k == zi) {
                free[pos] = Rational::zero();
            }
        }
        let p = li.chart.point_from_free(&free)?;
        let y = li.chart.to_conifold(&p)?;
        let r = li.chart.ratios(&p)?;
        let Some(q) = lj.chart.point_from_blowup(&y, &r) else {
            continue;
        };
        if !lj.chart.relation().eval(&q)?.is_zero() {
            return Err(AlgebraError::Invalid(format!(
                "transition to {case} chart {j} left the chart"
            )));
        }
        let x = li.at(&p)?.rep_tuple();
        let yt = lj.at(&q)?.rep_tuple();
        let g = simultaneous_similarity(&x, &yt)?;
        if let Some(g) = &g {
            if !is_similarity(g, &x, &yt)? {
                return Err(AlgebraError::Invalid("similarity certificate failed".into()));
            }
        }
        certificates.push(GlueCertificate {
            point_i: p,
            point_j: q,
            exceptional: exceptional && li.chart.free_variables().contains(&zi),
            g,
        });
    }
    Ok(GlueReport {
        case,
        i,
        j,
        certificates,
    })
}

/// Random valid chart point.
pub fn random_chart_point<R: Rng + ?Sized>(chart: &Chart, rng: &mut R) -> Result<Vec<Rational>> {
    let free: Vec<Rational> = (0..3).map(|_| random_rational(rng, 6, 3)).collect();
    chart.point_from_free(&free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    #[test]
    fn wut_derivation_matches() {
        assert!(derive_wut_ideal().unwrap().equals(&wut_ideal()).unwrap());
        let p = WutPoint([1, 1, 1, 1, 1, 1, 1, 1].map(q));
        assert!(p.is_valid());
        assert_eq!(pi_w(&p).unwrap(), [q(1), q(1), q(1), q(1)]);
        assert!(pi_w(&WutPoint([1, 2, 1, 1, 0, 0, 0, 0].map(q))).is_err());
    }

    #[test]
    fn rees_charts_match_displays() {
        for case in Case::ALL {
            for &i in case.generators() {
                let rees = rees_chart(case, i).unwrap();
                let explicit = explicit_chart(case, i).unwrap();
                assert!(
                    rees.relations().equals(explicit.presentation().relations()).unwrap(),
                    "{case} {i}: {}",
                    rees.relations()
                );
                assert!(explicit.structure_map().check_well_defined().unwrap());
            }
        }
    }

    #[test]
    fn liftings_verify() {
        for case in Case::ALL {
            for &i in case.generators() {
                let l = lifting(case, i).unwrap();
                assert!(verify_lifting(&l).unwrap().passed(), "{case} {i}");
            }
        }
    }

    #[test]
    fn similarity_examples() {
        let x = RepTuple([
            QMatrix::from_ints(&[&[1, 2], &[0, 1]]),
            QMatrix::from_ints(&[&[3, 1], &[0, 3]]),
            QMatrix::from_ints(&[&[1, 0], &[0, 1]]),
            QMatrix::from_ints(&[&[2, 5], &[0, 2]]),
        ]);
        assert_eq!(simultaneous_similarity(&x, &x).unwrap().map(|g| is_similarity(&g, &x, &x).unwrap()), Some(true));
        let g = simultaneous_similarity(&x, &x.transpose()).unwrap().unwrap();
        assert!(is_similarity(&g, &x, &x.transpose()).unwrap());
        let mut y = x.clone();
        y.0[0] = QMatrix::from_ints(&[&[2, 0], &[0, 2]]);
        assert_eq!(simultaneous_similarity(&x, &y).unwrap(), None);
    }

    #[test]
    fn gluing() {
        for case in Case::ALL {
            for (i, j) in case.pairs() {
                let r = verify_gluable(case, i, j, 6, 3).unwrap();
                assert!(r.passed(), "{case} {i}-{j}");
            }
        }
    }
}
