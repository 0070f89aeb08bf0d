//! The conifold algebra `Λ_c = ℚ⟨ξ1, ξ2, ξ3⟩ / (ξ1²ξ2 − ξ2ξ1², ξ1ξ2² − ξ2²ξ1,
//! ξ1ξ3 + ξ3ξ1, ξ2ξ3 + ξ3ξ2, ξ3² − 1)`, its central subalgebra, its
//! two-by-two representations and the quiver description of them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::freealg::{build_rewrite_system, FreePolynomial, NCPresentation};
use crate::resolution::{explicit_chart, Case};
use crate::symcore::rational::{qf, random_nonzero_rational, random_rational};
use crate::symcore::{Ctx, MatrixPoly, Polynomial, QMatrix, Rational, VariableContext};

pub const XI_NAMES: [&str; 3] = ["xi1", "xi2", "xi3"];

pub fn lambda_ctx() -> Ctx {
    VariableContext::new(XI_NAMES).expect("distinct names")
}

/// The five defining relations, in the displayed order.
pub fn lambda_relations(ctx: &Ctx) -> Vec<FreePolynomial> {
    let x: Vec<FreePolynomial> = (0..3).map(|i| FreePolynomial::generator_index(ctx, i)).collect();
    let one = FreePolynomial::one(ctx);
    vec![
        &(&x[0] * &x[0]) * &x[1] - &(&x[1] * &x[0]) * &x[0],
        &(&x[0] * &x[1]) * &x[1] - &(&x[1] * &x[1]) * &x[0],
        &x[0] * &x[2] + &x[2] * &x[0],
        &x[1] * &x[2] + &x[2] * &x[1],
        &x[2] * &x[2] - one,
    ]
}

/// `Λ_c` with its rewrite system.
pub fn lambda_c(degree_cap: usize) -> Result<NCPresentation> {
    let ctx = lambda_ctx();
    build_rewrite_system(&ctx, lambda_relations(&ctx), degree_cap)
}

/// `τ(z1) = ξ1²`, `τ(z2) = ξ2²`, `τ(z3), τ(z4) = ½(ξ1ξ2 + ξ2ξ1) ± ½(ξ1ξ2 − ξ2ξ1)ξ3`.
pub fn tau_images(ctx: &Ctx) -> [FreePolynomial; 4] {
    let x: Vec<FreePolynomial> = (0..3).map(|i| FreePolynomial::generator_index(ctx, i)).collect();
    let half = qf(1, 2);
    let sym = (&x[0] * &x[1] + &x[1] * &x[0]).scale(&half);
    let alt = &(&x[0] * &x[1] - &x[1] * &x[0]).scale(&half) * &x[2];
    [&x[0] * &x[0], &x[1] * &x[1], &sym + &alt, &sym - &alt]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauReport {
    pub central: [bool; 4],
    /// `τ(z1)τ(z2) − τ(z3)τ(z4)` reduces to zero.
    pub conifold_relation: bool,
    pub pairwise_commute: bool,
    /// `τ(z1) + τ(z2)` is nonzero.
    pub nonzero_spot_check: bool,
    pub cap_limited: bool,
}

impl TauReport {
    pub fn passed(&self) -> bool {
        self.central.iter().all(|&c| c) && self.conifold_relation && self.pairwise_commute && self.nonzero_spot_check
    }
}

pub fn verify_tau(p: &NCPresentation) -> Result<TauReport> {
    let t = tau_images(p.ctx());
    let mut central = [false; 4];
    for (k, ti) in t.iter().enumerate() {
        central[k] = p.is_central(ti)?;
    }
    let rel = p.normal_form(&(&t[0] * &t[1] - &t[2] * &t[3]))?;
    let mut pairwise_commute = true;
    for i in 0..4 {
        for j in i + 1..4 {
            if !p.is_zero(&t[i].commutator(&t[j])?)? {
                pairwise_commute = false;
            }
        }
    }
    let nonzero_spot_check = !p.is_zero(&(&t[0] + &t[1]))?;
    Ok(TauReport {
        central,
        conifold_relation: rel.value.is_zero(),
        pairwise_commute,
        nonzero_spot_check,
        cap_limited: rel.cap_limited,
    })
}

/// Images of `ξ1, ξ2, ξ3` in `M_2(ℚ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRep(pub [QMatrix; 3]);

impl LambdaRep {
    pub fn conjugate_by(&self, g: &QMatrix) -> Result<LambdaRep> {
        Ok(LambdaRep([
            self.0[0].conjugate_by(g)?,
            self.0[1].conjugate_by(g)?,
            self.0[2].conjugate_by(g)?,
        ]))
    }

    pub fn form1() -> Self {
        LambdaRep([QMatrix::zeros(2, 2), QMatrix::zeros(2, 2), QMatrix::identity(2)])
    }

    pub fn form2() -> Self {
        LambdaRep([QMatrix::zeros(2, 2), QMatrix::zeros(2, 2), QMatrix::scalar(2, &-Rational::one())])
    }
}

impl fmt::Display for LambdaRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi1={}, xi2={}, xi3={}", self.0[0], self.0[1], self.0[2])
    }
}

/// All five relations evaluate to the zero matrix.
pub fn check_representation(rho: &LambdaRep) -> Result<bool> {
    let ctx = lambda_ctx();
    for r in lambda_relations(&ctx) {
        if !r.eval_matrices(&rho.0)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point `(a1, b1, a2, b2)` of the quiver representation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPoint(pub [Rational; 4]);

impl QuiverPoint {
    pub fn from_ints(v: [i64; 4]) -> Self {
        QuiverPoint(v.map(crate::symcore::q))
    }

    pub fn a1(&self) -> &Rational {
        &self.0[0]
    }
    pub fn b1(&self) -> &Rational {
        &self.0[1]
    }
    pub fn a2(&self) -> &Rational {
        &self.0[2]
    }
    pub fn b2(&self) -> &Rational {
        &self.0[3]
    }

    /// Form 3: `ξ1 = [[0, a1], [b1, 0]]`, `ξ2 = [[0, a2], [b2, 0]]`,
    /// `ξ3 = diag(1, −1)`.
    pub fn to_rep(&self) -> LambdaRep {
        let z = Rational::zero;
        LambdaRep([
            QMatrix::two_by_two(z(), self.a1().clone(), self.b1().clone(), z()),
            QMatrix::two_by_two(z(), self.a2().clone(), self.b2().clone(), z()),
            QMatrix::two_by_two(Rational::one(), z(), z(), -Rational::one()),
        ])
    }

    /// `(a1 b1, a2 b2, a1 b2, a2 b1)`: the image in the conifold.
    pub fn invariants(&self) -> [Rational; 4] {
        [
            self.a1() * self.b1(),
            self.a2() * self.b2(),
            self.a1() * self.b2(),
            self.a2() * self.b1(),
        ]
    }
}

impl fmt::Display for QuiverPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(crate::symcore::rational::fmt_rational).collect();
        write!(f, "(a1,b1,a2,b2)=({})", p.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormTag {
    Form1,
    Form2,
    Form3(QuiverPoint),
}

/// A form together with `g` such that `g ρ g⁻¹` is the form's template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub tag: FormTag,
    pub g: QMatrix,
}

pub fn canonical_form(rho: &LambdaRep) -> Result<CanonicalForm> {
    if !check_representation(rho)? {
        return Err(AlgebraError::Invalid("not a representation of the conifold algebra".into()));
    }
    let x3 = &rho.0[2];
    if let Some(c) = x3.as_scalar() {
        let tag = if c.is_one() { FormTag::Form1 } else { FormTag::Form2 };
        return Ok(CanonicalForm {
            tag,
            g: QMatrix::identity(2),
        });
    }
    let one = Rational::one();
    let vp = x3.sub(&QMatrix::scalar(2, &one))?.nullspace().remove(0);
    let vm = x3.add(&QMatrix::scalar(2, &one))?.nullspace().remove(0);
    let p = QMatrix::two_by_two(vp[0].clone(), vm[0].clone(), vp[1].clone(), vm[1].clone());
    let g = p.inverse()?;
    let conj = rho.conjugate_by(&g)?;
    let point = QuiverPoint([
        conj.0[0].get(0, 1).clone(),
        conj.0[0].get(1, 0).clone(),
        conj.0[1].get(0, 1).clone(),
        conj.0[1].get(1, 0).clone(),
    ]);
    if conj != point.to_rep() {
        return Err(AlgebraError::Invalid("conjugated representation is not in Form 3".into()));
    }
    Ok(CanonicalForm {
        tag: FormTag::Form3(point),
        g,
    })
}

/// `12 − rank` of the Jacobian of the twenty entry equations at `ρ`.
pub fn tangent_dimension(rho: &LambdaRep) -> Result<usize> {
    let names: Vec<String> = (1..=3)
        .flat_map(|k| ["11", "12", "21", "22"].map(|e| format!("x{k}_{e}")))
        .collect();
    let ctx = VariableContext::new(names)?;
    let v = |i: usize| Polynomial::var_index(&ctx, i);
    let mats: Vec<MatrixPoly> = (0..3)
        .map(|k| MatrixPoly::two_by_two(&v(4 * k), &v(4 * k + 1), &v(4 * k + 2), &v(4 * k + 3)))
        .collect();
    let point: Vec<Rational> = rho.0.iter().flat_map(|m| m.entries().to_vec()).collect();
    let lctx = lambda_ctx();
    let mut rows = Vec::new();
    for r in lambda_relations(&lctx) {
        let m = r.eval_matrix_polys(&ctx, &mats)?;
        for e in m.entries() {
            rows.push((0..12).map(|k| e.derivative(k).eval(&point)).collect::<Result<Vec<_>>>()?);
        }
    }
    Ok(12 - QMatrix::from_rows(rows)?.rank())
}

/// `ρ(τ(z1..z4))`.
pub fn rho_tau(rho: &LambdaRep) -> Result<[QMatrix; 4]> {
    let ctx = lambda_ctx();
    let t = tau_images(&ctx);
    let v = t.iter().map(|ti| ti.eval_matrices(&rho.0)).collect::<Result<Vec<_>>>()?;
    Ok(std::array::from_fn(|k| v[k].clone()))
}

/// Images are scalar matrices with the expected values: zero for Forms 1
/// and 2, `(a1 b1, a2 b2, a1 b2, a2 b1)` for Form 3.
pub fn verify_rho_tau(rho: &LambdaRep) -> Result<bool> {
    let images = rho_tau(rho)?;
    let expected = match canonical_form(rho)?.tag {
        FormTag::Form1 | FormTag::Form2 => [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
        FormTag::Form3(p) => p.invariants(),
    };
    Ok(images
        .iter()
        .zip(&expected)
        .all(|(m, e)| m.as_scalar().as_ref() == Some(e)))
}

/// `(t1/t2·a1, t2/t1·b1, t1/t2·a2, t2/t1·b2)`, conjugation by `diag(t1, t2)`.
pub fn torus_act(t1: &Rational, t2: &Rational, p: &QuiverPoint) -> Result<QuiverPoint> {
    if t1.is_zero() || t2.is_zero() {
        return Err(AlgebraError::Invalid("torus parameters must be nonzero".into()));
    }
    let s = t1 / t2;
    let si = t2 / t1;
    Ok(QuiverPoint([p.a1() * &s, p.b1() * &si, p.a2() * &s, p.b2() * &si]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theta {
    /// Stable locus `(b1, b2) ≠ 0`.
    Plus,
    /// Stable locus `(a1, a2) ≠ 0`.
    Minus,
}

impl Theta {
    pub fn name(self) -> &'static str {
        match self {
            Theta::Plus => "plus",
            Theta::Minus => "minus",
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theta {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Theta::Plus),
            "minus" => Ok(Theta::Minus),
            _ => Err(AlgebraError::Invalid(format!("unknown stability `{s}` (plus, minus)"))),
        }
    }
}

pub fn stable_membership(p: &QuiverPoint, theta: Theta) -> bool {
    match theta {
        Theta::Plus => !(p.b1().is_zero() && p.b2().is_zero()),
        Theta::Minus => !(p.a1().is_zero() && p.a2().is_zero()),
    }
}

/// Chart and chart coordinates of the quotient point of a stable `p`:
/// `θ₊` uses the `b`-ratio on the charts of `Y₊`, `θ₋` the `a`-ratio on
/// the charts of `Y₋`.
pub fn git_chart_point(p: &QuiverPoint, theta: Theta) -> Option<(Case, usize, Vec<Rational>)> {
    let y = p.invariants();
    match theta {
        Theta::Plus if !p.b1().is_zero() => Some((
            Case::Plus,
            1,
            vec![y[0].clone(), y[1].clone(), p.b2() / p.b1(), y[3].clone()],
        )),
        Theta::Plus if !p.b2().is_zero() => Some((
            Case::Plus,
            3,
            vec![p.b1() / p.b2(), y[1].clone(), y[2].clone(), y[3].clone()],
        )),
        Theta::Minus if !p.a1().is_zero() => Some((
            Case::Minus,
            1,
            vec![y[0].clone(), y[1].clone(), y[2].clone(), p.a2() / p.a1()],
        )),
        Theta::Minus if !p.a2().is_zero() => Some((
            Case::Minus,
            4,
            vec![p.a1() / p.a2(), y[1].clone(), y[2].clone(), y[3].clone()],
        )),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitSample {
    pub point: QuiverPoint,
    pub chart: usize,
    pub chart_point: Vec<Rational>,
    /// The chart relation holds at the chart point.
    pub on_chart: bool,
    /// The chart's structure map sends the chart point to the invariants.
    pub lies_over: bool,
    /// A random torus element leaves the chart point unchanged.
    pub orbit_invariant: bool,
}

impl GitSample {
    pub fn passed(&self) -> bool {
        self.on_chart && self.lies_over && self.orbit_invariant
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitReport {
    pub theta: Theta,
    pub samples: Vec<GitSample>,
}

impl GitReport {
    pub fn passed(&self) -> bool {
        !self.samples.is_empty() && self.samples.iter().all(GitSample::passed)
    }
}

/// Random `θ`-stable points (every fourth with the first coordinate of the
/// relevant pair zero, so both charts are exercised) checked against the
/// charts of `Y₊` or `Y₋`.
pub fn git_chart_check(theta: Theta, trials: usize, seed: u64) -> Result<GitReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(theta as u64 + 1);
    let mut samples = Vec::with_capacity(trials);
    let mut attempts = 0;
    while samples.len() < trials {
        attempts += 1;
        if attempts > 50 * trials.max(1) {
            return Err(AlgebraError::SamplingExhausted(format!("{theta}-stable points")));
        }
        let mut v: [Rational; 4] = std::array::from_fn(|_| random_rational(&mut rng, 6, 3));
        if samples.len() % 4 == 3 {
            // zero b1 (θ₊) or a1 (θ₋)
            v[if theta == Theta::Plus { 1 } else { 0 }] = Rational::zero();
        }
        let p = QuiverPoint(v);
        if !stable_membership(&p, theta) {
            continue;
        }
        let Some((case, i, cp)) = git_chart_point(&p, theta) else {
            continue;
        };
        let chart = explicit_chart(case, i)?;
        let on_chart = chart.relation().eval(&cp)?.is_zero();
        let lies_over = chart.to_conifold(&cp)? == p.invariants();
        let t1 = random_nonzero_rational(&mut rng, 5, 3);
        let t2 = random_nonzero_rational(&mut rng, 5, 3);
        let moved = torus_act(&t1, &t2, &p)?;
        let orbit_invariant = git_chart_point(&moved, theta) == Some((case, i, cp.clone()));
        samples.push(GitSample {
            point: p,
            chart: i,
            chart_point: cp,
            on_chart,
            lies_over,
            orbit_invariant,
        });
    }
    Ok(GitReport { theta, samples })
}

/// Random invertible rational 2x2 matrix.
pub fn random_gl2<R: Rng + ?Sized>(rng: &mut R) -> QMatrix {
    loop {
        let g = QMatrix::two_by_two(
            random_rational(rng, 5, 3),
            random_rational(rng, 5, 3),
            random_rational(rng, 5, 3),
            random_rational(rng, 5, 3),
        );
        if !g.det().expect("square").is_zero() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    #[test]
    fn tau_is_central() {
        let p = lambda_c(8).unwrap();
        let r = verify_tau(&p).unwrap();
        assert!(r.passed());
        assert!(!r.cap_limited);
    }

    #[test]
    fn representations_and_forms() {
        let p = QuiverPoint::from_ints([1, 2, 3, 4]);
        assert!(check_representation(&p.to_rep()).unwrap());
        assert!(check_representation(&LambdaRep::form1()).unwrap());
        let bad = LambdaRep([QMatrix::zeros(2, 2), QMatrix::zeros(2, 2), QMatrix::zeros(2, 2)]);
        assert!(!check_representation(&bad).unwrap());
        assert_eq!(canonical_form(&LambdaRep::form2()).unwrap().tag, FormTag::Form2);
        let g = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let rho = p.to_rep().conjugate_by(&g).unwrap();
        let cf = canonical_form(&rho).unwrap();
        let FormTag::Form3(r) = &cf.tag else { panic!("form 3 expected") };
        assert_eq!(r.invariants(), p.invariants());
        assert_eq!(rho.conjugate_by(&cf.g).unwrap(), r.to_rep());
    }

    #[test]
    fn tangent_dimensions() {
        assert_eq!(tangent_dimension(&QuiverPoint::from_ints([1, 2, 3, 4]).to_rep()).unwrap(), 6);
        assert_eq!(tangent_dimension(&LambdaRep::form1()).unwrap(), 0);
        assert_eq!(tangent_dimension(&LambdaRep::form2()).unwrap(), 0);
    }

    #[test]
    fn rho_tau_values() {
        let rho = QuiverPoint::from_ints([1, 2, 3, 4]).to_rep();
        let imgs = rho_tau(&rho).unwrap();
        let got: Vec<Option<Rational>> = imgs.iter().map(QMatrix::as_scalar).collect();
        assert_eq!(got, vec![Some(q(2)), Some(q(12)), Some(q(4)), Some(q(6))]);
        assert!(verify_rho_tau(&rho).unwrap());
        assert!(verify_rho_tau(&LambdaRep::form1()).unwrap());
    }

    #[test]
    fn torus_and_stability() {
        let p = QuiverPoint::from_ints([1, 1, 1, 1]);
        assert_eq!(torus_act(&q(1), &q(1), &p).unwrap(), p);
        let moved = torus_act(&q(2), &q(1), &p).unwrap();
        assert_eq!(moved, QuiverPoint([q(2), qf(1, 2), q(2), qf(1, 2)]));
        assert!(torus_act(&q(0), &q(1), &p).is_err());
        let x = QuiverPoint::from_ints([1, 0, 0, 0]);
        assert!(!stable_membership(&x, Theta::Plus) && stable_membership(&x, Theta::Minus));
        let y = QuiverPoint::from_ints([0, 1, 0, 1]);
        assert!(stable_membership(&y, Theta::Plus) && !stable_membership(&y, Theta::Minus));
        let o = QuiverPoint::from_ints([0, 0, 0, 0]);
        assert!(!stable_membership(&o, Theta::Plus) && !stable_membership(&o, Theta::Minus));
    }

    #[test]
    fn git_charts() {
        for theta in [Theta::Plus, Theta::Minus] {
            let r = git_chart_check(theta, 20, 7).unwrap();
            assert!(r.passed(), "{theta}");
            let charts: std::collections::BTreeSet<usize> = r.samples.iter().map(|s| s.chart).collect();
            assert_eq!(charts.len(), 2);
        }
    }
}
