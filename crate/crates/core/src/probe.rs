//! Matrix probes of the conifold: the two-by-two deformation family, the
//! descent map `π_Rep` to `A⁴`, its sections, fibers, and kernels of
//! numeric matrix homomorphisms.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::conifold;
use crate::error::{AlgebraError, Result};
use crate::groebner::{Ideal, RingPresentation};
use crate::symcore::rational::{random_nonzero_rational, random_rational, rational_sqrt};
use crate::symcore::{
    evaluate_at_matrices, evaluate_matrix_hom, Ctx, MatrixPoly, Monomial, Polynomial, QMatrix, Rational,
    VariableContext,
};

/// Parameters of the family, in this order.
pub const FAMILY_NAMES: [&str; 8] = ["a1", "a2", "delta1", "delta2", "b1", "b2", "eta1", "eta2"];

/// A ring homomorphism `source -> M_r(ℚ[params])`, given by the images of
/// the source variables.
#[derive(Clone, Debug)]
pub struct MatrixHom {
    source: RingPresentation,
    size: usize,
    images: Vec<MatrixPoly>,
}

impl MatrixHom {
    pub fn new(source: RingPresentation, images: Vec<MatrixPoly>) -> Result<Self> {
        if images.len() != source.ctx().len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} images for {} source variables",
                images.len(),
                source.ctx().len()
            )));
        }
        let size = images.first().map_or(1, MatrixPoly::rows);
        if images.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(AlgebraError::ShapeMismatch("images must be square of one size".into()));
        }
        Ok(MatrixHom { source, size, images })
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn images(&self) -> &[MatrixPoly] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&MatrixPoly> {
        Ok(&self.images[self.source.ctx().require(name)?])
    }

    pub fn evaluate(&self, p: &Polynomial) -> Result<MatrixPoly> {
        evaluate_matrix_hom(&self.images, p)
    }

    pub fn images_commute(&self) -> Result<bool> {
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                let ab = self.images[i].mul(&self.images[j])?;
                let ba = self.images[j].mul(&self.images[i])?;
                if ab != ba {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every source relation maps to the zero matrix.
    pub fn is_well_defined(&self) -> Result<bool> {
        for r in self.source.relations().generators() {
            if !self.evaluate(r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Numeric images at a parameter point.
    pub fn specialize(&self, point: &[Rational]) -> Result<Vec<QMatrix>> {
        self.images.iter().map(|m| m.eval(point)).collect()
    }
}

/// The family `A_i = [[a_i, δ_i], [0, 0]]`, `B_i = [[b_i, 0], [η_i, 0]]`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    ctx: Ctx,
}

impl Default for DeformationFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl DeformationFamily {
    pub fn new() -> Self {
        DeformationFamily {
            ctx: VariableContext::new(FAMILY_NAMES).expect("distinct names"),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn v(&self, name: &str) -> Polynomial {
        Polynomial::var(&self.ctx, name).expect("family variable")
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ctx)
    }

    pub fn a_matrices(&self) -> [MatrixPoly; 2] {
        let z = self.zero();
        [
            MatrixPoly::two_by_two(&self.v("a1"), &self.v("delta1"), &z, &z),
            MatrixPoly::two_by_two(&self.v("a2"), &self.v("delta2"), &z, &z),
        ]
    }

    pub fn b_matrices(&self) -> [MatrixPoly; 2] {
        let z = self.zero();
        [
            MatrixPoly::two_by_two(&self.v("b1"), &z, &self.v("eta1"), &z),
            MatrixPoly::two_by_two(&self.v("b2"), &z, &self.v("eta2"), &z),
        ]
    }

    /// Images of `ξ1..ξ4`: `A1, A2, B1, B2`.
    pub fn xi_images(&self) -> Vec<MatrixPoly> {
        let [a1, a2] = self.a_matrices();
        let [b1, b2] = self.b_matrices();
        vec![a1, a2, b1, b2]
    }

    /// `[[a1, δ1], [a2, δ2]]`.
    pub fn a_block(&self) -> MatrixPoly {
        MatrixPoly::two_by_two(&self.v("a1"), &self.v("delta1"), &self.v("a2"), &self.v("delta2"))
    }

    /// `[[b1, b2], [η1, η2]]`.
    pub fn b_block(&self) -> MatrixPoly {
        MatrixPoly::two_by_two(&self.v("b1"), &self.v("b2"), &self.v("eta1"), &self.v("eta2"))
    }

    /// `z1 ↦ A1B1, z2 ↦ A2B2, z3 ↦ A1B2, z4 ↦ A2B1`.
    pub fn family_images(&self) -> MatrixHom {
        let [a1, a2] = self.a_matrices();
        let [b1, b2] = self.b_matrices();
        let images = vec![
            a1.mul(&b1).expect("2x2"),
            a2.mul(&b2).expect("2x2"),
            a1.mul(&b2).expect("2x2"),
            a2.mul(&b1).expect("2x2"),
        ];
        MatrixHom::new(conifold::presentation(), images).expect("four 2x2 images")
    }

    /// `(c1, c2, c3, c4)` as polynomials: the entries of `A-block · B-block`
    /// read as `[[c1, c3], [c4, c2]]`.
    pub fn pi_rep_symbolic(&self) -> [Polynomial; 4] {
        let c = self.a_block().mul(&self.b_block()).expect("2x2");
        [c.get(0, 0).clone(), c.get(1, 1).clone(), c.get(0, 1).clone(), c.get(1, 0).clone()]
    }
}

/// The symbolic identity `z1*z2 - z3*z4 = det(A-block) * det(B-block)` for
/// the top-left entries of the family images, and vanishing of the other
/// three entries of every image.
pub fn verify_det_factorization() -> Result<bool> {
    let fam = DeformationFamily::new();
    let h = fam.family_images();
    let tl: Vec<Polynomial> = h.images().iter().map(|m| m.get(0, 0).clone()).collect();
    let lhs = &tl[0] * &tl[1] - &tl[2] * &tl[3];
    let rhs = fam.a_block().det()? * fam.b_block().det()?;
    let shapes_ok = h
        .images()
        .iter()
        .all(|m| m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(1, 1).is_zero());
    Ok(lhs == rhs && shapes_ok)
}

/// A point `(a1, a2, δ1, δ2, b1, b2, η1, η2)` of `Rep^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepAPoint(pub [Rational; 8]);

impl RepAPoint {
    pub fn from_ints(v: [i64; 8]) -> Self {
        RepAPoint(v.map(crate::symcore::q))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Self {
        RepAPoint(std::array::from_fn(|_| random_rational(rng, height, 3)))
    }

    pub fn values(&self) -> &[Rational; 8] {
        &self.0
    }

    pub fn a_block(&self) -> QMatrix {
        let v = &self.0;
        QMatrix::two_by_two(v[0].clone(), v[2].clone(), v[1].clone(), v[3].clone())
    }

    pub fn b_block(&self) -> QMatrix {
        let v = &self.0;
        QMatrix::two_by_two(v[4].clone(), v[5].clone(), v[6].clone(), v[7].clone())
    }

    /// Builds the point with the given blocks.
    pub fn from_blocks(a: &QMatrix, b: &QMatrix) -> Self {
        RepAPoint([
            a.get(0, 0).clone(),
            a.get(1, 0).clone(),
            a.get(0, 1).clone(),
            a.get(1, 1).clone(),
            b.get(0, 0).clone(),
            b.get(0, 1).clone(),
            b.get(1, 0).clone(),
            b.get(1, 1).clone(),
        ])
    }
}

/// `(c1, c2, c3, c4)` with `[[c1, c3], [c4, c2]] = A-block · B-block`.
pub fn pi_rep(p: &RepAPoint) -> [Rational; 4] {
    let c = p.a_block().mul(&p.b_block()).expect("2x2");
    [c.get(0, 0).clone(), c.get(1, 1).clone(), c.get(0, 1).clone(), c.get(1, 0).clone()]
}

/// `[[c1, c3], [c4, c2]]`.
pub fn c_matrix(c: &[Rational; 4]) -> QMatrix {
    QMatrix::two_by_two(c[0].clone(), c[2].clone(), c[3].clone(), c[1].clone())
}

/// The section `s_t`: `A-block = C·t⁻¹`, `B-block = t`, as eight
/// polynomials in `c1..c4` ordered like [`FAMILY_NAMES`].
pub fn section_st(t: &QMatrix) -> Result<(Ctx, [Polynomial; 8])> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(AlgebraError::ShapeMismatch("t must be 2x2".into()));
    }
    let tinv = t.inverse()?;
    let ctx = VariableContext::new(["c1", "c2", "c3", "c4"])?;
    let c = |i: usize| Polynomial::var_index(&ctx, i);
    let cm = MatrixPoly::two_by_two(&c(0), &c(2), &c(3), &c(1));
    let a = cm.mul(&MatrixPoly::from_rational(&ctx, &tinv))?;
    let k = |x: &Rational| Polynomial::constant(&ctx, x.clone());
    let vals = [
        a.get(0, 0).clone(),
        a.get(1, 0).clone(),
        a.get(0, 1).clone(),
        a.get(1, 1).clone(),
        k(t.get(0, 0)),
        k(t.get(0, 1)),
        k(t.get(1, 0)),
        k(t.get(1, 1)),
    ];
    Ok((ctx, vals))
}

/// `π_Rep ∘ s_t = id`, as polynomial identities in `c1..c4`.
pub fn verify_section(t: &QMatrix) -> Result<bool> {
    let (ctx, sec) = section_st(t)?;
    let fam = DeformationFamily::new();
    let composite = fam
        .pi_rep_symbolic()
        .iter()
        .map(|p| p.compose(&sec, &ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..4).all(|i| composite[i] == Polynomial::var_index(&ctx, i)))
}

/// The section with indeterminate `t`, denominators cleared:
/// `C · adj(t) · t = det(t) · C` over `ℚ[c1..c4, t11, t12, t21, t22]`.
pub fn verify_section_symbolic() -> Result<bool> {
    let ctx = VariableContext::new(["c1", "c2", "c3", "c4", "t11", "t12", "t21", "t22"])?;
    let v = |i: usize| Polynomial::var_index(&ctx, i);
    let cm = MatrixPoly::two_by_two(&v(0), &v(2), &v(3), &v(1));
    let t = MatrixPoly::two_by_two(&v(4), &v(5), &v(6), &v(7));
    let lhs = cm.mul(&t.adjugate()?)?.mul(&t)?;
    let rhs = cm.scale(&t.det()?);
    Ok(lhs == rhs)
}

/// Ideal of `π_Rep⁻¹(c)` in the eight family variables.
pub fn fiber_ideal(c: &[Rational; 4]) -> Ideal {
    let fam = DeformationFamily::new();
    let gens = fam
        .pi_rep_symbolic()
        .iter()
        .zip(c)
        .map(|(p, ci)| p - &Polynomial::constant(fam.ctx(), ci.clone()))
        .collect();
    Ideal::new(fam.ctx(), gens).expect("same context")
}

/// Named sub-check of a fiber classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub c: [Rational; 4],
    pub rank: usize,
    pub dim: usize,
    pub checks: Vec<FiberCheck>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Rank, dimension and the structural checks for the fiber over `c`.
pub fn classify_fiber(c: &[Rational; 4]) -> Result<FiberReport> {
    let rank = c_matrix(c).rank();
    let ideal = fiber_ideal(c);
    let dim = ideal.krull_dimension()?;
    let fam = DeformationFamily::new();
    let ctx = fam.ctx();
    let mut checks = Vec::new();
    let expected_dim = if rank == 0 { 5 } else { 4 };
    checks.push(FiberCheck {
        name: format!("dimension {expected_dim}"),
        passed: dim == expected_dim,
    });
    let vars = |names: &[&str]| -> Result<Ideal> {
        let gens = names.iter().map(|n| Polynomial::var(ctx, n)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ctx, gens)
    };
    match rank {
        0 => {
            // {B-block = 0} and {A-block = 0} lie in the fiber
            let b_zero = vars(&["b1", "b2", "eta1", "eta2"])?;
            let a_zero = vars(&["a1", "a2", "delta1", "delta2"])?;
            checks.push(FiberCheck {
                name: "contains {B = 0}".into(),
                passed: b_zero.contains_ideal(&ideal)?,
            });
            checks.push(FiberCheck {
                name: "contains {A = 0}".into(),
                passed: a_zero.contains_ideal(&ideal)?,
            });
        }
        2 => {
            checks.push(FiberCheck {
                name: "saturation at det A equals the graph of B = A^-1 C".into(),
                passed: graph_ideal(c)?.equals(&ideal.saturation(&fam.a_block().det()?)?)?,
            });
        }
        _ => {}
    }
    Ok(FiberReport {
        c: c.clone(),
        rank,
        dim,
        checks,
    })
}

/// `{(A, B) : det A ≠ 0, B = A⁻¹ C}` closure, via an inverse variable `w`.
fn graph_ideal(c: &[Rational; 4]) -> Result<Ideal> {
    let names: Vec<&str> = std::iter::once("w").chain(FAMILY_NAMES).collect();
    let big = VariableContext::new(names)?;
    let fam = DeformationFamily::new();
    let a = fam.a_block().embed(&big)?;
    let b = fam.b_block().embed(&big)?;
    let w = Polynomial::var_index(&big, 0);
    let cm = MatrixPoly::from_rational(&big, &c_matrix(c));
    let rhs = a.adjugate()?.mul(&cm)?.scale(&w);
    let mut gens = vec![&w * &a.det()? - Polynomial::one(&big)];
    for (x, y) in b.entries().iter().zip(rhs.entries()) {
        gens.push(x - y);
    }
    let g = Ideal::new(&big, gens)?.eliminate_to(&FAMILY_NAMES)?;
    let back = g.generators().iter().map(|p| p.embed(fam.ctx())).collect::<Result<Vec<_>>>()?;
    Ideal::new(fam.ctx(), back)
}

/// Evidence that descent genuinely deforms: at random points of the
/// deformed conifold `c1*c2 - c3*c4 = s` (`s ≠ 0`), the section `s_t`
/// gives a family point whose images satisfy the commutator relations of
/// `R_Ξ`, whose perturbations square to zero, and whose descent is the
/// point `c`, off the conifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationWitness {
    pub s: Rational,
    pub c: [Rational; 4],
    pub t: QMatrix,
    pub point: RepAPoint,
}

pub fn deformation_witness<R: Rng + ?Sized>(rng: &mut R) -> Result<DeformationWitness> {
    for _ in 0..100 {
        let s = random_nonzero_rational(rng, 9, 3);
        let c1 = random_nonzero_rational(rng, 9, 3);
        let c2 = random_nonzero_rational(rng, 9, 3);
        let c3 = random_nonzero_rational(rng, 9, 3);
        let c4 = (&c1 * &c2 - &s) / &c3;
        let c = [c1, c2, c3, c4];
        let t = QMatrix::two_by_two(
            random_rational(rng, 5, 2),
            random_rational(rng, 5, 2),
            random_rational(rng, 5, 2),
            random_rational(rng, 5, 2),
        );
        if t.det()?.is_zero() {
            continue;
        }
        let a = c_matrix(&c).mul(&t.inverse()?)?;
        let point = RepAPoint::from_blocks(&a, &t);
        return Ok(DeformationWitness { s, c, t, point });
    }
    Err(AlgebraError::SamplingExhausted("no invertible t found".into()))
}

impl DeformationWitness {
    /// All parts of the witness hold exactly.
    pub fn verify(&self) -> Result<bool> {
        let fam = DeformationFamily::new();
        let pt = self.point.values();
        let xi: Vec<QMatrix> = fam.xi_images().iter().map(|m| m.eval(pt)).collect::<Result<_>>()?;
        // R_Ξ: the four products ξ1ξ3, ξ2ξ4, ξ1ξ4, ξ2ξ3 commute
        let prods = [
            xi[0].mul(&xi[2])?,
            xi[1].mul(&xi[3])?,
            xi[0].mul(&xi[3])?,
            xi[1].mul(&xi[2])?,
        ];
        for i in 0..4 {
            for j in i + 1..4 {
                if prods[i].mul(&prods[j])? != prods[j].mul(&prods[i])? {
                    return Ok(false);
                }
            }
        }
        // perturbations [[0, δ], [0, 0]] and [[0, 0], [η, 0]] square to zero
        let undeformed = {
            let mut v = pt.clone();
            for k in [2, 3, 6, 7] {
                v[k] = Rational::zero();
            }
            v
        };
        for m in fam.xi_images() {
            let d = m.eval(pt)?.sub(&m.eval(&undeformed)?)?;
            if !d.mul(&d)?.is_zero() {
                return Ok(false);
            }
        }
        let c = pi_rep(&self.point);
        let off_conifold = &c[0] * &c[1] - &c[2] * &c[3];
        let h = fam.family_images();
        let rel = h.evaluate(&conifold::relation(h.source().ctx()))?.eval(pt)?;
        Ok(c == self.c
            && off_conifold == self.s
            && !self.s.is_zero()
            && rel.get(0, 0) == &self.s)
    }
}

fn point_ideal(ctx: &Ctx, p: &[Rational]) -> Result<Ideal> {
    Ideal::point(ctx, p)
}

/// Kernel of `z ↦ images` for commuting rational matrices. Handles any size
/// when all images are diagonal, and size two in general: distinct rational
/// eigenvalues diagonalize, a repeated eigenvalue gives the first-order
/// neighbourhood `m_a² + ker(ε)` of the shared eigenvalue point. Every
/// returned generator is checked to map to the zero matrix.
pub fn probe_image_ideal(ctx: &Ctx, images: &[QMatrix]) -> Result<Ideal> {
    if images.len() != ctx.len() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{} images for {} variables",
            images.len(),
            ctx.len()
        )));
    }
    let r = images.first().map_or(1, QMatrix::rows);
    if images.iter().any(|m| m.rows() != r || m.cols() != r) {
        return Err(AlgebraError::ShapeMismatch("images must be square of one size".into()));
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i].mul(&images[j])? != images[j].mul(&images[i])? {
                return Err(AlgebraError::NonCommuting);
            }
        }
    }
    let ideal = if images.iter().all(QMatrix::is_diagonal) {
        diagonal_kernel(ctx, images)?
    } else if r == 2 {
        two_by_two_kernel(ctx, images)?
    } else {
        return Err(AlgebraError::Unsupported(format!(
            "kernel of non-diagonal {r}x{r} images"
        )));
    };
    let gb = ideal.grevlex_basis();
    for g in gb.basis() {
        if !evaluate_at_matrices(images, g)?.is_zero() {
            return Err(AlgebraError::Invalid(format!("kernel generator {g} does not vanish")));
        }
    }
    Ideal::new(ctx, gb.basis().to_vec())
}

fn diagonal_kernel(ctx: &Ctx, images: &[QMatrix]) -> Result<Ideal> {
    let r = images.first().map_or(1, QMatrix::rows);
    let tuples: BTreeSet<Vec<Rational>> = (0..r)
        .map(|k| images.iter().map(|m| m.get(k, k).clone()).collect())
        .collect();
    let mut it = tuples.into_iter();
    let first = it.next().expect("at least one row");
    let mut acc = point_ideal(ctx, &first)?;
    for t in it {
        acc = acc.intersection(&point_ideal(ctx, &t)?)?;
    }
    Ok(acc)
}

fn two_by_two_kernel(ctx: &Ctx, images: &[QMatrix]) -> Result<Ideal> {
    let m = images
        .iter()
        .find(|m| m.as_scalar().is_none())
        .expect("some image is not diagonal");
    let tr = m.trace();
    let det = m.det()?;
    let disc = &tr * &tr - Rational::from_integer(4.into()) * &det;
    let two = Rational::from_integer(2.into());
    if !disc.is_zero() {
        let root = rational_sqrt(&disc).ok_or(AlgebraError::IrrationalSpectrum)?;
        let l1 = (&tr + &root) / &two;
        let l2 = (&tr - &root) / &two;
        let v1 = m.sub(&QMatrix::scalar(2, &l1))?.nullspace().remove(0);
        let v2 = m.sub(&QMatrix::scalar(2, &l2))?.nullspace().remove(0);
        let p = QMatrix::two_by_two(v1[0].clone(), v2[0].clone(), v1[1].clone(), v2[1].clone());
        let pinv = p.inverse()?;
        let diag: Vec<QMatrix> = images
            .iter()
            .map(|x| pinv.mul(x)?.mul(&p))
            .collect::<Result<_>>()?;
        return diagonal_kernel(ctx, &diag);
    }
    let lambda = &tr / &two;
    let n = m.sub(&QMatrix::scalar(2, &lambda))?;
    // v2 outside ker(n), v1 = n·v2: basis in which m is a Jordan block
    let e1 = QMatrix::new(2, 1, vec![Rational::one(), Rational::zero()])?;
    let e2 = QMatrix::new(2, 1, vec![Rational::zero(), Rational::one()])?;
    let v2 = if n.mul(&e1)?.is_zero() { e2 } else { e1 };
    let v1 = n.mul(&v2)?;
    let p = QMatrix::two_by_two(v1.get(0, 0).clone(), v2.get(0, 0).clone(), v1.get(1, 0).clone(), v2.get(1, 0).clone());
    let pinv = p.inverse()?;
    let tri: Vec<QMatrix> = images
        .iter()
        .map(|x| pinv.mul(x)?.mul(&p))
        .collect::<Result<_>>()?;
    let a: Vec<Rational> = tri.iter().map(|x| x.get(0, 0).clone()).collect();
    let eps: Vec<Rational> = tri.iter().map(|x| x.get(0, 1).clone()).collect();
    let shifted: Vec<Polynomial> = (0..ctx.len())
        .map(|i| Polynomial::var_index(ctx, i) - Polynomial::constant(ctx, a[i].clone()))
        .collect();
    let mut gens = Vec::new();
    for i in 0..shifted.len() {
        for j in i..shifted.len() {
            gens.push(&shifted[i] * &shifted[j]);
        }
    }
    let functional = QMatrix::new(1, eps.len(), eps)?;
    for c in functional.nullspace() {
        let mut l = Polynomial::zero(ctx);
        for (ci, s) in c.iter().zip(&shifted) {
            l = l + s.scale(ci);
        }
        gens.push(l);
    }
    Ideal::new(ctx, gens)
}

/// `dim_ℚ` of the subalgebra of `M_r(ℚ)` generated by the images: the
/// function ring of the surrogate through which the probe factors.
pub fn surrogate_dimension(images: &[QMatrix]) -> usize {
    let r = images.first().map_or(1, QMatrix::rows);
    let mut span: Vec<Vec<Rational>> = vec![QMatrix::identity(r).entries().to_vec()];
    let mut frontier = vec![QMatrix::identity(r)];
    let rank_of = |rows: &Vec<Vec<Rational>>| QMatrix::from_rows(rows.clone()).expect("rectangular").rank();
    let mut rank = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for m in images {
                let p = f.mul(m).expect("square");
                let mut trial = span.clone();
                trial.push(p.entries().to_vec());
                let k = rank_of(&trial);
                if k > rank {
                    rank = k;
                    span = trial;
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    rank
}

/// Monomials of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut layer = vec![Monomial::one(n)];
    for _ in 0..d {
        let mut next = BTreeSet::new();
        for m in &layer {
            for i in 0..n {
                next.insert(m.mul(&Monomial::var(n, i)));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    #[test]
    fn family_images_match_display() {
        let fam = DeformationFamily::new();
        let h = fam.family_images();
        assert_eq!(h.image("z1").unwrap().get(0, 0).to_string(), "a1*b1 + delta1*eta1");
        assert_eq!(h.image("z4").unwrap().get(0, 0).to_string(), "a2*b1 + delta2*eta1");
        assert!(h.images_commute().unwrap());
        assert!(verify_det_factorization().unwrap());
    }

    #[test]
    fn pi_rep_of_identity_blocks() {
        let p = RepAPoint::from_ints([1, 0, 0, 1, 1, 0, 0, 1]);
        assert_eq!(pi_rep(&p), [q(1), q(1), q(0), q(0)]);
    }

    #[test]
    fn sections() {
        assert!(verify_section(&QMatrix::identity(2)).unwrap());
        assert!(verify_section(&QMatrix::from_ints(&[&[1, 1], &[0, 1]])).unwrap());
        assert!(verify_section_symbolic().unwrap());
        assert!(section_st(&QMatrix::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn fibers() {
        let r0 = classify_fiber(&[q(0), q(0), q(0), q(0)]).unwrap();
        assert_eq!((r0.rank, r0.dim), (0, 5));
        assert!(r0.passed());
        let r1 = classify_fiber(&[q(1), q(1), q(1), q(1)]).unwrap();
        assert_eq!((r1.rank, r1.dim), (1, 4));
        let r2 = classify_fiber(&[q(1), q(1), q(0), q(0)]).unwrap();
        assert_eq!((r2.rank, r2.dim), (2, 4));
        assert!(r2.passed());
    }

    #[test]
    fn image_ideals() {
        let ctx = conifold::ctx();
        let e11 = QMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let imgs = vec![e11.clone(), e11.clone(), e11.clone(), e11];
        let k = probe_image_ideal(&ctx, &imgs).unwrap();
        let p0 = Ideal::point(&ctx, &[q(0), q(0), q(0), q(0)]).unwrap();
        let p1 = Ideal::point(&ctx, &[q(1), q(1), q(1), q(1)]).unwrap();
        assert!(k.equals(&p0.intersection(&p1).unwrap()).unwrap());
        let zero = vec![QMatrix::zeros(2, 2); 4];
        assert!(probe_image_ideal(&ctx, &zero).unwrap().equals(&p0).unwrap());
        let scal: Vec<QMatrix> = [2, 3, 6, 1].iter().map(|&x| QMatrix::from_ints(&[&[x]])).collect();
        let p = Ideal::point(&ctx, &[q(2), q(3), q(6), q(1)]).unwrap();
        assert!(probe_image_ideal(&ctx, &scal).unwrap().equals(&p).unwrap());
        let x = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let y = QMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        let nc = vec![x, y, QMatrix::zeros(2, 2), QMatrix::zeros(2, 2)];
        assert_eq!(probe_image_ideal(&ctx, &nc), Err(AlgebraError::NonCommuting));
    }

    #[test]
    fn jordan_probe_is_first_order_neighbourhood() {
        let ctx = conifold::ctx();
        let j = |a: i64, e: i64| QMatrix::from_ints(&[&[a, e], &[0, a]]);
        let imgs = vec![j(1, 1), j(1, 1), j(1, 1), j(1, 1)];
        let k = probe_image_ideal(&ctx, &imgs).unwrap();
        assert_eq!(k.quotient_dimension().unwrap(), 2);
        assert_eq!(surrogate_dimension(&imgs), 2);
    }
}
