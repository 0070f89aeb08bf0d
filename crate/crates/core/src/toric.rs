//! Lattice cones: duals, Hilbert bases and toric ideals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::groebner::{kernel_of_hom, RingHom, RingPresentation};
use crate::symcore::{Monomial, Polynomial, QMatrix, Rational, VariableContext};

/// Integer vector in a lattice of fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_ints(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    /// Divides out the gcd of the coordinates.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x / &g).collect())
    }

    /// Primitive integer vector on the ray through a rational vector.
    pub fn from_rational_ray(v: &[Rational]) -> LatticeVector {
        let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        LatticeVector(v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect())
            .primitive()
    }

    fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rational polyhedral cone `Σ ℝ≥0 v` over the given generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// Generators are made primitive, deduplicated and sorted.
    pub fn new(rank: usize, rays: Vec<LatticeVector>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for r in rays {
            if r.rank() != rank {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "generator {r} in a lattice of rank {rank}"
                )));
            }
            if r.is_zero() {
                return Err(AlgebraError::Invalid("zero cone generator".into()));
            }
            set.insert(r.primitive());
        }
        Ok(Cone {
            rank,
            rays: set.into_iter().collect(),
        })
    }

    pub fn from_ints(rank: usize, rays: &[&[i64]]) -> Result<Self> {
        Self::new(rank, rays.iter().map(|r| LatticeVector::from_ints(r)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Whether `x` satisfies every inequality of the cone.
    pub fn contains(&self, x: &LatticeVector) -> bool {
        let dual = dual_cone(self);
        dual.rays.iter().all(|u| !u.dot(x).is_negative())
    }

    /// Basis of `C ∩ -C`.
    pub fn lineality(&self) -> Vec<LatticeVector> {
        let dual = dual_cone(self);
        if dual.rays.is_empty() {
            return (0..self.rank)
                .map(|i| {
                    let mut v = vec![0; self.rank];
                    v[i] = 1;
                    LatticeVector::from_ints(&v)
                })
                .collect();
        }
        let m = QMatrix::from_rows(dual.rays.iter().map(LatticeVector::to_rational).collect())
            .expect("rectangular");
        m.nullspace().iter().map(|v| LatticeVector::from_rational_ray(v)).collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_empty()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "cone[{}]", parts.join(", "))
    }
}

fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    // y + a*x
    y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
}

/// Generators of `{m : ⟨m, v⟩ ≥ 0 for all generators v}`, by the double
/// description method starting from the whole space. A lineality space
/// contributes both signs of each basis vector. Output rays are primitive
/// and sorted lexicographically.
pub fn dual_cone(c: &Cone) -> Cone {
    let n = c.rank;
    let mut lineality: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    // each ray with the set of processed inequalities it makes tight
    let mut rays: Vec<(Vec<Rational>, BTreeSet<usize>)> = Vec::new();
    for (k, a) in c.rays.iter().enumerate() {
        let a = a.to_rational();
        if let Some(p) = lineality.iter().position(|l| !dot_q(&a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(p);
            if dot_q(&a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot_q(&a, &l0);
            for l in &mut lineality {
                let f = -dot_q(&a, l) / &al0;
                *l = axpy(&f, &l0, l);
            }
            for (r, tight) in &mut rays {
                let f = -dot_q(&a, r) / &al0;
                *r = axpy(&f, &l0, r);
                tight.insert(k);
            }
            // l0 is tight at every earlier inequality, as a lineality vector was
            let tight: BTreeSet<usize> = (0..k).collect();
            rays.push((l0, tight));
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|(r, _)| dot_q(&a, r)).collect();
        let mut next = Vec::new();
        for (i, (r, tight)) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut t = tight.clone();
                t.insert(k);
                next.push((r.clone(), t));
            } else if vals[i].is_positive() {
                next.push((r.clone(), tight.clone()));
            }
        }
        for (i, (p, tp)) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, (q, tq)) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = tp.intersection(tq).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(m, (_, tm))| m == i || m == j || !common.is_subset(tm));
                if !adjacent {
                    continue;
                }
                // vals[i] * q - vals[j] * p lies on the hyperplane
                let new: Vec<Rational> = p
                    .iter()
                    .zip(q)
                    .map(|(pi, qi)| &vals[i] * qi - &vals[j] * pi)
                    .collect();
                let mut t = common;
                t.insert(k);
                next.push((new, t));
            }
        }
        rays = next;
    }
    let mut out: Vec<LatticeVector> = rays
        .iter()
        .map(|(r, _)| LatticeVector::from_rational_ray(r))
        .filter(|r| !r.is_zero())
        .collect();
    for l in &lineality {
        let v = LatticeVector::from_rational_ray(l);
        out.push(v.neg());
        out.push(v);
    }
    Cone::new(n, out).expect("nonzero generators of matching rank")
}

/// Minimal generators of the semigroup of lattice points in a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupBasis {
    pub generators: Vec<LatticeVector>,
}

impl fmt::Display for SemigroupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Hilbert basis of a pointed cone. Candidates are the lattice points of
/// the cone inside the bounding box of the zonotope `Σ [0,1]·v`, which
/// contains every fundamental parallelepiped of the rays; a candidate is
/// kept when no other candidate can be subtracted from it inside the cone.
pub fn hilbert_basis(c: &Cone) -> Result<SemigroupBasis> {
    let lin = c.lineality();
    if !lin.is_empty() {
        let parts: Vec<String> = lin.iter().map(ToString::to_string).collect();
        return Err(AlgebraError::NotPointed(format!("lineality space spanned by {}", parts.join(", "))));
    }
    let ineq = dual_cone(c).rays;
    let inside = |x: &LatticeVector| ineq.iter().all(|u| !u.dot(x).is_negative());
    let n = c.rank;
    let lo: Vec<BigInt> = (0..n)
        .map(|i| c.rays.iter().map(|r| r.0[i].clone().min(BigInt::zero())).sum())
        .collect();
    let hi: Vec<BigInt> = (0..n)
        .map(|i| c.rays.iter().map(|r| r.0[i].clone().max(BigInt::zero())).sum())
        .collect();
    let mut candidates = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        let x = LatticeVector(cur.clone());
        if !x.is_zero() && inside(&x) {
            candidates.push(x);
        }
        for i in 0..n {
            if cur[i] < hi[i] {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = lo[i].clone();
        }
        break;
    }
    let generators: BTreeSet<LatticeVector> = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| {
                y != *x && {
                    let d = x.sub(y);
                    !d.is_zero() && inside(&d)
                }
            })
        })
        .cloned()
        .collect();
    Ok(SemigroupBasis {
        generators: generators.into_iter().collect(),
    })
}

/// `ℚ[names] / I` where `I` is the kernel of `z_i ↦ ξ^{B_i}`. Negative
/// exponents are handled with inverse variables `ξ_j·ξ_j_inv − 1`.
pub fn semigroup_presentation(b: &SemigroupBasis, names: &[&str]) -> Result<RingPresentation> {
    if names.len() != b.generators.len() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{} names for {} semigroup generators",
            names.len(),
            b.generators.len()
        )));
    }
    let n = b.generators.first().map_or(0, LatticeVector::rank);
    let needs_inverse: Vec<bool> = (0..n)
        .map(|j| b.generators.iter().any(|g| g.0[j].is_negative()))
        .collect();
    let mut tnames: Vec<String> = (1..=n).map(|j| format!("xi{j}")).collect();
    for j in 0..n {
        if needs_inverse[j] {
            tnames.push(format!("xi{}_inv", j + 1));
        }
    }
    let tctx = VariableContext::new(tnames.iter().cloned())?;
    let mut inv_index = vec![usize::MAX; n];
    let mut relations = Vec::new();
    let mut next = n;
    for j in 0..n {
        if needs_inverse[j] {
            inv_index[j] = next;
            relations.push(
                Polynomial::var_index(&tctx, j) * Polynomial::var_index(&tctx, next) - Polynomial::one(&tctx),
            );
            next += 1;
        }
    }
    let images = b
        .generators
        .iter()
        .map(|g| {
            let mut exps = vec![0u32; tctx.len()];
            for (j, x) in g.0.iter().enumerate() {
                let e = x.abs().to_u32().ok_or_else(|| AlgebraError::Unsupported("huge exponent".into()))?;
                if x.is_negative() {
                    exps[inv_index[j]] = e;
                } else {
                    exps[j] = e;
                }
            }
            Ok(Polynomial::monomial(&tctx, Monomial::from_exponents(exps), Rational::one()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sctx = VariableContext::new(names.iter().copied())?;
    let hom = RingHom::new(
        RingPresentation::free(&sctx),
        RingPresentation::new(&tctx, relations)?,
        images,
    )?;
    let kernel = kernel_of_hom(&hom)?;
    RingPresentation::new(&sctx, kernel.generators().to_vec())
}

/// The cone `σ` of the conifold: `e1, e2, e3, -e1+e2+e3, ±(e1-e2-e3+e4)`.
pub fn conifold_sigma() -> Cone {
    Cone::from_ints(
        4,
        &[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[-1, 1, 1, 0],
            &[1, -1, -1, 1],
            &[-1, 1, 1, -1],
        ],
    )
    .expect("valid cone")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rays(c: &Cone) -> Vec<Vec<i64>> {
        c.rays().iter().map(|r| r.to_i64().unwrap()).collect()
    }

    #[test]
    fn conifold_dual_and_hilbert_basis() {
        let dual = dual_cone(&conifold_sigma());
        let expected = vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![1, 0, 1, 0], vec![1, 1, 0, 0]];
        assert_eq!(rays(&dual), expected);
        let hb = hilbert_basis(&dual).unwrap();
        let got: Vec<Vec<i64>> = hb.generators.iter().map(|g| g.to_i64().unwrap()).collect();
        assert_eq!(got, expected);
        assert!(!conifold_sigma().is_pointed());
        assert!(hilbert_basis(&conifold_sigma()).is_err());
    }

    #[test]
    fn small_duals() {
        let orthant = Cone::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(dual_cone(&orthant), orthant);
        let c = Cone::from_ints(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(rays(&dual_cone(&c)), vec![vec![0, 1], vec![2, -1]]);
        let line = Cone::from_ints(2, &[&[1, 0], &[-1, 0]]).unwrap();
        assert_eq!(rays(&dual_cone(&line)), vec![vec![0, -1], vec![0, 1]]);
    }

    #[test]
    fn hilbert_basis_of_thin_cone() {
        let c = Cone::from_ints(2, &[&[1, 0], &[1, 3]]).unwrap();
        let hb = hilbert_basis(&c).unwrap();
        let got: Vec<Vec<i64>> = hb.generators.iter().map(|g| g.to_i64().unwrap()).collect();
        assert_eq!(got, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn presentations() {
        let dual = dual_cone(&conifold_sigma());
        let hb = hilbert_basis(&dual).unwrap();
        // order the generators as z1..z4 = e1+e2, e3+e4, e1+e3, e2+e4
        let order = [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]];
        let b = SemigroupBasis {
            generators: order.iter().map(|v| LatticeVector::from_ints(v)).collect(),
        };
        assert!(hb.generators.iter().all(|g| b.generators.contains(g)));
        let p = semigroup_presentation(&b, &["z1", "z2", "z3", "z4"]).unwrap();
        let ctx = p.ctx();
        let z: Vec<Polynomial> = (0..4).map(|i| Polynomial::var_index(ctx, i)).collect();
        let conifold = &z[0] * &z[1] - &z[2] * &z[3];
        let expected = crate::groebner::Ideal::new(ctx, vec![conifold]).unwrap();
        assert!(p.relations().equals(&expected).unwrap());

        let cusp = SemigroupBasis {
            generators: vec![LatticeVector::from_ints(&[2]), LatticeVector::from_ints(&[3])],
        };
        let p = semigroup_presentation(&cusp, &["z1", "z2"]).unwrap();
        let z: Vec<Polynomial> = (0..2).map(|i| Polynomial::var_index(p.ctx(), i)).collect();
        let expected = crate::groebner::Ideal::new(p.ctx(), vec![z[0].pow(3) - z[1].pow(2)]).unwrap();
        assert!(p.relations().equals(&expected).unwrap());

        let free = SemigroupBasis {
            generators: vec![LatticeVector::from_ints(&[1, 0]), LatticeVector::from_ints(&[0, 1])],
        };
        assert!(semigroup_presentation(&free, &["a", "b"]).unwrap().relations().generators().is_empty());

        let signed = SemigroupBasis {
            generators: vec![LatticeVector::from_ints(&[1]), LatticeVector::from_ints(&[-1])],
        };
        let p = semigroup_presentation(&signed, &["u", "v"]).unwrap();
        let z: Vec<Polynomial> = (0..2).map(|i| Polynomial::var_index(p.ctx(), i)).collect();
        let expected =
            crate::groebner::Ideal::new(p.ctx(), vec![&z[0] * &z[1] - Polynomial::one(p.ctx())]).unwrap();
        assert!(p.relations().equals(&expected).unwrap());
    }
}
