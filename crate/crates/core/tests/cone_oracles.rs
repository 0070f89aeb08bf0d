use azp_core::toric::{conifold_sigma, dual_cone, hilbert_basis, semigroup_presentation, Cone, LatticeVector};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Box oracle for a cone given by rays with entries in `[-2, 2]`, rank ≤ 3.
/// Facet normals are cross products (entries ≤ 8), so the box dual with
/// radius 8 contains them all and cuts out exactly the cone.
struct BoxOracle {
    dual: Vec<Vec<i64>>,
}

impl BoxOracle {
    fn new(n: usize, rays: &[Vec<i64>]) -> Self {
        let dual = box_points(n, 8)
            .into_iter()
            .filter(|u| rays.iter().all(|r| dot(u, r) >= 0))
            .collect();
        BoxOracle { dual }
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.dual.iter().all(|u| dot(u, x) >= 0)
    }
}

fn random_rays(rng: &mut ChaCha8Rng, n: usize, pointed: bool) -> Vec<Vec<i64>> {
    let k = rng.gen_range(1..=4);
    let mut rays = Vec::new();
    while rays.len() < k {
        let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if pointed {
            v[0] = rng.gen_range(1..=2);
        }
        if v.iter().any(|&x| x != 0) {
            rays.push(v);
        }
    }
    rays
}

fn cone(n: usize, rays: &[Vec<i64>]) -> Cone {
    let r: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
    Cone::from_ints(n, &r).unwrap()
}

fn check_double_dual(n: usize, rays: &[Vec<i64>]) {
    let c = cone(n, rays);
    let dd = dual_cone(&dual_cone(&c));
    let oracle = BoxOracle::new(n, rays);
    for x in box_points(n, 3) {
        let lv = LatticeVector::from_ints(&x);
        assert_eq!(dd.contains(&lv), oracle.contains(&x), "rays {rays:?}, point {x:?}");
        assert_eq!(c.contains(&lv), oracle.contains(&x), "rays {rays:?}, point {x:?}");
    }
    for u in dual_cone(&c).rays() {
        let u = u.to_i64().unwrap();
        assert!(rays.iter().all(|r| dot(&u, r) >= 0));
    }
}

#[test]
fn double_dual_matches_box_oracle_on_conifold_cone() {
    let sigma: Vec<Vec<i64>> = conifold_sigma().rays().iter().map(|r| r.to_i64().unwrap()).collect();
    check_double_dual(4, &sigma);
}

#[test]
fn double_dual_matches_box_oracle_on_random_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..10 {
        let n = 2 + k % 2;
        let rays = random_rays(&mut rng, n, false);
        check_double_dual(n, &rays);
    }
}

fn is_small_combination(x: &LatticeVector, others: &[&LatticeVector], bound: i64) -> bool {
    fn go(x: &LatticeVector, others: &[&LatticeVector], bound: i64) -> bool {
        if x.is_zero() {
            return true;
        }
        let Some((first, rest)) = others.split_first() else { return false };
        (0..=bound).any(|c| {
            let mut y = x.clone();
            for _ in 0..c {
                y = y.sub(first);
            }
            go(&y, rest, bound)
        })
    }
    go(x, others, bound)
}

#[test]
fn hilbert_bases_are_in_the_cone_and_irredundant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cones = vec![dual_cone(&conifold_sigma())];
    for k in 0..8 {
        cones.push(cone(2 + k % 2, &random_rays(&mut rng, 2 + k % 2, true)));
    }
    for c in cones {
        let hb = hilbert_basis(&c).unwrap();
        let ineq = dual_cone(&c);
        for (i, g) in hb.generators.iter().enumerate() {
            assert!(ineq.rays().iter().all(|u| !u.dot(g).is_negative()));
            let others: Vec<&LatticeVector> = hb.generators.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h).collect();
            assert!(!is_small_combination(g, &others, 3), "{g} is redundant in {hb}");
        }
        // every ray of the cone is generated
        for r in c.rays() {
            let all: Vec<&LatticeVector> = hb.generators.iter().collect();
            assert!(is_small_combination(r, &all, 3), "{r} not generated by {hb}");
        }
    }
}

#[test]
fn presentation_generators_vanish_under_monomial_substitution() {
    let hb = hilbert_basis(&dual_cone(&conifold_sigma())).unwrap();
    let p = semigroup_presentation(&hb, &["z1", "z2", "z3", "z4"]).unwrap();
    for g in p.relations().generators() {
        // exponent vector of each term under z_i ↦ ξ^{B_i}
        let mut images = std::collections::BTreeMap::<Vec<BigInt>, num_rational::BigRational>::new();
        for (m, c) in g.terms() {
            let mut e = vec![BigInt::from(0); 4];
            for (i, k) in m.support() {
                for j in 0..4 {
                    e[j] += &hb.generators[i].0[j] * BigInt::from(k);
                }
            }
            *images.entry(e).or_default() += c;
        }
        assert!(images.values().all(|c| c == &num_rational::BigRational::from_integer(0.into())), "{g}");
    }
}
