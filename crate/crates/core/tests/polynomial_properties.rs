use std::collections::HashMap;

use azp_core::groebner::{audit_groebner_basis, Ideal, RingHom, RingPresentation};
use azp_core::symcore::{
    evaluate_matrix_hom, q, Ctx, MatrixPoly, Monomial, MonomialOrder, Polynomial, Rational, VariableContext,
};
use proptest::prelude::*;

fn ctx3() -> Ctx {
    VariableContext::new(["x", "y", "z"]).unwrap()
}

type Terms = Vec<([u32; 3], i64)>;

fn terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(([0..=max_deg, 0..=max_deg, 0..=max_deg], -5i64..=5), 0..=max_terms)
}

fn poly(ctx: &Ctx, t: &Terms) -> Polynomial {
    Polynomial::from_terms(ctx, t.iter().map(|(e, c)| (Monomial::from_exponents(e.to_vec()), q(*c))))
}

fn point(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in terms(2, 4), b in terms(2, 4), c in terms(1, 4)) {
        let ctx = ctx3();
        let (a, b, c) = (poly(&ctx, &a), poly(&ctx, &b), poly(&ctx, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in terms(2, 4), b in terms(2, 4), imgs in prop::array::uniform3(terms(1, 3))) {
        let ctx = ctx3();
        let (a, b) = (poly(&ctx, &a), poly(&ctx, &b));
        let sigma: HashMap<String, Polynomial> = ["x", "y", "z"]
            .iter()
            .zip(&imgs)
            .map(|(n, t)| (n.to_string(), poly(&ctx, t)))
            .collect();
        let s = |p: &Polynomial| p.substitute(&sigma).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn evaluation_agrees_with_one_by_one_matrix_images(a in terms(3, 5), p in prop::array::uniform3(-4i64..=4)) {
        let ctx = ctx3();
        let a = poly(&ctx, &a);
        let pt = point(&p);
        let empty = VariableContext::new(Vec::<String>::new()).unwrap();
        let images: Vec<MatrixPoly> = pt
            .iter()
            .map(|v| MatrixPoly::new(&empty, 1, 1, vec![Polynomial::constant(&empty, v.clone())]).unwrap())
            .collect();
        let m = evaluate_matrix_hom(&images, &a).unwrap();
        prop_assert_eq!(m.get(0, 0).constant_value().unwrap(), a.eval(&pt).unwrap());
    }
}

#[test]
fn determinant_is_multiplicative_symbolically() {
    let ctx = VariableContext::new(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
    let v: Vec<Polynomial> = (0..8).map(|i| Polynomial::var_index(&ctx, i)).collect();
    let m = MatrixPoly::two_by_two(&v[0], &v[1], &v[2], &v[3]);
    let n = MatrixPoly::two_by_two(&v[4], &v[5], &v[6], &v[7]);
    let lhs = m.mul(&n).unwrap().det().unwrap();
    assert_eq!(lhs, &m.det().unwrap() * &n.det().unwrap());
}

fn binomial_ideal(ctx: &Ctx, gens: &[([u32; 3], [u32; 3], i64)]) -> Vec<Polynomial> {
    gens.iter()
        .map(|(m1, m2, c)| {
            Polynomial::monomial(ctx, Monomial::from_exponents(m1.to_vec()), q(1))
                - Polynomial::monomial(ctx, Monomial::from_exponents(m2.to_vec()), q(*c))
        })
        .collect()
}

fn binomials() -> impl Strategy<Value = Vec<([u32; 3], [u32; 3], i64)>> {
    prop::collection::vec(
        ([0u32..=2, 0u32..=2, 0u32..=2], [0u32..=2, 0u32..=2, 0u32..=2], -2i64..=2),
        1..=3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn groebner_bases_pass_the_audit(g in binomials()) {
        let ctx = ctx3();
        let gens = binomial_ideal(&ctx, &g);
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = Ideal::new(&ctx, gens.clone()).unwrap().groebner(&order);
            let r = audit_groebner_basis(&ctx, &gens, gb.basis(), &order).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn intersection_sits_between_product_and_factors(g in binomials(), h in binomials()) {
        let ctx = ctx3();
        let i = Ideal::new(&ctx, binomial_ideal(&ctx, &g)).unwrap();
        let j = Ideal::new(&ctx, binomial_ideal(&ctx, &h)).unwrap();
        let k = i.intersection(&j).unwrap();
        prop_assert!(i.contains_ideal(&k).unwrap());
        prop_assert!(j.contains_ideal(&k).unwrap());
        prop_assert!(k.contains_ideal(&i.product(&j).unwrap()).unwrap());
    }

    #[test]
    fn dimension_is_monotone(g in binomials(), h in binomials()) {
        let ctx = ctx3();
        let i = Ideal::new(&ctx, binomial_ideal(&ctx, &g)).unwrap();
        let j = i.sum(&Ideal::new(&ctx, binomial_ideal(&ctx, &h)).unwrap()).unwrap();
        prop_assume!(!j.is_unit());
        prop_assert!(i.krull_dimension().unwrap() >= j.krull_dimension().unwrap());
    }

    /// Monomial maps `ℚ[x,y,z] -> ℚ[s,t]`: the kernel vanishes on the
    /// parametrization, exactly and at random points.
    #[test]
    fn kernels_vanish_on_the_parametrization(e in prop::array::uniform3([0u32..=2, 0u32..=2]), pts in prop::collection::vec((-5i64..=5, -5i64..=5), 20)) {
        let src = ctx3();
        let tgt = VariableContext::new(["s", "t"]).unwrap();
        let images: Vec<Polynomial> = e
            .iter()
            .map(|x| Polynomial::monomial(&tgt, Monomial::from_exponents(x.to_vec()), q(1)))
            .collect();
        let h = RingHom::new(RingPresentation::free(&src), RingPresentation::free(&tgt), images.clone()).unwrap();
        let k = h.kernel().unwrap();
        for g in k.generators() {
            prop_assert!(h.apply(g).unwrap().is_zero());
            for (s, t) in &pts {
                let st = point(&[*s, *t]);
                let xyz: Vec<Rational> = images.iter().map(|p| p.eval(&st).unwrap()).collect();
                prop_assert_eq!(g.eval(&xyz).unwrap(), q(0));
            }
        }
    }
}
