use super::*;
use crate::symcore::{qf, Ctx, VariableContext};

fn gens(names: &[&str]) -> (Ctx, Vec<FreePolynomial>) {
    let ctx = VariableContext::new(names.iter().copied()).unwrap();
    let g = (0..names.len()).map(|i| FreePolynomial::generator_index(&ctx, i)).collect();
    (ctx, g)
}

fn conifold_algebra(cap: usize) -> (NCPresentation, Vec<FreePolynomial>) {
    let (ctx, x) = gens(&["xi1", "xi2", "xi3"]);
    let one = FreePolynomial::one(&ctx);
    let rels = vec![
        &(&x[0] * &x[0]) * &x[1] - &(&x[1] * &x[0]) * &x[0],
        &(&x[0] * &x[1]) * &x[1] - &(&x[1] * &x[1]) * &x[0],
        &x[0] * &x[2] + &x[2] * &x[0],
        &x[1] * &x[2] + &x[2] * &x[1],
        &x[2] * &x[2] - &one,
    ];
    (build_rewrite_system(&ctx, rels, cap).unwrap(), x)
}

#[test]
fn words_do_not_commute() {
    let (_, x) = gens(&["a", "b"]);
    assert_ne!(&x[0] * &x[1], &x[1] * &x[0]);
    let p = (&x[0] + &x[1]) * (&x[0] - &x[1]);
    assert_eq!(p.to_string(), "-b^2 + b*a - a*b + a^2");
}

#[test]
fn commutator_of_products() {
    let (_, x) = gens(&["xi1", "xi2", "xi3", "xi4"]);
    let c = (&x[0] * &x[2]).commutator(&(&x[1] * &x[3])).unwrap();
    assert_eq!(c.to_string(), "-xi2*xi4*xi1*xi3 + xi1*xi3*xi2*xi4");
}

#[test]
fn conifold_algebra_rules_are_finite_and_complete() {
    let (p, x) = conifold_algebra(8);
    assert!(p.is_stabilized());
    assert!(p.is_complete());
    let rules: Vec<String> = p.rules().iter().map(ToString::to_string).collect();
    assert_eq!(
        rules,
        vec![
            "xi3*xi1 -> -xi1*xi3",
            "xi3*xi2 -> -xi2*xi3",
            "xi3^2 -> 1",
            "xi2*xi1^2 -> xi1^2*xi2",
            "xi2^2*xi1 -> xi1*xi2^2",
        ]
    );
    let nf = p.normal_form(&(&x[2] * &x[2])).unwrap();
    assert_eq!(nf.value, FreePolynomial::one(p.ctx()));
    assert!(!nf.cap_limited);
}

#[test]
fn conifold_algebra_center_images() {
    let (p, x) = conifold_algebra(8);
    let half = qf(1, 2);
    let sym = (&x[0] * &x[1] + &x[1] * &x[0]).scale(&half);
    let alt = &(&x[0] * &x[1] - &x[1] * &x[0]).scale(&half) * &x[2];
    let t = [&x[0] * &x[0], &x[1] * &x[1], &sym + &alt, &sym - &alt];
    for ti in &t {
        assert!(p.is_central(ti).unwrap());
    }
    assert!(p.is_zero(&(&t[0] * &t[1] - &t[2] * &t[3])).unwrap());
    assert!(!p.is_central(&x[0]).unwrap());
    let c = p.normal_form(&x[0].commutator(&x[2]).unwrap()).unwrap().value;
    assert_eq!(c, (&x[0] * &x[2]).scale(&qf(2, 1)));
}

#[test]
fn commutative_rules_sort_words() {
    let (ctx, x) = gens(&["x", "y"]);
    let p = commutative_presentation(&ctx, 4).unwrap();
    assert_eq!(p.rules().len(), 1);
    assert_eq!(p.rules()[0].to_string(), "y*x -> x*y");
    let f = &(&x[1] * &x[0]) * &x[1];
    assert_eq!(p.normal_form(&f).unwrap().value.to_string(), "x*y^2");
}

#[test]
fn inconsistent_presentation_is_rejected() {
    let (ctx, x) = gens(&["a"]);
    let one = FreePolynomial::one(&ctx);
    let rels = vec![&x[0] - &one, &x[0] * &x[0] - &one.scale(&qf(2, 1))];
    assert!(matches!(
        build_rewrite_system(&ctx, rels, 4),
        Err(crate::AlgebraError::InconsistentPresentation(_))
    ));
}

#[test]
fn degree_budget_is_enforced_for_incomplete_systems() {
    let (ctx, x) = gens(&["a", "b"]);
    // a*b*a - b: infinite rewriting system in deg-lex
    let rels = vec![&(&x[0] * &x[1]) * &x[0] - &x[1] * &x[1]];
    let p = build_rewrite_system(&ctx, rels, 5).unwrap();
    let big = x[0].pow(4);
    if !p.is_complete() {
        assert!(p.normal_form(&big).is_err());
    }
}
