use azp_core::freealg::{commutative_presentation, nc_normal_form, FreePolynomial, NCPresentation, Word};
use azp_core::ncres::lambda_c;
use azp_core::symcore::{q, Ctx, VariableContext};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

type Terms = Vec<(Vec<usize>, i64)>;

fn terms(letters: usize, max_len: usize, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..letters, 0..=max_len), -4i64..=4), 0..=max_terms)
}

fn poly(ctx: &Ctx, t: &Terms) -> FreePolynomial {
    FreePolynomial::from_terms(ctx, t.iter().map(|(w, c)| (Word::from_letters(w.clone()), q(*c))))
}

fn check_nf_laws(p: &NCPresentation, f: &FreePolynomial, g: &FreePolynomial, a: i64, b: i64) -> Result<(), TestCaseError> {
    let nf = |x: &FreePolynomial| p.normal_form(x).unwrap().value;
    let nff = nf(f);
    prop_assert_eq!(nf(&nff), nff.clone());
    let lin = nf(&(&f.scale(&q(a)) + &g.scale(&q(b))));
    prop_assert_eq!(lin, &nff.scale(&q(a)) + &nf(g).scale(&q(b)));
    prop_assert_eq!(nf(&(f * g)), nf(&(&nff * &nf(g))));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conifold_algebra_normal_forms_are_idempotent_and_linear(
        f in terms(3, 3, 4), g in terms(3, 3, 4), a in -3i64..=3, b in -3i64..=3
    ) {
        let p = lambda_c(8).unwrap();
        let (f, g) = (poly(p.ctx(), &f), poly(p.ctx(), &g));
        check_nf_laws(&p, &f, &g, a, b)?;
    }

    #[test]
    fn commutative_normal_forms_are_idempotent_and_linear(
        f in terms(3, 3, 4), g in terms(3, 3, 4), a in -3i64..=3, b in -3i64..=3
    ) {
        let ctx = VariableContext::new(["x", "y", "z"]).unwrap();
        let p = commutative_presentation(&ctx, 8).unwrap();
        check_nf_laws(&p, &poly(&ctx, &f), &poly(&ctx, &g), a, b)?;
    }
}

/// With all commutators as relations, normal forms are the sorted words:
/// the same as normalizing in the polynomial ring.
#[test]
fn commutative_presentation_matches_polynomial_normalization() {
    let ctx = VariableContext::new(["x", "y", "z"]).unwrap();
    let p = commutative_presentation(&ctx, 8).unwrap();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = terms(3, 5, 6);
    for _ in 0..50 {
        let t = strategy.new_tree(&mut runner).unwrap().current();
        let f = poly(&ctx, &t);
        let nf = nc_normal_form(&f, &p).unwrap();
        assert!(!nf.cap_limited);
        assert_eq!(nf.value, FreePolynomial::from_commutative(&f.abelianize()), "{f}");
        assert_eq!(nf.value.abelianize(), f.abelianize());
    }
}

#[test]
fn conifold_algebra_relations_reduce_to_zero() {
    let p = lambda_c(8).unwrap();
    for r in p.relations() {
        assert!(p.is_zero(r).unwrap(), "{r}");
    }
}

/// `ξ3² -> 1` and anticommutation push every `ξ3` to the right and cancel
/// pairs, so no normal word has two.
#[test]
fn normal_words_carry_at_most_one_xi3() {
    let p = lambda_c(8).unwrap();
    let mut total = 0;
    for d in 0..=6 {
        for w in p.normal_words(d) {
            assert!(w.letters().iter().filter(|&&l| l == 2).count() <= 1, "{}", w.format(p.ctx()));
            total += 1;
        }
    }
    assert!(total > 0);
}
