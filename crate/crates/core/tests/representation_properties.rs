use azp_core::ncres::{
    canonical_form, check_representation, git_chart_check, random_gl2, rho_tau, stable_membership, tangent_dimension,
    torus_act, FormTag, LambdaRep, QuiverPoint, Theta,
};
use azp_core::symcore::rational::{random_nonzero_rational, random_rational};
use azp_core::symcore::{q, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng) -> QuiverPoint {
    QuiverPoint(std::array::from_fn(|_| random_rational(rng, 6, 3)))
}

#[test]
fn canonical_form_recovers_invariants_after_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let g = random_gl2(&mut rng);
        let rho = p.to_rep().conjugate_by(&g).unwrap();
        assert!(check_representation(&rho).unwrap());
        let cf = canonical_form(&rho).unwrap();
        let FormTag::Form3(r) = &cf.tag else { panic!("expected form 3 for {rho}") };
        assert_eq!(r.invariants(), p.invariants());
        assert_eq!(rho.conjugate_by(&cf.g).unwrap(), r.to_rep());
    }
}

#[test]
fn forms_one_and_two_survive_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let g = random_gl2(&mut rng);
    for (rho, tag) in [(LambdaRep::form1(), FormTag::Form1), (LambdaRep::form2(), FormTag::Form2)] {
        assert_eq!(canonical_form(&rho.conjugate_by(&g).unwrap()).unwrap().tag, tag);
    }
}

/// The three forms are told apart by the trace of `ξ3` (2, −2, 0), so no
/// representation is of two forms.
#[test]
fn forms_are_disjoint() {
    let traces: Vec<Rational> = [LambdaRep::form1(), LambdaRep::form2(), QuiverPoint::from_ints([1, 2, 3, 4]).to_rep()]
        .iter()
        .map(|r| r.0[2].trace())
        .collect();
    assert_eq!(traces, vec![q(2), q(-2), q(0)]);
}

#[test]
fn tangent_dimension_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let rho = random_point(&mut rng).to_rep();
        let g = random_gl2(&mut rng);
        let d = tangent_dimension(&rho).unwrap();
        assert_eq!(d, tangent_dimension(&rho.conjugate_by(&g).unwrap()).unwrap());
    }
}

#[test]
fn rho_tau_images_are_scalar_on_the_conifold() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..20 {
        let rho = random_point(&mut rng).to_rep().conjugate_by(&random_gl2(&mut rng)).unwrap();
        let s: Vec<Rational> = rho_tau(&rho)
            .unwrap()
            .iter()
            .map(|m| m.as_scalar().expect("scalar image"))
            .collect();
        assert_eq!(&s[0] * &s[1], &s[2] * &s[3]);
    }
}

#[test]
fn torus_action_is_a_group_action_preserving_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let s: [Rational; 2] = std::array::from_fn(|_| random_nonzero_rational(&mut rng, 5, 3));
        let t: [Rational; 2] = std::array::from_fn(|_| random_nonzero_rational(&mut rng, 5, 3));
        let st = torus_act(&(&s[0] * &t[0]), &(&s[1] * &t[1]), &p).unwrap();
        let composed = torus_act(&s[0], &s[1], &torus_act(&t[0], &t[1], &p).unwrap()).unwrap();
        assert_eq!(st, composed);
        assert_eq!(st.invariants(), p.invariants());
        for theta in [Theta::Plus, Theta::Minus] {
            assert_eq!(stable_membership(&st, theta), stable_membership(&p, theta));
        }
    }
}

#[test]
fn stable_loci_truth_table() {
    let table = [
        ([1, 0, 0, 0], false, true),
        ([0, 1, 0, 1], true, false),
        ([0, 0, 0, 0], false, false),
        ([0, 0, 0, 3], true, false),
        ([0, 0, 2, 0], false, true),
        ([1, 1, 1, 1], true, true),
    ];
    for (p, plus, minus) in table {
        let p = QuiverPoint::from_ints(p);
        assert_eq!(stable_membership(&p, Theta::Plus), plus, "{p}");
        assert_eq!(stable_membership(&p, Theta::Minus), minus, "{p}");
    }
}

#[test]
fn git_chart_samples_match_the_small_resolution_charts() {
    for theta in [Theta::Plus, Theta::Minus] {
        let r = git_chart_check(theta, 20, 7).unwrap();
        assert_eq!(r.samples.len(), 20);
        assert!(r.passed());
        for s in &r.samples {
            assert!(stable_membership(&s.point, theta));
        }
    }
}
