mod common;

use std::sync::Arc;

use cdgacalc_core::algebra::{Context, Element, GeneratorSpec};
use cdgacalc_core::analysis::{cohomology_euler, weightwise_euler};
use cdgacalc_core::cdga::{Engine, ModelMeta, Presentation, VerifyFailure};
use cdgacalc_core::linalg::{rank, Rational};
use common::{a_r, base, brute_force_cohomology, c_r, q, random_presentation, total_free_dim};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(ctx: &Context, terms: &[(&str, i64)], generator: Option<usize>) -> Element {
    let mut e = Element::zero();
    for (label, c) in terms {
        let b = ctx.base().index_of(label).unwrap();
        let mut m = ctx.base_basis_element(b);
        if let Some(g) = generator {
            m = ctx.mul(&m, &ctx.generator(g));
        }
        e.add_scaled(&m, &q(*c));
    }
    e
}

#[test]
fn no_relations_means_empty_ideal() {
    let e = a_r("P2", "1", 1);
    assert!(e.presentation().relations().is_empty());
    for d in 0..6 {
        assert_eq!(e.ideal_slice(d, None).spanning.nrows(), 0);
        assert_eq!(e.quotient_slice(d, None).ideal_rank, 0);
    }
}

#[test]
fn ideal_slices_of_c2_p1() {
    let e = c_r("P1", 2);
    let s3 = e.ideal_slice(3, None);
    assert_eq!(s3.monomials.len(), 2);
    assert_eq!(rank(&s3.spanning), 1);
    assert_eq!(rank(&e.ideal_slice(2, None).spanning), 0);
    let q3 = e.quotient_slice(3, None);
    assert_eq!((q3.free_dim, q3.ideal_rank, q3.dim()), (2, 1, 1));
}

#[test]
fn quotient_slice_examples() {
    for e in [c_r("P1", 2), c_r("P2", 3), a_r("P2", "1", 2), a_r("S1", "1", 2)] {
        assert_eq!(e.quotient_slice(0, None).dim(), 1);
    }
    let e = a_r("P2", "1", 2);
    let s = e.quotient_slice(1, None);
    assert_eq!(s.dim(), 1);
    assert_eq!(e.context().format_monomial(&s.basis()[0]), "s1");
}

#[test]
fn normal_form_is_a_projector_killing_the_ideal() {
    let e = c_r("P2", 3);
    for d in 0..9 {
        let slice = e.quotient_slice(d, None);
        for (j, m) in slice.basis().iter().enumerate() {
            let nf = e.normal_form(&Element::from_monomial(m.clone(), Rational::ONE), &slice).unwrap();
            assert_eq!(nf, vec![(j, Rational::ONE)]);
        }
        let ideal = e.ideal_slice(d, None);
        for row in ideal.spanning.rows() {
            let el = Element::from_terms(row.iter().map(|(c, v)| (ideal.monomials[*c].clone(), v.clone())));
            assert!(e.normal_form(&el, &slice).unwrap().is_empty());
        }
    }
}

#[test]
fn differential_examples() {
    let e = c_r("P1", 2);
    assert!(e.differential_matrix(0, None).is_zero());
    assert_eq!(e.differential_rank(1, None), 1);
    let image = e.differential_images(1, None)[0].clone();
    let target = e.quotient_slice(2, None);
    let ctx = e.context();
    assert_eq!(e.element_of(&target, &image), element(ctx, &[("1⊗x", 1), ("x⊗1", 1)], None));

    let a1 = a_r("P1", "1", 1);
    let alpha = a1.context().generator_index("α1").unwrap();
    assert_eq!(a1.presentation().differential()[alpha], a1.context().base_basis_element(1));
    let src = a1.quotient_slice(1, None);
    let col = src.index_of(&a1.context().generator_monomial(alpha)).unwrap();
    let d = a1.differential_matrix(1, None);
    assert_eq!(d.transpose().row(col).len(), 1);
}

#[test]
fn verify_examples() {
    assert!(c_r("P1", 2).verify(6).passed());
    let report = a_r("P1xP1", "[1:1]", 2).verify(11);
    assert!(report.passed(), "{:?}", report.failure);
    assert!(report.slices_checked > 0 && report.relations_checked > 0);
}

#[test]
fn wrong_diagonal_is_caught() {
    let b = Arc::new(base("P1").tensor_power(2));
    let ctx = Arc::new(Context::new(b, vec![GeneratorSpec::new("G12", 1, 2)]).unwrap());
    let relation = element(&ctx, &[("x⊗1", 1), ("1⊗x", -1)], Some(0));
    let wrong = element(&ctx, &[("x⊗1", 1)], None);
    let p = Presentation::new(ctx.clone(), vec![relation.clone()], vec![wrong], ModelMeta::default()).unwrap();
    let e = Engine::new(Arc::new(p));
    match e.verify(6).failure {
        Some(VerifyFailure::IdealNotPreserved { relation: r, .. }) => assert_eq!(r, ctx.format_element(&relation)),
        other => panic!("expected an ideal failure, got {other:?}"),
    }
    assert!(e.cohomology_checked(4, false).is_err());
}

#[test]
fn weight_splitting_on_models() {
    for e in [a_r("P2", "1", 2), a_r("P1xP1", "[1:0]", 2), c_r("P2", 3)] {
        let split = e.cohomology(9, true);
        let whole = e.cohomology(9, false);
        assert_eq!(split.totals(), whole.totals());
        for i in 0..=9 {
            let by_w: usize = split.weights(i).iter().map(|(_, d)| d).sum();
            assert_eq!(by_w, whole.total(i));
        }
    }
}

#[test]
fn euler_characteristic_ignores_the_differential() {
    for e in [a_r("P1", "1", 2), a_r("P2", "-2", 2), c_r("P2", 3)] {
        assert_eq!(weightwise_euler(&e, 10).unwrap(), cohomology_euler(&e, 10).unwrap());
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let e = a_r("P2", "1", 3);
            let t = e.cohomology(8, true);
            (t.clone(), serde_json::to_string(&t).unwrap())
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}

fn engine_for(seed: u64) -> Option<(Presentation, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_presentation(&mut rng);
    let max = (1..7).rev().find(|&m| total_free_dim(&p, m + 1) <= 50)?;
    Some((p, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_presentations_agree_with_dense_oracle(seed in any::<u64>()) {
        let Some((p, max)) = engine_for(seed) else { return Ok(()) };
        let want = brute_force_cohomology(&p, max);
        let e = Engine::new(Arc::new(p));
        prop_assert!(e.verify(max).passed());
        prop_assert_eq!(e.cohomology(max, false).totals(), want);
    }

    #[test]
    fn random_presentations_respect_weights(seed in any::<u64>()) {
        let Some((p, max)) = engine_for(seed) else { return Ok(()) };
        let e = Engine::new(Arc::new(p));
        let ctx = e.context().clone();
        for d in 0..max {
            let (src, tgt) = (e.quotient_slice(d, None), e.quotient_slice(d + 1, None));
            for (i, j, _) in e.differential_matrix(d, None).entries() {
                prop_assert_eq!(ctx.weight(&tgt.basis()[i]), ctx.weight(&src.basis()[j]));
            }
        }
        prop_assert_eq!(e.cohomology(max, true).totals(), e.cohomology(max, false).totals());
        let w = max as usize;
        let slices = weightwise_euler(&e, w).unwrap();
        let coh = cohomology_euler(&e, w).unwrap();
        prop_assert_eq!(slices, coh);
    }
}
