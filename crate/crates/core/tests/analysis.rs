mod common;

use cdgacalc_core::analysis::{
    character_euler, cohomology_euler, invariant_cohomology, nonvanishing_degree_bound, p_r_closed_form,
    poincare_series_u, r1_stable_series, rho_bracket, rho_series, sign_isotypic_cohomology, weightwise_euler,
    BigradedSeries, ClassFunction, Variable,
};
use cdgacalc_core::models::{euler_class_twist, presets, ChernData, Permutation};
use cdgacalc_core::CohomologyTable;
use common::{a_r, base, c_r, q};

fn euler_of(table: &CohomologyTable, w_max: usize) -> BigradedSeries {
    let mut out = BigradedSeries::zero(Variable::W, w_max);
    for (i, w, dim) in table.entries() {
        let w = w.unwrap() as usize;
        if w <= w_max {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.set(w, out.coeff(w) + sign * dim as i64);
        }
    }
    out
}

#[test]
fn poincare_series_in_degree() {
    // P(t) for P²: shifted classes of H^{<4} in degrees 1 and 3
    assert_eq!(poincare_series_u(&base("P2"), 8, Variable::T).coeffs(), &[1, 1, 0, 1, 1, 0, 0, 0, 0]);
    // P¹×P¹: generators in degrees 1, 3, 3
    assert_eq!(poincare_series_u(&base("P1xP1"), 6, Variable::T).coeffs(), &[1, 1, 0, 2, 2, 0, 1]);
}

#[test]
fn weightwise_euler_of_h_star() {
    let c1 = c_r("P1", 1);
    assert_eq!(weightwise_euler(&c1, 6).unwrap().coeffs(), &[1, 0, 1, 0, 0, 0, 0]);
}

#[test]
fn closed_form_at_r_zero_is_p_u() {
    for s in ["P1", "P2", "S1"] {
        let b = base(s);
        assert_eq!(p_r_closed_form(&b, 0, 10).unwrap(), poincare_series_u(&b, 10, Variable::W));
    }
}

#[test]
fn closed_form_matches_slices() {
    for (s, r) in [("P1", 1), ("P1", 2), ("P1", 3), ("P2", 1), ("P2", 2), ("P2", 3), ("S1", 2)] {
        let closed = p_r_closed_form(&base(s), r, 12).unwrap();
        assert_eq!(weightwise_euler(&a_r(s, "1", r), 12).unwrap(), closed, "{s}, r = {r}");
    }
}

#[test]
fn configuration_euler_characteristic_polynomial() {
    for s in ["P1", "P2"] {
        let chi = base(s).euler_characteristic();
        for r in 1..=3 {
            let series = weightwise_euler(&c_r(s, r), 24).unwrap();
            // the top weight of C_r(X) is well below the truncation
            assert!(series.coeffs()[20..].iter().all(|&c| c == 0));
            let want: i64 = (0..r as i64).map(|j| chi - j).product();
            assert_eq!(series.value_at_one(), want, "{s}, r = {r}");
        }
    }
}

#[test]
fn rho_examples() {
    assert_eq!(rho_bracket(&base("S1"), 6).coeffs(), &[1, 2, 2, 1, 0, 0, 0]);
    assert!(rho_series(&base("P2"), 12).is_zero());
    for s in ["P1", "P2", "P3", "S1", "S2", "P1xP1"] {
        let rho = rho_series(&base(s), 12);
        assert!(rho.coeffs().iter().all(|&c| c >= 0), "{s}: {rho}");
    }
}

#[test]
fn one_point_series_matches_engine() {
    for (s, cs) in [("P1", ["1", "3"]), ("P2", ["1", "-3"]), ("S1", ["1", "2"]), ("P1xP1", ["[1:1]", "[2:3]"])] {
        let series = r1_stable_series(&base(s), 10).unwrap();
        let want: Vec<usize> = series.coeffs().iter().map(|&c| c as usize).collect();
        for c in cs {
            assert_eq!(a_r(s, c, 1).cohomology(10, false).totals(), want, "{s}, c = {c}");
        }
    }
}

#[test]
fn one_point_series_for_p2() {
    // (1 + t²)(1 + t)(1 + t³)(1 + t⁵)
    assert_eq!(r1_stable_series(&base("P2"), 11).unwrap().coeffs(), &[1, 1, 1, 2, 1, 2, 2, 1, 2, 1, 1, 1]);
}

#[test]
fn curves_have_nonzero_twist_past_the_bound() {
    for (b, chern) in [(base("P1"), presets::projective_space_chern(1)), (base("S2"), presets::surface_chern(2))] {
        let d0 = nonvanishing_degree_bound(b.euler_characteristic()) as i64;
        let point = b.indices_in_degree(2)[0];
        let chern = ChernData::new(&b, chern, b.basis_vector(point)).unwrap();
        for d in d0..d0 + 6 {
            let (_, m) = euler_class_twist(&b, &chern, d);
            assert_eq!(m, q(d - b.euler_characteristic()));
            assert!(!m.is_zero());
        }
    }
}

#[test]
fn trivial_subgroup_gives_plain_cohomology() {
    let e = a_r("P2", "1", 2);
    let t = invariant_cohomology(&e, &[Permutation::identity(2)], 8, true).unwrap();
    let plain = e.cohomology(8, true);
    assert_eq!(t.entries().collect::<Vec<_>>(), plain.entries().collect::<Vec<_>>());
}

#[test]
fn invariants_of_unordered_pairs_in_p1() {
    // B₂(S²) ≃_Q RP², so H*(F²(P¹))^{S₂} is Q in degree 0 only
    let t = invariant_cohomology(&c_r("P1", 2), &Permutation::all(2), 6, false).unwrap();
    assert_eq!(t.totals(), vec![1, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn isotypic_parts_add_up() {
    let e = a_r("P1", "1", 2);
    let g = Permutation::all(2);
    let inv = invariant_cohomology(&e, &g, 10, false).unwrap().totals();
    let sgn = sign_isotypic_cohomology(&e, &g, 10, false).unwrap().totals();
    let full = e.cohomology(10, false).totals();
    assert_eq!(full, vec![1, 2, 2, 3, 4, 4, 4, 4, 4, 4, 4]);
    for i in 0..=10 {
        assert!(inv[i] <= full[i]);
        assert_eq!(inv[i] + sgn[i], full[i]);
    }
}

#[test]
fn character_euler_consistency() {
    for (s, r, w) in [("P1", 2, 10), ("P2", 2, 10), ("P1", 3, 8)] {
        let e = a_r(s, "1", r);
        let all = Permutation::all(r);
        let triv = character_euler(&e, &ClassFunction::trivial(r), w).unwrap();
        let inv = invariant_cohomology(&e, &all, w as u32, true).unwrap();
        assert_eq!(triv, euler_of(&inv, w), "{s}, r = {r}");
        let sign = character_euler(&e, &ClassFunction::sign(r), w).unwrap();
        let sgn = sign_isotypic_cohomology(&e, &all, w as u32, true).unwrap();
        assert_eq!(sign, euler_of(&sgn, w), "{s}, r = {r}");
        let whole = weightwise_euler(&e, w).unwrap();
        assert_eq!(character_euler(&e, &ClassFunction::regular(r), w).unwrap(), whole);
        if r == 2 {
            assert_eq!(&triv + &sign, whole);
        }
        assert_eq!(whole, cohomology_euler(&e, w).unwrap());
    }
}

#[test]
fn character_euler_rejects_wrong_group() {
    let e = a_r("P1", "1", 2);
    assert!(character_euler(&e, &ClassFunction::trivial(3), 4).is_err());
    assert!(character_euler(&c_r("P1", 1), &ClassFunction::trivial(1), 4).is_ok());
}
