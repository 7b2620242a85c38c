mod common;

use cmpl_core::algebra::{Poly, RatFunc};
use cmpl_core::completions::{InfLaurent, VAdicNumber};
use cmpl_core::polylog::{
    cmpl_eval_inf, cmpl_eval_v, cmspl_eval_inf, cmspl_eval_v, star_residue_inf, star_residue_v,
    CompositionIndex,
};
use cmpl_core::Error;
use common::*;
use proptest::prelude::*;

fn idx(s: &[u32]) -> CompositionIndex {
    CompositionIndex::new(s.to_vec()).unwrap()
}

#[test]
fn depth_one_at_theta_matches_direct_sum() {
    let v = place(&[0, 1]);
    let emb = embedding_k(&v);
    let (_, u) = in_k(&[rat(&[0, 1])]);
    let x = cmpl_eval_v(&idx(&[1]), &u, &emb, 6).unwrap();
    assert_eq!(x.val(), 1);
    assert!(x.prec() >= 6);
    // terms past i = 3 vanish mod θ^12, so the partial sum to 7 is an oracle
    let oracle = naive_partial(&[1], &[rat(&[0, 1])], 7, false);
    assert!(x.agrees_with(&VAdicNumber::from_ratfunc(&v, &oracle, 30)));
    // θ + θ³/(θ - θ³) + ⋯ has unit part 1 + O(θ)
    assert_eq!(x.unit().coeff(0), 1);
}

#[test]
fn star_depth_two_matches_double_sum() {
    let v = place(&[0, 1]);
    let emb = embedding_k(&v);
    let args = [rat(&[0, 1]), rat(&[0, 1])];
    let (_, u) = in_k(&args);
    let x = cmspl_eval_v(&idx(&[1, 1]), &u, &emb, 6).unwrap();
    let oracle = naive_partial(&[1, 1], &args, 6, true);
    assert!(x.agrees_with(&VAdicNumber::from_ratfunc(&v, &oracle, 30)));
    assert!(x.prec() >= 6);
}

#[test]
fn depth_one_star_equals_nonstar() {
    let v = place(&[1, 1]);
    let emb = embedding_k(&v);
    let (_, u) = in_k(&[rat(&[1, 2, 1])]);
    let a = cmpl_eval_v(&idx(&[2]), &u, &emb, 15).unwrap();
    let b = cmspl_eval_v(&idx(&[2]), &u, &emb, 15).unwrap();
    assert!(a.agrees_with(&b));
}

#[test]
fn zero_argument_gives_zero() {
    let v = place(&[0, 1]);
    let emb = embedding_k(&v);
    let (_, u) = in_k(&[rat(&[]), rat(&[1])]);
    assert!(cmpl_eval_v(&idx(&[1, 1]), &u, &emb, 8)
        .unwrap()
        .is_exact_zero());
    let (_, u) = in_k(&[rat(&[0, 1]), rat(&[])]);
    assert!(cmspl_eval_v(&idx(&[1, 1]), &u, &emb, 8)
        .unwrap()
        .is_exact_zero());
    let z = cmpl_eval_inf(&idx(&[1]), &[rat(&[])], -10).unwrap();
    assert!(z.is_zero());
}

#[test]
fn outside_the_disc_is_a_domain_error() {
    let v = place(&[0, 1]);
    let emb = embedding_k(&v);
    let (_, u) = in_k(&[rat(&[1, 1])]);
    assert!(matches!(
        cmpl_eval_v(&idx(&[1]), &u, &emb, 6),
        Err(Error::Domain(_))
    ));
    let inv_theta = RatFunc::new(poly(&[1]), poly(&[0, 1])).unwrap();
    let (_, u) = in_k(&[rat(&[0, 1]), inv_theta]);
    assert!(matches!(
        cmpl_eval_v(&idx(&[1, 1]), &u, &emb, 6),
        Err(Error::Domain(_))
    ));
    // (q-1)·deg u < q·s fails for deg u = 2, s = 1
    assert!(matches!(
        cmpl_eval_inf(&idx(&[1]), &[rat(&[0, 0, 1])], -5),
        Err(Error::Domain(_))
    ));
}

#[test]
fn inf_sum_of_inverse_l() {
    // Σ 1/L_i = 1 + 1/(θ - θ³) + ⋯ = 1 - θ^{-3} - θ^{-5} + ⋯
    let x = cmpl_eval_inf(&idx(&[1]), &[rat(&[1])], -20).unwrap();
    assert_eq!(x.val(), 0);
    assert_eq!(x.coeff(-1), Some(0));
    assert_eq!(x.coeff(-2), Some(0));
    assert_eq!(x.coeff(-3), Some(2));
    let tail = x.sub(&InfLaurent::from_poly(&Poly::one(f3()), -20));
    assert_eq!(tail.val(), -3);
    let oracle = naive_partial(&[1], &[rat(&[1])], 4, false);
    assert!(x.agrees_with(&InfLaurent::from_ratfunc(&oracle, -20)));
}

#[test]
fn inf_weight_two_at_theta() {
    let x = cmpl_eval_inf(&idx(&[2]), &[rat(&[0, 1])], -8).unwrap();
    assert_eq!(x.val(), 1);
    assert_eq!(x.rel_prec(), 10);
    let oracle = naive_partial(&[2], &[rat(&[0, 1])], 4, false);
    assert!(x.agrees_with(&InfLaurent::from_ratfunc(&oracle, -40)));
}

#[test]
fn inf_depth_two_matches_brute_force() {
    let args = [rat(&[1, 1]), rat(&[2])];
    let x = cmpl_eval_inf(&idx(&[1, 2]), &args, -30).unwrap();
    let y = cmspl_eval_inf(&idx(&[1, 2]), &args, -30).unwrap();
    let ox = naive_partial(&[1, 2], &args, 4, false);
    let oy = naive_partial(&[1, 2], &args, 4, true);
    assert!(x.agrees_with(&InfLaurent::from_ratfunc(&ox, -30)));
    assert!(y.agrees_with(&InfLaurent::from_ratfunc(&oy, -30)));
}

#[test]
fn doubling_precision_keeps_digits() {
    let v = place(&[1, 0, 1]);
    let emb = embedding_k(&v);
    let args = [rat(&[1, 0, 1]), rat(&[0, 1]), rat(&[2, 1])];
    let (_, u) = in_k(&args);
    let s = idx(&[2, 1, 1]);
    let lo = cmpl_eval_v(&s, &u, &emb, 10).unwrap();
    let hi = cmpl_eval_v(&s, &u, &emb, 20).unwrap();
    assert!(lo.agrees_with(&hi));
    let at_inf = [rat(&[0, 1]), rat(&[1, 1]), rat(&[2])];
    let lo = cmspl_eval_inf(&s, &at_inf, -15).unwrap();
    let hi = cmspl_eval_inf(&s, &at_inf, -30).unwrap();
    assert!(lo.agrees_with(&hi));
}

#[test]
fn star_identity_depth_two_and_three() {
    let v = place(&[0, 1]);
    let emb = embedding_k(&v);
    let (_, u) = in_k(&[rat(&[0, 1]), rat(&[0, 2, 1]), rat(&[0, 0, 1])]);
    for r in 1..=3 {
        let s = idx(&[1, 2, 1][..r]);
        let res = star_residue_v(&s, &u[..r], &emb, 20).unwrap();
        assert!(res.vanishes_to(20), "{res:?}");
    }
    let args = [rat(&[1, 1]), rat(&[0, 0, 1]), rat(&[2])];
    let res = star_residue_inf(&idx(&[1, 2, 1]), &args, -20).unwrap();
    assert!(res.is_zero() && res.prec() <= -20);
}

fn small_poly(c: Vec<i64>) -> Poly {
    poly(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn star_identity_v(
        s in prop::collection::vec(1u32..=2, 1..=3),
        cs in prop::collection::vec(prop::collection::vec(0i64..3, 1..=3), 3),
        at_one in any::<bool>(),
    ) {
        let v = if at_one { place(&[1, 1]) } else { place(&[0, 1]) };
        let emb = embedding_k(&v);
        let r = s.len();
        // a nonzero multiple of v lies in the open disc
        let args: Vec<RatFunc> = cs[..r]
            .iter()
            .map(|c| {
                let p = small_poly(c.clone());
                let p = if p.is_zero() { Poly::one(f3()) } else { p };
                RatFunc::from_poly(p.mul(v.v()))
            })
            .collect();
        let (_, u) = in_k(&args);
        let res = star_residue_v(&idx(&s), &u, &emb, 20).unwrap();
        prop_assert!(res.vanishes_to(20));
    }

    #[test]
    fn star_identity_inf(
        s in prop::collection::vec(1u32..=2, 1..=3),
        cs in prop::collection::vec(prop::collection::vec(0i64..3, 1..=3), 3),
    ) {
        let r = s.len();
        // (q-1)·deg u < q·s: degree ≤ 1 for s = 1, ≤ 2 for s = 2
        let args: Vec<RatFunc> = cs[..r]
            .iter()
            .zip(&s)
            .map(|(c, &sj)| {
                let mut c = c.clone();
                c.truncate(sj as usize + 1);
                let p = small_poly(c);
                RatFunc::from_poly(if p.is_zero() { Poly::one(f3()) } else { p })
            })
            .collect();
        let res = star_residue_inf(&idx(&s), &args, -20).unwrap();
        prop_assert!(res.is_zero() && res.prec() <= -20);
    }
}
