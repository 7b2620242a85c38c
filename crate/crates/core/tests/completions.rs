mod common;

use cmpl_core::algebra::{ExtElem, Poly, RatFunc};
use cmpl_core::completions::hensel::hensel_root;
use cmpl_core::completions::{hensel_lift, rational_reconstruct, InfLaurent, VAdicNumber};
use common::*;
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..3, 0..=max_len)
}

fn nonzero(max_len: usize) -> impl Strategy<Value = Poly> {
    coeffs(max_len).prop_map(|c| {
        let p = poly(&c);
        if p.is_zero() {
            poly(&[1])
        } else {
            p
        }
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (coeffs(5), nonzero(4)).prop_map(|(n, d)| RatFunc::new(poly(&n), d).unwrap())
}

fn v_of(which: u8) -> Vec<i64> {
    match which % 3 {
        0 => vec![0, 1],
        1 => vec![1, 1],
        _ => vec![1, 0, 1],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn absolute_value_is_multiplicative_and_ultrametric(a in ratfunc(), b in ratfunc(), w in 0u8..3) {
        let v = place(&v_of(w));
        let (x, y) = (VAdicNumber::from_ratfunc(&v, &a, 12), VAdicNumber::from_ratfunc(&v, &b, 12));
        let xy = x.mul(&y);
        let s = x.add(&y);
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(xy.val(), x.val() + y.val());
            prop_assert!(xy.agrees_with(&VAdicNumber::from_ratfunc(&v, &a.mul(&b), 12)));
        }
        if !s.is_zero() {
            prop_assert!(s.val() >= x.val().min(y.val()));
        }
        prop_assert!(s.agrees_with(&VAdicNumber::from_ratfunc(&v, &a.add(&b), 12)));
    }

    #[test]
    fn embedding_is_a_ring_map(a in ratfunc(), b in ratfunc(), c in ratfunc(), d in ratfunc()) {
        let (k, _, emb, x) = lambda_setup();
        let p = ExtElem::from_rat(&k, a).add(&x.scale(&b));
        let q = ExtElem::from_rat(&k, c).add(&x.scale(&d));
        let n = 10;
        let (ep, eq) = (emb.embed(&p, n).unwrap(), emb.embed(&q, n).unwrap());
        prop_assert!(emb.embed(&p.mul(&q), n).unwrap().agrees_with(&ep.mul(&eq)));
        prop_assert!(emb.embed(&p.add(&q), n).unwrap().agrees_with(&ep.add(&eq)));
    }

    #[test]
    fn reconstruction_inverts_expansion(n in coeffs(4), d in nonzero(4)) {
        let x = RatFunc::new(poly(&n), d.clone()).unwrap();
        let h = x.num().deg().max(x.den().deg()).max(0) as u32;
        let top = x.degree().unwrap_or(0).max(0);
        let prec = -(2 * h as i64 + 1) - 1;
        let known = InfLaurent::from_ratfunc(&x, prec.min(top - 2 * h as i64 - 2));
        prop_assert_eq!(rational_reconstruct(&known, h).unwrap(), Some(x));
    }

    #[test]
    fn random_series_have_no_small_height_form(c in prop::collection::vec(0u32..3, 40)) {
        prop_assume!(c[0] != 0);
        let x = InfLaurent::new(f3(), 0, c, -39);
        prop_assert_eq!(rational_reconstruct(&x, 3).unwrap(), None);
    }
}

#[test]
fn hensel_roots_are_roots_to_the_requested_order() {
    // x² - 2θ at v = θ + 1, and x² - θ at v = θ² + 1
    for (m, v) in [
        (vec![rat(&[0, -2]), rat(&[]), rat(&[1])], place(&[1, 1])),
        (vec![rat(&[0, -1]), rat(&[]), rat(&[1])], place(&[1, 0, 1])),
    ] {
        for n in [1, 5, 17] {
            let r = hensel_root(&m, &v, None, n).unwrap();
            let value = m.iter().rev().fold(rat(&[]), |acc, c| {
                acc.mul(&RatFunc::from_poly(r.clone())).add(c)
            });
            assert!(value.ord(v.v()).unwrap_or(i64::MAX) >= n as i64, "n = {n}");
            let lifted = hensel_lift(&m, &v, None, n).unwrap();
            assert!(lifted.agrees_with(&VAdicNumber::from_poly(&v, &r, n)));
        }
    }
}
