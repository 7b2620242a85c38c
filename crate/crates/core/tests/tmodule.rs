mod common;

use cmpl_core::algebra::{FactoredRat, Matrix, Poly, RatFunc, TauMatrixPoly};
use cmpl_core::polylog::{CompositionIndex, LSequence};
use cmpl_core::tmodule::{build_tmodule, closed_form_corner, TModuleSpec};
use common::*;
use proptest::prelude::*;

fn idx(s: &[u32]) -> CompositionIndex {
    CompositionIndex::new(s.to_vec()).unwrap()
}

fn fr(c: &[i64]) -> FactoredRat {
    FactoredRat::from_poly(poly(c))
}

fn module(s: &[u32], u: &[&[i64]]) -> TModuleSpec<FactoredRat> {
    let u: Vec<FactoredRat> = u.iter().map(|c| fr(c)).collect();
    build_tmodule(&idx(s), &u, &f3()).unwrap()
}

#[test]
fn carlitz_tensor_power_shape() {
    let g = module(&[3], &[&[0, 1]]);
    let rt = g.rho_t();
    assert_eq!(rt.degree(), Some(1));
    let e = &rt.coeffs()[1];
    for i in 0..3 {
        for j in 0..3 {
            let want = if (i, j) == (2, 0) { 1 } else { 0 };
            assert_eq!(e.get(i, j), &fr(&[want]));
            let d = rt.coeffs()[0].get(i, j);
            let want = if i == j {
                fr(&[0, 1])
            } else if j == i + 1 {
                fr(&[1])
            } else {
                fr(&[])
            };
            assert_eq!(d, &want);
        }
    }
}

#[test]
fn depth_three_corner_entries() {
    let g = module(&[1, 1, 1], &[&[0, 1], &[1, 1], &[2, 1]]);
    let e = g.e();
    // rows 2, 4, 5 (0-based) carry the corners; columns 0, 3, 5 start the blocks
    assert_eq!(e.get(2, 3), &fr(&[0, 1]).neg());
    assert_eq!(e.get(2, 5), &fr(&[0, 1]).mul(&fr(&[1, 1])));
    assert_eq!(e.get(4, 5), &fr(&[1, 1]).neg());
    assert_eq!(e.get(4, 0), &fr(&[]));
}

#[test]
fn carlitz_log_and_exp() {
    let g = module(&[1], &[&[1]]);
    let ls = LSequence::new(f3());
    let p = g.log_coeffs(8).unwrap();
    let q = g.exp_coeffs(8).unwrap();
    for i in 0..=8 {
        let li = RatFunc::new(poly(&[1]), ls.l(i)).unwrap();
        let di = RatFunc::new(poly(&[1]), ls.d(i)).unwrap();
        assert_eq!(p[i].get(0, 0).to_ratfunc(), li);
        assert_eq!(q[i].get(0, 0).to_ratfunc(), di);
    }
}

#[test]
fn rho_t_squared_for_carlitz() {
    let g = module(&[1], &[&[1]]);
    let t2 = g.rho_a(&poly(&[0, 0, 1])).unwrap();
    let c = t2.coeffs();
    assert_eq!(c[0].get(0, 0), &fr(&[0, 0, 1]));
    assert_eq!(c[1].get(0, 0), &fr(&[0, 1, 0, 1]));
    assert_eq!(c[2].get(0, 0), &fr(&[1]));
}

#[test]
fn partial_is_a_ring_map() {
    let g = module(&[2, 1], &[&[0, 1], &[1, 1]]);
    let a = poly(&[1, 1]);
    let d = g.partial_rho_a(&a).unwrap();
    assert_eq!(&d, &g.rho_a(&a).unwrap().partial());
    // ∂ρ_{t+1} = (θ+1)I + N
    let want = g
        .n()
        .add(&Matrix::identity(&f3(), g.dim()).scale(&fr(&[1, 1])))
        .unwrap();
    assert_eq!(d, want);
}

#[test]
fn nilpotency_of_n() {
    let g = module(&[2, 2], &[&[0, 1], &[1, 1]]);
    let n = g.n();
    let mut p = n.clone();
    for _ in 1..4 {
        p = p.mul(n).unwrap();
    }
    assert!(p.is_zero());
    let d1 = g.index().d(1);
    let mut p = Matrix::identity(&f3(), g.dim());
    for _ in 0..d1 - 1 {
        p = p.mul(n).unwrap();
    }
    assert!(!p.is_zero());
}

#[test]
fn closed_forms_small() {
    let g = module(&[1, 1], &[&[0, 1], &[1, 1]]);
    let p = g.log_coeffs(4).unwrap();
    let u = g.u().to_vec();
    for (i, pi) in p.iter().enumerate() {
        for l in 1..=2 {
            for m in l..=2 {
                let want = closed_form_corner(g.index(), &u, &f3(), i, l, m).unwrap();
                assert_eq!(g.corner(pi, l, m), &want, "i={i} l={l} m={m}");
            }
        }
    }
    // y_1[12] = -u_1/L_1
    let l1 = FactoredRat::from_poly(poly(&[0, 1]).sub(&poly(&[0, 0, 0, 1])));
    let want = fr(&[0, 1]).neg().mul(&l1.inv().unwrap());
    assert_eq!(g.corner(&p[1], 1, 2), &want);
}

#[test]
fn log_exp_inverse() {
    let g = module(&[1, 2], &[&[0, 1], &[1, 1]]);
    let p = g.log_coeffs(8).unwrap();
    let q = g.exp_coeffs(8).unwrap();
    for k in 1..=8 {
        let mut a = Matrix::zero(&f3(), g.dim(), g.dim());
        let mut b = a.clone();
        for i in 0..=k {
            a = a
                .add(&p[i].mul(&q[k - i].frobenius(i as u32)).unwrap())
                .unwrap();
            b = b
                .add(&q[i].mul(&p[k - i].frobenius(i as u32)).unwrap())
                .unwrap();
        }
        assert!(a.is_zero() && b.is_zero(), "k = {k}");
    }
}

#[test]
fn functional_equation_of_exp() {
    let g = module(&[1, 1], &[&[0, 1], &[2]]);
    let q = g.exp_coeffs(5).unwrap();
    let exp = TauMatrixPoly::new(&f3(), 3, q).unwrap();
    let lhs = exp
        .mul(&TauMatrixPoly::constant(g.rho_t().partial(), &f3()))
        .unwrap();
    let rhs = g.rho_t().mul(&exp).unwrap();
    let diff = lhs
        .add(
            &rhs.scale_matrix(&Matrix::identity(&f3(), 3).scale(&fr(&[-1])))
                .unwrap(),
        )
        .unwrap();
    for (i, c) in diff.coeffs().iter().enumerate().take(6) {
        assert!(c.is_zero(), "τ^{i}");
    }
}

#[test]
fn lower_blocks_vanish() {
    let g = module(&[2, 1, 1], &[&[1, 1], &[0, 1], &[2, 1]]);
    let p = g.log_coeffs(4).unwrap();
    for pi in &p[1..] {
        for l in 1..=3 {
            for m in 1..l {
                assert!(g.block(pi, l, m).is_zero());
            }
        }
    }
}

fn random_poly(c: &[i64]) -> Poly {
    let p = poly(c);
    if p.is_zero() {
        poly(&[1])
    } else {
        p
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rho_is_a_ring_map(
        a in prop::collection::vec(0i64..3, 1..=4),
        b in prop::collection::vec(0i64..3, 1..=4),
        s in prop::collection::vec(1u32..=2, 1..=2),
    ) {
        let u: Vec<&[i64]> = [&[0i64, 1][..], &[1, 1]][..s.len()].to_vec();
        let g = module(&s, &u);
        let (a, b) = (random_poly(&a), random_poly(&b));
        let ra = g.rho_a(&a).unwrap();
        let rb = g.rho_a(&b).unwrap();
        prop_assert_eq!(g.rho_a(&a.mul(&b)).unwrap(), ra.mul(&rb).unwrap());
        prop_assert_eq!(g.rho_a(&a.add(&b)).unwrap(), ra.add(&rb).unwrap());
    }
}
