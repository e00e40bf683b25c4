use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use grpalg_core::algebra::AlgElem;
use grpalg_core::catalog::top;
use grpalg_core::cyclotomic::CycNum;
use grpalg_core::finite_field::{find_order_k_root, reduce_mod_p};
use grpalg_core::linalg::{nullspace, rref, solve_particular, Matrix};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cyc(k: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0..k as i64, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().map(|(e, n, d)| (e, q(n, d))).collect();
        CycNum::from_terms(k, &terms).unwrap()
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 * (1.0 + a.0.abs()) && (a.1 - b.1).abs() < 1e-6 * (1.0 + a.1.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_laws(a in cyc(15), b in cyc(15), c in cyc(15)) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.clone(), b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.try_add(&a.try_mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn products_agree_with_complex_embedding(a in cyc(21), b in cyc(21)) {
        let (x, y) = (a.to_complex(), b.to_complex());
        let want = (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        prop_assert!(close(a.try_mul(&b).unwrap().to_complex(), want));
    }

    #[test]
    fn nonzero_elements_invert(a in cyc(9)) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.try_mul(&a.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(7), b in cyc(7), j in prop::sample::select(vec![1i64, 2, 3, 4, 5, 6])) {
        let lhs = a.try_mul(&b).unwrap().galois(j).unwrap();
        prop_assert_eq!(lhs, a.galois(j).unwrap().try_mul(&b.galois(j).unwrap()).unwrap());
        let (c, z) = (a.conj().to_complex(), a.to_complex());
        prop_assert!(close(c, (z.0, -z.1)));
    }

    #[test]
    fn embedding_round_trips(a in cyc(7)) {
        let up = a.embed(21).unwrap();
        prop_assert!(close(up.to_complex(), a.to_complex()));
        prop_assert_eq!(up.descend(7).unwrap(), a);
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(a in cyc(21), b in cyc(21)) {
        let (f, root) = find_order_k_root(43, 21).unwrap();
        let ra = reduce_mod_p(&a, &f, &root).unwrap();
        let rb = reduce_mod_p(&b, &f, &root).unwrap();
        prop_assert_eq!(reduce_mod_p(&a.try_mul(&b).unwrap(), &f, &root).unwrap(), f.mul(&ra, &rb));
        prop_assert_eq!(reduce_mod_p(&a.try_add(&b).unwrap(), &f, &root).unwrap(), f.add(&ra, &rb));
    }

    #[test]
    fn group_axioms(g in prop::sample::select(vec!["psl27", "psl28", "a6"]), seed in any::<(usize, usize, usize)>()) {
        let grp = &top(g).unwrap().group;
        let n = grp.order();
        let (a, b, c) = (seed.0 % n, seed.1 % n, seed.2 % n);
        prop_assert_eq!(grp.mul_idx(grp.mul_idx(a, b), c), grp.mul_idx(a, grp.mul_idx(b, c)));
        prop_assert_eq!(grp.mul_idx(a, grp.inv_idx(a)), 0);
        prop_assert_eq!(grp.class_of(grp.conj_idx(b, a)), grp.class_of(a));
    }

    #[test]
    fn characters_are_class_functions(g in prop::sample::select(vec!["psl27", "psl28", "a6"]), x in any::<usize>(), y in any::<usize>()) {
        let t = top(g).unwrap();
        let n = t.group.order();
        let (x, y) = (x % n, y % n);
        for chi in &t.table {
            prop_assert_eq!(chi.value_at(t.group.conj_idx(y, x)), chi.value_at(x));
        }
    }

    #[test]
    fn central_idempotents_commute_with_everything(coeffs in prop::collection::vec((0usize..168, -3i64..=3), 1..6)) {
        let t = top("psl27").unwrap();
        let mut x = AlgElem::zero(&t.group, 7);
        for (g, c) in coeffs {
            x = &x + &AlgElem::basis(&t.group, 7, g).scale(&CycNum::from_int(7, c));
        }
        for i in [2, 4] {
            let e = t.chi(i).central_idempotent(7).unwrap();
            prop_assert_eq!(&e * &x, &x * &e);
        }
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = Matrix::from_rows(1, 5, rows.iter().map(|r| r.iter().map(|&v| CycNum::from_int(1, v)).collect()).collect());
        let ns = nullspace(&m);
        prop_assert_eq!(rref(&m).rank() + ns.len(), 5);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn particular_solutions_solve(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5), x in prop::collection::vec(-4i64..=4, 4)) {
        let m = Matrix::from_rows(3, 4, rows.iter().map(|r| r.iter().map(|&v| CycNum::from_int(3, v)).collect()).collect());
        let x: Vec<CycNum> = x.into_iter().map(|v| CycNum::from_int(3, v)).collect();
        let b = m.mul_vec(&x);
        let s = solve_particular(&m, &b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&s), b);
    }
}

/// Characters sharing a conductor form Galois-stable sets, so each set's
/// idempotent sum is rational and the sets can be added over Q.
#[test]
fn central_idempotents_partition_unity() {
    for g in ["psl27", "psl28", "a6"] {
        let t = top(g).unwrap();
        let mut by_k: BTreeMap<u32, Vec<AlgElem>> = BTreeMap::new();
        for c in &t.table {
            let k = c.conductor().unwrap();
            by_k.entry(k).or_default().push(c.central_idempotent(k).unwrap());
        }
        let mut total = AlgElem::zero(&t.group, 1);
        for (k, es) in &by_k {
            let mut sum = AlgElem::zero(&t.group, *k);
            for (i, e) in es.iter().enumerate() {
                assert!(e.is_idempotent() && e.is_central(), "{g} k={k} #{i}");
                for f in &es[i + 1..] {
                    assert!((e * f).is_zero(), "{g} k={k}");
                }
                sum = &sum + e;
            }
            let rational: Vec<CycNum> =
                sum.coeffs.iter().map(|c| CycNum::from_rational(1, &c.rational_value().expect("Galois-stable sum"))).collect();
            total = &total + &AlgElem::from_vec(&t.group, 1, rational);
        }
        assert_eq!(total, AlgElem::one(&t.group, 1), "{g}");
    }
}
