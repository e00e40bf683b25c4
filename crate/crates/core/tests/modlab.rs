use grpalg_core::modlab::{build_module, excluded_primes, run_lab, LabError, ModSpec, ModuleKind};

fn spec(group: &str, prime: u64, kind: ModuleKind) -> ModSpec {
    ModSpec { group: group.into(), prime, kind }
}

#[test]
fn regular_modules_follow_degree_squares() {
    let r = run_lab(&spec("psl27", 43, ModuleKind::Regular), false).unwrap();
    assert_eq!(r.dims(), [1, 9, 9, 36, 49, 64]);
    assert_eq!((r.field_degree, r.dim), (1, 168));
    assert!(r.passed());
    let chi2 = &r.decompositions[0];
    assert_eq!((chi2.dim_isotypic, chi2.degree, chi2.d, chi2.sum), (9, 3, Some(3), 3));
    assert_eq!(chi2.terms.iter().map(|t| t.dim).collect::<Vec<_>>(), [24, 21]);
}

#[test]
fn permutation_modules_satisfy_the_identity() {
    for (g, sub, dim) in [("psl27", "S4_1", 7), ("psl28", "F56", 9), ("a6", "A5a", 6)] {
        let r = run_lab(&spec(g, grpalg_core::modlab::default_prime(g).unwrap(), ModuleKind::Perm(sub.into())), false).unwrap();
        assert_eq!(r.dim, dim, "{g}");
        assert_eq!(r.dims()[0], 1, "{g} trivial summand");
        assert!(r.passed(), "{g}");
    }
}

#[test]
fn quotient_modules_are_seeded() {
    let a = run_lab(&spec("psl27", 43, ModuleKind::Quotient(3)), false).unwrap();
    let b = run_lab(&spec("psl27", 43, ModuleKind::Quotient(3)), false).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.partition_holds);
    assert!(a.dims()[0] >= 1);
    assert!(a.decompositions.iter().all(|d| d.holds));
}

#[test]
fn primes_dividing_the_order_are_rejected() {
    assert_eq!(excluded_primes("psl27").unwrap(), [2, 3, 7]);
    assert!(matches!(build_module(&spec("psl27", 7, ModuleKind::Regular)), Err(LabError::PrimeDividesOrder { .. })));
    assert!(matches!(build_module(&spec("a6", 5, ModuleKind::Regular)), Err(LabError::PrimeDividesOrder { .. })));
    assert!("perm:".parse::<ModuleKind>().is_err());
    assert_eq!("quotient:12".parse::<ModuleKind>().unwrap(), ModuleKind::Quotient(12));
}

#[test]
fn degree_eight_report_on_regular_module() {
    let r = run_lab(&spec("a6", 31, ModuleKind::Regular), true).unwrap();
    let p = r.prop45.unwrap();
    assert_eq!((p.dim_e4, p.dim_e_psi2, p.dim_d2, p.dim_e_sigma), (64, 40, 32, 72));
    assert!(p.decomposition_holds && p.f_d2_surjective && p.f_d5_surjective);
    assert!(p.kernel_rank_identity);
    assert_eq!((p.kernel_dim_f_d2, p.dim_one_minus_d2_e_sigma), (40, 72));
    assert!(!p.kernel_image_identity);
}

#[test]
fn degree_eight_report_needs_a6() {
    assert!(matches!(run_lab(&spec("psl27", 43, ModuleKind::Regular), true), Err(LabError::Prop45Group)));
}
