use std::collections::BTreeSet;

use grpalg_core::algebra::AlgElem;
use grpalg_core::ideal::Certificate;
use grpalg_core::lemmas::{
    claims_of, definitions, fixture_certificates, is_inferred, lemma_group, recheck_certificates, select_lemmas,
    verify_lemma, verify_paper_witnesses, verify_tables, Verdict, VerifyConfig, CLAIM_MAP, LEMMA_IDS, WITNESS_FIXTURE,
};
use grpalg_core::report::{Report, RunInfo, SCHEMA};

fn cfg() -> VerifyConfig {
    VerifyConfig::default()
}

#[test]
fn every_lemma_has_claims_and_a_group() {
    assert_eq!(LEMMA_IDS.len(), 17);
    for id in LEMMA_IDS {
        assert!(!claims_of(id).is_empty(), "{id}");
        assert!(lemma_group(id).is_some(), "{id}");
    }
    let bases: BTreeSet<&str> = CLAIM_MAP.iter().map(|c| c.lemma).collect();
    assert_eq!(bases.len(), 12);
    assert_eq!(LEMMA_IDS.iter().filter(|id| is_inferred(id)).count(), 5);
}

#[test]
fn selection_filters() {
    assert_eq!(select_lemmas(Some("psl27"), None).unwrap(), ["2.1", "2.2", "2.3", "2.4"]);
    assert_eq!(select_lemmas(None, Some("3.4-chi8")).unwrap(), ["3.4-chi8"]);
    assert_eq!(select_lemmas(Some("all"), None).unwrap().len(), 17);
    assert!(select_lemmas(None, Some("5.1")).is_err());
}

#[test]
fn lemma_2_1_checks_map_onto_claims() {
    let r = verify_lemma("2.1", &cfg()).unwrap();
    assert!(r.passed());
    let parts: BTreeSet<&str> = r.checks.iter().map(|c| c.part.as_str()).collect();
    let claimed: BTreeSet<&str> = claims_of("2.1").iter().map(|c| c.part).collect();
    assert_eq!(parts, claimed);
    for c in &r.checks {
        assert!(c.name.starts_with(&format!("2.1{}/", c.part)), "{}", c.name);
    }
    assert_eq!(r.certificates.len(), 4);
    let primes: BTreeSet<u64> = r.certificates.iter().flat_map(|c| c.denominator_primes.clone()).collect();
    assert!(primes.is_subset(&[2, 3, 7, 29].into()));
}

#[test]
fn lemma_2_3_idempotent_sum_is_exact() {
    let d = definitions("2.3").unwrap();
    let mut sum = AlgElem::zero(&d.top.group, d.k);
    for i in 1..=7 {
        let e = d.elem(&format!("eS4_{i}"));
        assert!(e.is_idempotent());
        sum = &sum + e;
    }
    assert_eq!(&sum, d.elem("e5"));
    assert!(verify_lemma("2.3", &cfg()).unwrap().passed());
}

#[test]
fn lemma_4_3_passes_and_is_deterministic() {
    let a = verify_lemma("4.3", &cfg()).unwrap();
    let b = verify_lemma("4.3", &VerifyConfig { workers: 2, ..cfg() }).unwrap();
    assert!(a.passed());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn skip_heavy_marks_checks_skipped() {
    let r = verify_lemma("3.2", &VerifyConfig { skip_heavy: true, ..cfg() }).unwrap();
    let skipped: Vec<_> = r.checks.iter().filter(|c| c.verdict == Verdict::Skipped).collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|c| c.heavy && (c.part == "(3)" || c.part == "(4)")));
    assert_eq!(r.count(Verdict::Fail), 0);
}

#[test]
fn tables_report_flags_printed_duplicate() {
    let r = verify_tables(None).unwrap();
    assert!(r.passed());
    assert!(r.notes.iter().any(|n| n.contains("psl28") && n.contains("chi4/chi5")));
}

#[test]
fn witness_fixture_round_trips_byte_identically() {
    let certs = fixture_certificates().unwrap();
    assert_eq!(certs.len(), 16);
    let again = serde_json::to_string_pretty(&certs).unwrap();
    assert_eq!(again.trim_end(), WITNESS_FIXTURE.trim_end());
    assert!(certs.iter().all(|c| c.provenance == "paper-§5"));
}

#[test]
fn fixture_witnesses_hold_and_tampering_is_caught() {
    let r = verify_paper_witnesses().unwrap();
    assert!(r.passed());
    let mut certs: Vec<Certificate> = fixture_certificates().unwrap();
    assert!(recheck_certificates(&certs).iter().all(|x| x.is_ok()));
    let (_, coeff) = &mut certs[0].witness[0];
    *coeff = coeff.try_add(&grpalg_core::cyclotomic::CycNum::from_int(coeff.conductor(), 1)).unwrap();
    let res = recheck_certificates(&certs);
    assert!(res[0].as_ref().unwrap_err().starts_with(&certs[0].claim));
    assert!(res[1..].iter().all(|x| x.is_ok()));
}

#[test]
fn report_json_round_trips() {
    let lemmas = vec![verify_tables(Some("psl27")).unwrap(), verify_lemma("2.3", &cfg()).unwrap()];
    let info = RunInfo { tool_version: "0".into(), group: "psl27".into(), lemma: None, skip_heavy: false, seed: 11 };
    let r = Report::new(info, lemmas, Vec::new());
    assert_eq!(r.schema, SCHEMA);
    assert!(r.passed());
    assert_eq!(r.summary.failed, 0);
    let text = r.to_json();
    let back = Report::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    let md = r.to_markdown();
    assert!(md.contains("**PASS**"));
    assert!(md.contains("## lemma 2.3"));
}
