//! Transcribed short witnesses, re-checked against fresh definitions.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::catalog::top;
use crate::ideal::Certificate;

use super::defs::{definitions, Defs};
use super::{CheckResult, LemmaError, LemmaReport, Verdict};

pub const WITNESS_FIXTURE: &str = include_str!("../../data/witnesses.json");

pub fn fixture_certificates() -> Result<Vec<Certificate>, LemmaError> {
    serde_json::from_str(WITNESS_FIXTURE).map_err(|e| LemmaError::Setup(format!("witness fixture: {e}")))
}

/// Re-substitutes each certificate into fresh definitions of its lemma,
/// without the solver. Results follow the input order.
pub fn recheck_certificates(certs: &[Certificate]) -> Vec<Result<(), String>> {
    let mut envs: BTreeMap<String, Result<Defs, String>> = BTreeMap::new();
    for c in certs {
        envs.entry(c.lemma.clone()).or_insert_with(|| definitions(&c.lemma).map_err(|e| e.to_string()));
    }
    certs
        .par_iter()
        .map(|c| {
            let d = envs[&c.lemma].as_ref().map_err(|e| format!("{}: {e}", c.claim))?;
            let g = top(&c.group).map_err(|e| format!("{}: {e}", c.claim))?;
            c.check(&g.group, &|n| d.lookup(n)).map_err(|e| e.to_string())
        })
        .collect()
}

/// Expected denominator primes of the printed witnesses, by ring membership.
const RING_CLAIMS: [(&str, &[u64], &str); 2] =
    [("2.1(4)/q1", &[2], "coefficients in Z[1/2, z7]"), ("2.2(6)/q3", &[], "integral coefficients")];

pub fn verify_paper_witnesses() -> Result<LemmaReport, LemmaError> {
    let certs = fixture_certificates()?;
    let mut envs: BTreeMap<String, Defs> = BTreeMap::new();
    let mut checks = Vec::new();
    for c in &certs {
        if !envs.contains_key(&c.lemma) {
            envs.insert(c.lemma.clone(), definitions(&c.lemma)?);
        }
        let d = &envs[&c.lemma];
        let res = c.check(&top(&c.group)?.group, &|n| d.lookup(n));
        let (verdict, detail) = match res {
            Ok(()) => (Verdict::Pass, format!("{} terms, denominator primes {:?}", c.witness.len(), c.denominator_primes)),
            Err(e) => (Verdict::Fail, e.to_string()),
        };
        checks.push(CheckResult {
            name: format!("witnesses/{}", c.claim),
            part: "(fixture)".into(),
            description: format!("{} = {}", c.equation.lhs, c.equation.rhs),
            verdict,
            detail,
            heavy: false,
            certificates: vec![c.claim.clone()],
            elapsed_ms: None,
        });
    }
    for (claim, primes, what) in RING_CLAIMS {
        let got = certs.iter().find(|c| c.claim == claim).map(|c| c.denominator_primes.clone());
        let (verdict, detail) = match got {
            Some(p) if p == primes => (Verdict::Pass, format!("primes {p:?}")),
            Some(p) => (Verdict::Fail, format!("primes {p:?}, expected {primes:?}")),
            None => (Verdict::Fail, "not in fixture".into()),
        };
        checks.push(CheckResult {
            name: format!("witnesses/{claim}/ring"),
            part: "(ring)".into(),
            description: what.into(),
            verdict,
            detail,
            heavy: false,
            certificates: Vec::new(),
            elapsed_ms: None,
        });
    }
    Ok(LemmaReport {
        lemma: "witnesses".into(),
        group: "psl27".into(),
        conductor: 7,
        inferred: false,
        notes: vec!["2.1(5)/q4 as printed has denominator 7, outside Z[z7][G]".into()],
        checks,
        certificates: certs,
    })
}
