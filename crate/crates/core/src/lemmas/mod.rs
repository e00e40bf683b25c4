//! Re-verification of the decomposition lemmas for PSL(2,7), PSL(2,8) and
//! A6, plus the character-table consistency report.

mod claims;
mod defs;
mod run;
mod suites;
mod tables;
mod witnesses;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogError;
use crate::character::CharError;
use crate::cyclotomic::CycError;
use crate::group::GroupError;
use crate::ideal::Certificate;

pub use claims::{claims_of, ClaimEntry, CLAIM_MAP};
pub use defs::{definitions, Defs};
pub use tables::verify_tables;
pub use witnesses::{fixture_certificates, recheck_certificates, verify_paper_witnesses, WITNESS_FIXTURE};

pub const LEMMA_IDS: [&str; 17] = [
    "2.1", "2.2", "2.3", "2.4", "3.1", "3.2", "3.2-chi4", "3.2-chi5", "3.3", "3.4", "3.4-chi8", "3.4-chi9", "4.1",
    "4.1-chi2", "4.2", "4.3", "4.4",
];

/// Group label of a lemma id.
pub fn lemma_group(id: &str) -> Option<&'static str> {
    if !LEMMA_IDS.contains(&id) {
        return None;
    }
    Some(match id.as_bytes()[0] {
        b'2' => "psl27",
        b'3' => "psl28",
        _ => "a6",
    })
}

/// Conductor of the coefficient field a lemma works over.
pub fn lemma_conductor(id: &str) -> Option<u32> {
    let base = id.split('-').next()?;
    lemma_group(id)?;
    Some(match base {
        "2.1" | "3.4" => 7,
        "2.2" | "2.3" | "3.3" | "4.2" => 1,
        "2.4" | "3.1" | "4.1" => 3,
        "3.2" => 9,
        "4.3" => 4,
        "4.4" => 15,
        _ => return None,
    })
}

/// Variants instantiated by Galois conjugation or character search rather
/// than printed explicitly.
pub fn is_inferred(id: &str) -> bool {
    id.contains("-chi")
}

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub skip_heavy: bool,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Record wall-clock times in check results. Off keeps reports byte-stable.
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    /// `lemma(part)/label`.
    pub name: String,
    pub part: String,
    pub description: String,
    pub verdict: Verdict,
    pub detail: String,
    pub heavy: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub group: String,
    pub conductor: u32,
    pub inferred: bool,
    pub notes: Vec<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LemmaError {
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("{0}")]
    Setup(String),
}

pub fn verify_lemma(id: &str, cfg: &VerifyConfig) -> Result<LemmaReport, LemmaError> {
    let start = Instant::now();
    let d = definitions(id)?;
    let mut r = run::Run::new(&d, cfg);
    suites::run_suite(&mut r)?;
    let mut notes = d.notes.clone();
    if r.has_certificates() {
        notes.push(r.note_primes());
    }
    let (checks, certificates) = r.finish();
    if cfg.timings {
        notes.push(format!("total {} ms", start.elapsed().as_millis()));
    }
    Ok(LemmaReport {
        lemma: id.to_string(),
        group: d.top.id.clone(),
        conductor: d.k,
        inferred: is_inferred(id),
        notes,
        checks,
        certificates,
    })
}

/// Lemma ids selected by optional group and lemma filters, in canonical order.
pub fn select_lemmas(group: Option<&str>, lemma: Option<&str>) -> Result<Vec<&'static str>, LemmaError> {
    if let Some(l) = lemma {
        if !LEMMA_IDS.contains(&l) {
            return Err(LemmaError::UnknownLemma(l.to_string()));
        }
    }
    Ok(LEMMA_IDS
        .iter()
        .copied()
        .filter(|id| group.map_or(true, |g| g == "all" || lemma_group(id) == Some(g)))
        .filter(|id| lemma.map_or(true, |l| l == *id))
        .collect())
}

/// Verifies the given lemmas concurrently; the output follows the input order.
pub fn verify_many(ids: &[&str], cfg: &VerifyConfig) -> Result<Vec<LemmaReport>, LemmaError> {
    let job = || ids.par_iter().map(|id| verify_lemma(id, cfg)).collect::<Result<Vec<_>, _>>();
    if cfg.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| LemmaError::Setup(e.to_string()))?;
        pool.install(job)
    } else {
        job()
    }
}

/// Table report, every lemma report, then the fixture report.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<LemmaReport>, LemmaError> {
    let mut out = vec![verify_tables(None)?];
    out.extend(verify_many(&LEMMA_IDS, cfg)?);
    out.push(verify_paper_witnesses()?);
    Ok(out)
}
