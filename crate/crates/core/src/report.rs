//! Versioned JSON and markdown renderings of a verification run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lemmas::{LemmaReport, Verdict};
use crate::modlab::IsotypicReport;

pub const SCHEMA: &str = "grpalg-report/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub tool_version: String,
    pub group: String,
    pub lemma: Option<String>,
    pub skip_heavy: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub modlab_failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub run: RunInfo,
    pub summary: Summary,
    pub lemmas: Vec<LemmaReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modlab: Vec<IsotypicReport>,
}

impl Report {
    pub fn new(run: RunInfo, lemmas: Vec<LemmaReport>, modlab: Vec<IsotypicReport>) -> Report {
        let mut s = Summary { reports: lemmas.len(), ..Summary::default() };
        for c in lemmas.iter().flat_map(|l| &l.checks) {
            s.checks += 1;
            match c.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s.modlab_failed = modlab.iter().filter(|m| !m.passed()).count();
        Report { schema: SCHEMA.to_string(), run, summary: s, lemmas, modlab }
    }

    /// No failed check and no failed lab report; skips do not count.
    pub fn passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.modlab_failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let r = &self.run;
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(
            out,
            "schema `{}`, tool {}, group `{}`, lemma `{}`, skip-heavy {}, seed {}\n",
            self.schema,
            r.tool_version,
            r.group,
            r.lemma.as_deref().unwrap_or("all"),
            r.skip_heavy,
            r.seed
        );
        let s = &self.summary;
        let _ = writeln!(
            out,
            "**{}**: {} checks in {} reports, {} passed, {} failed, {} skipped.\n",
            if self.passed() { "PASS" } else { "FAIL" },
            s.checks,
            s.reports,
            s.passed,
            s.failed,
            s.skipped
        );
        for l in &self.lemmas {
            let title = match l.lemma.as_str() {
                "tables" | "witnesses" => l.lemma.clone(),
                id => format!("lemma {id}"),
            };
            let _ = writeln!(out, "## {title} ({}, conductor {})\n", l.group, l.conductor);
            if l.inferred {
                let _ = writeln!(out, "Inferred variant.\n");
            }
            for n in &l.notes {
                let _ = writeln!(out, "- {n}");
            }
            if !l.notes.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "| check | verdict | detail |\n|---|---|---|");
            for c in &l.checks {
                let v = match c.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "skipped",
                };
                let time = c.elapsed_ms.map(|t| format!(" ({t} ms)")).unwrap_or_default();
                let _ = writeln!(out, "| `{}` | {v}{time} | {} |", c.name, cell(&c.detail));
            }
            out.push('\n');
        }
        for m in &self.modlab {
            modlab_markdown(&mut out, m);
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn modlab_markdown(out: &mut String, m: &IsotypicReport) {
    let _ = writeln!(
        out,
        "## module lab: {} {} over F_{}^{} (z_{} adjoined), dim {}\n",
        m.group, m.module, m.prime, m.field_degree, m.conductor, m.dim
    );
    let dims: Vec<String> = m.characters.iter().map(|c| format!("chi{}: {}", c.chi, c.dim)).collect();
    let _ = writeln!(out, "- isotypic dimensions {}", dims.join(", "));
    let _ = writeln!(out, "- partition of unity: {}", m.partition_holds);
    if let Some(r) = m.regular_law_holds {
        let _ = writeln!(out, "- dim = deg^2 on the regular module: {r}");
    }
    out.push('\n');
    let _ = writeln!(out, "| lemma | chi | dim e_chi M | deg | d | sum a_i dim e_psi M | holds |\n|---|---|---|---|---|---|---|");
    for d in &m.decompositions {
        let terms: Vec<String> = d.terms.iter().map(|t| format!("{:+}*{}", t.coefficient, t.dim)).collect();
        let dd = d.d.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {dd} | {} = {} | {} |",
            d.lemma,
            d.chi,
            d.dim_isotypic,
            d.degree,
            terms.join(" "),
            d.sum,
            d.holds
        );
    }
    out.push('\n');
    if let Some(p) = &m.prop45 {
        let _ = writeln!(out, "degree-8 proposition on this module:\n");
        let _ = writeln!(
            out,
            "- dim e4 M = {}, dim e_psi2 M = {}, dim d2 M = {}, dim e_psi5 M = {}, dim d5 M = {}, dim e_sigma M = {}",
            p.dim_e4, p.dim_e_psi2, p.dim_d2, p.dim_e_psi5, p.dim_d5, p.dim_e_sigma
        );
        let _ = writeln!(out, "- four-fold decomposition identity: {}", p.decomposition_holds);
        let _ = writeln!(out, "- f_d2 surjective: {} (rank {}), f_d5 surjective: {} (rank {})", p.f_d2_surjective, p.rank_f_d2, p.f_d5_surjective, p.rank_f_d5);
        let _ = writeln!(
            out,
            "- kernel of f_d2: dim {}; equals dim e_sigma M - dim d2 M: {}; equals dim (1-d2) e_sigma M = {}: {}",
            p.kernel_dim_f_d2, p.kernel_rank_identity, p.dim_one_minus_d2_e_sigma, p.kernel_image_identity
        );
        let _ = writeln!(out, "- corollary condition (ii) on this module: {}\n", p.cor46_condition_ii);
    }
}
