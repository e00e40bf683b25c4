//! Consistency report for the bundled character tables and subgroups.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::catalog::{group_ids, subgroup_specs, top, TopGroup};

use super::{CheckResult, LemmaError, LemmaReport, Verdict};

fn push(out: &mut Vec<CheckResult>, g: &str, label: &str, desc: &str, res: Result<String, String>) {
    let (verdict, detail) = match res {
        Ok(s) => (Verdict::Pass, s),
        Err(s) => (Verdict::Fail, s),
    };
    out.push(CheckResult {
        name: format!("tables({g})/{label}"),
        part: format!("({g})"),
        description: desc.to_string(),
        verdict,
        detail,
        heavy: false,
        certificates: Vec::new(),
        elapsed_ms: None,
    });
}

/// `(i, j)` pairs, 1-based, where the inner product is not `delta_ij`.
fn orthogonality_defects(rows: &[crate::character::ClassFunction]) -> Result<Vec<(usize, usize)>, LemmaError> {
    let mut bad = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i) {
            let ip = a.inner_product(b)?;
            if (i == j && !ip.is_one()) || (i != j && !ip.is_zero()) {
                bad.push((i + 1, j + 1));
            }
        }
    }
    Ok(bad)
}

fn duplicate_rows(t: &TopGroup) -> Vec<(usize, usize)> {
    let mut d = Vec::new();
    for i in 0..t.printed.len() {
        for j in i + 1..t.printed.len() {
            if t.printed[i] == t.printed[j] {
                d.push((i + 1, j + 1));
            }
        }
    }
    d
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter().map(|(i, j)| format!("chi{i}/chi{j}")).collect::<Vec<_>>().join(", ")
}

fn group_checks(t: &TopGroup, out: &mut Vec<CheckResult>, notes: &mut Vec<String>) -> Result<(), LemmaError> {
    let g = t.id.as_str();
    let grp = &t.group;
    let ncls = grp.conjugacy_classes().len();
    push(out, g, "order", "group order and class count match the table", {
        if grp.order() == t.expected_order && ncls == t.columns.len() && ncls == t.table.len() {
            Ok(format!("order {}, {ncls} classes", grp.order()))
        } else {
            Err(format!("order {} (expected {}), {ncls} classes, {} columns", grp.order(), t.expected_order, t.columns.len()))
        }
    });
    push(out, g, "classes", "printed class representatives lie in distinct classes", {
        let mut cols = t.columns.clone();
        cols.sort_unstable();
        cols.dedup();
        let sizes: Vec<String> = t.columns.iter().map(|&c| grp.conjugacy_classes()[c].size.to_string()).collect();
        if cols.len() == ncls {
            Ok(format!("class sizes {}", sizes.join(", ")))
        } else {
            Err("two representatives share a class".into())
        }
    });
    let bad = orthogonality_defects(&t.table)?;
    push(out, g, "orthogonality", "<chi_i, chi_j> = delta_ij on the corrected table", {
        if bad.is_empty() {
            Ok(format!("{} pairs", ncls * (ncls + 1) / 2))
        } else {
            Err(format!("defects at {}", pairs(&bad)))
        }
    });
    push(out, g, "degrees", "sum of squared degrees is |G|", {
        let mut total = BigInt::from(0);
        let mut terms = Vec::new();
        for chi in &t.table {
            let d = chi.degree().rational_value().map(|q| q.to_integer()).unwrap_or_default();
            terms.push((&d * &d).to_string());
            total += &d * &d;
        }
        let s = format!("{} = {total}", terms.join("+"));
        if total == BigInt::from(grp.order()) {
            Ok(s)
        } else {
            Err(s)
        }
    });
    let dups = duplicate_rows(t);
    let printed_bad = orthogonality_defects(&t.printed)?;
    push(out, g, "printed", "discrepancies of the table as printed", {
        let mut parts = Vec::new();
        if !dups.is_empty() {
            parts.push(format!("duplicate rows {}", pairs(&dups)));
        }
        if !printed_bad.is_empty() {
            parts.push(format!("orthogonality defects {}", pairs(&printed_bad)));
        }
        let fixed: Vec<String> = t.corrected_rows.iter().map(|(r, why)| format!("chi{r} ({why})")).collect();
        if !fixed.is_empty() {
            parts.push(format!("substituted {}", fixed.join(", ")));
        }
        if parts.is_empty() {
            Ok("none".into())
        } else {
            Ok(parts.join("; "))
        }
    });
    if !dups.is_empty() {
        notes.push(format!("{g}: printed table repeats {}", pairs(&dups)));
    }
    for (r, why) in &t.corrected_rows {
        notes.push(format!("{g}: row chi{r} substituted ({why})"));
    }
    push(out, g, "subgroups", "catalog subgroups generate their stated orders", {
        let mut bad = Vec::new();
        let specs = subgroup_specs(g);
        for s in &specs {
            if let Err(e) = t.subgroup(&s.name) {
                bad.push(e.to_string());
            }
        }
        if bad.is_empty() {
            Ok(format!("{} subgroups", specs.len()))
        } else {
            Err(bad.join("; "))
        }
    });
    Ok(())
}

/// Table checks for one group id, or every group when `group` is `None` or `all`.
pub fn verify_tables(group: Option<&str>) -> Result<LemmaReport, LemmaError> {
    let ids: Vec<&str> = match group {
        None | Some("all") => group_ids(),
        Some(g) => vec![g],
    };
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut conductor = 1u32;
    for id in &ids {
        let t = top(id)?;
        for chi in &t.table {
            conductor = conductor.lcm(&chi.conductor()?);
        }
        group_checks(t, &mut checks, &mut notes)?;
    }
    Ok(LemmaReport {
        lemma: "tables".into(),
        group: group.unwrap_or("all").to_string(),
        conductor,
        inferred: false,
        notes,
        checks,
        certificates: Vec::new(),
    })
}
