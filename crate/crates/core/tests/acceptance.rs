//! One line per acceptance criterion. Every comparison is exact; the only
//! numeric allowances are the wall-clock budgets below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grpalg_core::catalog::top;
use grpalg_core::ideal::Certificate;
use grpalg_core::lemmas::{
    claims_of, lemma_group, recheck_certificates, verify_lemma, verify_paper_witnesses, verify_tables, LemmaReport,
    Verdict, VerifyConfig, LEMMA_IDS,
};
use grpalg_core::modlab::{run_lab, ModSpec, ModuleKind};
use grpalg_core::report::{Report, RunInfo};

/// Per-group suite budget for PSL(2,7) and A6.
const LIGHT_SUITE_BUDGET: Duration = Duration::from_secs(30 * 60);
/// Budget for the PSL(2,8) suite including its heavy ideal equalities.
const PSL28_SUITE_BUDGET: Duration = Duration::from_secs(4 * 3600);
/// Set to run the PSL(2,8) suite without its heavy checks.
const SKIP_HEAVY_ENV: &str = "GRPALG_ACCEPT_SKIP_HEAVY";

/// Criterion 7 asserts one identity that does not hold; the run pins the
/// measured counterexample instead of a pass.
const KNOWN_FAILURES: [usize; 1] = [7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let expected = [("psl27", 168, 6), ("psl28", 504, 9), ("a6", 360, 7)];
    let subgroups = [("psl27", "D4", 8), ("psl27", "F21", 21), ("psl28", "D9", 18), ("psl28", "F56", 56), ("a6", "H36", 36), ("a6", "A5a", 60)];
    let mut bad = Vec::new();
    for (g, order, classes) in expected {
        let t = top(g).unwrap();
        let got = (t.group.order(), t.group.conjugacy_classes().len(), t.columns.len());
        if got != (order, classes, classes) {
            bad.push(format!("{g}: {got:?}"));
        }
    }
    for (g, name, order) in subgroups {
        let got = top(g).unwrap().subgroup(name).map(|h| h.order());
        if got.as_ref().ok() != Some(&order) {
            bad.push(format!("{g}/{name}: {got:?}"));
        }
    }
    let tables = verify_tables(None).unwrap();
    let sub = ["psl27", "psl28", "a6"].iter().all(|g| {
        tables.check(&format!("tables({g})/subgroups")).is_some_and(|c| c.verdict == Verdict::Pass)
    });
    if !sub {
        bad.push("catalog subgroup orders".into());
    }
    outcome(bad.is_empty(), if bad.is_empty() { "orders 168/504/360, classes 6/9/7, six named subgroups".into() } else { bad.join("; ") })
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for g in ["psl27", "psl28", "a6"] {
        let t = top(g).unwrap();
        for (i, a) in t.table.iter().enumerate() {
            for (j, b) in t.table.iter().enumerate() {
                let ip = a.inner_product(b).unwrap();
                if ip.is_one() != (i == j) || (i != j && !ip.is_zero()) {
                    bad.push(format!("{g} <chi{},chi{}>", i + 1, j + 1));
                }
            }
        }
        let squares: u64 = t
            .table
            .iter()
            .map(|c| {
                let d = c.degree().rational_value().unwrap().to_integer();
                u64::try_from(&d * &d).unwrap()
            })
            .sum();
        if squares != t.group.order() as u64 {
            bad.push(format!("{g} sum of squares {squares}"));
        }
    }
    let r = verify_tables(Some("psl28")).unwrap();
    let printed = r.check("tables(psl28)/printed").map(|c| c.detail.clone()).unwrap_or_default();
    let duplicate = printed.contains("duplicate rows chi4/chi5");
    if !duplicate {
        bad.push(format!("duplicate not reported: {printed}"));
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("orthogonal, degrees square-sum to |G|; psl28 printed: {printed}") } else { bad.join("; ") })
}

struct SuiteRun {
    reports: Vec<LemmaReport>,
    group_time: Vec<(&'static str, Duration)>,
    skip_heavy: bool,
}

fn run_suites(skip_heavy: bool) -> SuiteRun {
    let cfg = VerifyConfig { skip_heavy, workers: 0, timings: false };
    let mut reports = Vec::new();
    let mut group_time = Vec::new();
    for g in ["psl27", "psl28", "a6"] {
        let start = Instant::now();
        for id in LEMMA_IDS.iter().filter(|id| lemma_group(id) == Some(g)) {
            reports.push(verify_lemma(id, &cfg).unwrap());
        }
        group_time.push((g, start.elapsed()));
    }
    SuiteRun { reports, group_time, skip_heavy }
}

fn criterion_3(run: &SuiteRun) -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for r in &run.reports {
        checks += r.checks.len();
        for c in &r.checks {
            let allowed_skip = run.skip_heavy && c.heavy;
            if c.verdict == Verdict::Fail || (c.verdict == Verdict::Skipped && !allowed_skip) {
                bad.push(format!("{}: {:?}", c.name, c.verdict));
            }
        }
        for claim in claims_of(&r.lemma) {
            if !r.checks.iter().any(|c| c.part == claim.part && c.verdict == Verdict::Pass) {
                if !(run.skip_heavy && r.checks.iter().any(|c| c.part == claim.part && c.heavy)) {
                    bad.push(format!("{}{} has no passing check", r.lemma, claim.part));
                }
            }
        }
    }
    let negative = run
        .reports
        .iter()
        .find(|r| r.lemma == "4.4")
        .and_then(|r| r.checks.iter().find(|c| c.name.starts_with("4.4(3)") && c.detail.contains("none among 360")))
        .is_some_and(|c| c.verdict == Verdict::Pass);
    if !negative {
        bad.push("4.4(3) non-conjugacy".into());
    }
    for (g, t) in &run.group_time {
        let budget = if *g == "psl28" { PSL28_SUITE_BUDGET } else { LIGHT_SUITE_BUDGET };
        if *t > budget {
            bad.push(format!("{g} took {t:?} > {budget:?}"));
        }
    }
    let skipped: usize = run.reports.iter().map(|r| r.count(Verdict::Skipped)).sum();
    let detail = if bad.is_empty() {
        format!("{} reports, {checks} checks, {skipped} heavy skipped, 4.4(3) negative check holds", run.reports.len())
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    let r = verify_paper_witnesses().unwrap();
    let primes = |claim: &str| r.certificates.iter().find(|c| c.claim == claim).map(|c| c.denominator_primes.clone());
    let q1 = primes("2.1(4)/q1");
    let q3 = primes("2.2(6)/q3");
    let rings = q1 == Some(vec![2]) && q3 == Some(vec![]);
    let pass = r.passed() && rings && r.certificates.len() == 16;
    outcome(pass, format!("{} fixture witnesses hold: {}; q1 primes {q1:?}, 2.2 q3 primes {q3:?}", r.certificates.len(), r.passed()))
}

fn criterion_5(run: &SuiteRun) -> Outcome {
    let r = run.reports.iter().find(|r| r.lemma == "2.1").unwrap();
    let certs: Vec<&Certificate> =
        r.certificates.iter().filter(|c| c.claim.starts_with("2.1(4)") || c.claim.starts_with("2.1(5)")).collect();
    let rechecked = recheck_certificates(&certs.iter().map(|c| (*c).clone()).collect::<Vec<_>>());
    let primes: BTreeSet<u64> = certs.iter().flat_map(|c| c.denominator_primes.iter().copied()).collect();
    let order_primes: BTreeSet<u64> = [2, 3, 7].into();
    let extra: BTreeSet<u64> = primes.difference(&order_primes).copied().collect();
    let pass = certs.len() == 4 && rechecked.iter().all(|x| x.is_ok()) && r.passed() && extra.is_subset(&[29].into());
    outcome(pass, format!("{} certificates re-verify, primes {primes:?}, outside |G| {extra:?}", certs.len()))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut shown = String::new();
    for (g, p) in [("psl27", 43), ("psl28", 127), ("a6", 31)] {
        let spec = ModSpec { group: g.into(), prime: p, kind: ModuleKind::Regular };
        let lab = run_lab(&spec, false).unwrap();
        for c in &lab.characters {
            if c.dim as u64 != c.degree * c.degree {
                bad.push(format!("{g} chi{} dim {} deg {}", c.chi, c.dim, c.degree));
            }
        }
        for d in &lab.decompositions {
            let index_sum: i64 = d.terms.iter().map(|t| t.coefficient * t.index as i64).sum();
            let dims_are_indices = d.terms.iter().all(|t| t.dim == t.index);
            if !d.holds || !dims_are_indices || d.d != Some(index_sum) {
                bad.push(format!("{g} lemma {}: d={:?} sum={}", d.lemma, d.d, d.sum));
            }
        }
        if g == "psl27" {
            let pinned: Vec<(usize, Vec<usize>, i64)> =
                vec![(2, vec![24, 21], 3), (4, vec![14, 8], 6), (5, vec![7], 7), (6, vec![8], 8)];
            for (d, (chi, dims, want)) in lab.decompositions.iter().zip(&pinned) {
                let got: Vec<usize> = d.terms.iter().map(|t| t.dim).collect();
                if d.chi != *chi || &got != dims || d.d != Some(*want) {
                    bad.push(format!("psl27 chi{}: {got:?} -> {:?}", d.chi, d.d));
                }
            }
            shown = format!("psl27 dims {:?}", lab.dims());
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{shown}; deg^2 law and index identity on all three groups") } else { bad.join("; ") })
}

fn criterion_7() -> Outcome {
    let spec = ModSpec { group: "a6".into(), prime: 31, kind: ModuleKind::Regular };
    let lab = run_lab(&spec, true).unwrap();
    let p = lab.prop45.unwrap();
    let pass = p.dim_e4 == 64
        && p.decomposition_holds
        && p.f_d2_surjective
        && p.f_d5_surjective
        && p.kernel_rank_identity
        && p.kernel_image_identity;
    outcome(
        pass,
        format!(
            "dim e4 M {}, decomposition {}, f_d2/f_d5 onto {}/{}, dim ker f_d2 {} = {} - {}: {}, dim (1-d2) e_sigma M {}: {}",
            p.dim_e4,
            p.decomposition_holds,
            p.f_d2_surjective,
            p.f_d5_surjective,
            p.kernel_dim_f_d2,
            p.dim_e_sigma,
            p.dim_d2,
            p.kernel_rank_identity,
            p.dim_one_minus_d2_e_sigma,
            p.kernel_image_identity
        ),
    )
}

/// The parts of criterion 7 that do hold, and the counterexample pinned.
fn criterion_7_pinned() -> bool {
    let spec = ModSpec { group: "a6".into(), prime: 31, kind: ModuleKind::Regular };
    let p = run_lab(&spec, true).unwrap().prop45.unwrap();
    p.dim_e4 == 64
        && p.decomposition_holds
        && p.f_d2_surjective
        && p.f_d5_surjective
        && p.kernel_rank_identity
        && (p.kernel_dim_f_d2, p.dim_one_minus_d2_e_sigma) == (40, 72)
}

fn full_report(run: &SuiteRun) -> (String, Vec<String>) {
    let mut lemmas = vec![verify_tables(None).unwrap()];
    lemmas.extend(run.reports.iter().cloned());
    lemmas.push(verify_paper_witnesses().unwrap());
    let certs = lemmas.iter().flat_map(|l| &l.certificates).map(|c| serde_json::to_string_pretty(c).unwrap()).collect();
    let info = RunInfo {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        group: "all".into(),
        lemma: None,
        skip_heavy: run.skip_heavy,
        seed: 0,
    };
    (Report::new(info, lemmas, Vec::new()).to_json(), certs)
}

fn criterion_8(first: &SuiteRun) -> Outcome {
    let second = run_suites(first.skip_heavy);
    let (a, ca) = full_report(first);
    let (b, cb) = full_report(&second);
    let pass = a == b && ca == cb;
    outcome(pass, format!("report {} bytes, {} certificates, identical: {pass}", a.len(), ca.len()))
}

fn main() -> ExitCode {
    let skip_heavy = std::env::var_os(SKIP_HEAVY_ENV).is_some();
    let run = run_suites(skip_heavy);
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(&run),
        criterion_4(),
        criterion_5(&run),
        criterion_6(),
        criterion_7(),
        criterion_8(&run),
    ];
    let mut unexpected = Vec::new();
    for (i, r) in results.iter().enumerate() {
        let n = i + 1;
        println!("criterion {n}: {} ({})", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        let known = KNOWN_FAILURES.contains(&n);
        if r.pass == known {
            unexpected.push(n);
        }
    }
    if !criterion_7_pinned() {
        unexpected.push(7);
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes as recorded (known failures {KNOWN_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
