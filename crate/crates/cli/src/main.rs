use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use grpalg_core::lemmas::{
    fixture_certificates, lemma_group, recheck_certificates, select_lemmas, verify_many, verify_paper_witnesses,
    verify_tables,
};
use grpalg_core::modlab::default_prime;
use grpalg_core::{run_lab, Certificate, LemmaReport, ModSpec, ModuleKind, Report, RunInfo, Verdict, VerifyConfig};

/// Optional override for `--workers`.
const WORKERS_ENV: &str = "GRPALG_WORKERS";

#[derive(Parser)]
#[command(name = "grpalg", version, about = "Exact verification of induction-theorem lemmas in group algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the table report and the selected lemma suites.
    Verify(VerifyArgs),
    /// Export every certificate of the selected lemmas plus the transcribed witnesses.
    Certificates(CertArgs),
    /// Re-check certificate files or directories without the solver.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Dimension checks on a concrete module over a finite field.
    Modlab(LabArgs),
}

#[derive(Args, Clone)]
struct Selection {
    /// psl27, psl28, a6 or all.
    #[arg(long, default_value = "all")]
    group: String,
    /// A single lemma id such as 2.1 or 3.4-chi8.
    #[arg(long)]
    lemma: Option<String>,
    #[arg(long)]
    skip_heavy: bool,
    /// Worker threads, 0 for one per core.
    #[arg(long)]
    workers: Option<usize>,
    /// Recorded in every output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sel: Selection,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    md: Option<PathBuf>,
    /// Directory receiving one JSON file per certificate.
    #[arg(long)]
    certs: Option<PathBuf>,
    /// Record per-check wall-clock times (outputs are then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    sel: Selection,
    #[arg(long)]
    certs: PathBuf,
}

#[derive(Args)]
struct LabArgs {
    #[arg(long)]
    group: String,
    /// Defaults to a prime with a small splitting field for the group.
    #[arg(long)]
    prime: Option<u64>,
    /// regular, perm:<subgroup> or quotient:<seed>.
    #[arg(long, default_value = "regular")]
    module: String,
    #[arg(long)]
    prop45: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    md: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Certificates(a) => cmd_certificates(a),
        Cmd::Check { paths } => cmd_check(&paths),
        Cmd::Modlab(a) => cmd_modlab(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn workers(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v.parse().with_context(|| format!("{WORKERS_ENV}={v} is not a number")),
        Err(_) => Ok(0),
    }
}

fn run_selection(sel: &Selection, timings: bool) -> Result<Vec<LemmaReport>> {
    let group = match (&sel.lemma, sel.group.as_str()) {
        (Some(l), "all") => lemma_group(l).with_context(|| format!("unknown lemma `{l}`"))?,
        (_, g) => g,
    };
    if !matches!(group, "all" | "psl27" | "psl28" | "a6") {
        bail!("unknown group `{group}`");
    }
    let ids = select_lemmas(Some(group), sel.lemma.as_deref())?;
    if ids.is_empty() {
        bail!("no lemma matches group `{group}` and lemma `{}`", sel.lemma.as_deref().unwrap_or("all"));
    }
    let cfg = VerifyConfig { skip_heavy: sel.skip_heavy, workers: workers(sel.workers)?, timings };
    let mut out = vec![verify_tables(Some(group))?];
    out.extend(verify_many(&ids, &cfg)?);
    if group == "all" && sel.lemma.is_none() {
        out.push(verify_paper_witnesses()?);
    }
    Ok(out)
}

fn run_info(sel: &Selection) -> RunInfo {
    RunInfo {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        group: sel.group.clone(),
        lemma: sel.lemma.clone(),
        skip_heavy: sel.skip_heavy,
        seed: sel.seed,
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_summary(report: &Report) {
    for l in &report.lemmas {
        let v = |x| l.count(x);
        println!(
            "{:<10} {:<6} {} pass {:>3}  fail {:>2}  skipped {:>2}",
            l.lemma,
            l.group,
            if l.passed() { "ok  " } else { "FAIL" },
            v(Verdict::Pass),
            v(Verdict::Fail),
            v(Verdict::Skipped)
        );
        for c in l.checks.iter().filter(|c| c.verdict == Verdict::Fail) {
            println!("    failed {}: {}", c.name, c.detail);
        }
    }
    let s = &report.summary;
    println!("{} checks: {} passed, {} failed, {} skipped", s.checks, s.passed, s.failed, s.skipped);
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let lemmas = run_selection(&a.sel, a.timings)?;
    let certs: Vec<Certificate> = lemmas.iter().flat_map(|l| l.certificates.iter().cloned()).collect();
    let report = Report::new(run_info(&a.sel), lemmas, Vec::new());
    if let Some(p) = &a.json {
        write(p, &report.to_json())?;
    }
    if let Some(p) = &a.md {
        write(p, &report.to_markdown())?;
    }
    if let Some(dir) = &a.certs {
        export(dir, &certs)?;
    }
    print_summary(&report);
    Ok(report.passed())
}

fn cmd_certificates(a: CertArgs) -> Result<bool> {
    let lemmas = run_selection(&a.sel, false)?;
    let mut certs: Vec<Certificate> = lemmas.iter().flat_map(|l| l.certificates.iter().cloned()).collect();
    if !lemmas.iter().any(|l| l.lemma == "witnesses") {
        certs.extend(fixture_certificates()?);
    }
    let n = export(&a.certs, &certs)?;
    println!("wrote {n} certificates to {}", a.certs.display());
    Ok(lemmas.iter().all(|l| l.passed()))
}

/// File stem for a claim id: `2.1(4)/q1` becomes `2.1_4_q1`.
fn file_stem(claim: &str) -> String {
    let mut s = String::new();
    for ch in claim.chars() {
        if ch.is_ascii_alphanumeric() || ch == '.' || ch == '-' {
            s.push(ch);
        } else if !s.ends_with('_') {
            s.push('_');
        }
    }
    s.trim_matches('_').to_string()
}

fn export(dir: &Path, certs: &[Certificate]) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for c in certs {
        let tag = if c.provenance == "solver" { "solver" } else { "fixture" };
        let path = dir.join(format!("{}.{tag}.json", file_stem(&c.claim)));
        let mut text = serde_json::to_string_pretty(c)?;
        text.push('\n');
        write(&path, &text)?;
    }
    Ok(certs.len())
}

fn load(paths: &[PathBuf]) -> Result<Vec<(PathBuf, Certificate)>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("reading {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json"))
                .collect();
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    files
        .into_iter()
        .map(|f| {
            let text = fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?;
            let c = serde_json::from_str(&text).with_context(|| format!("{}: not a certificate", f.display()))?;
            Ok((f, c))
        })
        .collect()
}

fn cmd_check(paths: &[PathBuf]) -> Result<bool> {
    let loaded = load(paths)?;
    let certs: Vec<Certificate> = loaded.iter().map(|(_, c)| c.clone()).collect();
    let results = recheck_certificates(&certs);
    let mut ok = true;
    for ((path, c), r) in loaded.iter().zip(results) {
        match r {
            Ok(()) => println!("ok   {} ({})", c.claim, path.display()),
            Err(e) => {
                ok = false;
                println!("FAIL {} ({}): {e}", c.claim, path.display());
            }
        }
    }
    println!("{} certificates checked, {}", loaded.len(), if ok { "all hold" } else { "failures found" });
    Ok(ok)
}

fn cmd_modlab(a: LabArgs) -> Result<bool> {
    let kind: ModuleKind = a.module.parse()?;
    let prime = match a.prime {
        Some(p) => p,
        None => default_prime(&a.group)?,
    };
    let spec = ModSpec { group: a.group.clone(), prime, kind };
    let lab = run_lab(&spec, a.prop45)?;
    let dims: Vec<String> = lab.dims().iter().map(|d| d.to_string()).collect();
    println!(
        "{} {} over F_{}^{}: dim {}, isotypic dims ({})",
        lab.group,
        lab.module,
        lab.prime,
        lab.field_degree,
        lab.dim,
        dims.join(",")
    );
    for d in &lab.decompositions {
        println!("  lemma {:<9} chi{} d={:?} sum={} {}", d.lemma, d.chi, d.d, d.sum, if d.holds { "ok" } else { "FAIL" });
    }
    if let Some(p) = &lab.prop45 {
        println!(
            "  degree-8: dim e4 M={} decomposition={} f_d2 onto={} f_d5 onto={} ker f_d2={} (rank identity {}, image identity {}) cor(ii)={}",
            p.dim_e4,
            p.decomposition_holds,
            p.f_d2_surjective,
            p.f_d5_surjective,
            p.kernel_dim_f_d2,
            p.kernel_rank_identity,
            p.kernel_image_identity,
            p.cor46_condition_ii
        );
    }
    let run = RunInfo {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        group: a.group.clone(),
        lemma: None,
        skip_heavy: false,
        seed: a.seed,
    };
    let report = Report::new(run, Vec::new(), vec![lab]);
    if let Some(p) = &a.json {
        write(p, &report.to_json())?;
    }
    if let Some(p) = &a.md {
        write(p, &report.to_markdown())?;
    }
    Ok(report.passed())
}
