use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grpalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn modlab_regular_psl27_dims() {
    let o = grpalg(&["modlab", "--group", "psl27", "--prime", "43", "--module", "regular"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isotypic dims (1,9,9,36,49,64)"), "{}", stdout(&o));
}

#[test]
fn modlab_rejects_prime_dividing_order() {
    let o = grpalg(&["modlab", "--prime", "7", "--group", "psl27"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("7 divides |G| = 168"));
}

#[test]
fn modlab_permutation_module_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lab.json");
    let o = grpalg(&["modlab", "--group", "psl27", "--module", "perm:S4_1", "--seed", "9", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema"], "grpalg-report/v1");
    assert_eq!(v["run"]["seed"], 9);
    assert_eq!(v["modlab"][0]["dim"], 7);
}

#[test]
fn modlab_rejects_bad_module_kind() {
    let o = grpalg(&["modlab", "--group", "a6", "--module", "induced"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_lemma_writes_one_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let md = dir.path().join("out.md");
    let o = grpalg(&["verify", "--lemma", "2.1", "--json", json.to_str().unwrap(), "--md", md.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&json);
    let names: Vec<&str> = v["lemmas"].as_array().unwrap().iter().map(|l| l["lemma"].as_str().unwrap()).collect();
    assert_eq!(names, ["tables", "2.1"]);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["run"]["seed"], 0);
    let text = fs::read_to_string(&md).unwrap();
    assert!(text.contains("## lemma 2.1"));
    assert!(text.contains("`2.1(4)/q1`"));
}

#[test]
fn verify_group_psl27_runs_four_lemmas_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("psl27.json");
    let o = grpalg(&["verify", "--group", "psl27", "--workers", "2", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&json);
    let names: Vec<&str> = v["lemmas"].as_array().unwrap().iter().map(|l| l["lemma"].as_str().unwrap()).collect();
    assert_eq!(names, ["tables", "2.1", "2.2", "2.3", "2.4"]);
}

#[test]
fn skip_heavy_marks_ideal_checks_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("skip.json");
    let o = grpalg(&["verify", "--group", "psl28", "--lemma", "3.2", "--skip-heavy", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&json);
    let checks = v["lemmas"][1]["checks"].as_array().unwrap();
    let skipped: Vec<&str> =
        checks.iter().filter(|c| c["verdict"] == "skipped").map(|c| c["name"].as_str().unwrap()).collect();
    assert!(skipped.iter().any(|n| n.starts_with("3.2(3)")));
    assert!(skipped.iter().any(|n| n.starts_with("3.2(4)")));
    assert!(checks.iter().all(|c| c["verdict"] != "fail"));
    assert!(v["summary"]["skipped"].as_u64().unwrap() >= 4);
}

#[test]
fn unknown_group_and_lemma_are_usage_errors() {
    assert_eq!(grpalg(&["verify", "--group", "psl29"]).status.code(), Some(2));
    assert_eq!(grpalg(&["verify", "--lemma", "9.9"]).status.code(), Some(2));
    assert_eq!(grpalg(&["verify", "--group", "psl27", "--lemma", "4.1"]).status.code(), Some(2));
}

#[test]
fn certificates_round_trip_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let o = grpalg(&["certificates", "--lemma", "2.1", "--certs", certs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut files: Vec<_> = fs::read_dir(&certs).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.iter().any(|f| f.ends_with("2.1_4_q1.solver.json")));
    assert!(files.iter().any(|f| f.ends_with("2.1_4_q1.fixture.json")));
    let fixture = read_json(&certs.join("2.1_4_q1.fixture.json"));
    assert_eq!(fixture["provenance"], "paper-§5");

    let ok = grpalg(&["check", certs.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains(&format!("{} certificates checked, all hold", files.len())));

    let target = certs.join("2.1_5_q3.solver.json");
    let mut v = read_json(&target);
    let coeffs = v["witness"][0][1]["coeffs"].as_array_mut().unwrap();
    let old = coeffs[0].as_str().unwrap().to_string();
    coeffs[0] = Value::String(if old == "3" { "5".into() } else { "3".into() });
    fs::write(&target, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let bad = grpalg(&["check", certs.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL 2.1(5)/q3"), "{}", stdout(&bad));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (run, workers) in [("a", "1"), ("b", "3")] {
        let json = dir.path().join(format!("{run}.json"));
        let md = dir.path().join(format!("{run}.md"));
        let certs = dir.path().join(format!("{run}-certs"));
        let o = grpalg(&[
            "verify",
            "--lemma",
            "2.1",
            "--seed",
            "5",
            "--workers",
            workers,
            "--json",
            json.to_str().unwrap(),
            "--md",
            md.to_str().unwrap(),
            "--certs",
            certs.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut files: Vec<_> = fs::read_dir(&certs).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        let certs: Vec<(String, Vec<u8>)> = files
            .iter()
            .map(|f| (f.file_name().unwrap().to_string_lossy().into_owned(), fs::read(f).unwrap()))
            .collect();
        outputs.push((fs::read(&json).unwrap(), fs::read(&md).unwrap(), certs));
    }
    assert!(!outputs[0].2.is_empty());
    assert_eq!(outputs[0], outputs[1]);
}
