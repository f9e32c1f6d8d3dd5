use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_novikov-knot"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trefoil_alexander_is_monic() {
    let o = run(&["alexander", "--braid", "2: 1 1 1", "--trivial-rep"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("verdict: monic"), "{s}");
    assert!(s.contains("normalized: (1 - t + t^2) / (1 - t)"), "{s}");
}

#[test]
fn conway_report_and_scaled_bound() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let pres = fixture("conway.pres");
    let o = bin()
        .args(["novikov", "--presentation"])
        .arg(&pres)
        .args(["--search-reps", "k=5", "class=3cycle", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&report);
    assert_eq!(r["schema"], "v1");
    assert_eq!(r["lower_bound"], 2);
    assert_eq!(r["raw_lower_bound"], "2/5");
    assert_eq!(r["conventions"]["representation"], "right");
    let best = r["best"].as_u64().unwrap() as usize;
    assert!(r["representations"][best]["profile"]["q_lower"]["1"].as_u64().unwrap() >= 1);

    let scaled = dir.path().join("scaled.json");
    let o = bin()
        .args(["bound", "--profile"])
        .arg(&report)
        .args(["--copies", "10", "--upper", "20 (scaled construction)", "--out"])
        .arg(&scaled)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = json(&scaled);
    assert_eq!(s["lower_bound"], 4);
    assert_eq!(s["raw_lower_bound"], "4");
    assert_eq!(s["upper"]["value"], 20);
    assert_eq!(s["conclusion"], "4 <= MN <= 20");
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let pres = fixture("conway.pres");
    let go = |workers: &str| {
        bin()
            .env("NOVIKOV_KNOT_WORKERS", workers)
            .args(["novikov", "--presentation"])
            .arg(&pres)
            .args(["--search-reps", "k=5 class=3cycle", "--out", "-"])
            .output()
            .unwrap()
            .stdout
    };
    let a = go("1");
    assert!(!a.is_empty());
    assert_eq!(a, go("4"));
    assert_eq!(a, go("1"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_pres = dir.path().join("bad.pres");
    std::fs::write(&bad_pres, "generators: a b\nrel: a = c\n").unwrap();
    let o = bin().args(["parse", "--presentation"]).arg(&bad_pres).output().unwrap();
    assert_eq!(o.status.code(), Some(1));

    let bad_rep = dir.path().join("bad.rep");
    std::fs::write(&bad_rep, "s1: (12)\ns2: (13)\ns3: (12)\n").unwrap();
    let o = bin()
        .args(["reps", "verify", "--fixture", "trefoil", "--rep"])
        .arg(&bad_rep)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn searched_reps_feed_back_as_files() {
    let o = run(&["reps", "search", "--fixture", "conway", "k=5", "class=3cycle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let second = text.split("\n\n").find(|block| block.contains("image order 60")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("h.rep");
    std::fs::write(&rep, second).unwrap();
    let o = bin()
        .args(["reps", "verify", "--fixture", "conway", "--rep"])
        .arg(&rep)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn braid_presentation_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&["parse", "--braid", "3: 1 -2 1 -2"]);
    let path = dir.path().join("fig8.pres");
    std::fs::write(&path, &first.stdout).unwrap();
    let second = bin().args(["parse", "--presentation"]).arg(&path).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
}

fn write_manifest(dir: &Path, jobs: Value) -> PathBuf {
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string(&jobs).unwrap()).unwrap();
    path
}

#[test]
fn batch_over_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let names = ["unknot", "trefoil", "figure-eight", "kinoshita-terasaka", "conway"];
    let jobs: Vec<Value> = names
        .iter()
        .map(|n| serde_json::json!({ "fixture": n, "operations": ["alexander", "novikov"] }))
        .collect();
    let manifest = write_manifest(dir.path(), Value::Array(jobs));
    let out = dir.path().join("summary.json");
    let o = bin().arg("batch").arg(&manifest).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (row, name) in rows.iter().zip(names) {
        assert_eq!(row["job"], name);
        assert_eq!(row["ok"], true);
    }
}

#[test]
fn batch_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.pres"), "generators: s1\nrel: s1 = s9\n").unwrap();
    let jobs = serde_json::json!([
        { "fixture": "unknot", "operations": ["bound"] },
        { "fixture": "trefoil", "operations": ["bound"] },
        { "presentation": "broken.pres", "operations": ["bound"] },
        { "braid": "3: 1 -2 1 -2", "operations": ["alexander"] },
        { "fixture": "trefoil", "operations": ["novikov"], "out": "trefoil.json" },
    ]);
    let manifest = write_manifest(dir.path(), jobs);
    let o = bin().arg("batch").arg(&manifest).args(["--out", "-"]).output().unwrap();
    let rows: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ok: Vec<bool> = rows.as_array().unwrap().iter().map(|r| r["ok"] == true).collect();
    assert_eq!(ok, vec![true, true, false, true, true]);
    assert_eq!(o.status.code(), Some(1));
    assert!(dir.path().join("trefoil.json").exists());

    let empty = write_manifest(dir.path(), serde_json::json!([]));
    let o = bin().arg("batch").arg(&empty).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unknot_bracket_closes_at_zero() {
    let o = run(&["bound", "--fixture", "unknot", "--upper", "0", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["lower_bound"], 0);
    assert_eq!(r["conclusion"], "MN = 0");
}
