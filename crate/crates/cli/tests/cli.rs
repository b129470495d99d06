use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wheelhouse")).current_dir(dir).env_remove("WHEELHOUSE_CACHE").args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run_in(dir, args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> Option<i32> {
    run_in(dir, args).status.code()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(s: &jsonschema::JSONSchema, doc: &Value) {
    if let Err(errors) = s.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("invalid report: {msgs:?}\n{doc:#}");
    }
}

fn dims(json: &str, part: &str, n: u64) -> Vec<(u64, u64)> {
    let v: Value = serde_json::from_str(json).unwrap();
    v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["part"] == part && b["n"] == n)
        .map(|b| (b["d"].as_u64().unwrap(), b["dim"].as_u64().unwrap()))
        .collect()
}

#[test]
fn lie_wheel_part_has_hook_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let json = ok(dir.path(), &["--no-cache", "--format", "json", "wbar", "--operad", "lie", "--max-arity", "5"]);
    // Hooks (3), (2,1), (1,1,1) of 3, in degrees 1, 2, 3.
    assert_eq!(dims(&json, "wheeled", 3), vec![(1, 1), (2, 2), (3, 1)]);
    let text = ok(dir.path(), &["--no-cache", "wbar", "--operad", "lie", "--max-arity", "5"]);
    assert!(text.starts_with("# wbar lie trivial\n"));
}

#[test]
fn newfuchs_example_passes() {
    let dir = tempfile::tempdir().unwrap();
    let text = ok(dir.path(), &["--no-cache", "compare", "--theorem", "newfuchs", "--dimv", "4", "--weight", "1"]);
    assert!(text.starts_with("# newfuchs com PASS\n"), "{text}");
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("reports/newfuchs_com.json")).unwrap()).unwrap();
    for b in report["blocks"].as_array().unwrap() {
        if b["quantity"] == "full_homology" && b["d"] != 1 {
            assert_eq!(b["left"], 0, "{b}");
        }
    }
    assert!(dir.path().join("reports/newfuchs_com.txt").exists());
}

#[test]
fn cyclic_homology_of_com_is_cyc_of_the_suspension() {
    let dir = tempfile::tempdir().unwrap();
    let json = ok(dir.path(), &["--no-cache", "--format", "json", "hc", "--operad", "com", "--max-arity", "5"]);
    for n in 1..=5u64 {
        let fact: u64 = (1..n).product();
        let nonzero: Vec<_> = dims(&json, "cyclic", n).into_iter().filter(|&(_, x)| x > 0).collect();
        assert_eq!(nonzero, vec![(n - 1, fact)], "n = {n}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(d, &["--help"]), Some(0));
    assert_eq!(code(d, &["--version"]), Some(0));
    assert_eq!(code(d, &["frobnicate"]), Some(1));
    assert_eq!(code(d, &["bar"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "bar", "--operad", "com", "--max-arity", "0"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "wbar", "--operad", "com", "--max-degree", "0"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "bar", "--operad", "nosuch"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "mult", "--operad", "com", "--alpha", "1,2"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "compare", "--theorem", "main1", "--coeffs", "3"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "compare", "--theorem", "lqt", "--operad", "com"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "--jobs", "0", "bar", "--operad", "com"]), Some(1));
    let spec = |file: &str, text: &str| std::fs::write(d.join(file), text).unwrap();
    spec("dual.json", r#"{"name": "alg1", "max_arity": 1, "arity1_structure_constants": [[["0"]]], "weight_rule": {"ideal_weights": [1]}}"#);
    spec("com.json", r#"{"name": "com", "max_arity": 4}"#);
    // e₁e₁ = e₂, e₂e₁ = e₁: (e₁e₁)e₁ = e₁ but e₁(e₁e₁) = 0.
    spec(
        "skew.json",
        r#"{"name": "alg1", "max_arity": 1, "arity1_structure_constants": [[["0","1"],["0","0"]],[["1","0"],["0","0"]]], "weight_rule": {"ideal_weights": [1, 2]}}"#,
    );
    assert_eq!(code(d, &["--no-cache", "hc", "--algebra", "dual.json"]), Some(0));
    assert_eq!(code(d, &["--no-cache", "bar", "--operad", "com.json"]), Some(0));
    assert_eq!(code(d, &["--no-cache", "hc", "--algebra", "com.json"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "hc", "--algebra", "skew.json"]), Some(1));
    assert_eq!(code(d, &["--no-cache", "hc", "--algebra", "missing.json"]), Some(1));
}

#[test]
fn corrupted_cache_is_caught_by_the_d_squared_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["--cache-dir", "c", "bar", "--operad", "ass", "--max-arity", "4"];
    ok(d, &args);
    let table = std::fs::read_dir(d.join("c")).unwrap().next().unwrap().unwrap().path().join("comp_2_1_2.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    // Send the last basis element to the one before it.
    let entries = v["entries"].as_array_mut().unwrap();
    let last = entries.len() - 1;
    let target = entries[last][0][0].as_u64().unwrap() - 1;
    entries[last] = serde_json::json!([[target, "1"]]);
    std::fs::write(&table, v.to_string()).unwrap();
    let out = run_in(d, &args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d∘d"));
}

#[test]
fn output_is_identical_with_a_cold_cache_a_warm_cache_and_no_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for format in ["json", "csv", "text"] {
        for cmd in [
            vec!["wbar", "--operad", "ass", "--max-arity", "4", "--isotypic"],
            vec!["wbar", "--operad", "lie", "--wheeling", "completion", "--max-arity", "3"],
            vec!["ce", "--operad", "lie", "--dimv", "2", "--p", "1", "--q", "1", "--invariants"],
            vec!["compare", "--theorem", "main1", "--max-arity", "2", "--dimv", "3"],
        ] {
            let cache = d.join(format!("cache-{format}"));
            let _ = std::fs::remove_dir_all(&cache);
            let with = |extra: &[&str]| {
                let mut a: Vec<&str> = extra.to_vec();
                a.extend(["--format", format]);
                a.extend(&cmd);
                ok(d, &a)
            };
            let cache = cache.to_str().unwrap();
            let cold = with(&["--cache-dir", cache]);
            let warm = with(&["--cache-dir", cache]);
            let none = with(&["--no-cache"]);
            let threads = with(&["--no-cache", "--jobs", "2"]);
            assert_eq!(cold, warm, "{cmd:?}");
            assert_eq!(cold, none, "{cmd:?}");
            assert_eq!(cold, threads, "{cmd:?}");
        }
    }
}

#[test]
fn cache_directory_comes_from_the_environment_unless_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |env: bool, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_wheelhouse"));
        c.current_dir(d).env_remove("WHEELHOUSE_CACHE");
        if env {
            c.env("WHEELHOUSE_CACHE", d.join("from-env"));
        }
        assert!(c.args(args).output().unwrap().status.success());
    };
    run(true, &["bar", "--operad", "com", "--max-arity", "3"]);
    assert!(d.join("from-env").is_dir());
    run(true, &["--cache-dir", "flag", "bar", "--operad", "lie", "--max-arity", "3"]);
    assert!(d.join("flag").is_dir());
    run(false, &["bar", "--operad", "com", "--max-arity", "3"]);
    assert!(d.join("cache").is_dir());
    run(false, &["--no-cache", "--out", "x.txt", "bar", "--operad", "ass", "--max-arity", "3"]);
    assert!(std::fs::read_to_string(d.join("x.txt")).unwrap().starts_with("# bar ass"));
}

#[test]
fn json_output_validates_against_the_schema() {
    let s = schema();
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let runs: Vec<Vec<&str>> = vec![
        vec!["bar", "--operad", "prelie", "--max-arity", "3", "--isotypic"],
        vec!["wbar", "--operad", "com", "--wheeling", "completion", "--max-arity", "3", "--isotypic"],
        vec!["wbar", "--operad", "alg1-dual", "--max-arity", "1", "--max-weight", "0", "--max-degree", "3"],
        vec!["hc", "--operad", "ass", "--max-arity", "3"],
        vec!["ce", "--operad", "com", "--algebra", "sder+", "--dimv", "2", "--p", "1"],
        vec!["ce", "--operad", "com", "--algebra", "semidirect", "--dimv", "2"],
        vec!["compare", "--theorem", "main2", "--max-arity", "2", "--dimv", "3"],
        vec!["compare", "--theorem", "lqt", "--max-degree", "3"],
        vec!["compare", "--theorem", "calchom", "--operad", "lie", "--max-arity", "3"],
        vec!["compare", "--theorem", "semidirect", "--operad", "ass"],
        vec!["mult", "--operad", "lie", "--alpha", "2,1", "--beta", "1"],
    ];
    for cmd in runs {
        let mut a = vec!["--no-cache", "--format", "json"];
        a.extend(&cmd);
        let doc: Value = serde_json::from_str(&ok(d, &a)).unwrap();
        assert_valid(&s, &doc);
    }
    for entry in std::fs::read_dir(d.join("reports")).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            assert_valid(&s, &serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap());
        }
    }
    assert!(!s.is_valid(&serde_json::json!({"blocks": [{"n": 1}]})));
}

#[test]
fn csv_output_is_rectangular_and_quoted() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["--no-cache", "--format", "csv", "wbar", "--operad", "lie", "--max-arity", "3", "--isotypic"]);
    assert!(out.contains("\r\n"));
    let mut r = csv::Reader::from_reader(out.as_bytes());
    let header = r.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["part", "n", "w", "d", "dim", "isotypic", "untrusted"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    // Partitions with several parts contain commas and must come back intact.
    assert!(rows.iter().any(|row| row[5].contains("(1,1):")));
    for row in &rows {
        let dim: usize = row[4].parse().unwrap();
        let iso: usize = row[5].split_whitespace().map(|t| t.rsplit(':').next().unwrap().parse::<usize>().unwrap()).sum();
        assert!(row[5].is_empty() || iso <= dim);
    }
}
