use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::Ordering;
use std::sync::Arc;

use serde_json::Value;

use qsh::cache::{FileCache, CACHE_VERSION};
use qsh::config::{parse_config, parse_config_str, Overrides};
use qshuffle::bimodule::{contents_up_to, BasisStore};
use qshuffle::{Content, Field, Generic};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn qsh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsh")).args(args).output().unwrap()
}

fn run_to(dir: &Path, name: &str, config: &Path, task: &str, extra: &[&str]) -> (Output, String) {
    let out = dir.join(name);
    let mut args = vec![task, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = qsh(&args);
    let text = fs::read_to_string(&out).unwrap_or_default();
    (o, text)
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const SL2: &str = r#"{
  "cartan": { "matrix": [[2]], "d": [1] },
  "lambda": [2],
  "regime": { "kind": "generic" },
  "t_max": 5,
  "n_max": 2,
  "tasks": ["theorem-a"]
}"#;

#[test]
fn sample_configs_are_valid() {
    for name in ["sl2_generic.json", "sl2_root_of_unity_3.json", "sl3_generic.json"] {
        let cfg = parse_config(&configs().join(name), &Overrides::default()).unwrap();
        assert!(!cfg.semantic.tasks.is_empty(), "{name}");
    }
}

#[test]
fn all_violations_are_reported_together() {
    let text = r#"{
      "cartan": { "matrix": [[2]], "d": [1] },
      "lambda": [-1],
      "regime": { "kind": "root_of_unity", "l": 4 },
      "t_max": 5,
      "n_max": 2,
      "tasks": ["theorem-z"],
      "jobs": 0
    }"#;
    let errs = parse_config_str(text, &Overrides::default()).unwrap_err().0;
    assert_eq!(errs.len(), 4, "{errs:?}");
    assert!(errs.iter().any(|e| e.contains("dominant")));
    assert!(errs.iter().any(|e| e.contains("odd")));
    assert!(errs.iter().any(|e| e.contains("theorem-z")));
    assert!(errs.iter().any(|e| e.contains("jobs")));

    let bad_cartan = r#"{ "cartan": { "matrix": [[2, -1], [0, 2]], "d": [1, 1] }, "lambda": [1], "regime": { "kind": "generic" }, "t_max": 3, "n_max": 1 }"#;
    let errs = parse_config_str(bad_cartan, &Overrides::default()).unwrap_err().0;
    assert!(errs.iter().any(|e| e.starts_with("cartan")));
    assert!(errs.iter().any(|e| e.starts_with("lambda")));

    assert!(parse_config_str("{ \"cartan\": 3 }", &Overrides::default()).is_err());
}

#[test]
fn invalid_config_exits_nonzero_with_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{ "cartan": { "matrix": [[2]], "d": [1] }, "lambda": [-2], "regime": { "kind": "root_of_unity", "l": 4 }, "t_max": 3, "n_max": 1 }"#,
    );
    let (o, _) = run_to(dir.path(), "r.json", &cfg, "all", &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("dominant") && err.contains("odd"), "{err}");
}

#[test]
fn hash_tracks_semantic_fields_only() {
    let base: Value = serde_json::from_str(SL2).unwrap();
    let hash = |v: &Value| parse_config_str(&v.to_string(), &Overrides::default()).unwrap().hash();
    let h0 = hash(&base);
    let edits: Vec<(&str, Value)> = vec![
        ("lambda", serde_json::json!([1])),
        ("regime", serde_json::json!({ "kind": "root_of_unity", "l": 5 })),
        ("t_max", serde_json::json!(4)),
        ("n_max", serde_json::json!(1)),
        ("pbw_degree_max", serde_json::json!(3)),
        ("p_max", serde_json::json!(2)),
        ("w0_word", serde_json::json!([1])),
        ("tasks", serde_json::json!(["theorem-a", "theorem-b"])),
        ("cartan", serde_json::json!({ "matrix": [[2]], "d": [2] })),
    ];
    for (field, value) in edits {
        let mut v = base.clone();
        v[field] = value;
        assert_ne!(hash(&v), h0, "changing {field} must change the hash");
    }
    let mut v = base.clone();
    v["jobs"] = serde_json::json!(4);
    v["cache_dir"] = serde_json::json!("/tmp/elsewhere");
    assert_eq!(hash(&v), h0);
    let o = Overrides { t_max: Some(4), ..Default::default() };
    assert_ne!(parse_config_str(SL2, &o).unwrap().hash(), h0);
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("sl3_generic.json");
    let (a, ra) = run_to(dir.path(), "a.json", &cfg, "all", &["--jobs", "1"]);
    let (b, rb) = run_to(dir.path(), "b.json", &cfg, "all", &["--jobs", "4"]);
    let (_, rc) = run_to(dir.path(), "c.json", &cfg, "all", &["--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
    assert_eq!(rb, rc);
}

#[test]
fn every_verdict_embeds_computed_and_oracle_values() {
    let dir = tempfile::tempdir().unwrap();
    let (o, text) = run_to(dir.path(), "r.json", &configs().join("sl2_generic.json"), "all", &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["config_sha256"].as_str().unwrap().len(), 64);
    let mut n = 0;
    for t in r["tasks"].as_array().unwrap() {
        assert_eq!(t["status"], "ok");
        for v in t["verdicts"].as_array().unwrap() {
            assert!(v.get("computed").is_some() && v.get("oracle").is_some() && v["oracle_source"].is_string());
            assert_eq!(v["pass"], true, "{v}");
            n += 1;
        }
    }
    assert_eq!(r["summary"]["verdicts"], n);
    // coinvariant bases are exact scalar strings keyed by content
    let basis = &r["tasks"][1]["tables"]["basis"];
    for (key, vectors) in basis.as_object().unwrap() {
        assert!(Content::parse_key(key).is_some());
        for v in vectors.as_array().unwrap() {
            for s in v.as_object().unwrap().values() {
                Generic::parse(s.as_str().unwrap()).unwrap();
            }
        }
    }
}

#[test]
fn theorem_a_for_twice_the_fundamental_weight() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", SL2);
    let (o, text) = run_to(dir.path(), "r.json", &cfg, "theorem-a", &[]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&text).unwrap();
    let v = &r["tasks"][0]["verdicts"];
    assert_eq!(v[0]["computed"], serde_json::json!({ "0;1": 1, "1;1": 1, "2;1": 1 }));
    assert_eq!(v[1]["computed"], serde_json::json!([0, 0]));
}

#[test]
fn theorem_b_for_sl3() {
    let dir = tempfile::tempdir().unwrap();
    let (o, text) = run_to(dir.path(), "r.json", &configs().join("sl3_generic.json"), "theorem-b", &[]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["tasks"].as_array().unwrap().len(), 1);
    let v = &r["tasks"][0]["verdicts"][0];
    assert_eq!(v["computed"], 6);
    assert_eq!(v["oracle"], 6);
}

#[test]
fn empty_task_list_gives_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{ "cartan": { "matrix": [[2]], "d": [1] }, "lambda": [1], "regime": { "kind": "generic" }, "t_max": 3, "n_max": 1, "tasks": [] }"#,
    );
    let (o, text) = run_to(dir.path(), "r.json", &cfg, "all", &[]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["tasks"], serde_json::json!([]));
    assert_eq!(r["summary"]["all_pass"], true);
}

#[test]
fn task_failures_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{ "cartan": { "matrix": [[2, -1], [-1, 2]], "d": [1, 1] }, "lambda": [1, 0], "regime": { "kind": "generic" },
             "t_max": 3, "n_max": 1, "tasks": ["koszul-root-of-unity", "prop-sln", "serre-dims"] }"#,
    );
    let (o, text) = run_to(dir.path(), "r.json", &cfg, "all", &[]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&text).unwrap();
    let t = r["tasks"].as_array().unwrap();
    assert_eq!(t[0]["status"], "error");
    assert_eq!(t[1]["status"], "error");
    assert_eq!(t[2]["status"], "ok");
    assert_eq!(t[2]["verdicts"][0]["pass"], true);
    assert_eq!(r["summary"]["errors"], 2);
}

#[test]
fn failing_verdict_sets_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let (o, text) = run_to(dir.path(), "r.json", &configs().join("sl2_root_of_unity_3.json"), "theorem-a", &[]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["summary"]["failed"], 1);
}

#[test]
fn command_line_overrides_apply() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", SL2);
    let (_, text) = run_to(dir.path(), "r.json", &cfg, "theorem-a", &["--tmax", "3", "--nmax", "1"]);
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["config"]["t_max"], 3);
    assert_eq!(r["config"]["n_max"], 1);
    assert_eq!(r["tasks"][0]["verdicts"][1]["computed"], serde_json::json!([0]));
}

#[test]
fn unknown_task_is_rejected() {
    let o = qsh(&["nope", "--config", "x.json", "--out", "y.json"]);
    assert_eq!(o.status.code(), Some(2));
}

fn store() -> BasisStore<Generic> {
    let d = qshuffle::CartanDatum::sl(3);
    let l = qshuffle::WeightSpec::new(&d, vec![1, 0]).unwrap();
    BasisStore::new(&d, Some(&l), qshuffle::Regime::Generic).unwrap()
}

fn file_cache(dir: &Path) -> Arc<FileCache> {
    let d = qshuffle::CartanDatum::sl(3);
    let l = qshuffle::WeightSpec::new(&d, vec![1, 0]).unwrap();
    Arc::new(FileCache::new(dir, &d, &l, qshuffle::Regime::Generic).unwrap())
}

#[test]
fn file_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let contents = contents_up_to(2, 1, 3);
    let c1 = file_cache(dir.path());
    let s1 = store().with_cache(c1.clone());
    s1.prefill(&contents);
    assert_eq!(c1.hits.load(Ordering::Relaxed), 0);
    let files = fs::read_dir(dir.path()).unwrap().count();
    assert!(files >= contents.len());

    let c2 = file_cache(dir.path());
    let s2 = store().with_cache(c2.clone());
    for c in &contents {
        assert_eq!(s2.basis(c).vectors(), s1.basis(c).vectors());
    }
    assert!(c2.hits.load(Ordering::Relaxed) >= contents.len());
    assert_eq!(c2.misses.load(Ordering::Relaxed), 0);
    assert_eq!(c2.invalid.load(Ordering::Relaxed), 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), files);
}

#[test]
fn corrupt_and_stale_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let target = Content::new(vec![1, 1], 1);
    let reference = store().basis(&target);
    let c = file_cache(dir.path());
    store().with_cache(c.clone()).basis(&target);
    let path = c.path(&target);

    fs::write(&path, "{ not json").unwrap();
    let c2 = file_cache(dir.path());
    assert_eq!(store().with_cache(c2.clone()).basis(&target).vectors(), reference.vectors());
    assert_eq!(c2.invalid.load(Ordering::Relaxed), 1);
    let rewritten: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rewritten["version"], CACHE_VERSION);

    // wrong scalar: parses fine but fails validation
    let mut v = rewritten.clone();
    v["vectors"][0][0][1] = Value::String("5".into());
    fs::write(&path, v.to_string()).unwrap();
    let c3 = file_cache(dir.path());
    assert_eq!(store().with_cache(c3.clone()).basis(&target).vectors(), reference.vectors());
    assert_eq!(c3.invalid.load(Ordering::Relaxed), 1);

    // another version: a plain miss
    let mut v = rewritten;
    v["version"] = Value::from(CACHE_VERSION + 1);
    fs::write(&path, v.to_string()).unwrap();
    let c4 = file_cache(dir.path());
    assert_eq!(store().with_cache(c4.clone()).basis(&target).vectors(), reference.vectors());
    assert_eq!(c4.invalid.load(Ordering::Relaxed), 0);
    assert_eq!(c4.misses.load(Ordering::Relaxed), 1);
    let healed: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(healed["version"], CACHE_VERSION);
}

#[test]
fn cached_runs_match_uncached_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cfg = configs().join("sl2_generic.json");
    let cache_arg = cache.to_str().unwrap();
    let (_, plain) = run_to(dir.path(), "a.json", &cfg, "all", &[]);
    let (cold, cold_r) = run_to(dir.path(), "b.json", &cfg, "all", &["--cache-dir", cache_arg]);
    let (warm, warm_r) = run_to(dir.path(), "c.json", &cfg, "all", &["--cache-dir", cache_arg]);
    assert_eq!(plain, cold_r);
    assert_eq!(plain, warm_r);
    assert!(String::from_utf8_lossy(&cold.stderr).contains("0 hits"));
    assert!(!String::from_utf8_lossy(&warm.stderr).contains(" 0 hits"));

    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    fs::write(&entry, "garbage").unwrap();
    let (again, again_r) = run_to(dir.path(), "d.json", &cfg, "all", &["--cache-dir", cache_arg]);
    assert_eq!(plain, again_r);
    assert!(String::from_utf8_lossy(&again.stderr).contains("warning: cache entry"));
}
