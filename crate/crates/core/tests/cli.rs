use std::fs;
use std::process::Command;

use serde_json::Value;
use skewhilbert::cli::run;
use skewhilbert::corpus;

fn cli(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("skewhilbert").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

#[test]
fn strong_check_on_fig1_fails_with_witness() {
    let (code, out, _) = cli(&["check", "corpus:fig1", "--system", "strong-skew-hilbert"]);
    assert_eq!(code, 1);
    assert!(out.contains("[S2' at (a,b)]"), "{out}");
}

#[test]
fn skew_check_on_fig1_passes() {
    let (code, out, _) = cli(&["check", "corpus:fig1", "--system", "skew-hilbert"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS skew-hilbert"), "{out}");
}

#[test]
fn count_only_prints_bare_number() {
    let (code, out, _) = cli(&["search", "--size", "1", "--system", "hilbert", "--count-only"]);
    assert_eq!((code, out.trim()), (0, "1"));
}

#[test]
fn json_and_text_agree() {
    let cases: &[&[&str]] = &[
        &["check", "corpus:fig1", "--system", "strong-skew-hilbert"],
        &["check", "corpus:mo2", "--system", "sectionally-pc-lattice", "--all"],
        &["classify", "corpus:fig5"],
        &["filters", "corpus:fig7", "--kind", "strong-filter", "--check", "{d,e,f,1}"],
        &["congruences", "corpus:fig6", "--check", "{a,b|c|d,e,f,g,1}"],
        &["search", "--system", "skew-hilbert", "--size", "3"],
    ];
    for args in cases {
        let (code, text, _) = cli(args);
        let (jcode, doc) = json(args);
        assert_eq!(code, jcode, "{args:?}");
        assert_eq!(doc["pass"].as_bool(), Some(code == 0), "{args:?}");
        let items = doc["items"].as_array().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        for (i, item) in items.iter().enumerate() {
            let status = match item["pass"].as_bool() {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "----",
            };
            let mut line = format!("{status} {}: {}", item["name"].as_str().unwrap(), item["detail"].as_str().unwrap());
            if let Some(c) = item.get("clause").and_then(Value::as_str) {
                let w: Vec<&str> = item["witness"].as_array().map_or(vec![], |a| a.iter().map(|v| v.as_str().unwrap()).collect());
                line.push_str(&format!(" [{c} at ({})]", w.join(",")));
            }
            assert_eq!(lines[i], line, "{args:?}");
        }
        let body = doc.get("body").and_then(Value::as_str).map_or(String::new(), |b| {
            if b.ends_with('\n') { b.to_string() } else { format!("{b}\n") }
        });
        assert_eq!(lines.len(), items.len() + body.lines().count(), "{args:?}");
        assert!(text.ends_with(&body), "{args:?}");
    }
}

#[test]
fn fig7_verification_passes() {
    let (code, out, _) = cli(&["verify-paper", "--only", "fig7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS fig7 1-class is not a strong filter"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn corrupted_manifest_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let man = corpus::manifest_text("fig5").unwrap().replace("set = \"{e,1}\"", "set = \"{d,e,1}\"");
    fs::write(dir.path().join("fig5.alg"), corpus::algebra_text("fig5").unwrap()).unwrap();
    fs::write(dir.path().join("fig5.toml"), man).unwrap();
    let (code, out, _) = cli(&["verify-paper", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let failing: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{out}");
    assert!(failing[0].starts_with("FAIL fig5 dense elements"), "{out}");
}

#[test]
fn corrupted_table_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let alg = corpus::algebra_text("fig5").unwrap().replace("e: 0 a b c d 1 1", "e: a a b c d 1 1");
    fs::write(dir.path().join("fig5.alg"), alg).unwrap();
    fs::write(dir.path().join("fig5.toml"), corpus::manifest_text("fig5").unwrap()).unwrap();
    let (code, out, err) = cli(&["verify-paper", "--dir", dir.path().to_str().unwrap()]);
    assert_ne!(code, 0, "{out}{err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, err) = cli(&["--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bogus"));
    assert_eq!(cli(&["check", "corpus:nope", "--system", "skew-hilbert"]).0, 2);
}

#[test]
fn quotient_by_non_strong_partition_exits_one() {
    let (code, _, err) = cli(&["quotient", "corpus:fig6", "--partition", "{a,b|c|d,e,f,g,1}"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewhilbert"))
        .args(["check", "corpus:fig1", "--system", "strong-skew-hilbert"])
        .output()
        .unwrap();
    let (code, text, _) = cli(&["check", "corpus:fig1", "--system", "strong-skew-hilbert"]);
    assert_eq!(out.status.code(), Some(code));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn emitted_models_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["search", "--system", "strong-skew-hilbert", "--size", "4", "--count-only", "--emit", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len().to_string(), out.trim());
    for f in files {
        let p = f.unwrap().path();
        let (c, _, _) = cli(&["check", p.to_str().unwrap(), "--system", "strong-skew-hilbert"]);
        assert_eq!(c, 0, "{}", p.display());
    }
}
