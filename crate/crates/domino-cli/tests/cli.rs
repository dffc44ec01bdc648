use std::path::PathBuf;
use std::process::{Command, Output};

fn domino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("domino-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rank_one_insert() {
    let o = domino(&["rs", "insert", "--kind", "C", "--word", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let horizontal = serde_json::json!([{"label": 1, "cells": [[1, 1], [1, 2]]}]);
    assert_eq!(v["left"]["dominos"], horizontal);
    assert_eq!(v["right"]["dominos"], horizontal);
}

#[test]
fn insert_then_extract() {
    let o = domino(&["rs", "insert", "--kind", "B", "--word", "3,-1,2"]);
    let path = scratch("pair.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let back = domino(&["rs", "extract", "--pair", path.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back).trim(), "3,-1,2");
}

#[test]
fn operator_application() {
    let o = domino(&["rs", "insert", "--kind", "C", "--word", "3,-1,2"]);
    let path = scratch("op.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let a = domino(&["op", "apply", "--ops", "T:2,3", "--pair", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a).lines().count(), 1);
    let bad = domino(&["op", "apply", "--ops", "X:1", "--pair", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn orbit_campaign_exit_codes() {
    let ok = domino(&["orbit", "check", "--kind", "C", "--max-rank", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    let fail = domino(&["orbit", "check", "--kind", "C", "--shape", "5,3,3,1", "--exclude", "s-family"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("FAIL"));
}

#[test]
fn reports_are_deterministic() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    for p in [&a, &b] {
        let o = domino(&["--threads", "2", "isotypic", "verify", "--rank", "3", "--kind", "B", "--json-report", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&text).unwrap();
    assert_eq!(v["schema"], "domino-isotypic/1");
    let o = scratch("o.json");
    domino(&["orbit", "check", "--kind", "B", "--max-rank", "3", "--json-report", o.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&o).unwrap()).unwrap();
    assert_eq!(v["schema"], "domino-orbit/1");
}

#[test]
fn usage_errors() {
    assert_eq!(domino(&["orbit", "check", "--kind", "Q"]).status.code(), Some(2));
    assert_eq!(domino(&["isotypic", "verify", "--rank", "6"]).status.code(), Some(2));
    assert_eq!(domino(&["cells", "compute", "--max-rank", "5"]).status.code(), Some(2));
    assert_eq!(domino(&["tableaux", "enumerate", "--kind", "C", "--shape", "4,2,2,1"]).status.code(), Some(2));
    assert_eq!(domino(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn rsigma_and_c6() {
    let o = domino(&["isotypic", "rsigma", "--kind", "C", "--element", "1,2", "--sigma", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "+ 1,2  (4)");
    let c6 = domino(&["isotypic", "c6"]);
    assert_eq!(c6.status.code(), Some(0));
    assert!(stdout(&c6).contains("R_(5,3,3,1) = [1, 1, -1, -1]"));
}

#[test]
fn enumerate_and_render() {
    let o = domino(&["tableaux", "enumerate", "--kind", "C", "--shape", "2,2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    let r = domino(&["render", "--word=-1", "--kind", "C"]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("left:"));
}

#[test]
fn cells_with_cache() {
    let dir = scratch("cache");
    std::fs::create_dir_all(&dir).unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_domino"))
            .args(["cells", "compute", "--max-rank", "3"])
            .env("DOMINO_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.join("kl-n3.jsonl").exists());
    assert_eq!(stdout(&run()), stdout(&first));
}
