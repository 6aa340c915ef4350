use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosscap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("crosscap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn genus_of_a_listed_scheme() {
    let out = run(&["genus", "--perm", "1 -6 5 -4 3 -2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["crosscap_number"], 3);
    assert_eq!(v["orientable"], false);
}

#[test]
fn draw_writes_json_and_svg() {
    let (j, s) = (tmp("pair.json"), tmp("pair.svg"));
    let out = run(&[
        "draw",
        "--perm",
        "1 -2",
        "--out-json",
        j.to_str().unwrap(),
        "--out-svg",
        s.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "perfect");
    assert_eq!(v["crosscaps"], 1);
    assert!(std::fs::read_to_string(&s).unwrap().starts_with("<svg"));
    let check = run(&["verify", "--perm", "1 -2", "--drawing", j.to_str().unwrap()]);
    let r = json(&check);
    assert_eq!(r["valid"], true);
    assert_eq!(r["perfect"], true);
}

#[test]
fn exceptional_draw_is_a_success() {
    let out = run(&["draw", "--perm", "1 3 2 4 -8 -6 -7 -5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "exceptional");
    assert_eq!(v["classification"]["block_pair_certificate"]["genus"], 5);
}

#[test]
fn classify_reports_the_certificate() {
    let v = json(&run(&["classify", "--perm", "1 3 2 4 -8 -6 -7 -5"]));
    assert_eq!(v["verdict"], "exceptional_reduced");
    assert_eq!(
        v["block_pair_certificate"]["positive_frames"],
        serde_json::json!([1, 4])
    );
}

#[test]
fn census_lists_eight_maximal_genus_three_schemes() {
    let v = json(&run(&[
        "census",
        "--genus",
        "3",
        "--maximal",
        "--jobs",
        "2",
    ]));
    assert_eq!(v["schemes"].as_array().unwrap().len(), 8);
}

#[test]
fn permutation_from_a_file() {
    let f = tmp("perm.txt");
    std::fs::write(&f, "1 -2 3 -4\n").unwrap();
    let v = json(&run(&["sort", "--file", f.to_str().unwrap()]));
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn distance_both_ways() {
    let v = json(&run(&["distance", "--perm", "1 -6 5 -4 3 -2", "--exact"]));
    assert_eq!(v["distance"], 3);
    let v = json(&run(&["distance", "--perm", "1 -6 5 -4 3 -2", "--hp"]));
    assert_eq!(v["distance"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["genus", "--perm", "1 1"]).status.code(), Some(2));
    assert_eq!(run(&["genus"]).status.code(), Some(2));
    assert_eq!(run(&["sort", "--perm", "1 2 4 3"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--genus", "5"]).status.code(), Some(1));
    assert_eq!(
        run(&["search", "--perm", "1 3 2 4 -8 -6 -7 -5", "--budget", "50"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["distance", "--perm", "1 -6 5 -4 3 -2 8 -7", "--budget", "5"])
            .status
            .code(),
        Some(3)
    );
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(
        run(&[
            "verify",
            "--perm",
            "1 -2",
            "--drawing",
            bad.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn search_finds_and_exhausts() {
    let v = json(&run(&["search", "--perm", "1 -2 3 -4", "--fantastic"]));
    assert_eq!(v["search"]["outcome"], "found");
    let v = json(&run(&["search", "--perm", "1 -3 -4 2", "--fantastic"]));
    assert_eq!(v["search"]["outcome"], "exhausted");
}

#[test]
fn structural_subcommands() {
    let v = json(&run(&["blocks", "--perm", "1 3 2 4 -5"]));
    assert!(v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["trivial"] == false));
    let v = json(&run(&["reduce", "--perm", "1 3 2 4 -5"]));
    assert_eq!(v["root"], serde_json::json!([1, -2]));
    let v = json(&run(&["faces", "--perm", "1 -2"]));
    assert_eq!(v["count"], 1);
}
