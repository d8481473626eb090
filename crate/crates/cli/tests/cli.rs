use std::path::PathBuf;
use std::process::{Command, Output};

fn webdimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_webdimer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn unknown_flags_exit_two() {
    let o = webdimer(&["measure", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(webdimer(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    let o = webdimer(&["measure", "--network", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = webdimer(&["webmeasure", "--network", &data("ex51.json"), "-r", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn measure_prints_the_polynomial() {
    let o = webdimer(&["measure", "--network", &data("ex51.json"), "--subset", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("D[1,3] = a*e"), "{}", stdout(&o));
}

#[test]
fn seeded_reports_are_identical() {
    let (a, b) = (scratch("fact_a.json"), scratch("fact_b.json"));
    for out in [&a, &b] {
        let o = webdimer(&[
            "verify",
            "factorization",
            "--network",
            &data("ex51.json"),
            "-r",
            "3",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["passed"], serde_json::json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 20);
}

#[test]
fn failed_checks_exit_one() {
    let o = webdimer(&["positroid-dim", "--example", "top-2-4", "-r", "2", "--expect", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL expected rank"));
    let o = webdimer(&["positroid-dim", "--example", "top-2-4", "-r", "2", "--expect", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn moves_and_welldefinedness() {
    let o = webdimer(&[
        "verify",
        "welldefined",
        "--network",
        &data("ex51.json"),
        "--r",
        "3",
        "--move",
        "spider",
        "--face",
        "w_sw,b_nw,w_ne,b_se",
        "--samples",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = scratch("gauge.json");
    let o = webdimer(&[
        "move",
        "--network",
        &data("ex51.json"),
        "--move",
        "gauge",
        "--vertex",
        "b_nw",
        "--alpha",
        "3/2",
        "--check",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["output"]["scalar"], serde_json::json!("2/3"));
    assert_eq!(v["checks"][0]["passed"], serde_json::json!(true));
}

#[test]
fn webmeasure_writes_the_invariant() {
    let out = scratch("web.json");
    let o = webdimer(&["webmeasure", "--network", &data("ex51.json"), "-r", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 weblike subgraphs"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["output"]["subgraphs"].as_array().unwrap().len(), 3);
    assert_eq!(v["output"]["invariant"]["r"], serde_json::json!(3));
}

#[test]
fn skein_and_duality() {
    let o = webdimer(&["skein", "--relation", "square", "--r", "3", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
    let o = webdimer(&["skein", "--relation", "bigon", "--r", "4", "--params", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = webdimer(&["duality", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS signed permutation"));
    assert_eq!(webdimer(&["duality", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn suite_of_worked_examples() {
    let o = webdimer(&["suite", "--paper-examples", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("suite: pass"));
    assert!(!text.contains("FAIL"));
}
