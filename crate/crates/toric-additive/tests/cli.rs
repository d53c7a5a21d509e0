use std::io::Write;
use std::process::{Command, Output, Stdio};

use toric_additive::document::ClassificationDocument;
use toric_additive::render::classification_text;
use toric_additive_core::coxring::poly::Poly;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_toric-additive"));
    c.env_remove("TORIC_ADDITIVE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn classify_matches_golden_files() {
    for name in ["p2", "f1"] {
        let o = run(&["classify", name, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(&format!("{name}.json")), "{name}");
    }
    assert_eq!(stdout(&run(&["classify", "--example", "p2"])), golden("p2.txt"));
}

#[test]
fn document_round_trips() {
    for name in ["p1xp1", "example2", "p2", "f1", "p112", "f:3"] {
        let text = stdout(&run(&["classify", name, "--format", "json", "--verify"]));
        let doc: ClassificationDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(toric_additive::json::to_string(&doc), text);
        let again: ClassificationDocument = serde_json::from_str(&toric_additive::json::to_string(&doc)).unwrap();
        assert_eq!(again, doc);
        // Polynomial strings parse back and print identically.
        let actions = doc.actions.as_ref().unwrap();
        for s in actions.normalized.iter().chain(actions.non_normalized.iter().flatten()) {
            assert_eq!(Poly::parse(s).unwrap().to_string(), *s);
        }
        assert!(doc.action_maps().unwrap().is_some());
        assert!(doc.verification.as_ref().unwrap().all_passed);
    }
}

#[test]
fn text_and_json_agree() {
    for name in ["p2", "f1", "example2"] {
        let json = stdout(&run(&["classify", name, "--format", "json"]));
        let doc: ClassificationDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(stdout(&run(&["classify", name])), classification_text(&doc));
    }
}

#[test]
fn classification_examples() {
    let doc = |args: &[&str]| -> ClassificationDocument { serde_json::from_str(&stdout(&run(args))).unwrap() };
    let p2 = doc(&["classify", "p2", "--format", "json"]);
    assert_eq!((p2.num_classes, p2.d, p2.wide), (2, 1, false));
    let e2 = doc(&["classify", "example2", "--format", "json"]);
    assert_eq!((e2.num_classes, e2.wide), (1, true));
    assert_eq!(e2.actions.unwrap().normalized[..2], ["x1 + s1*x3*x4^2", "x2 + s2*x3^2*x4"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"rays":[[1,2],[-2,-1],[1,-1]]}"#).unwrap();
    let none = doc(&["classify", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert!(!none.admits_action);
    assert_eq!(none.num_classes, 0);
    assert!(none.actions.is_none());
}

#[test]
fn validate_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let ok = file("ok.json", r#"{"rays":[[1,0],[0,1],[-1,-1]]}"#);
    let o = run(&["validate", "-i", &ok]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: 3 rays, 3 maximal cones"));

    let incomplete = file("half.json", r#"{"rays":[[1,0],[0,1]]}"#);
    let o = run(&["validate", "-i", &incomplete]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not complete"));

    let scaled = file("scaled.json", r#"{"rays":[[2,0],[0,1],[-1,-1]]}"#);
    let o = run(&["validate", "-i", &scaled, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["error"].as_str().unwrap().contains("ray 1 is not primitive"));
    assert_eq!(run(&["validate", "-i", &scaled, "--normalize-rays"]).status.code(), Some(0));
    let flagged = file("flagged.json", r#"{"rays":[[2,0],[0,1],[-1,-1]],"normalize_rays":true}"#);
    assert_eq!(run(&["validate", "-i", &flagged]).status.code(), Some(0));

    let broken = file("broken.json", "{\"rays\": [[1, 0], ");
    assert_eq!(run(&["classify", "-i", &broken]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["classify"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--example", "p9"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn plain_text_input_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p2.txt");
    std::fs::write(&p, "# P2\n1 0\n0 1\n-1 -1\n").unwrap();
    let from_file = stdout(&run(&["actions", p.to_str().unwrap()]));
    let mut child = bin()
        .args(["actions", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 0\n0 1\n-1 -1\n").unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(stdout(&from_stdin), from_file);
    assert!(from_file.contains("x2 -> x2 + s1*x1 + s2*x3 + 1/2*s1^2*x3"));
}

#[test]
fn examples_and_roots() {
    assert_eq!(stdout(&run(&["examples", "f1"])), "1 0\n0 1\n-1 -1\n0 -1\n");
    assert_eq!(stdout(&run(&["examples", "f:2"])), "1 0\n0 1\n-1 -2\n0 -1\n");
    let names = stdout(&run(&["examples"]));
    for n in ["p1xp1", "example2", "p2", "f1", "p112", "f:a"] {
        assert!(names.lines().any(|l| l == n));
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["roots", "p2", "--format", "json"]))).unwrap();
    assert_eq!(v["count"], 6);
    assert_eq!(v["positive"], serde_json::json!([[-1, 0], [0, -1], [1, -1]]));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fan.svg");
    let o = run(&["render", "p1xp1", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"class="ray""#).count(), 4);
    assert_eq!(svg.matches("<circle").count(), 4);
    for label in ["p1", "p2", "p3", "p4", ">N<", ">M<"] {
        assert!(svg.contains(label), "{label}");
    }
}

#[test]
fn verify_report_and_seed() {
    let o = run(&["verify", "p112", "--format", "json", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["all_passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let iso = checks.iter().find(|c| c["name"] == "non_isomorphism").unwrap();
    assert!(!iso["witnesses"].as_array().unwrap().is_empty());

    let o = bin()
        .args(["verify", "p2", "--format", "json", "--seed", "3"])
        .env("TORIC_ADDITIVE_SEED", "9")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 9);
    let o = bin().args(["verify", "p2"]).env("TORIC_ADDITIVE_SEED", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn small_sweep() {
    let o = run(&["sweep", "--bound", "1", "--max-rays", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["report"]["fans"].as_u64().unwrap() > 0);
    assert_eq!(v["report"]["violations"], serde_json::json!({}));
}
