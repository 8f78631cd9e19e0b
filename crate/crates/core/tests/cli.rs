use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cwpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = cwpoly(args);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EXAMPLE_ORDER: [[u32; 4]; 6] = [
    [2, 0, 0, 0],
    [1, 0, 1, 0],
    [1, 1, 0, 1],
    [0, 0, 2, 0],
    [0, 1, 1, 1],
    [0, 2, 0, 2],
];

#[test]
fn check_modes() {
    let example = data("example.json");
    let squares = data("two_squares.json");
    assert_eq!(
        run(&["check", "--mode", "cwp", path(&example)]),
        (0, json!({"mode": "cwp", "holds": true}))
    );
    assert_eq!(
        run(&["check", "--mode", "polymatroidal", path(&squares)]),
        (
            1,
            json!({"mode": "polymatroidal", "holds": false,
                   "witness": {"u": [2, 0], "v": [0, 2], "i": 1, "degree": 2}})
        )
    );
    let (code, out) = run(&["check", "--mode", "exchange-bounded", path(&example)]);
    assert_eq!(code, 0);
    assert_eq!(out["bounded"], json!(true));
    assert_eq!(out["cap"], json!(6));
    let (code, out) = run(&["check", "--mode", "dual-bounded", "--cap", "5", path(&example)]);
    assert_eq!(code, 0);
    assert_eq!(out["cap"], json!(5));
    assert_eq!(run(&["check", "--mode", "cwp", path(&squares)]).0, 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(cwpoly(&["check", "--mode", "cwp", path(&empty)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(cwpoly(&["check", "--mode", "cwp", path(&missing)]).status.code(), Some(2));
    assert_eq!(cwpoly(&["check", "--mode", "nope", path(&empty)]).status.code(), Some(2));
}

#[test]
fn text_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ideal.txt");
    std::fs::write(&file, "# example\nx1^2\nx1*x3\nx1*x2*x4\nx3^2\nx2*x3*x4\nx2^2*x4^2\n").unwrap();
    let (code, out) = run(&["order", path(&file)]);
    assert_eq!(code, 0);
    assert_eq!(out["order"], json!(EXAMPLE_ORDER));
}

#[test]
fn order_strategies() {
    let (code, out) = run(&["order", path(&data("example.json"))]);
    assert_eq!(code, 0);
    assert_eq!(out["order"], json!(EXAMPLE_ORDER));
    assert_eq!(out["valid"], json!(true));
    assert_eq!(out["certificate"][1], json!({"position": 3, "colon_generators": [[1, 0, 0, 0], [0, 0, 1, 0]]}));

    let (code, out) = run(&["order", "--strategy", "search", path(&data("example.json"))]);
    assert_eq!(code, 0);
    assert_eq!(out["valid"], json!(true));

    assert_eq!(
        run(&["order", "--strategy", "search", path(&data("two_squares.json"))]),
        (1, json!({"status": "none found"}))
    );
    let (code, out) = run(&["order", path(&data("two_squares.json"))]);
    assert_eq!(code, 1);
    assert_eq!(out["witness"]["i"], json!(1));

    let (code, out) = run(&["order", path(&data("principal.json"))]);
    assert_eq!(code, 0);
    assert_eq!(out["order"], json!([[1, 1, 2]]));
}

#[test]
fn verify_order_examples() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "x1^2\nx1*x3\nx1*x2*x4\nx3^2\nx2*x3*x4\nx2^2*x4^2\n").unwrap();
    let (code, out) = run(&["verify-order", path(&data("example.json")), path(&good)]);
    assert_eq!(code, 0);
    assert_eq!(out["valid"], json!(true));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"order": [[2,0,0,0],[0,2,0,2],[1,0,1,0],[1,1,0,1],[0,0,2,0],[0,1,1,1]]}"#).unwrap();
    let (code, out) = run(&["verify-order", path(&data("example.json")), path(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(out["valid"], json!(false));

    let short = dir.path().join("short.txt");
    std::fs::write(&short, "x1^2\n").unwrap();
    assert_eq!(cwpoly(&["verify-order", path(&data("example.json")), path(&short)]).status.code(), Some(2));
}

#[test]
fn construct_examples() {
    assert_eq!(
        run(&["construct", "fatpoints", "--sets", "1,2,3/1,3,4", "--k", "2,2", "--n", "4"]).1,
        json!({"n": 4, "generators": [[2,0,0,0],[1,1,0,1],[1,0,1,0],[0,2,0,2],[0,1,1,1],[0,0,2,0]]})
    );
    assert_eq!(
        run(&["construct", "veronese", "--a", "1,1,1", "--d", "2"]),
        (0, json!({"n": 3, "generators": [[1,1,0],[1,0,1],[0,1,1]]}))
    );
    assert_eq!(
        run(&["construct", "borel", "--u", "x1*x2"]),
        (0, json!({"n": 2, "generators": [[2,0],[1,1]]}))
    );
    assert_eq!(
        run(&["construct", "power", "--k", "2", path(&data("two_squares.json"))]).1,
        json!({"n": 2, "generators": [[4,0],[2,2],[0,4]]})
    );
    assert_eq!(
        run(&["construct", "component", "--j", "3", path(&data("two_squares.json"))]).1,
        json!({"n": 2, "generators": [[3,0],[2,1],[1,2],[0,3]]})
    );
    assert_eq!(
        run(&["construct", "intersect", path(&data("example.json")), path(&data("two_squares.json"))]).0,
        2
    );
}

#[test]
fn construct_layered() {
    let dir = tempfile::tempdir().unwrap();
    let low = dir.path().join("low.json");
    let high = dir.path().join("high.json");
    std::fs::write(&low, r#"{"n": 2, "generators": [[1, 0]]}"#).unwrap();
    std::fs::write(&high, r#"{"n": 2, "generators": [[2, 0], [1, 1], [0, 2]]}"#).unwrap();
    let files = format!("{},{}", path(&low), path(&high));
    let (code, out) = run(&["construct", "layered", "--files", &files]);
    assert_eq!((code, out), (0, json!({"n": 2, "generators": [[1, 0], [0, 2]]})));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "generators": [[0, 2]]}"#).unwrap();
    let files = format!("{},{}", path(&low), path(&bad));
    assert_eq!(run(&["construct", "layered", "--files", &files]).0, 2);
    let (code, out) = run(&["construct", "layered", "--no-validate", "--files", &files]);
    assert_eq!((code, out), (0, json!({"n": 2, "generators": [[1, 0], [0, 2]]})));
}

#[test]
fn shell_actions() {
    let mc = data("example_mc.json");
    let (code, out) = run(&["shell", "--action", "synthesize", path(&mc)]);
    assert_eq!(code, 0);
    assert_eq!(out["synthesized"]["valid"], json!(false));
    assert_eq!(out["synthesized"]["certificate"][1]["intersection_facets"], json!([[1, 0, 0, 0]]));
    assert_eq!(out["search"]["status"], json!("found"));
    assert_eq!(out["search"]["shelling"]["valid"], json!(true));

    let dir = tempfile::tempdir().unwrap();
    let order = dir.path().join("order.json");
    std::fs::write(&order, serde_json::to_string(&out["search"]["shelling"]).unwrap()).unwrap();
    let (code, out) = run(&["shell", "--action", "verify", "--order", path(&order), path(&mc)]);
    assert_eq!((code, &out["valid"]), (0, &json!(true)));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "x1^2\nx1*x3\nx1*x2*x4\nx3^2\nx2*x3*x4\nx2^2*x4^2\n").unwrap();
    let (code, out) = run(&["shell", "--action", "verify", "--order", path(&bad), path(&mc)]);
    assert_eq!((code, &out["valid"]), (1, &json!(false)));

    let none = dir.path().join("none.json");
    std::fs::write(&none, r#"{"n": 3, "facets": [[0,1,1],[1,2,0],[1,0,2]]}"#).unwrap();
    let (code, out) = run(&["shell", "--action", "synthesize", path(&none)]);
    assert_eq!(code, 1);
    assert_eq!(out["search"]["status"], json!("none found"));
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mc = dir.path().join("mc.json");
    let back = dir.path().join("back.json");
    assert_eq!(
        cwpoly(&["convert", path(&data("example.json")), "--out", path(&mc)]).status.code(),
        Some(0)
    );
    assert_eq!(
        std::fs::read_to_string(&mc).unwrap().trim(),
        std::fs::read_to_string(data("example_mc.json")).unwrap().trim()
    );
    assert_eq!(cwpoly(&["convert", path(&mc), "--out", path(&back)]).status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&back).unwrap().trim(),
        std::fs::read_to_string(data("example.json")).unwrap().trim()
    );

    let sparse = dir.path().join("sparse.json");
    std::fs::write(&sparse, r#"{"n": 3, "generators": [[1, 0, 1]]}"#).unwrap();
    assert_eq!(cwpoly(&["convert", path(&sparse)]).status.code(), Some(2));
    let (code, out) = run(&["convert", "--restrict", path(&sparse)]);
    assert_eq!(code, 0);
    assert_eq!(out["facets"], json!([[1, 1]]));
}

#[test]
fn experiment_cli() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        cwpoly(&["experiment", "--target", "powers", "--trials", "0", "--seed", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(cwpoly(&["experiment", "--target", "powers", "--trials", "3"]).status.code(), Some(2));

    for target in ["powers", "socle", "cwlq-vs-lq"] {
        let report = dir.path().join(format!("{target}.jsonl"));
        let args = ["experiment", "--target", target, "--trials", "12", "--seed", "3"];
        let first = cwpoly(&[&args[..], &["--out", path(&report)]].concat());
        assert_eq!(first.status.code(), Some(0), "{target}");
        let written = std::fs::read(&report).unwrap();
        let again = cwpoly(&args);
        assert_eq!(again.stdout, written, "{target}");

        let lines: Vec<Value> = written
            .split(|&b| b == b'\n')
            .filter(|l| !l.is_empty())
            .map(|l| serde_json::from_slice(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 14);
        assert_eq!(lines[0]["kind"], json!("header"));
        assert_eq!(lines[13]["kind"], json!("summary"));
        assert_eq!(lines[13]["trials"], json!(12));

        let replay = cwpoly(&["experiment", "--replay", path(&report)]);
        assert_eq!(replay.status.code(), Some(0), "{target}");
    }
}
