use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twostep"))
        .args(args)
        .env_remove("PUZZLE_TABLE_PATH")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn product_lines() {
    let o = run(&["product", "--a", "2", "--b", "4", "--n", "5", "--u", "01201", "--v", "10102"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "10201: y4^2 - y4*y3 - y4*y1 + y3*y1\n\
                10210: y5 + y4 - y3 - y1\n\
                11200: 1\n\
                12001: y4 - y1\n\
                12010: 1\n";
    assert_eq!(stdout(&o), want);
    // content inferred from the strings
    assert_eq!(stdout(&run(&["product", "--u", "01201", "--v", "10102"])), want);
    let j = run(&["product", "--u", "01201", "--v", "10102", "--format", "json"]);
    let m: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(m["12001"], "y4 - y1");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["product", "--n", "5", "--u", "0120", "--v", "10102"]).status.code(), Some(2));
    assert_eq!(run(&["product", "--u", "01x01", "--v", "10102"]).status.code(), Some(2));
    assert_eq!(run(&["quantum", "--m", "2", "--n", "5", "--lambda", "4", "--mu", ""]).status.code(), Some(2));
    assert_eq!(run(&["puzzles", "--u", "012", "--v", "01", "--w", "012"]).status.code(), Some(2));
}

#[test]
fn quantum_terms() {
    let o = run(&["quantum", "--m", "2", "--n", "5", "--lambda", "2,1", "--mu", "3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("q^1 []: y5*y2 - y5*y1 - y3*y2 + y3*y1\n"));
    assert!(out.contains("q^1 [1]: y5 - y1\n"));
    assert_eq!(stdout(&run(&["quantum", "--m", "2", "--n", "5", "--lambda", "", "--mu", ""])), "q^0 []: 1\n");
}

#[test]
fn puzzles_written_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["puzzles", "--u", "1201", "--v", "1201", "--w", "1201", "--out", d, "--render", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let svg = std::fs::read_to_string(dir.path().join("puzzle-0.svg")).unwrap();
    assert!(svg.starts_with("<svg"));

    let o = run(&["puzzles", "--u", "01201", "--v", "10102", "--w", "10210"]);
    let out = stdout(&o);
    assert!(out.starts_with("count: 2\n"));
    assert!(out.contains("y5 - y3") && out.contains("y4 - y1"));

    let o = run(&["puzzles", "--u", "012", "--v", "012", "--w", "210"]);
    assert_eq!(stdout(&o), "count: 0\n");
}

fn write_puzzle(dir: &Path) -> String {
    let o = run(&["puzzles", "--u", "012", "--v", "012", "--w", "012", "--render", "json"]);
    let text = stdout(&o);
    let json = &text[text.find('{').unwrap()..];
    let path = dir.join("p.json");
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn mutation_steps_and_components() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_puzzle(dir.path());
    // gash pair at the first two positions of the bottom segment
    let flaws = ["gash:0:0,1", "gash:0:1,2", "gash:0:0,2"];
    let flaw = flaws
        .iter()
        .find(|f| run(&["mutate", "--puzzle", &p, "--flaw", f, "--steps", "0"]).status.code() == Some(0))
        .expect("some gash pair fits");
    let one = run(&["mutate", "--puzzle", &p, "--flaw", flaw, "--steps", "1"]);
    assert_eq!(one.status.code(), Some(0));
    let q = dir.path().join("q.json");
    std::fs::write(&q, &one.stdout).unwrap();
    let q = q.to_str().unwrap();
    let start = run(&["mutate", "--puzzle", &p, "--flaw", flaw, "--steps", "0"]);
    let back = (0..3)
        .map(|c| run(&["mutate", "--puzzle", q, "--steps", "1", "--choices", &c.to_string()]))
        .any(|o| o.status.code() == Some(0) && o.stdout == start.stdout);
    assert!(back);

    let g = run(&["mutate", "--puzzle", &p, "--flaw", flaw, "--component"]);
    let v: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    for node in v["nodes"].as_array().unwrap() {
        let k = node["neighbors"].as_array().unwrap().len();
        assert!(k == 1 || k == 3);
    }
    let dot = stdout(&run(&["mutate", "--puzzle", &p, "--flaw", flaw, "--component", "--format", "dot"]));
    assert!(dot.starts_with("graph mutations {"));
}

#[test]
fn flaw_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_puzzle(dir.path());
    let o = run(&["mutate", "--puzzle", &p, "--flaw", "temp:0,0,U", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["mutate", "--puzzle", &p, "--flaw", "nonsense", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_summary() {
    let o = run(&["verify", "--suite", "gashes"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["failed"], 0);
    let o = run(&["verify", "--suite", "aura", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn table_override_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("pieces.txt");
    std::fs::copy(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tables/pieces.txt"), &good).unwrap();
    let args = ["product", "--u", "01201", "--v", "10102"];
    let o = Command::new(env!("CARGO_BIN_EXE_twostep")).args(args).env("PUZZLE_TABLE_PATH", &good).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, run(&args).stdout);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "triangle 0 0 0\ntriangle 3 3 3\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_twostep")).args(args).env("PUZZLE_TABLE_PATH", &bad).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_twostep"))
        .args(args)
        .env("PUZZLE_TABLE_PATH", dir.path().join("missing.txt"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
