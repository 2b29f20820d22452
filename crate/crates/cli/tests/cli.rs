use std::io::Write;
use std::process::{Command, Output, Stdio};

fn exdir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exdir"))
        .args(args)
        .env_remove("EXDIR_CACHE")
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exdir"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn solve_examples() {
    for (graph, value) in [("cycle:6", 4), ("path:4", 4), ("complete:5", 2)] {
        let o = exdir(&["solve", "--graph", graph, "--start", "0"]);
        assert!(o.status.success());
        assert!(
            stdout(&o).contains(&format!("f_d={value}\n")),
            "{graph}: {}",
            stdout(&o)
        );
    }
}

#[test]
fn solve_trace_lines() {
    let o = exdir(&["solve", "--graph", "cycle:4", "--start", "0", "--trace"]);
    let text = stdout(&o);
    let steps: Vec<&str> = text.lines().filter(|l| l.starts_with("step d=")).collect();
    assert_eq!(steps.len(), 3, "{text}");
    assert!(steps.last().unwrap().ends_with("visited=4"));
}

#[test]
fn graph_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.txt");
    std::fs::write(&path, "# path on four vertices\n4\n0 1\n1 2\n\n2 3\n").unwrap();
    let o = exdir(&["solve", "--graph", path.to_str().unwrap(), "--start", "1"]);
    assert!(stdout(&o).contains("f_d=4"));
    std::fs::write(&path, "3\n0 1\n").unwrap();
    assert_eq!(
        exdir(&["solve", "--graph", path.to_str().unwrap(), "--start", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        exdir(&["solve", "--graph", "nope:3", "--start", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        exdir(&["solve", "--graph", "path:4", "--start", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        exdir(&["solve", "--graph", "path:4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        exdir(&["solve", "--graph", "spider:4;5,5", "--start", "4"])
            .status
            .code(),
        Some(3)
    );
    let forced = exdir(&[
        "solve",
        "--graph",
        "spider:4;5,5",
        "--start",
        "4",
        "--force-cap",
    ]);
    assert!(stdout(&forced).contains("f_d=15"));
    let capped = exdir(&[
        "solve",
        "--graph",
        "path:6",
        "--start",
        "0",
        "--max-vertices",
        "5",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn closed_examples() {
    let o = exdir(&["closed", "--graph", "cycle:6", "--min"]);
    assert_eq!(stdout(&o), "size 4\nwitness {0,1,3,4}\n");
    let o = exdir(&["closed", "--graph", "cycle:4", "--check", "0,2"]);
    assert_eq!(stdout(&o), "not closed\n");
    let o = exdir(&["closed", "--graph", "path:4", "--peel", "0,1"]);
    assert_eq!(stdout(&o), "core {}\nX1 {0,1}\n");
    let o = exdir(&["closed", "--graph", "cycle:6", "--containing", "2"]);
    assert_eq!(stdout(&o), "size 4\nwitness {0,2,3,5}\n");
    assert_eq!(
        exdir(&["closed", "--graph", "cycle:6", "--check", ""])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn formula_examples() {
    assert_eq!(
        stdout(&exdir(&["formula", "--family", "cycle", "--n", "9"])),
        "value 6\n"
    );
    let o = stdout(&exdir(&[
        "formula", "--family", "lattice", "--n", "6", "--m", "4",
    ]));
    assert!(o.contains("bounds (10,12)"), "{o}");
    let o = exdir(&[
        "formula",
        "--family",
        "tree",
        "--graph",
        "spider:4;5,5",
        "--start",
        "4",
    ]);
    assert_eq!(stdout(&o), "value 15\n");
    assert_eq!(
        exdir(&["formula", "--family", "tree", "--graph", "cycle:5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn simulate_examples() {
    let o = stdout(&exdir(&[
        "simulate",
        "--graph",
        "path:6",
        "--start",
        "0",
        "--sequence",
        "1,3,2,3,2",
    ]));
    assert!(
        o.starts_with("score 6\n") && o.contains("all forced"),
        "{o}"
    );
    let o = stdout(&exdir(&[
        "simulate",
        "--graph",
        "path:4",
        "--start",
        "0",
        "--sequence",
        "1,1,1,1",
    ]));
    assert!(o.starts_with("score 2\n"), "{o}");
    let o = exdir(&[
        "simulate",
        "--graph",
        "path:4",
        "--start",
        "0",
        "--sequence",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid at step 1"));
    let o = stdout(&exdir(&[
        "simulate",
        "--graph",
        "path:5",
        "--start",
        "2",
        "--sequence",
        "2,3,2,3",
        "--all-branches",
    ]));
    assert!(
        o.contains("first unforced step 1") && o.contains("2 Director lines"),
        "{o}"
    );
}

#[test]
fn play_sessions() {
    let o = with_stdin(
        &[
            "play", "--graph", "cycle:4", "--start", "0", "--role", "director",
        ],
        "1\n3\n0\n2\n1\n3\n0\n2\n",
    );
    assert!(
        stdout(&o).contains("game over: 4 vertices"),
        "{}",
        stdout(&o)
    );
    let o = with_stdin(
        &[
            "play",
            "--graph",
            "complete:4",
            "--start",
            "0",
            "--role",
            "explorer",
        ],
        "9\n1\n",
    );
    let text = stdout(&o);
    assert!(
        text.contains("illegal move") && text.contains("game over: 2 vertices"),
        "{text}"
    );
    let o = with_stdin(
        &[
            "play", "--graph", "path:6", "--start", "0", "--role", "explorer",
        ],
        "1\nquit\n",
    );
    assert!(stdout(&o).contains("session ended: 2 vertices"));
    assert!(o.status.success());
}

#[test]
fn verify_suites() {
    let o = exdir(&["verify", "--suite", "cycles", "--max-n", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("cycles: 10/10 pass\n"));
    let o = exdir(&[
        "verify",
        "--suite",
        "trees",
        "--count",
        "200",
        "--max-n",
        "10",
        "--seed",
        "42",
        "--parallel",
    ]);
    assert!(stdout(&o).ends_with("trees: 200/200 pass\n"));
    let o = exdir(&["verify", "--suite", "counterexample"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(exdir(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        exdir(&["verify", "--suite", "closed", "--max-n", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn parallel_reports_match_serial() {
    let a = exdir(&["verify", "--suite", "lollipop"]);
    let b = exdir(&["verify", "--suite", "lollipop", "--parallel"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_hits_equal_fresh_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let out = dir.path().join("out.jsonl");
    let args = |extra: &[&str]| {
        let mut v = vec!["solve", "--graph", "lattice:3x3", "--start", "4"];
        v.extend_from_slice(extra);
        v.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let run = |a: Vec<String>| exdir(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let c = cache.to_str().unwrap();
    let first = run(args(&["--cache", c, "--out", out.to_str().unwrap()]));
    let second = run(args(&["--cache", c, "--out", out.to_str().unwrap()]));
    assert_eq!(first.stdout, second.stdout);
    // One record cached, two emitted, and the hit is byte-identical to the fresh one.
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let lines: Vec<String> = std::fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
    let rec: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(rec["f_d"], 5);
    assert_eq!(rec["closed_min"], 5);
    assert_eq!(rec["family_spec"], "lattice:3x3");
    assert_eq!(rec["start"], 4);
    assert_eq!(rec["timestamp"], 1700000000);

    // The environment variable supplies the default cache path.
    let env_cache = dir.path().join("env.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_exdir"))
        .args(["solve", "--graph", "cycle:5", "--start", "0", "--cache"])
        .env("EXDIR_CACHE", &env_cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&env_cache)
        .unwrap()
        .contains("\"f_d\":4"));
}

#[test]
fn output_is_deterministic() {
    let a = exdir(&[
        "solve",
        "--graph",
        "randtree:10,7",
        "--start",
        "3",
        "--trace",
    ]);
    let b = exdir(&[
        "solve",
        "--graph",
        "randtree:10,7",
        "--start",
        "3",
        "--trace",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
