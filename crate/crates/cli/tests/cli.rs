use std::io::Write;
use std::process::{Command, Output, Stdio};

fn glr(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_glr"))
        .args(args)
        .env_remove("GLR_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    let input = stdin.to_owned();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_lowerbound_has_seventeen_nodes() {
    let o = glr(&["gen", "--kind", "lowerbound", "--k", "3", "--quiet"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().matches('(').count(), 17);
}

#[test]
fn layout_single_node_from_stdin() {
    let o = glr(&["layout", "--algo", "quadratic", "--in", "-", "--out", "-", "--quiet"], "()");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 1);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
}

#[test]
fn path_of_two_leaves() {
    let o = glr(&["path"], "(()())");
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("path 0 1\n"), "{text}");
    let slack: f64 = text.lines().find_map(|l| l.strip_prefix("slack ")).unwrap().parse().unwrap();
    assert!(slack >= 0.0);
}

#[test]
fn pipes_compose_for_every_engine() {
    let kinds = [
        ("quadratic", "default"),
        ("onebend", "default"),
        ("nonupward", "I"),
        ("nonupward", "IIl"),
        ("nonupward", "IIr"),
        ("upward", "I"),
        ("upward", "IIIl"),
        ("upward", "IIIr"),
    ];
    let checks = |algo: &str| match algo {
        "quadratic" => "planar,order,upward,p1,p2,p3,p4,p5,p6,p7,p8",
        "onebend" => "planar,order,upward,p1,p2,p3,p4,p5",
        "nonupward" => "planar,order,p1,p2,p3,p4,p6,p8",
        _ => "planar,order,upward,p1,p2,p3,p4,p5,p6,p7",
    };
    for seed in 1..=20 {
        let s = seed.to_string();
        let tree = glr(&["gen", "--kind", "random", "--n", "80", "--seed", &s, "--quiet"], "");
        assert!(tree.status.success());
        for (algo, variant) in kinds {
            let d = glr(&["layout", "--algo", algo, "--variant", variant, "--embed-tree", "--quiet"], &stdout(&tree));
            assert!(d.status.success(), "{algo} {variant}");
            let v = glr(&["validate", "--conditions", checks(algo)], &stdout(&d));
            assert!(v.status.success(), "seed {seed} {algo} {variant}\n{}", stdout(&v));
        }
    }
}

#[test]
fn validation_failure_exits_one() {
    let d = glr(&["layout", "--algo", "onebend", "--embed-tree", "--quiet"], "(()()())");
    let v = glr(&["validate", "--conditions", "planar,p6", "--json"], &stdout(&d));
    assert_eq!(v.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["results"]["planar"], "pass");
    assert_eq!(report["results"]["p6"]["fail"]["kind"], "bend");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["layout", "--algo", "quadratic", "--variant", "IIl"],
        vec!["layout", "--algo", "sideways"],
        vec!["gen", "--kind", "random"],
        vec!["validate", "--conditions", "p9"],
        vec!["bench", "--sizes", "5:1:x2", "--algo", "quadratic"],
        vec!["oracle", "--max-n", "20"],
        vec!["--p", "2", "oracle"],
        vec!["frobnicate"],
    ] {
        let o = glr(&args, "()");
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let bad_tree = glr(&["path"], "(()");
    assert_eq!(bad_tree.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_tree.stderr).contains("unclosed"));
}

#[test]
fn validate_without_a_tree_is_rejected() {
    let d = glr(&["layout", "--algo", "quadratic", "--quiet"], "(()())");
    let v = glr(&["validate"], &stdout(&d));
    assert_eq!(v.status.code(), Some(2));
}

#[test]
fn seed_falls_back_to_the_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_glr"))
        .args(["gen", "--kind", "random", "--n", "40", "--quiet"])
        .env("GLR_SEED", "99")
        .output()
        .unwrap();
    let with_flag = glr(&["gen", "--kind", "random", "--n", "40", "--seed", "99", "--quiet"], "");
    assert_eq!(with_env.stdout, with_flag.stdout);
    let other = glr(&["gen", "--kind", "random", "--n", "40", "--seed", "98", "--quiet"], "");
    assert_ne!(other.stdout, with_flag.stdout);
}

#[test]
fn stretch_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("s.svg");
    let d = glr(&["layout", "--algo", "onebend", "--quiet"], "((()())(())()())");
    let s = glr(&["stretch", "--svg", svg.to_str().unwrap(), "--quiet"], &stdout(&d));
    assert!(s.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    assert!(v["edges"].as_array().unwrap().iter().all(|e| e["bends"].as_array().unwrap().is_empty()));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn bench_csv_and_oracle() {
    let b = glr(&["bench", "--sizes", "10,20,40,80", "--trials", "2", "--algo", "nonupward", "--variant", "I", "--no-timing", "--quiet"], "");
    assert!(b.status.success());
    let text = stdout(&b);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,seed,width,height,area,bends,ms"));
    let rows: Vec<Vec<i64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[0] == r[3] && r[6] == 0));

    let o = glr(&["oracle", "--max-n", "5"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=5 trees=14"));
}
