//! Acceptance criteria, one test per criterion. Every test writes a single
//! `criterion N: PASS|FAIL ...` line straight to stderr, so the line shows
//! up even when the harness captures output, and then asserts.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use glr::drawing::{measure, GridDrawing};
use glr::experiments::{brute_force_paths, fit_exponent, parse_sizes, run_bench, BenchRun, Metric};
use glr::layout::{
    layout_nonupward, layout_one_bend, layout_quadratic, layout_upward, stretch_to_straightline, upward_heavy_child,
    Algo, LayoutKind, Variant,
};
use glr::path::{path_invariant_check, select_path, PathError, PathParams};
use glr::tree::{enumerate_trees, generate, OrderedTree, TreeFamily};
use glr::validate::{check_width_recurrence, validate, Condition, ValidationReport};

use Condition::*;

fn report(id: u32, ok: bool, detail: &str) {
    let line = format!("criterion {id}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

/// `count` random trees with sizes drawn uniformly from `min_n..=max_n`.
fn random_trees(count: usize, min_n: usize, max_n: usize, salt: u64) -> Vec<OrderedTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(salt);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let max_arity = rng.gen_range(2..=8);
            let seed = rng.gen();
            generate(&TreeFamily::Random { n, max_arity, seed }).unwrap()
        })
        .collect()
}

/// Tallies failed conditions over many reports.
#[derive(Default)]
struct Tally {
    failures: BTreeMap<String, usize>,
    first: BTreeMap<String, String>,
}

impl Tally {
    fn fail(&mut self, what: impl Into<String>, example: impl FnOnce() -> String) {
        let what = what.into();
        *self.failures.entry(what.clone()).or_default() += 1;
        self.first.entry(what).or_insert_with(example);
    }

    fn absorb(&mut self, label: &str, r: &ValidationReport, t: &OrderedTree) {
        for c in r.failures() {
            self.fail(format!("{label}{c}"), || format!("n={} {:?}", t.len(), r.results[&c]));
        }
    }

    fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn summary(&self) -> String {
        if self.ok() {
            return String::new();
        }
        let parts: Vec<String> = self.failures.iter().map(|(k, v)| format!("{k} x{v} (first: {})", self.first[k])).collect();
        format!("; failures: {}", parts.join("; "))
    }
}

#[test]
fn criterion_01_exhaustive_path_invariant() {
    let start = Instant::now();
    let params = PathParams::default();
    let mut tally = Tally::default();
    let mut total = 0;
    for n in 1..=10 {
        for t in enumerate_trees(n) {
            total += 1;
            let oracle = brute_force_paths(&t, &params);
            if oracle.is_empty() {
                tally.fail("oracle found no path", || t.serialize());
                continue;
            }
            match select_path(&t, &params) {
                Err(e) => tally.fail("select_path error", || format!("{} {e}", t.serialize())),
                Ok(p) => {
                    if !oracle.contains(&p.nodes) {
                        tally.fail("not accepted by oracle", || t.serialize());
                    }
                    if !path_invariant_check(&t, &p.nodes, &params).unwrap() {
                        tally.fail("invariant check", || t.serialize());
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = tally.ok() && total == 6918 && elapsed < Duration::from_secs(60);
    report(1, ok, &format!("{total} trees with n <= 10 in {elapsed:.2?}{}", tally.summary()));
}

#[test]
fn criterion_02_random_path_invariant() {
    let start = Instant::now();
    let params = PathParams::default();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n = rng.gen_range(10..=2000);
        let max_arity = rng.gen_range(2..=8);
        let t = generate(&TreeFamily::Random { n, max_arity, seed: rng.gen() }).unwrap();
        match select_path(&t, &params) {
            Err(e @ PathError::ClaimViolated { .. }) => tally.fail("tripwire", || e.to_string()),
            Err(e) => tally.fail("error", || e.to_string()),
            Ok(p) => {
                if !path_invariant_check(&t, &p.nodes, &params).unwrap() {
                    tally.fail("invariant", || format!("n={n} arity={max_arity}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = tally.ok() && elapsed < Duration::from_secs(120);
    report(2, ok, &format!("1000 random trees in {elapsed:.2?}{}", tally.summary()));
}

#[test]
fn criterion_03_quadratic() {
    let mut tally = Tally::default();
    for t in random_trees(200, 1, 500, 3) {
        let n = t.len() as i64;
        let d = layout_quadratic(&t);
        tally.absorb("", &validate(&t, &d, &Condition::ALL).unwrap(), &t);
        let m = measure(&d);
        if m.width > n || m.height > n {
            tally.fail("size", || format!("n={n} {m:?}"));
        }
    }
    report(3, tally.ok(), &format!("200 quadratic drawings, all conditions, width and height <= n{}", tally.summary()));
}

/// Every row of the bounding box holds a node or a bend.
fn rows_covered(d: &GridDrawing) -> bool {
    let b = d.bbox();
    let mut rows = vec![false; b.height() as usize];
    for p in d.points() {
        rows[(p.y - b.y0) as usize] = true;
    }
    rows.into_iter().all(|r| r)
}

#[test]
fn criterion_04_one_bend() {
    let params = PathParams::default();
    let mut tally = Tally::default();
    let mut bent = 0;
    for t in random_trees(200, 1, 1000, 4) {
        let n = t.len() as i64;
        let d = layout_one_bend(&t, &params).unwrap();
        let r = validate(&t, &d, &[Planar, Order, Upward, P1, P2, P3, P4, P5, P6, P8]).unwrap();
        let json: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        let max_bends = json["edges"].as_array().unwrap().iter().map(|e| e["bends"].as_array().unwrap().len()).max();
        if max_bends > Some(1) {
            tally.fail("bends per edge", || format!("n={n}"));
        }
        for c in [Planar, Order, Upward, P1, P2, P3, P4, P5] {
            if !r.passed(c) {
                tally.fail(c.to_string(), || format!("n={n} {:?}", r.results[&c]));
            }
        }
        let m = measure(&d);
        if m.height > 2 * n - 1 || !rows_covered(&d) {
            tally.fail("height", || format!("n={n} {m:?}"));
        }
        if !check_width_recurrence(&t, &d).unwrap().passed() {
            tally.fail("width recurrence", || format!("n={n}"));
        }
        if m.bends > 0 {
            bent += 1;
            if r.passed(P6) || r.passed(P8) {
                tally.fail("p6/p8 pass despite bends", || format!("n={n}"));
            }
        }
    }
    report(4, tally.ok(), &format!("200 one-bend drawings, {bent} with bends{}", tally.summary()));
}

#[test]
fn criterion_05_nonupward() {
    let params = PathParams::default();
    let mut tally = Tally::default();
    let wanted = [Planar, Order, P1, P2, P3, P4, P5, P6, P8];
    for t in random_trees(200, 1, 2000, 5) {
        let n = t.len() as i64;
        for v in [Variant::I, Variant::IIl, Variant::IIr] {
            let d = layout_nonupward(&t, v, &params).unwrap();
            tally.absorb(&format!("{v}:"), &validate(&t, &d, &wanted).unwrap(), &t);
            let b = d.bbox();
            if b.height() != n {
                tally.fail(format!("{v}:height"), || format!("n={n} height={}", b.height()));
            }
            let root = d.positions[0];
            let anchored = match v {
                Variant::I => root.y == b.y0,
                Variant::IIl => root.x == b.x0 && d.positions.iter().all(|q| q.x != root.x || q.y >= root.y),
                _ => root.x == b.x1 && d.positions.iter().all(|q| q.x != root.x || q.y >= root.y),
            };
            if !anchored {
                tally.fail(format!("{v}:anchor"), || format!("n={n}"));
            }
        }
    }
    report(5, tally.ok(), &format!("200 trees x 3 non-upward variants{}", tally.summary()));
}

/// A root whose middle child holds more than `n - n / 2^(1/p)` nodes.
fn heavy_middle_trees(count: usize) -> Vec<OrderedTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let params = PathParams::default();
    let mut out = Vec::new();
    while out.len() < count {
        let side = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=6);
            generate(&TreeFamily::Random { n, max_arity: 3, seed: rng.gen() }).unwrap().serialize()
        };
        let big_n = rng.gen_range(60..=600);
        let big = generate(&TreeFamily::Random { n: big_n, max_arity: rng.gen_range(2..=6), seed: rng.gen() }).unwrap();
        let mut text = String::from("(");
        for _ in 0..rng.gen_range(1..=2) {
            text.push_str(&side(&mut rng));
        }
        let k = text.matches('(').count() - 1;
        text.push_str(&big.serialize());
        for _ in 0..rng.gen_range(1..=2) {
            text.push_str(&side(&mut rng));
        }
        text.push(')');
        let t: OrderedTree = text.parse().unwrap();
        assert_eq!(upward_heavy_child(&t, 0, &params).map(|i| t.children(0)[i]), Some(k + 1));
        out.push(t);
    }
    out
}

#[test]
fn criterion_06_upward() {
    let params = PathParams::default();
    let mut tally = Tally::default();
    let wanted = [Planar, Order, Upward, P1, P2, P3, P4, P5, P6, P7, P8];
    let mut heavy_p8_fail = 0;
    let trees: Vec<(bool, OrderedTree)> = random_trees(200, 1, 2000, 6)
        .into_iter()
        .map(|t| (false, t))
        .chain(heavy_middle_trees(50).into_iter().map(|t| (true, t)))
        .collect();
    for (heavy, t) in &trees {
        let n = t.len() as f64;
        let bound = (2.0 * n.powf(1.48)).ceil() as i64;
        for v in [Variant::I, Variant::IIIl, Variant::IIIr] {
            let d = layout_upward(t, v, &params).unwrap();
            let r = validate(t, &d, &wanted).unwrap();
            for c in [Planar, Order, Upward, P1, P2, P3, P4, P5, P6, P7] {
                if !r.passed(c) {
                    tally.fail(format!("{v}:{c}"), || format!("n={n} {:?}", r.results[&c]));
                }
            }
            if measure(&d).height > bound {
                tally.fail(format!("{v}:height"), || format!("n={n}"));
            }
            if !check_width_recurrence(t, &d).unwrap().passed() {
                tally.fail(format!("{v}:width recurrence"), || format!("n={n}"));
            }
            if *heavy && v != Variant::I {
                if r.passed(P8) {
                    tally.fail(format!("{v}:p8 passes on a heavy middle child"), || t.serialize());
                } else {
                    heavy_p8_fail += 1;
                }
            }
        }
    }
    report(
        6,
        tally.ok(),
        &format!("250 trees x 3 upward variants, {heavy_p8_fail}/100 corner drawings of heavy-middle trees fail p8{}", tally.summary()),
    );
}

#[test]
fn criterion_07_scaling_exponents() {
    let start = Instant::now();
    let sizes = parse_sizes("10:5000:x1.5").unwrap();
    let family = TreeFamily::Random { n: 1, max_arity: 4, seed: 0 };
    let run = |algo, variant| {
        let mut spec = BenchRun::new(family, sizes.clone(), 5, LayoutKind::new(algo, variant).unwrap());
        spec.timing = false;
        run_bench(spec).unwrap()
    };
    let nonupward = run(Algo::NonUpward, Variant::I);
    let upward = run(Algo::Upward, Variant::I);
    let w = fit_exponent(&nonupward.rows, Metric::Width).unwrap().slope;
    let h = fit_exponent(&nonupward.rows, Metric::Height).unwrap().slope;
    let hu = fit_exponent(&upward.rows, Metric::Height).unwrap().slope;
    let elapsed = start.elapsed();
    let checks = [
        (w <= 0.50, format!("non-upward width slope {w:.4} <= 0.50")),
        (w >= 0.30, format!("non-upward width slope {w:.4} >= 0.30")),
        ((h - 1.0).abs() <= 0.001, format!("non-upward height slope {h:.4} = 1 +- 0.001")),
        (hu <= 1.53, format!("upward height slope {hu:.4} <= 1.53")),
        (elapsed < Duration::from_secs(600), format!("runtime {elapsed:.2?}")),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.0).map(|c| c.1.as_str()).collect();
    let all: Vec<&str> = checks.iter().map(|c| c.1.as_str()).collect();
    let detail = if failed.is_empty() { all.join(", ") } else { format!("{}; failing: {}", all.join(", "), failed.join(", ")) };
    report(7, failed.is_empty(), &detail);
}

#[test]
fn criterion_08_lowerbound_family() {
    let mut tally = Tally::default();
    for k in 1..=100usize {
        let t = generate(&TreeFamily::LowerBound { k }).unwrap();
        let root_kids = t.children(0);
        if t.len() != 6 * k - 1 {
            tally.fail("node count", || format!("k={k} n={}", t.len()));
        }
        let fours: Vec<usize> = (0..t.len()).filter(|&v| t.children(v).len() == 4).collect();
        if t.arity() != 4 || fours != vec![0] {
            tally.fail("arity", || format!("k={k}"));
        }
        let (l, v1, w1, l2) = (root_kids[0], root_kids[1], root_kids[2], root_kids[3]);
        if !t.is_leaf(l) || !t.is_leaf(l2) {
            tally.fail("outer children are leaves", || format!("k={k}"));
        }
        for mut v in [v1, w1] {
            for _ in 1..k {
                let kids = t.children(v);
                if kids.len() != 3 || !t.is_leaf(kids[0]) || !t.is_leaf(kids[2]) {
                    tally.fail("chain shape", || format!("k={k} at {v}"));
                    break;
                }
                v = kids[1];
            }
            if !t.is_leaf(v) {
                tally.fail("chain end", || format!("k={k}"));
            }
        }
        // k + 1 nodes from the root down to v_k, that is k edges; with
        // n = 6k - 1 there is no room for one more level
        if t.height() != k {
            tally.fail("height", || format!("k={k} height={}", t.height()));
        }
    }
    report(8, tally.ok(), &format!("k = 1..100: n = 6k - 1, arity 4 only at the root, root-to-leaf chains of k + 1 nodes{}", tally.summary()));
}

#[test]
fn criterion_09_stretch() {
    let params = PathParams::default();
    let mut tally = Tally::default();
    let mut tallest = 0;
    for t in random_trees(100, 1, 200, 9) {
        let d = layout_one_bend(&t, &params).unwrap();
        let s = match stretch_to_straightline(&d) {
            Ok(s) => s,
            Err(e) => {
                tally.fail("stretch error", || format!("{} {e}", t.serialize()));
                continue;
            }
        };
        if s.bend_count() != 0 {
            tally.fail("bends left", || t.serialize());
        }
        if measure(&s).width != measure(&d).width {
            tally.fail("width changed", || t.serialize());
        }
        tallest = tallest.max(measure(&s).height);
        tally.absorb("", &validate(&t, &s, &[Planar, Order, Upward, P6]).unwrap(), &t);
    }
    report(9, tally.ok(), &format!("100 stretched one-bend drawings, tallest {tallest} rows{}", tally.summary()));
}

fn glr(args: &[&str], stdin: Option<&str>, dir: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_glr"));
    cmd.args(args).current_dir(dir).env_remove("GLR_SEED");
    cmd.stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).stderr(std::process::Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let input = stdin.unwrap_or("").to_owned();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

#[test]
fn criterion_10_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let tree = glr(&["gen", "--kind", "random", "--n", "150", "--max-arity", "5", "--seed", "42", "--out", "tree.txt"], None, dir);
    assert!(tree.status.success());
    let ob = glr(&["layout", "--algo", "onebend", "--in", "tree.txt", "--out", "ob.json", "--quiet"], None, dir);
    assert!(ob.status.success());

    // each run writes to files named after the round, then the two rounds
    // are compared byte for byte, together with stdout
    let runs: Vec<(&str, Vec<String>, Vec<&str>)> = vec![
        ("gen", vec!["gen --kind random --n 300 --seed 7 --out {}.txt".into()], vec!["txt"]),
        ("gen lowerbound", vec!["gen --kind lowerbound --k 3 --out {}.txt".into()], vec!["txt"]),
        ("path", vec!["path --in tree.txt --json".into()], vec![]),
        ("layout", vec!["layout --algo upward --variant IIIl --in tree.txt --out {}.json --svg {}.svg --embed-tree".into()], vec!["json", "svg"]),
        ("layout nonupward", vec!["layout --algo nonupward --variant IIr --in tree.txt --out {}.json".into()], vec!["json"]),
        ("validate", vec!["validate --tree tree.txt --in ob.json --json".into()], vec![]),
        ("bench", vec!["bench --family random --sizes 10:400:x2 --trials 3 --algo nonupward --variant I --csv {}.csv --no-timing --seed 5".into()], vec!["csv"]),
        ("oracle", vec!["oracle --max-n 6".into()], vec![]),
        ("stretch", vec!["stretch --in ob.json --out {}.json --svg {}.svg".into()], vec!["json", "svg"]),
    ];
    let mut differing = Vec::new();
    for (name, cmds, exts) in &runs {
        let mut outputs = Vec::new();
        for round in ["a", "b"] {
            let prefix = format!("{}-{round}", name.replace(' ', "_"));
            let line = cmds[0].replace("{}", &prefix);
            let args: Vec<&str> = line.split_whitespace().collect();
            let out = glr(&args, None, dir);
            let mut bytes = out.stdout.clone();
            bytes.extend(out.status.code().unwrap_or(-1).to_le_bytes());
            for ext in exts {
                bytes.extend(std::fs::read(dir.join(format!("{prefix}.{ext}"))).unwrap());
            }
            outputs.push(bytes);
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            differing.push(*name);
        }
    }
    // the piped form, reading the tree from stdin
    let piped: Vec<Vec<u8>> = (0..2).map(|_| glr(&["layout", "--algo", "quadratic", "--in", "-", "--out", "-", "--quiet"], Some("(()())"), dir).stdout).collect();
    if piped[0] != piped[1] {
        differing.push("layout via stdin");
    }
    let detail = if differing.is_empty() {
        format!("{} invocations repeated byte for byte", runs.len() + 1)
    } else {
        format!("differing output: {}", differing.join(", "))
    };
    report(10, differing.is_empty(), &detail);
}
