use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use glr::drawing::GridDrawing;
use glr::experiments::{self, BenchRun, ExperimentError, Metric};
use glr::layout::{self, stretch_to_straightline, Algo, LayoutKind, Variant};
use glr::path::{select_path, PathParams};
use glr::svg::to_svg;
use glr::tree::{generate, parse_tree, OrderedTree, TreeFamily};
use glr::validate::{validate, Condition};

/// Stack size for the worker thread; deep trees recurse through the layout
/// engines.
const STACK: usize = 512 << 20;

#[derive(Parser, Debug)]
#[command(name = "glr", version, about = "Grid drawings of ordered rooted trees")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "GLR_SEED", default_value_t = 0)]
    seed: u64,
    /// Exponent of the spine invariant.
    #[arg(long, global = true, default_value_t = 0.48)]
    p: f64,
    /// Slack of the spine invariant.
    #[arg(long, global = true, default_value_t = 0.0004)]
    delta: f64,
    /// Suppress informational output on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Machine readable output where applicable.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a tree from a family.
    Gen(GenArgs),
    /// Select the spine of a tree.
    Path(PathArgs),
    /// Lay out a tree on the grid.
    Layout(LayoutArgs),
    /// Check a drawing against a list of conditions.
    Validate(ValidateArgs),
    /// Measure an engine over a family and a range of sizes.
    Bench(BenchArgs),
    /// Check every small ordered tree exhaustively.
    Oracle(OracleArgs),
    /// Remove the bends of a one-bend drawing by inserting rows.
    Stretch(StretchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Random,
    Complete,
    Path,
    Star,
    Lowerbound,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    /// Child cap for random trees.
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Arity of complete trees.
    #[arg(long)]
    arity: Option<usize>,
    /// Height of complete trees.
    #[arg(long)]
    height: Option<usize>,
    /// Parameter of the lower-bound family.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct PathArgs {
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct LayoutArgs {
    #[arg(long)]
    algo: String,
    #[arg(long, default_value = "default")]
    variant: String,
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Store the tree inside the drawing JSON.
    #[arg(long)]
    embed_tree: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Tree file; defaults to the tree embedded in the drawing.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    #[arg(long, default_value = "planar,order,upward,p1,p2,p3,p4,p5,p6,p7,p8")]
    conditions: String,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "random")]
    family: Kind,
    /// `a:b:xR`, `a:b:+s` or a comma separated list.
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    algo: String,
    #[arg(long, default_value = "default")]
    variant: String,
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Arity for the complete family; sizes are then heights.
    #[arg(long, default_value_t = 2)]
    arity: usize,
    #[arg(long, default_value = "-")]
    csv: PathBuf,
    /// Record zero milliseconds so repeated runs are identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct StretchArgs {
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

/// Errors that make the command exit with status 1.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let worker = std::thread::Builder::new().stack_size(STACK).spawn(move || run(&cli));
    let outcome = match worker.map(|h| h.join()) {
        Ok(Ok(r)) => r,
        Ok(Err(_)) => return ExitCode::from(101),
        Err(e) => Err(anyhow!("cannot start worker thread: {e}")),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => {
            eprintln!("{e:#}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let params = PathParams::new(cli.p, cli.delta).context("invalid --p/--delta")?;
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Path(a) => path(cli, a, &params),
        Command::Layout(a) => layout_cmd(cli, a, &params),
        Command::Validate(a) => validate_cmd(cli, a),
        Command::Bench(a) => bench(cli, a, &params),
        Command::Oracle(a) => oracle(cli, a, &params),
        Command::Stretch(a) => stretch(cli, a),
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &PathBuf, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).context("writing stdout")?;
        out.flush().context("writing stdout")
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn read_tree(path: &PathBuf) -> Result<OrderedTree> {
    let text = read_input(path)?;
    parse_tree(&text).with_context(|| format!("parsing tree from {}", path.display()))
}

fn read_drawing(path: &PathBuf) -> Result<GridDrawing> {
    let text = read_input(path)?;
    GridDrawing::from_json(&text).with_context(|| format!("parsing drawing from {}", path.display()))
}

fn layout_kind(algo: &str, variant: &str) -> Result<LayoutKind> {
    let algo: Algo = algo.parse()?;
    let variant: Variant = variant.parse()?;
    Ok(LayoutKind::new(algo, variant)?)
}

fn info(cli: &Cli, msg: impl AsRef<str>) {
    if !cli.quiet {
        eprintln!("{}", msg.as_ref());
    }
}

fn family(kind: Kind, a: &GenArgs, seed: u64) -> Result<TreeFamily> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("--kind {kind:?} needs --{flag}"));
    Ok(match kind {
        Kind::Random => TreeFamily::Random { n: need(a.n, "n")?, max_arity: a.max_arity, seed },
        Kind::Complete => TreeFamily::Complete { arity: need(a.arity, "arity")?, height: need(a.height, "height")? },
        Kind::Path => TreeFamily::Path { n: need(a.n, "n")? },
        Kind::Star => TreeFamily::Star { n: need(a.n, "n")? },
        Kind::Lowerbound => TreeFamily::LowerBound { k: need(a.k, "k")? },
    })
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<()> {
    let fam = family(a.kind, a, cli.seed)?;
    fam.node_count()?;
    let t = generate(&fam)?;
    info(cli, format!("{} nodes, arity {}, height {}", t.len(), t.arity(), t.height()));
    write_output(&a.out, &format!("{}\n", t.serialize()))
}

fn path(cli: &Cli, a: &PathArgs, params: &PathParams) -> Result<()> {
    let t = read_tree(&a.input)?;
    let p = select_path(&t, params)?;
    let text = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&p)?)
    } else {
        let ids: Vec<String> = p.nodes.iter().map(|v| v.to_string()).collect();
        format!(
            "path {}\nmax_left {}\nmax_right {}\nslack {:.6}\n",
            ids.join(" "),
            p.max_left,
            p.max_right,
            p.slack
        )
    };
    write_output(&PathBuf::from("-"), &text)
}

fn layout_cmd(cli: &Cli, a: &LayoutArgs, params: &PathParams) -> Result<()> {
    let kind = layout_kind(&a.algo, &a.variant)?;
    let t = read_tree(&a.input)?;
    let mut d = layout::layout(&t, kind, params)?;
    if a.embed_tree {
        d.tree = Some(t.serialize());
    }
    let m = glr::measure(&d);
    info(cli, format!("{}/{}: width {} height {} bends {}", kind.algo, kind.variant, m.width, m.height, m.bends));
    if let Some(svg) = &a.svg {
        write_output(svg, &to_svg(&d))?;
    }
    write_output(&a.out, &format!("{}\n", d.to_json()))
}

fn validate_cmd(cli: &Cli, a: &ValidateArgs) -> Result<()> {
    let which = Condition::parse_list(&a.conditions)?;
    if which.is_empty() {
        bail!("no conditions requested");
    }
    let d = read_drawing(&a.input)?;
    let t = match (&a.tree, &d.tree) {
        (Some(path), _) => read_tree(path)?,
        (None, Some(text)) => parse_tree(text).context("parsing embedded tree")?,
        (None, None) => bail!("drawing has no embedded tree; pass --tree"),
    };
    let report = validate(&t, &d, &which)?;
    let text = if cli.json { format!("{}\n", serde_json::to_string_pretty(&report)?) } else { report.to_string() };
    write_output(&PathBuf::from("-"), &text)?;
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<String> = report.failures().iter().map(|c| c.to_string()).collect();
        Err(Failed(format!("failed: {}", names.join(","))).into())
    }
}

fn bench(cli: &Cli, a: &BenchArgs, params: &PathParams) -> Result<()> {
    let kind = layout_kind(&a.algo, &a.variant)?;
    let sizes = experiments::parse_sizes(&a.sizes)?;
    if a.trials == 0 {
        bail!("--trials must be positive");
    }
    let template = match a.family {
        Kind::Random => TreeFamily::Random { n: 1, max_arity: a.max_arity, seed: 0 },
        Kind::Complete => TreeFamily::Complete { arity: a.arity, height: 0 },
        Kind::Path => TreeFamily::Path { n: 1 },
        Kind::Star => TreeFamily::Star { n: 1 },
        Kind::Lowerbound => TreeFamily::LowerBound { k: 1 },
    };
    for &n in &sizes {
        experiments::family_at(&template, n, 0).node_count()?;
    }
    let mut spec = BenchRun::new(template, sizes, a.trials, kind);
    spec.params = *params;
    spec.base_seed = cli.seed;
    spec.timing = !a.no_timing;
    let run = experiments::run_bench(spec).map_err(|e| match e {
        ExperimentError::InvalidDrawing { .. } => anyhow::Error::new(Failed(e.to_string())),
        other => other.into(),
    })?;
    let mut fits = Vec::new();
    for metric in [Metric::Width, Metric::Height, Metric::Area] {
        if let Ok(f) = experiments::fit_exponent(&run.rows, metric) {
            info(cli, format!("{metric:?} slope {:.4} (r2 {:.4}{})", f.slope, f.r2, if f.degenerate { ", constant" } else { "" }));
            fits.push((metric, f));
        }
    }
    if cli.json {
        let doc = serde_json::json!({ "run": run, "fits": fits });
        write_output(&a.csv, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
    } else {
        write_output(&a.csv, &run.to_csv())
    }
}

fn oracle(cli: &Cli, a: &OracleArgs, params: &PathParams) -> Result<()> {
    let report = experiments::oracle_small_trees(a.max_n, params).map_err(|e| match e {
        ExperimentError::Counterexample { .. } => anyhow::Error::new(Failed(e.to_string())),
        other => other.into(),
    })?;
    let text = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        let mut s = String::new();
        for (n, c) in &report.per_size {
            s.push_str(&format!("n={n} trees={c}\n"));
        }
        s.push_str(&format!("total trees={} layouts={} all pass\n", report.trees, report.layouts));
        s
    };
    write_output(&PathBuf::from("-"), &text)
}

fn stretch(cli: &Cli, a: &StretchArgs) -> Result<()> {
    let d = read_drawing(&a.input)?;
    let s = stretch_to_straightline(&d)?;
    let (before, after) = (glr::measure(&d), glr::measure(&s));
    info(cli, format!("bends {} -> 0, height {} -> {}, width {}", before.bends, before.height, after.height, after.width));
    if let Some(svg) = &a.svg {
        write_output(svg, &to_svg(&s))?;
    }
    write_output(&a.out, &format!("{}\n", s.to_json()))
}
