//! `curvelab` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvelab::corpus::{self, CorpusEntry};
use curvelab::report::{analyze, AnalyzeOptions, Analysis};
use curvelab::search::{self, SearchConfig, SearchMode};
use curvelab::{parse_poly, Error, Gf, PlaneCurve};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "curvelab", version, about = "Plane curves over finite fields")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one curve.
    Analyze(AnalyzeArgs),
    /// Run a built-in example, or list them.
    Examples(ExamplesArgs),
    /// Search for Frobenius nonclassical curves of a given degree.
    Search(SearchArgs),
    /// Check every built-in example against its expected values.
    VerifyCorpus(VerifyArgs),
}

#[derive(Args)]
struct PipelineArgs {
    /// Highest extension level for sampling and fallback scans.
    #[arg(long, default_value_t = curvelab::frobclass::DEFAULT_KMAX)]
    kmax: u32,
    #[arg(long, default_value_t = curvelab::frobclass::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = curvelab::frobclass::DEFAULT_SEED)]
    seed: u64,
}

impl PipelineArgs {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions { k_max: self.kmax, samples: self.samples, seed: self.seed }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Homogeneous form in x, y, z (or x, y with --affine).
    #[arg(long)]
    curve: String,
    /// Input is affine; homogenize at its total degree.
    #[arg(long)]
    affine: bool,
    #[arg(long)]
    json: bool,
    /// Write resolution trees of the singular points as DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

#[derive(Args)]
struct ExamplesArgs {
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    degree: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Random)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only nonclassical curves (default). Pass `--require-fnc false` to disable.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    require_fnc: bool,
    #[arg(long)]
    require_singular: bool,
    /// Lower bound on the Frobenius order, used to prune degrees.
    #[arg(long)]
    nu_floor: Option<u32>,
    #[arg(long, default_value_t = 100)]
    limit: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    json: bool,
    /// Override an expectation, as `name:key=value` (keys: fnc, Mq, N1,
    /// genus, smooth, rational_singular).
    #[arg(long = "expect", value_name = "NAME:KEY=VALUE")]
    expect: Vec<String>,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

/// Failure with an exit code: 1 for input errors, 2 for findings.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match with_workers(cli.workers, || run(cli.cmd)) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

#[cfg(feature = "parallel")]
fn with_workers<T: Send>(n: Option<usize>, f: impl FnOnce() -> Result<T, Fail> + Send) -> Result<T, Fail> {
    match n {
        Some(0) => Err(Fail(1, "--workers must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Fail(1, e.to_string()))?
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_workers<T: Send>(_n: Option<usize>, f: impl FnOnce() -> Result<T, Fail> + Send) -> Result<T, Fail> {
    f()
}

fn run(cmd: Cmd) -> Result<u8, Fail> {
    match cmd {
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Examples(a) => cmd_examples(a),
        Cmd::Search(a) => cmd_search(a),
        Cmd::VerifyCorpus(a) => cmd_verify_corpus(a),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn findings_code(a: &Analysis) -> u8 {
    if a.findings().next().is_some() {
        2
    } else {
        0
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<u8, Fail> {
    let k = Gf::new(a.p, a.s)?;
    let c = if a.affine {
        PlaneCurve::from_affine(&parse_poly(&a.curve, &k, 2)?, true)?
    } else {
        PlaneCurve::new(parse_poly(&a.curve, &k, 3)?, true)?
    };
    let r = analyze(&c, a.pipeline.options())?;
    if let Some(path) = &a.dot {
        let dot: String = r
            .singular
            .iter()
            .enumerate()
            .map(|(i, s)| s.tree.to_dot(&format!("P{i} {}", s.point)))
            .collect();
        std::fs::write(path, dot).map_err(|e| Fail(1, format!("{}: {e}", path.display())))?;
    }
    if a.json {
        print_json(&r.to_json());
    } else {
        print!("{}", r.render_text());
    }
    Ok(findings_code(&r))
}

fn cmd_examples(a: ExamplesArgs) -> Result<u8, Fail> {
    let name = match (&a.name, a.list) {
        (Some(n), false) => n,
        _ => {
            if a.json {
                print_json(&json!(corpus::names()));
            } else {
                for e in corpus::corpus() {
                    println!("{:<14} GF({}^{})  {}", e.name, e.p, e.s, e.text);
                }
            }
            return Ok(0);
        }
    };
    let e = corpus::entry(name)?;
    let r = analyze(&e.curve()?, a.pipeline.options())?;
    let bad = e.check(&r);
    if a.json {
        let mut j = r.to_json();
        j["example"] = json!({ "name": e.name, "provenance": e.provenance, "mismatches": bad });
        print_json(&j);
    } else {
        println!("example {} ({})", e.name, e.provenance);
        print!("{}", r.render_text());
        for b in &bad {
            println!("MISMATCH {b}");
        }
    }
    Ok(if bad.is_empty() { findings_code(&r) } else { 2 })
}

fn cmd_search(a: SearchArgs) -> Result<u8, Fail> {
    let mut cfg = SearchConfig::new(a.p, a.s, a.degree);
    cfg.mode = match a.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Random => SearchMode::Random,
    };
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.require_fnc = a.require_fnc;
    cfg.require_singular = a.require_singular;
    cfg.nu_floor = a.nu_floor;
    cfg.limit = a.limit;
    let out = search::search(&cfg)?;
    if a.json {
        print_json(&serde_json::to_value(&out).expect("json"));
    } else {
        for m in &out.matches {
            println!("#{:<8} {}", m.index, m.text);
        }
        println!(
            "examined {} rejected {} matches {} (shown {})",
            out.examined,
            out.rejected_cheap,
            out.total_matches,
            out.matches.len()
        );
    }
    Ok(0)
}

fn apply_override(entries: &mut [CorpusEntry], arg: &str) -> Result<(), Fail> {
    let bad = || Fail(1, format!("bad --expect '{arg}', want name:key=value"));
    let (name, rest) = arg.split_once(':').ok_or_else(bad)?;
    let (key, value) = rest.split_once('=').ok_or_else(bad)?;
    let e = entries
        .iter_mut()
        .find(|e| e.name == name)
        .ok_or_else(|| Fail(1, Error::UnknownExample(name.into()).to_string()))?;
    let x = &mut e.expected;
    fn num<T: std::str::FromStr>(v: &str) -> Option<T> {
        v.parse().ok()
    }
    let ok = match key {
        "fnc" => num(value).map(|v| x.fnc = Some(v)),
        "Mq" => num(value).map(|v| x.mq = Some(v)),
        "N1" => num(value).map(|v| x.n1 = Some(v)),
        "genus" => num(value).map(|v| x.genus = Some(v)),
        "smooth" => num(value).map(|v| x.smooth = Some(v)),
        "rational_singular" => num(value).map(|v| x.rational_singular = Some(v)),
        _ => None,
    };
    ok.ok_or_else(bad)
}

fn cmd_verify_corpus(a: VerifyArgs) -> Result<u8, Fail> {
    let mut entries = corpus::corpus();
    for s in &a.expect {
        apply_override(&mut entries, s)?;
    }
    let opts = a.pipeline.options();
    let mut rows = Vec::new();
    let mut failed = false;
    for e in &entries {
        let r = analyze(&e.curve()?, opts)?;
        let mut problems = e.check(&r);
        problems.extend(r.findings().map(|v| format!("claim {} fails: {}", v.id, v.notes)));
        failed |= !problems.is_empty();
        rows.push(json!({
            "name": e.name,
            "q": r.curve.q(),
            "degree": r.curve.degree(),
            "fnc": r.frobenius.fnc.fnc,
            "Mq": r.mq,
            "N1": r.n1,
            "genus": r.genus.g,
            "pass": problems.is_empty(),
            "problems": problems,
        }));
    }
    if a.json {
        print_json(&json!({ "entries": rows, "pass": !failed }));
    } else {
        println!("{:<14} {:>4} {:>3} {:>5} {:>5} {:>5} {:>8}  status", "name", "q", "d", "fnc", "Mq", "N1", "genus");
        for r in &rows {
            println!(
                "{:<14} {:>4} {:>3} {:>5} {:>5} {:>5} {:>8}  {}",
                r["name"].as_str().unwrap_or(""),
                r["q"].to_string(),
                r["degree"].to_string(),
                r["fnc"].to_string(),
                r["Mq"].to_string(),
                r["N1"].to_string(),
                r["genus"].to_string(),
                if r["pass"] == true { "ok" } else { "MISMATCH" }
            );
            if let Some(ps) = r["problems"].as_array() {
                for p in ps {
                    println!("    {}", p.as_str().unwrap_or(""));
                }
            }
        }
    }
    Ok(if failed { 2 } else { 0 })
}
