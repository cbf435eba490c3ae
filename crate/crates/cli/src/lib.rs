//! The `subdiv-lab` command line.
//!
//! [`run`] parses arguments, runs one subcommand on a dedicated thread pool
//! and returns the exit code with everything destined for stdout and stderr,
//! so the binary and the tests share one code path.
//!
//! Exit codes: 0 success or found, 1 sound negative (not found, not dense,
//! retries exhausted), 2 input or usage error, 3 resource limit.

pub mod patterns;

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use subdiv_core::density::{self, DenseMode, DenseVerdict, DensityParams};
use subdiv_core::drc::{embed_auto, embed_h, DrcParams};
use subdiv_core::extremal::{deletion_lower_bound, extremal_exact, scaling_fit};
use subdiv_core::format::{self, EdgeList};
use subdiv_core::hom::{hom_c4_oriented, hom_generic, hom_star_oriented};
use subdiv_core::regularize::{almost_regular_subgraph, balanced_bipartition, DEFAULT_MAX_RETRIES};
use subdiv_core::structure::{embed_via_good_tuples, enumerate_good_tuples, extend_step};
use subdiv_core::{BipartiteGraph, Error, HomOptions, Result, Side};

use patterns::{build, Shape};

/// Version of the JSON report layout; see `schema/report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "subdiv-lab", version, about = "Workbench for extremal problems on graph subdivisions")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "SUBDIV_LAB_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Pattern name, e.g. `C6`, `Kt:3`, `Kst:2,3`, `Ht:4`, `heawood`.
    #[arg(long)]
    pattern: String,
    /// Replace every edge by a path with this many internal vertices.
    #[arg(long)]
    subdivide: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homomorphism counts of a pattern in an input graph.
    Count {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        input: PathBuf,
        /// Oriented count on a bipartite input: `C4`, or a star `Kst:1,k` / `Kst:k,1`.
        #[arg(long, conflicts_with = "injective")]
        oriented: bool,
        /// Count injective maps only.
        #[arg(long)]
        injective: bool,
    },
    /// Almost-regular subgraph, or a balanced bipartite subgraph with `--balanced`.
    #[command(group(ArgGroup::new("mode").required(true).args(["alpha", "balanced"])))]
    Regularize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, requires = "k")]
        balanced: bool,
        /// Almost-regularity constant of the input.
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
        max_retries: u32,
    },
    /// Density checks on the codegree graph of one side of a bipartite input.
    #[command(group(ArgGroup::new("mode").required(true).args(["rho", "heavy", "support"])))]
    Density {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::A)]
        side: SideArg,
        /// With `--d`: check (rho, d)-density.
        #[arg(long, requires = "d")]
        rho: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        /// Sample this many subsets instead of checking all of them.
        #[arg(long)]
        trials: Option<u64>,
        /// Remove pairs with codegree at least this threshold.
        #[arg(long)]
        heavy: Option<u64>,
        /// Light-support set for this threshold.
        #[arg(long)]
        support: Option<u64>,
    },
    /// Embed a subdivision pattern by dependent random choice, with a stage log.
    Embed {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        input: PathBuf,
        /// Pivot surplus multiplier; derived from the host when omitted.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        bad_threshold: Option<usize>,
    },
    /// Enumerate good tuples, extend one, or embed `Ht:<t>` through them.
    GoodTuples {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated codegree thresholds, one per tuple position.
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        min_extension: usize,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        /// Run one extension step on the first tuple with this threshold.
        #[arg(long, conflicts_with = "embed")]
        extend: Option<u64>,
        /// Embed `Ht:<t>`; needs t − 1 thresholds.
        #[arg(long)]
        embed: Option<usize>,
    },
    /// Exact extremal number by exhaustive search.
    Extremal {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
    },
    /// Pattern-free graph from G(n, p) by deleting one edge per copy.
    DeletionLb {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
        /// Edge exponent to target instead of the derived one.
        #[arg(long)]
        exponent: Option<f64>,
        /// Include the output graph in the report.
        #[arg(long)]
        emit_graph: bool,
    },
    /// Least-squares slope of log(edges) against log(n).
    Fit {
        /// Lines of `n edges`; `#` starts a comment.
        #[arg(long)]
        input: PathBuf,
    },
    /// Print a named pattern as an edge list.
    Gen {
        #[command(flatten)]
        pattern: PatternArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Regularize { .. } => "regularize",
            Command::Density { .. } => "density",
            Command::Embed { .. } => "embed",
            Command::GoodTuples { .. } => "good-tuples",
            Command::Extremal { .. } => "extremal",
            Command::DeletionLb { .. } => "deletion-lb",
            Command::Fit { .. } => "fit",
            Command::Gen { .. } => "gen",
        }
    }
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished subcommand: report fields, whether the answer was negative,
/// and an optional raw text body for `gen`.
struct Report {
    fields: Map<String, Value>,
    negative: bool,
    text: Option<String>,
    note: Option<String>,
}

impl Report {
    fn new(fields: Value) -> Self {
        let Value::Object(fields) = fields else {
            unreachable!("reports are objects")
        };
        Report {
            fields,
            negative: false,
            text: None,
            note: None,
        }
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read_input(path: &Path) -> Result<String> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

fn read_graph(path: &Path) -> Result<EdgeList> {
    format::parse(&read_input(path)?)
}

fn read_bipartite(path: &Path) -> Result<BipartiteGraph> {
    read_graph(path)?.to_bipartite()
}

fn f64_arg(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Input(format!("--{name} must be finite")))
    }
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Report> {
    match cmd {
        Command::Count {
            pattern,
            input,
            oriented,
            injective,
        } => {
            let shape = build(&pattern.pattern, pattern.subdivide, seed)?;
            let host = read_graph(input)?;
            let mut out = json!({ "pattern": pattern.pattern });
            if *oriented {
                let g = host.to_bipartite()?;
                let (key, value) = oriented_count(&pattern.pattern, &shape, &g)?;
                out[key] = Value::String(value.to_string());
            } else {
                let opts = if *injective { HomOptions::injective() } else { HomOptions::all() };
                let c = hom_generic(&shape.to_pattern()?, &host.to_graph(), &opts)?;
                out[if *injective { "injective_hom" } else { "hom" }] = Value::String(c.to_string());
            }
            Ok(Report::new(out))
        }
        Command::Regularize {
            input,
            alpha,
            balanced,
            k,
            max_retries,
        } => {
            let g = read_graph(input)?.to_graph();
            let cert = if *balanced {
                let k = f64_arg("k", k.expect("clap requires --k"))?;
                balanced_bipartition(&g, k, seed, *max_retries)?
            } else {
                almost_regular_subgraph(&g, f64_arg("alpha", alpha.expect("clap group"))?)?
            };
            Ok(Report::new(json!({ "certificate": to_value(&cert) })))
        }
        Command::Density {
            input,
            side,
            rho,
            d,
            trials,
            heavy,
            support,
        } => {
            let g = read_bipartite(input)?;
            let w = g.neighbourhood_graph((*side).into());
            if let Some(rho) = rho {
                let params = DensityParams {
                    rho: f64_arg("rho", *rho)?,
                    d: f64_arg("d", d.expect("clap requires --d"))?,
                };
                let mode = match trials {
                    Some(trials) => DenseMode::Sampled { seed, trials: *trials },
                    None => DenseMode::Exhaustive,
                };
                let verdict = density::check_rho_d_dense(&w, params, mode)?;
                let mut r = Report::new(json!({ "params": to_value(&params), "result": to_value(&verdict) }));
                r.negative = matches!(verdict, DenseVerdict::Counterexample(_));
                Ok(r)
            } else if let Some(m) = heavy {
                let f = density::heavy_edge_filter(&w, *m)?;
                Ok(Report::new(json!({ "filter": to_value(&f) })))
            } else {
                let m = support.expect("clap group");
                let s = density::large_support_set(&w, m)?;
                Ok(Report::new(json!({ "support": to_value(&s) })))
            }
        }
        Command::Embed {
            pattern,
            input,
            m,
            bad_threshold,
        } => {
            let p = build(&pattern.pattern, pattern.subdivide, seed)?.to_pattern()?;
            let g = read_bipartite(input)?;
            let e = match (m, bad_threshold) {
                (None, None) => embed_auto(&g, &p)?,
                _ => {
                    let mut params = DrcParams::for_pattern(&p, m.unwrap_or_else(|| subdiv_core::drc::auto_m(&g)));
                    if let Some(t) = bad_threshold {
                        params.bad_threshold = *t;
                    }
                    embed_h(&g, &p, &params)?
                }
            };
            Ok(Report::new(json!({ "pattern": pattern.pattern, "embedding": to_value(&e) })))
        }
        Command::GoodTuples {
            input,
            thresholds,
            min_extension,
            cap,
            extend,
            embed,
        } => {
            let g = read_bipartite(input)?;
            if let Some(t) = embed {
                let e = embed_via_good_tuples(&g, *t, thresholds, *min_extension)?;
                return Ok(Report::new(json!({ "t": t, "embedding": to_value(&e) })));
            }
            let found = enumerate_good_tuples(&g, thresholds, *min_extension, thresholds.len(), *cap)?;
            let mut out = json!({
                "count": found.certificates.len(),
                "truncated": found.truncated,
                "certificates": to_value(&found.certificates),
            });
            let mut negative = found.certificates.is_empty();
            if let Some(next) = extend {
                match found.certificates.first() {
                    Some(c) => out["extension"] = to_value(&extend_step(&g, c, *next)?),
                    None => negative = true,
                }
            }
            let mut r = Report::new(out);
            r.negative = negative;
            Ok(r)
        }
        Command::Extremal { pattern, n } => {
            let p = build(&pattern.pattern, pattern.subdivide, seed)?.to_pattern()?;
            let mut report = extremal_exact(*n, &p)?;
            report.pattern = pattern.pattern.clone();
            let mut r = Report::new(json!({ "report": to_value(&report) }));
            r.note = Some(format!("elapsed: {:.3}s", report.elapsed.as_secs_f64()));
            Ok(r)
        }
        Command::DeletionLb {
            pattern,
            n,
            exponent,
            emit_graph,
        } => {
            let p = build(&pattern.pattern, pattern.subdivide, seed)?.to_pattern()?;
            let res = deletion_lower_bound(*n, &p, *exponent, seed)?;
            let mut v = to_value(&res);
            if !emit_graph {
                v.as_object_mut().expect("object").remove("output");
            }
            Ok(Report::new(json!({ "pattern": pattern.pattern, "result": v })))
        }
        Command::Fit { input } => {
            let points = parse_points(&read_input(input)?)?;
            let fit = scaling_fit(&points)?;
            Ok(Report::new(json!({ "points": points.len(), "fit": to_value(&fit) })))
        }
        Command::Gen { pattern } => {
            let shape = build(&pattern.pattern, pattern.subdivide, seed)?;
            let text = match &shape {
                Shape::Bipartite(b) => format::write_bipartite(b),
                other => format::write_graph(&other.to_graph()),
            };
            let graph = match &shape {
                Shape::Bipartite(b) => to_value(b),
                other => to_value(&other.to_graph()),
            };
            let mut r = Report::new(json!({ "pattern": pattern.pattern, "graph": graph }));
            r.text = Some(text);
            Ok(r)
        }
    }
}

fn oriented_count(name: &str, shape: &Shape, g: &BipartiteGraph) -> Result<(&'static str, subdiv_core::Count)> {
    if name == "C4" {
        return Ok(("hom_c4_oriented", hom_c4_oriented(g)));
    }
    if let Shape::Bipartite(star) = shape {
        let (s, t) = (star.a_count(), star.b_count());
        let is_complete = star.edge_count() == s * t;
        if is_complete && s == 1 {
            return Ok(("hom_star_oriented", hom_star_oriented(g, Side::A, t as u32)?));
        }
        if is_complete && t == 1 {
            return Ok(("hom_star_oriented", hom_star_oriented(g, Side::B, s as u32)?));
        }
    }
    Err(Error::Input(
        "--oriented supports C4 and stars Kst:1,k (centre in A) or Kst:k,1 (centre in B)".into(),
    ))
}

fn parse_points(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Input(format!("line {}: expected `n edges`", i + 1)))?;
        if v.len() != 2 {
            return Err(Error::Input(format!("line {}: expected `n edges`", i + 1)));
        }
        out.push((v[0], v[1]));
    }
    Ok(out)
}

/// One `key: value` line per scalar; nested objects use dotted keys.
fn render_text(fields: &Map<String, Value>) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::String(x) => out.push_str(&format!("{prefix}: {x}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut s = String::new();
    walk("", &Value::Object(fields.clone()), &mut s);
    s
}

fn envelope(command: &str, status: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(status));
    m
}

fn json_text(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
    s.push('\n');
    s
}

/// Runs `subdiv-lab` with `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let name = cli.command.name();
    let pool = match cli.threads {
        Some(0) => Err("--threads must be at least 1".to_string()),
        t => rayon::ThreadPoolBuilder::new()
            .num_threads(t.unwrap_or(0))
            .build()
            .map_err(|e| e.to_string()),
    };
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli.command, cli.seed)),
        Err(msg) => Err(Error::Input(msg)),
    };
    let json = cli.format == OutputFormat::Json;
    match result {
        Ok(report) => {
            let code = if report.negative { 1 } else { 0 };
            let status = if report.negative { "negative" } else { "ok" };
            let mut stderr = String::new();
            let stdout = if json {
                let mut m = envelope(name, status);
                m.extend(report.fields);
                json_text(m)
            } else {
                if let Some(note) = report.note {
                    stderr = format!("{note}\n");
                }
                report.text.unwrap_or_else(|| render_text(&report.fields))
            };
            Outcome { code, stdout, stderr }
        }
        Err(Error::Failure(f)) => {
            let stdout = if json {
                let mut m = envelope(name, "failure");
                m.insert("failure".into(), to_value(&f));
                json_text(m)
            } else {
                let mut s = format!("not found: {f}\n");
                for entry in &f.log {
                    s.push_str(&format!("  {}: {}\n", entry.stage, to_value(&entry.quantities)));
                }
                s
            };
            Outcome {
                code: 1,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let (code, kind) = match &e {
                Error::Resource(_) => (3, "resource"),
                _ => (2, "input"),
            };
            let stdout = if json {
                let mut m = envelope(name, "error");
                m.insert("error".into(), json!({ "kind": kind, "message": e.to_string() }));
                json_text(m)
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("subdiv-lab {name}: {e}\n"),
            }
        }
    }
}
