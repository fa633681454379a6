//! Argument parsing and subcommand execution.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use edcs_core::edcs::{potential, verify_edcs, Property};
use edcs_core::fault::{adversary_heuristic, build_ft_subgraph, Adversary, FaultConfig, FaultMode, DEFAULT_BUDGET};
use edcs_core::generate::{generate, GenSpec};
use edcs_core::params::DEFAULT_C;
use edcs_core::protocol::{run_protocol, split_edges, ProtocolInstance};
use edcs_core::stochastic::{stochastic_sparsifier, StochasticConfig};
use edcs_core::{build_edcs, EdcsParams};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{edcs_from_parsed, read_edge_list, write_edcs, write_edge_list, Parsed};
use crate::par;
use crate::report::{digest, edges_value, ratio_value, Report};

/// Slack on the fault-tolerance ratio: `3/2 + 8 eps`.
pub const FAULT_SLACK_PER_EPS: f64 = 8.0;

#[derive(Debug, Parser)]
#[command(name = "edcs", version, about = "Matching sparsifiers built from edge-degree constrained subgraphs")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Report file (gen, edcs: the graph file).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print nothing on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Vary one numeric flag: `name=start:end:step` or `name=v1,v2,...`.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdversaryArg {
    Exact,
    Random,
    Greedy,
    Concentrate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance in edge-list format.
    Gen {
        #[arg(long)]
        family: String,
        /// Comma-separated `key=value` pairs, e.g. `n=50,p=0.1`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Build an EDCS.
    Edcs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        beta: u64,
        /// Defaults to `beta - 1`.
        #[arg(long)]
        beta_minus: Option<u64>,
    },
    /// Check both EDCS properties of a subgraph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edcs: PathBuf,
        /// Overrides the EDCS file header.
        #[arg(long)]
        beta: Option<u64>,
        #[arg(long)]
        beta_minus: Option<u64>,
    },
    /// One-way communication protocol.
    Comm {
        #[arg(long, requires = "bob", conflicts_with = "graph")]
        alice: Option<PathBuf>,
        #[arg(long, requires = "alice")]
        bob: Option<PathBuf>,
        /// Split this graph at random instead of reading both sides.
        #[arg(long, required_unless_present = "alice")]
        graph: Option<PathBuf>,
        /// Probability that an edge of --graph goes to Alice.
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        #[arg(long)]
        epsilon: f64,
    },
    /// Stochastic matching sparsifier and Monte Carlo ratio estimate.
    Stochastic {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        epsilon: f64,
        /// Constant in the degree bound (default: EDCS_C or 4).
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Fault-tolerant subgraph against an edge-deleting adversary.
    Fault {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Search)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = AdversaryArg::Exact)]
        adversary: AdversaryArg,
        /// Fault sets per heuristic adversary.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Largest C(m, f) the exhaustive routines accept.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Edcs { .. } => "edcs",
            Command::Verify { .. } => "verify",
            Command::Comm { .. } => "comm",
            Command::Stochastic { .. } => "stochastic",
            Command::Fault { .. } => "fault",
        }
    }
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// One evaluated parameter point.
struct Point {
    inputs: BTreeMap<String, String>,
    params: Value,
    result: Value,
    /// Edge-list output of gen / edcs.
    artifact: Option<String>,
    warnings: Vec<String>,
    ok: bool,
}

/// Runs the harness on `argv` (program name first). Exit codes: 0 success,
/// 1 usage or IO error, 2 guarantee violation.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    // A swept flag may be required, so the first parse sees its first value.
    let mut probe = argv.clone();
    if let Some((name, values)) = sweep_spec(&argv).and_then(|s| parse_sweep(&s).ok()) {
        probe.push(format!("--{name}").into());
        probe.push(values[0].clone().into());
    }
    let cli = match Cli::try_parse_from(&probe) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli, &argv) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn execute(cli: &Cli, argv: &[OsString]) -> anyhow::Result<Outcome> {
    let started = Instant::now();
    let mut report = Report::new(cli.command.name());
    let mut stderr = String::new();
    let (ok, artifact) = match &cli.global.sweep {
        None => {
            let point = evaluate(&cli.command, &cli.global)?;
            for w in &point.warnings {
                stderr.push_str(&format!("warning: {w}\n"));
            }
            report.inputs = point.inputs;
            report.params = point.params;
            report.result = point.result;
            (point.ok, point.artifact)
        }
        Some(spec) => {
            let (name, values) = parse_sweep(spec)?;
            let points: Vec<Point> = values
                .par_iter()
                .map(|v| {
                    let mut args = strip_sweep(argv);
                    args.push(format!("--{name}").into());
                    args.push(v.into());
                    let cli = Cli::try_parse_from(&args).map_err(|e| anyhow!("sweep value {v}: {e}"))?;
                    evaluate(&cli.command, &cli.global)
                })
                .collect::<anyhow::Result<_>>()?;
            let ok = points.iter().all(|p| p.ok);
            report.inputs = points.first().map(|p| p.inputs.clone()).unwrap_or_default();
            report.params = json!({ "sweep": spec });
            report.result = json!({
                "parameter": name,
                "points": values
                    .iter()
                    .zip(&points)
                    .map(|(v, p)| json!({ "value": sweep_value(v), "params": p.params, "result": p.result }))
                    .collect::<Vec<_>>(),
            });
            (ok, None)
        }
    };
    report.duration_ms = started.elapsed().as_millis() as u64;
    let rendered = match cli.global.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };

    let mut stdout = String::new();
    match (artifact, &cli.global.out) {
        (Some(text), Some(path)) => {
            write_file(path, &text)?;
            stdout = rendered;
        }
        (Some(text), None) => stdout = text,
        (None, Some(path)) => write_file(path, &rendered)?,
        (None, None) => stdout = rendered,
    }
    if cli.global.quiet {
        stdout.clear();
        stderr.clear();
    }
    Ok(Outcome {
        code: if ok { 0 } else { 2 },
        stdout,
        stderr,
    })
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn sweep_spec(argv: &[OsString]) -> Option<String> {
    let mut args = argv.iter().map(|a| a.to_string_lossy());
    while let Some(a) = args.next() {
        if a == "--sweep" {
            return args.next().map(|v| v.into_owned());
        }
        if let Some(v) = a.strip_prefix("--sweep=") {
            return Some(v.to_string());
        }
    }
    None
}

fn strip_sweep(argv: &[OsString]) -> Vec<OsString> {
    let mut out = Vec::with_capacity(argv.len());
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        let s = a.to_string_lossy();
        if s == "--sweep" {
            skip = true;
        } else if !s.starts_with("--sweep=") {
            out.push(a.clone());
        }
    }
    out
}

/// `name=start:end:step` (inclusive, within rounding) or `name=v1,v2,...`.
pub fn parse_sweep(spec: &str) -> anyhow::Result<(String, Vec<String>)> {
    let (name, range) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("--sweep expects name=start:end:step or name=v1,v2,..."))?;
    let name = name.trim().trim_start_matches("--").replace('_', "-");
    if name == "seed" || name == "sweep" {
        bail!("--sweep cannot vary `{name}`");
    }
    let values: Vec<String> = if range.contains(':') {
        let parts: Vec<f64> = range
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|_| anyhow!("bad sweep bound `{t}`")))
            .collect::<anyhow::Result<_>>()?;
        let [start, end, step] = parts[..] else {
            bail!("--sweep range needs start:end:step");
        };
        if step.is_nan() || step <= 0.0 || end < start {
            bail!("--sweep range must have step > 0 and end >= start");
        }
        let count = ((end - start) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = ((start + i as f64 * step) * 1e12).round() / 1e12;
                format!("{v}")
            })
            .collect()
    } else {
        range.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
    };
    if values.is_empty() {
        bail!("--sweep has no values");
    }
    Ok((name, values))
}

fn sweep_value(v: &str) -> Value {
    v.parse::<u64>()
        .map(Value::from)
        .or_else(|_| v.parse::<f64>().map(|x| json!(x)))
        .unwrap_or_else(|_| json!(v))
}

/// `--c`, else `EDCS_C`, else the default.
fn constant(flag: Option<f64>) -> anyhow::Result<f64> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("EDCS_C") {
        Ok(s) => s.trim().parse().map_err(|_| anyhow!("EDCS_C=`{s}` is not a number")),
        Err(_) => Ok(DEFAULT_C),
    }
}

fn load(path: &Path, name: &str, point: &mut PointInputs) -> anyhow::Result<Parsed> {
    let (parsed, bytes) = read_edge_list(path)?;
    point.inputs.insert(name.to_string(), digest(&bytes));
    if parsed.duplicates > 0 {
        point
            .warnings
            .push(format!("{}: dropped {} duplicate edge(s)", path.display(), parsed.duplicates));
    }
    Ok(parsed)
}

#[derive(Default)]
struct PointInputs {
    inputs: BTreeMap<String, String>,
    warnings: Vec<String>,
}

impl PointInputs {
    fn finish(self, params: Value, result: Value, artifact: Option<String>, ok: bool) -> Point {
        Point {
            inputs: self.inputs,
            params,
            result,
            artifact,
            warnings: self.warnings,
            ok,
        }
    }
}

fn evaluate(cmd: &Command, global: &Global) -> anyhow::Result<Point> {
    let mut io = PointInputs::default();
    match cmd {
        Command::Gen { family, params } => {
            let spec = gen_spec(family, params, global.seed)?;
            let g = generate(&spec)?;
            let text = write_edge_list(&g);
            let result = json!({
                "family": spec.family(),
                "n": g.n(),
                "m": g.m(),
                "bipartite": g.left_prefix(),
                "digest": digest(text.as_bytes()),
            });
            let params = json!({ "family": family, "params": params, "seed": global.seed });
            Ok(io.finish(params, result, Some(text), true))
        }
        Command::Edcs { graph, beta, beta_minus } => {
            let g = load(graph, "graph", &mut io)?.graph;
            let bm = beta_minus.unwrap_or(beta.saturating_sub(1));
            let params = EdcsParams::new(*beta, bm)?;
            let (h, trace) = build_edcs(&g, params);
            let violations = verify_edcs(&h).len();
            let result = json!({
                "beta": beta,
                "beta_minus": bm,
                "n": g.n(),
                "m": g.m(),
                "subgraph_edges": h.size(),
                "max_degree": h.max_degree(),
                "p1_fixes": trace.p1_fixes,
                "p2_fixes": trace.p2_fixes,
                "short_circuit": trace.short_circuit,
                "potential_doubled": potential(&h),
                "violations": violations,
            });
            let ok = violations == 0 && trace.strictly_increasing();
            Ok(io.finish(json!({ "beta": beta, "beta_minus": bm }), result, Some(write_edcs(&h)), ok))
        }
        Command::Verify { graph, edcs, beta, beta_minus } => {
            let g = load(graph, "graph", &mut io)?.graph;
            let sub = load(edcs, "edcs", &mut io)?;
            let override_params = match (beta, beta_minus) {
                (Some(b), bm) => Some(EdcsParams::new(*b, bm.unwrap_or(b.saturating_sub(1)))?),
                (None, Some(_)) => bail!("--beta-minus needs --beta"),
                (None, None) => None,
            };
            let h = edcs_from_parsed(&g, &sub, override_params)?;
            let violations = verify_edcs(&h);
            let listed: Vec<Value> = violations
                .iter()
                .map(|v| {
                    json!({
                        "edge": [v.edge.0, v.edge.1],
                        "property": match v.property { Property::P1 => "P1", Property::P2 => "P2" },
                        "degree_sum": v.degree_sum,
                    })
                })
                .collect();
            let p = h.params();
            let result = json!({
                "beta": p.beta(),
                "beta_minus": p.beta_minus(),
                "subgraph_edges": h.size(),
                "valid": violations.is_empty(),
                "violation_count": violations.len(),
                "violations": listed,
            });
            let params = json!({ "beta": p.beta(), "beta_minus": p.beta_minus() });
            Ok(io.finish(params, result, None, violations.is_empty()))
        }
        Command::Comm { alice, bob, graph, q, epsilon } => {
            let (g_a, g_b, params) = match (alice, bob, graph) {
                (Some(a), Some(b), _) => {
                    let g_a = load(a, "alice", &mut io)?.graph;
                    let g_b = load(b, "bob", &mut io)?.graph;
                    (g_a, g_b, json!({ "epsilon": epsilon }))
                }
                (_, _, Some(path)) => {
                    if !(0.0..=1.0).contains(q) {
                        bail!("--q must lie in [0, 1]");
                    }
                    let g = load(path, "graph", &mut io)?.graph;
                    let (a, b) = split_edges(&g, *q, global.seed);
                    (a, b, json!({ "epsilon": epsilon, "q": q, "seed": global.seed }))
                }
                _ => bail!("comm needs --alice and --bob, or --graph"),
            };
            let inst = ProtocolInstance::new(g_a, g_b, *epsilon)?;
            let report = run_protocol(&inst)?;
            let message = edcs_core::protocol::alice_message(&inst.g_alice, *epsilon)?;
            let result = json!({
                "beta": report.beta_used,
                "message_edges": report.message_edges,
                "message_bytes": write_edge_list(&message.to_graph()).len(),
                "mu_union": report.mu_union,
                "mu_output": report.mu_output,
                "ratio": ratio_value(report.ratio),
                "epsilon": epsilon,
            });
            Ok(io.finish(params, result, None, report.within_guarantee()))
        }
        Command::Stochastic { graph, p, epsilon, c, trials } => {
            let g = load(graph, "graph", &mut io)?.graph;
            let c = constant(*c)?;
            let cfg = StochasticConfig::new(*p, *epsilon, *trials, global.seed)?.with_c(c)?;
            let h = stochastic_sparsifier(&g, &cfg)?;
            let r = par::estimate_ratio(&g, &h, &cfg);
            let ratio = if r.ratio.is_infinite() { json!("inf") } else { json!(r.ratio) };
            let result = json!({
                "beta": r.beta_used,
                "max_degree": r.max_degree_h,
                "mean_mu_g": r.mean_mu_g,
                "mean_mu_h": r.mean_mu_h,
                "ratio": ratio,
                "ci_halfwidth": r.ci_halfwidth,
                "trials": r.trials,
                "seed": r.seed,
            });
            let params = json!({ "p": p, "epsilon": epsilon, "c": c, "trials": trials, "seed": global.seed });
            let ok = r.within_guarantee(*epsilon) && r.max_degree_h <= r.beta_used;
            Ok(io.finish(params, result, None, ok))
        }
        Command::Fault { graph, f, epsilon, c, mode, adversary, trials, budget } => {
            let g = load(graph, "graph", &mut io)?.graph;
            let c = constant(*c)?;
            let mode = match mode {
                ModeArg::Exact => FaultMode::ExactMuMin,
                ModeArg::Search => FaultMode::BetaSearch,
            };
            let mut cfg = FaultConfig::new(*f, *epsilon, mode)?.with_c(c)?;
            cfg.budget = *budget;
            let sub = build_ft_subgraph(&g, &cfg)?;
            let report = match adversary {
                AdversaryArg::Exact => par::adversary_exact(&g, &sub, &cfg)?,
                other => {
                    let strategy = match other {
                        AdversaryArg::Random => Adversary::Random,
                        AdversaryArg::Greedy => Adversary::GreedyMatchingHit,
                        _ => Adversary::DegreeConcentrate,
                    };
                    adversary_heuristic(&g, &sub, &cfg, strategy, *trials, global.seed)?
                }
            };
            let result = json!({
                "beta": report.beta_used,
                "mode": mode.as_str(),
                "subgraph_edges": report.subgraph_edges,
                "mu_min": report.mu_min,
                "worst_ratio": ratio_value(report.worst_ratio),
                "worst_F": edges_value(&report.worst_f),
                "adversary": report.adversary.as_str(),
                "bad_vertex_count": report.bad_vertex_count,
            });
            let params = json!({
                "f": f,
                "epsilon": epsilon,
                "c": c,
                "mode": mode.as_str(),
                "adversary": report.adversary.as_str(),
                "trials": trials,
                "budget": budget.to_string(),
                "seed": global.seed,
            });
            let ok = report.within(FAULT_SLACK_PER_EPS * epsilon) && report.bad_bound_holds();
            Ok(io.finish(params, result, None, ok))
        }
    }
}

/// Builds a generator spec from `--family` and `--params k=v,...`.
pub fn gen_spec(family: &str, params: &str, seed: u64) -> anyhow::Result<GenSpec> {
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for pair in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("--params entry `{pair}` is not key=value"))?;
        kv.insert(k.trim(), v.trim());
    }
    let mut used = Vec::new();
    let mut int = |key: &'static str| -> anyhow::Result<usize> {
        used.push(key);
        let v = kv.get(key).ok_or_else(|| anyhow!("{family} needs `{key}` in --params"))?;
        v.parse().map_err(|_| anyhow!("`{key}={v}` is not a non-negative integer"))
    };
    let spec = match family {
        "erdos_renyi" => GenSpec::ErdosRenyi { n: int("n")?, p: 0.0, seed },
        "random_bipartite" => GenSpec::RandomBipartite { left: int("left")?, right: int("right")?, p: 0.0, seed },
        "perfect_matching" => GenSpec::PerfectMatching { k: int("k")? },
        "path" => GenSpec::Path { n: int("n")? },
        "cycle" => GenSpec::Cycle { n: int("n")? },
        "complete_bipartite" => GenSpec::CompleteBipartite { left: int("left")?, right: int("right")? },
        "a3_counterexample" => GenSpec::A3Counterexample { k: int("k")? },
        other => bail!(
            "unknown family `{other}` (expected erdos_renyi, random_bipartite, perfect_matching, path, cycle, \
             complete_bipartite, a3_counterexample)"
        ),
    };
    let spec = match spec {
        GenSpec::ErdosRenyi { n, seed, .. } => GenSpec::ErdosRenyi { n, p: prob(&kv)?, seed },
        GenSpec::RandomBipartite { left, right, seed, .. } => {
            GenSpec::RandomBipartite { left, right, p: prob(&kv)?, seed }
        }
        other => other,
    };
    if matches!(spec, GenSpec::ErdosRenyi { .. } | GenSpec::RandomBipartite { .. }) {
        used.push("p");
    }
    if let Some(extra) = kv.keys().find(|k| !used.contains(k)) {
        bail!("{family} does not take `{extra}`");
    }
    spec.validate()?;
    Ok(spec)
}

fn prob(kv: &BTreeMap<&str, &str>) -> anyhow::Result<f64> {
    let v = kv.get("p").ok_or_else(|| anyhow!("random families need `p` in --params"))?;
    v.parse().map_err(|_| anyhow!("`p={v}` is not a number"))
}
