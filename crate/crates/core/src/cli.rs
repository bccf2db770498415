//! Command-line front end.
//!
//! Exit status: `0` on success, `1` when the analysis reports a domain
//! infeasibility (impossible separation, isolation, forcing, or an invalid
//! graph under `validate`), `2` on any input or parameter error.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::energy::PNorm;
use crate::envelope::lower_envelope;
use crate::error::{Error, Result};
use crate::fixtures::{load_fixture, FixtureParams};
use crate::forcing::{
    force_together_threshold, isolation_analysis, isolation_pigeonhole, separation_feasibility,
    ForcingAnalysis, SeparationOutcome,
};
use crate::graph::{parse_raw, validate, RawGraph, WeightedGraph};
use crate::partition::{cut_set, Partition};
use crate::refinement::refinement_gap;
use crate::reproduction;
use crate::solver::{minimize, MinimizerSet};
use crate::{Settings, DEFAULT_TOL};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "DISTRICTOR_TOL";

#[derive(Parser, Debug)]
#[command(name = "districtor", version, about = "Exact connected graph districting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the graph against the model assumptions.
    Validate(Common),
    /// All minimal N-partitions at one λ.
    Solve(Common),
    /// Optimal energy on a uniform λ grid.
    Sweep(Common),
    /// Lower envelope in λ: breakpoints and minimizers per interval.
    Transitions(Common),
    /// Edge weight above which the endpoints always share a block.
    ForceTogether(Common),
    /// Whether lowering an edge weight can ever separate its endpoints.
    Separate(Common),
    /// Isolation of one vertex in a 2-partition.
    Isolate(Common),
    /// Counting test for isolating a vertex in an N-partition.
    Pigeonhole(Common),
    /// Whether minimal jN-partitions refine minimal N-partitions.
    RefineCheck(Common),
    /// Reproduce every worked example and report PASS/FAIL.
    PaperExamples(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Built-in example graph.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// Graph file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    j: usize,
    /// Decimal or fraction such as `1/2`.
    #[arg(long, default_value = "1/2")]
    lambda: String,
    /// Real number >= 1 or `inf`.
    #[arg(long, default_value = "2")]
    p: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Report every tied minimizer rather than the first.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    all_ties: bool,
    /// Heavy-vertex factor of the FIG3 family.
    #[arg(long = "M", default_value_t = 2.0)]
    m: f64,
    /// Light-edge weight of the FIG3 family.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Norm exponent selecting a member of the FIG6 family.
    #[arg(long = "alpha-p", default_value_t = 2.0)]
    alpha_p: f64,
    /// Target edge as `a,b`.
    #[arg(long)]
    edge: Vec<String>,
    #[arg(long)]
    vertex: Option<String>,
    /// Grid intervals for `sweep`.
    #[arg(long, default_value_t = 10)]
    steps: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

/// Parses a decimal or `a/b` fraction.
pub fn parse_lambda(text: &str) -> Result<f64> {
    let t = text.trim();
    let bad = || Error::Unsupported(format!("cannot parse lambda `{text}`"));
    let value = match t.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0.0 {
                return Err(bad());
            }
            a / b
        }
        None => t.parse().map_err(|_| bad())?,
    };
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::LambdaOutOfRange(value));
    }
    Ok(value)
}

enum Outcome {
    Success,
    Infeasible(String),
}

struct Ctx {
    common: Common,
    settings: Settings,
}

impl Ctx {
    fn new(common: Common) -> Result<Self> {
        let tol = match common.tol {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Unsupported(format!("{TOL_ENV}={v} is not a number")))?,
                Err(_) => DEFAULT_TOL,
            },
        };
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::Unsupported(format!("tolerance must be non-negative, got {tol}")));
        }
        let settings = Settings { tol, workers: common.workers.max(1), prune: true };
        Ok(Self { common, settings })
    }

    fn raw(&self) -> Result<RawGraph> {
        match (&self.common.fixture, &self.common.input) {
            (Some(name), None) => {
                Ok(load_fixture(name, self.fixture_params())?.graph.to_raw())
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Unsupported(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_raw(&text)
            }
            _ => Err(Error::Unsupported("exactly one of --fixture or --input is required".into())),
        }
    }

    fn fixture_params(&self) -> FixtureParams {
        FixtureParams { m: self.common.m, eps: self.common.eps, p: self.common.alpha_p }
    }

    fn graph(&self) -> Result<WeightedGraph> {
        self.raw()?.build()
    }

    fn lambda(&self) -> Result<f64> {
        parse_lambda(&self.common.lambda)
    }

    fn p(&self) -> Result<PNorm> {
        self.common.p.parse()
    }

    fn edge(&self, graph: &WeightedGraph) -> Result<usize> {
        let spec = match self.common.edge.as_slice() {
            [one] => one,
            [] => return Err(Error::Unsupported("--edge a,b is required".into())),
            _ => {
                return Err(Error::Unsupported(
                    "only a single pair can be analysed at a time".into(),
                ))
            }
        };
        let ids: Vec<&str> = spec.split(',').map(str::trim).collect();
        match ids.as_slice() {
            [a, b] => graph.edge_by_ids(a, b),
            _ => Err(Error::Unsupported(format!(
                "--edge expects exactly two vertex ids, got `{spec}`; only a single pair can be analysed"
            ))),
        }
    }

    fn vertex(&self, graph: &WeightedGraph) -> Result<usize> {
        match &self.common.vertex {
            Some(id) => graph.vertex(id),
            None => Err(Error::Unsupported("--vertex is required".into())),
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Infeasible(message)) => {
            let _ = writeln!(err, "{message}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<Outcome> {
    let (common, handler): (Common, fn(&Ctx, &mut dyn Write) -> Result<Outcome>) = match command {
        Command::Validate(c) => (c, cmd_validate),
        Command::Solve(c) => (c, cmd_solve),
        Command::Sweep(c) => (c, cmd_sweep),
        Command::Transitions(c) => (c, cmd_transitions),
        Command::ForceTogether(c) => (c, cmd_force_together),
        Command::Separate(c) => (c, cmd_separate),
        Command::Isolate(c) => (c, cmd_isolate),
        Command::Pigeonhole(c) => (c, cmd_pigeonhole),
        Command::RefineCheck(c) => (c, cmd_refine_check),
        Command::PaperExamples(c) => (c, cmd_paper_examples),
    };
    let ctx = Ctx::new(common)?;
    handler(&ctx, out)
}

fn io(e: std::io::Error) -> Error {
    Error::Unsupported(format!("output error: {e}"))
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Unsupported(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn emit_csv(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Unsupported(format!("csv error: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Unsupported(e.to_string()))?;
    out.write_all(&bytes).map_err(io)
}

fn unsupported_format(format: Format, command: &str) -> Error {
    Error::Unsupported(format!("{command} has no {format:?} output").to_lowercase())
}

fn num(x: f64) -> String {
    crate::graph::format_g(x, 12)
}

const PALETTE: [&str; 10] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd",
];

/// Graphviz rendering: vertices filled by block, cut edges dashed red.
pub fn to_dot(graph: &WeightedGraph, partition: &Partition) -> Result<String> {
    let cut = cut_set(graph, partition)?;
    let mut s = String::from("graph districts {\n  node [style=filled];\n");
    for v in 0..graph.vertex_count() {
        let b = partition.block_of(v);
        s.push_str(&format!(
            "  \"{}\" [label=\"{}\\n{}\", fillcolor=\"{}\", block={}];\n",
            graph.id(v),
            graph.id(v),
            num(graph.mass(v)),
            PALETTE[b % PALETTE.len()],
            b
        ));
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let style = if cut.edges.contains(&i) {
            ", style=dashed, color=red, cut=true"
        } else {
            ""
        };
        s.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"{}];\n",
            graph.id(e.u),
            graph.id(e.v),
            num(e.weight),
            style
        ));
    }
    s.push_str("}\n");
    Ok(s)
}

fn p_json(p: PNorm) -> Value {
    serde_json::to_value(p).unwrap_or(Value::Null)
}

fn cmd_validate(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let raw = ctx.raw()?;
    let report = validate(&raw);
    match ctx.common.format {
        Format::Json => emit_json(out, &json!({ "valid": report.is_empty(), "violations": report }))?,
        Format::Text => {
            if report.is_empty() {
                writeln!(out, "valid").map_err(io)?;
            }
            for v in &report {
                writeln!(out, "{v}").map_err(io)?;
            }
        }
        f => return Err(unsupported_format(f, "validate")),
    }
    Ok(if report.is_empty() {
        Outcome::Success
    } else {
        Outcome::Infeasible(format!("graph violates {} model assumption(s)", report.len()))
    })
}

fn minimizer_set_json(graph: &WeightedGraph, set: &MinimizerSet, all: bool) -> Value {
    let take = if all { set.minimizers.len() } else { 1 };
    json!({
        "n": set.n,
        "lambda": set.lambda,
        "p": p_json(set.p),
        "optimal_value": set.optimal_value,
        "partitions_examined": set.partitions_examined,
        "minimizers": set.minimizers.iter().take(take).map(|m| json!({
            "partition": m.partition.to_text(graph),
            "cut": m.cut,
            "deviation": m.deviation,
            "total": m.total,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_solve(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let set = minimize(&g, ctx.common.n, ctx.lambda()?, ctx.p()?, &ctx.settings)?;
    let all = ctx.common.all_ties;
    let shown = if all { &set.minimizers[..] } else { &set.minimizers[..1] };
    match ctx.common.format {
        Format::Json => emit_json(out, &minimizer_set_json(&g, &set, all))?,
        Format::Csv => emit_csv(
            out,
            &["partition", "cut", "deviation", "total"],
            shown
                .iter()
                .map(|m| vec![m.partition.to_text(&g), num(m.cut), num(m.deviation), num(m.total)])
                .collect(),
        )?,
        Format::Dot => out.write_all(to_dot(&g, &set.minimizers[0].partition)?.as_bytes()).map_err(io)?,
        Format::Text => {
            writeln!(out, "optimal value {}", num(set.optimal_value)).map_err(io)?;
            for m in shown {
                writeln!(
                    out,
                    "{}  cut {}  deviation {}",
                    m.partition.to_text(&g),
                    num(m.cut),
                    num(m.deviation)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(Outcome::Success)
}

fn cmd_sweep(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let steps = ctx.common.steps.max(1);
    let d = lower_envelope(&g, ctx.common.n, ctx.p()?, &ctx.settings)?;
    let rows: Vec<(f64, f64, Vec<String>)> = (0..=steps)
        .map(|i| {
            let lambda = i as f64 / steps as f64;
            let parts = d.minimizers_at(lambda).iter().map(|p| p.to_text(&g)).collect();
            (lambda, d.value_at(lambda), parts)
        })
        .collect();
    match ctx.common.format {
        Format::Json => emit_json(
            out,
            &json!({
                "n": ctx.common.n,
                "p": p_json(d.p),
                "samples": rows.iter().map(|(l, v, m)| json!({"lambda": l, "value": v, "minimizers": m})).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => emit_csv(
            out,
            &["lambda", "value", "minimizers"],
            rows.iter().map(|(l, v, m)| vec![num(*l), num(*v), m.join(" ")]).collect(),
        )?,
        Format::Text => {
            for (l, v, m) in &rows {
                writeln!(out, "{}\t{}\t{}", num(*l), num(*v), m.join(" ")).map_err(io)?;
            }
        }
        f => return Err(unsupported_format(f, "sweep")),
    }
    Ok(Outcome::Success)
}

fn cmd_transitions(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let d = lower_envelope(&g, ctx.common.n, ctx.p()?, &ctx.settings)?;
    let texts = |ps: &[Partition]| ps.iter().map(|p| p.to_text(&g)).collect::<Vec<_>>();
    match ctx.common.format {
        Format::Json => emit_json(
            out,
            &json!({
                "n": d.n,
                "p": p_json(d.p),
                "breakpoints": d.breakpoints,
                "lambda_first": d.lambda_first,
                "lambda_last": d.lambda_last,
                "segments": d.segments.iter().map(|s| json!({
                    "lambda_low": s.lambda_low,
                    "lambda_high": s.lambda_high,
                    "cut": s.cut,
                    "deviation": s.deviation,
                    "minimizers": texts(&s.minimizers),
                })).collect::<Vec<_>>(),
                "points": d.points.iter().map(|pt| json!({
                    "lambda": pt.lambda,
                    "value": pt.value,
                    "minimizers": texts(&pt.minimizers),
                })).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => emit_csv(
            out,
            &["lambda_low", "lambda_high", "minimizers", "cut", "deviation"],
            d.segments
                .iter()
                .map(|s| {
                    vec![
                        num(s.lambda_low),
                        num(s.lambda_high),
                        texts(&s.minimizers).join(" "),
                        num(s.cut),
                        num(s.deviation),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            for s in &d.segments {
                writeln!(
                    out,
                    "[{}, {}]  {}λ + {}  {}",
                    num(s.lambda_low),
                    num(s.lambda_high),
                    num(s.slope()),
                    num(s.deviation),
                    texts(&s.minimizers).join(" ")
                )
                .map_err(io)?;
            }
            writeln!(out, "first transition {}", num(d.lambda_first)).map_err(io)?;
            writeln!(out, "last transition {}", num(d.lambda_last)).map_err(io)?;
        }
        f => return Err(unsupported_format(f, "transitions")),
    }
    Ok(Outcome::Success)
}

fn forcing_json(g: &WeightedGraph, a: &ForcingAnalysis) -> Value {
    let e = g.edge(a.edge);
    json!({
        "edge": [g.id(e.u), g.id(e.v)],
        "weight": e.weight,
        "n": a.n,
        "lambda": a.lambda,
        "p": p_json(a.p),
        "K": a.together_min,
        "D": a.apart_min,
        "threshold": a.threshold,
        "feasible_together": a.feasible_together,
        "feasible_apart": a.feasible_apart,
        "together_witness": a.together_witness.as_ref().map(|p| p.to_text(g)),
        "apart_witness": a.apart_witness.as_ref().map(|p| p.to_text(g)),
    })
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "none".into())
}

fn emit_forcing(ctx: &Ctx, out: &mut dyn Write, g: &WeightedGraph, a: &ForcingAnalysis, verdict: Option<&str>) -> Result<()> {
    match ctx.common.format {
        Format::Json => {
            let mut v = forcing_json(g, a);
            if let Some(verdict) = verdict {
                v["verdict"] = json!(verdict);
            }
            emit_json(out, &v)
        }
        Format::Text => {
            writeln!(out, "K {}", opt_num(a.together_min)).map_err(io)?;
            writeln!(out, "D {}", opt_num(a.apart_min)).map_err(io)?;
            writeln!(out, "threshold {}", opt_num(a.threshold)).map_err(io)?;
            if let Some(verdict) = verdict {
                writeln!(out, "{verdict}").map_err(io)?;
            }
            Ok(())
        }
        f => Err(unsupported_format(f, "weight analysis")),
    }
}

fn cmd_force_together(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let e = ctx.edge(&g)?;
    let a = force_together_threshold(&g, ctx.common.n, ctx.lambda()?, ctx.p()?, e, &ctx.settings)?;
    emit_forcing(ctx, out, &g, &a, None)?;
    Ok(if a.feasible_together {
        Outcome::Success
    } else {
        Outcome::Infeasible("Infeasible: no partition keeps the endpoints together".into())
    })
}

fn cmd_separate(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let e = ctx.edge(&g)?;
    let v = separation_feasibility(&g, ctx.common.n, ctx.lambda()?, ctx.p()?, e, &ctx.settings)?;
    let (verdict, outcome) = match v.outcome {
        SeparationOutcome::Possible { threshold } => (
            format!("Possible: any weight below {}", num(threshold)),
            Outcome::Success,
        ),
        SeparationOutcome::AlwaysSeparated => {
            ("Possible: every partition separates the endpoints".to_string(), Outcome::Success)
        }
        SeparationOutcome::Impossible { .. } => {
            let m = "Impossible: threshold non-positive".to_string();
            (m.clone(), Outcome::Infeasible(m))
        }
        SeparationOutcome::NoSeparatingPartition => {
            let m = "Impossible: no partition separates the endpoints".to_string();
            (m.clone(), Outcome::Infeasible(m))
        }
    };
    emit_forcing(ctx, out, &g, &v.analysis, Some(&verdict))?;
    Ok(outcome)
}

fn cmd_isolate(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    if ctx.common.n != 2 {
        return Err(Error::Unsupported(
            "isolation thresholds exist only for 2-partitions; the N-partition case is open".into(),
        ));
    }
    let g = ctx.graph()?;
    let v = ctx.vertex(&g)?;
    let a = isolation_analysis(&g, v, ctx.p()?, &ctx.settings)?;
    let details = a.details.as_ref();
    match ctx.common.format {
        Format::Json => emit_json(
            out,
            &json!({
                "vertex": g.id(v),
                "boundary_weight": a.boundary_weight,
                "feasible": a.feasible,
                "lambda_interval": details.and_then(|d| d.lambda_interval).map(|(l, h)| vec![l, h]),
                "scale_threshold": details.and_then(|d| d.scale_threshold),
                "singleton": details.map(|d| d.singleton.to_text(&g)),
            }),
        )?,
        Format::Text => {
            writeln!(out, "boundary weight {}", num(a.boundary_weight)).map_err(io)?;
            writeln!(out, "feasible {}", a.feasible).map_err(io)?;
            if let Some(d) = details {
                match d.lambda_interval {
                    Some((l, h)) => writeln!(out, "minimal on [{}, {}]", num(l), num(h)),
                    None => writeln!(out, "never minimal"),
                }
                .map_err(io)?;
                writeln!(out, "scale threshold {}", opt_num(d.scale_threshold)).map_err(io)?;
            }
        }
        f => return Err(unsupported_format(f, "isolate")),
    }
    Ok(if a.feasible {
        Outcome::Success
    } else {
        Outcome::Infeasible("Infeasible: removing the vertex disconnects the graph".into())
    })
}

fn cmd_pigeonhole(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let v = ctx.vertex(&g)?;
    let verdict = isolation_pigeonhole(&g, v, ctx.common.n)?;
    match ctx.common.format {
        Format::Json => emit_json(
            out,
            &json!({
                "vertex": g.id(v),
                "n": verdict.n,
                "components": verdict.components,
                "feasible": verdict.feasible,
                "forced_components": verdict.forced_components,
            }),
        )?,
        Format::Text => writeln!(
            out,
            "components {}  feasible {}  forced components {}",
            verdict.components, verdict.feasible, verdict.forced_components
        )
        .map_err(io)?,
        f => return Err(unsupported_format(f, "pigeonhole")),
    }
    Ok(if verdict.feasible {
        Outcome::Success
    } else {
        Outcome::Infeasible(format!(
            "Infeasible: {} components cannot fit in {} other blocks",
            verdict.components,
            verdict.n.saturating_sub(1)
        ))
    })
}

fn cmd_refine_check(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let g = ctx.graph()?;
    let (n, j) = (ctx.common.n, ctx.common.j);
    let r = refinement_gap(&g, n, j, ctx.lambda()?, ctx.p()?, &ctx.settings)?;
    let all = ctx.common.all_ties;
    let pairs: Vec<Value> = r
        .refining_pairs
        .iter()
        .map(|pair| {
            json!({
                "fine": pair.fine.to_text(&g),
                "coarse": pair.coarse.to_text(&g),
                "induced_minimal": pair.induced_minimal(),
                "blocks": pair.induced.iter().map(|c| json!({
                    "block": c.block.iter().map(|&v| g.id(v)).collect::<Vec<_>>(),
                    "induced_energy": c.induced_energy,
                    "optimal_energy": c.optimal_energy,
                    "minimal": c.minimal,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    match ctx.common.format {
        Format::Json => emit_json(
            out,
            &json!({
                "n": n,
                "j": j,
                "lambda": r.lambda,
                "p": p_json(r.p),
                "coarse": minimizer_set_json(&g, &r.coarse, all),
                "fine": minimizer_set_json(&g, &r.fine, all),
                "refining_pairs": pairs,
                "blocks_large_enough": r.blocks_large_enough,
            }),
        )?,
        Format::Text => {
            writeln!(out, "coarse optimum {}", num(r.coarse.optimal_value)).map_err(io)?;
            for m in &r.coarse.minimizers {
                writeln!(out, "  {}", m.partition.to_text(&g)).map_err(io)?;
            }
            writeln!(out, "fine optimum {}", num(r.fine.optimal_value)).map_err(io)?;
            for m in &r.fine.minimizers {
                writeln!(out, "  {}", m.partition.to_text(&g)).map_err(io)?;
            }
            writeln!(out, "refining pairs {}", r.refining_pairs.len()).map_err(io)?;
            for pair in &r.refining_pairs {
                writeln!(
                    out,
                    "  {} refines {}  induced minimal {}",
                    pair.fine.to_text(&g),
                    pair.coarse.to_text(&g),
                    pair.induced_minimal()
                )
                .map_err(io)?;
            }
        }
        f => return Err(unsupported_format(f, "refine-check")),
    }
    Ok(Outcome::Success)
}

fn cmd_paper_examples(ctx: &Ctx, out: &mut dyn Write) -> Result<Outcome> {
    let mut failed = 0;
    let mut rows = Vec::new();
    for group in reproduction::GROUPS {
        let checks = reproduction::run_group(group, &ctx.settings)?;
        let ok = checks.iter().all(|c| c.passed);
        for c in &checks {
            if !c.passed {
                failed += 1;
            }
            rows.push(c.clone());
        }
        if ctx.common.format == Format::Text {
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} [{group}] {}  {}", c.description, c.detail).map_err(io)?;
            }
            writeln!(out, "group {group}: {}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
        }
    }
    match ctx.common.format {
        Format::Text => {}
        Format::Json => emit_json(
            out,
            &json!({
                "passed": failed == 0,
                "checks": rows.iter().map(|c| json!({
                    "group": c.group,
                    "description": c.description,
                    "passed": c.passed,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => emit_csv(
            out,
            &["group", "description", "passed", "detail"],
            rows.iter()
                .map(|c| vec![c.group.to_string(), c.description.clone(), c.passed.to_string(), c.detail.clone()])
                .collect(),
        )?,
        f => return Err(unsupported_format(f, "paper-examples")),
    }
    Ok(if failed == 0 {
        Outcome::Success
    } else {
        Outcome::Infeasible(format!("{failed} check(s) failed"))
    })
}
