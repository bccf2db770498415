//! End-to-end reproduction of the worked examples. Each group returns a list
//! of individual checks; a group passes when all of its checks pass.

use crate::energy::{cut_energy, total_energy, PNorm};
use crate::envelope::{energy_line, lower_envelope, AffineLine, TransitionDiagram};
use crate::error::Result;
use crate::fixtures::{load_fixture, Fixture, FixtureParams};
use crate::forcing::{force_together_threshold, separation_feasibility, SeparationOutcome};
use crate::partition::{count_partitions, cut_set, enumerate_partitions, is_valid_partition, Partition};
use crate::refinement::{is_j_refining, refinement_gap};
use crate::solver::{minimize, minimize_cut, minimize_deviation};
use crate::Settings;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub group: usize,
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    group: usize,
    tol: f64,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(group: usize, tol: f64) -> Self {
        Self { group, tol, checks: Vec::new() }
    }

    fn truth(&mut self, description: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            group: self.group,
            description: description.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn close(&mut self, description: impl Into<String>, got: f64, want: f64) {
        let passed = (got - want).abs() <= self.tol;
        self.truth(description, passed, format!("got {got:.12}, expected {want:.12}"));
    }

    fn line(&mut self, description: &str, line: &AffineLine, slope: f64, intercept: f64) {
        self.close(format!("{description} slope"), line.slope(), slope);
        self.close(format!("{description} intercept"), line.intercept(), intercept);
    }
}

const P2: PNorm = PNorm::Finite(2.0);

fn fixture(name: &str) -> Result<Fixture> {
    load_fixture(name, FixtureParams::default())
}

fn named<'a>(f: &'a Fixture, name: &str) -> &'a Partition {
    f.partition(name).unwrap_or_else(|| panic!("{} has no partition {name}", f.name))
}

fn same_line(a: &AffineLine, b: &AffineLine, tol: f64) -> bool {
    (a.cut - b.cut).abs() <= tol && (a.deviation - b.deviation).abs() <= tol
}

/// Every listed partition lies on the same energy line as `reference`.
fn all_on_line(
    d: &TransitionDiagram,
    parts: &[Partition],
    reference: &AffineLine,
    f: &Fixture,
) -> Result<bool> {
    let mut ok = !parts.is_empty();
    for part in parts {
        ok &= same_line(&energy_line(&f.graph, part, d.p)?, reference, d.tol);
    }
    Ok(ok)
}

fn point_at(d: &TransitionDiagram, lambda: f64) -> Option<&crate::envelope::PointSet> {
    d.points.iter().find(|pt| (pt.lambda - lambda).abs() <= d.tol)
}

fn group1(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(1, s.tol);
    let f = fixture("FIG1")?;
    let s2 = 2f64.sqrt();
    let (d, c, m) = (named(&f, "D"), named(&f, "C"), named(&f, "M"));
    let ld = energy_line(&f.graph, d, P2)?;
    let lc = energy_line(&f.graph, c, P2)?;
    let lm = energy_line(&f.graph, m, P2)?;
    r.line("line D", &ld, 5.0, 0.0);
    r.line("line C", &lc, 3.0 - 2.0 * s2, 2.0 * s2);
    r.line("line M", &lm, 4.0 - s2, s2);
    r.close("total mass", f.graph.total_mass(), 22.0);

    let env = lower_envelope(&f.graph, 2, P2, s)?;
    let bp = 2.0 - s2;
    r.truth("single breakpoint", env.breakpoints.len() == 1, format!("{:?}", env.breakpoints));
    if let Some(&b) = env.breakpoints.first() {
        r.close("breakpoint value", b, bp);
    }
    let first = &env.segments[0];
    r.truth(
        "D minimal below the breakpoint",
        first.minimizers.contains(d) && all_on_line(&env, &first.minimizers, &ld, &f)?,
        format!("{} minimizers", first.minimizers.len()),
    );
    let last = env.segments.last().expect("segments");
    r.truth(
        "C minimal above the breakpoint",
        last.minimizers.contains(c) && all_on_line(&env, &last.minimizers, &lc, &f)?,
        format!("{} minimizers", last.minimizers.len()),
    );
    let tie = point_at(&env, bp).map(|pt| pt.minimizers.clone()).unwrap_or_default();
    r.truth(
        "D, M and C tie at the breakpoint",
        tie.contains(d) && tie.contains(m) && tie.contains(c),
        format!("{} tied partitions", tie.len()),
    );
    let below = minimize(&f.graph, 2, 0.3, P2, s)?;
    r.truth(
        "minimizer at 0.3 lies on the D line",
        below.contains(d) && all_on_line(&env, &below.partitions(), &ld, &f)?,
        format!("{} minimizers", below.minimizers.len()),
    );
    let at = minimize(&f.graph, 2, bp, P2, s)?;
    r.truth(
        "solver reports the three-way tie",
        at.contains(d) && at.contains(m) && at.contains(c),
        format!("{} minimizers", at.minimizers.len()),
    );
    let high = minimize(&f.graph, 2, 0.9, P2, s)?;
    r.close("optimal value at 0.9", high.optimal_value, (3.0 - 2.0 * s2) * 0.9 + 2.0 * s2);
    r.truth("C optimal at 0.9", high.contains(c), String::new());

    let ft = env.first_transition();
    r.close("first transition", ft.lambda, bp);
    r.truth("first transition witnessed by D", ft.witnesses.contains(d), String::new());
    let lt = env.last_transition();
    r.close("last transition", lt.lambda, bp);
    r.truth("last transition witnessed by C", lt.witnesses.contains(c), String::new());
    let f1 = lower_envelope(&f.graph, 2, PNorm::Finite(1.0), s)?.lambda_first;
    let f3 = lower_envelope(&f.graph, 2, PNorm::Finite(3.0), s)?.lambda_first;
    r.truth("first transition decreases from p=1 to p=3", f1 > f3, format!("{f1} vs {f3}"));

    let hat = fixture("FIG1-HAT")?;
    r.close("four-cycle 2-partition count", count_partitions(&hat.graph, 2)? as f64, 6.0);
    let dev = minimize_deviation(&hat.graph, 2, P2, s)?;
    r.close("four-cycle minimal deviation", dev.optimal_value, 0.0);
    r.truth(
        "four-cycle has two balanced minimizers",
        dev.minimizers.len() == 2
            && dev.contains(named(&hat, "horizontal"))
            && dev.contains(named(&hat, "vertical")),
        format!("{} minimizers", dev.minimizers.len()),
    );
    Ok(r.checks)
}

fn group2(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(2, s.tol);
    let s6 = 6f64.sqrt();
    let f = fixture("FIG2")?;
    let cols = named(&f, "columns");
    r.close("column partition cut", cut_energy(&f.graph, cols)?, 4.0);
    let env = lower_envelope(&f.graph, 3, P2, s)?;
    r.truth("no breakpoint with the dashed edge", env.breakpoints.is_empty(), format!("{:?}", env.breakpoints));
    r.truth(
        "columns unique on the open interval",
        env.segments.len() == 1 && env.segments[0].minimizers == vec![cols.clone()],
        String::new(),
    );
    r.truth(
        "columns minimal at both ends",
        env.points.iter().all(|pt| pt.minimizers.contains(cols)),
        String::new(),
    );
    for lambda in [0.1, 0.5, 0.9] {
        let m = minimize(&f.graph, 3, lambda, P2, s)?;
        r.truth(
            format!("columns unique minimizer at {lambda}"),
            m.is_unique() && m.contains(cols),
            String::new(),
        );
    }
    let col_blocks = vec![vec!["bl", "tl"], vec!["bm", "tm"], vec!["br", "tr"]];
    r.truth("column blocks valid with the dashed edge", is_valid_partition(&f.graph, &col_blocks)?.valid, String::new());

    let hat = fixture("FIG2-HAT")?;
    let check = is_valid_partition(&hat.graph, &col_blocks)?;
    r.truth("column blocks invalid without the dashed edge", !check.valid, format!("{:?}", check.violations));
    let rows = named(&hat, "rows_right");
    let left = named(&hat, "left_cut");
    let lr = energy_line(&hat.graph, rows, P2)?;
    let ll = energy_line(&hat.graph, left, P2)?;
    r.line("line 4λ", &lr, 4.0, 0.0);
    r.line("left cut line", &ll, 2.0 - s6, s6);
    let env = lower_envelope(&hat.graph, 3, P2, s)?;
    r.truth("one breakpoint without the dashed edge", env.breakpoints.len() == 1, format!("{:?}", env.breakpoints));
    if let Some(&b) = env.breakpoints.first() {
        r.close("breakpoint value", b, 3.0 - s6);
    }
    r.truth(
        "4λ line minimal below the breakpoint",
        all_on_line(&env, &env.segments[0].minimizers, &lr, &hat)?,
        String::new(),
    );
    let last = env.segments.last().expect("segments");
    r.truth(
        "left cut minimal above the breakpoint",
        last.minimizers.contains(left) && all_on_line(&env, &last.minimizers, &ll, &hat)?,
        String::new(),
    );
    r.close("last transition", env.lambda_last, 3.0 - s6);
    let m = minimize(&hat.graph, 3, 0.9, P2, s)?;
    r.close("optimal value at 0.9", m.optimal_value, 0.9 * 2.0 + 0.1 * s6);
    Ok(r.checks)
}

fn group3(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(3, s.tol);
    let s6 = 6f64.sqrt();
    let f = fixture("FIG4")?;
    let rows = named(&f, "rows");
    r.close("total mass", f.graph.total_mass(), 8.0);
    r.close("total edge weight", f.graph.total_edge_weight(), 34.0);
    let cs = cut_set(&f.graph, rows)?;
    r.truth(
        "row cut removes the two unit edges",
        cs.edges.len() == 2 && cs.edges.iter().all(|&e| f.graph.edge(e).weight == 1.0),
        format!("{:?}", cs.edges),
    );
    let balanced = minimize(&f.graph, 2, 0.0, P2, s)?;
    r.truth("rows minimal at 0", balanced.contains(rows), format!("{} tied", balanced.minimizers.len()));
    for lambda in [0.01, 0.2, 0.5, 0.8, 0.99, 1.0] {
        let m = minimize(&f.graph, 2, lambda, P2, s)?;
        r.truth(format!("rows unique minimal 2-partition at {lambda}"), m.is_unique() && m.contains(rows), String::new());
    }
    let cut = minimize_cut(&f.graph, 2, s)?;
    r.truth("rows are the unique minimum 2-cut", cut.is_unique() && cut.contains(rows), String::new());
    r.close("minimum 2-cut", cut.optimal_value, 2.0);
    let env2 = lower_envelope(&f.graph, 2, P2, s)?;
    r.close("first transition of 2-partitions", env2.lambda_first, 1.0);
    r.close("last transition of 2-partitions", env2.lambda_last, 0.0);

    let (d, c, rr) = (named(&f, "D"), named(&f, "C"), named(&f, "R"));
    let ld = energy_line(&f.graph, d, P2)?;
    let lc = energy_line(&f.graph, c, P2)?;
    let lr = energy_line(&f.graph, rr, P2)?;
    r.line("line D", &ld, 12.0, 0.0);
    r.line("line C", &lc, 6.0 - s6, s6);
    r.line("line R", &lr, 6.0, 2.0);
    let env = lower_envelope(&f.graph, 4, P2, s)?;
    r.truth("one breakpoint for 4-partitions", env.breakpoints.len() == 1, format!("{:?}", env.breakpoints));
    if let Some(&b) = env.breakpoints.first() {
        r.close("breakpoint value", b, s6 / (6.0 + s6));
    }
    r.truth("D below the breakpoint", env.segments[0].minimizers.contains(d), String::new());
    r.truth("C above the breakpoint", env.segments.last().expect("segments").minimizers.contains(c), String::new());
    r.truth("R never minimal", env.never_minimal(&lr), String::new());
    r.truth("C does not refine the rows", !is_j_refining(c, rows)?, String::new());
    for lambda in [0.1, 0.3, 0.5, 0.9] {
        let rep = refinement_gap(&f.graph, 2, 2, lambda, P2, s)?;
        r.truth(
            format!("no refining pair at {lambda}"),
            rep.refining_pairs.is_empty(),
            format!("{} pairs", rep.refining_pairs.len()),
        );
    }
    Ok(r.checks)
}

fn group4(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(4, s.tol);
    let s2 = 2f64.sqrt();
    let f = fixture("FIG5")?;
    let (c2, c4, d4) = (named(&f, "C2"), named(&f, "C4"), named(&f, "D4"));
    r.close("total mass", f.graph.total_mass(), 68.0);
    r.close("F(C2)", total_energy(&f.graph, c2, 0.5, P2)?.total, 4.0 + 3.0 * s2);
    r.close("F(C4)", total_energy(&f.graph, c4, 0.5, P2)?.total, 18.0 + 17f64.sqrt());
    r.close("F(D4)", total_energy(&f.graph, d4, 0.5, P2)?.total, 23.0);
    r.truth("C4 refines C2", is_j_refining(c4, c2)?, String::new());
    let cut = minimize_cut(&f.graph, 4, s)?;
    r.close("minimum 4-cut", cut.optimal_value, 36.0);
    r.truth("two minimum 4-cuts", cut.minimizers.len() == 2, format!("{}", cut.minimizers.len()));

    let rep = refinement_gap(&f.graph, 2, 2, 0.5, P2, s)?;
    r.truth("C2 is the minimal 2-partition", rep.coarse.is_unique() && rep.coarse.contains(c2), String::new());
    r.truth("C4 is the minimal 4-partition", rep.fine.is_unique() && rep.fine.contains(c4), String::new());
    let pair = rep.refining_pairs.iter().find(|p| &p.fine == c4 && &p.coarse == c2);
    r.truth("refining pair (C4, C2) reported", rep.refining_pairs.len() == 1 && pair.is_some(), String::new());
    if let Some(pair) = pair {
        let tm = f.graph.vertex("tm")?;
        match pair.induced.iter().find(|ch| ch.block.contains(&tm)) {
            Some(ch) => {
                r.close("induced energy of C4 on the three-vertex block", ch.induced_energy, 6.0 + 2.0 * s2);
                r.close("optimal induced energy", ch.optimal_energy, 8.0);
                r.truth("induced split is not minimal", !ch.minimal, String::new());
            }
            None => r.truth("three-vertex block present", false, String::new()),
        }
        r.truth("pair fails induced minimality", !pair.induced_minimal(), String::new());
    }
    Ok(r.checks)
}

fn group5(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(5, s.tol);
    for p in [1.0, 2.0, 3.0] {
        let f = load_fixture("FIG6", FixtureParams { p, ..FixtureParams::default() })?;
        let pn = PNorm::Finite(p);
        let alpha = f.expected("alpha").expect("alpha");
        let q = 4f64.powf(1.0 / p);
        let i = named(&f, "R");
        let li = energy_line(&f.graph, i, pn)?;
        r.line(&format!("p={p} line I"), &li, 4.0 + 4.0 * alpha - q, q);
        let env = lower_envelope(&f.graph, 4, pn, s)?;
        r.truth(format!("p={p} I never minimal"), env.never_minimal(&li), String::new());
        let rows = named(&f, "rows");
        let two = minimize(&f.graph, 2, 0.5, pn, s)?;
        r.truth(format!("p={p} rows minimal 2-partition"), two.is_unique() && two.contains(rows), String::new());
        let mut refining_minimal = 0;
        // At λ = 0 every balanced partition ties, refinements of the rows included.
        let positive = env.points.iter().filter(|pt| pt.lambda > 0.0);
        for part in env.segments.iter().flat_map(|sg| &sg.minimizers).chain(positive.flat_map(|pt| &pt.minimizers)) {
            if is_j_refining(part, rows)? {
                refining_minimal += 1;
            }
        }
        r.truth(format!("p={p} no refinement of the rows is minimal for positive λ"), refining_minimal == 0, String::new());
        let hi = f.expected("d_interval_high").expect("d");
        let lo = f.expected("c_interval_low").expect("c");
        r.truth(format!("p={p} D and C intervals overlap"), lo < hi, format!("{lo} < {hi}"));
        let ld = energy_line(&f.graph, named(&f, "D"), pn)?;
        let lc = energy_line(&f.graph, named(&f, "C"), pn)?;
        r.line(&format!("p={p} line D"), &ld, 4.0 + 8.0 * alpha, 0.0);
        let c = f.expected("deviation(C)").expect("c");
        r.line(&format!("p={p} line C"), &lc, 6.0 - c, c);
    }
    Ok(r.checks)
}

fn group6(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(6, s.tol);
    let f = fixture("FIG7")?;
    let inf = PNorm::Infinity;
    let (d2, c4, d4) = (named(&f, "D2"), named(&f, "C4"), named(&f, "D4"));
    r.close("total mass", f.graph.total_mass(), 24.0);
    let cs = cut_set(&f.graph, d2)?;
    r.truth("D2 cuts only the middle edge", cs.edges.len() == 1 && cs.weight == 4.0, format!("{:?}", cs.edges));
    r.close("F(D2)", total_energy(&f.graph, d2, 0.5, inf)?.total, 2.0);
    let mut others_ok = true;
    for part in enumerate_partitions(&f.graph, 2)? {
        if &part != d2 {
            others_ok &= total_energy(&f.graph, &part, 0.5, inf)?.total >= 2.5 - s.tol;
        }
    }
    r.truth("every other 2-partition costs at least 5/2", others_ok, String::new());
    r.close("F(C4)", total_energy(&f.graph, c4, 0.5, inf)?.total, 2.5);
    r.close("F(D4)", total_energy(&f.graph, d4, 0.5, inf)?.total, 3.0);
    r.truth("D4 refines D2", is_j_refining(d4, d2)?, String::new());
    r.close("4-partition count", count_partitions(&f.graph, 4)? as f64, 84.0);
    let dev = minimize_deviation(&f.graph, 2, inf, s)?;
    r.truth("D2 is the balanced 2-partition", dev.is_unique() && dev.contains(d2), String::new());
    let rep = refinement_gap(&f.graph, 2, 2, 0.5, inf, s)?;
    r.truth("D2 is the minimal 2-partition", rep.coarse.is_unique() && rep.coarse.contains(d2), String::new());
    r.close("minimal 4-partition energy", rep.fine.optimal_value, 2.5);
    r.truth("C4 is a minimal 4-partition", rep.fine.contains(c4), String::new());
    r.truth("minimal 4-partitions do not refine D2", rep.refining_pairs.is_empty(), String::new());
    Ok(r.checks)
}

fn group7(s: &Settings) -> Result<Vec<Check>> {
    let mut r = Recorder::new(7, s.tol);
    let limit = 2f64.sqrt() / (1.0 + 2f64.sqrt());
    for (m, eps) in [(2.0, 0.1), (10.0, 0.001)] {
        let f = load_fixture("FIG3", FixtureParams { m, eps, ..FixtureParams::default() })?;
        let ab = f.graph.edge_by_ids("a", "b")?;
        let tag = format!("M={m} eps={eps}");
        let low = separation_feasibility(&f.graph, 2, 0.4, P2, ab, s)?;
        r.truth(
            format!("{tag} separation impossible at 0.4"),
            matches!(low.outcome, SeparationOutcome::Impossible { .. }),
            format!("{:?}", low.outcome),
        );
        let edge = separation_feasibility(&f.graph, 2, limit, P2, ab, s)?;
        r.truth(
            format!("{tag} separation impossible at the limit"),
            matches!(edge.outcome, SeparationOutcome::Impossible { .. }),
            format!("{:?}", edge.outcome),
        );
        let high = separation_feasibility(&f.graph, 2, 0.9, P2, ab, s)?;
        match high.outcome {
            SeparationOutcome::Possible { threshold } => {
                r.close(format!("{tag} threshold at 0.9"), threshold, 1.0 - 0.1 * 2f64.sqrt() / 0.9);
                let g = f.graph.with_edge_weight(ab, threshold * (1.0 - 1e-6))?;
                let m = minimize(&g, 2, 0.9, P2, s)?;
                let apart = named(&f, "apart");
                r.truth(format!("{tag} separating minimizer below the threshold"), m.contains(apart), String::new());
            }
            other => r.truth(format!("{tag} separation possible at 0.9"), false, format!("{other:?}")),
        }
        let force = force_together_threshold(&f.graph, 2, 0.8, P2, ab, s)?;
        r.close(format!("{tag} force-together threshold at 0.8"), force.threshold.unwrap_or(f64::NAN), 1.0 - 2f64.sqrt() / 4.0);
    }
    Ok(r.checks)
}

/// Checks for one group, `1..=7`.
pub fn run_group(group: usize, settings: &Settings) -> Result<Vec<Check>> {
    match group {
        1 => group1(settings),
        2 => group2(settings),
        3 => group3(settings),
        4 => group4(settings),
        5 => group5(settings),
        6 => group6(settings),
        7 => group7(settings),
        _ => Ok(Vec::new()),
    }
}

pub const GROUPS: std::ops::RangeInclusive<usize> = 1..=7;

pub fn run_all(settings: &Settings) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for g in GROUPS {
        out.extend(run_group(g, settings)?);
    }
    Ok(out)
}
