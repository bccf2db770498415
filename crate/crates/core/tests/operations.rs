mod common;

use common::*;
use districtor::forcing::{IsolationAnalysis, SeparationOutcome};
use districtor::graph::{validate, Violation};
use districtor::partition::PartitionViolation;
use districtor::{
    count_partitions, cut_energy, cut_set, deviation_energy, energy_line, enumerate_partitions,
    first_transition, force_together_threshold, is_j_refining, is_valid_partition,
    isolation_analysis, isolation_pigeonhole, last_transition, load_fixture, lower_envelope, mass,
    minimize, minimize_cut, minimize_deviation, parse_graph, refinement_gap, scale_weights,
    separation_feasibility, total_energy, Error, Fixture, FixtureParams, PNorm, Partition, RawGraph,
    Settings, WeightedGraph,
};

const P2: PNorm = PNorm::Finite(2.0);

fn fx(name: &str) -> Fixture {
    load_fixture(name, FixtureParams::default()).unwrap()
}

fn part<'a>(f: &'a Fixture, name: &str) -> &'a Partition {
    f.partition(name).unwrap()
}

fn s() -> Settings {
    Settings::default()
}

fn close(a: f64, b: f64) {
    assert!((a - b).abs() <= TOL, "{a} != {b}");
}

fn path3() -> WeightedGraph {
    parse_graph("v a 1\nv b 1\nv c 1\ne a b 1\ne b c 1").unwrap()
}

fn star(leaves: usize, weight: f64) -> WeightedGraph {
    let mut raw = RawGraph::new().vertex("c", 1.0);
    for i in 0..leaves {
        raw = raw.vertex(format!("l{i}"), 1.0).edge("c", format!("l{i}"), weight);
    }
    raw.build().unwrap()
}

#[test]
fn parse_examples() {
    let g = parse_graph("v a 1\nv b 1\nv c 4\ne a b 0.1\ne b c 1").unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.edge_count(), 2);
    assert_eq!(g.mass(2), 4.0);
    let single = parse_graph("v a 1").unwrap();
    assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
    assert!(matches!(parse_graph("v a 1\ne a a 1"), Err(Error::SelfLoop(_))));
    assert!(matches!(parse_graph("v a 1\nv b 1\ne a b x"), Err(Error::Syntax { line: 3, .. })));
    assert!(matches!(parse_graph("v a 1\nv a 1"), Err(Error::DuplicateVertex(_))));
    assert!(matches!(
        parse_graph("v a 1\nv b 1\ne a b 1\ne b a 2"),
        Err(Error::DuplicateEdge(..))
    ));
    assert!(matches!(parse_graph("v a 1\ne a z 1"), Err(Error::UnknownVertex(_))));
    assert!(matches!(parse_graph("v a 1\nv b 1\ne a b -1"), Err(Error::NonPositiveWeight(..))));
    assert_eq!(parse_graph("v a 1\nv b 1").unwrap_err(), Error::Disconnected);
}

#[test]
fn validate_examples() {
    assert!(validate(&fx("FIG1").graph.to_raw()).is_empty());
    let split = RawGraph::new().vertex("a", 1.0).vertex("b", 1.0);
    assert_eq!(validate(&split), vec![Violation::Disconnected { components: 2 }]);
    let light = RawGraph::new().vertex("a", 0.0);
    assert_eq!(validate(&light), vec![Violation::NonPositiveMass { id: "a".into() }]);
}

#[test]
fn scaling_examples() {
    let g = scale_weights(&fx("FIG4").graph, 2.0).unwrap();
    assert!(g.masses().iter().all(|&m| m == 2.0));
    let weights: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
    assert_eq!(weights, vec![8.0, 20.0, 8.0, 2.0, 4.0, 20.0, 4.0, 2.0]);
    let f = fx("FIG1");
    let same = scale_weights(&f.graph, 1.0).unwrap();
    assert_eq!(same.to_raw(), f.graph.to_raw());
    assert!(matches!(scale_weights(&f.graph, 0.0), Err(Error::InvalidScale(_))));

    let f2 = fx("FIG2");
    let half = scale_weights(&f2.graph, 0.5).unwrap();
    for lambda in [0.0, 0.3, 0.7, 1.0] {
        for p in [PNorm::Finite(1.0), P2, PNorm::Infinity] {
            let a = minimize(&f2.graph, 3, lambda, p, &s()).unwrap().partitions();
            let b = minimize(&half, 3, lambda, p, &s()).unwrap().partitions();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn enumeration_examples() {
    let hat = fx("FIG1-HAT");
    let parts: Vec<Partition> = enumerate_partitions(&hat.graph, 2).unwrap().collect();
    assert_eq!(parts.len(), 6);
    let singles = parts.iter().filter(|p| p.blocks().iter().any(|b| b.len() == 1)).count();
    assert_eq!(singles, 4);
    let oracle: Vec<Partition> =
        oracle_partitions(&hat.graph, 2).iter().map(|l| Partition::from_labels(l)).collect();
    assert_eq!(parts, oracle);

    let g = fx("FIG5").graph;
    assert_eq!(enumerate_partitions(&g, 1).unwrap().count(), 1);
    let all: Vec<Partition> = enumerate_partitions(&g, 5).unwrap().collect();
    assert_eq!(all.len(), 1);
    assert!(all[0].blocks().iter().all(|b| b.len() == 1));
    assert!(matches!(enumerate_partitions(&g, 0), Err(Error::BlockCountOutOfRange { .. })));
    assert!(matches!(enumerate_partitions(&g, 6), Err(Error::BlockCountOutOfRange { .. })));
}

#[test]
fn partition_validity_examples() {
    let cols = vec![vec!["tl", "bl"], vec!["tm", "bm"], vec!["tr", "br"]];
    assert!(is_valid_partition(&fx("FIG2").graph, &cols).unwrap().valid);
    let check = is_valid_partition(&fx("FIG2-HAT").graph, &cols).unwrap();
    assert!(!check.valid);
    assert_eq!(check.violations, vec![PartitionViolation::Disconnected { block: 0 }]);
    let g = parse_graph("v a 1\nv b 1\ne a b 1").unwrap();
    let check = is_valid_partition(&g, &[vec!["a"], vec!["a", "b"]]).unwrap();
    assert!(check.violations.contains(&PartitionViolation::Overlap { vertex: "a".into() }));
    assert!(is_valid_partition(&g, &[vec!["a"], vec!["q"]]).is_err());
}

#[test]
fn cut_set_examples() {
    let f4 = fx("FIG4");
    let rows = cut_set(&f4.graph, part(&f4, "rows")).unwrap();
    assert_eq!(rows.weight, 2.0);
    assert!(rows.edges.iter().all(|&e| f4.graph.edge(e).weight == 1.0));
    let whole = Partition::from_labels(&[0; 8]);
    assert!(cut_set(&f4.graph, &whole).unwrap().edges.is_empty());
    let f7 = fx("FIG7");
    let mid = cut_set(&f7.graph, part(&f7, "D2")).unwrap();
    assert_eq!(mid.edges.len(), 1);
    assert_eq!(f7.graph.edge(mid.edges[0]).weight, 4.0);
}

#[test]
fn count_examples() {
    assert_eq!(count_partitions(&path3(), 2).unwrap(), 2);
    let tri = parse_graph("v a 1\nv b 1\nv c 1\ne a b 1\ne b c 1\ne a c 1").unwrap();
    assert_eq!(count_partitions(&tri, 2).unwrap(), 3);
    assert_eq!(oracle_partitions(&tri, 2).len(), 3);
    assert_eq!(count_partitions(&fx("FIG7").graph, 4).unwrap(), 84);
    assert!(count_partitions(&tri, 4).is_err());
}

#[test]
fn energy_examples() {
    let f5 = fx("FIG5");
    close(mass(&f5.graph, &[0, 1, 2, 3, 4]).unwrap(), 68.0);
    assert_eq!(mass(&f5.graph, &[]), Err(Error::EmptyBlock));
    close(fx("FIG1").graph.total_mass(), 22.0);

    let f1 = fx("FIG1");
    close(cut_energy(&f1.graph, part(&f1, "C")).unwrap(), 3.0);
    close(deviation_energy(&f1.graph, part(&f1, "C"), P2).unwrap(), 2.0 * 2f64.sqrt());
    let f4 = fx("FIG4");
    close(cut_energy(&f4.graph, part(&f4, "D")).unwrap(), 12.0);
    close(cut_energy(&f4.graph, &Partition::from_labels(&[0; 8])).unwrap(), 0.0);
    let f7 = fx("FIG7");
    close(deviation_energy(&f7.graph, part(&f7, "C4"), PNorm::Infinity).unwrap(), 2.0);
    close(deviation_energy(&f4.graph, part(&f4, "D"), PNorm::Finite(3.7)).unwrap(), 0.0);
    assert!("0.5".parse::<PNorm>().is_err());

    close(total_energy(&f5.graph, part(&f5, "C2"), 0.5, P2).unwrap().total, 4.0 + 3.0 * 2f64.sqrt());
    close(total_energy(&f5.graph, part(&f5, "D4"), 0.5, P2).unwrap().total, 23.0);
    let at_one = total_energy(&f5.graph, part(&f5, "C4"), 1.0, P2).unwrap();
    assert_eq!(at_one.total, at_one.cut);
    assert!(total_energy(&f5.graph, part(&f5, "C4"), 1.1, P2).is_err());
}

#[test]
fn minimize_examples() {
    let f1 = fx("FIG1");
    let d = part(&f1, "D");
    let m = minimize(&f1.graph, 2, 0.3, P2, &s()).unwrap();
    assert!(m.contains(d));
    // D's mirror image ({br, c}) has the same line; no other partition is optimal.
    let ld = energy_line(&f1.graph, d, P2).unwrap();
    for p in m.partitions() {
        let l = energy_line(&f1.graph, &p, P2).unwrap();
        assert_eq!((l.cut, l.deviation), (ld.cut, ld.deviation));
    }
    let tie = minimize(&f1.graph, 2, 2.0 - 2f64.sqrt(), P2, &s()).unwrap();
    for name in ["D", "M", "C"] {
        assert!(tie.contains(part(&f1, name)), "{name}");
    }
    // Two D, four M and two C variants.
    assert_eq!(tie.minimizers.len(), 8);

    let hat = fx("FIG2-HAT");
    let m = minimize(&hat.graph, 3, 0.9, P2, &s()).unwrap();
    close(m.optimal_value, 0.9 * 2.0 + 0.1 * 6f64.sqrt());
    assert_eq!(m.partitions(), vec![part(&hat, "left_cut").clone()]);
    let m = minimize(&hat.graph, 3, 0.3, P2, &s()).unwrap();
    close(m.optimal_value, 0.3 * 4.0);
    assert!(m.contains(part(&hat, "rows_right")));
}

#[test]
fn minimize_cut_examples() {
    let f4 = fx("FIG4");
    let m = minimize_cut(&f4.graph, 2, &s()).unwrap();
    assert!(m.is_unique() && m.contains(part(&f4, "rows")));
    close(m.optimal_value, 2.0);
    let f5 = fx("FIG5");
    let m = minimize_cut(&f5.graph, 4, &s()).unwrap();
    close(m.optimal_value, 36.0);
    assert_eq!(m.minimizers.len(), 2);
    assert!(m.contains(part(&f5, "C4")));
    close(minimize_cut(&f5.graph, 1, &s()).unwrap().optimal_value, 0.0);
}

#[test]
fn minimize_deviation_examples() {
    let hat = fx("FIG1-HAT");
    let m = minimize_deviation(&hat.graph, 2, P2, &s()).unwrap();
    assert_eq!(m.minimizers.len(), 2);
    close(m.optimal_value, 0.0);
    let f7 = fx("FIG7");
    let m = minimize_deviation(&f7.graph, 2, PNorm::Infinity, &s()).unwrap();
    assert!(m.is_unique() && m.contains(part(&f7, "D2")));
    let m = minimize_deviation(&path3(), 3, P2, &s()).unwrap();
    assert!(m.is_unique());
    close(m.optimal_value, 0.0);
}

#[test]
fn energy_line_examples() {
    let f1 = fx("FIG1");
    let l = energy_line(&f1.graph, part(&f1, "M"), P2).unwrap();
    close(l.slope(), 4.0 - 2f64.sqrt());
    close(l.intercept(), 2f64.sqrt());
    let f4 = fx("FIG4");
    let l = energy_line(&f4.graph, part(&f4, "R"), P2).unwrap();
    close(l.slope(), 6.0);
    close(l.intercept(), 2.0);
    let l = energy_line(&f4.graph, part(&f4, "D"), P2).unwrap();
    close(l.intercept(), 0.0);
    close(l.slope(), 12.0);
}

#[test]
fn envelope_examples() {
    let f1 = fx("FIG1");
    let d = lower_envelope(&f1.graph, 2, P2, &s()).unwrap();
    assert_eq!(d.breakpoints.len(), 1);
    close(d.breakpoints[0], 2.0 - 2f64.sqrt());
    assert!(d.segments[0].minimizers.contains(part(&f1, "D")));
    assert!(d.segments[1].minimizers.contains(part(&f1, "C")));

    let hat = fx("FIG2-HAT");
    let d = lower_envelope(&hat.graph, 3, P2, &s()).unwrap();
    assert_eq!(d.breakpoints.len(), 1);
    close(d.breakpoints[0], 3.0 - 6f64.sqrt());

    let f4 = fx("FIG4");
    let d = lower_envelope(&f4.graph, 4, P2, &s()).unwrap();
    let s6 = 6f64.sqrt();
    assert_eq!(d.breakpoints.len(), 1);
    close(d.breakpoints[0], s6 / (6.0 + s6));
    assert!(d.segments[0].minimizers.contains(part(&f4, "D")));
    assert!(d.segments[1].minimizers.contains(part(&f4, "C")));
}

#[test]
fn transition_examples() {
    let f1 = fx("FIG1");
    let t = first_transition(&f1.graph, 2, P2, &s()).unwrap();
    close(t.lambda, 2.0 - 2f64.sqrt());
    assert!(t.witnesses.contains(part(&f1, "D")));
    let t = last_transition(&f1.graph, 2, P2, &s()).unwrap();
    close(t.lambda, 2.0 - 2f64.sqrt());
    assert!(t.witnesses.contains(part(&f1, "C")));

    let f4 = fx("FIG4");
    close(first_transition(&f4.graph, 2, P2, &s()).unwrap().lambda, 1.0);
    close(last_transition(&f4.graph, 2, P2, &s()).unwrap().lambda, 0.0);

    let one = first_transition(&f1.graph, 2, PNorm::Finite(1.0), &s()).unwrap().lambda;
    let three = first_transition(&f1.graph, 2, PNorm::Finite(3.0), &s()).unwrap().lambda;
    assert!(one > three);

    let hat = fx("FIG2-HAT");
    close(last_transition(&hat.graph, 3, P2, &s()).unwrap().lambda, 3.0 - 6f64.sqrt());
}

fn fig3(m: f64, eps: f64) -> Fixture {
    load_fixture("FIG3", FixtureParams { m, eps, ..FixtureParams::default() }).unwrap()
}

#[test]
fn force_together_examples() {
    let f = fig3(2.0, 0.1);
    let ab = f.graph.edge_by_ids("a", "b").unwrap();
    let a = force_together_threshold(&f.graph, 2, 0.8, P2, ab, &s()).unwrap();
    let s2 = 2f64.sqrt();
    close(a.together_min.unwrap(), 0.8 + 0.2 * s2);
    close(a.apart_min.unwrap(), 0.2 * 2.0 * s2);
    close(a.threshold.unwrap(), 1.0 - s2 / 4.0);
    assert_eq!(a.forces_together(1.0), Some(true));
    assert_eq!(a.forces_together(0.5), Some(false));

    let p = path3();
    let e = p.edge_by_ids("a", "b").unwrap();
    let a = force_together_threshold(&p, 3, 0.5, P2, e, &s()).unwrap();
    assert!(!a.feasible_together);
    assert!(a.threshold.is_none());
    assert_eq!(force_together_threshold(&p, 2, 0.0, P2, e, &s()), Err(Error::ZeroLambda));

    let mut r = rng(3);
    for _ in 0..20 {
        use rand::Rng;
        let v = r.gen_range(3..=7);
        let g = random_graph(&mut r, v, 0.3, 0.5, 10.0);
        let n = r.gen_range(2..v);
        let e = r.gen_range(0..g.edge_count());
        let lambda = r.gen_range(0.2..=1.0);
        let a = force_together_threshold(&g, n, lambda, P2, e, &s()).unwrap();
        let Some(t) = a.threshold else { continue };
        let w = if t > 0.0 { t * (1.0 + 1e-6) } else { g.edge(e).weight };
        let m = minimize(&g.with_edge_weight(e, w).unwrap(), n, lambda, P2, &s()).unwrap();
        let (x, y) = (g.edge(e).u, g.edge(e).v);
        assert!(m.minimizers.iter().all(|mm| mm.partition.same_block(x, y)));
    }
}

#[test]
fn separation_examples() {
    let f = fig3(2.0, 0.1);
    let ab = f.graph.edge_by_ids("a", "b").unwrap();
    let low = separation_feasibility(&f.graph, 2, 0.4, P2, ab, &s()).unwrap();
    assert!(matches!(low.outcome, SeparationOutcome::Impossible { .. }));
    let high = separation_feasibility(&f.graph, 2, 0.9, P2, ab, &s()).unwrap();
    let SeparationOutcome::Possible { threshold } = high.outcome else { panic!("{:?}", high.outcome) };
    // λ(1 − ε) > (1 − λ)√2 solved for ε.
    close(threshold, 1.0 - 0.1 * 2f64.sqrt() / 0.9);
    let below = f.graph.with_edge_weight(ab, threshold * 0.999).unwrap();
    let m = minimize(&below, 2, 0.9, P2, &s()).unwrap();
    assert_eq!(m.partitions(), vec![part(&f, "apart").clone()]);

    let limit = 2f64.sqrt() / (1.0 + 2f64.sqrt());
    for mm in [1.5, 2.0, 50.0] {
        let f = fig3(mm, 0.1);
        let v = separation_feasibility(&f.graph, 2, limit, P2, ab, &s()).unwrap();
        assert!(matches!(v.outcome, SeparationOutcome::Impossible { .. }), "{:?}", v.outcome);
    }
    assert_eq!(separation_feasibility(&f.graph, 2, 0.0, P2, ab, &s()).unwrap_err(), Error::ZeroLambda);
    let p = path3();
    let v = separation_feasibility(&p, 1, 0.5, P2, 0, &s()).unwrap();
    assert_eq!(v.outcome, SeparationOutcome::NoSeparatingPartition);
}

#[test]
fn isolation_examples() {
    let g = star(3, 0.01);
    let leaf = g.vertex("l0").unwrap();
    let iso: IsolationAnalysis = isolation_analysis(&g, leaf, P2, &s()).unwrap();
    assert!(iso.feasible);
    close(iso.boundary_weight, 0.01);
    let details = iso.details.unwrap();
    let (lo, hi) = details.lambda_interval.unwrap();
    assert!(lo < 1.0);
    close(hi, 1.0);
    // The three leaf cuts tie; any heavier boundary hands the top segment to the others.
    let t = details.scale_threshold.unwrap();
    assert!((1.0..1.0 + 1e-5).contains(&t), "{t}");

    let p = path3();
    let mid = isolation_analysis(&p, 1, P2, &s()).unwrap();
    assert!(!mid.feasible);
    assert!(mid.details.is_none());
    assert!(isolation_analysis(&parse_graph("v a 1").unwrap(), 0, P2, &s()).is_err());
}

#[test]
fn isolation_threshold_is_found_by_bisection() {
    // End of a unit path: the balanced split has the same cut, so any shrink isolates.
    let g = parse_graph("v a 1\nv b 1\nv c 1\nv d 1\ne a b 1\ne b c 1\ne c d 1").unwrap();
    let a = g.vertex("a").unwrap();
    let iso = isolation_analysis(&g, a, P2, &s()).unwrap();
    let t = iso.details.unwrap().scale_threshold.unwrap();
    assert!(t < 1.0 && t > 1.0 - 1e-5, "{t}");
}

#[test]
fn pigeonhole_examples() {
    let g = star(4, 1.0);
    let v = isolation_pigeonhole(&g, 0, 3).unwrap();
    assert_eq!(v.components, 4);
    assert!(!v.feasible);
    let isolating = enumerate_partitions(&g, 3)
        .unwrap()
        .filter(|p| p.blocks().iter().any(|b| b == &vec![0]))
        .count();
    assert_eq!(isolating, 0);
    let v = isolation_pigeonhole(&path3(), 0, 2).unwrap();
    assert_eq!(v.components, 1);
    assert!(v.feasible);
    let f1 = fx("FIG1");
    let v = isolation_pigeonhole(&f1.graph, f1.graph.vertex("c").unwrap(), 2).unwrap();
    assert_eq!(v.components, 1);
    assert!(v.feasible);
}

#[test]
fn refining_examples() {
    let f5 = fx("FIG5");
    assert!(is_j_refining(part(&f5, "C4"), part(&f5, "C2")).unwrap());
    assert!(is_j_refining(part(&f5, "C4"), part(&f5, "C4")).unwrap());
    let f4 = fx("FIG4");
    assert!(!is_j_refining(part(&f4, "C"), part(&f4, "rows")).unwrap());
    assert!(matches!(
        is_j_refining(part(&f4, "rows"), part(&f4, "C")),
        Err(Error::SizeMismatch { .. })
    ));
}

#[test]
fn refinement_gap_examples() {
    let f4 = fx("FIG4");
    let r = refinement_gap(&f4.graph, 2, 2, 0.5, P2, &s()).unwrap();
    assert!(r.refining_pairs.is_empty());
    assert!(r.fine.is_unique() && r.fine.contains(part(&f4, "C")));
    assert_eq!(r.blocks_large_enough, vec![true]);

    let f5 = fx("FIG5");
    let r = refinement_gap(&f5.graph, 2, 2, 0.5, P2, &s()).unwrap();
    assert_eq!(r.refining_pairs.len(), 1);
    let pair = &r.refining_pairs[0];
    assert_eq!(&pair.fine, part(&f5, "C4"));
    assert!(!pair.induced_minimal());
    let three = pair.induced.iter().find(|c| c.block.len() == 3).unwrap();
    close(three.induced_energy, 6.0 + 2.0 * 2f64.sqrt());
    close(three.optimal_energy, 8.0);

    let f6 = load_fixture("FIG6", FixtureParams { p: 1.0, ..FixtureParams::default() }).unwrap();
    for lambda in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let r = refinement_gap(&f6.graph, 2, 2, lambda, PNorm::Finite(1.0), &s()).unwrap();
        assert!(!r.fine.contains(part(&f6, "R")));
        assert!(r.refining_pairs.is_empty(), "λ={lambda}");
    }

    let f7 = fx("FIG7");
    let r = refinement_gap(&f7.graph, 2, 2, 0.5, PNorm::Infinity, &s()).unwrap();
    close(r.fine.optimal_value, 2.5);
    assert!(r.refining_pairs.is_empty());
    close(total_energy(&f7.graph, part(&f7, "D4"), 0.5, PNorm::Infinity).unwrap().total, 3.0);
    assert!(refinement_gap(&f7.graph, 6, 2, 0.5, P2, &s()).is_err());
}

#[test]
fn fixture_examples() {
    let f4 = fx("FIG4");
    close(f4.graph.total_mass(), 8.0);
    close(f4.graph.total_edge_weight(), 34.0);
    let f7 = fx("FIG7");
    close(f7.graph.total_mass(), 24.0);
    assert_eq!(f7.graph.edges()[4].weight, 4.0);
    assert!(matches!(
        load_fixture("FIG3", FixtureParams { m: 1.0, ..FixtureParams::default() }),
        Err(Error::InvalidFixtureParam(_))
    ));
    for name in districtor::fixtures::NAMES {
        let f = fx(name);
        for (label, partition) in f.named_partitions() {
            assert!(cut_energy(&f.graph, partition).is_ok(), "{name} {label}");
        }
    }
}

#[test]
fn fixture_expected_values_are_reproduced() {
    let checks: [(&str, &str, f64, PNorm); 4] = [
        ("FIG5", "C4", 0.5, P2),
        ("FIG5", "D4", 0.5, P2),
        ("FIG7", "C4", 0.5, PNorm::Infinity),
        ("FIG7", "D2", 0.5, PNorm::Infinity),
    ];
    for (name, label, lambda, p) in checks {
        let f = fx(name);
        let want = f.expected(&format!("F_half({label})")).unwrap();
        close(total_energy(&f.graph, part(&f, label), lambda, p).unwrap().total, want);
    }
    let f1 = fx("FIG1");
    for label in ["C", "D", "M"] {
        let p = part(&f1, label);
        close(cut_energy(&f1.graph, p).unwrap(), f1.expected(&format!("cut({label})")).unwrap());
        close(
            deviation_energy(&f1.graph, p, P2).unwrap(),
            f1.expected(&format!("deviation({label})")).unwrap(),
        );
    }
}
