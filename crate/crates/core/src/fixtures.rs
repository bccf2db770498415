//! The worked-example graphs, with named partitions and closed-form values.

use crate::error::{Error, Result};
use crate::graph::{parse_graph, RawGraph, WeightedGraph};
use crate::partition::Partition;

const FIG1: &str = include_str!("../data/fig1.graph");
const FIG1_HAT: &str = include_str!("../data/fig1-hat.graph");
const FIG2: &str = include_str!("../data/fig2.graph");
const FIG2_HAT: &str = include_str!("../data/fig2-hat.graph");
const FIG4: &str = include_str!("../data/fig4.graph");
const FIG5: &str = include_str!("../data/fig5.graph");
const FIG7: &str = include_str!("../data/fig7.graph");

/// Canonical fixture names.
pub const NAMES: [&str; 9] =
    ["FIG1", "FIG1-HAT", "FIG2", "FIG2-HAT", "FIG3", "FIG4", "FIG5", "FIG6", "FIG7"];

/// Parameters of the families `FIG3(M, ε)` and `FIG6(p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixtureParams {
    pub m: f64,
    pub eps: f64,
    pub p: f64,
}

impl Default for FixtureParams {
    fn default() -> Self {
        Self { m: 2.0, eps: 0.1, p: 2.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub label: &'static str,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: WeightedGraph,
    pub params: FixtureParams,
    partitions: Vec<(&'static str, Partition)>,
    pub expected: Vec<Expected>,
}

impl Fixture {
    pub fn partition(&self, name: &str) -> Option<&Partition> {
        self.partitions.iter().find(|(n, _)| *n == name).map(|(_, p)| p)
    }

    pub fn named_partitions(&self) -> &[(&'static str, Partition)] {
        &self.partitions
    }

    pub fn expected(&self, label: &str) -> Option<f64> {
        self.expected.iter().find(|e| e.label == label).map(|e| e.value)
    }
}

/// Scale factor applied to the bottom edges and the heavy top edge of FIG6.
pub fn fig6_alpha(p: f64) -> f64 {
    let q = 4f64.powf(1.0 / p);
    let c = (2.0 + 2f64.powf(p)).powf(1.0 / p);
    1.01 * 0.5 * q / (2.0 * q - c)
}

/// Reweighting that makes the energy at `lambda` of the new graph equal
/// the energy at `1/2` of the original for every partition: masses are
/// multiplied by `1/(2(1−λ))` and edge weights by `1/(2λ)`.
pub fn equalize_to_half(graph: &WeightedGraph, lambda: f64) -> Result<WeightedGraph> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    graph.map_weights(|_, m| m / (2.0 * (1.0 - lambda)), |_, e| e.weight / (2.0 * lambda))
}

fn fig3_graph(m: f64, eps: f64) -> Result<WeightedGraph> {
    RawGraph::new()
        .vertex("a", 1.0)
        .vertex("b", 1.0)
        .vertex("c", 2.0 * m)
        .edge("a", "b", eps)
        .edge("b", "c", 1.0)
        .build()
}

fn named(graph: &WeightedGraph, list: &[(&'static str, &str)]) -> Result<Vec<(&'static str, Partition)>> {
    list.iter().map(|&(n, text)| Ok((n, Partition::parse(graph, text)?))).collect()
}

fn exp(list: &[(&'static str, f64)]) -> Vec<Expected> {
    list.iter().map(|&(label, value)| Expected { label, value }).collect()
}

/// Loads a fixture by name, ignoring case. `FIG3` reads `m` and `eps`,
/// `FIG6` reads `p`; the other fixtures ignore `params`.
pub fn load_fixture(name: &str, params: FixtureParams) -> Result<Fixture> {
    let upper = name.trim().to_ascii_uppercase();
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let fixture = match upper.as_str() {
        "FIG1" => {
            let graph = parse_graph(FIG1)?;
            let partitions = named(
                &graph,
                &[("D", "tl,c|tr,br,bl"), ("C", "br|tl,tr,bl,c"), ("M", "tl,tr|br,bl,c")],
            )?;
            Fixture {
                name: "FIG1",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("total_mass", 22.0),
                    ("cut(C)", 3.0),
                    ("deviation(C)", 2.0 * s2),
                    ("cut(D)", 5.0),
                    ("deviation(D)", 0.0),
                    ("cut(M)", 4.0),
                    ("deviation(M)", s2),
                    ("breakpoint", 2.0 - s2),
                ]),
            }
        }
        "FIG1-HAT" => {
            let graph = parse_graph(FIG1_HAT)?;
            let partitions =
                named(&graph, &[("horizontal", "tl,tr|br,bl"), ("vertical", "tl,bl|tr,br")])?;
            Fixture {
                name: "FIG1-HAT",
                graph,
                params,
                partitions,
                expected: exp(&[("count(2)", 6.0), ("min_deviation", 0.0)]),
            }
        }
        "FIG2" => {
            let graph = parse_graph(FIG2)?;
            let partitions = named(&graph, &[("columns", "bl,tl|bm,tm|br,tr")])?;
            Fixture {
                name: "FIG2",
                graph,
                params,
                partitions,
                expected: exp(&[("cut(columns)", 4.0), ("deviation(columns)", 0.0)]),
            }
        }
        "FIG2-HAT" => {
            let graph = parse_graph(FIG2_HAT)?;
            let partitions = named(
                &graph,
                &[("rows_right", "bl,bm|br,tr|tl,tm"), ("left_cut", "bl|bm,br,tm,tr|tl")],
            )?;
            Fixture {
                name: "FIG2-HAT",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("cut(rows_right)", 4.0),
                    ("deviation(rows_right)", 0.0),
                    ("cut(left_cut)", 2.0),
                    ("deviation(left_cut)", s6),
                    ("breakpoint", 3.0 - s6),
                ]),
            }
        }
        "FIG3" => {
            if !(params.m > 1.0) || !params.m.is_finite() {
                return Err(Error::InvalidFixtureParam(format!("M must exceed 1, got {}", params.m)));
            }
            if !(params.eps > 0.0) || !params.eps.is_finite() {
                return Err(Error::InvalidFixtureParam(format!(
                    "eps must be positive, got {}",
                    params.eps
                )));
            }
            let graph = fig3_graph(params.m, params.eps)?;
            let partitions = named(&graph, &[("together", "a,b|c"), ("apart", "a|b,c")])?;
            Fixture {
                name: "FIG3",
                graph,
                params,
                partitions,
                expected: exp(&[("separation_limit", s2 / (1.0 + s2))]),
            }
        }
        "FIG4" => {
            let graph = parse_graph(FIG4)?;
            let partitions = named(&graph, &fig4_partitions())?;
            Fixture {
                name: "FIG4",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("total_mass", 8.0),
                    ("total_edge_weight", 34.0),
                    ("cut(rows)", 2.0),
                    ("cut(D)", 12.0),
                    ("cut(C)", 6.0),
                    ("deviation(C)", s6),
                    ("cut(R)", 8.0),
                    ("deviation(R)", 2.0),
                    ("breakpoint(4)", s6 / (6.0 + s6)),
                ]),
            }
        }
        "FIG5" => {
            let graph = parse_graph(FIG5)?;
            let partitions = named(
                &graph,
                &[("C2", "bl,tl|bm,br,tm"), ("C4", "bl|bm,br|tl|tm"), ("D4", "bl|bm|br,tm|tl")],
            )?;
            let s17 = 17f64.sqrt();
            Fixture {
                name: "FIG5",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("total_mass", 68.0),
                    ("F_half(C2)", 4.0 + 3.0 * s2),
                    ("F_half(C4)", 18.0 + s17),
                    ("F_half(D4)", 23.0),
                    ("induced_F_half(C4)", 6.0 + 2.0 * s2),
                    ("induced_F_half(D4)", 8.0),
                    ("min_cut(4)", 36.0),
                ]),
            }
        }
        "FIG6" => {
            let p = params.p;
            if !(p >= 1.0) || !p.is_finite() {
                return Err(Error::InvalidFixtureParam(format!("p must lie in [1, inf), got {p}")));
            }
            let alpha = fig6_alpha(p);
            let base = parse_graph(FIG4)?;
            let scaled: Vec<usize> = [("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("t3", "t2")]
                .iter()
                .map(|(a, b)| base.edge_by_ids(a, b))
                .collect::<Result<_>>()?;
            let graph = base.map_weights(
                |_, m| m,
                |i, e| if scaled.contains(&i) { e.weight * alpha } else { e.weight },
            )?;
            let partitions = named(&graph, &fig4_partitions())?;
            let q = 4f64.powf(1.0 / p);
            let c = (2.0 + 2f64.powf(p)).powf(1.0 / p);
            Fixture {
                name: "FIG6",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("alpha", alpha),
                    ("cut(I)", 4.0 + 4.0 * alpha),
                    ("deviation(I)", q),
                    ("cut(D)", 4.0 + 8.0 * alpha),
                    ("cut(C)", 6.0),
                    ("deviation(C)", c),
                    ("d_interval_high", q / (4.0 * alpha + q)),
                    ("c_interval_low", (c - q) / (4.0 * alpha - 2.0 + c - q)),
                ]),
            }
        }
        "FIG7" => {
            let graph = parse_graph(FIG7)?;
            let partitions = named(
                &graph,
                &[
                    ("D2", "v1,v2,v3,v4,v5|v6,v7,v8,v9,v10"),
                    ("C4", "v1,v2|v3,v4|v5,v6|v7,v8,v9,v10"),
                    ("D4", "v1,v2,v3|v4,v5|v6,v7|v8,v9,v10"),
                ],
            )?;
            Fixture {
                name: "FIG7",
                graph,
                params,
                partitions,
                expected: exp(&[
                    ("total_mass", 24.0),
                    ("middle_edge", 4.0),
                    ("F_half(D2)", 2.0),
                    ("F_half(C4)", 2.5),
                    ("F_half(D4)", 3.0),
                    ("count(4)", 84.0),
                ]),
            }
        }
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(fixture)
}

fn fig4_partitions() -> [(&'static str, &'static str); 4] {
    [
        ("rows", "b1,b2,b3,b4|t4,t3,t2,t1"),
        ("D", "b1,t1|b2,b3|b4,t4|t3,t2"),
        ("C", "b1,b2,b3,b4|t4|t3,t2|t1"),
        ("R", "b1|b2,b3,b4|t4|t3,t2,t1"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{total_energy, PNorm};
    use crate::graph::validate;

    #[test]
    fn every_fixture_is_valid() {
        for name in NAMES {
            let f = load_fixture(name, FixtureParams::default()).unwrap();
            assert!(validate(&f.graph.to_raw()).is_empty(), "{name}");
        }
    }

    #[test]
    fn parameter_checks() {
        let bad_m = FixtureParams { m: 1.0, ..FixtureParams::default() };
        assert!(matches!(load_fixture("FIG3", bad_m), Err(Error::InvalidFixtureParam(_))));
        let bad_eps = FixtureParams { eps: 0.0, ..FixtureParams::default() };
        assert!(matches!(load_fixture("fig3", bad_eps), Err(Error::InvalidFixtureParam(_))));
        let bad_p = FixtureParams { p: 0.5, ..FixtureParams::default() };
        assert!(matches!(load_fixture("FIG6", bad_p), Err(Error::InvalidFixtureParam(_))));
        assert!(matches!(load_fixture("FIG9", bad_p), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn fig4_totals() {
        let f = load_fixture("fig4", FixtureParams::default()).unwrap();
        assert_eq!(f.graph.total_mass(), 8.0);
        assert_eq!(f.graph.total_edge_weight(), 34.0);
    }

    #[test]
    fn fig6_scales_four_edges() {
        let f = load_fixture("FIG6", FixtureParams { p: 1.0, ..FixtureParams::default() }).unwrap();
        let alpha = f.expected("alpha").unwrap();
        assert!((alpha - 0.505).abs() < 1e-12);
        assert!((f.graph.total_edge_weight() - (6.0 + 28.0 * alpha)).abs() < 1e-9);
    }

    #[test]
    fn equalized_graph_reproduces_half_energy() {
        let f = load_fixture("FIG5", FixtureParams::default()).unwrap();
        let p = PNorm::Finite(2.0);
        for lambda in [0.2, 0.5, 0.73] {
            let g2 = equalize_to_half(&f.graph, lambda).unwrap();
            for (_, part) in f.named_partitions() {
                let half = total_energy(&f.graph, part, 0.5, p).unwrap().total;
                let moved = total_energy(&g2, part, lambda, p).unwrap().total;
                assert!((half - moved).abs() < 1e-9);
            }
        }
        assert!(equalize_to_half(&f.graph, 1.0).is_err());
    }
}
