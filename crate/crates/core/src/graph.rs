//! Weighted graph model: vertex masses (population) and edge weights
//! (connection strength) on a finite, simple, undirected, connected graph.
//!
//! Text format, one record per line:
//!
//! ```text
//! # comment
//! v <id> <mass>
//! e <id1> <id2> <weight>
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Vertex sets are stored as `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;

/// Unvalidated graph data, as read from a file or assembled by hand.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawGraph {
    pub vertices: Vec<(String, f64)>,
    pub edges: Vec<(String, String, f64)>,
}

impl RawGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>, mass: f64) -> Self {
        self.vertices.push((id.into(), mass));
        self
    }

    pub fn edge(mut self, a: impl Into<String>, b: impl Into<String>, weight: f64) -> Self {
        self.edges.push((a.into(), b.into(), weight));
        self
    }

    pub fn build(self) -> Result<WeightedGraph> {
        WeightedGraph::from_raw(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    TooManyVertices { count: usize },
    DuplicateVertex { id: String },
    NonPositiveMass { id: String },
    SelfLoop { id: String },
    UnknownEndpoint { id: String },
    DuplicateEdge { a: String, b: String },
    NonPositiveWeight { a: String, b: String },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::TooManyVertices { count } => {
                write!(f, "{count} vertices exceed the supported maximum of {MAX_VERTICES}")
            }
            Violation::DuplicateVertex { id } => write!(f, "duplicate vertex `{id}`"),
            Violation::NonPositiveMass { id } => write!(f, "non-positive mass on `{id}`"),
            Violation::SelfLoop { id } => write!(f, "loop on `{id}`"),
            Violation::UnknownEndpoint { id } => write!(f, "edge endpoint `{id}` is not a vertex"),
            Violation::DuplicateEdge { a, b } => write!(f, "duplicate edge `{a}`-`{b}`"),
            Violation::NonPositiveWeight { a, b } => write!(f, "non-positive weight on `{a}`-`{b}`"),
            Violation::Disconnected { components } => {
                write!(f, "disconnected ({components} components)")
            }
        }
    }
}

impl Violation {
    fn into_error(self) -> Error {
        match self {
            Violation::Empty => Error::EmptyGraph,
            Violation::TooManyVertices { count } => Error::TooManyVertices(count),
            Violation::DuplicateVertex { id } => Error::DuplicateVertex(id),
            Violation::NonPositiveMass { id } => Error::NonPositiveMass(id),
            Violation::SelfLoop { id } => Error::SelfLoop(id),
            Violation::UnknownEndpoint { id } => Error::UnknownVertex(id),
            Violation::DuplicateEdge { a, b } => Error::DuplicateEdge(a, b),
            Violation::NonPositiveWeight { a, b } => Error::NonPositiveWeight(a, b),
            Violation::Disconnected { .. } => Error::Disconnected,
        }
    }
}

/// Lists every violated model assumption. An empty report means the data
/// describes a valid [`WeightedGraph`].
pub fn validate(raw: &RawGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if raw.vertices.is_empty() {
        out.push(Violation::Empty);
    }
    if raw.vertices.len() > MAX_VERTICES {
        out.push(Violation::TooManyVertices { count: raw.vertices.len() });
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (id, mass) in &raw.vertices {
        if index.contains_key(id.as_str()) {
            out.push(Violation::DuplicateVertex { id: id.clone() });
        } else {
            index.insert(id, index.len());
        }
        if !(*mass > 0.0) || !mass.is_finite() {
            out.push(Violation::NonPositiveMass { id: id.clone() });
        }
    }

    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut components = UnionFind::new(index.len());
    for (a, b, w) in &raw.edges {
        if a == b {
            out.push(Violation::SelfLoop { id: a.clone() });
            continue;
        }
        let (ia, ib) = match (index.get(a.as_str()), index.get(b.as_str())) {
            (Some(&ia), Some(&ib)) => (ia, ib),
            (ia, ib) => {
                if ia.is_none() {
                    out.push(Violation::UnknownEndpoint { id: a.clone() });
                }
                if ib.is_none() {
                    out.push(Violation::UnknownEndpoint { id: b.clone() });
                }
                continue;
            }
        };
        if !seen.insert((ia.min(ib), ia.max(ib))) {
            out.push(Violation::DuplicateEdge { a: a.clone(), b: b.clone() });
        }
        if !(*w > 0.0) || !w.is_finite() {
            out.push(Violation::NonPositiveWeight { a: a.clone(), b: b.clone() });
        }
        components.union(ia, ib);
    }
    let count = components.count();
    if count > 1 {
        out.push(Violation::Disconnected { components: count });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A validated, immutable weighted graph. Vertices are indexed densely in
/// declaration order.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    masses: Vec<f64>,
    edges: Vec<Edge>,
    adj: Vec<u64>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.masses == other.masses && self.edges == other.edges
    }
}

impl WeightedGraph {
    pub fn from_raw(raw: RawGraph) -> Result<Self> {
        if let Some(v) = validate(&raw).into_iter().next() {
            return Err(v.into_error());
        }
        let n = raw.vertices.len();
        let mut ids = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        let mut masses = Vec::with_capacity(n);
        for (i, (id, mass)) in raw.vertices.into_iter().enumerate() {
            index.insert(id.clone(), i);
            ids.push(id);
            masses.push(mass);
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut adj = vec![0u64; n];
        let mut incident = vec![Vec::new(); n];
        for (a, b, weight) in raw.edges {
            let (u, v) = (index[&a], index[&b]);
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            incident[u].push(edges.len());
            incident[v].push(edges.len());
            edges.push(Edge { u, v, weight });
        }
        Ok(Self { ids, index, masses, edges, adj, incident })
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.ids.iter().cloned().zip(self.masses.iter().copied()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (self.ids[e.u].clone(), self.ids[e.v].clone(), e.weight))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn mass(&self, v: usize) -> f64 {
        self.masses[v]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn total_edge_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident[u].iter().copied().find(|&e| self.edges[e].other(u) == v)
    }

    /// Resolves an edge by its endpoint ids, in either order.
    pub fn edge_by_ids(&self, a: &str, b: &str) -> Result<usize> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        self.edge_between(u, v)
            .ok_or_else(|| Error::MissingEdge(a.to_string(), b.to_string()))
    }

    /// Edge indices incident to `v`; these form the boundary of the singleton `{v}`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub(crate) fn all_mask(&self) -> u64 {
        mask_below(self.vertex_count())
    }

    /// Symmetric, zero-diagonal matrix with `a[i][j]` the weight of edge `ij`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0.0; n]; n];
        for e in &self.edges {
            a[e.u][e.v] = e.weight;
            a[e.v][e.u] = e.weight;
        }
        a
    }

    /// Vertices of `within` reachable from `start` through `within`.
    pub(crate) fn flood(&self, start: usize, within: u64) -> u64 {
        let mut reached = 1u64 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= within & !reached;
            reached |= next;
            frontier = next;
        }
        reached
    }

    pub(crate) fn is_connected_set(&self, set: u64) -> bool {
        set != 0 && self.flood(set.trailing_zeros() as usize, set) == set
    }

    /// Connected components of the subgraph induced by `set`, as bitmasks.
    pub(crate) fn components_of(&self, set: u64) -> Vec<u64> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.flood(rest.trailing_zeros() as usize, rest);
            rest &= !c;
            out.push(c);
        }
        out
    }

    /// Induced subgraph on `vertices` (kept in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<WeightedGraph> {
        let keep: u64 = vertices.iter().fold(0, |m, &v| m | (1 << v));
        let mut raw = RawGraph::new();
        for &v in vertices {
            raw = raw.vertex(self.ids[v].clone(), self.masses[v]);
        }
        for e in &self.edges {
            if keep & (1 << e.u) != 0 && keep & (1 << e.v) != 0 {
                raw = raw.edge(self.ids[e.u].clone(), self.ids[e.v].clone(), e.weight);
            }
        }
        raw.build()
    }

    /// Copy with per-vertex and per-edge weight maps applied.
    pub fn map_weights(
        &self,
        mass: impl Fn(usize, f64) -> f64,
        weight: impl Fn(usize, &Edge) -> f64,
    ) -> Result<WeightedGraph> {
        let mut raw = self.to_raw();
        for (v, entry) in raw.vertices.iter_mut().enumerate() {
            entry.1 = mass(v, entry.1);
        }
        for (i, entry) in raw.edges.iter_mut().enumerate() {
            entry.2 = weight(i, &self.edges[i]);
        }
        raw.build()
    }

    pub fn with_edge_weight(&self, edge: usize, weight: f64) -> Result<WeightedGraph> {
        self.map_weights(|_, m| m, |i, e| if i == edge { weight } else { e.weight })
    }
}

/// Multiplies every mass and edge weight by `theta`.
pub fn scale_weights(graph: &WeightedGraph, theta: f64) -> Result<WeightedGraph> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::InvalidScale(theta));
    }
    graph.map_weights(|_, m| m * theta, |_, e| e.weight * theta)
}

pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reads graph text without checking the model invariants.
pub fn parse_raw(text: &str) -> Result<RawGraph> {
    let mut raw = RawGraph::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let syntax = |message: String| Error::Syntax { line: line_no, message };
        match fields.as_slice() {
            ["v", id, mass] => {
                let mass = parse_number(mass).map_err(syntax)?;
                raw.vertices.push((id.to_string(), mass));
            }
            ["e", a, b, weight] => {
                let weight = parse_number(weight).map_err(syntax)?;
                raw.edges.push((a.to_string(), b.to_string(), weight));
            }
            ["v", ..] => return Err(syntax("expected `v <id> <mass>`".into())),
            ["e", ..] => return Err(syntax("expected `e <id1> <id2> <weight>`".into())),
            [other, ..] => return Err(syntax(format!("unknown record type `{other}`"))),
            [] => unreachable!(),
        }
    }
    Ok(raw)
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a decimal number")),
    }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    parse_raw(text)?.build()
}

/// Vertices first, then edges, both in declaration order; numbers as `%.9g`.
pub fn serialize(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    for (v, id) in graph.ids.iter().enumerate() {
        out.push_str(&format!("v {} {}\n", id, format_g(graph.masses[v], 9)));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "e {} {} {}\n",
            graph.ids[e.u],
            graph.ids[e.v],
            format_g(e.weight, 9)
        ));
    }
    out
}

/// C-style `%.{precision}g` formatting.
pub fn format_g(x: f64, precision: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        Self { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
