//! The `d`-Young reducibility digraph on diagrams of order `n`.
//!
//! Vertices are the diagrams inside `[n] x [n]` in colexicographic order.
//! Every covering pair `D' = D \ {P}` carries exactly one edge:
//! `D' -> D` when `nu_min(D') = nu_min(D)`, otherwise `D -> D'`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_integer::binomial;
use petgraph::algo::toposort;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::Direction;
use serde::Serialize;

use crate::diagram::{enumerate_order, families, nu_min_cols, FerrersDiagram};
use crate::exec::{self, RunOptions};
use crate::{Error, Result};

/// Largest order built without `force` when unrestricted.
pub const MAX_UNRESTRICTED_ORDER: usize = 14;
/// Largest order built without `force` when restricted to `D >= T_d`.
pub const MAX_RESTRICTED_ORDER: usize = 16;

/// Which endpoint of a covering pair the edge leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    FirstToSecond,
    SecondToFirst,
}

/// Orients the covering pair `{d1, d2}`.
pub fn reduction_direction(d1: &FerrersDiagram, d2: &FerrersDiagram, d: usize) -> Result<Orientation> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    let (big, small, first_is_big) = if d1.cardinality() == d2.cardinality() + 1 {
        (d1, d2, true)
    } else if d2.cardinality() == d1.cardinality() + 1 {
        (d2, d1, false)
    } else {
        return Err(Error::domain(format!("({d1}) and ({d2}) do not differ by one point")));
    };
    if !small.is_subset_of(big) {
        return Err(Error::domain(format!("({d1}) and ({d2}) do not differ by one point")));
    }
    let small_to_big = nu_min_cols(small.columns(), d) == nu_min_cols(big.columns(), d);
    Ok(if small_to_big == first_is_big { Orientation::SecondToFirst } else { Orientation::FirstToSecond })
}

/// Order-`n` slice of the `d`-Young digraph.
#[derive(Clone, Debug)]
pub struct YoungDigraph {
    n: usize,
    d: usize,
    restricted: bool,
    graph: DiGraph<FerrersDiagram, ()>,
    index: HashMap<FerrersDiagram, NodeIndex>,
    nu_min: Vec<usize>,
}

/// Builds the digraph of order `n`; `restricted` keeps only `D >= T_d`.
pub fn build(n: usize, d: usize, restricted: bool) -> Result<YoungDigraph> {
    build_with(n, d, restricted, RunOptions::default())
}

pub fn build_with(n: usize, d: usize, restricted: bool, opts: RunOptions) -> Result<YoungDigraph> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    let cap = if restricted { MAX_RESTRICTED_ORDER } else { MAX_UNRESTRICTED_ORDER };
    if n > cap && !opts.force {
        return Err(Error::resource(format!("order {n} exceeds the digraph guard {cap}; lower n or force")));
    }
    let floor = if restricted { families::triangle(d) } else { FerrersDiagram::empty() };
    let vertices = enumerate_order(n, &floor);
    let nu_min: Vec<usize> = exec::map(opts.exec, &vertices, |v| nu_min_cols(v.columns(), d));
    let index: HashMap<FerrersDiagram, NodeIndex> =
        vertices.iter().enumerate().map(|(i, v)| (v.clone(), NodeIndex::new(i))).collect();

    let per_vertex: Vec<Vec<(usize, usize)>> = exec::map_range(opts.exec, 0..vertices.len(), |u| {
        let big = &vertices[u];
        big.removable_points()
            .into_iter()
            .filter_map(|p| {
                let small = big.without_point(p).expect("removable point");
                let v = index.get(&small)?.index();
                Some(if nu_min[v] == nu_min[u] { (v, u) } else { (u, v) })
            })
            .collect()
    });

    let mut graph = DiGraph::with_capacity(vertices.len(), per_vertex.iter().map(Vec::len).sum());
    for v in vertices {
        graph.add_node(v);
    }
    for (from, to) in per_vertex.into_iter().flatten() {
        graph.add_edge(NodeIndex::new(from), NodeIndex::new(to), ());
    }
    Ok(YoungDigraph { n, d, restricted, graph, index, nu_min })
}

impl YoungDigraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn vertex(&self, i: usize) -> &FerrersDiagram {
        &self.graph[NodeIndex::new(i)]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &FerrersDiagram> {
        self.graph.node_weights()
    }

    pub fn index_of(&self, diagram: &FerrersDiagram) -> Option<usize> {
        self.index.get(diagram).map(|ix| ix.index())
    }

    /// `nu_min` of vertex `i`.
    pub fn nu_min_of(&self, i: usize) -> usize {
        self.nu_min[i]
    }

    /// Edges as `(from, to)` vertex indices, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> =
            self.graph.raw_edges().iter().map(|e| (e.source().index(), e.target().index())).collect();
        e.sort_unstable();
        e
    }

    pub fn successors(&self, i: usize) -> Vec<usize> {
        self.neighbors(i, Direction::Outgoing)
    }

    pub fn predecessors(&self, i: usize) -> Vec<usize> {
        self.neighbors(i, Direction::Incoming)
    }

    fn neighbors(&self, i: usize, dir: Direction) -> Vec<usize> {
        let mut out: Vec<usize> = self.graph.neighbors_directed(NodeIndex::new(i), dir).map(|n| n.index()).collect();
        out.sort_unstable();
        out
    }

    /// Indices of vertices without incoming edges, ascending.
    pub fn source_indices(&self) -> Vec<usize> {
        self.externals(Direction::Incoming)
    }

    /// Indices of vertices without outgoing edges, ascending.
    pub fn sink_indices(&self) -> Vec<usize> {
        self.externals(Direction::Outgoing)
    }

    fn externals(&self, dir: Direction) -> Vec<usize> {
        let mut out: Vec<usize> = self.graph.externals(dir).map(|n| n.index()).collect();
        out.sort_unstable();
        out
    }

    pub fn sources(&self) -> Vec<FerrersDiagram> {
        self.source_indices().into_iter().map(|i| self.vertex(i).clone()).collect()
    }

    pub fn sinks(&self) -> Vec<FerrersDiagram> {
        self.sink_indices().into_iter().map(|i| self.vertex(i).clone()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        toposort(&self.graph, None).is_ok()
    }

    /// A directed path from some source to `target`, found by breadth-first
    /// search backwards along incoming edges.
    pub fn path_from_irreducible(&self, target: &FerrersDiagram) -> Result<Vec<FerrersDiagram>> {
        let t = self
            .index_of(target)
            .ok_or_else(|| Error::domain(format!("({target}) is not a vertex of this digraph")))?;
        let mut next_hop: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([t]);
        next_hop.insert(t, t);
        while let Some(v) = queue.pop_front() {
            let preds = self.predecessors(v);
            if preds.is_empty() {
                let mut path = vec![self.vertex(v).clone()];
                let mut cur = v;
                while cur != t {
                    cur = next_hop[&cur];
                    path.push(self.vertex(cur).clone());
                }
                return Ok(path);
            }
            for u in preds {
                if let std::collections::hash_map::Entry::Vacant(e) = next_hop.entry(u) {
                    e.insert(v);
                    queue.push_back(u);
                }
            }
        }
        Err(Error::invariant("no source reaches the target; the digraph has a cycle"))
    }

    /// Graphviz text; node ids are `v{index}` and labels the diagram text
    /// with `-` for the empty diagram.
    pub fn to_dot(&self) -> String {
        let sources = self.source_indices();
        let sinks = self.sink_indices();
        let mut out = String::new();
        let _ = writeln!(out, "digraph young_n{}_d{} {{", self.n, self.d);
        let _ = writeln!(out, "  node [shape=box, style=filled, fillcolor=white];");
        for i in 0..self.vertex_count() {
            let label = match self.vertex(i).to_string() {
                s if s.is_empty() => "-".to_string(),
                s => s,
            };
            let fill = match (sources.binary_search(&i).is_ok(), sinks.binary_search(&i).is_ok()) {
                (true, true) => ", fillcolor=gold",
                (true, false) => ", fillcolor=palegreen",
                (false, true) => ", fillcolor=lightsalmon",
                (false, false) => "",
            };
            let _ = writeln!(out, "  v{i} [label=\"{label}\"{fill}];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> DigraphReport {
        DigraphReport {
            n: self.n,
            d: self.d,
            restricted: self.restricted,
            sources: self.sources(),
            sinks: self.sinks(),
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
        }
    }
}

/// Summary emitted as JSON by the command-line tool.
#[derive(Clone, Debug, Serialize)]
pub struct DigraphReport {
    pub n: usize,
    pub d: usize,
    pub restricted: bool,
    pub sources: Vec<FerrersDiagram>,
    pub sinks: Vec<FerrersDiagram>,
    #[serde(rename = "N")]
    pub vertex_count: usize,
    #[serde(rename = "M")]
    pub edge_count: usize,
}

/// Closed-form vertex and edge counts against an explicit build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(rename = "N")]
    pub n_formula: u64,
    #[serde(rename = "M")]
    pub m_formula: u64,
    pub enumerated_n: u64,
    pub enumerated_m: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `C(2n, n)` vertices and `n C(2n-1, n)` edges.
pub fn count_formulas(n: usize) -> (u64, u64) {
    let n = n as u64;
    let m = if n == 0 { 0 } else { n * binomial(2 * n - 1, n) };
    (binomial(2 * n, n), m)
}

pub fn verify_counts(n: usize) -> Result<CountReport> {
    let g = build(n, 1, false)?;
    let (n_formula, m_formula) = count_formulas(n);
    let enumerated_n = g.vertex_count() as u64;
    let enumerated_m = g.edge_count() as u64;
    Ok(CountReport {
        n_formula,
        m_formula,
        enumerated_n,
        enumerated_m,
        matches: n_formula == enumerated_n && m_formula == enumerated_m,
    })
}
