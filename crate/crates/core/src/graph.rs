//! Undirected simple graphs and the generators used throughout the crate.
//!
//! Vertex order is part of the contract. For the linear polyomino chain `B_n`
//! the order is `u_1..u_{n+1}, v_1..v_{n+1}`; for its strong prism the order
//! is the `B_n` order followed by the primed copy `u'_1..u'_{n+1},
//! v'_1..v'_{n+1}`, so vertex `i` and vertex `i + 2n + 2` are twins.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable undirected simple graph on vertices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    // canonical (lo, hi) pairs, sorted
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; self-loops, duplicates and out-of-range ids are rejected.
    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGraph(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut canon = Vec::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {order} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in &canon {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            order,
            edges: canon,
            adjacency,
            labels: None,
        })
    }

    /// Attaches per-vertex labels. The label count must equal the order.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Returns `Err(Disconnected)` naming the first vertex not reached from 0.
    pub fn ensure_connected(&self) -> Result<()> {
        match self.bfs(0).iter().position(Option::is_none) {
            Some(vertex) => Err(Error::Disconnected { from: 0, vertex }),
            None => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.ensure_connected().is_ok()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size() + 1 == self.order
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in 0..self.order {
            let _ = writeln!(
                out,
                "  {v} [label=\"{}\"];",
                self.label(v).replace('"', "\\\"")
            );
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            nodes: (0..self.order)
                .map(|id| NodeJson {
                    id,
                    label: self.label(id),
                    degree: self.degree(id),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(source, target)| EdgeJson { source, target })
                .collect(),
        }
    }

    /// Rebuilds a graph from its JSON form.
    pub fn from_json_value(json: &GraphJson) -> Result<Self> {
        let g = Graph::from_edges(
            json.nodes.len(),
            json.edges.iter().map(|e| (e.source, e.target)),
        )?;
        let mut labels = vec![String::new(); json.nodes.len()];
        for node in &json.nodes {
            if node.id >= labels.len() {
                return Err(Error::InvalidGraph(format!(
                    "node id {} out of range",
                    node.id
                )));
            }
            labels[node.id] = node.label.clone();
        }
        g.with_labels(labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub label: String,
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub source: usize,
    pub target: usize,
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!(
            "{what} requires n >= 1, got 0"
        )));
    }
    Ok(())
}

/// The linear polyomino chain `B_n` with `n` squares.
pub fn linear_polyomino(n: usize) -> Result<Graph> {
    require_positive(n, "linear polyomino")?;
    let k = n + 1;
    let u = |i: usize| i;
    let v = |i: usize| k + i;
    let mut edges = Vec::with_capacity(3 * n + 1);
    for i in 0..n {
        edges.push((u(i), u(i + 1)));
        edges.push((v(i), v(i + 1)));
    }
    for i in 0..k {
        edges.push((u(i), v(i)));
    }
    let labels = (1..=k)
        .map(|i| format!("u{i}"))
        .chain((1..=k).map(|i| format!("v{i}")))
        .collect();
    Graph::from_edges(2 * k, edges)?.with_labels(labels)
}

/// Strong product `g ⊠ h`.
///
/// The pair `(x, y)` with `x` in `g` and `y` in `h` gets index
/// `y * g.order() + x`: one contiguous copy of `g` per vertex of `h`, in `h`
/// order. With `h = K_2` this yields exactly the twin layout of
/// [`strong_prism_polyomino`].
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let ng = g.order();
    let nh = h.order();
    let index = |x: usize, y: usize| y * ng + x;
    let mut edges = Vec::new();
    // x-equal, y-adjacent
    for &(y1, y2) in h.edges() {
        for x in 0..ng {
            edges.push((index(x, y1), index(x, y2)));
        }
    }
    for &(x1, x2) in g.edges() {
        // x-adjacent, y-equal
        for y in 0..nh {
            edges.push((index(x1, y), index(x2, y)));
        }
        // both adjacent: two diagonals per pair of edges
        for &(y1, y2) in h.edges() {
            edges.push((index(x1, y1), index(x2, y2)));
            edges.push((index(x1, y2), index(x2, y1)));
        }
    }
    let labels = (0..nh)
        .flat_map(|y| (0..ng).map(move |x| (x, y)))
        .map(|(x, y)| format!("({},{})", g.label(x), h.label(y)))
        .collect();
    Graph::from_edges(ng * nh, edges)?.with_labels(labels)
}

/// The strong prism `B_n² = B_n ⊠ K_2`, built directly from the twin rule.
///
/// Vertex `i < 2n+2` is the unprimed vertex of `B_n` with the same index and
/// `i + 2n + 2` is its primed twin.
pub fn strong_prism_polyomino(n: usize) -> Result<Graph> {
    require_positive(n, "strong prism polyomino")?;
    let base = linear_polyomino(n)?;
    let half = base.order();
    let mut edges = Vec::with_capacity(14 * n + 6);
    for x in 0..half {
        edges.push((x, x + half));
    }
    for &(a, b) in base.edges() {
        edges.push((a, b));
        edges.push((a + half, b + half));
        edges.push((a, b + half));
        edges.push((a + half, b));
    }
    let base_labels = base.labels().unwrap_or_default();
    let labels = base_labels
        .iter()
        .cloned()
        .chain(
            base_labels
                .iter()
                .map(|l| format!("{}'{}", &l[..1], &l[1..])),
        )
        .collect();
    Graph::from_edges(2 * half, edges)?.with_labels(labels)
}

/// The twin involution of `B_n²`: `i <-> i + 2n + 2`.
pub fn prism_pairing(n: usize) -> Vec<usize> {
    let half = 2 * n + 2;
    (0..2 * half)
        .map(|i| if i < half { i + half } else { i - half })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Path,
    Cycle,
    Complete,
}

/// `P_n`, `C_n` or `K_n` in natural vertex order.
pub fn standard_graph(kind: StandardKind, n: usize) -> Result<Graph> {
    require_positive(n, "standard graph")?;
    let edges: Vec<(usize, usize)> = match kind {
        StandardKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        StandardKind::Cycle => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "cycle requires n >= 3, got {n}"
                )));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        StandardKind::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
    };
    Graph::from_edges(n, edges)
}

/// Graph families reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Polyomino,
    PrismPolyomino,
    Cycle,
    Path,
    Complete,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Polyomino,
        Family::PrismPolyomino,
        Family::Cycle,
        Family::Path,
        Family::Complete,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Polyomino => "polyomino",
            Family::PrismPolyomino => "prism-polyomino",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Complete => "complete",
        }
    }

    pub fn build(self, n: usize) -> Result<Graph> {
        match self {
            Family::Polyomino => linear_polyomino(n),
            Family::PrismPolyomino => strong_prism_polyomino(n),
            Family::Cycle => standard_graph(StandardKind::Cycle, n),
            Family::Path => standard_graph(StandardKind::Path, n),
            Family::Complete => standard_graph(StandardKind::Complete, n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown family '{s}' (expected one of: {})",
                    Family::ALL.map(Family::as_str).join(", ")
                ))
            })
    }
}
