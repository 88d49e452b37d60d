//! Finite simple graphs on dense vertex indices `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::io::{self, BufRead, Write};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {u} {v} has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("invalid generator parameters: {0}")]
    Generator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The two sides of a complete bipartite graph. `p` holds vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
}

impl Bipartition {
    pub fn is_star(&self) -> bool {
        self.p.len() == 1 || self.q.len() == 1
    }
}

/// A finite simple graph. Edges are stored with `u < v`, sorted lexicographically.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    name: Option<String>,
    bipartition: OnceLock<Option<Bipartition>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            name: None,
            bipartition: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The `(P, Q)` split if this graph is connected with edge set exactly `P × Q`.
    pub fn complete_bipartition(&self) -> Option<&Bipartition> {
        self.bipartition
            .get_or_init(|| detect_complete_bipartition(self))
            .as_ref()
    }

    pub fn is_star(&self) -> bool {
        self.complete_bipartition().is_some_and(Bipartition::is_star)
    }
}

fn detect_complete_bipartition(g: &Graph) -> Option<Bipartition> {
    if g.n < 2 {
        return None;
    }
    let adj = g.adjacency();
    let mut side = vec![None; g.n];
    side[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let s = side[u].unwrap();
        for &w in &adj[u] {
            match side[w] {
                None => {
                    side[w] = Some(!s);
                    queue.push_back(w);
                }
                Some(t) if t == s => return None,
                Some(_) => {}
            }
        }
    }
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (v, s) in side.into_iter().enumerate() {
        match s {
            Some(false) => p.push(v),
            Some(true) => q.push(v),
            None => return None,
        }
    }
    // Every edge crosses, and a simple graph has at most |P||Q| crossing edges.
    (g.edges.len() == p.len() * q.len()).then_some(Bipartition { p, q })
}

/// `K_{p,q}` with `P = 0..p` and `Q = p..p+q`.
pub fn make_complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p == 0 || q == 0 {
        return Err(GraphError::Generator(format!(
            "complete bipartite sides must be positive (got p={p}, q={q})"
        )));
    }
    let edges = (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)));
    let g = Graph::new(p + q, edges)?.with_name(format!("K_{{{p},{q}}}"));
    let _ = g.bipartition.set(Some(Bipartition {
        p: (0..p).collect(),
        q: (p..p + q).collect(),
    }));
    Ok(g)
}

/// `K_{1,q}` with the center at vertex 0.
pub fn make_star(q: usize) -> Result<Graph, GraphError> {
    make_complete_bipartite(1, q)
}

pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Generator("path needs at least one vertex".into()));
    }
    Ok(Graph::new(n, (1..n).map(|i| (i - 1, i)))?.with_name(format!("P_{n}")))
}

pub fn make_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Generator(format!("cycle needs at least 3 vertices (got {n})")));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n));
    Ok(Graph::new(n, edges)?.with_name(format!("C_{n}")))
}

pub fn make_complete(n: usize) -> Result<Graph, GraphError> {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok(Graph::new(n, edges)?.with_name(format!("K_{n}")))
}

pub fn make_empty(n: usize) -> Graph {
    Graph::new(n, []).expect("edgeless graph is simple")
}

/// Reads the edge-list format: optional `vertices N` header, one `u v` per line,
/// `#` comments.
pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut max_index: Option<usize> = None;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |message: String| GraphError::Parse { line: lineno, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "vertices" {
            if declared.is_some() || !edges.is_empty() {
                return Err(parse_err("`vertices` header must come first and only once".into()));
            }
            match tokens[1..] {
                [count] => {
                    let count = count
                        .parse()
                        .map_err(|_| parse_err(format!("invalid vertex count {count:?}")))?;
                    declared = Some(count);
                }
                _ => return Err(parse_err("expected `vertices N`".into())),
            }
            continue;
        }
        let [a, b] = tokens[..] else {
            return Err(parse_err(format!("expected `u v`, got {content:?}")));
        };
        let parse_vertex = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(format!("invalid vertex index {t:?}")))
        };
        let (u, v) = (parse_vertex(a)?, parse_vertex(b)?);
        if u == v {
            return Err(parse_err(format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(format!("duplicate edge {u} {v}")));
        }
        max_index = max_index.max(Some(u.max(v)));
        edges.push((u, v));
    }

    let n = declared.unwrap_or(0).max(max_index.map_or(0, |m| m + 1));
    Graph::new(n, edges)
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    if let Some(name) = g.name() {
        writeln!(out, "# {name}")?;
    }
    writeln!(out, "vertices {}", g.n)?;
    for &(u, v) in &g.edges {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name} (n={}, |E|={})", self.n, self.edges.len()),
            None => write!(f, "graph (n={}, |E|={})", self.n, self.edges.len()),
        }
    }
}
