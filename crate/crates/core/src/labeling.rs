//! Vertex labelings `f: V -> 𝒳`, the induced edge map `f̂(uv) = f(u) Δ f(v)`,
//! and the set-graceful predicate.

use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::labels::{format_label, parse_label, GroundSize, LabelError, LabelStyle, LabelVec};

#[derive(Debug, Error)]
pub enum LabelingError {
    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex}: {source}")]
    Label { vertex: Vertex, source: LabelError },
    #[error(transparent)]
    OutOfRange(LabelError),
    #[error("vertex {0} is not in the graph")]
    BadVertex(Vertex),
    #[error("empty label has no edge")]
    EmptyLabel,
    #[error("labeling is not set-graceful")]
    NotGraceful,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {0} has no label")]
    MissingVertex(Vertex),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A labeling function over ground size `m`. Validity is checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Labeling {
    m: GroundSize,
    values: Vec<LabelVec>,
}

impl Labeling {
    pub fn new(m: GroundSize, values: Vec<LabelVec>) -> Result<Self, LabelingError> {
        for (vertex, &v) in values.iter().enumerate() {
            m.check(v).map_err(|source| LabelingError::Label { vertex, source })?;
        }
        Ok(Labeling { m, values })
    }

    pub fn from_bits(m: GroundSize, bits: &[u32]) -> Result<Self, LabelingError> {
        Labeling::new(m, bits.iter().copied().map(LabelVec).collect())
    }

    pub fn m(&self) -> GroundSize {
        self.m
    }

    pub fn values(&self) -> &[LabelVec] {
        &self.values
    }

    pub fn get(&self, v: Vertex) -> LabelVec {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_shape(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.values.len() != g.n() {
            return Err(LabelingError::LengthMismatch { expected: g.n(), got: self.values.len() });
        }
        Ok(())
    }
}

/// `f̂` in the graph's canonical edge order.
pub fn edge_labels(g: &Graph, f: &Labeling) -> Result<Vec<LabelVec>, LabelingError> {
    f.check_shape(g)?;
    Ok(g.edges().iter().map(|&(u, v)| f.values[u] ^ f.values[v]).collect())
}

/// Outcome of the set-graceful check, with the smallest witness for each failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertex_injective: bool,
    pub duplicate_vertices: Option<(Vertex, Vertex)>,
    pub edge_injective: bool,
    pub duplicate_edges: Option<(Edge, Edge)>,
    /// Edge labels are exactly the `2^m - 1` nonempty labels.
    pub covers_all_nonempty: bool,
    pub missing_label: Option<LabelVec>,
    pub empty_edge: Option<Edge>,
    pub range_ok: bool,
    pub valid: bool,
}

/// Sorts by key and returns the smallest `(first, second)` index pair sharing a key.
fn first_collision(keyed: &mut [(LabelVec, usize)]) -> Option<(usize, usize)> {
    keyed.sort_unstable();
    keyed
        .chunk_by(|a, b| a.0 == b.0)
        .filter(|run| run.len() >= 2)
        .map(|run| (run[0].1, run[1].1))
        .min()
}

/// Checks whether `f` is a set-graceful labeling of `g`, reporting every failed condition.
pub fn validate(g: &Graph, f: &Labeling) -> Result<ValidationReport, LabelingError> {
    f.check_shape(g)?;
    let m = f.m;
    let range_ok = f.values.iter().all(|&v| m.contains(v));

    let mut by_label: Vec<(LabelVec, usize)> =
        f.values.iter().enumerate().map(|(v, &l)| (l, v)).collect();
    let duplicate_vertices = first_collision(&mut by_label);

    let labels = edge_labels(g, f)?;
    let mut by_edge: Vec<(LabelVec, usize)> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let duplicate_edges =
        first_collision(&mut by_edge).map(|(i, j)| (g.edges()[i], g.edges()[j]));

    let empty_edge = labels.iter().position(|l| l.is_empty()).map(|i| g.edges()[i]);

    // by_edge is sorted by label now; walk the distinct nonempty labels.
    let mut missing_label = None;
    let mut expect = 1u64;
    for &(l, _) in by_edge.iter() {
        let l = l.bits() as u64;
        if l < expect {
            continue;
        }
        if l > expect {
            break;
        }
        expect += 1;
    }
    if expect < m.universe() as u64 {
        missing_label = Some(LabelVec(expect as u32));
    }
    let covers_all_nonempty = missing_label.is_none() && labels.len() == m.nonempty();

    let vertex_injective = duplicate_vertices.is_none();
    let edge_injective = duplicate_edges.is_none();
    let valid = range_ok
        && vertex_injective
        && edge_injective
        && covers_all_nonempty
        && empty_edge.is_none();

    Ok(ValidationReport {
        vertex_injective,
        duplicate_vertices,
        edge_injective,
        duplicate_edges,
        covers_all_nonempty,
        missing_label,
        empty_edge,
        range_ok,
        valid,
    })
}

/// `g(v) = a Δ f(v)`. Leaves every edge label unchanged.
pub fn translate(f: &Labeling, a: LabelVec) -> Result<Labeling, LabelingError> {
    f.m.check(a).map_err(LabelingError::OutOfRange)?;
    Ok(Labeling { m: f.m, values: f.values.iter().map(|&v| v ^ a).collect() })
}

/// Translates `f` so that `anchor` receives the empty label.
pub fn normalize_anchor(f: &Labeling, anchor: Vertex) -> Result<Labeling, LabelingError> {
    let a = *f.values.get(anchor).ok_or(LabelingError::BadVertex(anchor))?;
    translate(f, a)
}

/// Inverse of `f̂` for a set-graceful labeling: nonempty label -> edge.
#[derive(Debug, Clone)]
pub struct EdgePreimages {
    table: Vec<u32>,
    edges: Vec<Edge>,
}

impl EdgePreimages {
    pub fn new(g: &Graph, f: &Labeling) -> Result<Self, LabelingError> {
        if !validate(g, f)?.valid {
            return Err(LabelingError::NotGraceful);
        }
        let mut table = vec![u32::MAX; f.m.universe()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            table[(f.values[u] ^ f.values[v]).index()] = i as u32;
        }
        Ok(EdgePreimages { table, edges: g.edges().to_vec() })
    }

    pub fn get(&self, s: LabelVec) -> Result<Edge, LabelingError> {
        if s.is_empty() {
            return Err(LabelingError::EmptyLabel);
        }
        match self.table.get(s.index()) {
            Some(&i) if i != u32::MAX => Ok(self.edges[i as usize]),
            _ => Err(LabelingError::OutOfRange(LabelError::OutOfRange {
                value: s.bits() as u64,
                m: self.table.len().trailing_zeros(),
            })),
        }
    }
}

/// The unique edge whose label is `s`.
pub fn edge_preimage(g: &Graph, f: &Labeling, s: LabelVec) -> Result<Edge, LabelingError> {
    if s.is_empty() {
        return Err(LabelingError::EmptyLabel);
    }
    EdgePreimages::new(g, f)?.get(s)
}

/// Reads a labeling file: `m <int>` header, then `v <label>` for each vertex `0..n`.
pub fn read_labeling<R: BufRead>(reader: R, n: usize) -> Result<Labeling, LabelingError> {
    let mut m: Option<GroundSize> = None;
    let mut slots: Vec<Option<LabelVec>> = vec![None; n];
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| LabelingError::Parse { line: lineno, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [key, value] = tokens[..] else {
            return Err(err(format!("expected two fields, got {content:?}")));
        };
        if key == "m" {
            if m.is_some() {
                return Err(err("duplicate `m` header".into()));
            }
            let raw: u32 = value.parse().map_err(|_| err(format!("invalid ground size {value:?}")))?;
            m = Some(GroundSize::new(raw).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let Some(ground) = m else {
            return Err(err("`m <int>` header must precede vertex lines".into()));
        };
        let v: Vertex = key.parse().map_err(|_| err(format!("invalid vertex {key:?}")))?;
        if v >= n {
            return Err(err(format!("vertex {v} is not in the graph (n={n})")));
        }
        if slots[v].is_some() {
            return Err(err(format!("vertex {v} labeled twice")));
        }
        slots[v] = Some(parse_label(value, ground).map_err(|e| err(e.to_string()))?);
    }
    let m = m.ok_or(LabelingError::Parse { line: 0, message: "missing `m <int>` header".into() })?;
    let values = slots
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.ok_or(LabelingError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Labeling::new(m, values)
}

pub fn write_labeling<W: Write>(f: &Labeling, mut out: W, style: LabelStyle) -> io::Result<()> {
    writeln!(out, "m {}", f.m)?;
    for (v, &l) in f.values.iter().enumerate() {
        let text = match style {
            LabelStyle::Binary => format!("0b{}", format_label(l, f.m, LabelStyle::Binary)),
            // set notation is not a parseable literal; files always stay readable
            LabelStyle::Int | LabelStyle::Set => format_label(l, f.m, LabelStyle::Int),
        };
        writeln!(out, "{v} {text}")?;
    }
    Ok(())
}
