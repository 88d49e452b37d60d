//! Backtracking search for set-graceful labelings.
//!
//! Vertices are labeled in a fixed connected-first order. Two occupancy
//! bitsets over the `2^m` labels track which vertex labels and which edge
//! labels are in use; an assignment is pruned as soon as it repeats a vertex
//! label or produces a repeated or empty edge label. Once every vertex is
//! placed, the `2^m - 1` edge labels are distinct and nonempty, so they cover
//! `𝒳 \ {∅}` exactly.
//!
//! Translating every label by a fixed `A` preserves all edge labels, and the
//! translation group acts freely, so with symmetry breaking on the first
//! vertex in the order is pinned to `∅` and each hit stands for `2^m` labelings.
//!
//! Work can fan out over the label choices of the first unpinned vertex. Each
//! branch owns its state; results are merged in branch order, which makes the
//! outcome (including node accounting under a limit) identical to the
//! single-threaded run.

use std::num::NonZeroU64;

use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::feasible_ground_size;
use crate::graph::{Graph, Vertex};
use crate::labeling::Labeling;
use crate::labels::{GroundSize, LabelSet, LabelVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    #[default]
    First,
    Count,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub use_translation_symmetry: bool,
    /// Maximum number of assignment attempts, pruned ones included.
    pub node_limit: Option<NonZeroU64>,
    pub thread_hint: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: SearchMode::First,
            use_translation_symmetry: true,
            node_limit: None,
            thread_hint: None,
        }
    }
}

impl SearchConfig {
    pub fn new(mode: SearchMode) -> Self {
        SearchConfig { mode, ..Default::default() }
    }

    pub fn symmetry(mut self, on: bool) -> Self {
        self.use_translation_symmetry = on;
        self
    }

    pub fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = NonZeroU64::new(limit);
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.thread_hint = Some(threads);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason")]
pub enum SkipReason {
    /// `|E| + 1` is not a power of two.
    EdgeCountInfeasible { edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub m: Option<GroundSize>,
    pub mode: SearchMode,
    pub anchor: Option<Vertex>,
    pub count_raw: u128,
    /// Labelings found with the anchor vertex labeled `∅`.
    pub count_anchored: u128,
    pub witnesses: Vec<Labeling>,
    pub nodes_explored: u64,
    pub exhausted: bool,
    pub skipped: Option<SkipReason>,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.count_raw > 0
    }
}

/// Connected-first order: start at a maximum-degree vertex, then repeatedly take
/// the vertex with the most placed neighbors, ties by smallest index. A new
/// component starts at its maximum-degree vertex; isolated vertices come last.
pub fn vertex_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let adj = g.adjacency();
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut placed_neighbors = vec![0usize; n];
    let mut order = Vec::with_capacity(n);

    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                let key = |v: usize| {
                    let fresh_degree = if placed_neighbors[v] == 0 { degree[v] } else { 0 };
                    (placed_neighbors[v], degree[v] > 0, fresh_degree)
                };
                // max_by keeps the last maximum; reverse index so the smallest wins
                key(a).cmp(&key(b)).then(b.cmp(&a))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in &adj[next] {
            placed_neighbors[w] += 1;
        }
    }
    order
}

/// Immutable search plan shared by all branches.
struct Plan {
    m: GroundSize,
    mode: SearchMode,
    order: Vec<Vertex>,
    /// For position `i`, the positions `< i` adjacent to `order[i]`.
    earlier: Vec<Vec<usize>>,
}

impl Plan {
    fn new(g: &Graph, m: GroundSize, mode: SearchMode) -> Self {
        let order = vertex_order(g);
        let mut position = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let adj = g.adjacency();
        let earlier = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut e: Vec<usize> = adj[v].iter().map(|&w| position[w]).filter(|&j| j < i).collect();
                e.sort_unstable();
                e
            })
            .collect();
        Plan { m, mode, order, earlier }
    }

    fn universe(&self) -> u32 {
        self.m.universe() as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// Mutable state for one branch of the search.
#[derive(Clone)]
struct Engine<'p> {
    plan: &'p Plan,
    labels: Vec<u32>,
    vertex_used: LabelSet,
    edge_used: LabelSet,
    nodes: u64,
    budget: u64,
    hit_limit: bool,
    found: u128,
    found_anchored: u128,
    witnesses: Vec<Vec<u32>>,
}

impl<'p> Engine<'p> {
    fn new(plan: &'p Plan, budget: u64) -> Self {
        Engine {
            plan,
            labels: vec![0; plan.order.len()],
            vertex_used: LabelSet::new(plan.m),
            edge_used: LabelSet::new(plan.m),
            nodes: 0,
            budget,
            hit_limit: false,
            found: 0,
            found_anchored: 0,
            witnesses: Vec::new(),
        }
    }

    /// A copy of the placed prefix with fresh counters.
    fn fork(&self, budget: u64) -> Self {
        Engine {
            nodes: 0,
            budget,
            hit_limit: false,
            found: 0,
            found_anchored: 0,
            witnesses: Vec::new(),
            ..self.clone()
        }
    }

    fn try_place(&mut self, i: usize, label: u32) -> bool {
        let l = LabelVec(label);
        if self.vertex_used.contains(l) {
            return false;
        }
        let earlier = &self.plan.earlier[i];
        for (k, &j) in earlier.iter().enumerate() {
            let e = LabelVec(label ^ self.labels[j]);
            if e.is_empty() || !self.edge_used.insert(e) {
                for &jj in &earlier[..k] {
                    self.edge_used.remove(LabelVec(label ^ self.labels[jj]));
                }
                return false;
            }
        }
        self.vertex_used.insert(l);
        self.labels[i] = label;
        true
    }

    fn unplace(&mut self, i: usize) {
        let label = self.labels[i];
        for &j in &self.plan.earlier[i] {
            self.edge_used.remove(LabelVec(label ^ self.labels[j]));
        }
        self.vertex_used.remove(LabelVec(label));
    }

    fn record(&mut self) -> Flow {
        self.found += 1;
        if self.labels.first().is_none_or(|&l| l == 0) {
            self.found_anchored += 1;
        }
        match self.plan.mode {
            SearchMode::Count => Flow::Continue,
            SearchMode::All => {
                self.witnesses.push(self.labels.clone());
                Flow::Continue
            }
            SearchMode::First => {
                self.witnesses.push(self.labels.clone());
                Flow::Stop
            }
        }
    }

    /// One assignment attempt: position `i` gets `label`, then the subtree below.
    fn attempt(&mut self, i: usize, label: u32) -> Flow {
        if self.nodes >= self.budget {
            self.hit_limit = true;
            return Flow::Stop;
        }
        self.nodes += 1;
        if !self.try_place(i, label) {
            return Flow::Continue;
        }
        let flow = if i + 1 == self.labels.len() { self.record() } else { self.descend(i + 1) };
        self.unplace(i);
        flow
    }

    fn descend(&mut self, i: usize) -> Flow {
        for label in 0..self.plan.universe() {
            if self.attempt(i, label) == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

/// What a single top-level branch produced.
struct BranchResult {
    nodes: u64,
    hit_limit: bool,
    found: u128,
    found_anchored: u128,
    witnesses: Vec<Vec<u32>>,
}

fn run_branch(root: &Engine<'_>, position: usize, label: u32, budget: u64) -> BranchResult {
    let mut e = root.fork(budget);
    e.attempt(position, label);
    BranchResult {
        nodes: e.nodes,
        hit_limit: e.hit_limit,
        found: e.found,
        found_anchored: e.found_anchored,
        witnesses: e.witnesses,
    }
}

pub fn search(g: &Graph, cfg: &SearchConfig) -> SearchOutcome {
    let verdict = feasible_ground_size(g);
    let Some(m) = verdict.m else {
        return SearchOutcome {
            m: None,
            mode: cfg.mode,
            anchor: None,
            count_raw: 0,
            count_anchored: 0,
            witnesses: Vec::new(),
            nodes_explored: 0,
            exhausted: true,
            skipped: Some(SkipReason::EdgeCountInfeasible { edges: verdict.edges }),
        };
    };

    let plan = Plan::new(g, m, cfg.mode);
    let n = plan.order.len();
    let limit = cfg.node_limit.map_or(u64::MAX, NonZeroU64::get);
    let symmetry = cfg.use_translation_symmetry;
    let mut root = Engine::new(&plan, limit);

    let mut nodes = 0u64;
    let mut hit_limit = false;
    let mut found = 0u128;
    let mut found_anchored = 0u128;
    let mut raw_witnesses: Vec<Vec<u32>> = Vec::new();

    if n == 0 {
        // The empty function is vacuously set-graceful over m = 0.
        found = 1;
        found_anchored = 1;
        if cfg.mode != SearchMode::Count {
            raw_witnesses.push(Vec::new());
        }
    } else {
        let mut fan_out = 0;
        let mut proceed = true;
        if symmetry {
            // Pin the anchor to ∅; this is one attempt.
            root.nodes = 1;
            nodes = 1;
            root.try_place(0, 0);
            fan_out = 1;
            if n == 1 {
                root.record();
                found = root.found;
                found_anchored = root.found_anchored;
                raw_witnesses = std::mem::take(&mut root.witnesses);
                proceed = false;
            }
        }

        if proceed {
            let remaining = limit - nodes;
            let labels: Vec<u32> = (0..plan.universe()).collect();
            let threads = cfg.thread_hint.unwrap_or(1).max(1);
            let speculative: Option<Vec<BranchResult>> = (threads > 1).then(|| {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .expect("thread pool");
                pool.install(|| {
                    labels
                        .par_iter()
                        .map(|&l| run_branch(&root, fan_out, l, remaining))
                        .collect()
                })
            });

            let mut speculative = speculative.map(Vec::into_iter);
            for &label in &labels {
                let budget = limit - nodes;
                // A branch computed ahead of time is reused only if it would have
                // run identically under the budget left at this point.
                let result = match speculative.as_mut().and_then(Iterator::next) {
                    Some(r) if !r.hit_limit && r.nodes <= budget => r,
                    _ => run_branch(&root, fan_out, label, budget),
                };
                nodes += result.nodes;
                found += result.found;
                found_anchored += result.found_anchored;
                raw_witnesses.extend(result.witnesses);
                if result.hit_limit {
                    hit_limit = true;
                    break;
                }
                if cfg.mode == SearchMode::First && result.found > 0 {
                    break;
                }
            }
        }
    }

    let factor = if symmetry { m.universe() as u128 } else { 1 };
    let count_raw = found * factor;
    let count_anchored = if symmetry { found } else { found_anchored };

    // Position order -> vertex order.
    let to_labeling = |by_position: &[u32], shift: u32| {
        let mut values = vec![LabelVec::EMPTY; n];
        for (i, &v) in plan.order.iter().enumerate() {
            values[v] = LabelVec(by_position[i] ^ shift);
        }
        Labeling::new(m, values).expect("search labels are in range")
    };
    let mut witnesses: Vec<Labeling> = match cfg.mode {
        SearchMode::Count => Vec::new(),
        SearchMode::First => raw_witnesses.iter().take(1).map(|w| to_labeling(w, 0)).collect(),
        SearchMode::All if symmetry => raw_witnesses
            .iter()
            .flat_map(|w| (0..m.universe() as u32).map(move |a| (w, a)))
            .map(|(w, a)| to_labeling(w, a))
            .collect(),
        SearchMode::All => raw_witnesses.iter().map(|w| to_labeling(w, 0)).collect(),
    };
    witnesses.sort_by(|a, b| a.values().cmp(b.values()));

    SearchOutcome {
        m: Some(m),
        mode: cfg.mode,
        anchor: plan.order.first().copied(),
        count_raw,
        count_anchored,
        witnesses,
        nodes_explored: nodes,
        exhausted: !hit_limit,
        skipped: None,
    }
}
