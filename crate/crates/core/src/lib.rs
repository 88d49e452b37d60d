//! Set-graceful labelings of finite simple graphs.
//!
//! A labeling `f: V -> 2^X` is set-graceful when `f` is injective and the edge
//! map `uv -> f(u) Δ f(v)` is a bijection onto the nonempty subsets of `X`.
//! This crate validates such labelings, searches for them, and checks the
//! fact that among complete bipartite graphs only stars admit one.

pub mod cli;
pub mod conditions;
pub mod graph;
pub mod labeling;
pub mod labels;
pub mod oracle;
pub mod search;

pub use conditions::{
    construct_star_labeling, feasible_ground_size, proof_trace, star_theorem_decision,
    FeasibilityVerdict, ProofTrace, StarDecision,
};
pub use graph::{make_complete_bipartite, make_cycle, make_path, Bipartition, Graph};
pub use labeling::{edge_labels, edge_preimage, normalize_anchor, translate, validate, Labeling, ValidationReport};
pub use labels::{format_label, parse_label, sym_diff, GroundSize, LabelVec};
pub use search::{search, vertex_order, SearchConfig, SearchMode, SearchOutcome};
