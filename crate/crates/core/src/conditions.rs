//! Closed-form conditions: the edge-count filter, the decision for complete
//! bipartite graphs, a constructive star labeling, and the instantiated
//! parity argument ruling out non-star complete bipartite graphs.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{make_star, Graph};
use crate::labeling::Labeling;
use crate::labels::{GroundSize, LabelError, LabelVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionsError {
    #[error("side sizes must be positive (got p={p}, q={q})")]
    ZeroSide { p: u64, q: u64 },
    #[error("K_{{{p},{q}}} is a star; the parity argument does not apply")]
    NotApplicable { p: u64, q: u64 },
    #[error("K_{{{p},{q}}} has {} edges, which is not 2^m - 1", p * q)]
    EdgeCountInfeasible { p: u64, q: u64 },
    #[error(transparent)]
    GroundSize(#[from] LabelError),
}

/// The ground size forced by the edge count, if any: `|E| = 2^m - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeasibilityVerdict {
    pub edges: usize,
    pub feasible: bool,
    pub m: Option<GroundSize>,
}

pub fn ground_size_for_edges(edges: u64) -> Option<GroundSize> {
    let universe = edges.checked_add(1)?;
    if !universe.is_power_of_two() {
        return None;
    }
    GroundSize::new(universe.trailing_zeros()).ok()
}

pub fn feasible_ground_size(g: &Graph) -> FeasibilityVerdict {
    let m = ground_size_for_edges(g.edge_count() as u64);
    FeasibilityVerdict { edges: g.edge_count(), feasible: m.is_some(), m }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", content = "m")]
pub enum StarDecision {
    StarAdmits(GroundSize),
    NonStarImpossible(GroundSize),
    EdgeCountInfeasible,
}

impl fmt::Display for StarDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarDecision::StarAdmits(m) => write!(f, "StarAdmits(m={m})"),
            StarDecision::NonStarImpossible(m) => write!(f, "NonStarImpossible(m={m})"),
            StarDecision::EdgeCountInfeasible => write!(f, "EdgeCountInfeasible"),
        }
    }
}

/// Decides whether `K_{p,q}` has a set-graceful labeling, without searching.
pub fn star_theorem_decision(p: u64, q: u64) -> Result<StarDecision, ConditionsError> {
    if p == 0 || q == 0 {
        return Err(ConditionsError::ZeroSide { p, q });
    }
    let Some(m) = p.checked_mul(q).and_then(ground_size_for_edges) else {
        return Ok(StarDecision::EdgeCountInfeasible);
    };
    if p == 1 || q == 1 {
        Ok(StarDecision::StarAdmits(m))
    } else {
        Ok(StarDecision::NonStarImpossible(m))
    }
}

/// `K_{1,2^m-1}` with the center labeled `∅` and leaf `i` labeled `i`.
///
/// For `m = 0` this is the single vertex `K_1` labeled `∅`.
pub fn construct_star_labeling(m: u32) -> Result<(Graph, Labeling), ConditionsError> {
    let m = GroundSize::new(m)?;
    let graph = if m.get() == 0 {
        crate::graph::make_empty(1).with_name("K_1")
    } else {
        make_star(m.nonempty()).expect("2^m - 1 leaves is positive")
    };
    let values = m.labels().collect::<Vec<LabelVec>>();
    let labeling = Labeling::new(m, values).expect("labels below 2^m");
    Ok((graph, labeling))
}

/// Ordered pairs `(p, q)` with `p * q = 2^m - 1`, ascending in `p`.
pub fn factor_pairs(m: u32) -> Result<Vec<(u64, u64)>, ConditionsError> {
    let m = GroundSize::new(m)?;
    let edges = m.nonempty() as u64;
    let mut pairs = Vec::new();
    let mut d = 1u64;
    while d * d <= edges {
        if edges.is_multiple_of(d) {
            pairs.push((d, edges / d));
            if d * d != edges {
                pairs.push((edges / d, d));
            }
        }
        d += 1;
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    EdgeCountIdentity,
    NonStarProduct,
    UniverseExceedsVertices,
    TranslationWitnessExists,
    EmptyExcluded,
    UniqueDecomposition,
    InvolutionPairing,
    EvenSide,
    OddUniverseContradiction,
}

impl StepKind {
    pub const ORDER: [StepKind; 9] = [
        StepKind::EdgeCountIdentity,
        StepKind::NonStarProduct,
        StepKind::UniverseExceedsVertices,
        StepKind::TranslationWitnessExists,
        StepKind::EmptyExcluded,
        StepKind::UniqueDecomposition,
        StepKind::InvolutionPairing,
        StepKind::EvenSide,
        StepKind::OddUniverseContradiction,
    ];
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An arithmetic fact instantiated in a step, re-evaluated on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub statement: String,
    pub checks: Vec<Check>,
}

/// The parity argument for a hypothetical set-graceful labeling of `K_{p,q}`,
/// `p, q >= 2`, with every number filled in.
///
/// The translate `A` and the pairing `θ` are recorded by their asserted
/// properties only; no labeling exists for them to be computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub p: u64,
    pub q: u64,
    pub m: GroundSize,
    pub steps: Vec<TraceStep>,
}

impl ProofTrace {
    /// True iff every instantiated arithmetic check holds and the steps are in order.
    pub fn verify(&self) -> bool {
        self.steps.len() == StepKind::ORDER.len()
            && self.steps.iter().zip(StepKind::ORDER).all(|(s, k)| s.kind == k)
            && self.steps.iter().flat_map(|s| &s.checks).all(|c| c.holds)
    }
}

fn check(claim: String, holds: bool) -> Check {
    Check { claim, holds }
}

pub fn proof_trace(p: u64, q: u64) -> Result<ProofTrace, ConditionsError> {
    let m = match star_theorem_decision(p, q)? {
        StarDecision::NonStarImpossible(m) => m,
        StarDecision::StarAdmits(_) => return Err(ConditionsError::NotApplicable { p, q }),
        StarDecision::EdgeCountInfeasible => {
            return Err(ConditionsError::EdgeCountInfeasible { p, q })
        }
    };
    let k = m.get();
    let universe = 1u64 << k;
    let edges = p * q;
    let vertices = p + q;
    let product = (p - 1) * (q - 1);
    let spare = universe - vertices.min(universe);

    let step = |kind, statement: String, checks: Vec<Check>| TraceStep { kind, statement, checks };
    let steps = vec![
        step(
            StepKind::EdgeCountIdentity,
            format!("f-hat is a bijection from E onto X \\ {{0}}, so |P||Q| + 1 = {p}*{q} + 1 = {universe} = |X|"),
            vec![check(format!("{p}*{q} + 1 = {universe} = 2^{k}"), edges + 1 == universe)],
        ),
        step(
            StepKind::NonStarProduct,
            format!("K_{{{p},{q}}} is not a star, so (|P|-1)(|Q|-1) = {}*{} = {product} > 0", p - 1, q - 1),
            vec![check(format!("{}*{} = {product} > 0", p - 1, q - 1), product > 0)],
        ),
        step(
            StepKind::UniverseExceedsVertices,
            format!("|P||Q| + 1 > |P| + |Q|, so |X| = {universe} > {vertices} = |V|"),
            vec![check(format!("{universe} > {p} + {q} = {vertices}"), universe > vertices)],
        ),
        step(
            StepKind::TranslationWitnessExists,
            format!(
                "f is injective, so {spare} labels lie outside f(V); pick one as A and set g(v) = A xor f(v), \
                 giving a set-graceful g with g-hat = f-hat"
            ),
            vec![check(format!("{universe} - {vertices} = {spare} >= 1"), universe > vertices && spare >= 1)],
        ),
        step(
            StepKind::EmptyExcluded,
            format!("A is not in f(V), so g(v) = A xor f(v) != 0 for all {vertices} vertices"),
            Vec::new(),
        ),
        step(
            StepKind::UniqueDecomposition,
            format!(
                "for each p in P, g(p) != 0 equals g-hat(p'q) = g(p') xor g(q) for some p' in P, q in Q, \
                 and p' is unique because g-hat is injective on the {edges} edges"
            ),
            vec![check(format!("|E| = {edges} = 2^{k} - 1"), edges == universe - 1)],
        ),
        step(
            StepKind::InvolutionPairing,
            format!("theta(p) = p' satisfies theta(p) != p and theta(theta(p)) = p, so theta pairs up the {p} vertices of P"),
            Vec::new(),
        ),
        step(
            StepKind::EvenSide,
            "the pairs {p, theta(p)} partition P into blocks of size 2, so |P| is even".to_string(),
            Vec::new(),
        ),
        step(
            StepKind::OddUniverseContradiction,
            format!(
                "|P| even makes |P||Q| even and |X| = |P||Q| + 1 odd, but |X| = 2^{k} = {universe} is even; contradiction"
            ),
            vec![
                check(format!("{universe} mod 2 = 0"), universe.is_multiple_of(2)),
                check(format!("m = {k} >= 1"), k >= 1),
            ],
        ),
    ];
    Ok(ProofTrace { p, q, m, steps })
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "proof trace for K_{{{},{}}} (|P|={}, |Q|={}, m={}), assuming a set-graceful labeling f:",
            self.p, self.q, self.p, self.q, self.m
        )?;
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "{}. {}: {}", i + 1, s.kind, s.statement)?;
            if !s.checks.is_empty() {
                let checks: Vec<String> = s
                    .checks
                    .iter()
                    .map(|c| format!("{} {}", c.claim, if c.holds { "ok" } else { "FAILED" }))
                    .collect();
                write!(f, " [{}]", checks.join("; "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete_bipartite, make_cycle, make_path};
    use crate::labeling::validate;

    #[test]
    fn feasibility_examples() {
        let seven = make_path(8).unwrap();
        assert_eq!(feasible_ground_size(&seven).m.map(GroundSize::get), Some(3));
        let k35 = make_complete_bipartite(3, 5).unwrap();
        assert_eq!(feasible_ground_size(&k35).m.map(GroundSize::get), Some(4));
        let six = make_cycle(6).unwrap();
        let v = feasible_ground_size(&six);
        assert!(!v.feasible && v.m.is_none());
        let none = crate::graph::make_empty(3);
        assert_eq!(feasible_ground_size(&none).m.map(GroundSize::get), Some(0));
    }

    #[test]
    fn decision_examples() {
        let m = |k| GroundSize::new(k).unwrap();
        assert_eq!(star_theorem_decision(3, 5), Ok(StarDecision::NonStarImpossible(m(4))));
        assert_eq!(star_theorem_decision(1, 7), Ok(StarDecision::StarAdmits(m(3))));
        assert_eq!(star_theorem_decision(7, 1), Ok(StarDecision::StarAdmits(m(3))));
        assert_eq!(star_theorem_decision(2, 4), Ok(StarDecision::EdgeCountInfeasible));
        assert_eq!(star_theorem_decision(1, 1), Ok(StarDecision::StarAdmits(m(1))));
        assert!(matches!(star_theorem_decision(0, 3), Err(ConditionsError::ZeroSide { .. })));
    }

    #[test]
    fn star_labelings_validate() {
        for k in 0..=8 {
            let (g, f) = construct_star_labeling(k).unwrap();
            assert_eq!(g.edge_count(), (1 << k) - 1);
            assert!(validate(&g, &f).unwrap().valid, "m={k}");
        }
        let (g, f) = construct_star_labeling(2).unwrap();
        assert_eq!(g, make_complete_bipartite(1, 3).unwrap());
        assert_eq!(f, Labeling::from_bits(GroundSize::new(2).unwrap(), &[0, 1, 2, 3]).unwrap());
        let (_, f) = construct_star_labeling(3).unwrap();
        let labels = crate::labeling::edge_labels(&make_complete_bipartite(1, 7).unwrap(), &f).unwrap();
        assert_eq!(labels, (1..8).map(LabelVec).collect::<Vec<_>>());
        assert!(construct_star_labeling(31).is_err());
    }

    #[test]
    fn factor_pair_examples() {
        assert_eq!(factor_pairs(2).unwrap(), vec![(1, 3), (3, 1)]);
        assert_eq!(factor_pairs(4).unwrap(), vec![(1, 15), (3, 5), (5, 3), (15, 1)]);
        assert_eq!(
            factor_pairs(6).unwrap(),
            vec![(1, 63), (3, 21), (7, 9), (9, 7), (21, 3), (63, 1)]
        );
        assert_eq!(factor_pairs(1).unwrap(), vec![(1, 1)]);
        assert_eq!(factor_pairs(0).unwrap(), vec![]);
        // 2^30 - 1 = 3^2 * 7 * 11 * 31 * 151 * 331 has 96 divisors
        assert_eq!(factor_pairs(30).unwrap().len(), 96);
    }

    #[test]
    fn trace_errors() {
        assert_eq!(proof_trace(1, 7), Err(ConditionsError::NotApplicable { p: 1, q: 7 }));
        assert_eq!(proof_trace(2, 4), Err(ConditionsError::EdgeCountInfeasible { p: 2, q: 4 }));
        assert!(matches!(proof_trace(0, 4), Err(ConditionsError::ZeroSide { .. })));
    }

    #[test]
    fn trace_79_instantiates_numbers() {
        let t = proof_trace(7, 9).unwrap();
        assert!(t.verify());
        assert_eq!(t.m.get(), 6);
        assert!(t.steps[1].statement.contains("6*8 = 48 > 0"));
        assert!(t.steps[2].statement.contains("|X| = 64 > 16"));
    }

    #[test]
    fn traces_check_out_for_all_non_stars_up_to_m10() {
        let mut traced = 0;
        for k in 1..=10 {
            for (p, q) in factor_pairs(k).unwrap() {
                if p == 1 || q == 1 {
                    continue;
                }
                let t = proof_trace(p, q).unwrap();
                assert!(t.verify(), "K_{{{p},{q}}}");
                assert_eq!(
                    t.steps.iter().map(|s| s.kind).collect::<Vec<_>>(),
                    StepKind::ORDER.to_vec()
                );
                traced += 1;
            }
        }
        // 2^m - 1 composite for m = 4, 6, 8, 9, 10
        assert!(traced > 0);
    }
}
