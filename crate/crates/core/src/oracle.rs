//! Naive generate-and-test enumerator used to cross-check the search engine.
//!
//! Walks every injective map `V -> 𝒳` in lexicographic order and keeps the
//! ones [`validate`] accepts. Shares nothing with `search` except `validate`.

use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{validate, Labeling};
use crate::labels::{GroundSize, LabelVec};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration would visit {size} injective assignments (cap {cap})")]
    CapExceeded { size: u128, cap: u128 },
}

/// Number of injective maps from `n` vertices into a universe of size `universe`.
pub fn injective_count(n: usize, universe: usize) -> u128 {
    (0..n as u128).map(|i| (universe as u128).saturating_sub(i)).product()
}

pub fn brute_force_enumerate(g: &Graph, m: GroundSize) -> Result<Vec<Labeling>, OracleError> {
    brute_force_enumerate_capped(g, m, DEFAULT_CAP)
}

pub fn brute_force_enumerate_capped(
    g: &Graph,
    m: GroundSize,
    cap: u128,
) -> Result<Vec<Labeling>, OracleError> {
    let size = injective_count(g.n(), m.universe());
    if size > cap {
        return Err(OracleError::CapExceeded { size, cap });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(g.n());
    let mut taken = vec![false; m.universe()];
    enumerate(g, m, &mut current, &mut taken, &mut out);
    Ok(out)
}

fn enumerate(
    g: &Graph,
    m: GroundSize,
    current: &mut Vec<LabelVec>,
    taken: &mut [bool],
    out: &mut Vec<Labeling>,
) {
    if current.len() == g.n() {
        let f = Labeling::new(m, current.clone()).expect("labels below 2^m");
        if validate(g, &f).expect("one label per vertex").valid {
            out.push(f);
        }
        return;
    }
    for l in 0..taken.len() {
        if taken[l] {
            continue;
        }
        taken[l] = true;
        current.push(LabelVec(l as u32));
        enumerate(g, m, current, taken, out);
        current.pop();
        taken[l] = false;
    }
}

/// Count of labelings found by the oracle.
pub fn brute_force_count(g: &Graph, m: GroundSize) -> Result<usize, OracleError> {
    brute_force_enumerate(g, m).map(|v| v.len())
}
