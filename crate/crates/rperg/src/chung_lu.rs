//! Chung-Lu random graphs: edge endpoints drawn proportionally to a target
//! degree sequence ("fast Chung-Lu" sampling rather than O(n^2) Bernoulli
//! trials).

use std::collections::HashSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum ChungLuError {
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("degree sum must be even, got {0}")]
    OddDegreeSum(usize),
    #[error("degenerate degree sequence: all zeros")]
    AllZero,
}

/// Draws `sum(degrees)/2` candidate edges with endpoints proportional to the
/// degrees; self-loops and duplicates are rejected and redrawn up to a
/// per-edge cap, so the output is simple with exactly `degrees.len()`
/// vertices and close to the target edge count.
pub fn chung_lu(degrees: &[usize], seed: u64) -> Result<Graph, ChungLuError> {
    let n = degrees.len();
    if n < 2 {
        return Err(ChungLuError::TooSmall(n));
    }
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return Err(ChungLuError::AllZero);
    }
    if total % 2 != 0 {
        return Err(ChungLuError::OddDegreeSum(total));
    }
    let m = total / 2;
    let mut cumulative: Vec<u64> = Vec::with_capacity(n);
    let mut acc = 0u64;
    for &d in degrees {
        acc += d as u64;
        cumulative.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_endpoint = |rng: &mut ChaCha8Rng| -> u32 {
        let r = rng.gen_range(0..acc);
        cumulative.partition_point(|&c| c <= r) as u32
    };
    let mut edges: HashSet<(u32, u32)> = HashSet::with_capacity(m);
    const REDRAWS_PER_EDGE: usize = 200;
    for _ in 0..m {
        for _ in 0..REDRAWS_PER_EDGE {
            let u = draw_endpoint(&mut rng);
            let v = draw_endpoint(&mut rng);
            if u == v {
                continue;
            }
            let e = (u.min(v), u.max(v));
            if edges.insert(e) {
                break;
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}
