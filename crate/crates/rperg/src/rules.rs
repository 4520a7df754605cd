//! Shared construction of rule right-hand sides.
//!
//! The learner and the squeeze oracle must agree on what graph a rule
//! stores and where its external pair sits, otherwise identical
//! decompositions would produce different keys. Stars take two leaves as
//! externals (the replaced edge's endpoints land on leaves). Atomic
//! components take a canonically chosen edge, which is invariant across
//! relabelings and split orders.

use crate::canon::canonical_external_edge;
use crate::graph::Graph;

/// RHS of a `star(k)` rule: center 0 with leaves `1..=k`, externals are the
/// first two leaves. Requires `k >= 2`.
pub fn star_rhs(k: usize) -> (Graph, (u32, u32)) {
    assert!(k >= 2, "star rules need at least two leaves");
    let g = Graph::from_edges(k + 1, (1..=k as u32).map(|leaf| (0, leaf)));
    (g, (1, 2))
}

/// RHS of an atomic (non-squeezable) component rule: the component itself
/// with a canonical edge as external pair.
pub fn atom_rhs(g: &Graph) -> (Graph, (u32, u32)) {
    (g.clone(), canonical_external_edge(g))
}

/// Human-readable shape of a rule RHS: `triangle`, `star(k)`, or
/// `triconn(n=..,m=..)`.
pub fn describe_rhs(g: &Graph) -> String {
    let (n, m) = (g.n(), g.m());
    if n == 3 && m == 3 {
        return "triangle".to_string();
    }
    if m + 1 == n && n >= 3 {
        let center_degree = n - 1;
        if g.vertices().any(|v| g.degree(v) == center_degree) {
            return format!("star({})", n - 1);
        }
    }
    format!("triconn(n={},m={})", n, m)
}
