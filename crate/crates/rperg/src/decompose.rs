//! Squeeze-theoretic decomposition primitives: articulation points,
//! biconnected components, separation pairs, the split operation, and a
//! brute-force squeeze oracle used to cross-check the learner.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_key, CanonicalKey};
use crate::graph::{Graph, InducedSubgraph};
use crate::rules::{atom_rhs, star_rhs};

/// Two vertices whose removal disconnects the host graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeparationPair {
    pub a: u32,
    pub b: u32,
}

impl SeparationPair {
    pub fn new(u: u32, v: u32) -> SeparationPair {
        assert!(u != v);
        SeparationPair { a: u.min(v), b: u.max(v) }
    }
}

/// Cut vertices, ascending. Iterative lowpoint DFS; handles disconnected
/// input per component.
pub fn articulation_points(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![u32::MAX; n];
    let mut is_artic = vec![false; n];
    let mut timer = 1u32;
    let mut stack: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if disc[root as usize] != 0 {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        let mut root_children = 0;
        stack.push((root, 0));
        while let Some(&(v, i)) = stack.last() {
            let nbrs = g.neighbors(v);
            if i < nbrs.len() {
                stack.last_mut().unwrap().1 += 1;
                let w = nbrs[i];
                if disc[w as usize] == 0 {
                    parent[w as usize] = v;
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v as usize] {
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if p != root && low[v as usize] >= disc[p as usize] {
                        is_artic[p as usize] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_artic[root as usize] = true;
        }
    }
    (0..n as u32).filter(|&v| is_artic[v as usize]).collect()
}

/// Standard edge partition into biconnected components. Every edge lands in
/// exactly one component; cut vertices appear in several. Bridges come out
/// as single-edge components.
pub fn biconnected_components(g: &Graph) -> Vec<InducedSubgraph> {
    let n = g.n();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![u32::MAX; n];
    let mut timer = 1u32;
    let mut stack: Vec<(u32, usize)> = Vec::new();
    let mut edge_stack: Vec<(u32, u32)> = Vec::new();
    let mut components = Vec::new();

    let mut emit = |edges: Vec<(u32, u32)>, host: &Graph| {
        let mut verts: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let index: BTreeMap<u32, u32> = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let graph = Graph::from_edges(
            verts.len(),
            edges.iter().map(|&(u, v)| (index[&u], index[&v])),
        );
        debug_assert!(graph.m() <= host.m());
        components.push(InducedSubgraph { graph, vertices: verts });
    };

    for root in 0..n as u32 {
        if disc[root as usize] != 0 {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, 0));
        while let Some(&(v, i)) = stack.last() {
            let nbrs = g.neighbors(v);
            if i < nbrs.len() {
                stack.last_mut().unwrap().1 += 1;
                let w = nbrs[i];
                if disc[w as usize] == 0 {
                    parent[w as usize] = v;
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, 0));
                } else if w != parent[v as usize] && disc[w as usize] < disc[v as usize] {
                    edge_stack.push((v, w));
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        // everything above (p, v) is one biconnected component
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        emit(edges, g);
                    }
                }
            }
        }
        debug_assert!(edge_stack.is_empty());
    }
    components
}

/// Connected components of `g` with `excluded` vertices removed, each
/// sorted, ordered by smallest member.
pub fn components_excluding(g: &Graph, excluded: &[u32]) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    for &v in excluded {
        blocked[v as usize] = true;
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = Vec::new();
    for s in 0..n as u32 {
        if blocked[s as usize] || seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        queue.clear();
        queue.push(s);
        let mut comp = vec![s];
        while let Some(u) = queue.pop() {
            for &w in g.neighbors(u) {
                if !blocked[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// All separation pairs of `g` by exhaustive scan. Test-scale only.
pub fn separation_pairs_brute(g: &Graph) -> Vec<SeparationPair> {
    let n = g.n() as u32;
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if components_excluding(g, &[a, b]).len() >= 2 {
                out.push(SeparationPair { a, b });
            }
        }
    }
    out
}

/// Some separation pair of a biconnected graph with at least 3 vertices, or
/// `None` when the graph is triconnected or a triangle. Deterministic: the
/// first pair in scan order (degree-2 shortcut first, then per-vertex
/// articulation scan). O(n(n+m)) worst case.
pub fn find_separation_pair(g: &Graph) -> Option<SeparationPair> {
    let n = g.n();
    assert!(n >= 3, "separation pairs are defined for |V| >= 3");
    if n == 3 {
        return None;
    }
    // a degree-2 vertex isolates itself once its neighbors go
    for v in 0..n as u32 {
        if g.degree(v) == 2 {
            let nb = g.neighbors(v);
            return Some(SeparationPair::new(nb[0], nb[1]));
        }
    }
    for u in 0..n as u32 {
        let rest: Vec<u32> = (0..n as u32).filter(|&x| x != u).collect();
        let sub = g.induced(&rest);
        let artics = articulation_points(&sub);
        if let Some(&w) = artics.first() {
            return Some(SeparationPair::new(u, rest[w as usize]));
        }
    }
    // complete for biconnected inputs; a violated precondition (cut vertex
    // present) falls back to the exhaustive scan so the contract
    // "none <=> no disconnecting pair exists" holds on any connected graph
    if !articulation_points(g).is_empty() {
        return separation_pairs_brute(g).into_iter().next();
    }
    None
}

/// Uniformly random separation pair plus a random component index for the
/// `g1` side. Exhaustive enumeration; used by split-order invariance tests.
pub fn random_separation_split(
    g: &Graph,
    rng: &mut ChaCha8Rng,
) -> Option<(SeparationPair, usize)> {
    let pairs = separation_pairs_brute(g);
    if pairs.is_empty() {
        return None;
    }
    let p = pairs[rng.gen_range(0..pairs.len())];
    let t = components_excluding(g, &[p.a, p.b]).len();
    Some((p, rng.gen_range(0..t)))
}

fn assemble_side(
    g: &Graph,
    comp_vertices: &[u32],
    pair: SeparationPair,
    ensure_pair_edge: bool,
) -> InducedSubgraph {
    let mut verts: Vec<u32> = comp_vertices.to_vec();
    verts.push(pair.a);
    verts.push(pair.b);
    verts.sort_unstable();
    verts.dedup();
    let index: BTreeMap<u32, u32> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let (ia, ib) = (index[&pair.a], index[&pair.b]);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(&iw) = index.get(&w) {
                if (i as u32) < iw {
                    edges.push((i as u32, iw));
                }
            }
        }
    }
    let pair_edge = (ia.min(ib), ia.max(ib));
    if ensure_pair_edge && !edges.contains(&pair_edge) {
        edges.push(pair_edge);
    }
    InducedSubgraph {
        graph: Graph::from_edges(verts.len(), edges),
        vertices: verts,
    }
}

/// Splits `g` at separation pair `p`, with component `comp_index` of
/// `g - {a,b}` on the `g1` side and all remaining components on the `g2`
/// side.
///
/// Both sides are induced subgraphs, so a real `(a,b)` edge stays on both.
/// When `(a,b)` is not an edge of `g`, a virtual edge is added to `g2`
/// always, and to `g1` only with `virtual_both` (the split-component
/// convention, under which the learned rule multiset is split-order
/// invariant).
pub fn split_at_component(
    g: &Graph,
    p: SeparationPair,
    comp_index: usize,
    virtual_both: bool,
) -> (InducedSubgraph, InducedSubgraph) {
    let comps = components_excluding(g, &[p.a, p.b]);
    assert!(comps.len() >= 2, "{:?} is not a separation pair", p);
    assert!(comp_index < comps.len());
    let mut rest: Vec<u32> = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        if i != comp_index {
            rest.extend_from_slice(comp);
        }
    }
    rest.sort_unstable();
    let g1 = assemble_side(g, &comps[comp_index], p, virtual_both);
    let g2 = assemble_side(g, &rest, p, true);
    (g1, g2)
}

/// [`split_at_component`] with the deterministic component choice: the
/// component containing the smallest vertex id goes to `g1`.
pub fn split_at(
    g: &Graph,
    p: SeparationPair,
    virtual_both: bool,
) -> (InducedSubgraph, InducedSubgraph) {
    split_at_component(g, p, 0, virtual_both)
}

/// Brute-force check that removing any single vertex or vertex pair leaves
/// the graph connected; with `n >= 4` this is vertex connectivity >= 3.
pub fn is_triconnected_brute(g: &Graph) -> bool {
    let n = g.n() as u32;
    if n < 4 || !g.is_connected() {
        return false;
    }
    for v in 0..n {
        if components_excluding(g, &[v]).len() != 1 {
            return false;
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if components_excluding(g, &[a, b]).len() != 1 {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// brute-force block decomposition (oracle side)
// ---------------------------------------------------------------------------

/// Cut vertices by removal test: v is a cut vertex iff deleting it raises
/// the component count.
pub fn cut_vertices_brute(g: &Graph) -> Vec<u32> {
    let base = g.components().len();
    (0..g.n() as u32)
        .filter(|&v| components_excluding(g, &[v]).len() > base)
        .collect()
}

/// Biconnected components by union-find over edges: two edges incident to a
/// common vertex w belong to the same block iff their other endpoints stay
/// connected in g - w.
pub fn blocks_brute(g: &Graph) -> Vec<InducedSubgraph> {
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let edge_index: BTreeMap<(u32, u32), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut dsu: Vec<usize> = (0..edges.len()).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while dsu[root] != root {
            root = dsu[root];
        }
        let mut cur = x;
        while dsu[cur] != root {
            let next = dsu[cur];
            dsu[cur] = root;
            cur = next;
        }
        root
    }
    let n = g.n();
    for w in 0..n as u32 {
        if g.degree(w) < 2 {
            continue;
        }
        let comps = components_excluding(g, &[w]);
        let mut label = vec![usize::MAX; n];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                label[v as usize] = ci;
            }
        }
        // union incident edges whose far endpoints share a component
        let mut by_comp: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in g.neighbors(w) {
            let e = edge_index[&(w.min(v), w.max(v))];
            let c = label[v as usize];
            match by_comp.get(&c) {
                Some(&first) => {
                    let (ra, rb) = (find(&mut dsu, first), find(&mut dsu, e));
                    if ra != rb {
                        dsu[ra] = rb;
                    }
                }
                None => {
                    by_comp.insert(c, e);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        groups.entry(find(&mut dsu, i)).or_default().push(e);
    }
    groups
        .into_values()
        .map(|edges| {
            let mut verts: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            verts.sort_unstable();
            verts.dedup();
            let index: BTreeMap<u32, u32> = verts
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i as u32))
                .collect();
            let graph = Graph::from_edges(
                verts.len(),
                edges.iter().map(|&(u, v)| (index[&u], index[&v])),
            );
            InducedSubgraph { graph, vertices: verts }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// squeeze oracle
// ---------------------------------------------------------------------------

/// Reference implementation of successive squeezing: randomly applies valid
/// non-trivial squeezes until only non-squeezable atoms remain, returning
/// the multiset of squeezed atoms' canonical keys. Independent of the
/// learner's code path (removal-test cut vertices, union-find blocks,
/// exhaustive squeeze enumeration, randomized order). Intended for graphs
/// with at most ~30 vertices.
pub fn squeeze_minors_oracle(g: &Graph, seed: u64) -> BTreeMap<CanonicalKey, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    if g.m() == 0 {
        return counts;
    }
    let blocks = blocks_brute(g);
    let mut membership: BTreeMap<u32, u64> = BTreeMap::new();
    for b in &blocks {
        for &v in &b.vertices {
            *membership.entry(v).or_insert(0) += 1;
        }
    }
    for (_, k) in membership.into_iter().filter(|&(_, k)| k >= 2) {
        let (rhs, ext) = star_rhs(k as usize);
        *counts.entry(canonical_key(&rhs, ext)).or_insert(0) += 1;
    }
    for b in blocks {
        if b.graph.n() >= 3 {
            oracle_squeeze_biconnected(&b.graph, &mut rng, &mut counts);
        }
    }
    counts
}

/// A valid non-trivial squeeze in a biconnected graph: a pair whose removal
/// leaves t >= 2 components (each necessarily attached to both pair
/// vertices), one component replaced by the pair edge. The squeezed-out
/// minor keeps the pair edge; both the minor and the remainder stay
/// biconnected, so the recursion needs no further cut-vertex handling.
fn oracle_squeeze_biconnected(
    h: &Graph,
    rng: &mut ChaCha8Rng,
    counts: &mut BTreeMap<CanonicalKey, u64>,
) {
    let n = h.n() as u32;
    let mut choices: Vec<(u32, u32, usize)> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let t = components_excluding(h, &[a, b]).len();
            if t >= 2 {
                for ci in 0..t {
                    choices.push((a, b, ci));
                }
            }
        }
    }
    if choices.is_empty() {
        let (rhs, ext) = atom_rhs(h);
        *counts.entry(canonical_key(&rhs, ext)).or_insert(0) += 1;
        return;
    }
    let (a, b, ci) = choices[rng.gen_range(0..choices.len())];
    let pair = SeparationPair::new(a, b);
    let (minor, rest) = split_at_component(h, pair, ci, true);
    oracle_squeeze_biconnected(&minor.graph, rng, counts);
    oracle_squeeze_biconnected(&rest.graph, rng, counts);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)])
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)])
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn diamond() -> Graph {
        // chord (0,1)
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    }

    #[test]
    fn articulation_examples() {
        assert_eq!(articulation_points(&path3()), vec![1]);
        assert_eq!(articulation_points(&triangle()), Vec::<u32>::new());
        assert_eq!(articulation_points(&bowtie()), vec![2]);
    }

    #[test]
    fn biconnected_examples() {
        let comps = biconnected_components(&bowtie());
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!((c.graph.n(), c.graph.m()), (3, 3));
        }
        let comps = biconnected_components(&path3());
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.graph.m(), 1);
        }
        let comps = biconnected_components(&k4());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph.m(), 6);
    }

    #[test]
    fn edge_partition_covers_graph() {
        for g in [bowtie(), c4(), k4(), path3()] {
            let total: usize = biconnected_components(&g).iter().map(|c| c.graph.m()).sum();
            assert_eq!(total, g.m());
        }
    }

    #[test]
    fn separation_pair_examples() {
        let p = find_separation_pair(&c4()).expect("C4 has a separation pair");
        assert!(components_excluding(&c4(), &[p.a, p.b]).len() >= 2);
        assert_eq!(find_separation_pair(&k4()), None);
        assert_eq!(find_separation_pair(&triangle()), None);
    }

    #[test]
    fn brute_pairs_on_c4() {
        let pairs = separation_pairs_brute(&c4());
        assert_eq!(
            pairs,
            vec![SeparationPair { a: 0, b: 2 }, SeparationPair { a: 1, b: 3 }]
        );
    }

    #[test]
    fn split_c4_asymmetric() {
        let (g1, g2) = split_at(&c4(), SeparationPair::new(0, 2), false);
        assert_eq!(g1.vertices, vec![0, 1, 2]);
        assert_eq!(g1.graph.m(), 2); // path 0-1-2, no virtual edge
        assert_eq!(g2.vertices, vec![0, 2, 3]);
        assert_eq!(g2.graph.m(), 3); // triangle with virtual edge
    }

    #[test]
    fn split_c4_virtual_both() {
        let (g1, g2) = split_at(&c4(), SeparationPair::new(0, 2), true);
        assert_eq!((g1.graph.n(), g1.graph.m()), (3, 3));
        assert_eq!((g2.graph.n(), g2.graph.m()), (3, 3));
    }

    #[test]
    fn split_keeps_real_edge_on_both_sides() {
        // a real pair edge belongs to both induced sides in either mode;
        // splitting must never erode edges of the host graph
        let g = diamond();
        for vb in [false, true] {
            let (g1, g2) = split_at(&g, SeparationPair::new(0, 1), vb);
            for part in [&g1, &g2] {
                let (ia, ib) = (
                    part.vertices.binary_search(&0).unwrap() as u32,
                    part.vertices.binary_search(&1).unwrap() as u32,
                );
                assert!(part.graph.has_edge(ia, ib));
            }
            assert_eq!((g1.graph.n(), g1.graph.m()), (3, 3));
            assert_eq!((g2.graph.n(), g2.graph.m()), (3, 3));
        }
    }

    #[test]
    fn split_adds_virtual_edge_to_g2_only_by_default() {
        let (g1, g2) = split_at(&c4(), SeparationPair::new(0, 2), false);
        assert_eq!(g1.graph.m(), 2); // path, no virtual edge
        assert_eq!(g2.graph.m(), 3); // triangle with virtual edge
    }

    #[test]
    fn split_vertex_conservation() {
        for (g, p) in [
            (c4(), SeparationPair::new(0, 2)),
            (diamond(), SeparationPair::new(0, 1)),
        ] {
            for vb in [false, true] {
                let (g1, g2) = split_at(&g, p, vb);
                assert_eq!(g1.graph.n() + g2.graph.n(), g.n() + 2);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let counts = squeeze_minors_oracle(&k4(), 1);
        let (rhs, ext) = atom_rhs(&k4());
        assert_eq!(counts.get(&canonical_key(&rhs, ext)), Some(&1));
        assert_eq!(counts.len(), 1);

        let counts = squeeze_minors_oracle(&triangle(), 1);
        let (rhs, ext) = atom_rhs(&triangle());
        assert_eq!(counts.get(&canonical_key(&rhs, ext)), Some(&1));
        assert_eq!(counts.values().sum::<u64>(), 1);

        let counts = squeeze_minors_oracle(&bowtie(), 5);
        let (tri, text) = atom_rhs(&triangle());
        let (star, sext) = star_rhs(2);
        assert_eq!(counts.get(&canonical_key(&tri, text)), Some(&2));
        assert_eq!(counts.get(&canonical_key(&star, sext)), Some(&1));
        assert_eq!(counts.values().sum::<u64>(), 3);
    }

    #[test]
    fn oracle_is_split_order_invariant_on_small_cases() {
        // diamond, K_{2,3}, theta graph: every random squeeze order must give
        // the same multiset
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let theta = Graph::from_edges(6, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]);
        for g in [diamond(), k23, theta, c4(), bowtie()] {
            let reference = squeeze_minors_oracle(&g, 0);
            for seed in 1..25 {
                assert_eq!(squeeze_minors_oracle(&g, seed), reference);
            }
        }
    }

    #[test]
    fn triconnectivity_brute() {
        assert!(is_triconnected_brute(&k4()));
        assert!(!is_triconnected_brute(&c4()));
        assert!(!is_triconnected_brute(&diamond()));
        // wheel on 6 vertices
        let wheel = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)],
        );
        assert!(is_triconnected_brute(&wheel));
    }

    #[test]
    fn find_pair_agrees_with_brute_force_on_small_connected_graphs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 600 {
            let n = rng.gen_range(3..=7usize);
            let density = rng.gen_range(0.25..0.9);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges);
            if !g.is_connected() {
                continue;
            }
            let found = find_separation_pair(&g);
            let brute = separation_pairs_brute(&g);
            assert_eq!(found.is_none(), brute.is_empty(), "disagreement on {g:?}");
            if let Some(p) = found {
                assert!(components_excluding(&g, &[p.a, p.b]).len() >= 2);
            }
            checked += 1;
        }
    }

    #[test]
    fn split_edge_conservation() {
        // every edge of g lands on exactly one side, except the pair edge:
        // a real one is shared by both sides, virtual ones are additions
        for (g, p) in [
            (c4(), SeparationPair::new(0, 2)),
            (diamond(), SeparationPair::new(0, 1)),
            (bowtie(), SeparationPair::new(0, 2)),
        ] {
            for vb in [false, true] {
                let (g1, g2) = split_at(&g, p, vb);
                let real = g.has_edge(p.a, p.b);
                let added = if real {
                    1 // the real edge appears on both sides
                } else {
                    1 + usize::from(vb) // virtual on g2, plus g1 when both-sided
                };
                assert_eq!(
                    g1.graph.m() + g2.graph.m(),
                    g.m() + added,
                    "edge conservation failed for {g:?} vb={vb}"
                );
            }
        }
    }

    #[test]
    fn brute_blocks_match_tarjan() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(2..12usize);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges);
            let mut a: Vec<Vec<u32>> = biconnected_components(&g)
                .into_iter()
                .map(|c| c.vertices)
                .collect();
            let mut b: Vec<Vec<u32>> = blocks_brute(&g).into_iter().map(|c| c.vertices).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "block mismatch on {g:?}");
            let cuts = cut_vertices_brute(&g);
            assert_eq!(articulation_points(&g), cuts, "cut vertex mismatch on {g:?}");
        }
    }
}
