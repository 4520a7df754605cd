//! Canonical keys for rule right-hand sides.
//!
//! Two RHS graphs get the same key exactly when they are isomorphic under a
//! map carrying the (unordered) external pair to the external pair. Exact
//! canonicalization runs iterated neighborhood color refinement seeded with
//! the external pair as a distinguished color, with backtracking over
//! refinement-stable cells. Above [`EXACT_CANON_MAX_VERTICES`] vertices the
//! key degrades to a structural fingerprint; collisions there are accepted.

use std::fmt;

use crate::graph::Graph;

/// Vertex-count cap for exact canonicalization.
pub const EXACT_CANON_MAX_VERTICES: usize = 64;

/// Search-node budget before exact canonicalization gives up and falls back
/// to the fingerprint key.
const SEARCH_NODE_BUDGET: usize = 400_000;

const TAG_EXACT: u8 = 1;
const TAG_FINGERPRINT: u8 = 2;

/// Opaque byte-string key; equal keys mean "same rule".
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn is_fingerprint(&self) -> bool {
        self.0.first() == Some(&TAG_FINGERPRINT)
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{:02x}", b));
        }
        s
    }

    pub fn from_hex(hex: &str) -> Option<CanonicalKey> {
        if hex.len() % 2 != 0 || hex.is_empty() {
            return None;
        }
        let mut bytes = Vec::with_capacity(hex.len() / 2);
        for i in (0..hex.len()).step_by(2) {
            bytes.push(u8::from_str_radix(hex.get(i..i + 2)?, 16).ok()?);
        }
        Some(CanonicalKey(bytes))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Key for `rhs` with an unordered external vertex pair.
///
/// Panics if the external vertices are equal or out of range.
pub fn canonical_key(rhs: &Graph, external: (u32, u32)) -> CanonicalKey {
    let (a, b) = external;
    assert!(a != b, "external vertices must be distinct");
    assert!(
        (a as usize) < rhs.n() && (b as usize) < rhs.n(),
        "external vertex outside rhs"
    );
    if rhs.n() <= EXACT_CANON_MAX_VERTICES {
        if let Some(perm) = canonical_labeling(rhs, Some(external)) {
            return CanonicalKey(encode_exact(rhs, &perm, Some(external)));
        }
    }
    CanonicalKey(fingerprint_bytes(rhs, external))
}

/// Picks an edge of `g` in a label-independent way: the edge mapping to the
/// smallest edge of the canonical form. Isomorphic graphs yield edges in the
/// same automorphism orbit, so keys built on this external choice are stable
/// across relabelings. Used for the external pair of learned non-star rules.
pub fn canonical_external_edge(g: &Graph) -> (u32, u32) {
    assert!(g.m() >= 1, "graph has no edges");
    if g.n() <= EXACT_CANON_MAX_VERTICES {
        if let Some(perm) = canonical_labeling(g, None) {
            let mut best: Option<((u32, u32), (u32, u32))> = None;
            for (u, v) in g.edges() {
                let (cu, cv) = (perm[u as usize], perm[v as usize]);
                let canon = (cu.min(cv), cu.max(cv));
                if best.map_or(true, |(c, _)| canon < c) {
                    best = Some((canon, (u, v)));
                }
            }
            let (_, (u, v)) = best.unwrap();
            return (u.min(v), u.max(v));
        }
    }
    // fingerprint regime: deterministic degree-based pick, approximate
    g.edges()
        .max_by_key(|&(u, v)| {
            let (d1, d2) = (g.degree(u), g.degree(v));
            (d1.max(d2), d1.min(d2), std::cmp::Reverse((u, v)))
        })
        .unwrap()
}

// ---------------------------------------------------------------------------
// exact canonicalization
// ---------------------------------------------------------------------------

/// Canonical labeling (vertex -> canonical position) minimizing the encoded
/// form, or `None` when the search exceeds its node budget.
fn canonical_labeling(g: &Graph, external: Option<(u32, u32)>) -> Option<Vec<u32>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut colors = vec![1u32; n];
    if let Some((a, b)) = external {
        colors[a as usize] = 0;
        colors[b as usize] = 0;
    }
    let mut search = Search {
        g,
        external,
        best: None,
        budget: SEARCH_NODE_BUDGET,
    };
    search.explore(colors);
    if search.budget == 0 {
        return None;
    }
    search.best.map(|(_, perm)| perm)
}

struct Search<'a> {
    g: &'a Graph,
    external: Option<(u32, u32)>,
    best: Option<(Vec<u8>, Vec<u32>)>,
    budget: usize,
}

impl Search<'_> {
    fn explore(&mut self, mut colors: Vec<u32>) {
        if self.budget == 0 {
            return;
        }
        self.budget -= 1;
        refine(self.g, &mut colors);
        let n = self.g.n();
        let cell_count = count_colors(&colors);
        if cell_count == n || cellwise_homogeneous(self.g, &colors) {
            let perm = positions(&colors);
            let bytes = encode_exact(self.g, &perm, self.external);
            if self.best.as_ref().map_or(true, |(b, _)| bytes < *b) {
                self.best = Some((bytes, perm));
            }
            return;
        }
        // branch on the smallest non-singleton cell, lowest color first
        let target = smallest_branch_cell(&colors);
        let members: Vec<usize> =
            (0..n).filter(|&v| colors[v] == target).collect();
        for v in members {
            let mut child = colors.clone();
            // individualize v: give it a fresh color just below its cell
            for c in child.iter_mut() {
                *c = *c * 2 + 1;
            }
            child[v] -= 1;
            self.explore(child);
            if self.budget == 0 {
                return;
            }
        }
    }
}

/// One round of stable neighborhood color refinement: a vertex's new color is
/// the rank of (old color, sorted multiset of neighbor colors).
fn refine(g: &Graph, colors: &mut Vec<u32>) {
    let n = g.n();
    loop {
        let before = count_colors(colors);
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<u32> =
                    g.neighbors(v as u32).iter().map(|&w| colors[w as usize]).collect();
                nbr.sort_unstable();
                (colors[v], nbr, v)
            })
            .collect();
        sigs.sort();
        let mut next = 0u32;
        let mut new_colors = vec![0u32; n];
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                next += 1;
            }
            new_colors[sigs[i].2] = next;
        }
        *colors = new_colors;
        if count_colors(colors) == before {
            break;
        }
    }
}

fn count_colors(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn smallest_branch_cell(colors: &[u32]) -> u32 {
    let mut sizes: Vec<(u32, usize)> = Vec::new();
    for &c in colors {
        match sizes.iter_mut().find(|(cc, _)| *cc == c) {
            Some((_, s)) => *s += 1,
            None => sizes.push((c, 1)),
        }
    }
    sizes
        .into_iter()
        .filter(|&(_, s)| s >= 2)
        .min_by_key(|&(c, s)| (s, c))
        .expect("no branch cell in non-discrete partition")
        .0
}

/// True when every cell induces a clique or an independent set and every
/// cell pair is completely joined or completely disjoint. In that case any
/// within-cell ordering yields the same canonical form, so the search can
/// close the subtree with one candidate. This keeps cliques, stars and
/// complete multipartite RHS graphs out of factorial branching.
fn cellwise_homogeneous(g: &Graph, colors: &[u32]) -> bool {
    let ncells = count_colors(colors);
    let mut dense = colors.to_vec();
    {
        // densify color ids
        let mut sorted: Vec<u32> = colors.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for c in dense.iter_mut() {
            *c = sorted.binary_search(c).unwrap() as u32;
        }
    }
    let mut cell_size = vec![0usize; ncells];
    for &c in &dense {
        cell_size[c as usize] += 1;
    }
    let mut cross = vec![0usize; ncells * ncells];
    for (u, v) in g.edges() {
        let (cu, cv) = (dense[u as usize] as usize, dense[v as usize] as usize);
        cross[cu * ncells + cv] += 1;
        if cu != cv {
            cross[cv * ncells + cu] += 1;
        }
    }
    for i in 0..ncells {
        let within = cross[i * ncells + i];
        let si = cell_size[i];
        if within != 0 && within != si * (si - 1) / 2 {
            return false;
        }
        for j in (i + 1)..ncells {
            let between = cross[i * ncells + j];
            if between != 0 && between != si * cell_size[j] {
                return false;
            }
        }
    }
    true
}

/// Positions from a coloring: vertices sorted by (color, id) take positions
/// 0..n. For discrete colorings this is the canonical permutation.
fn positions(colors: &[u32]) -> Vec<u32> {
    let n = colors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut perm = vec![0u32; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos as u32;
    }
    perm
}

fn encode_exact(g: &Graph, perm: &[u32], external: Option<(u32, u32)>) -> Vec<u8> {
    let n = g.n();
    let mut edges: Vec<(u8, u8)> = g
        .edges()
        .map(|(u, v)| {
            let (cu, cv) = (perm[u as usize] as u8, perm[v as usize] as u8);
            (cu.min(cv), cu.max(cv))
        })
        .collect();
    edges.sort_unstable();
    let mut bytes = Vec::with_capacity(6 + edges.len() * 2);
    bytes.push(TAG_EXACT);
    bytes.push(n as u8);
    bytes.extend_from_slice(&(edges.len() as u16).to_le_bytes());
    for (u, v) in edges {
        bytes.push(u);
        bytes.push(v);
    }
    match external {
        Some((a, b)) => {
            let (ca, cb) = (perm[a as usize] as u8, perm[b as usize] as u8);
            bytes.push(ca.min(cb));
            bytes.push(ca.max(cb));
        }
        None => {
            bytes.push(0xff);
            bytes.push(0xff);
        }
    }
    bytes
}

// ---------------------------------------------------------------------------
// fingerprint fallback
// ---------------------------------------------------------------------------

fn fingerprint_bytes(g: &Graph, external: (u32, u32)) -> Vec<u8> {
    let mut degs: Vec<u32> = g.degree_sequence().iter().map(|&d| d as u32).collect();
    degs.sort_unstable();
    let mut hasher = Fnv64::new();
    for d in &degs {
        hasher.write(&d.to_le_bytes());
    }
    let (da, db) = (g.degree(external.0) as u32, g.degree(external.1) as u32);
    let mut bytes = Vec::with_capacity(37);
    bytes.push(TAG_FINGERPRINT);
    bytes.extend_from_slice(&(g.n() as u32).to_le_bytes());
    bytes.extend_from_slice(&(g.m() as u64).to_le_bytes());
    bytes.extend_from_slice(&hasher.finish().to_le_bytes());
    bytes.extend_from_slice(&da.min(db).to_le_bytes());
    bytes.extend_from_slice(&da.max(db).to_le_bytes());
    bytes.extend_from_slice(&(triangle_count(g) as u64).to_le_bytes());
    bytes
}

/// Number of triangles in `g`.
pub fn triangle_count(g: &Graph) -> usize {
    let mut total = 0;
    for (u, v) in g.edges() {
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if nu[i] > v {
                        total += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    total
}

/// FNV-1a, fixed constants, stable across platforms and runs.
struct Fnv64(u64);

impl Fnv64 {
    fn new() -> Fnv64 {
        Fnv64(0xcbf29ce484222325)
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

/// Stable 64-bit mix of a root seed and a label, for deriving named rng
/// substreams.
pub fn substream_seed(root: u64, label: &str) -> u64 {
    let mut h = Fnv64::new();
    h.write(&root.to_le_bytes());
    h.write(label.as_bytes());
    h.finish()
}

// ---------------------------------------------------------------------------
// reference checker
// ---------------------------------------------------------------------------

/// Brute-force external-respecting isomorphism test, exponential in n.
/// Reference oracle for canonical-key tests; keep inputs small.
pub fn isomorphic_with_external(
    g1: &Graph,
    e1: (u32, u32),
    g2: &Graph,
    e2: (u32, u32),
) -> bool {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return false;
    }
    let n = g1.n();
    let mut mapping = vec![u32::MAX; n];
    let mut used = vec![false; n];
    backtrack_iso(g1, e1, g2, e2, 0, &mut mapping, &mut used)
}

fn backtrack_iso(
    g1: &Graph,
    e1: (u32, u32),
    g2: &Graph,
    e2: (u32, u32),
    v: usize,
    mapping: &mut Vec<u32>,
    used: &mut Vec<bool>,
) -> bool {
    let n = g1.n();
    if v == n {
        return true;
    }
    let v_is_ext = v as u32 == e1.0 || v as u32 == e1.1;
    for t in 0..n as u32 {
        if used[t as usize] || g1.degree(v as u32) != g2.degree(t) {
            continue;
        }
        let t_is_ext = t == e2.0 || t == e2.1;
        if v_is_ext != t_is_ext {
            continue;
        }
        let consistent = (0..v as u32)
            .all(|w| g1.has_edge(v as u32, w) == g2.has_edge(t, mapping[w as usize]));
        if !consistent {
            continue;
        }
        mapping[v] = t;
        used[t as usize] = true;
        if backtrack_iso(g1, e1, g2, e2, v + 1, mapping, used) {
            return true;
        }
        mapping[v] = u32::MAX;
        used[t as usize] = false;
    }
    false
}
