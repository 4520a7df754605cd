//! Per-vertex graphlet orbit counting for 2-4-node connected graphlets,
//! and the graphlet correlation distance built on it.
//!
//! Orbits follow the usual numbering: 0 edge endpoint; 1/2 path end/middle;
//! 3 triangle; 4/5 four-path end/middle; 6/7 claw leaf/center; 8 four-cycle;
//! 9/10/11 paw pendant/cycle/attachment; 12/13 diamond degree-2/degree-3;
//! 14 four-clique. All counts are induced. The production counter works
//! per edge and per wedge; [`orbit_counts_enumeration`] recounts by
//! exhaustive 4-subset classification and exists to cross-check it.

use crate::graph::Graph;

pub const ORBITS: usize = 15;

/// The 11 non-redundant orbits used by the correlation distance.
pub const GCD_ORBITS: [usize; 11] = [0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11];

/// Combinatorial per-vertex orbit counts.
pub fn orbit_counts(g: &Graph) -> Vec<[u64; ORBITS]> {
    let n = g.n();
    let mut counts = vec![[0u64; ORBITS]; n];

    // orbit 0: degree
    for v in 0..n {
        counts[v][0] = g.degree(v as u32) as u64;
    }

    // triangles, enumerated once as u < v < w
    let mut triangles: Vec<(u32, u32, u32)> = Vec::new();
    for (u, v) in g.edges() {
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if nu[i] > v {
                        triangles.push((u, v, nu[i]));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    for &(u, v, w) in &triangles {
        counts[u as usize][3] += 1;
        counts[v as usize][3] += 1;
        counts[w as usize][3] += 1;
    }

    // orbits 1 and 2 from degrees and triangle counts
    for v in 0..n {
        let d = g.degree(v as u32) as u64;
        let t = counts[v][3];
        counts[v][2] = d * d.saturating_sub(1) / 2 - t;
        let neighbor_degree_sum: u64 = g
            .neighbors(v as u32)
            .iter()
            .map(|&u| g.degree(u) as u64 - 1)
            .sum();
        counts[v][1] = neighbor_degree_sum - 2 * t;
    }

    // K4 (once per smallest edge) and diamond (once per chord edge)
    for (u, v) in g.edges() {
        let common: Vec<u32> = intersect(g.neighbors(u), g.neighbors(v));
        for (i, &w) in common.iter().enumerate() {
            for &x in &common[i + 1..] {
                if g.has_edge(w, x) {
                    if w > v {
                        for y in [u, v, w, x] {
                            counts[y as usize][14] += 1;
                        }
                    }
                } else {
                    counts[u as usize][13] += 1;
                    counts[v as usize][13] += 1;
                    counts[w as usize][12] += 1;
                    counts[x as usize][12] += 1;
                }
            }
        }
    }

    // paw: a triangle corner with a pendant attached
    for &(u, v, w) in &triangles {
        for (corner, p, q) in [(u, v, w), (v, u, w), (w, u, v)] {
            for &d in g.neighbors(corner) {
                if d != p && d != q && !g.has_edge(d, p) && !g.has_edge(d, q) {
                    counts[corner as usize][11] += 1;
                    counts[p as usize][10] += 1;
                    counts[q as usize][10] += 1;
                    counts[d as usize][9] += 1;
                }
            }
        }
    }

    // four-cycles through v: pairs of distinct 2-walks to the same opposite
    // vertex, minus the cycles inside diamonds and four-cliques
    {
        let mut walks = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        for v in 0..n as u32 {
            for &x in g.neighbors(v) {
                for &w in g.neighbors(x) {
                    if w == v {
                        continue;
                    }
                    if walks[w as usize] == 0 {
                        touched.push(w);
                    }
                    walks[w as usize] += 1;
                }
            }
            let mut cycles = 0u64;
            for &w in &touched {
                let k = walks[w as usize] as u64;
                cycles += k * (k - 1) / 2;
                walks[w as usize] = 0;
            }
            touched.clear();
            let c = &mut counts[v as usize];
            c[8] = cycles - (c[12] + c[13]) - 3 * c[14];
        }
    }

    // induced claws and four-paths by wedge extension
    let mut doubled_path = vec![[0u64; 2]; n]; // [end, middle], each path seen twice
    for y in 0..n as u32 {
        let nbrs = g.neighbors(y);
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let (x, z) = (nbrs[i], nbrs[j]);
                if g.has_edge(x, z) {
                    continue;
                }
                // claw: a third leaf above z keeps each star counted once
                for &w in &nbrs[j + 1..] {
                    if w != x && !g.has_edge(w, x) && !g.has_edge(w, z) {
                        counts[y as usize][7] += 1;
                        counts[x as usize][6] += 1;
                        counts[z as usize][6] += 1;
                        counts[w as usize][6] += 1;
                    }
                }
                // four-path extensions off both wedge ends
                for (near, far) in [(x, z), (z, x)] {
                    for &d in g.neighbors(near) {
                        if d != y && d != far && !g.has_edge(d, y) && !g.has_edge(d, far) {
                            doubled_path[d as usize][0] += 1;
                            doubled_path[far as usize][0] += 1;
                            doubled_path[near as usize][1] += 1;
                            doubled_path[y as usize][1] += 1;
                        }
                    }
                }
            }
        }
    }
    for v in 0..n {
        debug_assert!(doubled_path[v][0] % 2 == 0 && doubled_path[v][1] % 2 == 0);
        counts[v][4] = doubled_path[v][0] / 2;
        counts[v][5] = doubled_path[v][1] / 2;
    }

    counts
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Exhaustive orbit counting over all vertex triples and 4-subsets.
/// Reference oracle; O(n^4).
pub fn orbit_counts_enumeration(g: &Graph) -> Vec<[u64; ORBITS]> {
    let n = g.n();
    let mut counts = vec![[0u64; ORBITS]; n];
    for v in 0..n {
        counts[v][0] = g.degree(v as u32) as u64;
    }
    let vs: Vec<u32> = (0..n as u32).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (vs[i], vs[j], vs[k]);
                let (ab, ac, bc) = (g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c));
                match (ab as u8) + (ac as u8) + (bc as u8) {
                    3 => {
                        for v in [a, b, c] {
                            counts[v as usize][3] += 1;
                        }
                    }
                    2 => {
                        let center = if ab && ac {
                            a
                        } else if ab && bc {
                            b
                        } else {
                            c
                        };
                        for v in [a, b, c] {
                            counts[v as usize][if v == center { 2 } else { 1 }] += 1;
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    classify_quad(g, [vs[i], vs[j], vs[k], vs[l]], &mut counts);
                }
            }
        }
    }
    counts
}

fn classify_quad(g: &Graph, q: [u32; 4], counts: &mut [[u64; ORBITS]]) {
    let mut deg = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    match edges {
        6 => {
            for v in q {
                counts[v as usize][14] += 1;
            }
        }
        5 => {
            for (i, v) in q.iter().enumerate() {
                counts[*v as usize][if deg[i] == 3 { 13 } else { 12 }] += 1;
            }
        }
        4 => {
            if deg.iter().all(|&d| d == 2) {
                for v in q {
                    counts[v as usize][8] += 1;
                }
            } else {
                // paw
                for (i, v) in q.iter().enumerate() {
                    let orbit = match deg[i] {
                        1 => 9,
                        2 => 10,
                        _ => 11,
                    };
                    counts[*v as usize][orbit] += 1;
                }
            }
        }
        3 => {
            if deg.contains(&0) {
                return; // triangle plus isolated vertex
            }
            if deg.contains(&3) {
                // claw
                for (i, v) in q.iter().enumerate() {
                    counts[*v as usize][if deg[i] == 3 { 7 } else { 6 }] += 1;
                }
            } else {
                // four-path
                for (i, v) in q.iter().enumerate() {
                    counts[*v as usize][if deg[i] == 2 { 5 } else { 4 }] += 1;
                }
            }
        }
        _ => {}
    }
}

/// Spearman rank correlation matrix over the 11 non-redundant orbit
/// signatures. Ties take mid-ranks; a constant column correlates 1 with
/// itself and 0 with anything else.
pub fn graphlet_correlation_matrix(g: &Graph) -> [[f64; 11]; 11] {
    let counts = orbit_counts(g);
    let n = g.n();
    let mut ranks: Vec<Vec<f64>> = Vec::with_capacity(11);
    let mut constant = [false; 11];
    for (ci, &orbit) in GCD_ORBITS.iter().enumerate() {
        let column: Vec<f64> = (0..n).map(|v| counts[v][orbit] as f64).collect();
        constant[ci] = column.windows(2).all(|w| w[0] == w[1]);
        ranks.push(rank_with_ties(&column));
    }
    let mut corr = [[0.0; 11]; 11];
    for i in 0..11 {
        for j in i..11 {
            let r = if i == j {
                1.0
            } else if constant[i] || constant[j] {
                0.0
            } else {
                pearson(&ranks[i], &ranks[j])
            };
            corr[i][j] = r;
            corr[j][i] = r;
        }
    }
    corr
}

fn rank_with_ties(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for &v in &order[i..=j] {
            ranks[v] = mid;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for i in 0..a.len() {
        let (da, db) = (a[i] - ma, b[i] - mb);
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if va == 0.0 || vb == 0.0 {
        return 0.0;
    }
    cov / (va.sqrt() * vb.sqrt())
}

/// Graphlet correlation distance: Euclidean norm of the upper-triangle
/// difference of the two correlation matrices.
pub fn gcd(g1: &Graph, g2: &Graph) -> f64 {
    assert!(g1.n() > 0 && g2.n() > 0, "gcd needs non-empty graphs");
    let (c1, c2) = (graphlet_correlation_matrix(g1), graphlet_correlation_matrix(g2));
    let mut sum = 0.0;
    for i in 0..11 {
        for j in (i + 1)..11 {
            let d = c1[i][j] - c2[i][j];
            sum += d * d;
        }
    }
    sum.sqrt()
}
