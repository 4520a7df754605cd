//! Shared fixtures for the integration suites.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rperg::graph::Graph;

pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random_connected(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = gnp(n, p, rng);
        if g.is_connected() && g.m() >= 1 {
            return g;
        }
    }
}

/// Wheel with a rim of `rim` vertices plus a hub.
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..rim as u32)
        .map(|i| (i, ((i + 1) % rim as u32)))
        .collect();
    let hub = rim as u32;
    edges.extend((0..rim as u32).map(|i| (i, hub)));
    Graph::from_edges(rim + 1, edges)
}

pub fn clique(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn triangle() -> Graph {
    Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)])
}

pub fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
}

/// The desk-scale input: the real Arxiv GR-QC graph when available (see
/// `scripts/fetch_arxiv.sh`, or point `RPERG_ARXIV` at the file), otherwise
/// a deterministic synthetic collaboration graph of identical size.
pub fn arxiv_or_synthetic() -> (Graph, &'static str) {
    let candidates = [
        std::env::var("RPERG_ARXIV").unwrap_or_default(),
        "data/ca-GrQc.txt".to_string(),
        "../../data/ca-GrQc.txt".to_string(),
    ];
    for path in candidates.iter().filter(|p| !p.is_empty()) {
        if let Ok(file) = std::fs::File::open(path) {
            let (g, _) = rperg::parse_edge_list(std::io::BufReader::new(file))
                .expect("dataset file should parse");
            assert_eq!(
                (g.n(), g.m()),
                (5242, 14496),
                "unexpected dataset shape in {path}"
            );
            return (g, "arxiv");
        }
    }
    (synthetic_collaboration_graph(5242, 14496, 42), "synthetic")
}

/// Deterministic collaboration-style graph built by recruitment: papers are
/// author cliques assembled around degree-weighted centers with team members
/// drawn locally (existing coauthors or fresh recruits), plus a graded
/// family of large founding collaborations. Every edge comes from a paper,
/// so the graph has hubs, high clustering, and clique-shaped atoms without
/// long-range noise edges that would weld the core into one triconnected
/// blob. Exactly `n` vertices (none isolated) and `m` edges.
pub fn synthetic_collaboration_graph(n: usize, m: usize, seed: u64) -> Graph {
    struct Build {
        edge_set: std::collections::HashSet<(u32, u32)>,
        edge_list: Vec<(u32, u32)>,
        adj: Vec<Vec<u32>>,
    }
    impl Build {
        fn add(&mut self, u: u32, v: u32) -> bool {
            if u == v || !self.edge_set.insert((u.min(v), u.max(v))) {
                return false;
            }
            self.edge_list.push((u, v));
            self.adj[u as usize].push(v);
            self.adj[v as usize].push(u);
            true
        }
        fn len(&self) -> usize {
            self.edge_list.len()
        }
        /// Degree-proportional author choice: a random endpoint of a random
        /// edge.
        fn weighted_author(&self, rng: &mut ChaCha8Rng) -> u32 {
            let (u, v) = self.edge_list[rng.gen_range(0..self.edge_list.len())];
            if rng.gen() {
                u
            } else {
                v
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recruits: Vec<u32> = (0..n as u32).collect();
    recruits.shuffle(&mut rng);
    let mut cursor = 0usize;
    let mut b = Build {
        edge_set: std::collections::HashSet::new(),
        edge_list: Vec::new(),
        adj: vec![Vec::new(); n],
    };

    // founding collaborations: disjoint teams of fresh authors; these large
    // cliques dominate the principal eigenvector, the structure that
    // degree-matched baselines cannot reproduce
    for &size in &[
        40usize, 33, 28, 24, 22, 20, 18, 18, 16, 16, 15, 15, 14, 14, 14, 13, 13, 13, 12, 12,
        12, 12, 11, 11, 11, 10, 10, 10, 10, 10,
    ] {
        let team = &recruits[cursor..cursor + size];
        for i in 0..size {
            for j in (i + 1)..size {
                b.add(team[i], team[j]);
            }
        }
        cursor += size;
    }

    // the paper stream: center weighted by degree, team filled with fresh
    // recruits or coauthors-of-team (locality keeps the decomposition
    // clique-shaped)
    loop {
        let pool_left = n - cursor;
        let budget = m - b.len();
        if pool_left >= budget {
            break; // remaining budget is needed to cover fresh authors
        }
        let size = match rng.gen_range(0..100u32) {
            0..=39 => 2,
            40..=66 => 3,
            67..=82 => 4,
            83..=91 => 5,
            92..=95 => 6,
            96..=97 => 7,
            _ => 8,
        } as usize;
        if b.len() + size * (size - 1) / 2 + pool_left.saturating_sub(size - 1) > m {
            break;
        }
        let mut team = vec![b.weighted_author(&mut rng)];
        let mut attempts = 0;
        while team.len() < size && attempts < 40 {
            attempts += 1;
            let pool_left = n - cursor;
            let p_new = (pool_left as f64 / budget.max(1) as f64).min(0.8);
            let candidate = if pool_left > 0 && rng.gen_bool(p_new) {
                let c = recruits[cursor];
                cursor += 1;
                c
            } else {
                // a coauthor of someone already on the team
                let base = team[rng.gen_range(0..team.len())];
                let nbrs = &b.adj[base as usize];
                if nbrs.is_empty() {
                    continue;
                }
                nbrs[rng.gen_range(0..nbrs.len())]
            };
            if !team.contains(&candidate) {
                team.push(candidate);
            }
        }
        for i in 0..team.len() {
            for j in (i + 1)..team.len() {
                b.add(team[i], team[j]);
            }
        }
    }

    // remaining fresh authors join one established author each
    while cursor < n {
        let v = recruits[cursor];
        cursor += 1;
        loop {
            let partner = b.weighted_author(&mut rng);
            if b.add(v, partner) {
                break;
            }
        }
    }
    assert!(b.len() <= m, "paper stream overshot the edge budget");

    // exact edge count via triadic closures (distance-2 pairs, so the new
    // edges close triangles instead of stitching distant regions)
    let mut stale = 0;
    while b.len() < m {
        let (u, w) = b.edge_list[rng.gen_range(0..b.edge_list.len())];
        let x = b.adj[w as usize][rng.gen_range(0..b.adj[w as usize].len())];
        if b.add(u, x) {
            stale = 0;
        } else {
            stale += 1;
            if stale > 200_000 {
                'fill: for u in 0..n as u32 {
                    for v in (u + 1)..n as u32 {
                        if b.add(u, v) && b.len() == m {
                            break 'fill;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(b.len(), m);
    Graph::from_edges(n, b.edge_list)
}
