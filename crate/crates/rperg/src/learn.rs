//! Grammar learning by stack-based splitting.
//!
//! Each input graph is decomposed into biconnected blocks; every cut vertex
//! lying in `n` blocks emits one `star(n)` count, and every block goes onto
//! a work stack. Popped blocks are either atomic (no separation pair; one
//! rule count) or split at a separation pair into two smaller pieces that
//! re-enter block decomposition. Single-edge blocks (bridges) emit nothing:
//! they would only yield the identity production, and their connectivity is
//! already captured by the star rules at their endpoints.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::substream_seed;
use crate::decompose::{
    biconnected_components, find_separation_pair, random_separation_split, split_at_component,
};
use crate::grammar::Grammar;
use crate::graph::Graph;
use crate::rules::{atom_rhs, describe_rhs, star_rhs};

#[derive(Clone, Debug)]
pub struct LearnConfig {
    /// Put the pair edge on both sides of every split (the convention under
    /// which the learned rule multiset is split-order invariant). Off by
    /// default: the asymmetric split adds the virtual edge to `g2` only.
    pub virtual_both: bool,
    /// `Some(seed)`: split pairs and `g1`-side components are chosen at
    /// random from all valid options (exhaustive enumeration; test-scale
    /// graphs only). `None`: deterministic first-in-scan-order choices.
    pub seed: Option<u64>,
    /// Process input graphs and their top-level blocks on a worker pool.
    pub parallel: bool,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig { virtual_both: false, seed: None, parallel: false }
    }
}

/// A work-stack entry: a biconnected subgraph plus the split pair through
/// which it attaches to its host (`None` for root blocks).
#[derive(Clone, Debug)]
pub struct SqueezeTask {
    pub subgraph: Graph,
    pub boundary: Option<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LearnStats {
    pub tasks_pushed: u64,
    pub tasks_processed: u64,
    pub splits: u64,
    pub star_counts: u64,
    pub atom_counts: u64,
}

impl LearnStats {
    fn merge(mut self, other: LearnStats) -> LearnStats {
        self.tasks_pushed += other.tasks_pushed;
        self.tasks_processed += other.tasks_processed;
        self.splits += other.splits;
        self.star_counts += other.star_counts;
        self.atom_counts += other.atom_counts;
        self
    }
}

#[derive(Debug, Error)]
pub enum LearnError {
    #[error("no input graphs")]
    EmptyInput,
    #[error("no rules learnable from input (graphs contain no structure beyond single edges)")]
    NoRules,
}

/// Learns a grammar from a set of graphs: accumulates rule counts and
/// estimates probabilities. Disconnected inputs are fine; every connected
/// component contributes counts independently.
pub fn learn(graphs: &[Graph], cfg: &LearnConfig) -> Result<Grammar, LearnError> {
    if graphs.is_empty() {
        return Err(LearnError::EmptyInput);
    }
    let (mut grammar, stats) = rule_counts(graphs, cfg);
    debug_assert_eq!(stats.tasks_pushed, stats.tasks_processed, "stack must drain");
    grammar.estimate_probabilities().map_err(|_| LearnError::NoRules)?;
    Ok(grammar)
}

/// Rule-count accumulation without probability estimation. The returned
/// grammar has all probabilities at zero.
pub fn rule_counts(graphs: &[Graph], cfg: &LearnConfig) -> (Grammar, LearnStats) {
    let per_graph = |(i, g): (usize, &Graph)| {
        let seed = substream_seed(cfg.seed.unwrap_or(0), &format!("graph-{i}"));
        learn_single(g, seed, cfg)
    };
    let merge_two = |(mut ga, sa): (Grammar, LearnStats), (gb, sb): (Grammar, LearnStats)| {
        ga.merge(gb);
        (ga, sa.merge(sb))
    };
    if cfg.parallel {
        graphs
            .par_iter()
            .enumerate()
            .map(per_graph)
            .reduce(|| (Grammar::new(), LearnStats::default()), merge_two)
    } else {
        graphs
            .iter()
            .enumerate()
            .map(per_graph)
            .fold((Grammar::new(), LearnStats::default()), merge_two)
    }
}

fn learn_single(g: &Graph, seed: u64, cfg: &LearnConfig) -> (Grammar, LearnStats) {
    let mut grammar = Grammar::new();
    let mut stats = LearnStats::default();
    let mut initial: Vec<(SqueezeTask, u64)> = Vec::new();
    block_decompose(g, None, seed, &mut grammar, &mut stats, &mut initial);

    if cfg.parallel && initial.len() > 1 {
        let (sub_gr, sub_stats) = initial
            .into_par_iter()
            .map(|entry| {
                let mut gr = Grammar::new();
                let mut st = LearnStats::default();
                drain_stack(vec![entry], cfg, &mut gr, &mut st);
                (gr, st)
            })
            .reduce(
                || (Grammar::new(), LearnStats::default()),
                |(mut ga, sa), (gb, sb)| {
                    ga.merge(gb);
                    (ga, sa.merge(sb))
                },
            );
        grammar.merge(sub_gr);
        stats = stats.merge(sub_stats);
    } else {
        drain_stack(initial, cfg, &mut grammar, &mut stats);
    }
    (grammar, stats)
}

fn drain_stack(
    mut stack: Vec<(SqueezeTask, u64)>,
    cfg: &LearnConfig,
    grammar: &mut Grammar,
    stats: &mut LearnStats,
) {
    while let Some((task, task_seed)) = stack.pop() {
        stats.tasks_processed += 1;
        let h = &task.subgraph;
        debug_assert!(h.n() >= 3);
        let choice = match cfg.seed {
            None => find_separation_pair(h).map(|p| (p, 0)),
            Some(_) => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(substream_seed(task_seed, "pair"));
                random_separation_split(h, &mut rng)
            }
        };
        match choice {
            None => {
                let (rhs, ext) = atom_rhs(h);
                grammar.add_count(rhs, ext);
                stats.atom_counts += 1;
            }
            Some((pair, comp_index)) => {
                stats.splits += 1;
                let (s1, s2) = split_at_component(h, pair, comp_index, cfg.virtual_both);
                for (side, part) in [s1, s2].into_iter().enumerate() {
                    let boundary = part
                        .vertices
                        .binary_search(&pair.a)
                        .ok()
                        .zip(part.vertices.binary_search(&pair.b).ok())
                        .map(|(a, b)| (a as u32, b as u32));
                    let child_seed = substream_seed(task_seed, &format!("side-{side}"));
                    block_decompose(&part.graph, boundary, child_seed, grammar, stats, &mut stack);
                }
            }
        }
    }
}

/// GET_COMPONENTS: emits one `star(n)` count per cut vertex lying in `n`
/// biconnected components (bridges included in `n`), and pushes every block
/// with at least three vertices as a squeeze task.
fn block_decompose(
    g: &Graph,
    boundary: Option<(u32, u32)>,
    seed: u64,
    grammar: &mut Grammar,
    stats: &mut LearnStats,
    stack: &mut Vec<(SqueezeTask, u64)>,
) {
    let blocks = biconnected_components(g);
    let mut membership = vec![0u32; g.n()];
    for b in &blocks {
        for &v in &b.vertices {
            membership[v as usize] += 1;
        }
    }
    for &k in membership.iter().filter(|&&k| k >= 2) {
        let (rhs, ext) = star_rhs(k as usize);
        grammar.add_count(rhs, ext);
        stats.star_counts += 1;
    }
    for (j, b) in blocks.into_iter().enumerate() {
        if b.graph.n() < 3 {
            continue;
        }
        let block_boundary = boundary.and_then(|(a, b_orig)| {
            b.vertices
                .binary_search(&a)
                .ok()
                .zip(b.vertices.binary_search(&b_orig).ok())
                .map(|(x, y)| (x as u32, y as u32))
        });
        let task_seed = substream_seed(seed, &format!("block-{j}"));
        stats.tasks_pushed += 1;
        stack.push((
            SqueezeTask { subgraph: b.graph, boundary: block_boundary },
            task_seed,
        ));
    }
}

/// Human-readable rule summary: one `(description, count)` line per rule,
/// sorted by count descending then description.
pub fn rule_histogram(gr: &Grammar) -> Vec<(String, u64)> {
    let mut rows: Vec<(String, u64)> = gr
        .rules()
        .map(|r| (describe_rhs(&r.rhs), r.count))
        .collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    rows
}
