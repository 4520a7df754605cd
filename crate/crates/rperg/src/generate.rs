//! Edge replacement semantics and the two generative models.
//!
//! A derivation starts from a single non-terminal edge and repeatedly
//! replaces a uniformly chosen non-terminal edge with a sampled rule RHS.
//! The terminating model adds an edge-terminalization move with probability
//! `p`; the size-targeted model expands until the vertex budget is reached
//! and then terminalizes everything.

use std::collections::{BTreeMap, HashMap};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::{substream_seed, CanonicalKey};
use crate::grammar::{Grammar, Rule};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("grammar has no rules")]
    EmptyGrammar,
    #[error("grammar probabilities are not estimated")]
    NotEstimated,
    #[error("terminalization probability must lie strictly inside (0,1), got {0}")]
    InvalidP(f64),
    #[error("target size must be at least 2, got {0}")]
    InvalidTarget(usize),
    #[error("grammar cannot grow: no rule has three or more vertices")]
    CannotGrow,
    #[error("edge budget {max_edges} exceeded in all {attempts} attempts")]
    RestartsExhausted { max_edges: usize, attempts: u32 },
}

/// A graph under derivation: simple, connected, with a distinguished set of
/// non-terminal edges.
pub struct DerivationState {
    edges: HashMap<(u32, u32), bool>, // edge -> is non-terminal
    nonterminal: Vec<(u32, u32)>,
    nt_index: HashMap<(u32, u32), usize>,
    next_vertex: u32,
    rng: ChaCha8Rng,
    pub merge_collisions: u64,
    pub rule_uses: BTreeMap<CanonicalKey, u64>,
}

impl DerivationState {
    /// One non-terminal edge between two fresh vertices.
    pub fn start(seed: u64) -> DerivationState {
        let mut st = DerivationState {
            edges: HashMap::new(),
            nonterminal: Vec::new(),
            nt_index: HashMap::new(),
            next_vertex: 2,
            rng: ChaCha8Rng::seed_from_u64(seed),
            merge_collisions: 0,
            rule_uses: BTreeMap::new(),
        };
        st.insert_nonterminal((0, 1));
        st
    }

    pub fn n(&self) -> usize {
        self.next_vertex as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminal.len()
    }

    fn insert_nonterminal(&mut self, e: (u32, u32)) {
        debug_assert!(e.0 < e.1);
        self.edges.insert(e, true);
        self.nt_index.insert(e, self.nonterminal.len());
        self.nonterminal.push(e);
    }

    fn remove_edge(&mut self, e: (u32, u32)) {
        self.edges.remove(&e);
        if let Some(i) = self.nt_index.remove(&e) {
            let last = self.nonterminal.pop().unwrap();
            if i < self.nonterminal.len() {
                self.nonterminal[i] = last;
                self.nt_index.insert(last, i);
            }
        }
    }

    fn mark_terminal(&mut self, e: (u32, u32)) {
        if let Some(flag) = self.edges.get_mut(&e) {
            *flag = false;
        }
        if let Some(i) = self.nt_index.remove(&e) {
            let last = self.nonterminal.pop().unwrap();
            if i < self.nonterminal.len() {
                self.nonterminal[i] = last;
                self.nt_index.insert(last, i);
            }
        }
    }

    fn random_nonterminal(&mut self) -> Option<(u32, u32)> {
        if self.nonterminal.is_empty() {
            return None;
        }
        let i = self.rng.gen_range(0..self.nonterminal.len());
        Some(self.nonterminal[i])
    }

    pub fn is_nonterminal(&self, e: (u32, u32)) -> bool {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.edges.get(&e) == Some(&true)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.edges.keys().copied())
    }
}

/// Replaces non-terminal edge `e` with `rule.rhs`: the edge goes away, the
/// RHS internal vertices get fresh ids, and the external pair lands on the
/// endpoints of `e` under a uniformly random orientation. Added edges are
/// non-terminal; an added edge that duplicates an existing one is merged and
/// the existing edge keeps its terminal status.
///
/// Panics if `e` is not a non-terminal edge of the current graph.
pub fn apply_rule(st: &mut DerivationState, e: (u32, u32), rule: &Rule) {
    let e = (e.0.min(e.1), e.0.max(e.1));
    assert!(st.is_nonterminal(e), "edge {:?} is not non-terminal", e);
    st.remove_edge(e);
    *st.rule_uses.entry(rule.key.clone()).or_insert(0) += 1;

    let (ea, eb) = rule.external;
    let flip: bool = st.rng.gen();
    let (host_a, host_b) = if flip { (e.1, e.0) } else { (e.0, e.1) };

    let rhs_n = rule.rhs.n() as u32;
    let mut vertex_map = vec![u32::MAX; rhs_n as usize];
    vertex_map[ea as usize] = host_a;
    vertex_map[eb as usize] = host_b;
    for v in 0..rhs_n {
        if vertex_map[v as usize] == u32::MAX {
            vertex_map[v as usize] = st.next_vertex;
            st.next_vertex += 1;
        }
    }
    for (u, v) in rule.rhs.edges() {
        let (mu, mv) = (vertex_map[u as usize], vertex_map[v as usize]);
        let new_edge = (mu.min(mv), mu.max(mv));
        if st.edges.contains_key(&new_edge) {
            st.merge_collisions += 1;
        } else {
            st.insert_nonterminal(new_edge);
        }
    }
}

/// A finished derivation.
pub struct Derivation {
    pub graph: Graph,
    pub rule_uses: BTreeMap<CanonicalKey, u64>,
    pub restarts: u32,
    pub merge_collisions: u64,
}

fn check_estimated(gr: &Grammar) -> Result<(), GenError> {
    if gr.is_empty() {
        return Err(GenError::EmptyGrammar);
    }
    let total: f64 = gr.rules().map(|r| r.prob).sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(GenError::NotEstimated);
    }
    Ok(())
}

fn sample_rule<'a>(gr: &'a Grammar, rng: &mut ChaCha8Rng) -> &'a Rule {
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = None;
    for rule in gr.rules() {
        acc += rule.prob;
        last = Some(rule);
        if draw < acc {
            return rule;
        }
    }
    last.expect("sample_rule on empty grammar")
}

/// Derivation-terminating generator: each step either terminalizes a random
/// non-terminal edge (probability `p`) or expands it with a rule sampled
/// proportionally to the renormalized probabilities. A run exceeding
/// `max_edges` edges aborts and restarts on a fresh rng substream, up to
/// `max_restarts` attempts.
pub fn generate_ergm1(
    gr: &Grammar,
    p: f64,
    seed: u64,
    max_edges: usize,
    max_restarts: u32,
) -> Result<Derivation, GenError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(GenError::InvalidP(p));
    }
    check_estimated(gr)?;
    for attempt in 0..max_restarts.max(1) {
        let attempt_seed = substream_seed(seed, &format!("attempt-{attempt}"));
        let mut st = DerivationState::start(attempt_seed);
        let mut overflow = false;
        while let Some(e) = st.random_nonterminal() {
            if st.rng.gen::<f64>() < p {
                st.mark_terminal(e);
            } else {
                let rule = sample_rule(gr, &mut st.rng);
                apply_rule(&mut st, e, rule);
            }
            if st.edge_count() > max_edges {
                overflow = true;
                break;
            }
        }
        if !overflow {
            debug_assert_eq!(st.nonterminal_count(), 0);
            return Ok(Derivation {
                graph: st.to_graph(),
                rule_uses: st.rule_uses,
                restarts: attempt,
                merge_collisions: st.merge_collisions,
            });
        }
    }
    Err(GenError::RestartsExhausted { max_edges, attempts: max_restarts.max(1) })
}

/// Expected branching factor of the terminating model: (1-p) times the mean
/// RHS edge count. Above 1 the derivation is supercritical and restarts are
/// expected.
pub fn ergm1_branching_factor(gr: &Grammar, p: f64) -> f64 {
    let mean_edges: f64 = gr.rules().map(|r| r.prob * r.rhs.m() as f64).sum();
    (1.0 - p) * mean_edges
}

/// A serviceable edge cap for [`generate_ergm1`]: ten times the expected
/// final edge count when subcritical, a flat cap otherwise.
pub fn ergm1_default_max_edges(gr: &Grammar, p: f64) -> usize {
    let mu = ergm1_branching_factor(gr, p);
    if mu < 0.99 {
        let expected = p / (1.0 - mu);
        ((10.0 * expected).ceil() as usize).max(100)
    } else {
        10_000
    }
}

/// Size-targeted generator: expands random non-terminal edges until the
/// vertex count reaches `target_n`, then converts every non-terminal edge to
/// a terminal edge. Output is connected and simple, with
/// `target_n <= n < target_n + max rule vertex gain`.
pub fn generate_ergm2(gr: &Grammar, target_n: usize, seed: u64) -> Result<Derivation, GenError> {
    if target_n < 2 {
        return Err(GenError::InvalidTarget(target_n));
    }
    check_estimated(gr)?;
    let max_gain = gr.rules().map(|r| r.rhs.n().saturating_sub(2)).max().unwrap_or(0);
    if max_gain == 0 {
        return Err(GenError::CannotGrow);
    }
    let mut st = DerivationState::start(seed);
    while st.n() < target_n {
        let e = st.random_nonterminal().expect("derivation always has edges");
        let rule = sample_rule(gr, &mut st.rng);
        apply_rule(&mut st, e, rule);
    }
    let graph = st.to_graph();
    debug_assert!(graph.n() >= target_n && graph.n() < target_n + max_gain);
    Ok(Derivation {
        graph,
        rule_uses: st.rule_uses,
        restarts: 0,
        merge_collisions: st.merge_collisions,
    })
}
