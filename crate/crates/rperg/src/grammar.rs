//! The grammar model: rules with occurrence counts, maximum-likelihood
//! probabilities, derivation log-probability, and JSON persistence.
//!
//! There is a single implicit non-terminal, so a grammar is just a multiset
//! of canonicalized rules whose probabilities are count ratios.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::graph::Graph;

/// One production: an RHS graph with an unordered external vertex pair.
#[derive(Clone, Debug)]
pub struct Rule {
    pub rhs: Graph,
    pub external: (u32, u32),
    pub key: CanonicalKey,
    pub count: u64,
    pub prob: f64,
    pub fingerprint_only: bool,
}

#[derive(Debug, Error)]
pub enum GrammarError {
    #[error("grammar has no rules")]
    Empty,
    #[error("unknown rule key {0}")]
    UnknownKey(String),
    #[error("unsupported grammar version {0}")]
    Version(u32),
    #[error("malformed grammar document: {0}")]
    Malformed(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A multiset of canonicalized rules, keyed by canonical key.
#[derive(Clone, Debug, Default)]
pub struct Grammar {
    rules: BTreeMap<CanonicalKey, Rule>,
}

impl Grammar {
    pub fn new() -> Grammar {
        Grammar::default()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules in key order (deterministic).
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Rule> {
        self.rules.get(key)
    }

    pub fn total_count(&self) -> u64 {
        self.rules.values().map(|r| r.count).sum()
    }

    /// Counts one occurrence of an RHS. A new canonical class starts at
    /// count 1; repeats of an isomorphic RHS (external pair respected)
    /// increment the existing class.
    pub fn add_count(&mut self, rhs: Graph, external: (u32, u32)) {
        let key = canonical_key(&rhs, external);
        self.rules
            .entry(key.clone())
            .and_modify(|r| r.count += 1)
            .or_insert_with(|| Rule {
                rhs,
                external,
                fingerprint_only: key.is_fingerprint(),
                key,
                count: 1,
                prob: 0.0,
            });
    }

    /// Merges another count accumulation into this one. Counting is a
    /// commutative monoid, so parallel workers can accumulate privately and
    /// merge here.
    pub fn merge(&mut self, other: Grammar) {
        for (key, rule) in other.rules {
            self.rules
                .entry(key)
                .and_modify(|r| r.count += rule.count)
                .or_insert(rule);
        }
    }

    /// Maximum-likelihood probabilities: prob = count / total count.
    pub fn estimate_probabilities(&mut self) -> Result<(), GrammarError> {
        if self.rules.is_empty() {
            return Err(GrammarError::Empty);
        }
        let total: u64 = self.total_count();
        debug_assert!(total > 0);
        for rule in self.rules.values_mut() {
            rule.prob = rule.count as f64 / total as f64;
        }
        Ok(())
    }

    /// Log-probability of a derivation using each rule `counts[key]` times:
    /// sum of c * ln(prob). Returns negative infinity when a used rule has
    /// probability zero, and an error for keys the grammar does not know.
    pub fn graph_probability(
        &self,
        counts: &BTreeMap<CanonicalKey, u64>,
    ) -> Result<f64, GrammarError> {
        let mut logp = 0.0f64;
        for (key, &c) in counts {
            if c == 0 {
                continue;
            }
            let rule = self
                .rules
                .get(key)
                .ok_or_else(|| GrammarError::UnknownKey(key.to_hex()))?;
            if rule.prob <= 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            logp += c as f64 * rule.prob.ln();
        }
        Ok(logp)
    }

    /// Count multiset keyed by canonical key, for comparisons against the
    /// squeeze oracle.
    pub fn count_multiset(&self) -> BTreeMap<CanonicalKey, u64> {
        self.rules
            .iter()
            .map(|(k, r)| (k.clone(), r.count))
            .collect()
    }

    pub fn serialize(&self) -> String {
        let doc = GrammarDoc {
            version: GRAMMAR_VERSION,
            rules: self
                .rules
                .values()
                .map(|r| RuleDoc {
                    key: r.key.to_hex(),
                    n: r.rhs.n(),
                    edges: r.rhs.edges().collect(),
                    external: [r.external.0, r.external.1],
                    count: r.count,
                    prob: r.prob,
                    fingerprint_only: r.fingerprint_only,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("grammar serialization cannot fail")
    }

    pub fn deserialize(text: &str) -> Result<Grammar, GrammarError> {
        let doc: GrammarDoc = serde_json::from_str(text)?;
        if doc.version != GRAMMAR_VERSION {
            return Err(GrammarError::Version(doc.version));
        }
        let mut rules = BTreeMap::new();
        for rule_doc in doc.rules {
            let key = CanonicalKey::from_hex(&rule_doc.key)
                .ok_or_else(|| GrammarError::Malformed(format!("bad key {}", rule_doc.key)))?;
            if rule_doc.count == 0 {
                return Err(GrammarError::Malformed("rule with zero count".into()));
            }
            let [a, b] = rule_doc.external;
            if a == b || a as usize >= rule_doc.n || b as usize >= rule_doc.n {
                return Err(GrammarError::Malformed(format!(
                    "external pair [{a}, {b}] invalid for n={}",
                    rule_doc.n
                )));
            }
            for &(u, v) in &rule_doc.edges {
                if u >= v || v as usize >= rule_doc.n {
                    return Err(GrammarError::Malformed(format!("bad edge [{u}, {v}]")));
                }
            }
            let rhs = Graph::from_edges(rule_doc.n, rule_doc.edges.iter().copied());
            if rules
                .insert(
                    key.clone(),
                    Rule {
                        rhs,
                        external: (a, b),
                        key,
                        count: rule_doc.count,
                        prob: rule_doc.prob,
                        fingerprint_only: rule_doc.fingerprint_only,
                    },
                )
                .is_some()
            {
                return Err(GrammarError::Malformed("duplicate rule key".into()));
            }
        }
        Ok(Grammar { rules })
    }
}

const GRAMMAR_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GrammarDoc {
    version: u32,
    rules: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
struct RuleDoc {
    key: String,
    n: usize,
    edges: Vec<(u32, u32)>,
    external: [u32; 2],
    count: u64,
    prob: f64,
    #[serde(default)]
    fingerprint_only: bool,
}
