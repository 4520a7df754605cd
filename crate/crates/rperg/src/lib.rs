//! Restricted probabilistic edge replacement grammars for graphs.
//!
//! The pipeline: [`learn`](learn::learn) extracts a grammar from graphs by
//! squeeze decomposition (stars at cut vertices, triangles and triconnected
//! atoms from split-pair recursion), [`generate`](generate) grows new graphs
//! by edge replacement, and [`metrics`](metrics) compares generated graphs
//! against originals. [`chung_lu`](chung_lu) provides the comparison
//! baseline.

pub mod canon;
pub mod chung_lu;
pub mod decompose;
pub mod generate;
pub mod grammar;
pub mod graph;
pub mod learn;
pub mod metrics;
pub mod rules;

pub use canon::{canonical_key, substream_seed, CanonicalKey};
pub use generate::{generate_ergm1, generate_ergm2, Derivation, GenError};
pub use grammar::{Grammar, GrammarError, Rule};
pub use graph::{largest_connected_component, parse_edge_list, Graph, ParseError};
pub use learn::{learn, rule_counts, rule_histogram, LearnConfig, LearnError};
