//! Evaluation suite comparing a generated graph against an original:
//! degree distribution, principal-eigenvector network values, hop plot,
//! clustering by degree, adjacency scree, triangle participation, and the
//! graphlet correlation distance.

pub mod eigen;
pub mod orbits;

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
pub use eigen::{principal_eigenvector, top_eigenvalues, EigenError};
pub use orbits::{gcd, graphlet_correlation_matrix, orbit_counts, orbit_counts_enumeration};

#[derive(Debug, Error)]
pub enum MetricError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricValues {
    Series(Vec<(f64, f64)>),
    Scalar(f64),
}

/// Named series or scalar for one metric on one graph or graph pair.
#[derive(Clone, Debug)]
pub struct MetricReport {
    pub name: String,
    pub values: MetricValues,
    pub meta: Vec<(String, String)>,
}

impl MetricReport {
    pub fn series(name: &str, series: Vec<(f64, f64)>) -> MetricReport {
        debug_assert!(series.windows(2).all(|w| w[0].0 < w[1].0));
        MetricReport { name: name.to_string(), values: MetricValues::Series(series), meta: Vec::new() }
    }

    pub fn scalar(name: &str, value: f64) -> MetricReport {
        MetricReport { name: name.to_string(), values: MetricValues::Scalar(value), meta: Vec::new() }
    }

    pub fn as_series(&self) -> Option<&[(f64, f64)]> {
        match &self.values {
            MetricValues::Series(s) => Some(s),
            MetricValues::Scalar(_) => None,
        }
    }

    pub fn as_scalar(&self) -> Option<f64> {
        match self.values {
            MetricValues::Scalar(v) => Some(v),
            MetricValues::Series(_) => None,
        }
    }
}

/// (degree, number of vertices of that degree) for every observed degree.
pub fn degree_distribution(g: &Graph) -> MetricReport {
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for d in g.degree_sequence() {
        *hist.entry(d).or_insert(0) += 1;
    }
    MetricReport::series(
        "degree_distribution",
        hist.into_iter().map(|(k, c)| (k as f64, c as f64)).collect(),
    )
}

/// Principal-eigenvector components sorted descending against rank
/// (1-based).
pub fn network_values(g: &Graph) -> Result<MetricReport, MetricError> {
    let eig = principal_eigenvector(g)?;
    let mut comps = eig.vector;
    comps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let series = comps
        .into_iter()
        .enumerate()
        .map(|(i, v)| ((i + 1) as f64, v))
        .collect();
    let mut report = MetricReport::series("network_values", series);
    report.meta.push(("iterations".into(), eig.iterations.to_string()));
    report.meta.push(("residual".into(), format!("{:e}", eig.residual)));
    Ok(report)
}

/// 1 - cosine similarity of the two descending component vectors, truncated
/// to the shorter length.
pub fn network_value_distance(g1: &Graph, g2: &Graph) -> Result<f64, MetricError> {
    let sorted = |g: &Graph| -> Result<Vec<f64>, MetricError> {
        let mut v = principal_eigenvector(g)?.vector;
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(v)
    };
    let (a, b) = (sorted(g1)?, sorted(g2)?);
    let len = a.len().min(b.len());
    let (a, b) = (&a[..len], &b[..len]);
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 - dot / (na * nb))
}

/// Cumulative reachable-vertex counts by hop distance over BFS from sampled
/// sources (self excluded). Saturates at the last distance that adds pairs.
pub fn hop_plot(g: &Graph, samples: usize, seed: u64) -> MetricReport {
    let n = g.n();
    let mut sources: Vec<u32> = (0..n as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sources.shuffle(&mut rng);
    sources.truncate(samples.min(n));
    let mut per_distance: BTreeMap<u32, u64> = BTreeMap::new();
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &s in &sources {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s as usize] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    *per_distance.entry(dist[w as usize]).or_insert(0) += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut series = Vec::new();
    let mut cum = 0u64;
    for (d, c) in per_distance {
        cum += c;
        series.push((d as f64, cum as f64));
    }
    let mut report = MetricReport::series("hop_plot", series);
    report.meta.push(("samples".into(), sources.len().to_string()));
    report.meta.push(("seed".into(), seed.to_string()));
    report
}

/// Triangles through each vertex, indexed by vertex.
pub fn local_triangles(g: &Graph) -> Vec<u64> {
    let mut t = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if nu[i] > v {
                        t[u as usize] += 1;
                        t[v as usize] += 1;
                        t[nu[i] as usize] += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    t
}

fn local_clustering(g: &Graph) -> Vec<f64> {
    let tri = local_triangles(g);
    (0..g.n())
        .map(|v| {
            let d = g.degree(v as u32) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * tri[v] as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// Mean local clustering coefficient per degree.
pub fn clustering_by_degree(g: &Graph) -> MetricReport {
    let cc = local_clustering(g);
    let mut sums: BTreeMap<usize, (f64, u64)> = BTreeMap::new();
    for v in 0..g.n() {
        let entry = sums.entry(g.degree(v as u32)).or_insert((0.0, 0));
        entry.0 += cc[v];
        entry.1 += 1;
    }
    MetricReport::series(
        "clustering_by_degree",
        sums.into_iter()
            .map(|(k, (total, count))| (k as f64, total / count as f64))
            .collect(),
    )
}

/// Mean local clustering coefficient over all vertices.
pub fn global_clustering(g: &Graph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    local_clustering(g).iter().sum::<f64>() / g.n() as f64
}

/// Top-k adjacency eigenvalues (by magnitude) against rank, descending by
/// value. Unconverged runs are flagged in the metadata rather than failing.
pub fn scree(g: &Graph, k: usize) -> MetricReport {
    let (values, converged) = top_eigenvalues(g, k);
    let series = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| ((i + 1) as f64, v))
        .collect();
    let mut report = MetricReport::series("scree", series);
    report.meta.push(("converged".into(), converged.to_string()));
    report
}

/// (t, number of vertices participating in exactly t triangles), t >= 1.
pub fn triangle_participation(g: &Graph) -> MetricReport {
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for t in local_triangles(g) {
        if t >= 1 {
            *hist.entry(t).or_insert(0) += 1;
        }
    }
    MetricReport::series(
        "triangle_participation",
        hist.into_iter().map(|(t, c)| (t as f64, c as f64)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)])
    }

    fn star3() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)])
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    fn k5() -> Graph {
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(5, edges)
    }

    #[test]
    fn degree_distribution_examples() {
        let r = degree_distribution(&triangle());
        assert_eq!(r.as_series().unwrap(), &[(2.0, 3.0)]);
        let r = degree_distribution(&star3());
        assert_eq!(r.as_series().unwrap(), &[(1.0, 3.0), (3.0, 1.0)]);
        // sum of counts partitions the vertex set
        let total: f64 = degree_distribution(&bowtie())
            .as_series()
            .unwrap()
            .iter()
            .map(|&(_, y)| y)
            .sum();
        assert_eq!(total, 5.0);
    }

    #[test]
    fn network_value_distance_axioms() {
        let g = bowtie();
        assert!(network_value_distance(&g, &g).unwrap().abs() <= 1e-12);
        let other = k5();
        let d12 = network_value_distance(&g, &other).unwrap();
        let d21 = network_value_distance(&other, &g).unwrap();
        assert!((d12 - d21).abs() <= 1e-12);
        assert!(d12 >= 0.0);
    }

    #[test]
    fn hop_plot_on_k5_saturates_in_one_hop() {
        let r = hop_plot(&k5(), 5, 0);
        assert_eq!(r.as_series().unwrap(), &[(1.0, 20.0)]);
    }

    #[test]
    fn hop_plot_path_counts() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        // all sources sampled: pairs at distance 1 = 4, distance 2 = 2
        let r = hop_plot(&path, 3, 0);
        assert_eq!(r.as_series().unwrap(), &[(1.0, 4.0), (2.0, 6.0)]);
    }

    #[test]
    fn hop_plot_reaches_all_pairs_when_connected() {
        let g = bowtie();
        let r = hop_plot(&g, 50, 1);
        let last = *r.as_series().unwrap().last().unwrap();
        assert_eq!(last.1, (g.n() * (g.n() - 1)) as f64);
    }

    #[test]
    fn clustering_examples() {
        let r = clustering_by_degree(&triangle());
        assert_eq!(r.as_series().unwrap(), &[(2.0, 1.0)]);
        let r = clustering_by_degree(&star3());
        assert_eq!(r.as_series().unwrap(), &[(1.0, 0.0), (3.0, 0.0)]);
        assert!((global_clustering(&triangle()) - 1.0).abs() <= 1e-12);
        assert_eq!(global_clustering(&star3()), 0.0);
    }

    #[test]
    fn scree_examples() {
        let r = scree(&k5(), 50);
        let series = r.as_series().unwrap();
        assert!((series[0].1 - 4.0).abs() <= 1e-6);
        for &(_, v) in &series[1..] {
            assert!((v + 1.0).abs() <= 1e-6);
        }
    }

    #[test]
    fn triangle_participation_examples() {
        let r = triangle_participation(&triangle());
        assert_eq!(r.as_series().unwrap(), &[(1.0, 3.0)]);
        let r = triangle_participation(&bowtie());
        assert_eq!(r.as_series().unwrap(), &[(1.0, 4.0), (2.0, 1.0)]);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(triangle_participation(&c4).as_series().unwrap(), &[]);
    }

    #[test]
    fn gcd_self_distance_is_zero() {
        assert_eq!(gcd(&bowtie(), &bowtie()), 0.0);
    }
}
