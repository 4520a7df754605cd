//! Power-iteration eigensolvers over sparse adjacency.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("power iteration did not converge: residual {residual}")]
    NonConvergence { residual: f64 },
}

fn matvec(g: &Graph, x: &[f64], out: &mut [f64]) {
    for v in 0..g.n() {
        let mut acc = 0.0;
        for &w in g.neighbors(v as u32) {
            acc += x[w as usize];
        }
        out[v] = acc;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub struct PrincipalEigen {
    pub vector: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Principal eigenvector of the adjacency matrix by power iteration on
/// A + I (the shift keeps bipartite spectra from oscillating), unit 2-norm,
/// non-negative orientation. Terminates when ||Ax - lambda x|| <= 1e-8.
pub fn principal_eigenvector(g: &Graph) -> Result<PrincipalEigen, EigenError> {
    let n = g.n();
    if n == 0 {
        return Err(EigenError::EmptyGraph);
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut ax = vec![0.0; n];
    let max_iter = 20_000;
    let tol = 1e-8;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        matvec(g, &x, &mut ax);
        let lambda = dot(&x, &ax);
        residual = (0..n)
            .map(|i| {
                let r = ax[i] - lambda * x[i];
                r * r
            })
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            if x.iter().sum::<f64>() < 0.0 {
                for v in x.iter_mut() {
                    *v = -*v;
                }
            }
            return Ok(PrincipalEigen { vector: x, value: lambda, iterations: it, residual });
        }
        // shifted step
        for i in 0..n {
            ax[i] += x[i];
        }
        let nn = norm(&ax);
        if nn == 0.0 {
            // isolated-vertex graph: zero matrix, uniform vector is exact
            return Ok(PrincipalEigen { vector: x, value: 0.0, iterations: it, residual: 0.0 });
        }
        for i in 0..n {
            x[i] = ax[i] / nn;
        }
    }
    Err(EigenError::NonConvergence { residual })
}

/// Deflated power iteration restricted to the orthogonal complement of the
/// eigenvectors found so far. `sign` +1 walks down from the largest
/// eigenvalue, -1 walks up from the smallest.
fn deflation_sequence(
    g: &Graph,
    sign: f64,
    count: usize,
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, Vec<Vec<f64>>, bool) {
    let n = g.n();
    let shift = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0) as f64 + 1.0;
    let mut found_vals = Vec::new();
    let mut found_vecs: Vec<Vec<f64>> = Vec::new();
    let mut all_converged = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c4ee);
    let mut ax = vec![0.0; n];
    for _ in 0..count.min(n) {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        project_out(&mut x, &found_vecs);
        let nn = norm(&x);
        if nn == 0.0 {
            break;
        }
        for v in x.iter_mut() {
            *v /= nn;
        }
        let mut lambda = 0.0;
        let mut converged = false;
        for _ in 0..max_iter {
            matvec(g, &x, &mut ax);
            let raw = dot(&x, &ax);
            lambda = sign * raw;
            let mut res = vec![0.0; n];
            for i in 0..n {
                res[i] = sign * ax[i] - lambda * x[i];
            }
            project_out(&mut res, &found_vecs);
            if norm(&res) <= tol * lambda.abs().max(1.0) {
                converged = true;
                break;
            }
            for i in 0..n {
                ax[i] = sign * ax[i] + shift * x[i];
            }
            project_out(&mut ax, &found_vecs);
            let nn = norm(&ax);
            if nn == 0.0 {
                break;
            }
            for i in 0..n {
                x[i] = ax[i] / nn;
            }
        }
        if !converged {
            all_converged = false;
        }
        found_vals.push(sign * lambda);
        found_vecs.push(x);
    }
    (found_vals, found_vecs, all_converged)
}

fn project_out(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(x, b);
        for i in 0..x.len() {
            x[i] -= c * b[i];
        }
    }
}

/// Top-k adjacency eigenvalues by magnitude, returned sorted descending by
/// value, plus a convergence flag. Small graphs get the full spectrum from
/// one deflation pass; larger ones merge partial passes from both spectrum
/// ends.
pub fn top_eigenvalues(g: &Graph, k: usize) -> (Vec<f64>, bool) {
    let n = g.n();
    if n == 0 || k == 0 {
        return (Vec::new(), true);
    }
    let k = k.min(n);
    let (tol, max_iter) = if n <= 512 { (1e-10, 5_000) } else { (1e-5, 250) };
    let (values, converged) = if 2 * k >= n {
        let (vals, _, conv) = deflation_sequence(g, 1.0, n, tol, max_iter);
        (vals, conv)
    } else {
        let (mut highs, _, c1) = deflation_sequence(g, 1.0, k, tol, max_iter);
        let (mut lows, _, c2) = deflation_sequence(g, -1.0, k, tol, max_iter);
        highs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        lows.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // two-pointer merge by magnitude; the ends are disjoint since 2k < n
        let mut merged = Vec::with_capacity(2 * k);
        merged.extend_from_slice(&highs);
        merged.extend_from_slice(&lows);
        (merged, c1 && c2)
    };
    let mut by_magnitude = values;
    by_magnitude.sort_by(|a, b| {
        (b.abs(), *b)
            .partial_cmp(&(a.abs(), *a))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    by_magnitude.truncate(k);
    by_magnitude.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    (by_magnitude, converged)
}
