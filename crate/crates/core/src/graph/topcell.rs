use std::collections::BTreeSet;

use super::{Color, Embedding, GraphError, PlanarBipartiteGraph};
use crate::dimer;

/// A reduced plabic graph for the top cell of `Gr(k, n)`: an `(n-k) x k` grid
/// of crossings, each resolved into a white vertex (north-east) joined to a black
/// vertex (south-west), with boundary vertices along the bottom and right sides.
///
/// The positroid is verified to be all of `binom([n], k)` before returning.
pub fn top_cell_graph(k: usize, n: usize) -> Result<PlanarBipartiteGraph, GraphError> {
    if k == 0 || k >= n {
        return Err(GraphError::Parameters(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    let rows = n - k;
    let cols = k;
    let mut emb = Embedding::new(n);
    let x = |j: usize| 4 * j as i64;
    let y = |i: usize| -4 * i as i64;
    let mut white = vec![vec![0; cols + 1]; rows + 1];
    let mut black = vec![vec![0; cols + 1]; rows + 1];
    for i in 1..=rows {
        for j in 1..=cols {
            white[i][j] = emb.interior(&format!("w{i}_{j}"), Color::White, (x(j) + 1, y(i) + 1));
            black[i][j] = emb.interior(&format!("b{i}_{j}"), Color::Black, (x(j) - 1, y(i) - 1));
        }
    }
    let mut bottom = vec![0; cols + 1];
    let mut feet = vec![0; cols + 1];
    for j in 1..=cols {
        feet[j] = emb.interior(&format!("z{j}"), Color::White, (x(j) - 1, y(rows) - 3));
        bottom[j] = emb.boundary(&format!("c{j}"), j, (x(j) - 1, y(rows) - 5));
    }
    let mut right = vec![0];
    for i in 1..=rows {
        right.push(emb.boundary(&format!("r{i}"), cols + rows - i + 1, (x(cols) + 4, y(i) + 1)));
    }
    for i in 1..=rows {
        for j in 1..=cols {
            emb.edge(&format!("l{i}_{j}"), white[i][j], black[i][j]);
            if j < cols {
                emb.edge(&format!("h{i}_{j}"), black[i][j + 1], white[i][j]);
            } else {
                emb.edge(&format!("h{i}_{j}"), right[i], white[i][j]);
            }
            if i > 1 {
                emb.edge(&format!("v{i}_{j}"), black[i - 1][j], white[i][j]);
            }
        }
    }
    for j in 1..=cols {
        emb.edge(&format!("d{j}"), black[rows][j], feet[j]);
        emb.edge(&format!("f{j}"), feet[j], bottom[j]);
    }
    let g = emb.build()?;
    let problems = g.validate();
    if !problems.is_empty() {
        return Err(GraphError::Invalid(format!("top cell graph: {}", problems[0])));
    }
    let positroid: BTreeSet<Vec<usize>> = dimer::positroid(&g).map_err(|e| GraphError::Invalid(e.to_string()))?;
    let expected = crate::subsets::k_subsets(n, k).len();
    if g.excedance() != k as i64 || positroid.len() != expected {
        return Err(GraphError::Invalid(format!(
            "top cell graph for ({k},{n}) has positroid of size {} instead of {expected}",
            positroid.len()
        )));
    }
    Ok(g)
}
