//! The r-fold boundary measurement, its factorization into Plücker
//! coordinates, pairings with Plücker polynomials, and positroid subspaces.

mod expression;
mod space;

use std::sync::Arc;

use rayon::prelude::*;

pub use expression::{immanant, plucker_monomials, PluckerExpression};
pub(crate) use space::determinant;
pub use space::{
    dim_invariant_space, evaluate_on_matrix, immanant_rank, is_totally_positive_on_columns, partial_evaluate,
    partial_evaluation_kernel, permute, positroid_subspace, sample_positivity, twist_sides, vandermonde, PartialEvaluationReport,
    PositivityReport, PositroidSubspace,
};

use crate::dimer::{plucker_vector_with, DimerError};
use crate::exact::{ExactError, MultiPoly, Rational, Ring};
use crate::graph::{Network, PlanarBipartiteGraph};
use crate::weblike::{
    bold_value_table, degree_k, enumerate_weblike, labels_to_locations, BoundaryLabels, Invariant, LabelSpace,
    WeblikeError, WeblikeSubgraph,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Weblike(#[from] WeblikeError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("degree {lambda:?} does not match r={r} and excedance {k}")]
    Degree { r: usize, k: i64, lambda: Vec<usize> },
    #[error("incompatible arguments: {0}")]
    Incompatible(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
}

/// `Web_r(N; λ)` together with the weblike subgraphs and weights it sums over.
#[derive(Clone, Debug)]
pub struct WebMeasurement<V> {
    pub subgraphs: Vec<(WeblikeSubgraph, V)>,
    pub invariant: Invariant<V>,
}

fn check_degree(g: &PlanarBipartiteGraph, r: usize, lambda: &[usize]) -> Result<Arc<LabelSpace>, InvariantError> {
    let k = g.excedance();
    if lambda.len() != g.n() || degree_k(r, lambda).map(|x| x as i64) != Ok(k) {
        return Err(InvariantError::Degree { r, k, lambda: lambda.to_vec() });
    }
    Ok(LabelSpace::new(r, lambda)?)
}

pub fn web_measurement_with<V: Ring>(
    graph: &Arc<PlanarBipartiteGraph>,
    weights: &[V],
    r: usize,
    lambda: &[usize],
) -> Result<WebMeasurement<V>, InvariantError> {
    let space = check_degree(graph, r, lambda)?;
    let subs = enumerate_weblike(graph, r, lambda)?;
    let tables: Vec<Invariant<i64>> = subs.par_iter().map(|w| bold_value_table(w, &space)).collect();
    let mut values = vec![V::zero(); space.len()];
    let mut subgraphs = Vec::with_capacity(subs.len());
    for (w, table) in subs.into_iter().zip(tables) {
        let wt = w.weight(weights);
        for (x, &b) in values.iter_mut().zip(table.values()) {
            if b != 0 {
                *x = x.plus(&wt.times(&V::from_int(b)));
            }
        }
        subgraphs.push((w, wt));
    }
    Ok(WebMeasurement { subgraphs, invariant: Invariant::from_values(space, values) })
}

pub fn web_measurement(net: &Network, r: usize, lambda: &[usize]) -> Result<WebMeasurement<MultiPoly>, InvariantError> {
    web_measurement_with(net.graph_arc(), net.weights(), r, lambda)
}

/// Labels where a tablewise identity fails, with both sides.
#[derive(Clone, Debug)]
pub struct TableReport<V> {
    pub checked: usize,
    pub failures: Vec<(BoundaryLabels, V, V)>,
}

impl<V> TableReport<V> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Δ_{I_1}(N)···Δ_{I_r}(N) = sign(S)·Web_r(N;λ)(E_S)` for every `S`.
pub fn verify_factorization_with<V: Ring>(
    graph: &Arc<PlanarBipartiteGraph>,
    weights: &[V],
    r: usize,
    lambda: &[usize],
) -> Result<TableReport<V>, InvariantError> {
    let web = web_measurement_with(graph, weights, r, lambda)?.invariant;
    let p = plucker_vector_with(graph, weights)?;
    let space = web.space().clone();
    let failures = (0..space.len())
        .into_par_iter()
        .filter_map(|i| {
            let s = &space.labels()[i];
            let lhs = labels_to_locations(s, r).iter().fold(V::one(), |acc, set| acc.times(&p.get(set)));
            let rhs = web.values()[i].times(&V::from_int(space.sign(i)));
            (lhs != rhs).then(|| (s.clone(), lhs, rhs))
        })
        .collect();
    Ok(TableReport { checked: space.len(), failures })
}

pub fn verify_factorization(net: &Network, r: usize, lambda: &[usize]) -> Result<TableReport<MultiPoly>, InvariantError> {
    verify_factorization_with(net.graph_arc(), net.weights(), r, lambda)
}

/// Checks `Web_r(N;λ) = α^r·Web_r(N';λ)` tablewise.
pub fn verify_welldefined(
    n: &Network,
    n2: &Network,
    alpha: &MultiPoly,
    r: usize,
    lambda: &[usize],
) -> Result<TableReport<MultiPoly>, InvariantError> {
    let a = web_measurement(n, r, lambda)?.invariant;
    let b = web_measurement(n2, r, lambda)?.invariant;
    let factor = alpha.pow(r as u32);
    let space = a.space().clone();
    let failures = (0..space.len())
        .filter_map(|i| {
            let rhs = b.values()[i].mul(&factor);
            (a.values()[i] != rhs).then(|| (space.labels()[i].clone(), a.values()[i].clone(), rhs))
        })
        .collect();
    Ok(TableReport { checked: space.len(), failures })
}

/// `⟨x, f⟩ = Σ c·sign(S)·x(E_S)` over the terms `c·Δ_{I_1}···Δ_{I_r}` of `f`,
/// with `S` dual to `(I_1, ..., I_r)`.
pub fn pair<V: Ring>(x: &Invariant<V>, f: &PluckerExpression, coeff: impl Fn(&Rational) -> V) -> Result<V, InvariantError> {
    let space = x.space();
    if f.r() != space.r() || f.n() != space.n() || f.k() != space.k() {
        return Err(InvariantError::Incompatible(format!(
            "expression has (r, k, n) = ({}, {}, {}), invariant has ({}, {}, {})",
            f.r(),
            f.k(),
            f.n(),
            space.r(),
            space.k(),
            space.n()
        )));
    }
    let mut total = V::zero();
    for (sets, c) in f.terms() {
        let s = crate::weblike::locations_to_labels(sets, space.n());
        let Some(i) = space.index_of(&s) else {
            return Err(InvariantError::Incompatible(format!("term {sets:?} has the wrong degree")));
        };
        let v = x.values()[i].times(&V::from_int(space.sign(i)));
        total = total.plus(&v.times(&coeff(c)));
    }
    Ok(total)
}

/// [`pair`] for rational invariants.
pub fn pair_rational(x: &Invariant<Rational>, f: &PluckerExpression) -> Result<Rational, InvariantError> {
    pair(x, f, Rational::clone)
}

/// Converts an integer table to rationals.
pub fn to_rational(x: &Invariant<i64>) -> Invariant<Rational> {
    x.map(|&v| Rational::from_integer(v.into()))
}
