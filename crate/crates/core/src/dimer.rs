//! Almost perfect matchings, boundary measurements and Plücker vectors.

use std::collections::{BTreeMap, BTreeSet};

use crate::exact::{MultiPoly, Ring};
use crate::graph::{Network, PlanarBipartiteGraph};
use crate::subsets::k_subsets;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimerError {
    #[error("the graph has no almost perfect matching, so its boundary measurements are all zero and do not give a Grassmannian point")]
    NoMatchings,
    #[error("subset has size {got}, expected the excedance {expected}")]
    SubsetSize { expected: i64, got: usize },
    #[error("subset {0:?} is not a strictly increasing list of labels in 1..=n")]
    SubsetRange(Vec<usize>),
    #[error("plucker vector and graph disagree: {0}")]
    Shape(String),
}

/// A dimer configuration: edge indices (sorted) and the boundary labels it uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub boundary: Vec<usize>,
}

/// Calls `visit` with the edge set of every almost perfect matching.
pub(crate) fn for_each_matching(g: &PlanarBipartiteGraph, mut visit: impl FnMut(&[usize])) {
    let nv = g.vertices().len();
    let interior: Vec<usize> = g.interior_vertices().collect();
    let mut covered = vec![false; nv];
    let mut chosen = Vec::with_capacity(interior.len());
    fn rec(
        g: &PlanarBipartiteGraph,
        interior: &[usize],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        // most constrained uncovered interior vertex
        let mut best: Option<(usize, usize)> = None;
        for &v in interior {
            if covered[v] {
                continue;
            }
            let options = g.rotation(v).iter().filter(|&&e| !covered[g.edge(e).other(v)]).count();
            if options == 0 {
                return;
            }
            if best.is_none_or(|(_, o)| options < o) {
                best = Some((v, options));
            }
        }
        let Some((v, _)) = best else {
            visit(chosen);
            return;
        };
        covered[v] = true;
        for &e in g.rotation(v) {
            let u = g.edge(e).other(v);
            if covered[u] {
                continue;
            }
            covered[u] = true;
            chosen.push(e);
            rec(g, interior, covered, chosen, visit);
            chosen.pop();
            covered[u] = false;
        }
        covered[v] = false;
    }
    rec(g, &interior, &mut covered, &mut chosen, &mut visit);
}

fn boundary_of(g: &PlanarBipartiteGraph, edges: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = edges
        .iter()
        .flat_map(|&e| {
            let x = g.edge(e);
            [x.u, x.v]
        })
        .filter_map(|v| g.vertex(v).boundary)
        .collect();
    out.sort_unstable();
    out
}

/// All almost perfect matchings, ordered lexicographically by their sorted edge ids.
pub fn enumerate_matchings(g: &PlanarBipartiteGraph) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching(g, |edges| {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        out.push(Matching { boundary: boundary_of(g, &edges), edges });
    });
    let key = |m: &Matching| {
        let mut ids: Vec<&str> = m.edges.iter().map(|&e| g.edge(e).id.as_str()).collect();
        ids.sort_unstable();
        ids.into_iter().map(str::to_owned).collect::<Vec<_>>()
    };
    out.sort_by_cached_key(key);
    out
}

fn check_subset(g: &PlanarBipartiteGraph, subset: &[usize]) -> Result<(), DimerError> {
    let k = g.excedance();
    if subset.len() as i64 != k {
        return Err(DimerError::SubsetSize { expected: k, got: subset.len() });
    }
    let increasing = subset.windows(2).all(|w| w[0] < w[1]);
    if !increasing || subset.iter().any(|&i| i == 0 || i > g.n()) {
        return Err(DimerError::SubsetRange(subset.to_vec()));
    }
    Ok(())
}

/// Boundary measurements of all subsets that occur, for weights in any ring.
pub fn measurements<V: Ring>(g: &PlanarBipartiteGraph, weights: &[V]) -> BTreeMap<Vec<usize>, V> {
    let mut out: BTreeMap<Vec<usize>, V> = BTreeMap::new();
    for_each_matching(g, |edges| {
        let w = edges.iter().fold(V::one(), |acc, &e| acc.times(&weights[e]));
        let slot = out.entry(boundary_of(g, edges)).or_insert_with(V::zero);
        *slot = slot.plus(&w);
    });
    out
}

/// The weight generating function of matchings with boundary `subset`.
pub fn boundary_measurement(net: &Network, subset: &[usize]) -> Result<MultiPoly, DimerError> {
    check_subset(net.graph(), subset)?;
    let mut total = MultiPoly::zero();
    for_each_matching(net.graph(), |edges| {
        if boundary_of(net.graph(), edges) == subset {
            let w = edges.iter().fold(MultiPoly::one(), |acc, &e| acc.mul(net.weight(e)));
            total = total.add(&w);
        }
    });
    Ok(total)
}

/// All `binom(n, k)` boundary measurements, indexed by sorted `k`-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector<V = MultiPoly> {
    pub k: usize,
    pub n: usize,
    pub values: BTreeMap<Vec<usize>, V>,
}

impl<V: Ring> PluckerVector<V> {
    pub fn get(&self, subset: &[usize]) -> V {
        self.values.get(subset).cloned().unwrap_or_else(V::zero)
    }

    pub fn scale(&self, c: &V) -> Self {
        let values = self.values.iter().map(|(i, v)| (i.clone(), v.times(c))).collect();
        PluckerVector { k: self.k, n: self.n, values }
    }
}

/// The Plücker vector of a graph for weights in any ring.
pub fn plucker_vector_with<V: Ring>(g: &PlanarBipartiteGraph, weights: &[V]) -> Result<PluckerVector<V>, DimerError> {
    let k = g.excedance();
    if k < 0 || k as usize > g.n() {
        return Err(DimerError::NoMatchings);
    }
    let found = measurements(g, weights);
    if found.is_empty() {
        return Err(DimerError::NoMatchings);
    }
    let values = k_subsets(g.n(), k as usize)
        .into_iter()
        .map(|i| {
            let v = found.get(&i).cloned().unwrap_or_else(V::zero);
            (i, v)
        })
        .collect();
    Ok(PluckerVector { k: k as usize, n: g.n(), values })
}

pub fn plucker_vector(net: &Network) -> Result<PluckerVector<MultiPoly>, DimerError> {
    plucker_vector_with(net.graph(), net.weights())
}

/// First three-term relation `Δ_{Sac}Δ_{Sbd} = Δ_{Sab}Δ_{Scd} + Δ_{Sad}Δ_{Sbc}` that fails,
/// reported as `(S, [a, b, c, d])`.
pub fn plucker_violation<V: Ring>(p: &PluckerVector<V>) -> Option<(Vec<usize>, [usize; 4])> {
    if p.k < 2 || p.n < p.k + 2 {
        return None;
    }
    let with = |s: &[usize], x: usize, y: usize| {
        let mut i = s.to_vec();
        i.push(x);
        i.push(y);
        i.sort_unstable();
        p.get(&i)
    };
    for s in k_subsets(p.n, p.k - 2) {
        let rest: Vec<usize> = (1..=p.n).filter(|x| !s.contains(x)).collect();
        for quad in k_subsets(rest.len(), 4) {
            let [a, b, c, d] = [rest[quad[0] - 1], rest[quad[1] - 1], rest[quad[2] - 1], rest[quad[3] - 1]];
            let lhs = with(&s, a, c).times(&with(&s, b, d));
            let rhs = with(&s, a, b)
                .times(&with(&s, c, d))
                .plus(&with(&s, a, d).times(&with(&s, b, c)));
            if lhs != rhs {
                return Some((s, [a, b, c, d]));
            }
        }
    }
    None
}

pub fn check_plucker_relations<V: Ring>(p: &PluckerVector<V>) -> bool {
    plucker_violation(p).is_none()
}

/// The subsets `I` that are the boundary of some matching.
pub fn positroid(g: &PlanarBipartiteGraph) -> Result<BTreeSet<Vec<usize>>, DimerError> {
    let mut out = BTreeSet::new();
    for_each_matching(g, |edges| {
        out.insert(boundary_of(g, edges));
    });
    if out.is_empty() {
        return Err(DimerError::NoMatchings);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::{int, Rational};
    use crate::graph::{top_cell_graph, Color, Embedding};

    fn single_edge(weight: i64) -> Network {
        let mut emb = Embedding::new(1);
        let b = emb.boundary("b1", 1, (0, -1));
        let w = emb.interior("w", Color::White, (0, 0));
        emb.edge("e", b, w);
        Network::from_rationals(Arc::new(emb.build().unwrap()), vec![int(weight)]).unwrap()
    }

    #[test]
    fn single_edge_measurement() {
        let net = single_edge(5);
        let ms = enumerate_matchings(net.graph());
        assert_eq!(ms, vec![Matching { edges: vec![0], boundary: vec![1] }]);
        assert_eq!(boundary_measurement(&net, &[1]).unwrap().to_string(), "5");
        assert_eq!(
            boundary_measurement(&net, &[]).unwrap_err(),
            DimerError::SubsetSize { expected: 1, got: 0 }
        );
        let p = plucker_vector(&net).unwrap();
        assert_eq!(p.values.len(), 1);
        assert!(check_plucker_relations(&p));
    }

    #[test]
    fn isolated_white_vertex_has_no_matchings() {
        let mut emb = Embedding::new(1);
        let b = emb.boundary("b1", 1, (0, -1));
        let w = emb.interior("w", Color::White, (0, 0));
        emb.interior("lonely", Color::White, (3, 3));
        emb.edge("e", b, w);
        let g = emb.build().unwrap();
        assert!(enumerate_matchings(&g).is_empty());
        assert_eq!(positroid(&g).unwrap_err(), DimerError::NoMatchings);
    }

    #[test]
    fn forced_positroid() {
        let mut emb = Embedding::new(4);
        let b: Vec<usize> = (1..=4).map(|i| emb.boundary(&format!("b{i}"), i, (i as i64 * 3, 0))).collect();
        let w1 = emb.interior("w1", Color::White, (3, 1));
        let w3 = emb.interior("w3", Color::White, (9, 1));
        emb.edge("e1", b[0], w1);
        emb.edge("e3", b[2], w3);
        let g = emb.build().unwrap();
        assert_eq!(positroid(&g).unwrap(), BTreeSet::from([vec![1, 3]]));
    }

    #[test]
    fn top_cell_totals() {
        let g = top_cell_graph(2, 4).unwrap();
        let ones = vec![int(1); g.edges().len()];
        let p = plucker_vector_with::<Rational>(&g, &ones).unwrap();
        let total: Rational = p.values.values().sum();
        assert_eq!(total, int(enumerate_matchings(&g).len() as i64));
        assert!(p.values.values().all(|v| *v > int(0)));
        assert!(check_plucker_relations(&p));
        let mut bad = p.clone();
        *bad.values.get_mut(&vec![1, 3]).unwrap() += int(1);
        assert!(!check_plucker_relations(&bad));
    }
}
