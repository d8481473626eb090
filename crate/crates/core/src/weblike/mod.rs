//! r-weblike subgraphs, consistent labelings and the bold invariant of a subgraph.

mod json;
mod labels;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::dimer::Matching;
use crate::exact::Ring;
use crate::graph::PlanarBipartiteGraph;

pub use json::{parse_invariant, serialize_invariant};
pub use labels::{
    color_word, degree_k, enumerate_boundary_labels, labels_to_locations, locations_to_labels, sign_of_boundary,
    BoundaryLabels, Invariant, LabelSpace,
};
pub(crate) use labels::pack;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeblikeError {
    #[error("invalid degree: {0}")]
    Degree(String),
    #[error("multiplicities do not form an r-weblike subgraph: {0}")]
    Multiplicity(String),
    #[error("boundary labels do not match the degree of the subgraph")]
    DegreeMismatch,
}

/// An edge multiplicity function with every interior vertex sum equal to `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeblikeSubgraph {
    graph: Arc<PlanarBipartiteGraph>,
    r: usize,
    mult: Vec<usize>,
    lambda: Vec<usize>,
}

impl WeblikeSubgraph {
    pub fn new(graph: Arc<PlanarBipartiteGraph>, r: usize, mult: Vec<usize>) -> Result<Self, WeblikeError> {
        if mult.len() != graph.edges().len() {
            return Err(WeblikeError::Multiplicity(format!(
                "{} multiplicities for {} edges",
                mult.len(),
                graph.edges().len()
            )));
        }
        if let Some(e) = mult.iter().position(|&m| m > r) {
            return Err(WeblikeError::Multiplicity(format!("edge {} exceeds r", graph.edge(e).id)));
        }
        for v in graph.interior_vertices() {
            let sum: usize = graph.rotation(v).iter().map(|&e| mult[e]).sum();
            if sum != r {
                return Err(WeblikeError::Multiplicity(format!(
                    "vertex {} has multiplicity sum {sum}",
                    graph.vertex(v).id
                )));
            }
        }
        let lambda = (1..=graph.n())
            .map(|i| graph.boundary_edge(i).map_or(0, |e| mult[e]))
            .collect();
        Ok(WeblikeSubgraph { graph, r, mult, lambda })
    }

    pub fn graph(&self) -> &Arc<PlanarBipartiteGraph> {
        &self.graph
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn multiplicity(&self, e: usize) -> usize {
        self.mult[e]
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    /// `Π_e wt(e)^{m(e)}`.
    pub fn weight<V: Ring>(&self, weights: &[V]) -> V {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .fold(V::one(), |acc, (e, &m)| acc.times(&weights[e].pow(m as u32)))
    }
}

/// All r-weblike subgraphs of degree λ, in lexicographic order of multiplicities.
pub fn enumerate_weblike(
    graph: &Arc<PlanarBipartiteGraph>,
    r: usize,
    lambda: &[usize],
) -> Result<Vec<WeblikeSubgraph>, WeblikeError> {
    let g = graph.as_ref();
    if lambda.len() != g.n() {
        return Err(WeblikeError::Degree(format!("λ has {} entries for n={}", lambda.len(), g.n())));
    }
    degree_k(r, lambda)?;
    let ne = g.edges().len();
    let nv = g.vertices().len();
    let mut mult = vec![usize::MAX; ne];
    for i in 1..=g.n() {
        match g.boundary_edge(i) {
            Some(e) => mult[e] = lambda[i - 1],
            None if lambda[i - 1] > 0 => return Ok(Vec::new()),
            None => {}
        }
    }
    // remaining sum and number of free edges per interior vertex
    let mut rem = vec![0i64; nv];
    let mut free = vec![0usize; nv];
    for v in g.interior_vertices() {
        rem[v] = r as i64;
        for &e in g.rotation(v) {
            if mult[e] == usize::MAX {
                free[v] += 1;
            } else {
                rem[v] -= mult[e] as i64;
            }
        }
        if rem[v] < 0 || (free[v] == 0 && rem[v] != 0) {
            return Ok(Vec::new());
        }
    }
    let order: Vec<usize> = (0..ne).filter(|&e| mult[e] == usize::MAX).collect();
    let mut out = Vec::new();
    struct Ctx<'a> {
        g: &'a PlanarBipartiteGraph,
        r: usize,
        order: &'a [usize],
        mult: Vec<usize>,
        rem: Vec<i64>,
        free: Vec<usize>,
    }
    fn rec(ctx: &mut Ctx<'_>, pos: usize, out: &mut Vec<Vec<usize>>) {
        if pos == ctx.order.len() {
            out.push(ctx.mult.clone());
            return;
        }
        let e = ctx.order[pos];
        let (u, v) = (ctx.g.edge(e).u, ctx.g.edge(e).v);
        let (lo, hi) = {
            let mut lo = 0i64;
            let mut hi = ctx.r as i64;
            for x in [u, v] {
                hi = hi.min(ctx.rem[x]);
                if ctx.free[x] == 1 {
                    lo = lo.max(ctx.rem[x]);
                }
            }
            (lo, hi)
        };
        for m in lo..=hi {
            ctx.mult[e] = m as usize;
            for x in [u, v] {
                ctx.rem[x] -= m;
                ctx.free[x] -= 1;
            }
            rec(ctx, pos + 1, out);
            for x in [u, v] {
                ctx.rem[x] += m;
                ctx.free[x] += 1;
            }
        }
        ctx.mult[e] = usize::MAX;
    }
    let mut ctx = Ctx { g, r, order: &order, mult, rem, free };
    rec(&mut ctx, 0, &mut out);
    out.sort();
    Ok(out
        .into_iter()
        .map(|mult| WeblikeSubgraph { graph: graph.clone(), r, mult, lambda: lambda.to_vec() })
        .collect())
}

/// Superimposes `r` matchings: `m(e)` counts the matchings containing `e`.
pub fn superpose(graph: &Arc<PlanarBipartiteGraph>, matchings: &[Matching]) -> WeblikeSubgraph {
    let mut mult = vec![0; graph.edges().len()];
    for m in matchings {
        for &e in &m.edges {
            mult[e] += 1;
        }
    }
    WeblikeSubgraph::new(graph.clone(), matchings.len(), mult).expect("a superposition of matchings is weblike")
}

/// Edge order for labeling searches: breadth first from the boundary, so that
/// vertices tend to be completed one after another.
fn labeling_order(w: &WeblikeSubgraph) -> Vec<usize> {
    let g = w.graph.as_ref();
    let mut seen_v = vec![false; g.vertices().len()];
    let mut seen_e = vec![false; g.edges().len()];
    let mut queue = VecDeque::new();
    let mut order = Vec::new();
    let starts: Vec<usize> = (1..=g.n())
        .filter_map(|i| g.boundary_vertex(i))
        .chain(0..g.vertices().len())
        .collect();
    for s in starts {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &e in g.rotation(x) {
                if w.mult[e] == 0 || seen_e[e] {
                    continue;
                }
                seen_e[e] = true;
                order.push(e);
                let y = g.edge(e).other(x);
                if !seen_v[y] {
                    seen_v[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Visits every consistent labeling (edge index → color mask, zero on unused
/// edges), optionally with the boundary labels fixed to `s`.
pub fn for_each_consistent_labeling(w: &WeblikeSubgraph, s: Option<&[u8]>, mut visit: impl FnMut(&[u8])) {
    let g = w.graph.as_ref();
    let full: u8 = ((1u16 << w.r) - 1) as u8;
    let used = vec![0u8; g.vertices().len()];
    let mut left = vec![0usize; g.vertices().len()];
    for (e, edge) in g.edges().iter().enumerate() {
        if w.mult[e] > 0 {
            left[edge.u] += 1;
            left[edge.v] += 1;
        }
    }
    let label = vec![0u8; g.edges().len()];
    let fixed: Vec<Option<u8>> = (0..g.edges().len())
        .map(|e| {
            let edge = g.edge(e);
            let b = g.vertex(edge.u).boundary.or(g.vertex(edge.v).boundary)?;
            s.map(|s| s[b - 1])
        })
        .collect();
    let order = labeling_order(w);
    struct Ctx<'a> {
        g: &'a PlanarBipartiteGraph,
        mult: &'a [usize],
        order: &'a [usize],
        fixed: &'a [Option<u8>],
        full: u8,
        used: Vec<u8>,
        left: Vec<usize>,
        label: Vec<u8>,
    }
    fn rec(ctx: &mut Ctx<'_>, pos: usize, visit: &mut dyn FnMut(&[u8])) {
        if pos == ctx.order.len() {
            visit(&ctx.label);
            return;
        }
        let e = ctx.order[pos];
        let (u, v) = (ctx.g.edge(e).u, ctx.g.edge(e).v);
        let m = ctx.mult[e] as u32;
        let avail_at = |ctx: &Ctx<'_>, x: usize| {
            if ctx.g.is_boundary(x) {
                ctx.full
            } else {
                ctx.full & !ctx.used[x]
            }
        };
        let (au, av) = (avail_at(ctx, u), avail_at(ctx, v));
        let mut forced: Option<u8> = ctx.fixed[e];
        for (x, a) in [(u, au), (v, av)] {
            if !ctx.g.is_boundary(x) && ctx.left[x] == 1 {
                match forced {
                    Some(f) if f != a => return,
                    _ => forced = Some(a),
                }
            }
        }
        let both = au & av;
        let candidates: Vec<u8> = match forced {
            Some(f) if f.count_ones() == m && f & !both == 0 => vec![f],
            Some(_) => return,
            None => crate::subsets::submasks_of_size(both as u32, m).into_iter().map(|x| x as u8).collect(),
        };
        for c in candidates {
            ctx.label[e] = c;
            for x in [u, v] {
                ctx.used[x] |= c;
                ctx.left[x] -= 1;
            }
            rec(ctx, pos + 1, visit);
            for x in [u, v] {
                ctx.used[x] &= !c;
                ctx.left[x] += 1;
            }
        }
        ctx.label[e] = 0;
    }
    let mut ctx = Ctx { g, mult: &w.mult, order: &order, fixed: &fixed, full, used, left, label };
    rec(&mut ctx, 0, &mut visit);
}

/// Boundary labels of a labeling, one mask per boundary vertex.
fn boundary_of(w: &WeblikeSubgraph, label: &[u8]) -> BoundaryLabels {
    (1..=w.graph.n())
        .map(|i| w.graph.boundary_edge(i).map_or(0, |e| label[e]))
        .collect()
}

/// `a(S; W)`, the number of consistent labelings with boundary labels `S`.
pub fn count_consistent_labelings(w: &WeblikeSubgraph, s: &[u8]) -> Result<u64, WeblikeError> {
    if s.len() != w.lambda.len() || s.iter().zip(&w.lambda).any(|(m, &l)| m.count_ones() as usize != l) {
        return Err(WeblikeError::DegreeMismatch);
    }
    let mut count = 0;
    for_each_consistent_labeling(w, Some(s), |_| count += 1);
    Ok(count)
}

/// Counts of all consistent labelings, grouped by their boundary labels.
pub fn labeling_histogram(w: &WeblikeSubgraph) -> HashMap<BoundaryLabels, u64> {
    let mut packed: HashMap<u128, (BoundaryLabels, u64)> = HashMap::new();
    for_each_consistent_labeling(w, None, |label| {
        let s = boundary_of(w, label);
        packed.entry(pack(&s)).or_insert_with(|| (s, 0)).1 += 1;
    });
    packed.into_values().collect()
}

/// The bold invariant: `sign(S)·a(S; W)` at every `S` of the space.
pub fn bold_value_table(w: &WeblikeSubgraph, space: &Arc<LabelSpace>) -> Invariant<i64> {
    let mut values = vec![0i64; space.len()];
    if w.lambda == space.lambda() && w.r == space.r() {
        let mut counts: HashMap<u128, i64> = HashMap::new();
        for_each_consistent_labeling(w, None, |label| {
            let key = (1..=w.graph.n())
                .rev()
                .fold(0u128, |acc, i| acc << 8 | w.graph.boundary_edge(i).map_or(0, |e| label[e]) as u128);
            *counts.entry(key).or_default() += 1;
        });
        for (key, c) in counts {
            if let Some(i) = space.index_of_packed(key) {
                values[i] = space.sign(i) * c;
            }
        }
    }
    Invariant::from_values(space.clone(), values)
}
