//! Local moves on networks with exact scalar tracking.
//!
//! Every move returns `N'` together with the scalar `α` for which
//! `X̃(N) = α·X̃(N')` holds entrywise.

use std::sync::Arc;

use num_traits::Zero;

use crate::dimer::{plucker_vector, DimerError};
use crate::exact::{MultiPoly, Rational};
use crate::graph::{Color, Edge, Network, PlanarBipartiteGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("vertex index {0} is out of range")]
    NoVertex(usize),
    #[error("edge index {0} is out of range")]
    NoEdge(usize),
    #[error("move needs an interior vertex, {0} is on the boundary")]
    Boundary(String),
    #[error("gauge factor must be nonzero")]
    ZeroGauge,
    #[error("not a spider configuration: {0}")]
    Spider(String),
    #[error("ac+bd vanishes, the spider move is undefined")]
    Degenerate,
    #[error("{0}")]
    Precondition(String),
    #[error("move needs rational weights; specialize the variables first")]
    Symbolic,
    #[error("merged weight is zero")]
    ZeroWeight,
}

#[derive(Clone, Debug)]
pub struct MoveResult {
    pub network: Network,
    pub scalar: MultiPoly,
}

/// A move and where to apply it, by vertex and edge index.
#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    Gauge { vertex: usize, alpha: Rational },
    Spider { face: [usize; 4] },
    Bivalent { vertex: usize },
    Parallel { u: usize, v: usize },
    Leaf { vertex: usize },
    Dipole { edge: usize },
}

pub fn apply_move(net: &Network, mv: &Move) -> Result<MoveResult, MoveError> {
    match mv {
        Move::Gauge { vertex, alpha } => gauge(net, *vertex, alpha),
        Move::Spider { face } => spider_move(net, *face),
        Move::Bivalent { vertex } => remove_bivalent(net, *vertex),
        Move::Parallel { u, v } => merge_parallel(net, *u, *v),
        Move::Leaf { vertex } => remove_leaf(net, *vertex),
        Move::Dipole { edge } => remove_dipole(net, *edge),
    }
}

/// Mutable copy of a network; removed vertices and edges are compacted away
/// by [`Draft::finish`], preserving the order of what remains.
struct Draft {
    n: usize,
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<(Edge, MultiPoly)>>,
    rotation: Vec<Vec<usize>>,
}

impl Draft {
    fn new(net: &Network) -> Self {
        let g = net.graph();
        Draft {
            n: g.n(),
            vertices: g.vertices().iter().cloned().map(Some).collect(),
            edges: g.edges().iter().cloned().zip(net.weights().iter().cloned()).map(Some).collect(),
            rotation: g.rotations().to_vec(),
        }
    }

    fn weight_mut(&mut self, e: usize) -> &mut MultiPoly {
        &mut self.edges[e].as_mut().expect("live edge").1
    }

    fn remove_edge(&mut self, e: usize) {
        if let Some((edge, _)) = self.edges[e].take() {
            self.rotation[edge.u].retain(|&x| x != e);
            self.rotation[edge.v].retain(|&x| x != e);
        }
    }

    fn remove_vertex(&mut self, v: usize) {
        for e in self.rotation[v].clone() {
            self.remove_edge(e);
        }
        self.vertices[v] = None;
    }

    /// Scales every edge at `v`.
    fn gauge(&mut self, v: usize, alpha: &Rational) {
        for &e in &self.rotation[v].clone() {
            let w = self.weight_mut(e);
            *w = w.scale(alpha);
        }
    }

    fn finish(self) -> Result<Network, MoveError> {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let vertices: Vec<Vertex> = self
            .vertices
            .into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i, v)))
            .enumerate()
            .map(|(j, (i, v))| {
                vmap[i] = j;
                v
            })
            .collect();
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (i, e) in self.edges.into_iter().enumerate() {
            if let Some((mut edge, w)) = e {
                emap[i] = edges.len();
                edge.u = vmap[edge.u];
                edge.v = vmap[edge.v];
                edges.push(edge);
                weights.push(w);
            }
        }
        let rotation: Vec<Vec<usize>> = self
            .rotation
            .into_iter()
            .enumerate()
            .filter(|(i, _)| vmap[*i] != usize::MAX)
            .map(|(_, rot)| rot.into_iter().map(|e| emap[e]).collect())
            .collect();
        let g = PlanarBipartiteGraph::from_parts(self.n, vertices, edges, rotation)
            .map_err(|e| MoveError::Precondition(e.to_string()))?;
        Network::new(Arc::new(g), weights).map_err(|_| MoveError::ZeroWeight)
    }
}

fn check_vertex(g: &PlanarBipartiteGraph, v: usize) -> Result<(), MoveError> {
    if v >= g.vertices().len() {
        return Err(MoveError::NoVertex(v));
    }
    if g.is_boundary(v) {
        return Err(MoveError::Boundary(g.vertex(v).id.clone()));
    }
    Ok(())
}

fn constant(w: &MultiPoly) -> Result<Rational, MoveError> {
    w.as_constant().ok_or(MoveError::Symbolic)
}

/// Multiplies the weights at interior vertex `v` by `alpha`; the scalar is `1/alpha`.
pub fn gauge(net: &Network, v: usize, alpha: &Rational) -> Result<MoveResult, MoveError> {
    check_vertex(net.graph(), v)?;
    if alpha.is_zero() {
        return Err(MoveError::ZeroGauge);
    }
    let mut d = Draft::new(net);
    d.gauge(v, alpha);
    Ok(MoveResult { network: d.finish()?, scalar: MultiPoly::constant(alpha.recip()) })
}

/// The edge joining `x` and `y`, if there is exactly one.
fn unique_edge(g: &PlanarBipartiteGraph, x: usize, y: usize) -> Result<usize, MoveError> {
    let found: Vec<usize> = g.rotation(x).iter().copied().filter(|&e| g.edge(e).other(x) == y).collect();
    match found.as_slice() {
        [e] => Ok(*e),
        [] => Err(MoveError::Spider(format!("{} and {} are not adjacent", g.vertex(x).id, g.vertex(y).id))),
        _ => Err(MoveError::Spider(format!("{} and {} are joined by parallel edges", g.vertex(x).id, g.vertex(y).id))),
    }
}

/// Cyclic equality of two short lists.
fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

/// Replaces the two consecutive entries `x, y` (in either order) of a rotation by `z`.
fn replace_pair(rot: &mut Vec<usize>, x: usize, y: usize, z: usize) -> bool {
    let d = rot.len();
    for i in 0..d {
        let j = (i + 1) % d;
        if (rot[i] == x && rot[j] == y) || (rot[i] == y && rot[j] == x) {
            if d == 2 {
                *rot = vec![z];
            } else {
                rot[i] = z;
                rot.remove(j);
            }
            return true;
        }
    }
    false
}

/// The square move at a quadrilateral face listed as four consecutive
/// vertices of alternating color. The first black vertex in the list plays
/// the top corner: its leaf, then the left and right white corners, follow
/// counterclockwise.
pub fn spider_move(net: &Network, face: [usize; 4]) -> Result<MoveResult, MoveError> {
    let g = net.graph();
    for &v in &face {
        check_vertex(g, v)?;
    }
    if (0..4).any(|i| g.vertex(face[i]).color == g.vertex(face[(i + 1) % 4]).color) {
        return Err(MoveError::Spider("colors do not alternate around the face".into()));
    }
    let top_pos = (0..4).find(|&i| g.vertex(face[i]).color == Color::Black).expect("two black corners");
    let bt = face[top_pos];
    let bb = face[(top_pos + 2) % 4];
    let (x, y) = (face[(top_pos + 1) % 4], face[(top_pos + 3) % 4]);
    if bt == bb || x == y {
        return Err(MoveError::Spider("face corners must be distinct".into()));
    }
    let leaf = |b: usize| -> Result<(usize, usize), MoveError> {
        if g.degree(b) != 3 {
            return Err(MoveError::Spider(format!("black corner {} is not trivalent", g.vertex(b).id)));
        }
        let e = g
            .rotation(b)
            .iter()
            .copied()
            .find(|&e| {
                let o = g.edge(e).other(b);
                o != x && o != y
            })
            .ok_or_else(|| MoveError::Spider(format!("black corner {} has no leaf", g.vertex(b).id)))?;
        Ok((e, g.edge(e).other(b)))
    };
    let (leaf_t, wt) = leaf(bt)?;
    let (leaf_b, wb) = leaf(bb)?;
    for w in [wt, wb] {
        if g.is_boundary(w) {
            return Err(MoveError::Spider(format!("leaf end {} is a boundary vertex", g.vertex(w).id)));
        }
    }
    let whites = [x, y, wt, wb];
    if (0..4).any(|i| (i + 1..4).any(|j| whites[i] == whites[j])) {
        return Err(MoveError::Spider("the four white vertices around the face must be distinct".into()));
    }
    let ex = unique_edge(g, bt, x)?;
    let ey = unique_edge(g, bt, y)?;
    let (wl, wr) = if same_cycle(g.rotation(bt), &[leaf_t, ex, ey]) { (x, y) } else { (y, x) };
    let e_a = unique_edge(g, bt, wl)?;
    let e_b = unique_edge(g, bt, wr)?;
    let e_c = unique_edge(g, bb, wr)?;
    let e_d = unique_edge(g, bb, wl)?;
    if !same_cycle(g.rotation(bb), &[leaf_b, e_c, e_d]) {
        return Err(MoveError::Spider("the two black corners are embedded inconsistently".into()));
    }
    let lt = constant(net.weight(leaf_t))?;
    let lb = constant(net.weight(leaf_b))?;
    let a = constant(net.weight(e_a))? / &lt;
    let b = constant(net.weight(e_b))? / &lt;
    let c = constant(net.weight(e_c))? / &lb;
    let d = constant(net.weight(e_d))? / &lb;
    let det = &a * &c + &b * &d;
    if det.is_zero() {
        return Err(MoveError::Degenerate);
    }
    let mut dr = Draft::new(net);
    let (br, bl) = (bt, bb);
    let edge = |id: &str, u: usize, v: usize| Edge { id: id.to_string(), u, v };
    let prime = |e: usize| format!("{}'", g.edge(e).id);
    let w = |x: &Rational| MultiPoly::constant(x / &det);
    dr.edges[leaf_t] = Some((edge(&g.edge(leaf_t).id, br, wr), MultiPoly::one()));
    dr.edges[leaf_b] = Some((edge(&g.edge(leaf_b).id, bl, wl), MultiPoly::one()));
    dr.edges[e_a] = Some((edge(&prime(e_a), br, wb), w(&a)));
    dr.edges[e_b] = Some((edge(&prime(e_b), bl, wb), w(&b)));
    dr.edges[e_c] = Some((edge(&prime(e_c), bl, wt), w(&c)));
    dr.edges[e_d] = Some((edge(&prime(e_d), br, wt), w(&d)));
    for v in [br, bl] {
        let old = dr.vertices[v].as_mut().expect("live vertex");
        old.id.push('\'');
    }
    dr.rotation[br] = vec![leaf_t, e_d, e_a];
    dr.rotation[bl] = vec![e_c, leaf_b, e_b];
    let splice = |rot: &mut Vec<usize>, old: usize, new: [usize; 2]| {
        let p = rot.iter().position(|&e| e == old).expect("leaf in rotation");
        rot.splice(p..=p, new);
    };
    splice(&mut dr.rotation[wt], leaf_t, [e_c, e_d]);
    splice(&mut dr.rotation[wb], leaf_b, [e_a, e_b]);
    if !replace_pair(&mut dr.rotation[wl], e_a, e_d, leaf_b) || !replace_pair(&mut dr.rotation[wr], e_b, e_c, leaf_t)
    {
        return Err(MoveError::Spider("the square is not a face".into()));
    }
    let scalar = MultiPoly::constant(&lt * &lb * &det);
    Ok(MoveResult { network: dr.finish()?, scalar })
}

/// Removes an interior vertex of degree two, gauging its neighbours so both
/// edges have weight one and then identifying them.
pub fn remove_bivalent(net: &Network, v: usize) -> Result<MoveResult, MoveError> {
    let g = net.graph();
    check_vertex(g, v)?;
    let [e1, e2] = g.rotation(v) else {
        return Err(MoveError::Precondition(format!("vertex {} does not have degree two", g.vertex(v).id)));
    };
    let (mut e1, mut e2) = (*e1, *e2);
    let (mut u1, mut u2) = (g.edge(e1).other(v), g.edge(e2).other(v));
    if u1 == u2 {
        return Err(MoveError::Precondition("both edges lead to the same vertex".into()));
    }
    if g.is_boundary(u2) {
        std::mem::swap(&mut e1, &mut e2);
        std::mem::swap(&mut u1, &mut u2);
    }
    let w1 = constant(net.weight(e1))?;
    let w2 = constant(net.weight(e2))?;
    let mut d = Draft::new(net);
    let scalar = if g.is_boundary(u1) {
        if g.is_boundary(u2) {
            return Err(MoveError::Precondition("both neighbours are boundary vertices".into()));
        }
        if g.degree(u2) > 2 {
            return Err(MoveError::Precondition(format!(
                "{} is next to the boundary and its far neighbour has degree {} > 2",
                g.vertex(v).id,
                g.degree(u2)
            )));
        }
        d.gauge(v, &w1.recip());
        d.gauge(u2, &(&w1 / &w2));
        w2.clone()
    } else {
        d.gauge(u1, &w1.recip());
        d.gauge(u2, &w2.recip());
        &w1 * &w2
    };
    // u2's other edges, counterclockwise starting after e2, take e1's place at u1.
    let rot2 = g.rotation(u2);
    let p2 = rot2.iter().position(|&e| e == e2).expect("edge at its endpoint");
    let moved: Vec<usize> = (1..rot2.len()).map(|j| rot2[(p2 + j) % rot2.len()]).collect();
    for &e in &moved {
        let (edge, _) = d.edges[e].as_mut().expect("live edge");
        if edge.u == u2 {
            edge.u = u1;
        } else {
            edge.v = u1;
        }
    }
    let p1 = d.rotation[u1].iter().position(|&e| e == e1).expect("edge at its endpoint");
    d.rotation[u1].splice(p1..=p1, moved);
    d.rotation[u2].clear();
    d.rotation[v].clear();
    d.edges[e1] = None;
    d.edges[e2] = None;
    d.vertices[u2] = None;
    d.vertices[v] = None;
    Ok(MoveResult { network: d.finish()?, scalar: MultiPoly::constant(scalar) })
}

/// Replaces all edges between `u` and `v` by one edge carrying their total weight.
pub fn merge_parallel(net: &Network, u: usize, v: usize) -> Result<MoveResult, MoveError> {
    let g = net.graph();
    for x in [u, v] {
        if x >= g.vertices().len() {
            return Err(MoveError::NoVertex(x));
        }
    }
    let between = |x: usize, y: usize| -> Vec<usize> {
        g.rotation(x).iter().copied().filter(|&e| g.edge(e).other(x) == y).collect()
    };
    let par = between(u, v);
    if par.len() < 2 {
        return Err(MoveError::Precondition(format!(
            "{} and {} are not joined by parallel edges",
            g.vertex(u).id,
            g.vertex(v).id
        )));
    }
    for x in [u, v] {
        let rot = g.rotation(x);
        let d = rot.len();
        let inside = |i: usize| par.contains(&rot[i % d]);
        let starts = (0..d).filter(|&i| inside(i) && !inside(i + d - 1)).count();
        if d > par.len() && starts != 1 {
            return Err(MoveError::Precondition("parallel edges do not bound faces".into()));
        }
    }
    let keep = *par.iter().min().expect("nonempty");
    let total = par.iter().fold(MultiPoly::zero(), |acc, &e| acc.add(net.weight(e)));
    if total.is_zero() {
        return Err(MoveError::ZeroWeight);
    }
    let mut d = Draft::new(net);
    for &e in &par {
        if e != keep {
            d.remove_edge(e);
        }
    }
    *d.weight_mut(keep) = total;
    Ok(MoveResult { network: d.finish()?, scalar: MultiPoly::one() })
}

/// Removes an interior leaf `v`, its neighbour `u`, and every edge at `u`.
pub fn remove_leaf(net: &Network, v: usize) -> Result<MoveResult, MoveError> {
    let g = net.graph();
    check_vertex(g, v)?;
    let [e] = g.rotation(v) else {
        return Err(MoveError::Precondition(format!("vertex {} is not a leaf", g.vertex(v).id)));
    };
    let u = g.edge(*e).other(v);
    if g.is_boundary(u) {
        return Err(MoveError::Precondition("the leaf's edge is a boundary edge".into()));
    }
    let scalar = net.weight(*e).clone();
    let mut d = Draft::new(net);
    d.remove_vertex(u);
    d.remove_vertex(v);
    Ok(MoveResult { network: d.finish()?, scalar })
}

/// Removes an edge joining two interior vertices of degree one.
pub fn remove_dipole(net: &Network, e: usize) -> Result<MoveResult, MoveError> {
    let g = net.graph();
    if e >= g.edges().len() {
        return Err(MoveError::NoEdge(e));
    }
    let Edge { u, v, .. } = *g.edge(e);
    for x in [u, v] {
        check_vertex(g, x)?;
        if g.degree(x) != 1 {
            return Err(MoveError::Precondition(format!("{} has degree {}", g.vertex(x).id, g.degree(x))));
        }
    }
    let scalar = net.weight(e).clone();
    let mut d = Draft::new(net);
    d.remove_vertex(u);
    d.remove_vertex(v);
    Ok(MoveResult { network: d.finish()?, scalar })
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub scalar: MultiPoly,
    /// Subsets `I` with `X̃(N)_I ≠ scalar·X̃(N')_I`, with both sides.
    pub violations: Vec<(Vec<usize>, MultiPoly, MultiPoly)>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `X̃(N)` with `scalar·X̃(N')` entrywise.
pub fn compare_networks(n: &Network, n2: &Network, scalar: &MultiPoly) -> Result<InvarianceReport, DimerError> {
    let p = plucker_vector(n)?;
    let q = plucker_vector(n2)?;
    if p.k != q.k || p.n != q.n {
        return Err(DimerError::Shape(format!("(k, n) = ({}, {}) versus ({}, {})", p.k, p.n, q.k, q.n)));
    }
    let violations = p
        .values
        .iter()
        .filter_map(|(i, x)| {
            let y = q.get(i).mul(scalar);
            (*x != y).then(|| (i.clone(), x.clone(), y))
        })
        .collect();
    Ok(InvarianceReport { scalar: scalar.clone(), violations })
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

/// Applies the move and checks `X̃(N) = α·X̃(N')`.
pub fn verify_move_invariance(net: &Network, mv: &Move) -> Result<InvarianceReport, VerifyError> {
    let res = apply_move(net, mv)?;
    Ok(compare_networks(net, &res.network, &res.scalar)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::gallery;
    use crate::graph::Embedding;
    use crate::random;
    use std::collections::HashMap;

    fn square_at(seed: u64) -> Network {
        let mut rng = random::rng(seed);
        let net = gallery::square_network();
        let vals: HashMap<String, Rational> =
            net.variables().into_iter().map(|v| (v, random::weight(&mut rng))).collect();
        net.specialize(&vals).unwrap()
    }

    fn face(net: &Network) -> [usize; 4] {
        let g = net.graph();
        ["w_sw", "b_nw", "w_ne", "b_se"].map(|id| g.vertex_by_id(id).unwrap())
    }

    #[test]
    fn gauge_scalar() {
        let net = square_at(1);
        let v = net.graph().vertex_by_id("b_nw").unwrap();
        let res = gauge(&net, v, &int(2)).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(rat(1, 2)));
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        let same = gauge(&net, v, &int(1)).unwrap();
        assert_eq!(same.network.weights(), net.weights());
        assert!(matches!(gauge(&net, v, &int(0)), Err(MoveError::ZeroGauge)));
        let b = net.graph().boundary_vertex(1).unwrap();
        assert!(matches!(gauge(&net, b, &int(2)), Err(MoveError::Boundary(_))));
    }

    #[test]
    fn spider_unit_weights() {
        let net = gallery::square_network();
        let ones: HashMap<String, Rational> = net.variables().into_iter().map(|v| (v, int(1))).collect();
        let net = net.specialize(&ones).unwrap();
        let res = spider_move(&net, face(&net)).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(int(2)));
        let g = res.network.graph();
        for id in ["a'", "b'", "c'", "d'"] {
            assert_eq!(res.network.weight(g.edge_by_id(id).unwrap()), &MultiPoly::constant(rat(1, 2)));
        }
        assert!(g.validate().is_empty(), "{:?}", g.validate());
    }

    #[test]
    fn spider_matches_the_moved_square() {
        for seed in 0..5 {
            let net = square_at(seed);
            let res = spider_move(&net, face(&net)).unwrap();
            let report = compare_networks(&net, &res.network, &res.scalar).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
            let g = net.graph();
            let w = |id: &str| net.weight(g.edge_by_id(id).unwrap()).as_constant().unwrap();
            let det = w("a") * w("c") + w("b") * w("d");
            assert_eq!(res.scalar, MultiPoly::constant(det.clone()));
            // The same move written out by hand on the primed network.
            let moved = gallery::square_network_moved();
            let mut vals = HashMap::new();
            vals.insert("e".to_string(), w("e3"));
            vals.insert("f".to_string(), w("e6"));
            for (x, y) in [("a'", "a"), ("b'", "b"), ("c'", "c"), ("d'", "d")] {
                vals.insert(x.to_string(), w(y) / &det);
            }
            let moved = moved.specialize(&vals).unwrap();
            let report = compare_networks(&net, &moved, &res.scalar).unwrap();
            assert!(report.passed());
        }
    }

    #[test]
    fn spider_twice_is_a_gauge() {
        let net = square_at(7);
        let once = spider_move(&net, face(&net)).unwrap();
        let g = once.network.graph();
        let f2 = ["b_nw'", "w_l", "b_se'", "w_r"].map(|id| g.vertex_by_id(id).unwrap());
        let twice = spider_move(&once.network, f2).unwrap();
        let total = once.scalar.mul(&twice.scalar);
        let lt = net.weight(net.graph().edge_by_id("leaf_l").unwrap()).as_constant().unwrap();
        let lb = net.weight(net.graph().edge_by_id("leaf_r").unwrap()).as_constant().unwrap();
        assert_eq!(total, MultiPoly::constant(lt * lb));
        assert!(compare_networks(&net, &twice.network, &total).unwrap().passed());
        assert_eq!(twice.network.graph().excedance(), net.graph().excedance());
    }

    #[test]
    fn spider_rejects_bad_faces() {
        let net = square_at(2);
        let f = face(&net);
        assert!(spider_move(&net, [f[0], f[2], f[1], f[3]]).is_err());
        let sym = gallery::square_network();
        assert!(matches!(spider_move(&sym, f), Err(MoveError::Symbolic)));
    }

    /// Boundary 1 - white - black(deg 2) - white - boundary 2, plus a
    /// third boundary edge so the far white has degree three.
    fn path(weights: [i64; 5], tail: bool) -> Network {
        let mut emb = Embedding::new(if tail { 3 } else { 2 });
        let b1 = emb.boundary("1", 1, (-100, 0));
        let b2 = emb.boundary("2", 2, (100, 0));
        let w1 = emb.interior("w1", Color::White, (-50, 0));
        let x = emb.interior("x", Color::Black, (0, 0));
        let w2 = emb.interior("w2", Color::White, (50, 0));
        emb.edge("p", b1, w1);
        emb.edge("e1", w1, x);
        emb.edge("e2", x, w2);
        emb.edge("q", b2, w2);
        if tail {
            let b3 = emb.boundary("3", 3, (60, 100));
            emb.edge("t", b3, w2);
        }
        let g = Arc::new(emb.build().unwrap());
        let w = g.edges().iter().enumerate().map(|(i, _)| int(weights[i])).collect();
        Network::from_rationals(g, w).unwrap()
    }

    #[test]
    fn bivalent_removal() {
        let net = path([1, 1, 1, 1, 1], false);
        let x = net.graph().vertex_by_id("x").unwrap();
        let res = remove_bivalent(&net, x).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(int(1)));
        assert_eq!(res.network.graph().vertices().len(), 3);
        let net = path([5, 2, 3, 7, 1], true);
        let res = remove_bivalent(&net, x).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(int(6)));
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        assert!(res.network.graph().validate().is_empty(), "{:?}", res.network.graph().validate());
    }

    #[test]
    fn bivalent_next_to_boundary() {
        let net = path([1, 2, 3, 4, 5], true);
        let w1 = net.graph().vertex_by_id("w1").unwrap();
        let res = remove_bivalent(&net, w1).unwrap();
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        let w2 = net.graph().vertex_by_id("w2").unwrap();
        assert!(matches!(remove_bivalent(&net, w2), Err(MoveError::Precondition(_))));
        let g = res.network.graph();
        assert!(g.validate().is_empty());
        assert_eq!(g.degree(g.boundary_vertex(1).unwrap()), 1);
    }

    fn doubled(w1: &str, w2: &str) -> Network {
        let mut emb = Embedding::new(2);
        let b1 = emb.boundary("1", 1, (-100, 0));
        let b2 = emb.boundary("2", 2, (100, 0));
        let w = emb.interior("w", Color::White, (-50, 0));
        let x = emb.interior("x", Color::Black, (50, 0));
        let y = emb.interior("y", Color::White, (80, 0));
        emb.edge("p", b1, w);
        emb.bent_edge("e1", w, x, (0, 20));
        emb.bent_edge("e2", w, x, (0, -20));
        emb.edge("f", x, y);
        emb.edge("q", b2, y);
        let g = Arc::new(emb.build().unwrap());
        let weights = g
            .edges()
            .iter()
            .map(|e| match e.id.as_str() {
                "e1" => MultiPoly::parse(w1).unwrap(),
                "e2" => MultiPoly::parse(w2).unwrap(),
                _ => MultiPoly::one(),
            })
            .collect();
        Network::new(g, weights).unwrap()
    }

    #[test]
    fn parallel_merge() {
        let net = doubled("2", "3");
        let g = net.graph();
        let (w, x) = (g.vertex_by_id("w").unwrap(), g.vertex_by_id("x").unwrap());
        let res = merge_parallel(&net, w, x).unwrap();
        let g2 = res.network.graph();
        assert_eq!(res.network.weight(g2.edge_by_id("e1").unwrap()), &MultiPoly::constant(int(5)));
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        let net = doubled("a", "b");
        let res = merge_parallel(&net, w, x).unwrap();
        assert_eq!(res.network.weight(0).to_string(), "1");
        assert_eq!(res.network.weights().iter().filter(|p| p.to_string() == "a + b").count(), 1);
        let net = doubled("1", "-1");
        assert!(matches!(merge_parallel(&net, w, x), Err(MoveError::ZeroWeight)));
        let y = g.vertex_by_id("y").unwrap();
        assert!(merge_parallel(&net, x, y).is_err());
    }

    #[test]
    fn leaves_and_dipoles() {
        let mut emb = Embedding::new(2);
        let b1 = emb.boundary("1", 1, (-100, 0));
        let b2 = emb.boundary("2", 2, (100, 0));
        let w = emb.interior("w", Color::White, (0, 0));
        let u = emb.interior("u", Color::Black, (0, 40));
        let v = emb.interior("v", Color::White, (0, 80));
        let p = emb.interior("p", Color::White, (0, -40));
        let q = emb.interior("q", Color::Black, (0, -80));
        emb.edge("x", b1, w);
        emb.edge("y", b2, w);
        emb.edge("uw", u, w);
        emb.edge("leaf", u, v);
        emb.edge("dip", p, q);
        let g = Arc::new(emb.build().unwrap());
        let weights = g.edges().iter().enumerate().map(|(i, _)| int(i as i64 + 2)).collect();
        let net = Network::from_rationals(g.clone(), weights).unwrap();
        let res = remove_leaf(&net, g.vertex_by_id("v").unwrap()).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(int(5)));
        assert_eq!(res.network.graph().vertices().len(), 5);
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        let res = remove_dipole(&net, g.edge_by_id("dip").unwrap()).unwrap();
        assert_eq!(res.scalar, MultiPoly::constant(int(6)));
        assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
        assert!(remove_dipole(&net, g.edge_by_id("leaf").unwrap()).is_err());
        // A leaf hanging off the boundary.
        let mut emb = Embedding::new(1);
        let b = emb.boundary("1", 1, (0, 0));
        let w = emb.interior("w", Color::White, (10, 0));
        emb.edge("e", b, w);
        let net = Network::unit(Arc::new(emb.build().unwrap()));
        assert!(remove_leaf(&net, 1).is_err());
    }

    #[test]
    fn wrong_primed_weights_are_caught() {
        let net = square_at(3);
        let moved = gallery::square_network_moved();
        let vals: HashMap<String, Rational> = moved.variables().into_iter().map(|v| (v, int(1))).collect();
        let moved = moved.specialize(&vals).unwrap();
        let report = compare_networks(&net, &moved, &MultiPoly::one()).unwrap();
        assert!(!report.passed());
        assert_eq!(report.violations[0].0.len(), 2);
    }
}
