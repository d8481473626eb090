//! Planar bipartite graphs in the disk and weighted networks.

mod embed;
pub(crate) mod json;
mod topcell;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::exact::{MultiPoly, Rational, Ring};

pub use embed::Embedding;
pub use json::{parse_network, serialize_network, JsonError};
pub use topcell::top_cell_graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
    /// Boundary label in `1..=n`, or `None` for interior vertices.
    pub boundary: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("edge `{edge}` refers to a missing vertex")]
    MissingVertex { edge: String },
    #[error("rotation table has {got} entries for {expected} vertices")]
    RotationShape { got: usize, expected: usize },
    #[error("rotation of vertex `{vertex}` names a missing edge")]
    RotationEdge { vertex: String },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("graph is invalid: {0}")]
    Invalid(String),
}

/// One violated structural requirement, naming the offending item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonBipartiteEdge { edge: String },
    WhiteBoundaryVertex { vertex: String },
    BoundaryDegree { vertex: String, degree: usize },
    BoundaryLabels { detail: String },
    Rotation { vertex: String, detail: String },
    NonPlanar { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonBipartiteEdge { edge } => write!(f, "edge {edge} joins two vertices of the same color"),
            Violation::WhiteBoundaryVertex { vertex } => write!(f, "boundary vertex {vertex} is white"),
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary vertex {vertex} has degree {degree} > 1")
            }
            Violation::BoundaryLabels { detail } => write!(f, "boundary labels: {detail}"),
            Violation::Rotation { vertex, detail } => write!(f, "rotation at {vertex}: {detail}"),
            Violation::NonPlanar { detail } => write!(f, "rotation system is not planar: {detail}"),
        }
    }
}

/// A bipartite graph embedded in the disk, recorded by a rotation system
/// (counterclockwise edge order at every vertex) and boundary labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarBipartiteGraph {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    boundary_vertex: Vec<Option<usize>>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PlanarBipartiteGraph {
    /// Assembles a graph, checking only referential integrity. Use
    /// [`PlanarBipartiteGraph::validate`] for the structural invariants.
    pub fn from_parts(
        n: usize,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId { kind: "vertex", id: v.id.clone() });
            }
        }
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId { kind: "edge", id: e.id.clone() });
            }
            if e.u >= vertices.len() || e.v >= vertices.len() {
                return Err(GraphError::MissingVertex { edge: e.id.clone() });
            }
        }
        if rotation.len() != vertices.len() {
            return Err(GraphError::RotationShape { got: rotation.len(), expected: vertices.len() });
        }
        for (i, rot) in rotation.iter().enumerate() {
            if rot.iter().any(|&e| e >= edges.len()) {
                return Err(GraphError::RotationEdge { vertex: vertices[i].id.clone() });
            }
        }
        let mut boundary_vertex = vec![None; n];
        for (i, v) in vertices.iter().enumerate() {
            if let Some(b) = v.boundary {
                if (1..=n).contains(&b) && boundary_vertex[b - 1].is_none() {
                    boundary_vertex[b - 1] = Some(i);
                }
            }
        }
        Ok(PlanarBipartiteGraph {
            n,
            vertices,
            edges,
            rotation,
            boundary_vertex,
            vertex_index,
            edge_index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Counterclockwise cyclic order of the edges at vertex `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.vertices[v].boundary.is_some()
    }

    /// Vertex index of boundary vertex `label` (1-based).
    pub fn boundary_vertex(&self, label: usize) -> Option<usize> {
        self.boundary_vertex.get(label.wrapping_sub(1)).copied().flatten()
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// The edge incident to boundary vertex `label`, if any.
    pub fn boundary_edge(&self, label: usize) -> Option<usize> {
        self.boundary_vertex(label)
            .and_then(|v| self.rotation[v].first().copied())
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&v| !self.is_boundary(v))
    }

    /// Number of interior white vertices minus number of interior black vertices.
    pub fn excedance(&self) -> i64 {
        self.vertices
            .iter()
            .filter(|v| v.boundary.is_none())
            .map(|v| match v.color {
                Color::White => 1,
                Color::Black => -1,
            })
            .sum()
    }

    /// Every violated invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.edges {
            if self.vertices[e.u].color == self.vertices[e.v].color {
                out.push(Violation::NonBipartiteEdge { edge: e.id.clone() });
            }
        }
        let mut seen = vec![0usize; self.n];
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(b) = v.boundary {
                if v.color == Color::White {
                    out.push(Violation::WhiteBoundaryVertex { vertex: v.id.clone() });
                }
                if self.rotation[i].len() > 1 {
                    out.push(Violation::BoundaryDegree { vertex: v.id.clone(), degree: self.rotation[i].len() });
                }
                if (1..=self.n).contains(&b) {
                    seen[b - 1] += 1;
                } else {
                    out.push(Violation::BoundaryLabels {
                        detail: format!("vertex {} has label {b} outside 1..={}", v.id, self.n),
                    });
                }
            }
        }
        for (i, c) in seen.iter().enumerate() {
            if *c != 1 {
                out.push(Violation::BoundaryLabels {
                    detail: format!("label {} is used {c} times", i + 1),
                });
            }
        }
        let mut rotation_ok = true;
        for (vi, rot) in self.rotation.iter().enumerate() {
            let mut expected: Vec<usize> = self
                .edges
                .iter()
                .enumerate()
                .flat_map(|(ei, e)| {
                    let mut v = Vec::new();
                    if e.u == vi {
                        v.push(ei);
                    }
                    if e.v == vi {
                        v.push(ei);
                    }
                    v
                })
                .collect();
            let mut got = rot.clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                rotation_ok = false;
                out.push(Violation::Rotation {
                    vertex: self.vertices[vi].id.clone(),
                    detail: "does not list each incident edge exactly once".into(),
                });
            }
        }
        if rotation_ok && out.is_empty() {
            if let Err(detail) = self.euler_check() {
                out.push(Violation::NonPlanar { detail });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Checks `V - E + F = 2` on every component of the graph augmented by the
    /// boundary circle, with faces traced from the rotation system.
    pub fn euler_check(&self) -> Result<(), String> {
        let nv = self.vertices.len();
        let mut ends: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let mut rot = self.rotation.clone();
        if self.n >= 2 {
            let base = ends.len();
            for i in 0..self.n {
                let a = self.boundary_vertex[i].ok_or("missing boundary vertex")?;
                let b = self.boundary_vertex[(i + 1) % self.n].ok_or("missing boundary vertex")?;
                ends.push((a, b));
            }
            for i in 0..self.n {
                let v = self.boundary_vertex[i].unwrap();
                let next = base + i;
                let prev = base + (i + self.n - 1) % self.n;
                let mut r = vec![next];
                r.extend(self.rotation[v].iter().copied());
                r.push(prev);
                rot[v] = r;
            }
        }
        let ne = ends.len();
        // position of each dart's edge in the rotation of its head
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, r) in rot.iter().enumerate() {
            for (i, &e) in r.iter().enumerate() {
                pos.insert((v, e), i);
            }
        }
        let head = |d: usize| if d.is_multiple_of(2) { ends[d / 2].1 } else { ends[d / 2].0 };
        let mut visited = vec![false; 2 * ne];
        let mut face_of_dart = vec![usize::MAX; 2 * ne];
        let mut faces = 0usize;
        for start in 0..2 * ne {
            if visited[start] {
                continue;
            }
            let mut d = start;
            while !visited[d] {
                visited[d] = true;
                face_of_dart[d] = faces;
                let v = head(d);
                let e = d / 2;
                let i = *pos.get(&(v, e)).ok_or("dart without rotation slot")?;
                let r = &rot[v];
                let e2 = r[(i + 1) % r.len()];
                let (a, _) = ends[e2];
                d = if a == v { 2 * e2 } else { 2 * e2 + 1 };
            }
            faces += 1;
        }
        // connected components over the augmented edges
        let mut comp = vec![usize::MAX; nv];
        let mut ncomp = 0;
        let mut adj = vec![Vec::new(); nv];
        for &(a, b) in &ends {
            adj[a].push(b);
            adj[b].push(a);
        }
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = ncomp;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = ncomp;
                        stack.push(y);
                    }
                }
            }
            ncomp += 1;
        }
        let mut v_count = vec![0i64; ncomp];
        let mut e_count = vec![0i64; ncomp];
        let mut f_sets: Vec<HashSet<usize>> = vec![HashSet::new(); ncomp];
        for v in 0..nv {
            v_count[comp[v]] += 1;
        }
        for (i, &(a, _)) in ends.iter().enumerate() {
            e_count[comp[a]] += 1;
            f_sets[comp[a]].insert(face_of_dart[2 * i]);
            f_sets[comp[a]].insert(face_of_dart[2 * i + 1]);
        }
        for c in 0..ncomp {
            let f = if e_count[c] == 0 { 1 } else { f_sets[c].len() as i64 };
            let chi = v_count[c] - e_count[c] + f;
            if chi != 2 {
                return Err(format!("a component has Euler characteristic {chi}"));
            }
        }
        Ok(())
    }

    /// The graph restricted to a subset of its edges (all vertices kept).
    pub fn edge_subgraph(&self, keep: &[bool]) -> PlanarBipartiteGraph {
        let mut new_index = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep[i] {
                new_index[i] = edges.len();
                edges.push(e.clone());
            }
        }
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().filter(|&&e| keep[e]).map(|&e| new_index[e]).collect())
            .collect();
        PlanarBipartiteGraph::from_parts(self.n, self.vertices.clone(), edges, rotation)
            .expect("subgraph of a consistent graph is consistent")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("edge `{0}` has zero weight")]
    ZeroWeight(String),
    #[error("weights are not all constants")]
    Symbolic,
}

/// A planar bipartite graph with a nonzero weight on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    graph: Arc<PlanarBipartiteGraph>,
    weights: Vec<MultiPoly>,
}

impl Network {
    pub fn new(graph: Arc<PlanarBipartiteGraph>, weights: Vec<MultiPoly>) -> Result<Self, NetworkError> {
        if weights.len() != graph.edges().len() {
            return Err(NetworkError::WeightCount { expected: graph.edges().len(), got: weights.len() });
        }
        if let Some(i) = weights.iter().position(MultiPoly::is_zero) {
            return Err(NetworkError::ZeroWeight(graph.edge(i).id.clone()));
        }
        Ok(Network { graph, weights })
    }

    pub fn from_rationals(graph: Arc<PlanarBipartiteGraph>, weights: Vec<Rational>) -> Result<Self, NetworkError> {
        Network::new(graph, weights.into_iter().map(MultiPoly::constant).collect())
    }

    /// Every edge weighted by one.
    pub fn unit(graph: Arc<PlanarBipartiteGraph>) -> Self {
        let m = graph.edges().len();
        Network { graph, weights: vec![MultiPoly::one(); m] }
    }

    pub fn graph(&self) -> &PlanarBipartiteGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<PlanarBipartiteGraph> {
        &self.graph
    }

    pub fn weights(&self) -> &[MultiPoly] {
        &self.weights
    }

    pub fn weight(&self, e: usize) -> &MultiPoly {
        &self.weights[e]
    }

    /// Weights as rationals when every weight is constant.
    pub fn rational_weights(&self) -> Option<Vec<Rational>> {
        self.weights.iter().map(MultiPoly::as_constant).collect()
    }

    /// Substitutes rational values for all variables.
    pub fn specialize(&self, assignment: &HashMap<String, Rational>) -> Result<Network, crate::exact::ExactError> {
        let weights = self
            .weights
            .iter()
            .map(|w| w.eval(assignment).map(MultiPoly::constant))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Network { graph: self.graph.clone(), weights })
    }

    pub fn variables(&self) -> Vec<String> {
        let mut set = std::collections::BTreeSet::new();
        for w in &self.weights {
            set.extend(w.variables());
        }
        set.into_iter().collect()
    }

    /// Weights as an arbitrary ring, when convertible.
    pub fn weights_as<V: Ring + From<Rational>>(&self) -> Option<Vec<V>> {
        self.rational_weights()
            .map(|w| w.into_iter().map(V::from).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> PlanarBipartiteGraph {
        let vertices = vec![
            Vertex { id: "b1".into(), color: Color::Black, boundary: Some(1) },
            Vertex { id: "w".into(), color: Color::White, boundary: None },
        ];
        let edges = vec![Edge { id: "e".into(), u: 0, v: 1 }];
        PlanarBipartiteGraph::from_parts(1, vertices, edges, vec![vec![0], vec![0]]).unwrap()
    }

    #[test]
    fn single_edge_is_valid() {
        let g = single_edge();
        assert!(g.validate().is_empty());
        assert_eq!(g.excedance(), 1);
    }

    #[test]
    fn same_color_edge_is_reported() {
        let vertices = vec![
            Vertex { id: "b1".into(), color: Color::Black, boundary: Some(1) },
            Vertex { id: "x".into(), color: Color::Black, boundary: None },
        ];
        let edges = vec![Edge { id: "e".into(), u: 0, v: 1 }];
        let g = PlanarBipartiteGraph::from_parts(1, vertices, edges, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(g.validate(), vec![Violation::NonBipartiteEdge { edge: "e".into() }]);
    }

    #[test]
    fn boundary_degree_is_reported() {
        let vertices = vec![
            Vertex { id: "b1".into(), color: Color::Black, boundary: Some(1) },
            Vertex { id: "w1".into(), color: Color::White, boundary: None },
            Vertex { id: "w2".into(), color: Color::White, boundary: None },
        ];
        let edges = vec![
            Edge { id: "e1".into(), u: 0, v: 1 },
            Edge { id: "e2".into(), u: 0, v: 2 },
        ];
        let g = PlanarBipartiteGraph::from_parts(1, vertices, edges, vec![vec![0, 1], vec![0], vec![1]]).unwrap();
        assert!(g
            .validate()
            .contains(&Violation::BoundaryDegree { vertex: "b1".into(), degree: 2 }));
    }

    #[test]
    fn nonplanar_rotation_is_detected() {
        // Reversing the cyclic order at one trivalent vertex breaks planarity.
        let mut emb = Embedding::new(2);
        let b1 = emb.boundary("b1", 1, (-4, 0));
        let b2 = emb.boundary("b2", 2, (4, 0));
        let w1 = emb.interior("w1", Color::White, (-2, 0));
        let w2 = emb.interior("w2", Color::White, (2, 0));
        let x = emb.interior("x", Color::Black, (0, 1));
        let y = emb.interior("y", Color::Black, (0, -1));
        emb.edge("e1", b1, w1);
        emb.edge("e2", b2, w2);
        emb.edge("e3", x, w1);
        emb.edge("e4", x, w2);
        emb.edge("e5", y, w1);
        emb.edge("e6", y, w2);
        let g = emb.build().unwrap();
        assert!(g.validate().is_empty());
        let mut rot = g.rotations().to_vec();
        let w1i = g.vertex_by_id("w1").unwrap();
        rot[w1i].swap(0, 1);
        let twisted =
            PlanarBipartiteGraph::from_parts(2, g.vertices().to_vec(), g.edges().to_vec(), rot).unwrap();
        assert!(matches!(twisted.validate().as_slice(), [Violation::NonPlanar { .. }]));
    }
}
