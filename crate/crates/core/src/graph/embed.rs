use std::cmp::Ordering;

use super::{Color, Edge, GraphError, PlanarBipartiteGraph, Vertex};

/// Builds a [`PlanarBipartiteGraph`] from integer coordinates, deriving the
/// rotation system by sorting incident edges counterclockwise by direction.
///
/// An edge may carry a bend point; its direction at both ends is then taken
/// towards the bend, which lets parallel edges leave a vertex at distinct angles.
#[derive(Clone, Debug, Default)]
pub struct Embedding {
    n: usize,
    vertices: Vec<Vertex>,
    coords: Vec<(i64, i64)>,
    edges: Vec<Edge>,
    bends: Vec<Option<(i64, i64)>>,
}

/// Exact counterclockwise angle comparison of nonzero integer vectors,
/// starting from the positive x-axis.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

impl Embedding {
    pub fn new(n: usize) -> Self {
        Embedding { n, ..Default::default() }
    }

    pub fn boundary(&mut self, id: &str, label: usize, at: (i64, i64)) -> usize {
        self.push(id, Color::Black, Some(label), at)
    }

    pub fn interior(&mut self, id: &str, color: Color, at: (i64, i64)) -> usize {
        self.push(id, color, None, at)
    }

    fn push(&mut self, id: &str, color: Color, boundary: Option<usize>, at: (i64, i64)) -> usize {
        self.vertices.push(Vertex { id: id.to_string(), color, boundary });
        self.coords.push(at);
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, id: &str, u: usize, v: usize) -> usize {
        self.edges.push(Edge { id: id.to_string(), u, v });
        self.bends.push(None);
        self.edges.len() - 1
    }

    pub fn bent_edge(&mut self, id: &str, u: usize, v: usize, via: (i64, i64)) -> usize {
        let e = self.edge(id, u, v);
        self.bends[e] = Some(via);
        e
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn build(&self) -> Result<PlanarBipartiteGraph, GraphError> {
        let mut incident: Vec<Vec<(usize, (i64, i64))>> = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                let target = self.bends[i].unwrap_or(self.coords[y]);
                let d = (target.0 - self.coords[x].0, target.1 - self.coords[x].1);
                if d == (0, 0) {
                    return Err(GraphError::Invalid(format!("edge {} has zero length", e.id)));
                }
                incident[x].push((i, d));
            }
        }
        let rotation = incident
            .into_iter()
            .map(|mut list| {
                list.sort_by(|a, b| angle_cmp(a.1, b.1).then(a.0.cmp(&b.0)));
                list.into_iter().map(|(e, _)| e).collect()
            })
            .collect();
        PlanarBipartiteGraph::from_parts(self.n, self.vertices.clone(), self.edges.clone(), rotation)
    }
}
