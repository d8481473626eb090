//! Tagged webs: directed webs with pair and source tags, evaluated by composing
//! wedges, shuffles, pairings and sources in the exterior algebra.

mod exterior;
mod json;

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;

pub use exterior::{pair_tag_eval, shuffle, source_tag_expand, wedge, ExteriorElement};
pub use json::{parse_tagged_web, serialize_tagged_web};

use crate::exact::{int, Rational};
use crate::graph::Color;
use crate::subsets::wedge_sign;
use crate::weblike::{bold_value_table, BoundaryLabels, LabelSpace, WeblikeSubgraph};
use exterior::{pair_sign, source_terms, splittings};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaggedError {
    #[error("grade error: {0}")]
    Grade(String),
    #[error("invalid tagged web: {0}")]
    Invalid(String),
    #[error("the tagged web has an oriented cycle")]
    Cyclic,
    #[error("boundary labels do not match the degree {expected:?}")]
    DegreeMismatch { expected: Vec<usize> },
    #[error("not a matching of the web's support: {0}")]
    Matching(String),
    #[error("the web vanishes on every basis tensor")]
    AllZero,
    #[error("sign extraction failed: {0}")]
    Incoherent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TagKind {
    Pair,
    Source,
}

/// Which side of the edge the tag sits on, looking from `u` towards `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tag {
    pub kind: TagKind,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TVertex {
    pub id: String,
    /// `None` for the bivalent vertices created by cutting cycles.
    pub color: Option<Color>,
    pub boundary: Option<usize>,
}

/// An edge from `u` to `v`. Untagged edges carry `⋀^mult_u` from `u` to `v`.
/// A pair tag consumes `⋀^mult_u` from `u` and `⋀^(r-mult_u)` from `v`; a
/// source tag emits them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TEdge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub mult_u: usize,
    pub tag: Option<Tag>,
}

impl TEdge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// `(-1)^{a(r-a)}`, the effect of moving a tag to the other side of its edge.
pub fn switch_factor(r: usize, a: usize) -> i64 {
    if (a * (r - a)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedWeb {
    r: usize,
    n: usize,
    vertices: Vec<TVertex>,
    edges: Vec<TEdge>,
    rotation: Vec<Vec<usize>>,
    lambda: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Step {
    Input { label: usize, slot: usize },
    Source { su: usize, sv: usize, terms: Vec<(u8, u8, i64)> },
    Pair { su: usize, sv: usize, side: Side },
    Wedge { inputs: Vec<usize>, output: usize },
    Shuffle { input: usize, outputs: Vec<usize>, grades: Vec<usize> },
}

/// A compiled evaluation order for a [`TaggedWeb`].
#[derive(Clone, Debug)]
pub struct Evaluator {
    r: usize,
    lambda: Vec<usize>,
    slots: usize,
    steps: Vec<Step>,
}

type State = HashMap<Vec<u8>, Rational>;

fn push(state: &mut State, key: Vec<u8>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = state.entry(key).or_insert_with(Rational::zero);
    *slot += c;
}

impl Evaluator {
    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    /// The value on `E_{S_1} ⊗ ... ⊗ E_{S_n}`.
    pub fn evaluate(&self, s: &[u8]) -> Result<Rational, TaggedError> {
        if s.len() != self.lambda.len() || s.iter().zip(&self.lambda).any(|(&m, &l)| m.count_ones() as usize != l) {
            return Err(TaggedError::DegreeMismatch { expected: self.lambda.clone() });
        }
        let inputs: Vec<ExteriorElement> = s.iter().map(|&m| ExteriorElement::from_mask(self.r, m)).collect();
        self.run(&inputs)
    }

    /// The value on an arbitrary tensor product of homogeneous elements.
    pub fn evaluate_on(&self, inputs: &[ExteriorElement]) -> Result<Rational, TaggedError> {
        if inputs.len() != self.lambda.len()
            || inputs.iter().zip(&self.lambda).any(|(x, &l)| x.grade() != l || x.r() != self.r)
        {
            return Err(TaggedError::DegreeMismatch { expected: self.lambda.clone() });
        }
        self.run(inputs)
    }

    fn run(&self, inputs: &[ExteriorElement]) -> Result<Rational, TaggedError> {
        let mut state: State = HashMap::from([(vec![0u8; self.slots], Rational::one())]);
        for step in &self.steps {
            let mut next = State::with_capacity(state.len());
            for (key, c) in state {
                match step {
                    Step::Input { label, slot } => {
                        for (m, d) in inputs[*label].terms() {
                            let mut k = key.clone();
                            k[*slot] = m;
                            push(&mut next, k, &c * d);
                        }
                    }
                    Step::Source { su, sv, terms } => {
                        for &(tu, tv, sign) in terms {
                            let mut k = key.clone();
                            k[*su] = tu;
                            k[*sv] = tv;
                            push(&mut next, k, &c * int(sign));
                        }
                    }
                    Step::Pair { su, sv, side } => {
                        let sign = pair_sign(self.r, key[*su], key[*sv], *side);
                        if sign != 0 {
                            let mut k = key;
                            k[*su] = 0;
                            k[*sv] = 0;
                            push(&mut next, k, c * int(sign));
                        }
                    }
                    Step::Wedge { inputs, output } => {
                        let mut acc = 0u8;
                        let mut sign = 1;
                        for &i in inputs {
                            sign *= wedge_sign(acc as u32, key[i] as u32);
                            acc |= key[i];
                        }
                        if sign != 0 {
                            let mut k = key;
                            for &i in inputs {
                                k[i] = 0;
                            }
                            k[*output] = acc;
                            push(&mut next, k, c * int(sign));
                        }
                    }
                    Step::Shuffle { input, outputs, grades } => {
                        for (parts, sign) in splittings(key[*input], grades) {
                            let mut k = key.clone();
                            k[*input] = 0;
                            for (&o, &t) in outputs.iter().zip(&parts) {
                                k[o] = t;
                            }
                            push(&mut next, k, &c * int(sign));
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            state = next;
        }
        Ok(state.into_values().fold(Rational::zero(), |a, b| a + b))
    }
}

/// How an edge meets a vertex: whether it carries a tensor into or out of the
/// vertex, in which slot, and of which grade.
struct End {
    slot: usize,
    grade: usize,
    outgoing: bool,
}

impl TaggedWeb {
    pub fn new(
        r: usize,
        n: usize,
        vertices: Vec<TVertex>,
        edges: Vec<TEdge>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, TaggedError> {
        if r == 0 || r > 8 {
            return Err(TaggedError::Invalid(format!("rank r={r} must lie in 1..=8")));
        }
        let mut web = TaggedWeb { r, n, vertices, edges, rotation, lambda: vec![0; n] };
        web.lambda = web.check_shape()?;
        web.evaluator()?;
        Ok(web)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[TVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TEdge] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn tag_count(&self) -> usize {
        self.edges.iter().filter(|e| e.tag.is_some()).count()
    }

    fn check_shape(&self) -> Result<Vec<usize>, TaggedError> {
        let nv = self.vertices.len();
        if self.rotation.len() != nv {
            return Err(TaggedError::Invalid("one rotation entry per vertex is required".into()));
        }
        let mut seen = vec![0usize; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                let edge = self.edges.get(e).ok_or_else(|| TaggedError::Invalid(format!("unknown edge {e}")))?;
                if edge.u != v && edge.v != v {
                    return Err(TaggedError::Invalid(format!(
                        "edge {} is listed at {} but does not touch it",
                        edge.id, self.vertices[v].id
                    )));
                }
                seen[e] += 1;
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= nv || e.v >= nv || e.u == e.v {
                return Err(TaggedError::Invalid(format!("edge {} has bad endpoints", e.id)));
            }
            if e.mult_u > self.r {
                return Err(TaggedError::Invalid(format!("edge {} carries {} > r", e.id, e.mult_u)));
            }
            if seen[i] != 2 {
                return Err(TaggedError::Invalid(format!("edge {} must appear once at each endpoint", e.id)));
            }
        }
        let mut lambda = vec![0usize; self.n];
        let mut labelled = vec![false; self.n];
        for (v, x) in self.vertices.iter().enumerate() {
            let Some(b) = x.boundary else { continue };
            if b == 0 || b > self.n || std::mem::replace(&mut labelled[b - 1], true) {
                return Err(TaggedError::Invalid(format!("boundary label {b} is out of range or repeated")));
            }
            match self.rotation[v].as_slice() {
                [] => {}
                [e] => {
                    let end = self.end(*e, v);
                    if !end.outgoing {
                        return Err(TaggedError::Invalid(format!("boundary edge {} is not a source", self.edges[*e].id)));
                    }
                    lambda[b - 1] = end.grade;
                }
                _ => return Err(TaggedError::Invalid(format!("boundary vertex {} has degree > 1", x.id))),
            }
        }
        if labelled.iter().any(|&l| !l) {
            return Err(TaggedError::Invalid("every boundary label must occur".into()));
        }
        Ok(lambda)
    }

    fn slots(&self) -> Vec<(usize, usize)> {
        let mut next = 0;
        self.edges
            .iter()
            .map(|e| {
                let s = next;
                next += if e.tag.is_some() { 2 } else { 1 };
                (s, if e.tag.is_some() { s + 1 } else { s })
            })
            .collect()
    }

    fn end(&self, e: usize, v: usize) -> End {
        let slots = self.slots()[e];
        self.end_with(e, v, slots)
    }

    fn end_with(&self, e: usize, v: usize, (su, sv): (usize, usize)) -> End {
        let edge = &self.edges[e];
        let at_u = edge.u == v;
        let slot = if at_u { su } else { sv };
        let grade = match (edge.tag, at_u) {
            (None, _) | (Some(_), true) => edge.mult_u,
            (Some(_), false) => self.r - edge.mult_u,
        };
        let outgoing = match edge.tag {
            None => at_u,
            Some(Tag { kind: TagKind::Pair, .. }) => true,
            Some(Tag { kind: TagKind::Source, .. }) => false,
        };
        End { slot, grade, outgoing }
    }

    /// Compiles the web into an evaluation order, checking vertex types, grades
    /// and acyclicity.
    pub fn evaluator(&self) -> Result<Evaluator, TaggedError> {
        let nv = self.vertices.len();
        let slots = self.slots();
        let nslots = slots.last().map_or(0, |s| s.1 + 1);
        // Nodes: vertices, then one node per tagged edge.
        let mut tag_node = vec![usize::MAX; self.edges.len()];
        let mut nodes = nv;
        for (i, e) in self.edges.iter().enumerate() {
            if e.tag.is_some() {
                tag_node[i] = nodes;
                nodes += 1;
            }
        }
        let mut succ = vec![Vec::new(); nodes];
        for (i, e) in self.edges.iter().enumerate() {
            match e.tag {
                None => succ[e.u].push(e.v),
                Some(Tag { kind: TagKind::Pair, .. }) => {
                    succ[e.u].push(tag_node[i]);
                    succ[e.v].push(tag_node[i]);
                }
                Some(Tag { kind: TagKind::Source, .. }) => {
                    succ[tag_node[i]].push(e.u);
                    succ[tag_node[i]].push(e.v);
                }
            }
        }
        let mut indeg = vec![0usize; nodes];
        for s in succ.iter().flatten() {
            indeg[*s] += 1;
        }
        let mut queue: VecDeque<usize> = (0..nodes).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(nodes);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() != nodes {
            return Err(TaggedError::Cyclic);
        }
        let edge_of_node: HashMap<usize, usize> =
            tag_node.iter().enumerate().filter(|(_, &t)| t != usize::MAX).map(|(e, &t)| (t, e)).collect();
        let mut steps = Vec::new();
        for x in order {
            if let Some(&e) = edge_of_node.get(&x) {
                let edge = &self.edges[e];
                let (su, sv) = slots[e];
                let side = edge.tag.expect("tag node").side;
                steps.push(match edge.tag.expect("tag node").kind {
                    TagKind::Pair => Step::Pair { su, sv, side },
                    TagKind::Source => Step::Source { su, sv, terms: source_terms(self.r, edge.mult_u, side) },
                });
                continue;
            }
            let vx = &self.vertices[x];
            let rot = &self.rotation[x];
            if let Some(b) = vx.boundary {
                if let [e] = rot.as_slice() {
                    steps.push(Step::Input { label: b - 1, slot: self.end_with(*e, x, slots[*e]).slot });
                }
                continue;
            }
            let ends: Vec<End> = rot.iter().map(|&e| self.end_with(e, x, slots[e])).collect();
            let outs: Vec<usize> = (0..ends.len()).filter(|&i| ends[i].outgoing).collect();
            let ins: Vec<usize> = (0..ends.len()).filter(|&i| !ends[i].outgoing).collect();
            let d = ends.len();
            let grade_in: usize = ins.iter().map(|&i| ends[i].grade).sum();
            let grade_out: usize = outs.iter().map(|&i| ends[i].grade).sum();
            if grade_in != grade_out {
                return Err(TaggedError::Grade(format!(
                    "vertex {} receives grade {grade_in} but emits {grade_out}",
                    vx.id
                )));
            }
            match (ins.len(), outs.len()) {
                (0, 0) => {}
                (_, 1) => {
                    let p = outs[0];
                    let inputs = (1..d).map(|j| ends[(p + j) % d].slot).collect();
                    steps.push(Step::Wedge { inputs, output: ends[p].slot });
                }
                (1, _) => {
                    let p = ins[0];
                    let cw: Vec<usize> = (1..d).map(|j| (p + d - j) % d).collect();
                    steps.push(Step::Shuffle {
                        input: ends[p].slot,
                        outputs: cw.iter().map(|&i| ends[i].slot).collect(),
                        grades: cw.iter().map(|&i| ends[i].grade).collect(),
                    });
                }
                (i, o) => {
                    return Err(TaggedError::Invalid(format!(
                        "vertex {} has {i} inputs and {o} outputs; it is neither a wedge nor a shuffle",
                        vx.id
                    )))
                }
            }
        }
        Ok(Evaluator { r: self.r, lambda: self.lambda.clone(), slots: nslots, steps })
    }

    pub fn evaluate(&self, s: &[u8]) -> Result<Rational, TaggedError> {
        self.evaluator()?.evaluate(s)
    }

    /// The same web with the tag on edge `e` moved to the other side.
    pub fn switch_tag(&self, e: usize) -> Result<TaggedWeb, TaggedError> {
        let mut out = self.clone();
        let edge = out.edges.get_mut(e).ok_or_else(|| TaggedError::Invalid(format!("unknown edge {e}")))?;
        let tag = edge.tag.as_mut().ok_or_else(|| TaggedError::Invalid(format!("edge {} is untagged", edge.id)))?;
        tag.side = tag.side.flip();
        Ok(out)
    }

    /// Moves the tag on edge `e` around its endpoint `v` to the neighbouring
    /// edge it points towards, reversing the direction it points around `v`.
    pub fn migrate_tag(&self, e: usize, v: usize) -> Result<TaggedWeb, TaggedError> {
        let edge = self.edges.get(e).ok_or_else(|| TaggedError::Invalid(format!("unknown edge {e}")))?.clone();
        let tag = edge.tag.ok_or_else(|| TaggedError::Invalid(format!("edge {} is untagged", edge.id)))?;
        if edge.u != v && edge.v != v {
            return Err(TaggedError::Invalid(format!("edge {} does not touch vertex {v}", edge.id)));
        }
        if self.vertices[v].boundary.is_some() {
            return Err(TaggedError::Invalid("tags migrate around interior vertices only".into()));
        }
        let rot = &self.rotation[v];
        let d = rot.len();
        if d < 2 {
            return Err(TaggedError::Invalid(format!("vertex {} has no other edge", self.vertices[v].id)));
        }
        let p = rot.iter().position(|&x| x == e).expect("rotation lists incident edges");
        // Walking from u, the left side is counterclockwise around u and clockwise around v.
        let clockwise = (tag.side == Side::Left) == (edge.v == v);
        let e2 = if clockwise { rot[(p + d - 1) % d] } else { rot[(p + 1) % d] };
        let next = &self.edges[e2];
        if next.tag.is_some() {
            return Err(TaggedError::Invalid(format!("edge {} already carries a tag", next.id)));
        }
        let far = edge.other(v);
        let far_grade = if edge.u == far { edge.mult_u } else { self.r - edge.mult_u };
        let next_in = next.v == v;
        let (plain, retagged) = match tag.kind {
            TagKind::Pair if next_in => (
                TEdge { id: edge.id.clone(), u: far, v, mult_u: far_grade, tag: None },
                TagKind::Pair,
            ),
            TagKind::Source if !next_in => (
                TEdge { id: edge.id.clone(), u: v, v: far, mult_u: far_grade, tag: None },
                TagKind::Source,
            ),
            _ => {
                return Err(TaggedError::Invalid(format!(
                    "edges {} and {} point the same way at the vertex",
                    edge.id, next.id
                )))
            }
        };
        let p_end = next.other(v);
        let new_side = if clockwise { Side::Right } else { Side::Left };
        let moved = TEdge {
            id: next.id.clone(),
            u: p_end,
            v,
            mult_u: next.mult_u,
            tag: Some(Tag { kind: retagged, side: new_side }),
        };
        let mut out = self.clone();
        out.edges[e] = plain;
        out.edges[e2] = moved;
        TaggedWeb::new(out.r, out.n, out.vertices, out.edges, out.rotation)
    }
}

/// Orients the support of `w` by the matching `pi` (white to black on matched
/// edges), puts pair tags on boundary sinks, and cuts any oriented cycles.
pub fn tag_from_matching(w: &WeblikeSubgraph, pi: &[usize]) -> Result<TaggedWeb, TaggedError> {
    let g = w.graph();
    let r = w.r();
    let mut matched = vec![false; g.edges().len()];
    let mut covered = vec![0usize; g.vertices().len()];
    for &e in pi {
        if e >= matched.len() || std::mem::replace(&mut matched[e], true) {
            return Err(TaggedError::Matching(format!("edge index {e} is invalid or repeated")));
        }
        if w.multiplicity(e) == 0 {
            return Err(TaggedError::Matching(format!("edge {} is outside the support", g.edge(e).id)));
        }
        covered[g.edge(e).u] += 1;
        covered[g.edge(e).v] += 1;
    }
    for (v, &c) in covered.iter().enumerate() {
        if c > 1 || (c == 0 && !g.is_boundary(v)) {
            return Err(TaggedError::Matching(format!("vertex {} is covered {c} times", g.vertex(v).id)));
        }
    }
    let vertices: Vec<TVertex> = g
        .vertices()
        .iter()
        .map(|x| TVertex { id: x.id.clone(), color: Some(x.color), boundary: x.boundary })
        .collect();
    let mut index = vec![usize::MAX; g.edges().len()];
    let mut edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let m = w.multiplicity(i);
        if m == 0 {
            continue;
        }
        let (white, black) = if g.vertex(e.u).color == Color::White { (e.u, e.v) } else { (e.v, e.u) };
        index[i] = edges.len();
        edges.push(if matched[i] {
            let tag = g.is_boundary(black).then_some(Tag { kind: TagKind::Pair, side: Side::Left });
            TEdge { id: e.id.clone(), u: white, v: black, mult_u: r - m, tag }
        } else {
            TEdge { id: e.id.clone(), u: black, v: white, mult_u: m, tag: None }
        });
    }
    let rotation: Vec<Vec<usize>> = g
        .rotations()
        .iter()
        .map(|rot| rot.iter().filter(|&&e| index[e] != usize::MAX).map(|&e| index[e]).collect())
        .collect();
    let mut web = TaggedWeb { r, n: g.n(), vertices, edges, rotation, lambda: Vec::new() };
    while let Some(e) = find_cycle_edge(&web) {
        cap_cup(&mut web, e);
    }
    TaggedWeb::new(web.r, web.n, web.vertices, web.edges, web.rotation)
}

/// The smallest-index edge on some oriented cycle of untagged edges.
fn find_cycle_edge(web: &TaggedWeb) -> Option<usize> {
    let nv = web.vertices.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in web.edges.iter().enumerate() {
        if e.tag.is_none() {
            out[e.u].push(i);
        }
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; nv];
    let mut via = vec![usize::MAX; nv];
    for root in 0..nv {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (x, ref mut k)) = stack.last_mut() {
            if *k == out[x].len() {
                state[x] = 2;
                stack.pop();
                continue;
            }
            let e = out[x][*k];
            *k += 1;
            let y = web.edges[e].v;
            match state[y] {
                0 => {
                    state[y] = 1;
                    via[y] = e;
                    stack.push((y, 0));
                }
                1 => {
                    let mut cycle = vec![e];
                    let mut z = x;
                    while z != y {
                        cycle.push(via[z]);
                        z = web.edges[via[z]].u;
                    }
                    return cycle.into_iter().min();
                }
                _ => {}
            }
        }
    }
    None
}

/// Replaces `u -> v` by a pair tag fed from `u` and a source tag feeding `v`,
/// joined through a new bivalent vertex.
fn cap_cup(web: &mut TaggedWeb, e: usize) {
    let old = web.edges[e].clone();
    let x = web.vertices.len();
    web.vertices.push(TVertex { id: format!("{}_cut", old.id), color: None, boundary: None });
    let e2 = web.edges.len();
    web.edges[e] = TEdge {
        id: format!("{}_cap", old.id),
        u: old.u,
        v: x,
        mult_u: old.mult_u,
        tag: Some(Tag { kind: TagKind::Pair, side: Side::Left }),
    };
    web.edges.push(TEdge {
        id: format!("{}_cup", old.id),
        u: x,
        v: old.v,
        mult_u: web.r - old.mult_u,
        tag: Some(Tag { kind: TagKind::Source, side: Side::Left }),
    });
    for slot in web.rotation[old.v].iter_mut() {
        if *slot == e {
            *slot = e2;
        }
    }
    web.rotation.push(vec![e, e2]);
}

/// `sign(S)·Ŵ(E_S)/a(S;W)` at the first `S` with `a(S;W) > 0`.
pub fn extract_sign(w: &WeblikeSubgraph, web: &TaggedWeb) -> Result<i64, TaggedError> {
    let space = LabelSpace::new(w.r(), w.lambda()).map_err(|e| TaggedError::Grade(e.to_string()))?;
    let table = bold_value_table(w, &space);
    let ev = web.evaluator()?;
    let (i, bold) = table.values().iter().enumerate().find(|(_, v)| **v != 0).ok_or(TaggedError::AllZero)?;
    let value = ev.evaluate(&space.labels()[i])?;
    let ratio = value / int(*bold);
    if ratio == int(1) {
        Ok(1)
    } else if ratio == int(-1) {
        Ok(-1)
    } else {
        Err(TaggedError::Incoherent(format!("ratio {ratio} at {:?}", space.labels()[i])))
    }
}

#[derive(Clone, Debug)]
pub struct CoherenceReport {
    pub sign: i64,
    pub checked: usize,
    /// `(S, expected, evaluated)` for every label where the two disagree.
    pub failures: Vec<(BoundaryLabels, Rational, Rational)>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the tagged evaluation with `sign(S)·sign(W,O)·a(S;W)` on every basis label.
pub fn coherence_check(w: &WeblikeSubgraph, web: &TaggedWeb) -> Result<CoherenceReport, TaggedError> {
    let sign = extract_sign(w, web)?;
    let space = LabelSpace::new(w.r(), w.lambda()).map_err(|e| TaggedError::Grade(e.to_string()))?;
    let table = bold_value_table(w, &space);
    let ev = web.evaluator()?;
    let failures: Result<Vec<_>, TaggedError> = space
        .labels()
        .par_iter()
        .zip(table.values().par_iter())
        .filter_map(|(s, &bold)| {
            let expected = int(sign * bold);
            match ev.evaluate(s) {
                Ok(got) if got == expected => None,
                Ok(got) => Some(Ok((s.clone(), expected, got))),
                Err(e) => Some(Err(e)),
            }
        })
        .collect();
    Ok(CoherenceReport { sign, checked: space.len(), failures: failures? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::enumerate_matchings;
    use crate::gallery;
    use crate::graph::top_cell_graph;
    use crate::weblike::enumerate_weblike;
    use std::sync::Arc;

    fn labels(colors: &[usize]) -> Vec<u8> {
        colors.iter().map(|c| 1u8 << (c - 1)).collect()
    }

    #[test]
    fn sl4_example() {
        let w = gallery::sl4_weblike();
        let web = tag_from_matching(&w, &gallery::sl4_matching()).unwrap();
        assert_eq!(web.tag_count(), 2);
        for id in ["e6", "e8"] {
            assert_eq!(web.edges()[web.edge_by_id(id).unwrap()].tag.unwrap().kind, TagKind::Pair);
        }
        let s = labels(&[1, 2, 3, 4, 3, 2, 1, 4]);
        assert_eq!(web.evaluate(&s).unwrap(), int(-1));
        assert_eq!(extract_sign(&w, &web).unwrap(), 1);
        let report = coherence_check(&w, &web).unwrap();
        assert_eq!(report.checked, 2520);
        assert!(report.passed(), "{:?}", &report.failures[..report.failures.len().min(3)]);
    }

    #[test]
    fn color_conservation() {
        let w = gallery::sl4_weblike();
        let web = tag_from_matching(&w, &gallery::sl4_matching()).unwrap();
        assert_eq!(web.evaluate(&labels(&[1, 1, 3, 4, 3, 2, 1, 4])).unwrap(), int(0));
        assert!(matches!(web.evaluate(&[1, 2]), Err(TaggedError::DegreeMismatch { .. })));
    }

    fn single_pair(side: Side) -> TaggedWeb {
        let vertices = vec![
            TVertex { id: "1".into(), color: Some(Color::Black), boundary: Some(1) },
            TVertex { id: "2".into(), color: Some(Color::Black), boundary: Some(2) },
        ];
        let edges = vec![TEdge { id: "e".into(), u: 0, v: 1, mult_u: 1, tag: Some(Tag { kind: TagKind::Pair, side }) }];
        TaggedWeb::new(2, 2, vertices, edges, vec![vec![0], vec![0]]).unwrap()
    }

    #[test]
    fn single_pair_tag() {
        assert_eq!(single_pair(Side::Left).evaluate(&[0b01, 0b10]).unwrap(), int(1));
        assert_eq!(single_pair(Side::Right).evaluate(&[0b01, 0b10]).unwrap(), int(-1));
    }

    #[test]
    fn coherence_on_small_graphs() {
        let g = Arc::new(top_cell_graph(3, 6).unwrap());
        let subs = enumerate_weblike(&g, 2, &[1; 6]).unwrap();
        assert!(!subs.is_empty());
        let matchings = enumerate_matchings(&g);
        let mut tested = 0;
        for w in &subs {
            for m in &matchings {
                if m.edges.iter().all(|&e| w.multiplicity(e) > 0) {
                    let web = tag_from_matching(w, &m.edges).unwrap();
                    let report = coherence_check(w, &web).unwrap();
                    assert!(report.passed());
                    tested += 1;
                }
            }
        }
        assert!(tested >= subs.len());
    }

    #[test]
    fn coherence_on_the_square() {
        let net = gallery::square_network();
        let g = net.graph_arc().clone();
        let matchings = enumerate_matchings(&g);
        for w in enumerate_weblike(&g, 3, &[1; 6]).unwrap() {
            let mut signs = Vec::new();
            for m in matchings.iter().filter(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)) {
                let web = tag_from_matching(&w, &m.edges).unwrap();
                let report = coherence_check(&w, &web).unwrap();
                assert!(report.passed());
                signs.push(report.sign);
            }
            assert!(!signs.is_empty());
        }
    }

    #[test]
    fn switching_and_migrating() {
        let w = gallery::sl4_weblike();
        let web = tag_from_matching(&w, &gallery::sl4_matching()).unwrap();
        let space = LabelSpace::new(4, w.lambda()).unwrap();
        let ev = web.evaluator().unwrap();
        let base: Vec<Rational> = space.labels().iter().map(|s| ev.evaluate(s).unwrap()).collect();
        for (e, edge) in web.edges().iter().enumerate() {
            let Some(_) = edge.tag else { continue };
            let factor = int(switch_factor(4, edge.mult_u));
            let switched = web.switch_tag(e).unwrap().evaluator().unwrap();
            for (s, b) in space.labels().iter().zip(&base) {
                assert_eq!(switched.evaluate(s).unwrap(), b * &factor);
            }
        }
        let e = web.edge_by_id("e8").unwrap();
        let v = web.vertex_by_id("w_east").unwrap();
        let moved = web.migrate_tag(e, v).unwrap();
        assert!(moved.edges()[e].tag.is_none());
        let ev2 = moved.evaluator().unwrap();
        for (s, b) in space.labels().iter().zip(&base) {
            assert_eq!(&ev2.evaluate(s).unwrap(), b);
        }
    }

    #[test]
    fn cycles_are_cut() {
        let net = gallery::square_network();
        let g = net.graph_arc().clone();
        let matchings = enumerate_matchings(&g);
        let mut cut = 0;
        for w in enumerate_weblike(&g, 3, &[1; 6]).unwrap() {
            for m in matchings.iter().filter(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)) {
                let web = tag_from_matching(&w, &m.edges).unwrap();
                let extra = web.vertices().iter().filter(|v| v.color.is_none()).count();
                assert!(extra <= 1);
                if extra == 1 {
                    assert_eq!(web.tag_count(), 4);
                    assert!(coherence_check(&w, &web).unwrap().passed());
                    cut += 1;
                }
            }
        }
        assert!(cut > 0);
    }
}
