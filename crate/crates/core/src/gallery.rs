//! Small networks and webs used throughout the tests and the CLI suite.

use std::sync::Arc;

use crate::exact::MultiPoly;
use crate::graph::{Color, Embedding, Network, PlanarBipartiteGraph};
use crate::weblike::WeblikeSubgraph;

/// Integer point at `deg` degrees on a circle of radius `radius`.
pub fn polar(deg: f64, radius: f64) -> (i64, i64) {
    let t = deg.to_radians();
    ((radius * t.cos()).round() as i64, (radius * t.sin()).round() as i64)
}

fn weighted(g: PlanarBipartiteGraph, named: &[(&str, &str)]) -> Network {
    let weights = g
        .edges()
        .iter()
        .map(|e| {
            named
                .iter()
                .find(|(id, _)| *id == e.id)
                .map_or_else(MultiPoly::one, |(_, w)| MultiPoly::parse(w).expect("gallery weights parse"))
        })
        .collect();
    Network::new(Arc::new(g), weights).expect("gallery weights are nonzero")
}

/// The square network `N`: a square `a, b, c, d` whose two black corners carry
/// leaves to trivalent white vertices with boundary edges weighted `e` and `f`.
pub fn square_network() -> Network {
    let mut emb = Embedding::new(6);
    let w00 = emb.interior("w_sw", Color::White, (0, 0));
    let b02 = emb.interior("b_nw", Color::Black, (0, 20));
    let w22 = emb.interior("w_ne", Color::White, (20, 20));
    let b20 = emb.interior("b_se", Color::Black, (20, 0));
    let wl = emb.interior("w_l", Color::White, (-5, 25));
    let wr = emb.interior("w_r", Color::White, (25, -5));
    let b: Vec<usize> = [(31, 31), (-8, 34), (-16, 25), (-11, -11), (28, -14), (36, -5)]
        .iter()
        .enumerate()
        .map(|(i, &p)| emb.boundary(&format!("{}", i + 1), i + 1, p))
        .collect();
    emb.edge("a", w00, b02);
    emb.edge("b", b02, w22);
    emb.edge("c", w22, b20);
    emb.edge("d", b20, w00);
    emb.edge("leaf_l", b02, wl);
    emb.edge("leaf_r", b20, wr);
    emb.edge("e1", b[0], w22);
    emb.edge("e2", b[1], wl);
    emb.edge("e3", b[2], wl);
    emb.edge("e4", b[3], w00);
    emb.edge("e5", b[4], wr);
    emb.edge("e6", b[5], wr);
    let g = emb.build().expect("square network builds");
    weighted(g, &[("a", "a"), ("b", "b"), ("c", "c"), ("d", "d"), ("e3", "e"), ("e6", "f")])
}

/// The network `N'` obtained from [`square_network`] by the spider move, with
/// symbolic primed weights `a', b', c', d'`.
pub fn square_network_moved() -> Network {
    let mut emb = Embedding::new(6);
    let b00 = emb.interior("b_sw", Color::Black, (0, 0));
    let w02 = emb.interior("w_nw", Color::White, (0, 20));
    let b22 = emb.interior("b_ne", Color::Black, (20, 20));
    let w20 = emb.interior("w_se", Color::White, (20, 0));
    let wne = emb.interior("w_ne", Color::White, (26, 26));
    let wsw = emb.interior("w_sw", Color::White, (-6, -6));
    let b: Vec<usize> = [(31, 31), (-8, 34), (-16, 25), (-11, -11), (28, -14), (36, -5)]
        .iter()
        .enumerate()
        .map(|(i, &p)| emb.boundary(&format!("{}", i + 1), i + 1, p))
        .collect();
    emb.edge("c'", b00, w02);
    emb.edge("d'", w02, b22);
    emb.edge("a'", b22, w20);
    emb.edge("b'", w20, b00);
    emb.edge("leaf_ne", b22, wne);
    emb.edge("leaf_sw", b00, wsw);
    emb.edge("e1", b[0], wne);
    emb.edge("e2", b[1], w02);
    emb.edge("e3", b[2], w02);
    emb.edge("e4", b[3], wsw);
    emb.edge("e5", b[4], w20);
    emb.edge("e6", b[5], w20);
    let g = emb.build().expect("moved square network builds");
    weighted(g, &[("a'", "a'"), ("b'", "b'"), ("c'", "c'"), ("d'", "d'"), ("e3", "e"), ("e6", "f")])
}

/// The SL4 example graph: one black vertex joined to three white vertices that
/// carry boundary edges `{7, 8}`, `{1, 2, 3}` and `{4, 5, 6}`.
pub fn sl4_graph() -> Arc<PlanarBipartiteGraph> {
    let mut emb = Embedding::new(8);
    let angles = [100.0, 145.0, 190.0, 235.0, 280.0, 325.0, 5.0, 50.0];
    let b: Vec<usize> = angles
        .iter()
        .enumerate()
        .map(|(i, &t)| emb.boundary(&format!("{}", i + 1), i + 1, polar(t, 200.0)))
        .collect();
    let center = emb.interior("x", Color::Black, (0, 0));
    let w15 = emb.interior("w_east", Color::White, polar(15.0, 100.0));
    let w135 = emb.interior("w_west", Color::White, polar(135.0, 100.0));
    let w250 = emb.interior("w_south", Color::White, polar(250.0, 100.0));
    emb.edge("x_east", center, w15);
    emb.edge("x_west", center, w135);
    emb.edge("x_south", center, w250);
    for (i, w) in [(0, w135), (1, w135), (2, w135), (3, w250), (4, w250), (5, w250), (6, w15), (7, w15)] {
        emb.edge(&format!("e{}", i + 1), b[i], w);
    }
    Arc::new(emb.build().expect("SL4 example graph builds"))
}

/// The 4-weblike subgraph of [`sl4_graph`]: the edge from the black vertex to
/// the eastern white vertex has multiplicity 2, all others 1.
pub fn sl4_weblike() -> WeblikeSubgraph {
    let g = sl4_graph();
    let mult = g.edges().iter().map(|e| if e.id == "x_east" { 2 } else { 1 }).collect();
    WeblikeSubgraph::new(g, 4, mult).expect("SL4 example is weblike")
}

/// The matching orienting [`sl4_graph`] as in the worked evaluation:
/// eastern white to boundary 8, western white to the center, southern white to boundary 6.
pub fn sl4_matching() -> Vec<usize> {
    let g = sl4_graph();
    let mut m: Vec<usize> = ["e8", "x_west", "e6"].iter().map(|id| g.edge_by_id(id).unwrap()).collect();
    m.sort_unstable();
    m
}

/// Boundary vertices on a circle at the given angles (label `i+1` at `angles[i]`).
fn boundary_ring(emb: &mut Embedding, angles: &[f64], radius: f64) -> Vec<usize> {
    angles
        .iter()
        .enumerate()
        .map(|(i, &t)| emb.boundary(&format!("{}", i + 1), i + 1, polar(t, radius)))
        .collect()
}

/// Evenly spaced boundary angles, label 1 at `start` and increasing counterclockwise.
pub fn even_angles(n: usize, start: f64) -> Vec<f64> {
    (0..n).map(|i| start + 360.0 * i as f64 / n as f64).collect()
}

/// One white vertex per block of a noncrossing partition of the boundary,
/// joined to each boundary vertex of its block. With blocks of size `r` every
/// edge has multiplicity 1 and this is an r-weblike subgraph.
pub fn block_web(angles: &[f64], blocks: &[Vec<usize>]) -> WeblikeSubgraph {
    let n = angles.len();
    let mut emb = Embedding::new(n);
    let b = boundary_ring(&mut emb, angles, 1000.0);
    let mut r = 0;
    for (j, block) in blocks.iter().enumerate() {
        r = block.len();
        let pts: Vec<(i64, i64)> = block.iter().map(|&i| polar(angles[i - 1], 1000.0)).collect();
        let cx = pts.iter().map(|p| p.0).sum::<i64>() / pts.len() as i64;
        let cy = pts.iter().map(|p| p.1).sum::<i64>() / pts.len() as i64;
        let w = emb.interior(&format!("w{j}"), Color::White, (cx, cy));
        for &i in block {
            emb.edge(&format!("e{i}"), b[i - 1], w);
        }
    }
    let g = Arc::new(emb.build().expect("block web builds"));
    let m = g.edges().len();
    WeblikeSubgraph::new(g, r, vec![1; m]).expect("equal blocks give a weblike subgraph")
}

/// A black vertex joined to three white vertices, each carrying two adjacent
/// boundary edges: the pairs are `{p, p+1}`, `{p+2, p+3}`, `{p+4, p+5}` (mod 6).
pub fn claw_web(first: usize) -> WeblikeSubgraph {
    let angles = even_angles(6, 0.0);
    let mut emb = Embedding::new(6);
    let b = boundary_ring(&mut emb, &angles, 1000.0);
    let center = emb.interior("x", Color::Black, (0, 0));
    for j in 0..3 {
        let i1 = (first - 1 + 2 * j) % 6 + 1;
        let i2 = i1 % 6 + 1;
        let mid = angles[i1 - 1] + 30.0;
        let w = emb.interior(&format!("w{j}"), Color::White, polar(mid, 600.0));
        emb.edge(&format!("x{j}"), center, w);
        emb.edge(&format!("e{i1}"), b[i1 - 1], w);
        emb.edge(&format!("e{i2}"), b[i2 - 1], w);
    }
    let g = Arc::new(emb.build().expect("claw web builds"));
    let m = g.edges().len();
    WeblikeSubgraph::new(g, 3, vec![1; m]).expect("claw is 3-weblike")
}

/// Boundary angles for the nine-point SL3 pictures: label 1 at 170 degrees,
/// then every 40 degrees counterclockwise.
pub fn nine_point_angles() -> Vec<f64> {
    even_angles(9, 170.0)
}

/// Three tripods on blocks `{5,6,7}`, `{9,1,2}`, `{8,3,4}`.
pub fn three_tripod_web() -> WeblikeSubgraph {
    block_web(&nine_point_angles(), &[vec![5, 6, 7], vec![9, 1, 2], vec![8, 3, 4]])
}

/// Three tripods on consecutive blocks `{7,8,9}`, `{1,2,3}`, `{4,5,6}`.
pub fn consecutive_tripod_web() -> WeblikeSubgraph {
    block_web(&nine_point_angles(), &[vec![7, 8, 9], vec![1, 2, 3], vec![4, 5, 6]])
}
