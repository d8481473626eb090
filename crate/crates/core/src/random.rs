//! Seeded random weights for verification batteries.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, Rational};
use crate::graph::{Network, PlanarBipartiteGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive rational `p/q` with `p` in `1..=100` and `q` in `1..=10`.
pub fn weight<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=100), rng.gen_range(1..=10))
}

pub fn weights<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    (0..count).map(|_| weight(rng)).collect()
}

pub fn network<R: Rng>(rng: &mut R, graph: Arc<PlanarBipartiteGraph>) -> Network {
    let w = weights(rng, graph.edges().len());
    Network::from_rationals(graph, w).expect("positive weights are nonzero")
}
