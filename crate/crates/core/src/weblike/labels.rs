use std::collections::HashMap;
use std::sync::Arc;

use crate::exact::{perm_sign, Ring};

use super::WeblikeError;

/// Boundary label subsets `S_1..S_n`, one bitmask per boundary vertex
/// (bit `c-1` set when color `c` sits there).
pub type BoundaryLabels = Vec<u8>;

/// Packs a label list into a hash key, eight bits per boundary vertex.
pub(crate) fn pack(s: &[u8]) -> u128 {
    s.iter().rev().fold(0u128, |acc, &m| acc << 8 | m as u128)
}

/// The color word read left to right, colors ascending inside each vertex.
pub fn color_word(s: &[u8]) -> Vec<u8> {
    s.iter()
        .flat_map(|&m| (0..8u8).filter(move |b| m >> b & 1 == 1).map(|b| b + 1))
        .collect()
}

/// `(-1)` to the number of color inversions of the boundary word.
pub fn sign_of_boundary(s: &[u8]) -> i64 {
    perm_sign(&color_word(s))
}

/// The dual data `I_c = { i : c ∈ S_i }` for `c = 1..=r`.
pub fn labels_to_locations(s: &[u8], r: usize) -> Vec<Vec<usize>> {
    (0..r)
        .map(|c| (0..s.len()).filter(|&i| s[i] >> c & 1 == 1).map(|i| i + 1).collect())
        .collect()
}

pub fn locations_to_labels(locations: &[Vec<usize>], n: usize) -> BoundaryLabels {
    let mut s = vec![0u8; n];
    for (c, set) in locations.iter().enumerate() {
        for &i in set {
            s[i - 1] |= 1 << c;
        }
    }
    s
}

/// Checks `0 <= λ_i <= r` and `Σλ = k·r`, returning `k`.
pub fn degree_k(r: usize, lambda: &[usize]) -> Result<usize, WeblikeError> {
    if r == 0 || r > 8 {
        return Err(WeblikeError::Degree(format!("rank r={r} must lie in 1..=8")));
    }
    if lambda.len() > 16 {
        return Err(WeblikeError::Degree(format!("at most 16 boundary vertices supported, got {}", lambda.len())));
    }
    if let Some(x) = lambda.iter().find(|&&x| x > r) {
        return Err(WeblikeError::Degree(format!("entry {x} exceeds r={r}")));
    }
    let total: usize = lambda.iter().sum();
    if !total.is_multiple_of(r) {
        return Err(WeblikeError::Degree(format!("sum {total} is not a multiple of r={r}")));
    }
    Ok(total / r)
}

/// All boundary label lists of degree λ in which every color occurs `k` times,
/// in lexicographic order of their masks.
pub fn enumerate_boundary_labels(r: usize, k: usize, lambda: &[usize]) -> Vec<BoundaryLabels> {
    let n = lambda.len();
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    let mut counts = vec![0usize; r];
    let per_vertex: Vec<Vec<u8>> = lambda
        .iter()
        .map(|&l| (0u16..1 << r).filter(|m| m.count_ones() as usize == l).map(|m| m as u8).collect())
        .collect();
    fn rec(
        i: usize,
        k: usize,
        per_vertex: &[Vec<u8>],
        cur: &mut Vec<u8>,
        counts: &mut Vec<usize>,
        out: &mut Vec<BoundaryLabels>,
    ) {
        if i == cur.len() {
            if counts.iter().all(|&c| c == k) {
                out.push(cur.clone());
            }
            return;
        }
        for &m in &per_vertex[i] {
            let colors = (0..counts.len()).filter(|c| m >> c & 1 == 1);
            if colors.clone().any(|c| counts[c] == k) {
                continue;
            }
            for c in colors.clone() {
                counts[c] += 1;
            }
            cur[i] = m;
            rec(i + 1, k, per_vertex, cur, counts, out);
            for c in colors {
                counts[c] -= 1;
            }
        }
    }
    rec(0, k, &per_vertex, &mut cur, &mut counts, &mut out);
    out
}

/// The valid boundary label lists for `(r, λ)`, their index and their signs.
#[derive(Debug, PartialEq, Eq)]
pub struct LabelSpace {
    r: usize,
    k: usize,
    lambda: Vec<usize>,
    labels: Vec<BoundaryLabels>,
    index: HashMap<u128, usize>,
    signs: Vec<i64>,
}

impl LabelSpace {
    pub fn new(r: usize, lambda: &[usize]) -> Result<Arc<LabelSpace>, WeblikeError> {
        let k = degree_k(r, lambda)?;
        let labels = enumerate_boundary_labels(r, k, lambda);
        let index = labels.iter().enumerate().map(|(i, s)| (pack(s), i)).collect();
        let signs = labels.iter().map(|s| sign_of_boundary(s)).collect();
        Ok(Arc::new(LabelSpace { r, k, lambda: lambda.to_vec(), labels, index, signs }))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn labels(&self) -> &[BoundaryLabels] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, s: &[u8]) -> Option<usize> {
        if s.len() != self.n() {
            return None;
        }
        self.index.get(&pack(s)).copied()
    }

    pub(crate) fn index_of_packed(&self, key: u128) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i]
    }
}

/// A tensor invariant stored as its values on the basis tensors `E_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariant<V> {
    space: Arc<LabelSpace>,
    values: Vec<V>,
}

impl<V: Ring> Invariant<V> {
    pub fn zero(space: Arc<LabelSpace>) -> Self {
        let values = vec![V::zero(); space.len()];
        Invariant { space, values }
    }

    pub fn from_values(space: Arc<LabelSpace>, values: Vec<V>) -> Self {
        assert_eq!(values.len(), space.len(), "one value per boundary label list");
        Invariant { space, values }
    }

    pub fn space(&self) -> &Arc<LabelSpace> {
        &self.space
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// The value at `E_S`; zero for label lists outside the space.
    pub fn value(&self, s: &[u8]) -> V {
        self.space.index_of(s).map_or_else(V::zero, |i| self.values[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(V::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Invariant<V>, c: &V) {
        assert!(Arc::ptr_eq(&self.space, &other.space) || self.space == other.space);
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            if !y.is_zero() {
                *x = x.plus(&y.times(c));
            }
        }
    }

    pub fn scale(&self, c: &V) -> Self {
        Invariant { space: self.space.clone(), values: self.values.iter().map(|x| x.times(c)).collect() }
    }

    pub fn map<W: Ring>(&self, f: impl Fn(&V) -> W) -> Invariant<W> {
        Invariant { space: self.space.clone(), values: self.values.iter().map(f).collect() }
    }

    /// Indices where the two tables differ.
    pub fn differences(&self, other: &Invariant<V>) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != other.values[i]).collect()
    }
}
