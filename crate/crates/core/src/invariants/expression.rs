use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{web_measurement_with, InvariantError};
use crate::dimer::PluckerVector;
use crate::exact::{matrix_solve, perm_sign, ExactMatrix, Rational, Ring};
use crate::graph::top_cell_graph;
use crate::random;
use crate::subsets::k_subsets;
use crate::weblike::{degree_k, Invariant};

/// A polynomial in Plücker coordinates, homogeneous of degree `r`: a rational
/// combination of products `Δ_{I_1}···Δ_{I_r}` of `k`-subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerExpression {
    r: usize,
    k: usize,
    n: usize,
    terms: BTreeMap<Vec<Vec<usize>>, Rational>,
}

fn normalize(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets
}

impl PluckerExpression {
    pub fn new(r: usize, k: usize, n: usize) -> Self {
        PluckerExpression { r, k, n, terms: BTreeMap::new() }
    }

    pub fn monomial(r: usize, k: usize, n: usize, sets: Vec<Vec<usize>>) -> Self {
        let mut f = PluckerExpression::new(r, k, n);
        f.add_term(sets, Rational::one());
        f
    }

    /// Adds `c·Δ_{I_1}···Δ_{I_r}`.
    ///
    /// # Panics
    /// If the sets are not `r` distinct-element `k`-subsets of `[n]`.
    pub fn add_term(&mut self, sets: Vec<Vec<usize>>, c: Rational) {
        assert_eq!(sets.len(), self.r, "expected {} subsets", self.r);
        for s in &sets {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            assert!(t.len() == self.k && t.iter().all(|&i| (1..=self.n).contains(&i)), "bad subset {s:?}");
        }
        let key = normalize(sets);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Vec<usize>>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut f = PluckerExpression::new(self.r, self.k, self.n);
        for (m, x) in &self.terms {
            f.add_term(m.clone(), x * c);
        }
        f
    }

    pub fn add(&self, other: &PluckerExpression) -> Self {
        let mut f = self.clone();
        for (m, x) in &other.terms {
            f.add_term(m.clone(), x.clone());
        }
        f
    }

    /// The degree of each term, if all terms agree.
    pub fn lambda(&self) -> Option<Vec<usize>> {
        let mut out: Option<Vec<usize>> = None;
        for m in self.terms.keys() {
            let mut lambda = vec![0; self.n];
            for &i in m.iter().flatten() {
                lambda[i - 1] += 1;
            }
            match &out {
                Some(l) if *l != lambda => return None,
                _ => out = Some(lambda),
            }
        }
        out
    }

    /// `σ·f`, permuting columns: `Δ_{i_1...i_k}` becomes the minor on columns
    /// `σ(i_1), ..., σ(i_k)` in that order. `sigma[i - 1] = σ(i)`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut f = PluckerExpression::new(self.r, self.k, self.n);
        for (m, c) in &self.terms {
            let mut sign = 1;
            let sets = m
                .iter()
                .map(|s| {
                    let image: Vec<usize> = s.iter().map(|&i| sigma[i - 1]).collect();
                    sign *= perm_sign(&image);
                    image
                })
                .collect();
            f.add_term(sets, c * Rational::from_int(sign));
        }
        f
    }

    pub fn eval_with<V: Ring>(&self, p: &PluckerVector<V>, coeff: impl Fn(&Rational) -> V) -> V {
        let mut total = V::zero();
        for (m, c) in &self.terms {
            let prod = m.iter().fold(coeff(c), |acc, s| acc.times(&p.get(s)));
            total = total.plus(&prod);
        }
        total
    }

    pub fn eval(&self, p: &PluckerVector<Rational>) -> Rational {
        self.eval_with(p, Rational::clone)
    }
}

impl fmt::Display for PluckerExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for s in m {
                let name: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "*D[{}]", name.join(","))?;
            }
        }
        Ok(())
    }
}

/// Multisets `{I_1, ..., I_r}` of `k`-subsets using each `i` exactly `λ_i` times.
pub fn plucker_monomials(r: usize, k: usize, n: usize, lambda: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let subsets = k_subsets(n, k);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut left = lambda.to_vec();
    fn rec(
        from: usize,
        r: usize,
        subsets: &[Vec<usize>],
        left: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if cur.len() == r {
            if left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        for (j, s) in subsets.iter().enumerate().skip(from) {
            if s.iter().any(|&i| left[i - 1] == 0) {
                continue;
            }
            for &i in s {
                left[i - 1] -= 1;
            }
            cur.push(s.clone());
            rec(j, r, subsets, left, cur, out);
            cur.pop();
            for &i in s {
                left[i - 1] += 1;
            }
        }
    }
    if lambda.len() == n && degree_k(r, lambda) == Ok(k) {
        rec(0, r, &subsets, &mut left, &mut cur, &mut out);
    }
    out
}

/// A Plücker polynomial `F` with `F(X̃(N)) = φ(Web_r(N; λ))` for every network
/// `N` in the top cell, where `φ(x) = Σ_S φ_S·x(E_S)`.
///
/// Found by solving for coefficients on the monomial spanning set against a
/// battery of random networks; the answer is one representative modulo the
/// Plücker relations.
pub fn immanant(phi: &Invariant<Rational>, seed: u64) -> Result<PluckerExpression, InvariantError> {
    let space = phi.space();
    let (r, k, n) = (space.r(), space.k(), space.n());
    let monomials = plucker_monomials(r, k, n, space.lambda());
    let graph = Arc::new(
        top_cell_graph(k, n).map_err(|e| InvariantError::Incompatible(format!("no top cell for ({k}, {n}): {e}")))?,
    );
    let mut rng = random::rng(seed);
    let count = monomials.len() + 8;
    let mut rows = Vec::with_capacity(count);
    let mut rhs = Vec::with_capacity(count);
    for _ in 0..count {
        let w = random::weights(&mut rng, graph.edges().len());
        let p = crate::dimer::plucker_vector_with(&graph, &w)?;
        rows.push(
            monomials
                .iter()
                .map(|m| m.iter().fold(Rational::one(), |acc, s| acc * p.get(s)))
                .collect::<Vec<_>>(),
        );
        let web = web_measurement_with(&graph, &w, r, space.lambda())?.invariant;
        let value = web.values().iter().zip(phi.values()).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
        rhs.push(value);
    }
    let matrix = ExactMatrix::from_rows(rows)?;
    let Some(coeffs) = matrix_solve(&matrix, &rhs)? else {
        return Err(InvariantError::Inconsistent("functional is not a Plücker polynomial".into()));
    };
    let mut f = PluckerExpression::new(r, k, n);
    for (m, c) in monomials.into_iter().zip(coeffs) {
        if !c.is_zero() {
            f.add_term(m, c);
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::weblike::{locations_to_labels, LabelSpace};

    #[test]
    fn monomial_counts() {
        assert_eq!(plucker_monomials(2, 3, 6, &[1; 6]).len(), 10);
        assert_eq!(plucker_monomials(3, 2, 6, &[1; 6]).len(), 15);
        assert_eq!(plucker_monomials(3, 3, 9, &[1; 9]).len(), 280);
        assert_eq!(plucker_monomials(2, 2, 3, &[2, 1, 1]).len(), 1);
        assert!(plucker_monomials(2, 2, 3, &[1, 1, 1]).is_empty());
    }

    #[test]
    fn terms_normalize_and_cancel() {
        let mut f = PluckerExpression::new(2, 2, 4);
        f.add_term(vec![vec![4, 3], vec![1, 2]], int(2));
        f.add_term(vec![vec![1, 2], vec![3, 4]], int(-2));
        assert!(f.is_zero());
        f.add_term(vec![vec![1, 3], vec![2, 4]], int(1));
        assert_eq!(f.lambda(), Some(vec![1; 4]));
        assert_eq!(f.to_string(), "(1)*D[1,3]*D[2,4]");
        let g = f.permute(&[2, 3, 4, 1]);
        let (m, c) = g.terms().next().unwrap();
        assert_eq!((m, c), (&vec![vec![1, 3], vec![2, 4]], &int(-1)));
    }

    #[test]
    fn immanant_of_a_coordinate_functional() {
        let space = LabelSpace::new(2, &[1; 6]).unwrap();
        for (sets, seed) in [(vec![vec![1, 2, 3], vec![4, 5, 6]], 1), (vec![vec![1, 3, 5], vec![2, 4, 6]], 2)] {
            let s = locations_to_labels(&sets, 6);
            let i = space.index_of(&s).unwrap();
            let mut values = vec![int(0); space.len()];
            values[i] = int(1);
            let phi = Invariant::from_values(space.clone(), values);
            let f = immanant(&phi, seed).unwrap();
            let oracle = PluckerExpression::monomial(2, 3, 6, sets).scale(&int(space.sign(i)));
            let mut rng = random::rng(99);
            let g = top_cell_graph(3, 6).unwrap();
            for _ in 0..4 {
                let w = random::weights(&mut rng, g.edges().len());
                let p = crate::dimer::plucker_vector_with(&g, &w).unwrap();
                assert_eq!(f.eval(&p), oracle.eval(&p));
            }
        }
    }
}
