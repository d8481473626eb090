use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{InvariantError, PluckerExpression};
use crate::exact::{integer_rank, perm_sign, ExactMatrix, Rational, Ring, RowSpace};
use crate::graph::PlanarBipartiteGraph;
use crate::weblike::{bold_value_table, degree_k, enumerate_weblike, Invariant, LabelSpace, WeblikeSubgraph};

/// `dim Inv(V_λ)`: the number of ways to grow the `r × k` rectangle by adding a
/// vertical strip of size `λ_i` for `i = 1, ..., n`.
pub fn dim_invariant_space(r: usize, lambda: &[usize]) -> Result<u64, InvariantError> {
    let k = degree_k(r, lambda)?;
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::from([(vec![0; r], 1)]);
    for &size in lambda {
        let mut next: HashMap<Vec<usize>, u64> = HashMap::new();
        for (shape, c) in counts {
            for rows in crate::subsets::k_subsets(r, size) {
                let mut grown = shape.clone();
                for &j in &rows {
                    grown[j - 1] += 1;
                }
                let ok = grown.iter().all(|&x| x <= k) && grown.windows(2).all(|w| w[0] >= w[1]);
                if ok {
                    *next.entry(grown).or_insert(0) += c;
                }
            }
        }
        counts = next;
    }
    Ok(counts.get(&vec![k; r]).copied().unwrap_or(0))
}

/// `x(v_1 ⊗ ... ⊗ v_n)` where `v_i` is the `i`-th column of the `r × n` matrix.
pub fn evaluate_on_matrix(x: &Invariant<Rational>, m: &ExactMatrix) -> Result<Rational, InvariantError> {
    let space = x.space();
    if m.rows() != space.r() || m.cols() != space.n() || space.lambda().iter().any(|&l| l != 1) {
        return Err(InvariantError::Incompatible(format!(
            "a {}x{} matrix cannot be fed to an invariant of degree {:?} in rank {}",
            m.rows(),
            m.cols(),
            space.lambda(),
            space.r()
        )));
    }
    if let Some(v) = evaluate_small(x, m) {
        return Ok(Rational::from_integer(v.into()));
    }
    let mut total = Rational::zero();
    for (s, v) in space.labels().iter().zip(x.values()) {
        if v.is_zero() {
            continue;
        }
        let mut prod = v.clone();
        for (i, &c) in s.iter().enumerate() {
            prod *= m.get(c.trailing_zeros() as usize, i);
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

fn small_int(x: &Rational) -> Option<i128> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok().map(i128::from)
}

/// Machine-integer evaluation for integer inputs; `None` on overflow.
fn evaluate_small(x: &Invariant<Rational>, m: &ExactMatrix) -> Option<i128> {
    let entries: Vec<Vec<i128>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| small_int(m.get(i, j))).collect()).collect::<Option<_>>()?;
    let mut total: i128 = 0;
    for (s, v) in x.space().labels().iter().zip(x.values()) {
        if v.is_zero() {
            continue;
        }
        let mut prod = small_int(v)?;
        for (i, &c) in s.iter().enumerate() {
            prod = prod.checked_mul(entries[c.trailing_zeros() as usize][i])?;
        }
        total = total.checked_add(prod)?;
    }
    Some(total)
}

/// Plugs `E_r` into one wedge slot at each position of `set`, giving an
/// invariant of rank `r - 1`.
pub fn partial_evaluate<V: Ring>(x: &Invariant<V>, set: &[usize]) -> Result<Invariant<V>, InvariantError> {
    let space = x.space();
    let (r, n) = (space.r(), space.n());
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if r < 2 || sorted.len() != space.k() || sorted.len() != set.len() {
        return Err(InvariantError::Incompatible(format!(
            "partial evaluation needs r >= 2 and {} distinct positions, got r = {r} and {set:?}",
            space.k()
        )));
    }
    let mut lambda = space.lambda().to_vec();
    for &i in &sorted {
        if i == 0 || i > n || lambda[i - 1] == 0 {
            return Err(InvariantError::Incompatible(format!("position {i} has nothing to evaluate")));
        }
        lambda[i - 1] -= 1;
    }
    let top = 1u8 << (r - 1);
    let target = LabelSpace::new(r - 1, &lambda)?;
    let values = target
        .labels()
        .iter()
        .map(|s| {
            let mut full = s.clone();
            for &i in &sorted {
                full[i - 1] |= top;
            }
            x.value(&full)
        })
        .collect();
    Ok(Invariant::from_values(target, values))
}

/// Ranks of a family of rank-`r` tables and of their partial evaluations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialEvaluationReport {
    pub source_rank: usize,
    pub image_rank: usize,
    pub kernel_dim: usize,
}

pub fn partial_evaluation_kernel(
    tables: &[Invariant<i64>],
    set: &[usize],
) -> Result<PartialEvaluationReport, InvariantError> {
    let images = tables.iter().map(|t| partial_evaluate(t, set)).collect::<Result<Vec<_>, _>>()?;
    let source: Vec<Vec<i64>> = tables.iter().map(|t| t.values().to_vec()).collect();
    let image: Vec<Vec<i64>> = images.iter().map(|t| t.values().to_vec()).collect();
    let source_rank = integer_rank(&source);
    let image_rank = integer_rank(&image);
    Ok(PartialEvaluationReport { source_rank, image_rank, kernel_dim: source_rank - image_rank })
}

/// The span of the bold webs of a graph's weblike subgraphs.
#[derive(Clone, Debug)]
pub struct PositroidSubspace {
    pub dimension: usize,
    pub ambient_dimension: u64,
    pub subgraphs_seen: usize,
    pub basis: Vec<WeblikeSubgraph>,
    pub tables: Vec<Invariant<i64>>,
}

/// Rank of the bold webs of `graph`, with a maximal independent subset.
/// Enumeration stops early once the whole invariant space is spanned.
pub fn positroid_subspace(
    graph: &Arc<PlanarBipartiteGraph>,
    r: usize,
    lambda: &[usize],
) -> Result<PositroidSubspace, InvariantError> {
    let k = graph.excedance();
    if lambda.len() != graph.n() || degree_k(r, lambda).map(|x| x as i64) != Ok(k) {
        return Err(InvariantError::Degree { r, k, lambda: lambda.to_vec() });
    }
    let ambient = dim_invariant_space(r, lambda)?;
    let space = LabelSpace::new(r, lambda)?;
    let subs = enumerate_weblike(graph, r, lambda)?;
    let mut rows = RowSpace::new();
    let mut basis = Vec::new();
    let mut tables = Vec::new();
    let mut seen = 0;
    for chunk in subs.chunks(64) {
        let found: Vec<Invariant<i64>> = chunk.par_iter().map(|w| bold_value_table(w, &space)).collect();
        for (w, t) in chunk.iter().zip(found) {
            seen += 1;
            if rows.insert(t.values()) {
                basis.push(w.clone());
                tables.push(t);
            }
            if basis.len() as u64 == ambient {
                break;
            }
        }
        if basis.len() as u64 == ambient {
            break;
        }
    }
    Ok(PositroidSubspace { dimension: basis.len(), ambient_dimension: ambient, subgraphs_seen: seen, basis, tables })
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<(), InvariantError> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(InvariantError::Incompatible(format!("{sigma:?} is not a permutation of [{n}]")));
    }
    for &s in sigma {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(InvariantError::Incompatible(format!("{sigma:?} is not a permutation of [{n}]")));
        }
    }
    Ok(())
}

/// `(x∘σ)(E_S) = x(E_{S∘σ})` with `(S∘σ)_i = S_{σ(i)}`; `sigma[i - 1] = σ(i)`.
/// The result has degree `λ'` with `λ'_{σ(i)} = λ_i`.
pub fn permute<V: Ring>(x: &Invariant<V>, sigma: &[usize]) -> Result<Invariant<V>, InvariantError> {
    let space = x.space();
    check_permutation(sigma, space.n())?;
    let mut lambda = vec![0; space.n()];
    for (i, &s) in sigma.iter().enumerate() {
        lambda[s - 1] = space.lambda()[i];
    }
    let target = if lambda == space.lambda() { space.clone() } else { LabelSpace::new(space.r(), &lambda)? };
    let values = target
        .labels()
        .iter()
        .map(|s| {
            let pulled: Vec<u8> = sigma.iter().map(|&j| s[j - 1]).collect();
            x.value(&pulled)
        })
        .collect();
    Ok(Invariant::from_values(target, values))
}

/// Both sides of `⟨x∘σ, σ·f⟩ = sign(σ)·⟨x, f⟩`.
pub fn twist_sides(
    x: &Invariant<Rational>,
    f: &PluckerExpression,
    sigma: &[usize],
) -> Result<(Rational, Rational), InvariantError> {
    let lhs = super::pair_rational(&permute(x, sigma)?, &f.permute(sigma))?;
    let rhs = super::pair_rational(x, f)? * Rational::from_integer(perm_sign(sigma).into());
    Ok((lhs, rhs))
}

/// Rank of the pairing between all `E_S` and Plücker monomials, computed on
/// random top-cell networks.
pub fn immanant_rank(r: usize, k: usize, n: usize, lambda: &[usize], seed: u64) -> Result<usize, InvariantError> {
    let space = LabelSpace::new(r, lambda)?;
    if space.k() != k || space.n() != n {
        return Err(InvariantError::Degree { r, k: k as i64, lambda: lambda.to_vec() });
    }
    let graph = crate::graph::top_cell_graph(k, n)
        .map_err(|e| InvariantError::Incompatible(format!("no top cell for ({k}, {n}): {e}")))?;
    let mut rng = crate::random::rng(seed);
    let points: Vec<_> = (0..space.len().min(super::plucker_monomials(r, k, n, lambda).len() + 8))
        .map(|_| crate::dimer::plucker_vector_with(&graph, &crate::random::weights(&mut rng, graph.edges().len())))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Rational>> = (0..space.len())
        .map(|i| {
            let sets = crate::weblike::labels_to_locations(&space.labels()[i], r);
            let sign = Rational::from_integer(space.sign(i).into());
            points.iter().map(|p| sets.iter().fold(sign.clone(), |acc, s| acc * p.get(s))).collect()
        })
        .collect();
    Ok(crate::exact::matrix_rank(&ExactMatrix::from_rows(rows)?))
}

/// A generalized Vandermonde matrix `M[c][i] = x_i^{e_c}` with
/// `0 < x_1 < ... < x_n` and `e_1 < ... < e_r`, which is totally positive.
pub fn vandermonde(xs: &[Rational], exponents: &[u32]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(exponents.len(), xs.len());
    for (c, &e) in exponents.iter().enumerate() {
        for (i, x) in xs.iter().enumerate() {
            m.set(c, i, num_traits::pow(x.clone(), e as usize));
        }
    }
    m
}

/// Outcome of sampling web evaluations on totally positive matrices.
#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub webs: usize,
    pub matrices: usize,
    pub evaluations: usize,
    /// `(web index, matrix)` pairs where the value has the wrong sign.
    pub counterexamples: Vec<(usize, ExactMatrix)>,
}

/// Evaluates each invariant on `matrices` random generalized Vandermonde
/// matrices. Each web's sign is fixed by its value on the standard Vandermonde
/// matrix; a counterexample is a sample of the opposite strict sign.
pub fn sample_positivity(
    webs: &[Invariant<Rational>],
    matrices: usize,
    seed: u64,
) -> Result<PositivityReport, InvariantError> {
    use rand::seq::index::sample;
    let Some(first) = webs.first() else {
        return Ok(PositivityReport { webs: 0, matrices, evaluations: 0, counterexamples: Vec::new() });
    };
    let (r, n) = (first.space().r(), first.space().n());
    let xs: Vec<Rational> = (1..=n as i64).map(Rational::from_int).collect();
    let reference = vandermonde(&xs, &(0..r as u32).collect::<Vec<_>>());
    let mut signs = webs
        .iter()
        .map(|x| evaluate_on_matrix(x, &reference).map(|v| (!v.is_zero()).then(|| v > Rational::zero())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = crate::random::rng(seed);
    let mut counterexamples = Vec::new();
    let mut evaluations = 0;
    for _ in 0..matrices {
        let mut pts: Vec<i64> = sample(&mut rng, 2 * n, n).into_iter().map(|i| i as i64 + 1).collect();
        pts.sort_unstable();
        let mut exps: Vec<u32> = sample(&mut rng, r + 1, r).into_iter().map(|e| e as u32).collect();
        exps.sort_unstable();
        let m = vandermonde(&pts.into_iter().map(Rational::from_int).collect::<Vec<_>>(), &exps);
        for (i, x) in webs.iter().enumerate() {
            let v = evaluate_on_matrix(x, &m)?;
            evaluations += 1;
            if v.is_zero() {
                continue;
            }
            let positive = v > Rational::zero();
            if *signs[i].get_or_insert(positive) != positive {
                counterexamples.push((i, m.clone()));
            }
        }
    }
    Ok(PositivityReport { webs: webs.len(), matrices, evaluations, counterexamples })
}

/// Checks that all maximal minors of `m` are positive.
pub fn is_totally_positive_on_columns(m: &ExactMatrix) -> bool {
    crate::subsets::k_subsets(m.cols(), m.rows()).into_iter().all(|cols| {
        let sub: Vec<Vec<Rational>> =
            (0..m.rows()).map(|i| cols.iter().map(|&j| m.get(i, j - 1).clone()).collect()).collect();
        determinant(sub) > Rational::zero()
    })
}

pub(crate) fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::gallery;
    use crate::graph::top_cell_graph;
    use crate::invariants::{pair_rational, plucker_monomials, to_rational};
    use crate::random;
    use rand::Rng;

    #[test]
    fn dimensions() {
        assert_eq!(dim_invariant_space(2, &[1; 6]).unwrap(), 5);
        assert_eq!(dim_invariant_space(3, &[1; 6]).unwrap(), 5);
        assert_eq!(dim_invariant_space(2, &[1; 8]).unwrap(), 14);
        assert_eq!(dim_invariant_space(4, &[1; 8]).unwrap(), 14);
        assert_eq!(dim_invariant_space(3, &[1; 9]).unwrap(), 42);
        assert_eq!(dim_invariant_space(3, &[2, 1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(dim_invariant_space(2, &[2, 2]).unwrap(), 1);
        assert!(dim_invariant_space(2, &[1; 5]).is_err());
    }

    #[test]
    fn top_cells_span() {
        for (r, k, n) in [(2, 3, 6), (3, 2, 6), (2, 4, 8), (4, 2, 8)] {
            let g = Arc::new(top_cell_graph(k, n).unwrap());
            let sub = positroid_subspace(&g, r, &vec![1; n]).unwrap();
            assert_eq!(sub.dimension as u64, sub.ambient_dimension, "({r}, {k}, {n})");
        }
    }

    #[test]
    fn smaller_positroids_have_smaller_subspaces() {
        let g = gallery::square_network().graph_arc().clone();
        let sub = positroid_subspace(&g, 3, &[1; 6]).unwrap();
        assert!(sub.dimension < 5);
        assert_eq!(sub.dimension, 2);
    }

    #[test]
    fn immanant_matrix_rank() {
        assert_eq!(immanant_rank(2, 3, 6, &[1; 6], 4).unwrap(), 5);
        assert_eq!(immanant_rank(3, 2, 6, &[1; 6], 4).unwrap(), 5);
    }

    #[test]
    fn partial_evaluation() {
        let space = LabelSpace::new(3, &[1; 9]).unwrap();
        let g = gallery::three_tripod_web();
        let x = partial_evaluate(&bold_value_table(&g, &space), &[7, 8, 9]).unwrap();
        assert!(!x.is_zero());
        assert_eq!(x.space().r(), 2);
        let nz: Vec<_> = x.values().iter().filter(|v| **v != 0).collect();
        assert!(!nz.is_empty());
        let y = partial_evaluate(&bold_value_table(&gallery::consecutive_tripod_web(), &space), &[7, 8, 9]).unwrap();
        assert!(y.is_zero());
        assert!(partial_evaluate(&bold_value_table(&g, &space), &[7, 8]).is_err());
    }

    #[test]
    fn permuting_twice() {
        let space = LabelSpace::new(2, &[1; 6]).unwrap();
        let g = Arc::new(top_cell_graph(3, 6).unwrap());
        let w = &enumerate_weblike(&g, 2, &[1; 6]).unwrap()[0];
        let x = bold_value_table(w, &space);
        let rot = [2, 3, 4, 5, 6, 1];
        let mut y = x.clone();
        for _ in 0..6 {
            y = permute(&y, &rot).unwrap();
        }
        assert_eq!(y, x);
        assert!(permute(&x, &[1, 1, 2, 3, 4, 5]).is_err());
        let z = permute(&x, &[2, 1, 3, 4, 5, 6]).unwrap();
        assert_eq!(z.value(&[2, 1, 1, 1, 2, 2]), x.value(&[1, 2, 1, 1, 2, 2]));
    }

    #[test]
    fn twist() {
        let mut rng = random::rng(17);
        let g = Arc::new(top_cell_graph(2, 6).unwrap());
        let space = LabelSpace::new(3, &[1; 6]).unwrap();
        let subs = enumerate_weblike(&g, 3, &[1; 6]).unwrap();
        let monomials = plucker_monomials(3, 2, 6, &[1; 6]);
        for _ in 0..5 {
            let mut x = Invariant::<Rational>::zero(space.clone());
            for w in &subs {
                x.add_scaled(&to_rational(&bold_value_table(w, &space)), &random::weight(&mut rng));
            }
            let mut f = PluckerExpression::new(3, 2, 6);
            for m in &monomials {
                f.add_term(m.clone(), int(rng.gen_range(-3..=3)));
            }
            let mut sigma: Vec<usize> = (1..=6).collect();
            for i in (1..6).rev() {
                sigma.swap(i, rng.gen_range(0..=i));
            }
            let (lhs, rhs) = twist_sides(&x, &f, &sigma).unwrap();
            assert_eq!(lhs, rhs, "{sigma:?}");
            assert_eq!(pair_rational(&x, &f.scale(&int(2))).unwrap(), pair_rational(&x, &f).unwrap() * int(2));
        }
    }

    #[test]
    fn matrix_evaluation() {
        let space = LabelSpace::new(2, &[1; 4]).unwrap();
        let g = Arc::new(top_cell_graph(2, 4).unwrap());
        let xs = [[1, 2, 3, 4], [1, 3, 4, 7], [2, 3, 5, 11]];
        for w in enumerate_weblike(&g, 2, &[1; 4]).unwrap() {
            let x = to_rational(&bold_value_table(&w, &space));
            let signs: Vec<bool> = xs
                .iter()
                .map(|p| {
                    let m = vandermonde(&p.map(int), &[0, 1]);
                    assert!(is_totally_positive_on_columns(&m));
                    let v = evaluate_on_matrix(&x, &m).unwrap();
                    assert!(!v.is_zero());
                    v > int(0)
                })
                .collect();
            assert!(signs.iter().all(|&s| s == signs[0]));
        }
        let mut arc = vec![int(0); space.len()];
        for (i, s) in space.labels().iter().enumerate() {
            if s[0] != s[1] && s[2] == 1 && s[3] == 2 {
                arc[i] = int(space.sign(i));
            }
        }
        let arc = Invariant::from_values(space.clone(), arc);
        let m = vandermonde(&[int(2), int(3), int(1), int(1)], &[0, 1]);
        let v = evaluate_on_matrix(&arc, &m).unwrap();
        assert_eq!(&v * &v, int(1));
        let bad = vandermonde(&[rat(1, 2), int(2)], &[0, 1]);
        assert!(evaluate_on_matrix(&Invariant::zero(space), &bad).is_err());
    }

    #[test]
    fn positivity_sampling_on_matchings() {
        let space = LabelSpace::new(2, &[1; 6]).unwrap();
        let g = Arc::new(top_cell_graph(3, 6).unwrap());
        let webs: Vec<_> =
            enumerate_weblike(&g, 2, &[1; 6]).unwrap().iter().map(|w| to_rational(&bold_value_table(w, &space))).collect();
        let report = sample_positivity(&webs, 40, 1).unwrap();
        assert_eq!(report.evaluations, 40 * webs.len());
        assert!(report.counterexamples.is_empty());
    }
}
