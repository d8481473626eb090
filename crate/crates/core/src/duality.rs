//! Pairing matrices between small web bases of `W(r, n)` and `W(k, n)`.

use rand::Rng;

use crate::exact::{integer_rank, matrix_solve, perm_sign, ExactMatrix, Rational, Ring};
use crate::gallery::{block_web, claw_web, even_angles};
use crate::invariants::{
    determinant, evaluate_on_matrix, pair_rational, permute, plucker_monomials, to_rational, InvariantError,
    PluckerExpression,
};
use crate::weblike::{bold_value_table, Invariant, LabelSpace, WeblikeSubgraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("{0}")]
    Shape(String),
    #[error("basis `{label}` has rank {rank} but {count} elements")]
    Rank { label: String, rank: usize, count: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A named family of invariants in `W(r, n)` with linearly independent tables.
#[derive(Clone, Debug)]
pub struct WebBasis {
    pub label: String,
    pub r: usize,
    pub n: usize,
    pub elements: Vec<(String, Invariant<Rational>)>,
}

impl WebBasis {
    pub fn new(label: &str, elements: Vec<(String, Invariant<Rational>)>) -> Result<Self, DualityError> {
        let Some((_, first)) = elements.first() else {
            return Err(DualityError::Shape(format!("basis `{label}` is empty")));
        };
        let (r, n) = (first.space().r(), first.space().n());
        if elements.iter().any(|(_, x)| x.space().lambda() != first.space().lambda() || x.space().r() != r) {
            return Err(DualityError::Shape(format!("basis `{label}` mixes invariant spaces")));
        }
        let rows: Vec<Vec<i64>> = elements
            .iter()
            .map(|(_, x)| x.values().iter().map(crate::exact::to_i64).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()
            .ok_or_else(|| DualityError::Shape(format!("basis `{label}` has non-integer values")))?;
        let rank = integer_rank(&rows);
        if rank != elements.len() {
            return Err(DualityError::Rank { label: label.into(), rank, count: elements.len() });
        }
        Ok(WebBasis { label: label.into(), r, n, elements })
    }

    pub fn from_webs(label: &str, webs: Vec<(String, WeblikeSubgraph)>) -> Result<Self, DualityError> {
        let mut elements = Vec::with_capacity(webs.len());
        for (name, w) in webs {
            let space = LabelSpace::new(w.r(), w.lambda()).map_err(InvariantError::from)?;
            elements.push((name, to_rational(&bold_value_table(&w, &space))));
        }
        WebBasis::new(label, elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Every element composed with the permutation `sigma`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self, DualityError> {
        let elements = self
            .elements
            .iter()
            .map(|(name, x)| Ok((name.clone(), permute(x, sigma)?)))
            .collect::<Result<Vec<_>, InvariantError>>()?;
        WebBasis::new(&self.label, elements)
    }
}

fn noncrossing(points: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in (0..rest.len()).step_by(2) {
        let inside = &rest[..p];
        let outside = &rest[p + 1..];
        for a in noncrossing(inside) {
            for b in noncrossing(outside) {
                let mut m = vec![vec![first, rest[p]]];
                m.extend(a.iter().cloned());
                m.extend(b.iter().cloned());
                out.push(m);
            }
        }
    }
    out
}

/// The Catalan-many noncrossing perfect matchings of `1..=n` as SL2 webs.
pub fn crossingless_matchings(n: usize) -> Result<WebBasis, DualityError> {
    if n == 0 || n % 2 == 1 {
        return Err(DualityError::Shape(format!("crossingless matchings need a positive even n, got {n}")));
    }
    let angles = even_angles(n, 0.0);
    let points: Vec<usize> = (1..=n).collect();
    let webs = noncrossing(&points)
        .into_iter()
        .map(|m| {
            let name = m.iter().map(|a| format!("({},{})", a[0], a[1])).collect::<Vec<_>>().join("");
            (name, block_web(&angles, &m))
        })
        .collect();
    WebBasis::from_webs(&format!("W(2,{n}) matchings"), webs)
}

/// The non-elliptic SL3 webs with six boundary points: three pairs of tripods
/// and two rotations of the claw.
pub fn sl3_basis_n6() -> Result<WebBasis, DualityError> {
    let angles = even_angles(6, 0.0);
    let mut webs = Vec::new();
    for p in 1..=3 {
        let a: Vec<usize> = (0..3).map(|i| (p - 1 + i) % 6 + 1).collect();
        let b: Vec<usize> = (3..6).map(|i| (p - 1 + i) % 6 + 1).collect();
        webs.push((format!("tripods{a:?}{b:?}"), block_web(&angles, &[a, b])));
    }
    for p in 1..=2 {
        webs.push((format!("claw{p}"), claw_web(p)));
    }
    WebBasis::from_webs("W(3,6) non-elliptic", webs)
}

/// Writes an SL_k invariant of `n` vectors as a polynomial in the `k × k`
/// minors of a `k × n` matrix, solving on random integer matrices. `order`
/// permutes the monomial spanning set before solving.
pub fn expand_invariant(
    x: &Invariant<Rational>,
    seed: u64,
    order: Option<&[usize]>,
) -> Result<PluckerExpression, DualityError> {
    let space = x.space();
    let (k, n) = (space.r(), space.n());
    let total: usize = space.lambda().iter().sum();
    if !total.is_multiple_of(k) {
        return Err(DualityError::Shape(format!("degree {total} is not a multiple of {k}")));
    }
    let r = total / k;
    let mut monomials = plucker_monomials(r, k, n, space.lambda());
    if let Some(order) = order {
        monomials = order.iter().map(|&i| monomials[i].clone()).collect();
    }
    let mut rng = crate::random::rng(seed);
    let count = monomials.len() + 8;
    let mut rows = Vec::with_capacity(count);
    let mut rhs = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m = ExactMatrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                m.set(i, j, Rational::from_int(rng.gen_range(-9..=9)));
            }
        }
        let minor = |set: &[usize]| {
            determinant((0..k).map(|i| set.iter().map(|&j| m.get(i, j - 1).clone()).collect()).collect())
        };
        rows.push(
            monomials
                .iter()
                .map(|mono| mono.iter().fold(Rational::one(), |acc, s| acc * minor(s)))
                .collect::<Vec<_>>(),
        );
        rhs.push(evaluate_on_matrix(x, &m)?);
    }
    let matrix = ExactMatrix::from_rows(rows).map_err(InvariantError::from)?;
    let coeffs = matrix_solve(&matrix, &rhs)
        .map_err(InvariantError::from)?
        .ok_or_else(|| InvariantError::Inconsistent("invariant is not a polynomial in minors".into()))?;
    let mut f = PluckerExpression::new(r, k, n);
    for (mono, c) in monomials.into_iter().zip(coeffs) {
        if !c.is_zero() {
            f.add_term(mono, c);
        }
    }
    Ok(f)
}

/// `M[i][j] = ⟨A_i, F_j⟩` where `F_j` expands `B_j` in minors.
pub fn duality_matrix(a: &WebBasis, b: &WebBasis) -> Result<ExactMatrix, DualityError> {
    duality_matrix_with(a, b, 7, false)
}

fn duality_matrix_with(a: &WebBasis, b: &WebBasis, seed: u64, reversed: bool) -> Result<ExactMatrix, DualityError> {
    if a.n != b.n || a.r * b.r != a.n {
        return Err(DualityError::Shape(format!(
            "bases in W({}, {}) and W({}, {}) are not dual",
            a.r, a.n, b.r, b.n
        )));
    }
    let mut m = ExactMatrix::zeros(a.len(), b.len());
    for (j, (_, y)) in b.elements.iter().enumerate() {
        let count = plucker_monomials(a.r, b.r, b.n, y.space().lambda()).len();
        let order: Vec<usize> = if reversed { (0..count).rev().collect() } else { (0..count).collect() };
        let f = expand_invariant(y, seed + j as u64, Some(&order))?;
        for (i, (_, x)) in a.elements.iter().enumerate() {
            m.set(i, j, pair_rational(x, &f)?);
        }
    }
    Ok(m)
}

/// Whether the matrix is square with exactly one `±1` per row and column and
/// zeros elsewhere.
pub fn check_signed_permutation(m: &ExactMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let unit = |x: &Rational| *x == Rational::one() || *x == -Rational::one();
    let lines_ok = |get: &dyn Fn(usize, usize) -> Rational| {
        (0..m.rows()).all(|i| {
            let entries: Vec<Rational> = (0..m.cols()).map(|j| get(i, j)).filter(|x| !x.is_zero()).collect();
            entries.len() == 1 && unit(&entries[0])
        })
    };
    lines_ok(&|i, j| m.get(i, j).clone()) && lines_ok(&|i, j| m.get(j, i).clone())
}

/// Results of the structural checks on a duality matrix.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub matrix: ExactMatrix,
    pub signed_permutation: bool,
    pub expansion_independent: bool,
    pub rotation_twist: bool,
}

/// Computes the matrix, re-solves with a reversed spanning set, and checks
/// that rotating both bases one step scales the matrix by the sign of the
/// `n`-cycle.
pub fn duality_report(a: &WebBasis, b: &WebBasis) -> Result<DualityReport, DualityError> {
    let matrix = duality_matrix(a, b)?;
    let again = duality_matrix_with(a, b, 1234, true)?;
    let n = a.n;
    let rho: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let rotated = duality_matrix(&a.permuted(&rho)?, &b.permuted(&rho)?)?;
    let sign = Rational::from_int(perm_sign(&rho));
    let rotation_twist =
        (0..matrix.rows()).all(|i| (0..matrix.cols()).all(|j| *rotated.get(i, j) == matrix.get(i, j) * &sign));
    Ok(DualityReport { signed_permutation: check_signed_permutation(&matrix), expansion_independent: again == matrix, rotation_twist, matrix })
}
