use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::ExactError;

/// Dense rational matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row `i` scaled to a primitive integer vector.
    fn integer_row(&self, i: usize) -> Vec<BigInt> {
        let row = self.row(i);
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        row.iter().map(|x| (x * &l).to_integer()).collect()
    }
}

/// Rank over the rationals.
pub fn matrix_rank(m: &ExactMatrix) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.integer_row(i)).collect();
    independent_rows_big(&rows).len()
}

/// Exact solution of `M x = b`: the reduced-echelon particular solution with
/// free variables zero, or `None` when the system is inconsistent.
pub fn matrix_solve(m: &ExactMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, ExactError> {
    if b.len() != m.rows() {
        return Err(ExactError::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, p);
        let inv = a[pr][c].recip();
        for x in a[pr].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = a[pr].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    if a[pr..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Ok(Some(x))
}

/// Incrementally maintained row echelon basis over the integers.
///
/// Rows are kept primitive (content one). A fast `i128` path is used until an
/// intermediate value overflows, after which all rows are promoted to `BigInt`.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    small: Option<Vec<(usize, Vec<i128>)>>,
    big: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace {
            small: Some(Vec::new()),
            big: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.small {
            Some(rows) => rows.len(),
            None => self.big.len(),
        }
    }

    /// Adds `row` if it is independent of the current basis; returns whether it was.
    pub fn insert(&mut self, row: &[i64]) -> bool {
        if let Some(basis) = &mut self.small {
            let v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
            match reduce_small(basis, v) {
                Ok(None) => return false,
                Ok(Some(r)) => {
                    let p = r.iter().position(|x| *x != 0).unwrap();
                    basis.push((p, r));
                    return true;
                }
                Err(()) => {
                    self.big = basis
                        .iter()
                        .map(|(p, r)| (*p, r.iter().map(|&x| BigInt::from(x)).collect()))
                        .collect();
                    self.small = None;
                }
            }
        }
        let v: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        self.insert_big(v)
    }

    pub fn insert_big(&mut self, row: Vec<BigInt>) -> bool {
        if let Some(basis) = self.small.take() {
            self.big = basis
                .iter()
                .map(|(p, r)| (*p, r.iter().map(|&x| BigInt::from(x)).collect()))
                .collect();
        }
        match reduce_big(&self.big, row) {
            None => false,
            Some(r) => {
                let p = r.iter().position(|x| !x.is_zero()).unwrap();
                self.big.push((p, r));
                true
            }
        }
    }

    /// Whether `row` lies in the span of the basis.
    pub fn contains(&self, row: &[i64]) -> bool {
        match &self.small {
            Some(basis) => {
                let v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
                match reduce_small(basis, v) {
                    Ok(r) => r.is_none(),
                    Err(()) => {
                        let big: Vec<(usize, Vec<BigInt>)> = basis
                            .iter()
                            .map(|(p, r)| (*p, r.iter().map(|&x| BigInt::from(x)).collect()))
                            .collect();
                        reduce_big(&big, row.iter().map(|&x| BigInt::from(x)).collect()).is_none()
                    }
                }
            }
            None => reduce_big(&self.big, row.iter().map(|&x| BigInt::from(x)).collect()).is_none(),
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn make_primitive_small(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd_i128(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if let Some(first) = v.iter().find(|x| **x != 0) {
        if *first < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn reduce_small(basis: &[(usize, Vec<i128>)], mut v: Vec<i128>) -> Result<Option<Vec<i128>>, ()> {
    make_primitive_small(&mut v);
    for (p, b) in basis {
        let x = v[*p];
        if x == 0 {
            continue;
        }
        let bp = b[*p];
        let g = gcd_i128(x, bp);
        let (fv, fb) = (bp / g, x / g);
        for (vi, bi) in v.iter_mut().zip(b) {
            let lhs = vi.checked_mul(fv).ok_or(())?;
            let rhs = bi.checked_mul(fb).ok_or(())?;
            *vi = lhs.checked_sub(rhs).ok_or(())?;
        }
        make_primitive_small(&mut v);
    }
    Ok(if v.iter().all(|x| *x == 0) { None } else { Some(v) })
}

fn make_primitive_big(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        v.iter_mut().for_each(|x| *x /= &g);
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
}

fn reduce_big(basis: &[(usize, Vec<BigInt>)], mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
    make_primitive_big(&mut v);
    for (p, b) in basis {
        if v[*p].is_zero() {
            continue;
        }
        let g = v[*p].gcd(&b[*p]);
        let fv = &b[*p] / &g;
        let fb = &v[*p] / &g;
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = &*vi * &fv - bi * &fb;
        }
        make_primitive_big(&mut v);
    }
    if v.iter().all(Zero::is_zero) {
        None
    } else {
        Some(v)
    }
}

/// Indices of a maximal independent prefix-greedy subset of integer rows.
pub fn independent_rows(rows: &[Vec<i64>]) -> Vec<usize> {
    let mut space = RowSpace::new();
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if space.insert(r) {
            out.push(i);
        }
    }
    out
}

fn independent_rows_big(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let small: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    if let Some(small) = small {
        return independent_rows(&small);
    }
    let mut space = RowSpace::new();
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if space.insert_big(r.clone()) {
            out.push(i);
        }
    }
    out
}

/// Rank of integer rows, via the same incremental basis.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    independent_rows(rows).len()
}
