//! Exact arithmetic: rationals, sparse polynomials and rational linear algebra.

mod matrix;
mod poly;
mod rational;
mod ring;

pub use matrix::{independent_rows, integer_rank, matrix_rank, matrix_solve, ExactMatrix, RowSpace};
pub use poly::{Monomial, MultiPoly};
pub use rational::{format_rational, int, is_positive, parse_rational, rat, to_i64, Rational};
pub use ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unassigned variable `{0}`")]
    Unassigned(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// `(-1)^(number of strict inversions)`; equal keys never invert.
pub fn perm_sign<T: Ord>(word: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Binomial coefficient as `i64`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
