use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Side, TaggedError};
use crate::exact::{int, Rational};
use crate::subsets::{submasks_of_size, wedge_sign};

/// A homogeneous element of the exterior algebra on `E_1..E_r`, keyed by the
/// bitmask of each basis subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    r: usize,
    grade: usize,
    coeffs: BTreeMap<u8, Rational>,
}

fn full(r: usize) -> u8 {
    ((1u16 << r) - 1) as u8
}

impl ExteriorElement {
    pub fn zero(r: usize, grade: usize) -> Self {
        ExteriorElement { r, grade, coeffs: BTreeMap::new() }
    }

    /// `E_{i_1} ∧ ... ∧ E_{i_a}` for the given 1-based colors, in the given order.
    pub fn basis(r: usize, colors: &[usize]) -> Self {
        let mut x = ExteriorElement { r, grade: 0, coeffs: BTreeMap::from([(0u8, Rational::one())]) };
        for &c in colors {
            x = x.wedge_with(&ExteriorElement {
                r,
                grade: 1,
                coeffs: BTreeMap::from([(1u8 << (c - 1), Rational::one())]),
            });
        }
        x
    }

    pub fn from_mask(r: usize, mask: u8) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(mask, Rational::one());
        ExteriorElement { r, grade: mask.count_ones() as usize, coeffs }
    }

    pub fn from_terms(r: usize, grade: usize, terms: impl IntoIterator<Item = (u8, Rational)>) -> Self {
        let mut x = ExteriorElement::zero(r, grade);
        for (m, c) in terms {
            assert_eq!(m.count_ones() as usize, grade, "term of the wrong grade");
            x.add_term(m, c);
        }
        x
    }

    fn add_term(&mut self, m: u8, c: Rational) {
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &Rational)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, mask: u8) -> Rational {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    fn wedge_with(&self, other: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero(self.r, self.grade + other.grade);
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                let s = wedge_sign(a as u32, b as u32);
                if s != 0 {
                    out.add_term(a | b, x * y * int(s));
                }
            }
        }
        out
    }
}

/// The exterior product `x_1 ∧ ... ∧ x_s`.
pub fn wedge(xs: &[ExteriorElement]) -> Result<ExteriorElement, TaggedError> {
    let Some(first) = xs.first() else {
        return Err(TaggedError::Grade("wedge of an empty list has no rank".into()));
    };
    let r = first.r;
    let total: usize = xs.iter().map(|x| x.grade).sum();
    if total > r || xs.iter().any(|x| x.r != r) {
        return Err(TaggedError::Grade(format!("grades sum to {total} > r = {r}")));
    }
    Ok(xs[1..].iter().fold(first.clone(), |acc, x| acc.wedge_with(x)))
}

/// Ordered splittings `(T_1, ..., T_s)` of `mask` with `|T_i| = blocks[i]`,
/// each with the sign `c` of `E_{T_1} ∧ ... ∧ E_{T_s} = c·E_mask`.
pub(crate) fn splittings(mask: u8, blocks: &[usize]) -> Vec<(Vec<u8>, i64)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(blocks.len());
    fn rec(rest: u8, blocks: &[usize], sign: i64, cur: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, i64)>) {
        let Some((&b, tail)) = blocks.split_first() else {
            if rest == 0 {
                out.push((cur.clone(), sign));
            }
            return;
        };
        for t in submasks_of_size(rest as u32, b as u32) {
            let t = t as u8;
            let s = wedge_sign(t as u32, (rest & !t) as u32);
            cur.push(t);
            rec(rest & !t, tail, sign * s, cur, out);
            cur.pop();
        }
    }
    rec(mask, blocks, 1, &mut cur, &mut out);
    out
}

/// The shuffle coproduct of `x` into tensor factors of grades `blocks`,
/// as a formal sum of tensor products of basis subsets.
pub fn shuffle(x: &ExteriorElement, blocks: &[usize]) -> Result<Vec<(Vec<u8>, Rational)>, TaggedError> {
    if blocks.iter().sum::<usize>() != x.grade {
        return Err(TaggedError::Grade(format!("blocks {blocks:?} do not sum to grade {}", x.grade)));
    }
    let mut acc: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
    for (m, c) in x.terms() {
        for (parts, s) in splittings(m, blocks) {
            *acc.entry(parts).or_insert_with(Rational::zero) += c * int(s);
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Sign of a pair tag on basis subsets, `0` unless they are complementary.
pub(crate) fn pair_sign(r: usize, tu: u8, tv: u8, side: Side) -> i64 {
    if tu & tv != 0 || tu | tv != full(r) {
        return 0;
    }
    match side {
        Side::Left => wedge_sign(tu as u32, tv as u32),
        Side::Right => wedge_sign(tv as u32, tu as u32),
    }
}

/// The pair tag: the coefficient of the volume form in `x ∧ y` (left) or `y ∧ x` (right).
pub fn pair_tag_eval(x: &ExteriorElement, y: &ExteriorElement, side: Side) -> Result<Rational, TaggedError> {
    if x.r != y.r || x.grade + y.grade != x.r {
        return Err(TaggedError::Grade(format!("pairing grades {} and {} in rank {}", x.grade, y.grade, x.r)));
    }
    let mut total = Rational::zero();
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            let s = pair_sign(x.r, a, b, side);
            if s != 0 {
                total += c * d * int(s);
            }
        }
    }
    Ok(total)
}

/// The source tag: `Σ c·(E_{T_u} ⊗ E_{T_v})` over `|T_u| = a`, where
/// `E_{T_v} ∧ E_{T_u} = c·vol` on the left side and `E_{T_u} ∧ E_{T_v} = c·vol` on the right.
pub fn source_tag_expand(r: usize, a: usize, side: Side) -> Result<Vec<(u8, u8, i64)>, TaggedError> {
    if a > r {
        return Err(TaggedError::Grade(format!("source grade {a} exceeds r = {r}")));
    }
    Ok(source_terms(r, a, side))
}

pub(crate) fn source_terms(r: usize, a: usize, side: Side) -> Vec<(u8, u8, i64)> {
    let f = full(r);
    submasks_of_size(f as u32, a as u32)
        .into_iter()
        .map(|tu| {
            let tu = tu as u8;
            let tv = f & !tu;
            let c = match side {
                Side::Left => wedge_sign(tv as u32, tu as u32),
                Side::Right => wedge_sign(tu as u32, tv as u32),
            };
            (tu, tv, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;

    fn e(r: usize, colors: &[usize]) -> ExteriorElement {
        ExteriorElement::basis(r, colors)
    }

    #[test]
    fn wedge_basics() {
        let r = 3;
        assert_eq!(wedge(&[e(r, &[1]), e(r, &[2])]).unwrap(), e(r, &[1, 2]));
        assert_eq!(e(r, &[2, 1]).coefficient(0b011), int(-1));
        assert!(wedge(&[e(r, &[1]), e(r, &[1])]).unwrap().is_zero());
        assert!(wedge(&[e(2, &[1, 2]), e(2, &[1])]).is_err());
    }

    #[test]
    fn shuffle_example() {
        let terms = shuffle(&e(3, &[1, 2, 3]), &[1, 2]).unwrap();
        let expected = vec![
            (vec![0b001, 0b110], int(1)),
            (vec![0b010, 0b101], int(-1)),
            (vec![0b100, 0b011], int(1)),
        ];
        assert_eq!(terms, expected);
        assert_eq!(shuffle(&e(3, &[2, 3]), &[2]).unwrap(), vec![(vec![0b110], int(1))]);
        let big = shuffle(&e(5, &[1, 2, 3, 4, 5]), &[2, 1, 2]).unwrap();
        assert_eq!(big.len() as i64, binomial(5, 2) * binomial(3, 1));
        assert!(shuffle(&e(3, &[1, 2]), &[1]).is_err());
    }

    #[test]
    fn pairings_from_the_sl4_example() {
        let v = pair_tag_eval(&e(4, &[1, 4, 3]), &e(4, &[2]), Side::Left).unwrap();
        assert_eq!(v, int(-1));
        let v = pair_tag_eval(&e(4, &[2, 3, 1]), &e(4, &[4]), Side::Left).unwrap();
        assert_eq!(v, int(1));
    }

    #[test]
    fn switching_sides() {
        for r in 1..=5 {
            for a in 0..=r {
                let s: Vec<usize> = (1..=a).collect();
                let c: Vec<usize> = (a + 1..=r).collect();
                let left = pair_tag_eval(&e(r, &s), &e(r, &c), Side::Left).unwrap();
                let right = pair_tag_eval(&e(r, &s), &e(r, &c), Side::Right).unwrap();
                let expected = if (a * (r - a)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(right, left * int(expected));
                let l = source_tag_expand(r, a, Side::Left).unwrap();
                let rr = source_tag_expand(r, a, Side::Right).unwrap();
                for (x, y) in l.iter().zip(&rr) {
                    assert_eq!(y.2, x.2 * expected);
                }
            }
        }
    }
}
