use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{MultiPoly, Rational};

/// Commutative ring operations shared by weights and invariant values.
///
/// Method names avoid the `std::ops` names so that both can be in scope.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_int(value: i64) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.times(self);
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_int(value: i64) -> Self {
        Rational::from_integer(value.into())
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_int(value: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(value.into()))
    }
}

/// Machine integers for combinatorial tables; overflow is a bug and panics.
impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i64 overflow in table arithmetic")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i64 overflow in table arithmetic")
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn from_int(value: i64) -> Self {
        value
    }
}
