//! The ring-operations contract shared by every coefficient type.

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Commutative ring with a partial inverse.
///
/// Generic geometry code (Koszul connection, curvature, linear algebra) is
/// written against this trait so the same path serves exact rationals,
/// truncated power series and functions of ρ.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, or `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }
}

/// Rings carrying the derivation d/dρ.
pub trait RhoDerivation: Ring {
    fn d_rho(&self) -> Self;
}

/// Ordered fields, needed for signature computations.
pub trait OrderedField: Ring {
    /// -1, 0 or 1.
    fn signum(&self) -> i32;
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
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl OrderedField for Rational {
    fn signum(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Sum of an iterator of ring elements.
pub fn ring_sum<R: Ring, I: IntoIterator<Item = R>>(it: I) -> R {
    it.into_iter().fold(R::zero(), |acc, x| acc + x)
}
