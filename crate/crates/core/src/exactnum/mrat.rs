//! Rational functions in (x, y, p, r, z) over ℚ.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};


use super::mpoly::{owned_ops, MPoly, NVARS};
use super::ring::{Rational, Ring};
use crate::error::Error;

/// `num/den` with gcd-reduced parts and a monic (lex-leading coefficient 1)
/// denominator, so equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultivarRational {
    num: MPoly,
    den: MPoly,
}

impl MultivarRational {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::poly(MPoly::zero());
        }
        let g = MPoly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().expect("nonzero").1.recip();
        MultivarRational { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn poly(p: MPoly) -> Self {
        MultivarRational { num: p, den: MPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(MPoly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        Self::poly(MPoly::var(i))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn derivative(&self, v: usize) -> Self {
        let top = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::reduce(top, &self.den * &self.den)
    }

    /// Value at a rational point, `None` on a vanishing denominator.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Option<Rational> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| self.num.eval(point) / d)
    }
}

/// Canonical form of `num/den`: gcd-reduced and sign-normalized; idempotent.
pub fn normalize_ratfunc(num: MPoly, den: MPoly) -> Result<MultivarRational, Error> {
    MultivarRational::new(num, den)
}

impl Add for &MultivarRational {
    type Output = MultivarRational;
    fn add(self, o: &MultivarRational) -> MultivarRational {
        if self.den == o.den {
            return MultivarRational::reduce(&self.num + &o.num, self.den.clone());
        }
        MultivarRational::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &MultivarRational {
    type Output = MultivarRational;
    fn sub(self, o: &MultivarRational) -> MultivarRational {
        self + &(-o)
    }
}

impl Mul for &MultivarRational {
    type Output = MultivarRational;
    fn mul(self, o: &MultivarRational) -> MultivarRational {
        if self.is_zero() || o.is_zero() {
            return MultivarRational::poly(MPoly::zero());
        }
        MultivarRational::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &MultivarRational {
    type Output = MultivarRational;
    fn neg(self) -> MultivarRational {
        MultivarRational { num: -&self.num, den: self.den.clone() }
    }
}

owned_ops!(MultivarRational);

impl Ring for MultivarRational {
    fn zero() -> Self {
        Self::poly(MPoly::zero())
    }
    fn one() -> Self {
        Self::poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl fmt::Display for MultivarRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MPoly::one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl Default for MultivarRational {
    fn default() -> Self {
        <Self as Ring>::zero()
    }
}
