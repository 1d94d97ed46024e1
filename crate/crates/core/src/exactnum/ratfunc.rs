//! Univariate rational functions in ρ over a coefficient field.

use core::ops::{Add, Mul, Neg, Sub};

use super::ring::{Rational, Ring};
use super::upoly::UPoly;

/// `num/den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K> {
    num: UPoly<K>,
    den: UPoly<K>,
}

impl<K: Ring> RatFunc<K> {
    /// Reduces to canonical form. Returns `None` for a zero denominator.
    pub fn new(num: UPoly<K>, den: UPoly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = UPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().try_inv().expect("coefficient ring must be a field");
        Some(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn poly(p: UPoly<K>) -> Self {
        RatFunc { num: p, den: UPoly::constant(K::one()) }
    }

    pub fn constant(c: K) -> Self {
        Self::poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn num(&self) -> &UPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        // (n'd − nd')/d²
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at ρ = x, or `None` when the denominator vanishes there.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        let inv = d.try_inv()?;
        Some(self.num.eval(x) * inv)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&K::from_rational(q))
    }
}

impl<K: Ring> Add for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn add(self, o: &RatFunc<K>) -> RatFunc<K> {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).unwrap()
    }
}

impl<K: Ring> Sub for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn sub(self, o: &RatFunc<K>) -> RatFunc<K> {
        self + &(-o)
    }
}

impl<K: Ring> Mul for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn mul(self, o: &RatFunc<K>) -> RatFunc<K> {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl<K: Ring> Neg for &RatFunc<K> {
    type Output = RatFunc<K>;
    fn neg(self) -> RatFunc<K> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ring::int;
    use alloc::vec;

    fn p(cs: &[i64]) -> UPoly<Rational> {
        UPoly::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn canonical_form_is_unique() {
        // (2ρ+4)/(ρ²+4ρ+4) = 2/(ρ+2)
        let a = RatFunc::new(p(&[4, 2]), p(&[4, 4, 1])).unwrap();
        let b = RatFunc::new(p(&[2]), p(&[2, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den(), &p(&[2, 1]));
    }

    #[test]
    fn derivative_of_reciprocal() {
        // d/dρ 1/(2+ρ) = -1/(2+ρ)^2
        let f = RatFunc::new(p(&[1]), p(&[2, 1])).unwrap();
        let expect = RatFunc::new(p(&[-1]), p(&[4, 4, 1])).unwrap();
        assert_eq!(f.derivative(), expect);
    }

    #[test]
    fn pole_evaluation() {
        let f = RatFunc::new(p(&[1]), UPoly::from_coeffs(vec![int(0), int(1)])).unwrap();
        assert!(f.eval(&int(0)).is_none());
        assert_eq!(f.eval(&int(2)), Some(crate::exactnum::ring::rat(1, 2)));
    }
}
