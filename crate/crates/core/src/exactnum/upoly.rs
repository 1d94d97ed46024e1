//! Dense univariate polynomials in ρ over a coefficient field.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::ring::{Rational, Ring};

/// Polynomial with coefficients stored low degree first. No trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Ring> UPoly<K> {
    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·ρ^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// ρ itself.
    pub fn var() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().try_inv().expect("coefficient ring must be a field");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![K::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().try_inv().expect("coefficient ring must be a field");
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(K::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<K: Ring> Add for &UPoly<K> {
    type Output = UPoly<K>;
    fn add(self, o: &UPoly<K>) -> UPoly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<K: Ring> Sub for &UPoly<K> {
    type Output = UPoly<K>;
    fn sub(self, o: &UPoly<K>) -> UPoly<K> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<K: Ring> Mul for &UPoly<K> {
    type Output = UPoly<K>;
    fn mul(self, o: &UPoly<K>) -> UPoly<K> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl<K: Ring> Neg for &UPoly<K> {
    type Output = UPoly<K>;
    fn neg(self) -> UPoly<K> {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}
