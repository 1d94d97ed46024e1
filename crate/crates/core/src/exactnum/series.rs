//! Truncated power series in ρ with exact ℚ(√2) coefficients.
//!
//! Precision is tracked per value: a series of order `N` knows its
//! coefficients of ρ⁰…ρᴺ. Products use the valuation-aware rule
//! `order(ab) = min(order(a) + val(b), order(b) + val(a))`, so multiplying by
//! ρ gains one order and differentiating loses one. Negative orders are
//! allowed and mean "nothing known"; `ρ·f''` is still correct at ρ⁰ for an
//! order-1 `f`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::quad::QuadExt;
use super::ratfunc::RatFunc;
use super::ring::{int, Rational, Ring, RhoDerivation};
use crate::error::Error;

/// Marker order for exactly known (polynomial) series.
pub const EXACT: i64 = i64::MAX;

#[derive(Clone, Debug)]
pub struct PowerSeries {
    coeffs: Vec<QuadExt>,
    order: i64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

impl PowerSeries {
    /// Series of truncation order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<QuadExt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        let order = coeffs.len() as i64 - 1;
        PowerSeries { coeffs, order }
    }

    /// Series from rational coefficients.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().cloned().map(QuadExt::rational).collect())
    }

    /// Pads or truncates `coeffs` to the given order.
    pub fn with_order(mut coeffs: Vec<QuadExt>, order: i64) -> Self {
        if order == EXACT {
            return Self::exact(coeffs);
        }
        let len = (order + 1).max(0) as usize;
        coeffs.resize(len, QuadExt::zero());
        PowerSeries { coeffs, order }
    }

    /// A polynomial known to all orders.
    pub fn exact(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PowerSeries { coeffs, order: EXACT }
    }

    pub fn constant(c: QuadExt, order: i64) -> Self {
        Self::with_order(vec![c], order)
    }

    /// Truncation order, `None` if the series is exact.
    pub fn order(&self) -> Option<i64> {
        (self.order != EXACT).then_some(self.order)
    }

    /// Known coefficients (for exact series, up to the last nonzero one).
    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    /// Coefficient of ρᵏ. Beyond the truncation order this is unknown and
    /// reported as zero.
    pub fn coeff(&self, k: usize) -> QuadExt {
        self.coeffs.get(k).cloned().unwrap_or_else(QuadExt::zero)
    }

    /// Index of the first nonzero coefficient, or `order + 1` when none is known.
    pub fn valuation(&self) -> i64 {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => i as i64,
            None => sat_add(self.order, 1),
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = self.order.min(order);
        Self::with_order(self.coeffs.clone(), o)
    }

    /// Multiplies by ρᵏ.
    pub fn shift(&self, k: usize) -> Self {
        if self.order == EXACT {
            let mut c = vec![QuadExt::zero(); k];
            c.extend(self.coeffs.iter().cloned());
            return Self::exact(c);
        }
        let mut c = vec![QuadExt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::with_order(c, self.order + k as i64)
    }

    pub fn derivative(&self) -> Self {
        let c: Vec<QuadExt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.scale(&int(k as i64)))
            .collect();
        if self.order == EXACT {
            Self::exact(c)
        } else {
            Self::with_order(c, self.order - 1)
        }
    }

    /// Multiplicative inverse; exists iff the constant coefficient is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        if self.order < 0 {
            return None;
        }
        let a0 = self.coeff(0);
        let inv0 = a0.try_inv()?;
        if self.order == EXACT {
            // only constants have polynomial inverses
            return (self.coeffs.len() == 1).then(|| Self::exact(vec![inv0]));
        }
        let n = self.order as usize;
        let mut b = vec![QuadExt::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = QuadExt::zero();
            for i in 1..=k {
                let ai = self.coeff(i);
                if !ai.is_zero() {
                    acc = acc + ai * b[k - i].clone();
                }
            }
            b[k] = -(acc * inv0.clone());
        }
        Some(PowerSeries { coeffs: b, order: self.order })
    }

    /// Taylor expansion of a rational function about ρ = 0.
    pub fn from_ratfunc(f: &RatFunc<QuadExt>, order: usize) -> Result<Self, Error> {
        let o = order as i64;
        let num = Self::with_order(f.num().coeffs().to_vec(), o);
        let den = Self::with_order(f.den().coeffs().to_vec(), o);
        let inv = den.inverse().ok_or(Error::PoleAtZero)?;
        Ok(&num * &inv)
    }

    /// Expansion of s = √(2+ρ) = √2·(1 + ρ/2)^{1/2} through `order`.
    pub fn sqrt_two_plus_rho(order: usize) -> Self {
        // binom(1/2, k)·2^{-k}, accumulated by the ratio (1/2 − k)/(k+1)/2.
        let mut c = Vec::with_capacity(order + 1);
        let mut term = int(1);
        let half = Rational::new(1.into(), 2.into());
        for k in 0..=order {
            c.push(QuadExt::new(int(0), term.clone()));
            let kk = int(k as i64);
            term = term * (&half - &kk) / (kk + int(1)) * &half;
        }
        Self::with_order(c, order as i64)
    }
}

impl PartialEq for PowerSeries {
    /// Equality within the common precision.
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, o: &PowerSeries) -> PowerSeries {
        let order = self.order.min(o.order);
        let len = self.coeffs.len().max(o.coeffs.len());
        let c = (0..len).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        PowerSeries::with_order(c, order)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, o: &PowerSeries) -> PowerSeries {
        let order = self.order.min(o.order);
        let len = self.coeffs.len().max(o.coeffs.len());
        let c = (0..len).map(|k| &self.coeff(k) - &o.coeff(k)).collect();
        PowerSeries::with_order(c, order)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, o: &PowerSeries) -> PowerSeries {
        let order = sat_add(self.order, o.valuation()).min(sat_add(o.order, self.valuation()));
        let len = if order == EXACT {
            (self.coeffs.len() + o.coeffs.len()).saturating_sub(1)
        } else {
            (order + 1).max(0) as usize
        };
        let mut c = vec![QuadExt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        PowerSeries::with_order(c, order)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), order: self.order }
    }
}

impl Add for PowerSeries {
    type Output = PowerSeries;
    fn add(self, o: PowerSeries) -> PowerSeries {
        &self + &o
    }
}

impl Sub for PowerSeries {
    type Output = PowerSeries;
    fn sub(self, o: PowerSeries) -> PowerSeries {
        &self - &o
    }
}

impl Mul for PowerSeries {
    type Output = PowerSeries;
    fn mul(self, o: PowerSeries) -> PowerSeries {
        &self * &o
    }
}

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}

impl Ring for PowerSeries {
    fn zero() -> Self {
        PowerSeries::exact(Vec::new())
    }
    fn one() -> Self {
        PowerSeries::exact(vec![QuadExt::one()])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(q: &Rational) -> Self {
        PowerSeries::exact(vec![QuadExt::rational(q.clone())])
    }
}

impl RhoDerivation for PowerSeries {
    fn d_rho(&self) -> Self {
        self.derivative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ring::rat;

    fn s(cs: &[(i64, i64)]) -> PowerSeries {
        PowerSeries::from_rationals(&cs.iter().map(|&(a, b)| rat(a, b)).collect::<Vec<_>>())
    }

    #[test]
    fn inverse_of_geometric() {
        // 1/(1-ρ) = 1 + ρ + ρ² + …
        let a = s(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.inverse().unwrap(), s(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
        assert!(s(&[(0, 1), (1, 1)]).inverse().is_none());
    }

    #[test]
    fn precision_rules() {
        let a = s(&[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(a.order(), Some(2));
        assert_eq!(a.derivative().order(), Some(1));
        assert_eq!(a.shift(1).order(), Some(3));
        let rho = PowerSeries::exact(vec![QuadExt::zero(), QuadExt::one()]);
        assert_eq!((&rho * &a).order(), Some(3));
        let dd = a.derivative().derivative().derivative();
        assert_eq!(dd.order(), Some(-1));
        let r = &rho * &dd;
        assert_eq!(r.order(), Some(0));
        assert!(r.is_zero());
    }

    #[test]
    fn sqrt_series_squares() {
        let sq = PowerSeries::sqrt_two_plus_rho(6);
        let two_plus_rho = PowerSeries::with_order(
            vec![QuadExt::rational(rat(2, 1)), QuadExt::one()],
            6,
        );
        assert_eq!(&sq * &sq, two_plus_rho);
    }
}
