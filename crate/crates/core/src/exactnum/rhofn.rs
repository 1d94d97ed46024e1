//! Functions of ρ with the radical s = √(2+ρ) adjoined.

use alloc::vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::quad::QuadExt;
use super::ratfunc::RatFunc;
use super::ring::{int, Rational, Ring, RhoDerivation};
use super::series::PowerSeries;
use super::upoly::UPoly;
use crate::error::Error;

type Rf = RatFunc<QuadExt>;

/// `u(ρ) + v(ρ)·s` with `s² = 2 + ρ`; `u`, `v` rational functions over ℚ(√2).
///
/// The pair is a basis of the rank-2 module over ℚ(√2)(ρ), so equality is
/// componentwise and zero-testing is decidable.
#[derive(Clone, PartialEq, Debug)]
pub struct RhoFunction {
    u: Rf,
    v: Rf,
}

fn two_plus_rho() -> UPoly<QuadExt> {
    UPoly::from_coeffs(vec![QuadExt::from_i64(2), QuadExt::one()])
}

impl RhoFunction {
    pub fn new(u: Rf, v: Rf) -> Self {
        RhoFunction { u, v }
    }

    pub fn u(&self) -> &Rf {
        &self.u
    }

    pub fn v(&self) -> &Rf {
        &self.v
    }

    /// ρ.
    pub fn rho() -> Self {
        Self::new(Rf::poly(UPoly::var()), Rf::zero())
    }

    /// s = √(2+ρ).
    pub fn s() -> Self {
        Self::new(Rf::zero(), Rf::one())
    }

    /// √2 as a constant.
    pub fn sqrt2() -> Self {
        Self::constant(QuadExt::sqrt2())
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::new(Rf::constant(c), Rf::zero())
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(QuadExt::rational(q))
    }

    /// True when the value does not depend on ρ.
    pub fn is_constant(&self) -> bool {
        self.v.is_zero() && self.u.is_constant()
    }

    /// d/dρ with s′ = s/(2(2+ρ)).
    pub fn rho_derivative(&self) -> Self {
        let half_over = Rf::new(
            UPoly::constant(QuadExt::rational(Rational::new(1.into(), 2.into()))),
            two_plus_rho(),
        )
        .unwrap();
        let v_part = &self.v.derivative() + &(&self.v * &half_over);
        Self::new(self.u.derivative(), v_part)
    }

    /// Value at ρ = 0, where s = √2.
    pub fn evaluate_rho0(&self) -> Result<QuadExt, Error> {
        let zero = QuadExt::zero();
        let u0 = self.u.eval(&zero).ok_or(Error::PoleAtZero)?;
        let v0 = self.v.eval(&zero).ok_or(Error::PoleAtZero)?;
        Ok(u0 + v0 * QuadExt::sqrt2())
    }

    /// Exact Taylor coefficients about ρ = 0 through `order`.
    pub fn taylor_expand(&self, order: usize) -> Result<PowerSeries, Error> {
        let u = PowerSeries::from_ratfunc(&self.u, order)?;
        if self.v.is_zero() {
            return Ok(u);
        }
        let v = PowerSeries::from_ratfunc(&self.v, order)?;
        let s = PowerSeries::sqrt_two_plus_rho(order);
        Ok(&u + &(&v * &s))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(u + v s) = (u − v s)/(u² − v²(2+ρ))
        let norm = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &Rf::poly(two_plus_rho()));
        let ninv = norm.inv()?;
        Some(Self::new(&self.u * &ninv, &(-&self.v) * &ninv))
    }

    pub fn scale_quad(&self, c: &QuadExt) -> Self {
        Self::new(self.u.scale(c), self.v.scale(c))
    }
}

impl Add for &RhoFunction {
    type Output = RhoFunction;
    fn add(self, o: &RhoFunction) -> RhoFunction {
        RhoFunction::new(&self.u + &o.u, &self.v + &o.v)
    }
}

impl Sub for &RhoFunction {
    type Output = RhoFunction;
    fn sub(self, o: &RhoFunction) -> RhoFunction {
        RhoFunction::new(&self.u - &o.u, &self.v - &o.v)
    }
}

impl Mul for &RhoFunction {
    type Output = RhoFunction;
    fn mul(self, o: &RhoFunction) -> RhoFunction {
        let vv = &self.v * &o.v;
        let u = if vv.is_zero() {
            &self.u * &o.u
        } else {
            &(&self.u * &o.u) + &(&vv * &Rf::poly(two_plus_rho()))
        };
        let v = &(&self.u * &o.v) + &(&self.v * &o.u);
        RhoFunction::new(u, v)
    }
}

impl Neg for &RhoFunction {
    type Output = RhoFunction;
    fn neg(self) -> RhoFunction {
        RhoFunction::new(-&self.u, -&self.v)
    }
}

impl Add for RhoFunction {
    type Output = RhoFunction;
    fn add(self, o: RhoFunction) -> RhoFunction {
        &self + &o
    }
}

impl Sub for RhoFunction {
    type Output = RhoFunction;
    fn sub(self, o: RhoFunction) -> RhoFunction {
        &self - &o
    }
}

impl Mul for RhoFunction {
    type Output = RhoFunction;
    fn mul(self, o: RhoFunction) -> RhoFunction {
        &self * &o
    }
}

impl Neg for RhoFunction {
    type Output = RhoFunction;
    fn neg(self) -> RhoFunction {
        -&self
    }
}

impl Ring for RhoFunction {
    fn zero() -> Self {
        RhoFunction::new(Rf::zero(), Rf::zero())
    }
    fn one() -> Self {
        RhoFunction::new(Rf::one(), Rf::zero())
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(q: &Rational) -> Self {
        RhoFunction::rational(q.clone())
    }
}

impl RhoDerivation for RhoFunction {
    fn d_rho(&self) -> Self {
        self.rho_derivative()
    }
}

/// Prints a polynomial in `rho` with ℚ(√2) coefficients in the expression grammar.
pub(crate) fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &UPoly<QuadExt>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{}", c)?,
            _ => {
                if *c != QuadExt::one() {
                    write!(f, "{}*", c)?;
                }
                if k == 1 {
                    write!(f, "rho")?;
                } else {
                    write!(f, "rho^{}", k)?;
                }
            }
        }
    }
    Ok(())
}

fn fmt_ratfunc(f: &mut fmt::Formatter<'_>, r: &Rf) -> fmt::Result {
    write!(f, "(")?;
    fmt_poly(f, r.num())?;
    write!(f, ")")?;
    if !(r.den().is_constant() && r.den().coeff(0) == QuadExt::one()) {
        write!(f, "/(")?;
        fmt_poly(f, r.den())?;
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for RhoFunction {
    /// Expression-grammar rendering in the variables `rho`, `s`, `sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u.is_zero(), self.v.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => fmt_ratfunc(f, &self.u),
            (true, false) => {
                fmt_ratfunc(f, &self.v)?;
                write!(f, "*s")
            }
            (false, false) => {
                fmt_ratfunc(f, &self.u)?;
                write!(f, " + ")?;
                fmt_ratfunc(f, &self.v)?;
                write!(f, "*s")
            }
        }
    }
}

/// Convenience: the rational function `num/den` in ρ with integer coefficients
/// listed low degree first.
pub fn rho_ratio(num: &[i64], den: &[i64]) -> RhoFunction {
    let p = |cs: &[i64]| UPoly::from_coeffs(cs.iter().map(|&c| QuadExt::rational(int(c))).collect());
    RhoFunction::new(Rf::new(p(num), p(den)).expect("nonzero denominator"), Rf::zero())
}
