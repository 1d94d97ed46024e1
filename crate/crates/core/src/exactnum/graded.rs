//! Laurent polynomials in the ambient dilation coordinate t.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::quad::QuadExt;
use super::rhofn::RhoFunction;
use super::ring::{int, Rational, Ring, RhoDerivation};
use super::series::PowerSeries;
use crate::error::Error;

/// Finite sum `Σ c_k(ρ)·tᵏ` with `k ∈ ℤ`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct TGraded<C> {
    terms: BTreeMap<i32, C>,
}

/// Exact ambient coefficient: t-graded with [`RhoFunction`] coefficients.
pub type AmbientScalar = TGraded<RhoFunction>;

/// Jet of an ambient coefficient at ρ = 0, t-graded with series coefficients.
pub type AmbientJet = TGraded<PowerSeries>;

/// Coefficient rings usable under the t-grading.
pub trait AmbientCoeff: RhoDerivation {
    /// Value at ρ = 0.
    fn at_rho0(&self) -> Result<QuadExt, Error>;
}

impl AmbientCoeff for RhoFunction {
    fn at_rho0(&self) -> Result<QuadExt, Error> {
        self.evaluate_rho0()
    }
}

impl AmbientCoeff for PowerSeries {
    fn at_rho0(&self) -> Result<QuadExt, Error> {
        match self.order() {
            Some(o) if o < 0 => Err(Error::PrecisionExhausted),
            _ => Ok(self.coeff(0)),
        }
    }
}

impl<C: Ring> TGraded<C> {
    /// `c·tᵏ`.
    pub fn monomial(k: i32, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        TGraded { terms }
    }

    /// Degree-0 element.
    pub fn coeff0(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn term(&self, k: i32) -> Option<&C> {
        self.terms.get(&k)
    }

    /// `Some(k)` if the element is a single nonzero term of degree `k`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        if self.terms.len() == 1 {
            self.terms.keys().next().copied()
        } else {
            None
        }
    }

    /// ∂/∂t: each degree drops by exactly one.
    pub fn d_t(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if *k != 0 {
                terms.insert(k - 1, c.scale(&int(*k as i64)));
            }
        }
        TGraded { terms }
    }

    /// Maps every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Ring, F: FnMut(&C) -> D>(&self, mut f: F) -> TGraded<D> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(*k, d);
            }
        }
        TGraded { terms }
    }

    /// Restriction to t = 1.
    pub fn at_t1(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    fn insert_add(terms: &mut BTreeMap<i32, C>, k: i32, c: C) {
        match terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    terms.insert(k, s);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(k, c);
                }
            }
        }
    }
}

impl<C: RhoDerivation> TGraded<C> {
    /// ∂/∂ρ, degree-wise.
    pub fn d_rho_graded(&self) -> Self {
        self.map_coeffs(|c| c.d_rho())
    }
}

impl<C: AmbientCoeff> TGraded<C> {
    /// Value at the basepoint t = 1, ρ = 0.
    pub fn at_basepoint(&self) -> Result<QuadExt, Error> {
        let mut acc = QuadExt::zero();
        for c in self.terms.values() {
            acc = acc + c.at_rho0()?;
        }
        Ok(acc)
    }
}

impl AmbientScalar {
    /// Jet at ρ = 0 through the given order.
    pub fn jet(&self, order: usize) -> Result<AmbientJet, Error> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(*k, c.taylor_expand(order)?);
        }
        Ok(TGraded { terms })
    }
}

impl<C: Ring> Add for TGraded<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        for (k, c) in small.terms {
            Self::insert_add(&mut big.terms, k, c);
        }
        big
    }
}

impl<C: Ring> Sub for TGraded<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Ring> Neg for TGraded<C> {
    type Output = Self;
    fn neg(self) -> Self {
        TGraded { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<C: Ring> Mul for TGraded<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut terms = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                Self::insert_add(&mut terms, i + j, a.clone() * b.clone());
            }
        }
        TGraded { terms }
    }
}

impl<C: Ring> Ring for TGraded<C> {
    fn zero() -> Self {
        TGraded { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::coeff0(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Invertible iff a single term with invertible coefficient.
    fn try_inv(&self) -> Option<Self> {
        let k = self.homogeneous_degree()?;
        let c = self.terms[&k].try_inv()?;
        Some(Self::monomial(-k, c))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::coeff0(C::from_rational(q))
    }
}

impl<C: RhoDerivation> RhoDerivation for TGraded<C> {
    fn d_rho(&self) -> Self {
        self.d_rho_graded()
    }
}

impl fmt::Display for AmbientScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            match k {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{}", k)?,
            }
        }
        Ok(())
    }
}
