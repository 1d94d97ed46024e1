//! The quadratic field ℚ(√2).

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::ring::{OrderedField, Rational, Ring};

/// `a + b·√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero() }
    }

    /// √2 itself.
    pub fn sqrt2() -> Self {
        QuadExt::new(Rational::zero(), <Rational as Ring>::one())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone())
    }

    /// The norm a² − 2b² ∈ ℚ.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        QuadExt::new(self.a + o.a, self.b + o.b)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        QuadExt::new(self.a - o.a, self.b - o.b)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let two = Rational::from_integer(2.into());
        QuadExt::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        &self * &o
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a, -self.b)
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }
    fn one() -> Self {
        QuadExt::rational(<Rational as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        // (a − b√2)/(a² − 2b²); the norm vanishes only at zero since √2 ∉ ℚ.
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadExt::new(c.a / &n, c.b / n))
    }
    fn from_rational(q: &Rational) -> Self {
        QuadExt::rational(q.clone())
    }
}

impl OrderedField for QuadExt {
    fn signum(&self) -> i32 {
        let (sa, sb) = (sign_of(&self.a), sign_of(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with 2b².
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(2.into()) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadExt {
    /// Prints in the expression grammar: `3/2`, `-sqrt2`, `(1 - 3*sqrt2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = <Rational as Ring>::one();
        let sqrt2_term = |b: &Rational| {
            if *b == one {
                alloc::string::String::from("sqrt2")
            } else {
                alloc::format!("{}*sqrt2", b)
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_negative() => write!(f, "-{}", sqrt2_term(&-self.b.clone())),
            (true, false) => write!(f, "{}", sqrt2_term(&self.b)),
            (false, false) if self.b.is_negative() => {
                write!(f, "({} - {})", self.a, sqrt2_term(&-self.b.clone()))
            }
            (false, false) => write!(f, "({} + {})", self.a, sqrt2_term(&self.b)),
        }
    }
}
