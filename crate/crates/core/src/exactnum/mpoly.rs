//! Sparse multivariate polynomials over ℚ in the coordinates (x, y, p, r, z).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::ring::{int, Rational, Ring};

pub const NVARS: usize = 5;

/// Coordinate names, in exponent-vector order.
pub const VARS: [&str; NVARS] = ["x", "y", "p", "r", "z"];

pub type Exponent = [u32; NVARS];

/// Terms keyed by exponent vector; the map order is lex with x most significant.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; NVARS])
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn term(c: Rational, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// The coordinate with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::term(int(1), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Highest-index variable that occurs.
    fn main_var(&self) -> Option<usize> {
        (0..NVARS).rev().find(|&v| self.degree_in(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = *e;
                e2[v] -= 1;
                out.add_term(e2, c * int(e[v] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for v in 0..NVARS {
                for _ in 0..e[v] {
                    m *= &point[v];
                }
            }
            acc += m;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((re, rc)) = r.leading() {
            let mut e = [0; NVARS];
            for v in 0..NVARS {
                e[v] = re[v].checked_sub(de[v])?;
            }
            let c = rc / &dc;
            let t = MPoly::term(c, e);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Scales so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        gcd_rec(a, b).monic()
    }

    fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            out[e[v] as usize].add_term(e2, c.clone());
        }
        out
    }

    fn from_univariate(coeffs: &[MPoly], v: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = *e;
                e2[v] += k as u32;
                out.add_term(e2, x.clone());
            }
        }
        out
    }
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        if c.is_constant() {
            return MPoly::one();
        }
        g = if g.is_zero() { c.monic() } else { gcd_rec(&g, c).monic() };
    }
    g
}

fn trim(c: &mut Vec<MPoly>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

/// Divides out the content, returning (content, primitive part).
fn split_content(coeffs: &[MPoly]) -> (MPoly, Vec<MPoly>) {
    let cont = content(coeffs);
    if cont.is_zero() {
        return (cont, coeffs.to_vec());
    }
    let pp = coeffs
        .iter()
        .map(|c| c.div_exact(&cont).expect("content divides every coefficient"))
        .collect();
    (cont, pp)
}

/// Sparse pseudo-remainder of `f` by `g` as polynomials in the main variable.
fn pseudo_rem(f: &[MPoly], g: &[MPoly]) -> Vec<MPoly> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * &lg;
        }
        for (j, gc) in g.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * gc);
        }
        trim(&mut r);
    }
    r
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let v = match (a.main_var(), b.main_var()) {
        (None, None) => return MPoly::one(),
        (x, y) => x.max(y).unwrap(),
    };
    let (ca, mut f) = split_content(&a.to_univariate(v));
    let (cb, mut g) = split_content(&b.to_univariate(v));
    let cont = if ca.is_constant() || cb.is_constant() { MPoly::one() } else { gcd_rec(&ca, &cb) };
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        core::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = pseudo_rem(&f, &g);
        f = g;
        g = if r.is_empty() { r } else { split_content(&r).1 };
        trim(&mut g);
    }
    let (_, pp) = split_content(&f);
    &MPoly::from_univariate(&pp, v) * &cont
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for v in 0..NVARS {
                    e[v] += e2[v];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = int(1);
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            let mut need_star = false;
            if mag != one || is_const {
                write!(f, "{}", mag)?;
                need_star = true;
            }
            for v in 0..NVARS {
                if e[v] == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                need_star = true;
                write!(f, "{}", VARS[v])?;
                if e[v] > 1 {
                    write!(f, "^{}", e[v])?;
                }
            }
        }
        Ok(())
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn try_inv(&self) -> Option<Self> {
        let c = self.constant_value()?;
        (!c.is_zero()).then(|| MPoly::constant(c.recip()))
    }
    fn from_rational(q: &Rational) -> Self {
        MPoly::constant(q.clone())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl core::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl core::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl core::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl core::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(MPoly);
