//! Split octonions in the Zorn vector-matrix model, the split cross product
//! on imaginary elements, the invariant trace form and derivation algebras of
//! small unital algebras.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{rat, ring_sum, Rational, Ring};
use crate::linalg::Matrix;

type V3 = [Rational; 3];

fn dot(x: &V3, y: &V3) -> Rational {
    ring_sum((0..3).map(|i| x[i].clone() * y[i].clone()))
}

fn cross(x: &V3, y: &V3) -> V3 {
    let c = |i: usize, j: usize| x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn axpy(alpha: &Rational, x: &V3, beta: &Rational, y: &V3) -> V3 {
    core::array::from_fn(|i| alpha.clone() * x[i].clone() + beta.clone() * y[i].clone())
}

/// `(a, v, w, b)`: the Zorn matrix with scalars `a`, `b` on the diagonal and
/// vectors `v`, `w` off it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitOctonion {
    pub a: Rational,
    pub v: V3,
    pub w: V3,
    pub b: Rational,
}

impl SplitOctonion {
    pub fn zero() -> Self {
        Self::from_components(&vec![Rational::zero(); 8])
    }

    pub fn one() -> Self {
        let mut c = vec![Rational::zero(); 8];
        c[0] = Rational::one();
        c[7] = Rational::one();
        Self::from_components(&c)
    }

    /// Components in the order `a, v1, v2, v3, w1, w2, w3, b`.
    pub fn from_components(c: &[Rational]) -> Self {
        assert_eq!(c.len(), 8);
        SplitOctonion {
            a: c[0].clone(),
            v: [c[1].clone(), c[2].clone(), c[3].clone()],
            w: [c[4].clone(), c[5].clone(), c[6].clone()],
            b: c[7].clone(),
        }
    }

    pub fn components(&self) -> Vec<Rational> {
        let mut out = vec![self.a.clone()];
        out.extend(self.v.iter().cloned());
        out.extend(self.w.iter().cloned());
        out.push(self.b.clone());
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let c: Vec<_> = self.components().into_iter().zip(o.components()).map(|(x, y)| x + y).collect();
        Self::from_components(&c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let c: Vec<_> = self.components().into_iter().map(|x| x * q.clone()).collect();
        Self::from_components(&c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, v, w, b) = (&self.a, &self.v, &self.w, &self.b);
        let (a2, v2, w2, b2) = (&o.a, &o.v, &o.w, &o.b);
        let ww = cross(w, w2);
        let vv = cross(v, v2);
        let vpart = axpy(a, v2, b2, v);
        let wpart = axpy(a2, w, b, w2);
        SplitOctonion {
            a: a.clone() * a2.clone() + dot(v, w2),
            v: core::array::from_fn(|i| vpart[i].clone() - ww[i].clone()),
            w: core::array::from_fn(|i| wpart[i].clone() + vv[i].clone()),
            b: b.clone() * b2.clone() + dot(w, v2),
        }
    }

    pub fn trace(&self) -> Rational {
        self.a.clone() + self.b.clone()
    }

    /// The quadratic form `ab - v·w`, multiplicative under the product.
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.b.clone() - dot(&self.v, &self.w)
    }

    pub fn imaginary(&self) -> ImaginaryElement {
        let h = (self.a.clone() - self.b.clone()) * rat(1, 2);
        let mut c = vec![h];
        c.extend(self.v.iter().cloned());
        c.extend(self.w.iter().cloned());
        ImaginaryElement::new(c)
    }
}

/// Trace-free split octonion, stored as `(h, v1, v2, v3, w1, w2, w3)` for the
/// Zorn matrix `(h, v, w, -h)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ImaginaryElement(Vec<Rational>);

impl ImaginaryElement {
    pub fn new(c: Vec<Rational>) -> Self {
        assert_eq!(c.len(), 7);
        ImaginaryElement(c)
    }

    pub fn basis(i: usize) -> Self {
        let mut c = vec![Rational::zero(); 7];
        c[i] = Rational::one();
        ImaginaryElement(c)
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        ImaginaryElement(self.0.iter().zip(&o.0).map(|(x, y)| x.clone() + y.clone()).collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ImaginaryElement(self.0.iter().map(|x| x.clone() * q.clone()).collect())
    }

    pub fn to_octonion(&self) -> SplitOctonion {
        let c = &self.0;
        let mut full = vec![c[0].clone()];
        full.extend(c[1..].iter().cloned());
        full.push(-c[0].clone());
        SplitOctonion::from_components(&full)
    }
}

pub fn oct_multiply(x: &SplitOctonion, y: &SplitOctonion) -> SplitOctonion {
    x.mul(y)
}

/// Imaginary part of the product.
pub fn cross_product(x: &ImaginaryElement, y: &ImaginaryElement) -> ImaginaryElement {
    x.to_octonion().mul(&y.to_octonion()).imaginary()
}

/// Matrix of `z ↦ x × z` in the imaginary basis.
fn cross_matrix(x: &ImaginaryElement) -> Matrix<Rational> {
    let cols: Vec<ImaginaryElement> = (0..7).map(|j| cross_product(x, &ImaginaryElement::basis(j))).collect();
    Matrix::from_fn(7, 7, |i, j| cols[j].0[i].clone())
}

/// `x·y = -1/6 tr(z ↦ x × (y × z))`.
pub fn trace_form(x: &ImaginaryElement, y: &ImaginaryElement) -> Rational {
    let m = cross_matrix(x).mul(&cross_matrix(y));
    ring_sum((0..7).map(|i| m[(i, i)].clone())) * rat(-1, 6)
}

pub fn trace_form_gram() -> Matrix<Rational> {
    Matrix::from_fn(7, 7, |i, j| trace_form(&ImaginaryElement::basis(i), &ImaginaryElement::basis(j)))
}

/// A unital algebra given by its multiplication table in a basis whose first
/// element is the unit; the remaining basis elements span the imaginary part.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteAlgebra {
    dim: usize,
    table: Vec<Rational>,
}

impl FiniteAlgebra {
    /// `f(i, j)` returns the coordinates of `e_i e_j`.
    pub fn from_fn<F: FnMut(usize, usize) -> Vec<Rational>>(dim: usize, mut f: F) -> Self {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = f(i, j);
                assert_eq!(p.len(), dim);
                table.extend(p);
            }
        }
        FiniteAlgebra { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_structure(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.table[(i * d + j) * d + k] = v;
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let c = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let t = self.structure(i, j, k);
                    if !t.is_zero() {
                        *o = o.clone() + c.clone() * t.clone();
                    }
                }
            }
        }
        out
    }

    /// Split octonions in the basis `1, h, v1, v2, v3, w1, w2, w3` with
    /// `1 = (1,0,0,1)` and `h = (1,0,0,-1)`.
    pub fn split_octonions() -> Self {
        let to_zorn = |i: usize| -> SplitOctonion {
            let mut c = vec![Rational::zero(); 8];
            match i {
                0 => {
                    c[0] = Rational::one();
                    c[7] = Rational::one();
                }
                1 => {
                    c[0] = Rational::one();
                    c[7] = rat(-1, 1);
                }
                _ => c[i - 1] = Rational::one(),
            }
            SplitOctonion::from_components(&c)
        };
        Self::from_fn(8, |i, j| {
            let p = to_zorn(i).mul(&to_zorn(j));
            let half = rat(1, 2);
            let mut out = vec![p.trace() * half.clone(), (p.a.clone() - p.b.clone()) * half];
            out.extend(p.v.iter().cloned());
            out.extend(p.w.iter().cloned());
            out
        })
    }

    /// Hamilton quaternions `1, i, j, k`.
    pub fn quaternions() -> Self {
        // e_a e_b for imaginary units: -δ_ab + ε_abc e_c
        Self::from_fn(4, |a, b| {
            let mut out = vec![Rational::zero(); 4];
            match (a, b) {
                (0, _) => out[b] = Rational::one(),
                (_, 0) => out[a] = Rational::one(),
                _ if a == b => out[0] = rat(-1, 1),
                _ => {
                    let c = 6 - a - b;
                    let sign = if (a, b) == (1, 2) || (a, b) == (2, 3) || (a, b) == (3, 1) { 1 } else { -1 };
                    out[c] = rat(sign, 1);
                }
            }
            out
        })
    }

    /// `ℚ × ℚ` in the basis `1 = (1,1)`, `u = (1,-1)`.
    pub fn rational_pair() -> Self {
        Self::from_fn(2, |i, j| {
            if (i + j) % 2 == 0 {
                vec![Rational::one(), Rational::zero()]
            } else {
                vec![Rational::zero(), Rational::one()]
            }
        })
    }

    /// Basis of the derivations, as matrices on the imaginary part
    /// (`D e_j = Σ_i D[(i, j)] e_i` for `j ≥ 1`, with `D(1) = 0`).
    ///
    /// The derivation rule is imposed on every pair of imaginary basis
    /// elements, with the full product on the left-hand side.
    pub fn derivations(&self) -> Vec<Matrix<Rational>> {
        let d = self.dim;
        let m = d - 1;
        let unknown = |i: usize, j: usize| i * m + j;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for p in 1..d {
            for q in 1..d {
                // component k of D(e_p e_q) - D(e_p) e_q - e_p D(e_q)
                for k in 0..d {
                    let mut row = vec![Rational::zero(); m * m];
                    if k >= 1 {
                        for l in 1..d {
                            let t = self.structure(p, q, l);
                            if !t.is_zero() {
                                let u = unknown(k - 1, l - 1);
                                row[u] = row[u].clone() + t.clone();
                            }
                        }
                    }
                    for l in 1..d {
                        let t = self.structure(l, q, k);
                        if !t.is_zero() {
                            let u = unknown(l - 1, p - 1);
                            row[u] = row[u].clone() - t.clone();
                        }
                        let t = self.structure(p, l, k);
                        if !t.is_zero() {
                            let u = unknown(l - 1, q - 1);
                            row[u] = row[u].clone() - t.clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            rows.push(vec![Rational::zero(); m * m]);
        }
        Matrix::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|v| Matrix::from_fn(m, m, |i, j| v[unknown(i, j)].clone()))
            .collect()
    }

    /// `-1/6 tr(z ↦ e_i × (e_j × z))` on the imaginary basis, where `×` is
    /// the product followed by dropping the unit component.
    pub fn imaginary_trace_form(&self) -> Matrix<Rational> {
        let m = self.dim - 1;
        let cross: Vec<Matrix<Rational>> =
            (1..self.dim).map(|i| Matrix::from_fn(m, m, |k, j| self.structure(i, j + 1, k + 1).clone())).collect();
        Matrix::from_fn(m, m, |i, j| {
            let p = cross[i].mul(&cross[j]);
            ring_sum((0..m).map(|k| p[(k, k)].clone())) * rat(-1, 6)
        })
    }

    pub fn derivation_dim(&self) -> usize {
        self.derivations().len()
    }

    /// Whether a matrix on the imaginary part satisfies the derivation rule.
    pub fn is_derivation(&self, dm: &Matrix<Rational>) -> bool {
        let d = self.dim;
        let apply = |x: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); d];
            for i in 1..d {
                out[i] = ring_sum((1..d).map(|j| dm[(i - 1, j - 1)].clone() * x[j].clone()));
            }
            out
        };
        let e = |i: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        (1..d).all(|p| {
            (1..d).all(|q| {
                let lhs = apply(&self.multiply(&e(p), &e(q)));
                let r1 = self.multiply(&apply(&e(p)), &e(q));
                let r2 = self.multiply(&e(p), &apply(&e(q)));
                lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a.clone() + b.clone())
            })
        })
    }
}

/// Dimension of the derivation algebra of the split octonions.
pub fn derivation_algebra_dim() -> usize {
    FiniteAlgebra::split_octonions().derivation_dim()
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let ab = a.mul(b);
    let ba = b.mul(a);
    Matrix::from_fn(a.rows(), a.cols(), |i, j| ab[(i, j)].clone() - ba[(i, j)].clone())
}

/// Whether `m` lies in the span of `basis`.
pub fn in_span(basis: &[Matrix<Rational>], m: &Matrix<Rational>) -> bool {
    let flat = |x: &Matrix<Rational>| -> Vec<Rational> {
        (0..x.rows()).flat_map(|i| (0..x.cols()).map(move |j| (i, j))).map(|ij| x[ij].clone()).collect()
    };
    let mut rows: Vec<Vec<Rational>> = basis.iter().map(flat).collect();
    if rows.is_empty() {
        return m.is_zero();
    }
    let r = Matrix::from_rows(rows.clone()).rank();
    rows.push(flat(m));
    Matrix::from_rows(rows).rank() == r
}

/// `B(Dx, y) + B(x, Dy) = 0` for the Gram matrix `b`.
pub fn is_skew_for(d: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
    let s = d.transpose().mul(b);
    let t = b.mul(d);
    (0..b.rows()).all(|i| (0..b.cols()).all(|j| (s[(i, j)].clone() + t[(i, j)].clone()).is_zero()))
}
