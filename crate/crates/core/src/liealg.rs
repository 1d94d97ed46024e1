//! Left-invariant geometry from structure constants.
//!
//! Indices are 0-based throughout. `Γ^c_ab` means `∇_{E_a} E_b = Γ^c_ab E_c`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactnum::{int, rat, ring_sum, OrderedField, Rational, Ring};
use crate::linalg::Matrix;

/// One bracket `(a, b, [(c, C_ab^c)])`.
pub type Bracket = (usize, usize, Vec<(usize, Rational)>);

/// Structure constants `[E_a, E_b] = C_ab^c E_c`, antisymmetric by construction.
#[derive(Clone, PartialEq, Debug)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        StructureConstants { dim, c: vec![int(0); dim * dim * dim] }
    }

    /// Builds from brackets `(a, b, [(c, C_ab^c)])`, completing antisymmetrically.
    pub fn from_brackets(dim: usize, brackets: &[Bracket]) -> Self {
        let mut sc = Self::abelian(dim);
        for (a, b, coeffs) in brackets {
            for (c, v) in coeffs {
                sc.set(*a, *b, *c, v.clone());
            }
        }
        sc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim + b) * self.dim + c
    }

    /// Sets `C_ab^c` and `C_ba^c = -C_ab^c`.
    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Rational) {
        let i = self.idx(b, a, c);
        self.c[i] = -v.clone();
        let i = self.idx(a, b, c);
        self.c[i] = v;
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.c[self.idx(a, b, c)]
    }

    /// Nonzero `(a, b, c, C_ab^c)` with `a < b`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let n = self.dim;
        (0..n).flat_map(move |a| {
            (a + 1..n).flat_map(move |b| {
                (0..n).filter_map(move |c| {
                    let v = self.get(a, b, c);
                    (!v.is_zero()).then_some((a, b, c, v))
                })
            })
        })
    }

    /// First `(a, b, c, d)` at which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in 0..n {
                        let s = ring_sum((0..n).map(|e| {
                            self.get(a, b, e) * self.get(e, c, d)
                                + self.get(b, c, e) * self.get(e, a, d)
                                + self.get(c, a, e) * self.get(e, b, d)
                        }));
                        if !s.is_zero() {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// Returns `self` if Jacobi holds, the violating indices otherwise.
    pub fn validated(self) -> Result<Self, Error> {
        match self.jacobi_violation() {
            None => Ok(self),
            Some((a, b, c, d)) => Err(Error::Jacobi { a, b, c, d }),
        }
    }
}

/// Symmetric square matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct SymMatrix<R>(Matrix<R>);

impl<R: Ring> SymMatrix<R> {
    pub fn new(m: Matrix<R>) -> Result<Self, Error> {
        if m.is_symmetric() {
            Ok(SymMatrix(m))
        } else {
            Err(Error::NotSymmetric)
        }
    }

    /// Fills both `(i, j)` and `(j, i)` from the given upper-triangle entries.
    pub fn from_upper(n: usize, entries: &[(usize, usize, R)]) -> Self {
        let mut m = Matrix::zeros(n, n);
        for (i, j, v) in entries {
            m[(*i, *j)] = v.clone();
            m[(*j, *i)] = v.clone();
        }
        SymMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.0[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.0
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, f: F) -> SymMatrix<S> {
        SymMatrix(self.0.map(f))
    }
}

/// Connection coefficients `Γ^c_ab` in a frame.
#[derive(Clone, PartialEq, Debug)]
pub struct FrameConnCoeffs<R> {
    dim: usize,
    gamma: Vec<R>,
}

impl<R: Ring> FrameConnCoeffs<R> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^c_ab`, the `E_c` component of `∇_{E_a} E_b`.
    pub fn get(&self, a: usize, b: usize, c: usize) -> &R {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }
}

/// Riemann tensor `R^d_{c,ab}`: `R(E_a, E_b) E_c = R^d_{c,ab} E_d`.
#[derive(Clone, PartialEq, Debug)]
pub struct Riemann<R> {
    dim: usize,
    r: Vec<R>,
}

impl<R: Ring> Riemann<R> {
    pub fn get(&self, d: usize, c: usize, a: usize, b: usize) -> &R {
        let n = self.dim;
        &self.r[((d * n + c) * n + a) * n + b]
    }

    /// `R_cb = Σ_a R^a_{c,ab}`.
    pub fn ricci(&self) -> Matrix<R> {
        let n = self.dim;
        Matrix::from_fn(n, n, |c, b| ring_sum((0..n).map(|a| self.get(a, c, a, b).clone())))
    }
}

fn inverse_metric<R: Ring>(g: &SymMatrix<R>) -> Result<Matrix<R>, Error> {
    g.matrix().inverse().ok_or(Error::NonInvertible("metric"))
}

/// Levi-Civita connection of a left-invariant metric:
/// `Γ_abc = ½(g([a,b],c) − g([b,c],a) + g([c,a],b))`, then `Γ^d_ab = Γ_abc g^{cd}`.
pub fn koszul_invariant<R: Ring>(c: &StructureConstants, g: &SymMatrix<R>) -> Result<FrameConnCoeffs<R>, Error> {
    let n = c.dim();
    if g.dim() != n {
        return Err(Error::Dimension(alloc::format!("metric {} vs algebra {}", g.dim(), n)));
    }
    let ginv = inverse_metric(g)?;
    // g([a,b], c) = Σ_e C_ab^e g_ec
    let bracket_g = |a: usize, b: usize, k: usize| -> R {
        ring_sum((0..n).filter(|&e| !c.get(a, b, e).is_zero()).map(|e| g.get(e, k).scale(c.get(a, b, e))))
    };
    let half = rat(1, 2);
    let mut lowered = vec![R::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let v = bracket_g(a, b, k) - bracket_g(b, k, a) + bracket_g(k, a, b);
                lowered[(a * n + b) * n + k] = v.scale(&half);
            }
        }
    }
    let mut gamma = vec![R::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                gamma[(a * n + b) * n + d] =
                    ring_sum((0..n).map(|k| lowered[(a * n + b) * n + k].clone() * ginv[(k, d)].clone()));
            }
        }
    }
    Ok(FrameConnCoeffs { dim: n, gamma })
}

/// Curvature of a connection with constant frame coefficients.
pub fn riemann<R: Ring>(c: &StructureConstants, conn: &FrameConnCoeffs<R>) -> Riemann<R> {
    let n = c.dim();
    let mut r = Vec::with_capacity(n * n * n * n);
    for d in 0..n {
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let v = ring_sum((0..n).map(|e| {
                        conn.get(b, k, e).clone() * conn.get(a, e, d).clone()
                            - conn.get(a, k, e).clone() * conn.get(b, e, d).clone()
                            - conn.get(e, k, d).scale(c.get(a, b, e))
                    }));
                    r.push(v);
                }
            }
        }
    }
    Riemann { dim: n, r }
}

/// Ricci tensor of a left-invariant metric.
pub fn ricci_invariant<R: Ring>(c: &StructureConstants, g: &SymMatrix<R>) -> Result<Matrix<R>, Error> {
    Ok(riemann(c, &koszul_invariant(c, g)?).ricci())
}

/// `(p, q)`: numbers of positive and negative squares, by symmetric congruence.
pub fn signature<F: OrderedField>(g: &Matrix<F>) -> Result<(usize, usize), Error> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut m = g.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let (mut p, mut q) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().position(|&i| !m[(i, i)].is_zero());
        let k = match pivot {
            Some(pos) => active[pos],
            None => {
                // all remaining diagonal entries vanish: e_i += e_j creates 2 g_ij there
                let pair = active.iter().enumerate().find_map(|(x, &i)| {
                    active[x + 1..].iter().find(|&&j| !m[(i, j)].is_zero()).map(|&j| (i, j))
                });
                let Some((i, j)) = pair else {
                    return Err(Error::DegenerateForm);
                };
                let d = m[(i, i)].clone() + m[(i, j)].scale(&int(2)) + m[(j, j)].clone();
                for &l in active.iter().filter(|&&l| l != i) {
                    let v = m[(i, l)].clone() + m[(j, l)].clone();
                    m[(i, l)] = v.clone();
                    m[(l, i)] = v;
                }
                m[(i, i)] = d;
                i
            }
        };
        let piv = m[(k, k)].clone();
        if piv.signum() > 0 {
            p += 1;
        } else {
            q += 1;
        }
        let inv = piv.try_inv().expect("nonzero pivot");
        active.retain(|&i| i != k);
        for &i in &active {
            let f = m[(i, k)].clone() * inv.clone();
            for &j in &active {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    Ok((p, q))
}
