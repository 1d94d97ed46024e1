//! Tensor calculus on the ambient space in the frame `(∂t, E_1..E_n, ∂ρ)`.
//!
//! Frame index 0 is `∂t`, `1..=n` are the left-invariant fields and `n + 1`
//! is `∂ρ`. Only `∂t` and `∂ρ` act on coefficients; the `E_a` act trivially
//! because every coefficient is left-invariant. The only nonzero frame
//! brackets are `[E_a, E_b] = C_ab^c E_c`.
//!
//! Everything is generic over the t-graded coefficient ring, so the same code
//! runs on exact functions of ρ and on truncated jets at ρ = 0.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactnum::{
    int, rat, ring_sum, AmbientCoeff, AmbientScalar, PowerSeries, QuadExt, Rational, RhoDerivation, Ring, RhoFunction, TGraded,
};
use crate::liealg::{StructureConstants, SymMatrix};
use crate::linalg::Matrix;

/// Homogeneity weight of a frame index: `g̃_xy` has t-degree `w_x + w_y`.
pub fn weight(x: usize) -> i32 {
    if x == 0 {
        0
    } else {
        1
    }
}

/// Human-readable frame label.
pub fn frame_label(n: usize, x: usize) -> String {
    match x {
        0 => String::from("t"),
        x if x == n + 1 => String::from("rho"),
        x => format!("E{}", x),
    }
}

/// Ambient metric in the 7-frame (for a 5-dimensional base).
#[derive(Clone, PartialEq, Debug)]
pub struct AmbientMetric<C> {
    base_dim: usize,
    g: Matrix<TGraded<C>>,
}

impl<C: AmbientCoeff> AmbientMetric<C> {
    pub fn from_matrix(m: Matrix<TGraded<C>>) -> Result<Self, Error> {
        if m.rows() < 2 || !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(AmbientMetric { base_dim: m.rows() - 2, g: m })
    }

    pub fn dim(&self) -> usize {
        self.base_dim + 2
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn get(&self, x: usize, y: usize) -> &TGraded<C> {
        &self.g[(x, y)]
    }

    pub fn matrix(&self) -> &Matrix<TGraded<C>> {
        &self.g
    }

    /// Entries that are not homogeneous of degree `w_x + w_y`.
    pub fn homogeneity_violations(&self) -> Vec<(usize, usize)> {
        let m = self.dim();
        let mut out = Vec::new();
        for x in 0..m {
            for y in x..m {
                let e = &self.g[(x, y)];
                if !e.is_zero() && e.homogeneous_degree() != Some(weight(x) + weight(y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Inverse metric, using `g̃ = D G D` with `D = diag(t^w)` and `G` free of t.
    pub fn inverse(&self) -> Result<Matrix<TGraded<C>>, Error> {
        if !self.homogeneity_violations().is_empty() {
            return Err(Error::NonInvertible("ambient metric is not homogeneous"));
        }
        let m = self.dim();
        let core = Matrix::from_fn(m, m, |x, y| {
            self.g[(x, y)].term(weight(x) + weight(y)).cloned().unwrap_or_else(C::zero)
        });
        let inv = core.inverse().ok_or(Error::NonInvertible("ambient metric"))?;
        Ok(Matrix::from_fn(m, m, |x, y| TGraded::monomial(-weight(x) - weight(y), inv[(x, y)].clone())))
    }

    /// Value at `t = 1, ρ = 0`.
    pub fn at_basepoint(&self) -> Result<Matrix<QuadExt>, Error> {
        self.g.try_map(|e| e.at_basepoint())
    }
}

impl AmbientMetric<RhoFunction> {
    /// Jet at ρ = 0 through the given order.
    pub fn jet(&self, order: usize) -> Result<AmbientMetric<PowerSeries>, Error> {
        Ok(AmbientMetric { base_dim: self.base_dim, g: self.g.try_map(|e| e.jet(order))? })
    }
}

fn rho_scalar() -> AmbientScalar {
    AmbientScalar::coeff0(RhoFunction::rho())
}

/// Normal-form ambient metric `2ρ dt² + 2t dt dρ + t² g(ρ)`.
pub fn build_ambient(gab: &SymMatrix<RhoFunction>) -> Result<AmbientMetric<RhoFunction>, Error> {
    let n = gab.dim();
    if gab.matrix().inverse().is_none() {
        return Err(Error::NonInvertible("base metric"));
    }
    let m = n + 2;
    let mut g = Matrix::zeros(m, m);
    g[(0, 0)] = rho_scalar().scale(&int(2));
    g[(0, n + 1)] = AmbientScalar::monomial(1, RhoFunction::one());
    g[(n + 1, 0)] = g[(0, n + 1)].clone();
    for a in 0..n {
        for b in 0..n {
            g[(a + 1, b + 1)] = AmbientScalar::monomial(2, gab.get(a, b).clone());
        }
    }
    Ok(AmbientMetric { base_dim: n, g })
}

/// Frame derivative of a coefficient.
fn frame_d<C: AmbientCoeff>(n: usize, x: usize, f: &TGraded<C>) -> TGraded<C> {
    if x == 0 {
        f.d_t()
    } else if x == n + 1 {
        f.d_rho()
    } else {
        TGraded::zero()
    }
}

/// Ambient frame brackets `[X_x, X_y] = Σ_z coeff · X_z`.
fn frame_bracket(c: &StructureConstants, x: usize, y: usize) -> Vec<(usize, Rational)> {
    let n = c.dim();
    if x == 0 || y == 0 || x > n || y > n {
        return Vec::new();
    }
    (0..n)
        .filter(|&e| !c.get(x - 1, y - 1, e).is_zero())
        .map(|e| (e + 1, c.get(x - 1, y - 1, e).clone()))
        .collect()
}

fn check_dims<C: AmbientCoeff>(gt: &AmbientMetric<C>, c: &StructureConstants) -> Result<(), Error> {
    if gt.base_dim() != c.dim() {
        return Err(Error::Dimension(format!("ambient base {} vs algebra {}", gt.base_dim(), c.dim())));
    }
    Ok(())
}

/// `g̃(∇̃_x X_y, X_z)` by the Koszul formula.
fn lowered_koszul<C: AmbientCoeff>(gt: &AmbientMetric<C>, c: &StructureConstants, x: usize, y: usize, z: usize) -> TGraded<C> {
    let n = gt.base_dim();
    let bg = |p: usize, q: usize, r: usize| -> TGraded<C> {
        ring_sum(frame_bracket(c, p, q).into_iter().map(|(e, k)| gt.get(e, r).scale(&k)))
    };
    let v = frame_d(n, x, gt.get(y, z)) + frame_d(n, y, gt.get(x, z)) - frame_d(n, z, gt.get(x, y))
        + bg(x, y, z)
        - bg(y, z, x)
        + bg(z, x, y);
    v.scale(&rat(1, 2))
}

/// Levi-Civita connection coefficients: `∇̃_{X_x} X_y = Σ_w get(x, y, w) X_w`.
#[derive(Clone, PartialEq, Debug)]
pub struct AmbientConnection<C> {
    base_dim: usize,
    gam: Vec<TGraded<C>>,
}

impl<C: AmbientCoeff> AmbientConnection<C> {
    pub fn dim(&self) -> usize {
        self.base_dim + 2
    }

    pub fn get(&self, x: usize, y: usize, w: usize) -> &TGraded<C> {
        let m = self.dim();
        &self.gam[(x * m + y) * m + w]
    }
}

pub fn levi_civita_ambient<C: AmbientCoeff>(
    gt: &AmbientMetric<C>,
    c: &StructureConstants,
) -> Result<AmbientConnection<C>, Error> {
    check_dims(gt, c)?;
    let m = gt.dim();
    let ginv = gt.inverse()?;
    let mut gam = Vec::with_capacity(m * m * m);
    for x in 0..m {
        for y in 0..m {
            let low: Vec<TGraded<C>> = (0..m).map(|z| lowered_koszul(gt, c, x, y, z)).collect();
            for w in 0..m {
                gam.push(ring_sum(
                    (0..m).filter(|&z| !low[z].is_zero()).map(|z| low[z].clone() * ginv[(z, w)].clone()),
                ));
            }
        }
    }
    Ok(AmbientConnection { base_dim: gt.base_dim(), gam })
}

/// Report of the pre-ambient and straightness conditions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PreambientReport {
    pub normal_form: bool,
    pub homogeneous: bool,
    pub straight: bool,
    pub failures: Vec<String>,
}

impl PreambientReport {
    pub fn passed(&self) -> bool {
        self.normal_form && self.homogeneous && self.straight
    }
}

/// Checks the normal-form pattern with `g(0) = g0`, the dilation homogeneity,
/// and straightness `∇̃_{∂t} ∂t = 0`.
pub fn check_preambient(
    gt: &AmbientMetric<RhoFunction>,
    c: &StructureConstants,
    g0: &SymMatrix<QuadExt>,
) -> Result<PreambientReport, Error> {
    check_dims(gt, c)?;
    let n = gt.base_dim();
    let mut rep = PreambientReport { normal_form: true, homogeneous: true, straight: true, failures: Vec::new() };
    let t = AmbientScalar::monomial(1, RhoFunction::one());
    let expect = |x: usize, y: usize, v: AmbientScalar, rep: &mut PreambientReport| {
        if gt.get(x, y) != &v {
            rep.normal_form = false;
            rep.failures.push(format!("normal form: ({}, {}) entry", frame_label(n, x), frame_label(n, y)));
        }
    };
    expect(0, 0, rho_scalar().scale(&int(2)), &mut rep);
    expect(0, n + 1, t, &mut rep);
    expect(n + 1, n + 1, AmbientScalar::zero(), &mut rep);
    for a in 1..=n {
        expect(0, a, AmbientScalar::zero(), &mut rep);
        expect(a, n + 1, AmbientScalar::zero(), &mut rep);
    }
    for a in 1..=n {
        for b in a..=n {
            let e = gt.get(a, b);
            let ok = match (e.homogeneous_degree(), e.is_zero()) {
                (_, true) => g0.get(a - 1, b - 1).is_zero(),
                (Some(2), false) => e.term(2).map(|f| f.evaluate_rho0()) == Some(Ok(g0.get(a - 1, b - 1).clone())),
                _ => false,
            };
            if !ok {
                rep.normal_form = false;
                rep.failures.push(format!("normal form: g({}, {}) at rho = 0", a, b));
            }
        }
    }
    for (x, y) in gt.homogeneity_violations() {
        rep.homogeneous = false;
        rep.failures.push(format!("homogeneity: ({}, {}) entry", frame_label(n, x), frame_label(n, y)));
    }
    for z in 0..gt.dim() {
        if !lowered_koszul(gt, c, 0, 0, z).is_zero() {
            rep.straight = false;
            rep.failures.push(format!("straightness: g(nabla_t d_t, {}) != 0", frame_label(n, z)));
        }
    }
    Ok(rep)
}

/// Tensor with one upper index and `lower` lower indices, stored densely as
/// `[upper][l_1]..[l_k]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<C> {
    dim: usize,
    lower: usize,
    data: Vec<TGraded<C>>,
}

impl<C: AmbientCoeff> Tensor<C> {
    pub fn lower(&self) -> usize {
        self.lower
    }

    fn index(&self, upper: usize, lower: &[usize]) -> usize {
        lower.iter().fold(upper, |acc, &l| acc * self.dim + l)
    }

    pub fn get(&self, upper: usize, lower: &[usize]) -> &TGraded<C> {
        &self.data[self.index(upper, lower)]
    }

    /// Inverse of `index`: the upper index and the lower multi-index.
    fn decode(&self, mut flat: usize, lower: &mut [usize]) -> usize {
        for slot in lower.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
        flat
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Curvature `R^d_{c,ab}`: `R̃(X_a, X_b) X_c = Σ_d R^d_{c,ab} X_d`, stored as a
/// tensor with lower indices `(c, a, b)`.
pub fn riemann_ambient<C: AmbientCoeff>(conn: &AmbientConnection<C>, c: &StructureConstants) -> Tensor<C> {
    let m = conn.dim();
    let mut data = Vec::with_capacity(m * m * m * m);
    for d in 0..m {
        for k in 0..m {
            for a in 0..m {
                for b in 0..m {
                    data.push(riemann_component(conn, c, d, k, a, b));
                }
            }
        }
    }
    Tensor { dim: m, lower: 3, data }
}

fn riemann_component<C: AmbientCoeff>(
    conn: &AmbientConnection<C>,
    c: &StructureConstants,
    d: usize,
    k: usize,
    a: usize,
    b: usize,
) -> TGraded<C> {
    let n = conn.base_dim;
    let m = conn.dim();
    let mut acc = frame_d(n, a, conn.get(b, k, d)) - frame_d(n, b, conn.get(a, k, d));
    for e in 0..m {
        let (g1, g2) = (conn.get(b, k, e), conn.get(a, k, e));
        if !g1.is_zero() {
            acc = acc + g1.clone() * conn.get(a, e, d).clone();
        }
        if !g2.is_zero() {
            acc = acc - g2.clone() * conn.get(b, e, d).clone();
        }
    }
    for (e, coeff) in frame_bracket(c, a, b) {
        acc = acc - conn.get(e, k, d).scale(&coeff);
    }
    acc
}

/// Ricci tensor `Ric_cb = Σ_a R^a_{c,ab}`.
pub fn ricci_ambient<C: AmbientCoeff>(
    gt: &AmbientMetric<C>,
    c: &StructureConstants,
) -> Result<Matrix<TGraded<C>>, Error> {
    let conn = levi_civita_ambient(gt, c)?;
    let m = gt.dim();
    Ok(Matrix::from_fn(m, m, |k, b| ring_sum((0..m).map(|a| riemann_component(&conn, c, a, k, a, b)))))
}

/// `∇̃T`, with the differentiating direction appended as the last lower index.
pub fn covariant_derivative<C: AmbientCoeff>(t: &Tensor<C>, conn: &AmbientConnection<C>) -> Tensor<C> {
    let m = t.dim;
    let n = conn.base_dim;
    let k = t.lower;
    // nonzero Γ lists: by (x, y) -> [(w, Γ)]
    let mut nz: Vec<Vec<(usize, TGraded<C>)>> = vec![Vec::new(); m * m];
    for x in 0..m {
        for y in 0..m {
            for w in 0..m {
                let g = conn.get(x, y, w);
                if !g.is_zero() {
                    nz[x * m + y].push((w, g.clone()));
                }
            }
        }
    }
    let total = t.data.len() * m;
    let mut data = Vec::with_capacity(total);
    let mut lower = vec![0usize; k];
    let mut shifted = vec![0usize; k];
    for flat in 0..t.data.len() {
        let d = t.decode(flat, &mut lower);
        for z in 0..m {
            let mut acc = frame_d(n, z, &t.data[flat]);
            // + Γ^d_ze T^e
            for e in 0..m {
                let te = t.get(e, &lower);
                if te.is_zero() {
                    continue;
                }
                for (w, g) in &nz[z * m + e] {
                    if *w == d {
                        acc = acc + g.clone() * te.clone();
                    }
                }
            }
            // − Γ^e_{z l_i} T^d_{..e..}
            for i in 0..k {
                shifted.copy_from_slice(&lower);
                for (e, g) in &nz[z * m + lower[i]] {
                    shifted[i] = *e;
                    let v = t.get(d, &shifted);
                    if !v.is_zero() {
                        acc = acc - g.clone() * v.clone();
                    }
                }
            }
            data.push(acc);
        }
    }
    Tensor { dim: m, lower: k + 1, data }
}

/// A curvature endomorphism `∇̃_{Z_k}..∇̃_{Z_1} R̃(X_a, X_b)`; `derivatives`
/// lists `Z_1..Z_k` in order of application.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Witness {
    pub derivatives: Vec<usize>,
    pub pair: (usize, usize),
}

/// Curvature endomorphisms at the basepoint, each flattened row-major
/// (`[d][c]`) into a vector of length `dim²`.
pub type Endomorphisms = BTreeMap<Witness, Vec<QuadExt>>;

/// Evaluates `R̃` and its covariant derivatives up to `depth` at `t = 1, ρ = 0`.
pub fn curvature_endomorphisms<C: AmbientCoeff>(
    gt: &AmbientMetric<C>,
    c: &StructureConstants,
    depth: usize,
) -> Result<Endomorphisms, Error> {
    let conn = levi_civita_ambient(gt, c)?;
    let m = gt.dim();
    let mut t = riemann_ambient(&conn, c);
    let mut out = BTreeMap::new();
    for level in 0..=depth {
        if level > 0 {
            t = covariant_derivative(&t, &conn);
        }
        let mut derivs = vec![0usize; level];
        for combo in 0..m.pow(level as u32) {
            let mut r = combo;
            for slot in derivs.iter_mut().rev() {
                *slot = r % m;
                r /= m;
            }
            for a in 0..m {
                for b in a + 1..m {
                    let mut endo = Vec::with_capacity(m * m);
                    let mut idx = vec![0usize; 3 + level];
                    idx[1] = a;
                    idx[2] = b;
                    idx[3..].copy_from_slice(&derivs);
                    for d in 0..m {
                        for k in 0..m {
                            idx[0] = k;
                            endo.push(t.get(d, &idx).at_basepoint()?);
                        }
                    }
                    out.insert(Witness { derivatives: derivs.clone(), pair: (a, b) }, endo);
                }
            }
        }
    }
    Ok(out)
}

/// Rank over ℚ(√2) of a list of vectors.
pub fn span_rank(vectors: &[&Vec<QuadExt>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.iter().map(|v| (*v).clone()).collect()).rank()
}

/// Exact holonomy data at the basepoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HolonomyReport {
    pub depth: usize,
    pub rank: usize,
    /// Cumulative rank after each derivative level.
    pub ranks_by_depth: Vec<usize>,
    pub witnesses: Vec<Witness>,
    /// Every candidate endomorphism is skew with respect to `g̃_u`.
    pub so_check: bool,
}

/// True iff `g(Av, w) + g(v, Aw) = 0` for the flattened endomorphism `A`.
pub fn is_skew(endo: &[QuadExt], g: &Matrix<QuadExt>) -> bool {
    let m = g.rows();
    let a = |d: usize, k: usize| &endo[d * m + k];
    (0..m).all(|v| {
        (v..m).all(|w| {
            let s = ring_sum((0..m).map(|d| a(d, v).clone() * g[(d, w)].clone() + a(d, w).clone() * g[(v, d)].clone()));
            s.is_zero()
        })
    })
}

/// Greedy basis of the span of curvature endomorphisms through `depth`,
/// scanning candidates by (derivative multi-index, argument pair).
pub fn holonomy_from_endomorphisms(endos: &Endomorphisms, g_u: &Matrix<QuadExt>, depth: usize) -> HolonomyReport {
    let mut basis: Vec<Vec<QuadExt>> = Vec::new();
    let mut witnesses = Vec::new();
    let mut ranks_by_depth = Vec::new();
    for level in 0..=depth {
        let mut cands: Vec<(&Witness, &Vec<QuadExt>)> =
            endos.iter().filter(|(w, _)| w.derivatives.len() == level).collect();
        cands.sort_by(|x, y| x.0.cmp(y.0));
        for (w, v) in cands {
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(v.clone());
            if Matrix::from_rows(trial).rank() > basis.len() {
                basis.push(v.clone());
                witnesses.push(w.clone());
            }
        }
        ranks_by_depth.push(basis.len());
    }
    let so_check = endos.values().all(|e| is_skew(e, g_u));
    HolonomyReport { depth, rank: basis.len(), ranks_by_depth, witnesses, so_check }
}

/// Holonomy span through `depth` derivatives, computed on jets at ρ = 0.
pub fn holonomy_span(
    gt: &AmbientMetric<RhoFunction>,
    c: &StructureConstants,
    depth: usize,
) -> Result<HolonomyReport, Error> {
    // each derivative level consumes one ρ-order; three more for Γ, R̃ and slack
    let jet: AmbientMetric<PowerSeries> = gt.jet(depth + 3)?;
    let endos = curvature_endomorphisms::<PowerSeries>(&jet, c, depth)?;
    Ok(holonomy_from_endomorphisms(&endos, &gt.at_basepoint()?, depth))
}

/// Exact (non-jet) depth-0 endomorphisms, for cross-checking the jet path.
pub fn curvature_endomorphisms_exact(
    gt: &AmbientMetric<RhoFunction>,
    c: &StructureConstants,
) -> Result<Endomorphisms, Error> {
    curvature_endomorphisms(gt, c, 0)
}

/// Three-form `Φ = Σ_{i<j<k} Φ_ijk e^i ∧ e^j ∧ e^k`.
#[derive(Clone, PartialEq, Debug)]
pub struct ThreeForm<C> {
    dim: usize,
    comps: BTreeMap<(usize, usize, usize), TGraded<C>>,
}

impl<C: AmbientCoeff> ThreeForm<C> {
    pub fn zero(dim: usize) -> Self {
        ThreeForm { dim, comps: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets the component on the increasing triple `i < j < k`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: TGraded<C>) {
        assert!(i < j && j < k && k < self.dim, "triple must be increasing");
        if v.is_zero() {
            self.comps.remove(&(i, j, k));
        } else {
            self.comps.insert((i, j, k), v);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &TGraded<C>)> {
        self.comps.iter()
    }

    /// `Φ(X_i, X_j, X_k)` for arbitrary indices.
    pub fn eval(&self, i: usize, j: usize, k: usize) -> TGraded<C> {
        let mut idx = [i, j, k];
        let mut sign = 1;
        for p in 0..3 {
            for q in 0..2 - p {
                if idx[q] > idx[q + 1] {
                    idx.swap(q, q + 1);
                    sign = -sign;
                }
                if idx[q] == idx[q + 1] {
                    return TGraded::zero();
                }
            }
        }
        match self.comps.get(&(idx[0], idx[1], idx[2])) {
            Some(v) if sign > 0 => v.clone(),
            Some(v) => -v.clone(),
            None => TGraded::zero(),
        }
    }

    /// Dense values at the basepoint, indexed `[i][j][k]`.
    pub fn at_basepoint(&self) -> Result<Vec<QuadExt>, Error> {
        let m = self.dim;
        let mut out = vec![QuadExt::zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    out[(i * m + j) * m + k] = self.eval(i, j, k).at_basepoint()?;
                }
            }
        }
        Ok(out)
    }
}

/// Components `(x; i<j<k)` where `(∇̃_x Φ)(X_i, X_j, X_k) ≠ 0`.
pub fn parallel_form_violations<C: AmbientCoeff>(conn: &AmbientConnection<C>, phi: &ThreeForm<C>) -> Vec<(usize, usize, usize, usize)> {
    let m = conn.dim();
    let n = conn.base_dim;
    let mut out = Vec::new();
    for x in 0..m {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut acc = frame_d(n, x, &phi.eval(i, j, k));
                    for e in 0..m {
                        let (gi, gj, gk) = (conn.get(x, i, e), conn.get(x, j, e), conn.get(x, k, e));
                        if !gi.is_zero() {
                            acc = acc - gi.clone() * phi.eval(e, j, k);
                        }
                        if !gj.is_zero() {
                            acc = acc - gj.clone() * phi.eval(i, e, k);
                        }
                        if !gk.is_zero() {
                            acc = acc - gk.clone() * phi.eval(i, j, e);
                        }
                    }
                    if !acc.is_zero() {
                        out.push((x, i, j, k));
                    }
                }
            }
        }
    }
    out
}

/// True iff `∇̃Φ = 0` exactly.
pub fn check_parallel_form<C: AmbientCoeff>(
    gt: &AmbientMetric<C>,
    c: &StructureConstants,
    phi: &ThreeForm<C>,
) -> Result<bool, Error> {
    let conn = levi_civita_ambient(gt, c)?;
    Ok(parallel_form_violations(&conn, phi).is_empty())
}

/// Components `(x; y, z)` where `(∇̃_x g̃)(X_y, X_z) ≠ 0`.
pub fn metric_parallel_violations<C: AmbientCoeff>(
    gt: &AmbientMetric<C>,
    conn: &AmbientConnection<C>,
) -> Vec<(usize, usize, usize)> {
    let m = gt.dim();
    let n = gt.base_dim();
    let mut out = Vec::new();
    for x in 0..m {
        for y in 0..m {
            for z in y..m {
                let mut acc = frame_d(n, x, gt.get(y, z));
                for e in 0..m {
                    acc = acc - conn.get(x, y, e).clone() * gt.get(e, z).clone()
                        - conn.get(x, z, e).clone() * gt.get(y, e).clone();
                }
                if !acc.is_zero() {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// Components `(x, y; w)` where torsion-freeness fails:
/// `Γ^w_xy − Γ^w_yx` must equal the frame bracket coefficient.
pub fn torsion_violations<C: AmbientCoeff>(
    conn: &AmbientConnection<C>,
    c: &StructureConstants,
) -> Vec<(usize, usize, usize)> {
    let m = conn.dim();
    let mut out = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            let br = frame_bracket(c, x, y);
            for w in 0..m {
                let expected = br.iter().find(|(e, _)| *e == w).map_or(int(0), |(_, k)| k.clone());
                let diff = conn.get(x, y, w).clone() - conn.get(y, x, w).clone();
                if diff != TGraded::from_rational(&expected) {
                    out.push((x, y, w));
                }
            }
        }
    }
    out
}

/// Dimension of the stabilizer of a 3-form in `gl(V)` and whether every
/// stabilizer element is skew for `g`. `phi` is dense `[i][j][k]`.
pub fn stabilizer_of_form(phi: &[QuadExt], g: &Matrix<QuadExt>) -> (usize, bool) {
    let m = g.rows();
    let p = |i: usize, j: usize, k: usize| &phi[(i * m + j) * m + k];
    // unknown A_{r s} (A X_s = Σ_r A_rs X_r) at column r * m + s
    let mut rows = Vec::new();
    for v in 0..m {
        for w in v + 1..m {
            for x in w + 1..m {
                let mut row = vec![QuadExt::zero(); m * m];
                for r in 0..m {
                    row[r * m + v] = row[r * m + v].clone() + p(r, w, x).clone();
                    row[r * m + w] = row[r * m + w].clone() + p(v, r, x).clone();
                    row[r * m + x] = row[r * m + x].clone() + p(v, w, r).clone();
                }
                rows.push(row);
            }
        }
    }
    let null = Matrix::from_rows(rows).nullspace();
    let skew = null.iter().all(|a| is_skew(a, g));
    (null.len(), skew)
}

/// Stabilizer of `Φ_u` at the basepoint.
pub fn stabilizer_dim<C: AmbientCoeff>(gt: &AmbientMetric<C>, phi: &ThreeForm<C>) -> Result<(usize, bool), Error> {
    Ok(stabilizer_of_form(&phi.at_basepoint()?, &gt.at_basepoint()?))
}
