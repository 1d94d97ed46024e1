//! Order-by-order solution of the Ricci-flatness system for a left-invariant
//! normal-form ambient metric `2ρ dt² + 2t dt dρ + t² g(ρ)`.
//!
//! With `'` = d/dρ and `tr h = g^{cd} h_cd`, the three residual blocks are
//!
//! ```text
//! R̃_ab = ρ g''_ab − ρ (g' g⁻¹ g')_ab + ½ρ tr(g') g'_ab − (n/2 − 1) g'_ab − ½ tr(g') g_ab + R_ab
//! R̃_a∞ = ½ g^{cd} (∇_c g'_ad − ∇_a g'_cd)
//! R̃_∞∞ = −½ tr(g'') + ¼ tr(g⁻¹ g' g⁻¹ g')
//! ```
//!
//! where `∇` and `R_ab` belong to `g(ρ)` with ρ frozen.

use alloc::vec::Vec;

use crate::error::Error;
use crate::exactnum::{rat, ring_sum, PowerSeries, QuadExt, Ring, RhoFunction};
use crate::liealg::{koszul_invariant, ricci_invariant, StructureConstants, SymMatrix};
use crate::linalg::{Matrix, SolveError};

/// Symmetric matrix of truncated series over ℚ(√2), all of order `order`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesMetric {
    entries: Matrix<PowerSeries>,
    order: usize,
}

impl SeriesMetric {
    /// Validates symmetry and invertibility of the constant term.
    pub fn new(entries: Matrix<PowerSeries>, order: usize) -> Result<Self, Error> {
        if !entries.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let entries = entries.map(|e| e.truncate(order as i64));
        let sm = SeriesMetric { entries, order };
        if sm.coefficient(0).inverse().is_none() {
            return Err(Error::NonInvertible("series metric at rho = 0"));
        }
        Ok(sm)
    }

    /// The ρ-independent metric `g0`, viewed as a series of the given order.
    pub fn constant(g0: &SymMatrix<QuadExt>, order: usize) -> Result<Self, Error> {
        Self::new(g0.matrix().map(|c| PowerSeries::constant(c.clone(), order as i64)), order)
    }

    /// Taylor data of a closed-form `g(ρ)` through `order`.
    pub fn from_closed_form(g: &SymMatrix<RhoFunction>, order: usize) -> Result<Self, Error> {
        Self::new(g.matrix().try_map(|f| f.taylor_expand(order))?, order)
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &PowerSeries {
        &self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix<PowerSeries> {
        &self.entries
    }

    /// Matrix of ρᵏ coefficients.
    pub fn coefficient(&self, k: usize) -> Matrix<QuadExt> {
        self.entries.map(|e| e.coeff(k))
    }

    /// Same data re-declared at order `order`, padding with zero coefficients.
    fn with_order(&self, order: usize) -> Self {
        SeriesMetric {
            entries: self.entries.map(|e| PowerSeries::with_order(e.coeffs().to_vec(), order as i64)),
            order,
        }
    }

    /// Adds `v·ρᵐ` at `(i, j)` and `(j, i)`.
    fn bump(&self, i: usize, j: usize, m: usize, v: &QuadExt) -> Self {
        let mut out = self.clone();
        let add = |e: &PowerSeries| {
            let mut c = e.coeffs().to_vec();
            c[m] = &c[m] + v;
            PowerSeries::with_order(c, self.order as i64)
        };
        out.entries[(i, j)] = add(&self.entries[(i, j)]);
        if i != j {
            out.entries[(j, i)] = add(&self.entries[(j, i)]);
        }
        out
    }
}

/// The residual blocks `R̃_ab`, `R̃_a∞`, `R̃_∞∞`.
#[derive(Clone, PartialEq, Debug)]
pub struct FGResidual {
    pub rab: Matrix<PowerSeries>,
    pub rainf: Vec<PowerSeries>,
    pub rinfinf: PowerSeries,
}

fn trace_product(a: &Matrix<PowerSeries>, b: &Matrix<PowerSeries>) -> PowerSeries {
    let n = a.rows();
    ring_sum((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].clone() * b[(j, i)].clone()))
}

pub fn fg_residual(c: &StructureConstants, g: &SeriesMetric) -> Result<FGResidual, Error> {
    let n = c.dim();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    if g.dim() != n {
        return Err(Error::Dimension(alloc::format!("metric {} vs algebra {}", g.dim(), n)));
    }
    let gm = g.matrix();
    let gi = gm.inverse().ok_or(Error::NonInvertible("series metric"))?;
    let gp = gm.map(|e| e.derivative());
    let gpp = gp.map(|e| e.derivative());
    let tr = trace_product(&gi, &gp);
    let sym = SymMatrix::new(gm.clone())?;
    let ric = ricci_invariant(c, &sym)?;
    let gpgigp = gp.mul(&gi).mul(&gp);
    let half = rat(1, 2);
    let dim_coeff = rat(n as i64 - 2, 2);

    let rab = Matrix::from_fn(n, n, |a, b| {
        let rho_part = gpp[(a, b)].clone() - gpgigp[(a, b)].clone() + (tr.clone() * gp[(a, b)].clone()).scale(&half);
        rho_part.shift(1) - gp[(a, b)].scale(&dim_coeff) - (tr.clone() * gm[(a, b)].clone()).scale(&half)
            + ric[(a, b)].clone()
    });

    let conn = koszul_invariant(c, &sym)?;
    // (∇_c h)_ad = −Γ^e_ca h_ed − Γ^e_cd h_ae
    let nabla_gp = |cc: usize, a: usize, d: usize| -> PowerSeries {
        -ring_sum((0..n).map(|e| {
            conn.get(cc, a, e).clone() * gp[(e, d)].clone() + conn.get(cc, d, e).clone() * gp[(a, e)].clone()
        }))
    };
    let rainf = (0..n)
        .map(|a| {
            ring_sum((0..n).flat_map(|cc| (0..n).map(move |d| (cc, d))).map(|(cc, d)| {
                gi[(cc, d)].clone() * (nabla_gp(cc, a, d) - nabla_gp(a, cc, d))
            }))
            .scale(&half)
        })
        .collect();

    let gigp = gi.mul(&gp);
    let rinfinf = trace_product(&gi, &gpp).scale(&rat(-1, 2)) + trace_product(&gigp, &gigp).scale(&rat(1, 4));
    Ok(FGResidual { rab, rainf, rinfinf })
}

/// The order-`m` equations: the ρ^(m−1) coefficients of `R̃_ab` (upper
/// triangle), then for `m ≥ 2` the ρ^(m−2) coefficient of `R̃_∞∞`.
fn order_equations(c: &StructureConstants, g: &SeriesMetric, m: usize) -> Result<Vec<QuadExt>, Error> {
    let r = fg_residual(c, g)?;
    let n = g.dim();
    let mut eqs = Vec::with_capacity(n * (n + 1) / 2 + 1);
    for a in 0..n {
        for b in a..n {
            eqs.push(r.rab[(a, b)].coeff(m - 1));
        }
    }
    if m >= 2 {
        eqs.push(r.rinfinf.coeff(m - 2));
    }
    Ok(eqs)
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn sym_unit(n: usize, i: usize, j: usize) -> Matrix<QuadExt> {
    let mut e = Matrix::zeros(n, n);
    e[(i, j)] = QuadExt::one();
    e[(j, i)] = QuadExt::one();
    e
}

/// Columns of the order-`m` equations as a linear function of the unknown
/// coefficient `X`: only `g0` enters, via
/// `m(m − n/2)·X − (m/2)·tr(g0⁻¹X)·g0` for `R̃_ab` and `−½m(m−1)·tr(g0⁻¹X)`
/// for `R̃_∞∞`.
fn linearization(g0: &Matrix<QuadExt>, m: usize) -> Vec<Vec<QuadExt>> {
    let n = g0.rows();
    let g0inv = g0.inverse().expect("g0 invertible");
    let mi = m as i64;
    let diag = rat(mi * (2 * mi - n as i64), 2);
    upper_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let x = sym_unit(n, i, j);
            let tr = ring_sum((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g0inv[(a, b)].clone() * x[(b, a)].clone()));
            let mut col: Vec<QuadExt> = upper_pairs(n)
                .into_iter()
                .map(|(a, b)| x[(a, b)].scale(&diag) - (tr.clone() * g0[(a, b)].clone()).scale(&rat(mi, 2)))
                .collect();
            if m >= 2 {
                col.push(tr.scale(&rat(-mi * (mi - 1), 2)));
            }
            col
        })
        .collect()
}

/// Columns of the same map obtained by evaluating the full residual at
/// `g + E_ij ρ^m`; an independent check of [`linearization`].
pub fn linearization_by_residual(c: &StructureConstants, g: &SeriesMetric, m: usize) -> Result<Vec<Vec<QuadExt>>, Error> {
    let base = g.truncate_to(m - 1).with_order(m);
    let b0 = order_equations(c, &base, m)?;
    let one = QuadExt::one();
    upper_pairs(g.dim())
        .into_iter()
        .map(|(i, j)| {
            let e = order_equations(c, &base.bump(i, j, m, &one), m)?;
            Ok(e.iter().zip(&b0).map(|(x, y)| x - y).collect())
        })
        .collect()
}

/// The closed-form columns, exposed for comparison with [`linearization_by_residual`].
pub fn linearization_closed_form(g: &SeriesMetric, m: usize) -> Vec<Vec<QuadExt>> {
    linearization(&g.coefficient(0), m)
}

/// Extends `g` (a solution through order `m − 1`) by the unique order-`m`
/// coefficient.
///
/// At `m = n` the `R̃_ab` equations only fix the trace-free part, so the
/// `R̃_∞∞` equation is stacked on at every order `m ≥ 2`; the combined
/// system must have full rank and be consistent.
pub fn solve_next_order(c: &StructureConstants, g: &SeriesMetric, m: usize) -> Result<SeriesMetric, Error> {
    let n = c.dim();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    if m == 0 {
        return Err(Error::Dimension(alloc::string::String::from("order must be at least 1")));
    }
    let base = g.truncate_to(m - 1).with_order(m);
    let b0 = order_equations(c, &base, m)?;
    let unknowns = upper_pairs(n);
    let cols = linearization(&base.coefficient(0), m);
    let rows = b0.len();
    let a = Matrix::from_fn(rows, unknowns.len(), |r, k| cols[k][r].clone());
    let rhs: Vec<QuadExt> = b0.iter().map(|x| -x.clone()).collect();
    let sol = a.solve(&rhs).map_err(|e| match e {
        SolveError::Inconsistent => Error::InconsistentSystem { order: m },
        SolveError::Underdetermined { rank } => Error::SingularSystem { order: m, rank, unknowns: unknowns.len() },
    })?;
    let mut out = base;
    for (&(i, j), v) in unknowns.iter().zip(&sol) {
        if !v.is_zero() {
            out = out.bump(i, j, m, v);
        }
    }
    Ok(out)
}

impl SeriesMetric {
    fn truncate_to(&self, order: usize) -> Self {
        SeriesMetric { entries: self.entries.map(|e| e.truncate(order as i64)), order: order.min(self.order) }
    }
}

/// Solves orders `1..=order` starting from `g0`.
pub fn solve_to_order(c: &StructureConstants, g0: &SymMatrix<QuadExt>, order: usize) -> Result<SeriesMetric, Error> {
    if order == 0 {
        return Err(Error::Dimension(alloc::string::String::from("order must be at least 1")));
    }
    let mut g = SeriesMetric::constant(g0, 0)?;
    for m in 1..=order {
        g = solve_next_order(c, &g, m)?;
    }
    Ok(g)
}

/// How far one residual block vanishes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockVanishing {
    /// Highest ρ-order at which the block is known.
    pub representable: i64,
    /// Coefficients `0..=vanishes_through` are all zero (−1 if none).
    pub vanishes_through: i64,
}

impl BlockVanishing {
    fn of(series: &[&PowerSeries]) -> Self {
        let representable = series.iter().filter_map(|s| s.order()).min().unwrap_or(0);
        let first_nonzero = series
            .iter()
            .map(|s| s.valuation())
            .min()
            .unwrap_or(i64::MAX);
        BlockVanishing { representable, vanishes_through: (first_nonzero - 1).min(representable) }
    }

    pub fn complete(&self) -> bool {
        self.vanishes_through >= self.representable
    }
}

/// Vanishing orders of the three residual blocks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConsistencyReport {
    pub rab: BlockVanishing,
    pub rainf: BlockVanishing,
    pub rinfinf: BlockVanishing,
}

impl ConsistencyReport {
    /// `R̃_ab` vanishes through its representable order, as a solution must.
    pub fn precondition_met(&self) -> bool {
        self.rab.complete()
    }

    /// `R̃_a∞` and `R̃_∞∞` vanish through every representable order.
    pub fn consistent(&self) -> bool {
        self.rainf.complete() && self.rinfinf.complete()
    }
}

pub fn consistency_check(c: &StructureConstants, g: &SeriesMetric) -> Result<ConsistencyReport, Error> {
    let r = fg_residual(c, g)?;
    let n = g.dim();
    let rab: Vec<&PowerSeries> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| &r.rab[(a, b)]).collect();
    Ok(ConsistencyReport {
        rab: BlockVanishing::of(&rab),
        rainf: BlockVanishing::of(&r.rainf.iter().collect::<Vec<_>>()),
        rinfinf: BlockVanishing::of(&[&r.rinfinf]),
    })
}
