//! Vector fields in the coordinates `(x, y, p, r, z)`, where `q = r³` on the
//! domain `r > 0`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::exactnum::{int, MPoly, MultivarRational, Rational, Ring, UPoly, NVARS, VARS};
use crate::expr::eval_str;
use crate::liealg::StructureConstants;
use crate::linalg::{Matrix, SolveError};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const P: usize = 2;
pub const R: usize = 3;
pub const Z: usize = 4;

/// Sample point used to guard generic ranks against basepoint degeneracy.
pub fn sample_point() -> [Rational; NVARS] {
    [int(0), int(0), int(0), int(1), int(0)]
}

/// Resolves a coordinate name to a rational function.
pub fn coord_var(name: &str) -> Option<MultivarRational> {
    VARS.iter().position(|v| *v == name).map(MultivarRational::var)
}

/// Parses a rational expression in the coordinates.
pub fn parse_function(src: &str) -> Result<MultivarRational, Error> {
    eval_str(src, &coord_var)
}

/// `Σ_i X^i ∂_i` with components ordered `(∂x, ∂y, ∂p, ∂r, ∂z)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoordVectorField([MultivarRational; NVARS]);

impl CoordVectorField {
    pub fn new(components: [MultivarRational; NVARS]) -> Self {
        CoordVectorField(components)
    }

    pub fn zero() -> Self {
        CoordVectorField(core::array::from_fn(|_| MultivarRational::zero()))
    }

    /// The coordinate field `∂_i`.
    pub fn coord(i: usize) -> Self {
        let mut f = Self::zero();
        f.0[i] = MultivarRational::one();
        f
    }

    /// Parses five component expressions.
    pub fn parse(components: &[&str]) -> Result<Self, Error> {
        if components.len() != NVARS {
            return Err(Error::Dimension(alloc::format!("{} components, expected {}", components.len(), NVARS)));
        }
        let mut f = Self::zero();
        for (slot, src) in f.0.iter_mut().zip(components) {
            *slot = parse_function(src)?;
        }
        Ok(f)
    }

    pub fn components(&self) -> &[MultivarRational; NVARS] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `X(f) = Σ_j X^j ∂_j f`.
    pub fn apply(&self, f: &MultivarRational) -> MultivarRational {
        let mut acc = MultivarRational::zero();
        for (j, xj) in self.0.iter().enumerate() {
            if !xj.is_zero() {
                acc = &acc + &(xj * &f.derivative(j));
            }
        }
        acc
    }

    pub fn scale(&self, f: &MultivarRational) -> Self {
        CoordVectorField(core::array::from_fn(|i| &self.0[i] * f))
    }

    pub fn add(&self, o: &Self) -> Self {
        CoordVectorField(core::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CoordVectorField(core::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    /// Components at a rational point, `None` at a pole.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Option<Vec<Rational>> {
        self.0.iter().map(|c| c.eval(point)).collect()
    }

    /// Rational combination `Σ c_i X_i`.
    pub fn combination(fields: &[CoordVectorField], coeffs: &[(usize, Rational)]) -> Self {
        coeffs.iter().fold(Self::zero(), |acc, (i, c)| acc.add(&fields[*i].scale(&MultivarRational::constant(c.clone()))))
    }
}

impl fmt::Display for CoordVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*d{}", c, VARS[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `[X, Y]^i = Σ_j (X^j ∂_j Y^i − Y^j ∂_j X^i)`.
pub fn lie_bracket(x: &CoordVectorField, y: &CoordVectorField) -> CoordVectorField {
    CoordVectorField(core::array::from_fn(|i| &x.apply(&y.0[i]) - &y.apply(&x.0[i])))
}

/// Span of vector fields over the rational-function field.
#[derive(Clone, PartialEq, Debug)]
pub struct Distribution {
    generators: Vec<CoordVectorField>,
}

impl Distribution {
    pub fn new(generators: Vec<CoordVectorField>) -> Self {
        assert!(!generators.is_empty(), "a distribution needs generators");
        Distribution { generators }
    }

    pub fn generators(&self) -> &[CoordVectorField] {
        &self.generators
    }
}

fn field_matrix(fields: &[&CoordVectorField]) -> Matrix<MultivarRational> {
    Matrix::from_rows(fields.iter().map(|f| f.0.to_vec()).collect())
}

/// Rank over the rational-function field.
pub fn generic_rank(fields: &[&CoordVectorField]) -> usize {
    if fields.is_empty() {
        0
    } else {
        field_matrix(fields).rank()
    }
}

/// Rank at a rational point, `None` if some component has a pole there.
pub fn rank_at(fields: &[&CoordVectorField], point: &[Rational; NVARS]) -> Option<usize> {
    let rows: Option<Vec<Vec<Rational>>> = fields.iter().map(|f| f.eval(point)).collect();
    Some(Matrix::from_rows(rows?).rank())
}

/// Ranks of `D`, `[D, D]` and `[D, [D, D]]` (each including the previous step).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagRanks {
    pub generic: (usize, usize, usize),
    pub sample: Option<(usize, usize, usize)>,
    /// The sample-point ranks differ from the generic ones.
    pub rank_drop: bool,
}

pub fn flag_ranks(d: &Distribution) -> FlagRanks {
    let d1: Vec<&CoordVectorField> = d.generators.iter().collect();
    let mut brackets = Vec::new();
    for i in 0..d1.len() {
        for j in i + 1..d1.len() {
            brackets.push(lie_bracket(d1[i], d1[j]));
        }
    }
    let mut d2 = d1.clone();
    d2.extend(brackets.iter());
    let mut triple = Vec::new();
    for x in &d1 {
        for y in &brackets {
            triple.push(lie_bracket(x, y));
        }
    }
    let mut d3 = d2.clone();
    d3.extend(triple.iter());
    let generic = (generic_rank(&d1), generic_rank(&d2), generic_rank(&d3));
    let p = sample_point();
    let sample = match (rank_at(&d1, &p), rank_at(&d2, &p), rank_at(&d3, &p)) {
        (Some(a), Some(b), Some(c)) => Some((a, b, c)),
        _ => None,
    };
    FlagRanks { generic, sample, rank_drop: sample.is_some_and(|s| s != generic) }
}

/// True iff `[X, Y_i]` lies in the span of the generators for every `i`.
pub fn is_infinitesimal_symmetry(x: &CoordVectorField, d: &Distribution) -> bool {
    let gens: Vec<&CoordVectorField> = d.generators.iter().collect();
    let base = generic_rank(&gens);
    d.generators.iter().all(|y| {
        let b = lie_bracket(x, y);
        let mut ext = gens.clone();
        ext.push(&b);
        generic_rank(&ext) == base
    })
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = MPoly::gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Rows of the monomial-coefficient system for `Σ c_k X_k = target` with
/// constant `c_k`: one row per (component, monomial) after clearing
/// denominators.
fn constant_combination_system(fields: &[&CoordVectorField], target: &CoordVectorField) -> (Matrix<Rational>, Vec<Rational>) {
    let mut den = MPoly::one();
    for f in fields.iter().copied().chain(core::iter::once(target)) {
        for c in &f.0 {
            den = lcm(&den, c.den());
        }
    }
    let cleared = |f: &CoordVectorField| -> Vec<MPoly> {
        f.0.iter().map(|c| (c.num() * &den).div_exact(c.den()).expect("denominator divides lcm")).collect()
    };
    let cols: Vec<Vec<MPoly>> = fields.iter().map(|f| cleared(f)).collect();
    let rhs = cleared(target);
    let mut keys = Vec::new();
    for comp in 0..NVARS {
        for p in cols.iter().map(|c| &c[comp]).chain(core::iter::once(&rhs[comp])) {
            for (e, _) in p.terms() {
                if !keys.contains(&(comp, *e)) {
                    keys.push((comp, *e));
                }
            }
        }
    }
    let coeff = |p: &MPoly, e: &[u32; NVARS]| p.terms().find(|(k, _)| *k == e).map_or(int(0), |(_, v)| v.clone());
    let a = Matrix::from_fn(keys.len(), fields.len(), |r, k| coeff(&cols[k][keys[r].0], &keys[r].1));
    let b = keys.iter().map(|(comp, e)| coeff(&rhs[*comp], e)).collect();
    (a, b)
}

/// Why a family of fields fails to close under brackets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClosureError {
    /// The fields are linearly dependent over ℚ.
    Dependent,
    /// `[X_i, X_j]` is not a constant-coefficient combination.
    NotClosed { i: usize, j: usize },
}

/// Expresses every `[X_i, X_j]` as `Σ_k c_ij^k X_k` with `c ∈ ℚ`.
pub fn symmetry_algebra_closure(fields: &[CoordVectorField]) -> Result<StructureConstants, ClosureError> {
    let refs: Vec<&CoordVectorField> = fields.iter().collect();
    let n = fields.len();
    let mut sc = StructureConstants::abelian(n);
    for i in 0..n {
        for j in i + 1..n {
            let b = lie_bracket(&fields[i], &fields[j]);
            let (a, rhs) = constant_combination_system(&refs, &b);
            match a.solve(&rhs) {
                Ok(sol) => {
                    for (k, v) in sol.into_iter().enumerate() {
                        if !v.is_zero() {
                            sc.set(i, j, k, v);
                        }
                    }
                }
                Err(SolveError::Underdetermined { .. }) => return Err(ClosureError::Dependent),
                Err(SolveError::Inconsistent) => return Err(ClosureError::NotClosed { i, j }),
            }
        }
    }
    Ok(sc)
}

/// Verdict on `∂_q² F` vanishing nowhere on `r > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Genericity {
    Generic,
    NotGeneric,
    /// A zero on the domain could be neither excluded nor exhibited.
    Indeterminate,
}

/// `∂_q = (1/(3r²)) ∂_r`.
pub fn d_q(f: &MultivarRational) -> MultivarRational {
    let factor = MultivarRational::new(MPoly::one(), MPoly::var(R).pow(2).scale(&int(3))).expect("nonzero");
    &factor * &f.derivative(R)
}

/// Single-term polynomial involving only the given variable.
fn monomial_in(p: &MPoly, var: usize) -> Option<bool> {
    let mut it = p.terms();
    let (e, _) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some(e.iter().enumerate().all(|(i, k)| i == var || *k == 0))
}

fn univariate_in(p: &MPoly, var: usize) -> Option<UPoly<Rational>> {
    let mut coeffs = Vec::new();
    for (e, c) in p.terms() {
        if e.iter().enumerate().any(|(i, k)| i != var && *k != 0) {
            return None;
        }
        let d = e[var] as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, int(0));
        }
        coeffs[d] = c.clone();
    }
    Some(UPoly::from_coeffs(coeffs))
}

fn sign_changes(seq: &[Rational]) -> usize {
    let nz: Vec<&Rational> = seq.iter().filter(|v| !v.is_zero()).collect();
    nz.windows(2).filter(|w| (w[0] < &int(0)) != (w[1] < &int(0))).count()
}

/// Number of distinct real roots in `(0, ∞)` by Sturm's theorem.
pub fn positive_root_count(p: &UPoly<Rational>) -> usize {
    // strip the factor r^k so that p(0) ≠ 0
    let lead_zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let p = UPoly::from_coeffs(p.coeffs()[lead_zeros.min(p.coeffs().len())..].to_vec());
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.is_zero() || last.degree() == Some(0) {
            break;
        }
        let prev = &seq[seq.len() - 2];
        let (_, r) = prev.div_rem(last);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&int(-1)));
    }
    let at_zero: Vec<Rational> = seq.iter().map(|s| s.coeff(0)).collect();
    let at_inf: Vec<Rational> = seq.iter().map(|s| s.leading()).collect();
    sign_changes(&at_zero).saturating_sub(sign_changes(&at_inf))
}

/// Genericity of the Monge distribution of `F(x, y, p, r, z)`.
pub fn monge_genericity(f: &MultivarRational) -> Genericity {
    let g = d_q(&d_q(f));
    if g.is_zero() {
        return Genericity::NotGeneric;
    }
    if monomial_in(g.den(), R) != Some(true) {
        return Genericity::Indeterminate;
    }
    match monomial_in(g.num(), R) {
        Some(true) => return Genericity::Generic,
        Some(false) => return Genericity::NotGeneric,
        None => {}
    }
    match univariate_in(g.num(), R) {
        Some(u) if positive_root_count(&u) == 0 => Genericity::Generic,
        Some(_) => Genericity::NotGeneric,
        None => Genericity::Indeterminate,
    }
}

/// `⟨∂x + p∂y + q∂p + F∂z, ∂q⟩` with `q = r³`, the second generator rescaled to `∂r`.
pub fn monge_distribution(f: &MultivarRational) -> Distribution {
    let mut first = CoordVectorField::zero();
    first.0[X] = MultivarRational::one();
    first.0[Y] = MultivarRational::var(P);
    first.0[P] = MultivarRational::poly(MPoly::var(R).pow(3));
    first.0[Z] = f.clone();
    Distribution::new(vec![first, CoordVectorField::coord(R)])
}

/// Outcome of checking a frame against structure constants and a plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrameRealization {
    /// Pairs `(a, b)`, `a < b`, whose bracket does not match `C`.
    pub bracket_mismatches: Vec<(usize, usize)>,
    pub span_matches: bool,
}

impl FrameRealization {
    pub fn passed(&self) -> bool {
        self.bracket_mismatches.is_empty() && self.span_matches
    }
}

/// Checks `[L_a, L_b] = C_ab^c L_c` and that the plane spanned by the given
/// rational combinations of the frame equals `target`.
pub fn check_frame_realization(
    c: &StructureConstants,
    frame: &[CoordVectorField],
    plane: &[Vec<(usize, Rational)>],
    target: &Distribution,
) -> Result<FrameRealization, Error> {
    if frame.len() != c.dim() {
        return Err(Error::Dimension(alloc::format!("frame of {} fields for a {}-dimensional algebra", frame.len(), c.dim())));
    }
    let n = c.dim();
    let mut bracket_mismatches = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let expected = (0..n).fold(CoordVectorField::zero(), |acc, k| {
                acc.add(&frame[k].scale(&MultivarRational::constant(c.get(a, b, k).clone())))
            });
            if lie_bracket(&frame[a], &frame[b]) != expected {
                bracket_mismatches.push((a, b));
            }
        }
    }
    let plane_fields: Vec<CoordVectorField> = plane.iter().map(|comb| CoordVectorField::combination(frame, comb)).collect();
    let pf: Vec<&CoordVectorField> = plane_fields.iter().collect();
    let tf: Vec<&CoordVectorField> = target.generators.iter().collect();
    let mut both = pf.clone();
    both.extend(tf.iter().copied());
    let rp = generic_rank(&pf);
    let span_matches = rp == generic_rank(&tf) && rp == generic_rank(&both);
    Ok(FrameRealization { bracket_mismatches, span_matches })
}

fn field(src: [&str; NVARS]) -> CoordVectorField {
    CoordVectorField::parse(&src).expect("built-in field")
}

/// The frame `L_1..L_5` realizing the brackets of `h` in coordinates.
pub fn l_frame() -> Vec<CoordVectorField> {
    vec![
        field(["0", "0", "0", "0", "1"]),
        field(["0", "r", "0", "0", "0"]),
        field(["0", "0", "r^2", "0", "0"]),
        field(["1/r", "p/r", "0", "0", "y/r"]),
        field(["0", "0", "0", "r", "0"]),
    ]
}

/// The plane `E_0 = ⟨E_1 + E_3 + E_4, E_5⟩` as frame combinations.
pub fn e0_plane() -> Vec<Vec<(usize, Rational)>> {
    vec![vec![(0, int(1)), (2, int(1)), (3, int(1))], vec![(4, int(1))]]
}

/// `F = y + q^{1/3} = y + r`.
pub fn monge_function() -> MultivarRational {
    parse_function("y + r").expect("built-in function")
}

/// `R_1..R_5`, the right-invariant fields.
pub fn right_invariant_fields() -> Vec<CoordVectorField> {
    vec![
        field(["0", "0", "0", "0", "1"]),
        field(["0", "1", "0", "0", "x"]),
        field(["0", "x", "1", "0", "x^2/2"]),
        field(["1", "0", "0", "0", "0"]),
        field(["-x", "y", "2*p", "r", "0"]),
    ]
}

/// `R_6`, the symmetry that is not right-invariant.
pub fn extra_symmetry() -> CoordVectorField {
    field(["-y", "0", "p^2", "p*r", "-y^2/2"])
}

/// Names used in files and reports for the built-in symmetries.
pub fn symmetry_names() -> Vec<String> {
    (1..=6).map(|i| alloc::format!("R{}", i)).collect()
}

pub fn symmetry_fields() -> Vec<CoordVectorField> {
    let mut v = right_invariant_fields();
    v.push(extra_symmetry());
    v
}
