//! JSON file formats. Lie-algebra, metric and table indices are 1-based;
//! three-form indices use the 7-frame (0 = t, 6 = ρ).

use std::collections::BTreeMap;

use ambientforge_core::ambient::ThreeForm;
use ambientforge_core::data::{ambient_var, rho_var};
use ambientforge_core::distribution::{parse_function, CoordVectorField};
use ambientforge_core::exactnum::{MultivarRational, QuadExt, Rational, RhoFunction, Ring, VARS};
use ambientforge_core::expr::eval_str;
use ambientforge_core::fgsolver::SeriesMetric;
use ambientforge_core::liealg::{StructureConstants, SymMatrix};
use ambientforge_core::linalg::Matrix;
use ambientforge_core::projective::ConnectionTable;
use serde::{Deserialize, Serialize};

use crate::CliError;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn core_err(context: impl Into<String>) -> impl FnOnce(ambientforge_core::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Core { context, source }
}

/// Parses `"i,j,…"` into `n` indices.
fn parse_key(key: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let parts: Result<Vec<usize>, _> = key.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(invalid(format!("bad index key {key:?}, expected {n} comma-separated integers"))),
    }
}

fn join_key(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_rational(src: &str) -> Result<Rational, CliError> {
    eval_str(src, &|_: &str| None::<Rational>).map_err(core_err(format!("rational {src:?}")))
}

pub fn parse_rho(src: &str) -> Result<RhoFunction, CliError> {
    eval_str(src, &rho_var).map_err(core_err(format!("expression {src:?}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub a: usize,
    pub b: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// `[E_a, E_b] = Σ_k coeffs[k] E_k`; omitted pairs are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstantsFile {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

impl StructureConstantsFile {
    pub fn to_algebra(&self) -> Result<StructureConstants, CliError> {
        let n = self.dim;
        let mut sc = StructureConstants::abelian(n);
        for br in &self.brackets {
            if br.a == br.b || !(1..=n).contains(&br.a) || !(1..=n).contains(&br.b) {
                return Err(invalid(format!("bracket ({}, {}) out of range for dim {n}", br.a, br.b)));
            }
            for (k, v) in &br.coeffs {
                let k: usize = k.trim().parse().map_err(|_| invalid(format!("bad basis index {k:?}")))?;
                if !(1..=n).contains(&k) {
                    return Err(invalid(format!("basis index {k} out of range for dim {n}")));
                }
                sc.set(br.a - 1, br.b - 1, k - 1, parse_rational(v)?);
            }
        }
        sc.validated().map_err(core_err("structure constants"))
    }

    pub fn from_algebra(c: &StructureConstants) -> Self {
        let mut brackets: Vec<BracketEntry> = Vec::new();
        for (a, b, k, v) in c.nonzero() {
            match brackets.last_mut() {
                Some(last) if (last.a, last.b) == (a + 1, b + 1) => {
                    last.coeffs.insert((k + 1).to_string(), v.to_string());
                }
                _ => brackets.push(BracketEntry {
                    a: a + 1,
                    b: b + 1,
                    coeffs: BTreeMap::from([((k + 1).to_string(), v.to_string())]),
                }),
            }
        }
        StructureConstantsFile { dim: c.dim(), brackets }
    }
}

/// Symmetric matrix of functions of ρ, keyed `"i,j"`; one triangle suffices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub dim: usize,
    pub entries: BTreeMap<String, String>,
}

impl MetricFile {
    pub fn to_metric(&self) -> Result<SymMatrix<RhoFunction>, CliError> {
        let n = self.dim;
        let mut m: BTreeMap<(usize, usize), RhoFunction> = BTreeMap::new();
        for (key, src) in &self.entries {
            let ij = parse_key(key, 2)?;
            let (i, j) = (ij[0], ij[1]);
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(invalid(format!("metric entry {key} out of range for dim {n}")));
            }
            let v = parse_rho(src)?;
            for (p, q) in [(i - 1, j - 1), (j - 1, i - 1)] {
                match m.get(&(p, q)) {
                    Some(old) if *old != v => return Err(invalid(format!("metric entry {key} disagrees with its transpose"))),
                    _ => {
                        m.insert((p, q), v.clone());
                    }
                }
            }
        }
        let full = Matrix::from_fn(n, n, |i, j| m.get(&(i, j)).cloned().unwrap_or_else(RhoFunction::zero));
        SymMatrix::new(full).map_err(core_err("metric"))
    }

    /// Constant metric, e.g. the representative at ρ = 0.
    pub fn to_constant_metric(&self) -> Result<SymMatrix<QuadExt>, CliError> {
        let g = self.to_metric()?;
        let m = g.matrix().try_map(|f| {
            if f.is_constant() {
                f.evaluate_rho0().map_err(core_err("metric"))
            } else {
                Err(invalid(format!("expected a constant metric, found entry {f}")))
            }
        })?;
        SymMatrix::new(m).map_err(core_err("metric"))
    }

    pub fn from_metric(g: &SymMatrix<RhoFunction>) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..g.dim() {
            for j in i..g.dim() {
                if !g.get(i, j).is_zero() {
                    entries.insert(join_key(&[i + 1, j + 1]), g.get(i, j).to_string());
                }
            }
        }
        MetricFile { dim: g.dim(), entries }
    }
}

/// Components `Φ_ijk`, `i < j < k`, as expressions in `t`, `rho`, `s`, `sqrt2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeFormFile {
    pub dim: usize,
    pub components: BTreeMap<String, String>,
}

impl ThreeFormFile {
    pub fn to_form(&self) -> Result<ThreeForm<RhoFunction>, CliError> {
        let mut phi = ThreeForm::zero(self.dim);
        for (key, src) in &self.components {
            let idx = parse_key(key, 3)?;
            if !(idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < self.dim) {
                return Err(invalid(format!("three-form key {key} must be strictly increasing and below {}", self.dim)));
            }
            let v = eval_str(src, &ambient_var).map_err(core_err(format!("three-form component {key}")))?;
            phi.set(idx[0], idx[1], idx[2], v);
        }
        Ok(phi)
    }
}

/// Vector fields on `(x, y, p, r, z)` with `r = q^{1/3}`. `monge` is the
/// Monge function `F`, `frame` an optional realization `L1..Ln` of the Lie
/// algebra, `fields` the symmetry candidates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFieldsFile {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monge: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub frame: BTreeMap<String, Vec<String>>,
    pub fields: BTreeMap<String, Vec<String>>,
}

/// Orders names like `R2 < R10` by their numeric suffix.
fn natural_order(names: &mut [String]) {
    let split = |s: &str| {
        let digits = s.trim_start_matches(|c: char| !c.is_ascii_digit());
        (s[..s.len() - digits.len()].to_string(), digits.parse::<u64>().unwrap_or(0))
    };
    names.sort_by_key(|s| split(s));
}

fn parse_fields(map: &BTreeMap<String, Vec<String>>) -> Result<Vec<(String, CoordVectorField)>, CliError> {
    let mut names: Vec<String> = map.keys().cloned().collect();
    natural_order(&mut names);
    names
        .into_iter()
        .map(|name| {
            let comps: Vec<&str> = map[&name].iter().map(String::as_str).collect();
            let f = CoordVectorField::parse(&comps).map_err(core_err(format!("field {name}")))?;
            Ok((name, f))
        })
        .collect()
}

impl VectorFieldsFile {
    fn check_vars(&self) -> Result<(), CliError> {
        if self.vars.iter().map(String::as_str).ne(VARS.iter().copied()) {
            return Err(invalid(format!("vars must be {VARS:?}")));
        }
        Ok(())
    }

    pub fn monge_function(&self) -> Result<Option<MultivarRational>, CliError> {
        self.check_vars()?;
        self.monge
            .as_deref()
            .map(|src| parse_function(src).map_err(core_err(format!("Monge function {src:?}"))))
            .transpose()
    }

    pub fn frame_fields(&self) -> Result<Vec<(String, CoordVectorField)>, CliError> {
        self.check_vars()?;
        parse_fields(&self.frame)
    }

    pub fn symmetry_fields(&self) -> Result<Vec<(String, CoordVectorField)>, CliError> {
        self.check_vars()?;
        parse_fields(&self.fields)
    }
}

/// Taylor coefficients `[rational part, √2 part]` of the upper triangle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub order: usize,
    pub field: String,
    pub coefficients: BTreeMap<String, Vec<[String; 2]>>,
}

impl SeriesFile {
    pub fn from_series(g: &SeriesMetric) -> Self {
        let mut coefficients = BTreeMap::new();
        for i in 0..g.dim() {
            for j in i..g.dim() {
                let e = g.get(i, j);
                if (0..=g.order()).all(|k| e.coeff(k).is_zero()) {
                    continue;
                }
                let cs = (0..=g.order()).map(|k| {
                    let c = e.coeff(k);
                    [c.a.to_string(), c.b.to_string()]
                });
                coefficients.insert(join_key(&[i + 1, j + 1]), cs.collect());
            }
        }
        SeriesFile { order: g.order(), field: "Q(sqrt2)".to_string(), coefficients }
    }
}

/// `{"a,b,c": "expression"}`.
pub type TableFile = BTreeMap<String, String>;

pub fn table_to_file(t: &ConnectionTable) -> TableFile {
    t.entries().map(|(&(a, b, c), v)| (join_key(&[a, b, c]), v.to_string())).collect()
}

pub fn table_from_file(f: &TableFile) -> Result<ConnectionTable, CliError> {
    let mut t = ConnectionTable::new();
    for (key, src) in f {
        let idx = parse_key(key, 3)?;
        if idx.iter().any(|i| !(1..=6).contains(i)) {
            return Err(invalid(format!("table key {key} out of range 1..6")));
        }
        t.insert(idx[0], idx[1], idx[2], parse_rho(src)?);
    }
    Ok(t)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(src: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(src).map_err(|source| CliError::Json { origin: origin.to_string(), source })
}
