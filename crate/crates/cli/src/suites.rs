//! The verification suites.

use std::time::Instant;

use ambientforge_core::ambient::{
    build_ambient, check_preambient, frame_label, holonomy_span, levi_civita_ambient, parallel_form_violations,
    ricci_ambient, stabilizer_dim, AmbientMetric,
};
use ambientforge_core::distribution::{
    check_frame_realization, flag_ranks, is_infinitesimal_symmetry, monge_distribution, monge_genericity,
    symmetry_algebra_closure, ClosureError, CoordVectorField, Distribution, Genericity,
};
use ambientforge_core::exactnum::{QuadExt, Rational, RhoFunction, Ring};
use ambientforge_core::fgsolver::{consistency_check, solve_to_order, SeriesMetric};
use ambientforge_core::liealg::{signature, StructureConstants, SymMatrix};
use ambientforge_core::octonion::{commutator, in_span, is_skew_for, FiniteAlgebra};
use ambientforge_core::projective::{
    compare_tables, project_ambient_connection, projection_inhomogeneities, torsion_defects,
};
use ambientforge_core::Error;
use clap::ValueEnum;
use serde::Deserialize;
use serde_json::json;

use crate::config::Inputs;
use crate::formats::{table_to_file, SeriesFile};
use crate::report::{Check, Report};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Distribution,
    Symmetries,
    FgSeries,
    AmbientRicci,
    Holonomy,
    ThreeForm,
    Octonion,
    Projective,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::Distribution,
        Suite::Symmetries,
        Suite::FgSeries,
        Suite::AmbientRicci,
        Suite::Holonomy,
        Suite::ThreeForm,
        Suite::Octonion,
        Suite::Projective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Distribution => "distribution",
            Suite::Symmetries => "symmetries",
            Suite::FgSeries => "fg-series",
            Suite::AmbientRicci => "ambient-ricci",
            Suite::Holonomy => "holonomy",
            Suite::ThreeForm => "three-form",
            Suite::Octonion => "octonion",
            Suite::Projective => "projective",
            Suite::All => "all",
        }
    }
}

fn core_err(context: &str) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Core { context: context.to_string(), source }
}

fn timed<T>(report: &mut Report, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    report.time(name, start.elapsed());
    out
}

pub fn run_suite(suite: Suite, inputs: &Inputs) -> Result<Report, CliError> {
    match suite {
        Suite::Distribution => distribution(inputs),
        Suite::Symmetries => symmetries(inputs),
        Suite::FgSeries => fg_series(inputs),
        Suite::AmbientRicci => ambient_ricci(inputs),
        Suite::Holonomy => holonomy(inputs),
        Suite::ThreeForm => three_form(inputs),
        Suite::Octonion => octonion(inputs),
        Suite::Projective => projective(inputs),
        Suite::All => all(inputs),
    }
}

/// Every suite, run concurrently and assembled in order of suite name.
fn all(inputs: &Inputs) -> Result<Report, CliError> {
    let mut suites = Suite::INDIVIDUAL.to_vec();
    suites.sort_by_key(|s| s.name());
    let results: Vec<Result<Report, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| scope.spawn(move || run_suite(s, inputs))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Report::combine("all", reports))
}

fn ambient(inputs: &Inputs) -> Result<AmbientMetric<RhoFunction>, CliError> {
    build_ambient(&inputs.metric).map_err(core_err("ambient metric"))
}

fn distribution(inputs: &Inputs) -> Result<Report, CliError> {
    let mut r = Report::new("distribution");
    let frame: Vec<CoordVectorField> = inputs.frame.iter().map(|(_, f)| f.clone()).collect();
    if frame.len() != inputs.algebra.dim() {
        return Err(CliError::Invalid(format!(
            "frame has {} fields, the Lie algebra has dimension {}",
            frame.len(),
            inputs.algebra.dim()
        )));
    }
    let plane = Distribution::new(inputs.plane.iter().map(|c| CoordVectorField::combination(&frame, c)).collect());
    let monge = monge_distribution(&inputs.monge);
    for (name, d) in [("flag_ranks_frame", &plane), ("flag_ranks_monge", &monge)] {
        let f = timed(&mut r, name, || flag_ranks(d));
        let (a, b, c) = f.generic;
        r.push(
            Check::new(name, f.generic == (2, 3, 5) && !f.rank_drop)
                .with("generic", [a, b, c])
                .with("sample", f.sample.map(|(a, b, c)| [a, b, c]))
                .with("rank_drop", f.rank_drop),
        );
    }
    let real = timed(&mut r, "frame_realization", || check_frame_realization(&inputs.algebra, &frame, &inputs.plane, &monge))
        .map_err(core_err("frame"))?;
    let n = frame.len();
    let names = |a: usize| inputs.frame[a].0.clone();
    let mismatches: Vec<String> = real.bracket_mismatches.iter().map(|&(a, b)| format!("[{},{}]", names(a), names(b))).collect();
    r.push(
        Check::new("frame_brackets", mismatches.is_empty())
            .with("pairs_checked", n * (n - 1) / 2)
            .with("mismatches", mismatches),
    );
    r.push(Check::new("plane_span", real.span_matches));
    let g = timed(&mut r, "monge_genericity", || monge_genericity(&inputs.monge));
    let verdict = match g {
        Genericity::Generic => "generic",
        Genericity::NotGeneric => "not generic",
        Genericity::Indeterminate => "indeterminate",
    };
    r.push(Check::new("monge_genericity", g == Genericity::Generic).with("result", verdict));
    Ok(r)
}

fn bracket_strings(c: &StructureConstants, names: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut current: Option<(usize, usize, Vec<String>)> = None;
    let term = |k: usize, v: &Rational| {
        if *v == Rational::one() {
            names[k].clone()
        } else if *v == -Rational::one() {
            format!("-{}", names[k])
        } else {
            format!("{}*{}", v, names[k])
        }
    };
    for (a, b, k, v) in c.nonzero() {
        match &mut current {
            Some((ca, cb, terms)) if (*ca, *cb) == (a, b) => terms.push(term(k, v)),
            _ => {
                if let Some((ca, cb, terms)) = current.take() {
                    out.push(format!("[{},{}] = {}", names[ca], names[cb], terms.join(" + ")));
                }
                current = Some((a, b, vec![term(k, v)]));
            }
        }
    }
    if let Some((ca, cb, terms)) = current {
        out.push(format!("[{},{}] = {}", names[ca], names[cb], terms.join(" + ")));
    }
    out
}

fn symmetries(inputs: &Inputs) -> Result<Report, CliError> {
    let mut r = Report::new("symmetries");
    if inputs.symmetries.is_empty() {
        return Ok(r);
    }
    let d = monge_distribution(&inputs.monge);
    let names: Vec<String> = inputs.symmetries.iter().map(|(n, _)| n.clone()).collect();
    let fields: Vec<CoordVectorField> = inputs.symmetries.iter().map(|(_, f)| f.clone()).collect();
    let failing: Vec<String> = timed(&mut r, "infinitesimal_symmetries", || {
        inputs.symmetries.iter().filter(|(_, f)| !is_infinitesimal_symmetry(f, &d)).map(|(n, _)| n.clone()).collect()
    });
    r.push(Check::new("infinitesimal_symmetries", failing.is_empty()).with("fields", &names).with("failing", failing));
    match timed(&mut r, "bracket_closure", || symmetry_algebra_closure(&fields)) {
        Ok(c) => {
            r.push(Check::new("bracket_closure", true).with("dimension", c.dim()).with("brackets", bracket_strings(&c, &names)));
            r.push(Check::new("jacobi", c.check_jacobi()));
            r.summarize("dimension", c.dim());
        }
        Err(ClosureError::Dependent) => r.push(Check::new("bracket_closure", false).with("reason", "fields are linearly dependent")),
        Err(ClosureError::NotClosed { i, j }) => r.push(
            Check::new("bracket_closure", false)
                .with("reason", format!("[{},{}] is not a constant combination", names[i], names[j])),
        ),
    }
    Ok(r)
}

fn fg_series(inputs: &Inputs) -> Result<Report, CliError> {
    if inputs.order == 0 {
        return Err(CliError::Invalid("order must be at least 1".to_string()));
    }
    let mut r = Report::new("fg-series");
    let c = &inputs.algebra;
    let solved = timed(&mut r, "recursion", || solve_to_order(c, &inputs.initial_metric, inputs.order));
    let g = match solved {
        Ok(g) => g,
        Err(e @ (Error::SingularSystem { .. } | Error::InconsistentSystem { .. })) => {
            r.push(Check::new("recursion", false).with("error", e.to_string()));
            return Ok(r);
        }
        Err(e) => return Err(core_err("series recursion")(e)),
    };
    r.push(Check::new("recursion", true).with("order", inputs.order));
    if inputs.custom.closed_form_applies() {
        let gold = SeriesMetric::from_closed_form(&inputs.metric, inputs.order).map_err(core_err("closed-form metric"))?;
        let n = g.dim();
        let mismatches: Vec<String> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| g.get(i, j) != gold.get(i, j))
            .map(|(i, j)| format!("{},{}", i + 1, j + 1))
            .collect();
        r.push(Check::new("closed_form_match", mismatches.is_empty()).with("mismatches", mismatches));
    }
    if inputs.custom == Default::default() {
        let n = g.dim();
        let varying: Vec<String> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| (1..=g.order()).any(|k| !g.get(i, j).coeff(k).is_zero()))
            .map(|(i, j)| format!("{},{}", i + 1, j + 1))
            .collect();
        let expected = ["1,1", "1,3", "2,5", "3,3", "3,4"];
        r.push(Check::new("varying_entries", varying == expected).with("varying", varying));
    }
    let report = timed(&mut r, "remaining_equations", || consistency_check(c, &g)).map_err(core_err("consistency"))?;
    let block = |b: &ambientforge_core::fgsolver::BlockVanishing| {
        json!({"representable": b.representable, "vanishes_through": b.vanishes_through})
    };
    r.push(
        Check::new("remaining_equations", report.precondition_met() && report.consistent())
            .with("rab", block(&report.rab))
            .with("rainf", block(&report.rainf))
            .with("rinfinf", block(&report.rinfinf)),
    );
    r.summarize("series", SeriesFile::from_series(&g));
    Ok(r)
}

/// The representative to compare the ambient metric against at ρ = 0.
fn representative(inputs: &Inputs) -> Result<SymMatrix<QuadExt>, CliError> {
    if inputs.custom.metric && !inputs.custom.initial_metric {
        let m = inputs.metric.matrix().try_map(|f| f.evaluate_rho0()).map_err(core_err("metric at rho = 0"))?;
        SymMatrix::new(m).map_err(core_err("metric at rho = 0"))
    } else {
        Ok(inputs.initial_metric.clone())
    }
}

fn ambient_ricci(inputs: &Inputs) -> Result<Report, CliError> {
    let mut r = Report::new("ambient-ricci");
    let gt = ambient(inputs)?;
    let c = &inputs.algebra;
    let pre = timed(&mut r, "normal_form", || check_preambient(&gt, c, &representative(inputs)?).map_err(core_err("normal form")))?;
    r.push(
        Check::new("normal_form", pre.passed())
            .with("normal_form", pre.normal_form)
            .with("homogeneous", pre.homogeneous)
            .with("straight", pre.straight)
            .with("failures", &pre.failures),
    );
    let ric = timed(&mut r, "ricci_flat", || ricci_ambient(&gt, c)).map_err(core_err("Ricci tensor"))?;
    let n = c.dim();
    let m = gt.dim();
    let mut nonzero = Vec::new();
    let mut checked = 0;
    for x in 0..m {
        for y in x..m {
            checked += 1;
            if !ric[(x, y)].is_zero() {
                nonzero.push(format!("Ric({},{})", frame_label(n, x), frame_label(n, y)));
            }
        }
    }
    r.push(
        Check::new("ricci_flat", nonzero.is_empty())
            .with("components_checked", checked)
            .with("nonzero", nonzero.len())
            .with("first_nonzero", nonzero.first()),
    );
    Ok(r)
}

fn holonomy(inputs: &Inputs) -> Result<Report, CliError> {
    let mut r = Report::new("holonomy");
    let gt = ambient(inputs)?;
    let h = timed(&mut r, "span_rank", || holonomy_span(&gt, &inputs.algebra, inputs.depth)).map_err(core_err("holonomy"))?;
    let expected = if inputs.depth == 0 { 6 } else { 14 };
    r.push(
        Check::new("span_rank", h.rank == expected)
            .with("rank", h.rank)
            .with("expected", expected)
            .with("ranks_by_depth", &h.ranks_by_depth),
    );
    r.push(Check::new("skew", h.so_check));
    let witnesses: Vec<_> =
        h.witnesses.iter().map(|w| json!({"derivatives": w.derivatives, "pair": [w.pair.0, w.pair.1]})).collect();
    r.summarize("depth", h.depth);
    r.summarize("rank", h.rank);
    r.summarize("so_check", h.so_check);
    r.summarize("witnesses", witnesses);
    Ok(r)
}

fn three_form(inputs: &Inputs) -> Result<Report, CliError> {
    let mut r = Report::new("three-form");
    let gt = ambient(inputs)?;
    let phi = &inputs.three_form;
    let conn = levi_civita_ambient(&gt, &inputs.algebra).map_err(core_err("connection"))?;
    let bad = timed(&mut r, "parallel", || parallel_form_violations(&conn, phi));
    let n = inputs.algebra.dim();
    let first = bad.first().map(|&(x, i, j, k)| {
        let l = |v| frame_label(n, v);
        format!("(nabla_{} Phi)({},{},{})", l(x), l(i), l(j), l(k))
    });
    r.push(Check::new("parallel", bad.is_empty()).with("violations", bad.len()).with("first_violation", first));
    let (dim, in_so) = timed(&mut r, "stabilizer", || stabilizer_dim(&gt, phi)).map_err(core_err("stabilizer"))?;
    r.push(Check::new("stabilizer", dim == 14 && in_so).with("dimension", dim).with("in_so", in_so));
    Ok(r)
}

fn octonion(inputs: &Inputs) -> Result<Report, CliError> {
    let gt = ambient(inputs)?;
    let (stab, _) = stabilizer_dim(&gt, &inputs.three_form).map_err(core_err("stabilizer"))?;
    Ok(octonion_report(&FiniteAlgebra::split_octonions(), Some(stab)))
}

/// Octonion checks for an arbitrary multiplication table, so that tampered
/// tables can be run through the same path.
pub fn octonion_report(alg: &FiniteAlgebra, stabilizer: Option<usize>) -> Report {
    let mut r = Report::new("octonion");
    let ders = timed(&mut r, "derivation_dimension", || alg.derivations());
    r.push(Check::new("derivation_dimension", ders.len() == 14).with("dimension", ders.len()).with("expected", 14));
    let gram = alg.imaginary_trace_form();
    let sig = signature(&gram).map_err(|e| e.to_string());
    let sig_ok = sig == Ok((3, 4));
    r.push(match sig {
        Ok((p, q)) => Check::new("trace_form_signature", sig_ok).with("signature", [p, q]),
        Err(e) => Check::new("trace_form_signature", false).with("error", e),
    });
    r.push(Check::new("derivations_skew", ders.iter().all(|d| is_skew_for(d, &gram))));
    let closed = timed(&mut r, "commutator_closure", || {
        ders.iter().all(|a| ders.iter().all(|b| in_span(&ders, &commutator(a, b))))
    });
    r.push(Check::new("commutator_closure", closed));
    let q = FiniteAlgebra::quaternions().derivation_dim();
    let p = FiniteAlgebra::rational_pair().derivation_dim();
    r.push(Check::new("analogues", q == 3 && p == 0).with("quaternions", q).with("rational_pair", p));
    if let Some(s) = stabilizer {
        r.push(Check::new("matches_stabilizer", ders.len() == s).with("stabilizer_dimension", s));
    }
    r
}

fn projective(inputs: &Inputs) -> Result<Report, CliError> {
    if inputs.algebra.dim() != 5 {
        return Err(CliError::Invalid("connection tables are indexed over a 5-dimensional algebra plus rho".to_string()));
    }
    let mut r = Report::new("projective");
    let gt = ambient(inputs)?;
    let c = &inputs.algebra;
    let conn = timed(&mut r, "projection", || levi_civita_ambient(&gt, c)).map_err(core_err("connection"))?;
    let inhom = projection_inhomogeneities(&conn);
    r.push(Check::new("homogeneous_projection", inhom.is_empty()).with("inhomogeneous", inhom.len()));
    let projected = project_ambient_connection(&conn);
    let defects = torsion_defects(&projected, c);
    r.push(Check::new("torsion_free_projection", defects.is_empty()).with("defects", defects.len()));
    let diff = compare_tables(&inputs.table, &projected);
    let table_defects = torsion_defects(&inputs.table, c);
    let explained = |(a, b, k): (usize, usize, usize)| a != b && table_defects.contains(&(a.min(b), a.max(b), k));
    let rows: Vec<_> = diff
        .iter()
        .map(|d| {
            let (a, b, k) = d.key;
            json!({
                "key": format!("{a},{b},{k}"),
                "table": d.left.to_string(),
                "projected": d.right.to_string(),
                "table_breaks_torsion": explained(d.key),
            })
        })
        .collect();
    r.push(
        Check::new("table_comparison", diff.iter().all(|d| explained(d.key)))
            .with("exact_match", diff.is_empty())
            .with("table_entries", inputs.table.len())
            .with("projected_entries", projected.len())
            .with("discrepancies", rows),
    );
    r.summarize("projected_table", table_to_file(&projected));
    Ok(r)
}
