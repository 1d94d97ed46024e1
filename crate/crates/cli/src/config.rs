//! Suite inputs: the embedded golden data, optionally replaced file by file
//! through a JSON config. Relative paths resolve against the config's
//! directory.

use std::fs;
use std::path::{Path, PathBuf};

use ambientforge_core::ambient::ThreeForm;
use ambientforge_core::distribution::{e0_plane, CoordVectorField};
use ambientforge_core::exactnum::{MultivarRational, QuadExt, Rational, RhoFunction};
use ambientforge_core::liealg::{StructureConstants, SymMatrix};
use ambientforge_core::projective::ConnectionTable;
use serde::Deserialize;

use crate::formats::{
    from_json, table_from_file, MetricFile, StructureConstantsFile, TableFile, ThreeFormFile, VectorFieldsFile,
};
use crate::suites::Suite;
use crate::{CliError, Format};

pub mod golden {
    pub const H_ALGEBRA: &str = include_str!("../data/h_algebra.json");
    pub const INITIAL_METRIC: &str = include_str!("../data/initial_metric.json");
    pub const AMBIENT_METRIC: &str = include_str!("../data/ambient_metric.json");
    pub const THREE_FORM: &str = include_str!("../data/three_form.json");
    pub const VECTOR_FIELDS: &str = include_str!("../data/vector_fields.json");
    pub const CONNECTION_TABLE: &str = include_str!("../data/connection_table.json");
}

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_DEPTH: usize = 1;

/// Config file. Every key is optional; command-line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub suite: Option<Suite>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub order: Option<usize>,
    pub depth: Option<usize>,
    pub structure_constants: Option<PathBuf>,
    pub initial_metric: Option<PathBuf>,
    pub metric: Option<PathBuf>,
    pub three_form: Option<PathBuf>,
    pub vector_fields: Option<PathBuf>,
    pub connection_table: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let src = read(path)?;
        let cfg: ConfigFile = from_json(&src, &path.display().to_string())?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn resolve_path(p: &Path, base: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Loads `path` (relative to `base`) or falls back to the embedded text.
fn source(path: &Option<PathBuf>, base: &Path, embedded: &'static str) -> Result<(String, String, bool), CliError> {
    match path {
        Some(p) => {
            let full = resolve_path(p, base);
            Ok((read(&full)?, full.display().to_string(), true))
        }
        None => Ok((embedded.to_string(), "embedded data".to_string(), false)),
    }
}

/// Named vector fields.
pub type Fields = Vec<(String, CoordVectorField)>;

#[derive(Clone, Debug)]
pub struct Inputs {
    pub order: usize,
    pub depth: usize,
    pub algebra: StructureConstants,
    pub initial_metric: SymMatrix<QuadExt>,
    pub metric: SymMatrix<RhoFunction>,
    pub three_form: ThreeForm<RhoFunction>,
    pub monge: MultivarRational,
    pub frame: Fields,
    pub plane: Vec<Vec<(usize, Rational)>>,
    pub symmetries: Fields,
    pub table: ConnectionTable,
    /// Which inputs came from files rather than the embedded data.
    pub custom: Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Custom {
    pub algebra: bool,
    pub initial_metric: bool,
    pub metric: bool,
}

impl Custom {
    /// The closed form belongs to the same problem as the solver input.
    pub fn closed_form_applies(&self) -> bool {
        self.metric || (!self.algebra && !self.initial_metric)
    }
}

impl Inputs {
    pub fn builtin() -> Result<Self, CliError> {
        Self::resolve(&ConfigFile::default(), Path::new("."))
    }

    pub fn resolve(cfg: &ConfigFile, base: &Path) -> Result<Self, CliError> {
        let (src, origin, custom_alg) = source(&cfg.structure_constants, base, golden::H_ALGEBRA)?;
        let algebra = from_json::<StructureConstantsFile>(&src, &origin)?.to_algebra()?;

        let (src, origin, custom_metric) = source(&cfg.metric, base, golden::AMBIENT_METRIC)?;
        let metric = from_json::<MetricFile>(&src, &origin)?.to_metric()?;

        let (src, origin, custom_init) = source(&cfg.initial_metric, base, golden::INITIAL_METRIC)?;
        let initial_metric = from_json::<MetricFile>(&src, &origin)?.to_constant_metric()?;

        let (src, origin, _) = source(&cfg.three_form, base, golden::THREE_FORM)?;
        let three_form = from_json::<ThreeFormFile>(&src, &origin)?.to_form()?;

        let (src, origin, _) = source(&cfg.vector_fields, base, golden::VECTOR_FIELDS)?;
        let vf = from_json::<VectorFieldsFile>(&src, &origin)?;
        let builtin_vf = from_json::<VectorFieldsFile>(golden::VECTOR_FIELDS, "embedded data")?;
        let monge = match vf.monge_function()? {
            Some(f) => f,
            None => builtin_vf.monge_function()?.expect("embedded Monge function"),
        };
        let frame = if vf.frame.is_empty() { builtin_vf.frame_fields()? } else { vf.frame_fields()? };

        let (src, origin, _) = source(&cfg.connection_table, base, golden::CONNECTION_TABLE)?;
        let table = table_from_file(&from_json::<TableFile>(&src, &origin)?)?;

        Ok(Inputs {
            order: cfg.order.unwrap_or(DEFAULT_ORDER),
            depth: cfg.depth.unwrap_or(DEFAULT_DEPTH),
            algebra,
            initial_metric,
            metric,
            three_form,
            monge,
            frame,
            plane: e0_plane(),
            symmetries: vf.symmetry_fields()?,
            table,
            custom: Custom { algebra: custom_alg, initial_metric: custom_init, metric: custom_metric },
        })
    }
}
