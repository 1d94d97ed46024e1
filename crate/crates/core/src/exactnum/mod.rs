//! Exact scalar types: ℚ, ℚ(√2), polynomials, rational functions, series
//! in ρ, the field ℚ(√2)(ρ, √(2+ρ)), t-graded ambient scalars and rational
//! functions in several variables.

pub mod graded;
pub mod mpoly;
pub mod mrat;
pub mod quad;
pub mod ratfunc;
pub mod rhofn;
pub mod ring;
pub mod series;
pub mod upoly;

pub use graded::{AmbientCoeff, AmbientJet, AmbientScalar, TGraded};
pub use mpoly::{MPoly, NVARS, VARS};
pub use mrat::{normalize_ratfunc, MultivarRational};
pub use quad::QuadExt;
pub use ratfunc::RatFunc;
pub use rhofn::{rho_ratio, RhoFunction};
pub use ring::{int, rat, ring_sum, OrderedField, Rational, RhoDerivation, Ring};
pub use series::PowerSeries;
pub use upoly::UPoly;
