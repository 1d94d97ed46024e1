//! Exact algebra for left-invariant conformal structures, Fefferman-Graham
//! ambient metrics and split-octonion three-forms.
#![no_std]

extern crate alloc;

pub mod ambient;
pub mod data;
pub mod distribution;
pub mod error;
pub mod exactnum;
pub mod expr;
pub mod fgsolver;
pub mod liealg;
pub mod linalg;
pub mod octonion;
pub mod projective;

pub use error::Error;
