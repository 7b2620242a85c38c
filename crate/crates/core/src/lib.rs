//! Exact arithmetic for Carlitz multiple polylogarithms over F_q(θ).
//!
//! The crate evaluates Carlitz multiple (star) polylogarithms at the infinite
//! place and at a finite place v, builds the t-modules whose logarithms
//! produce them, continues the v-adic values to the closed unit polydisc, and
//! checks the equivalence between simultaneous v-adic vanishing, torsion of
//! the associated special point, and Eulerianness at ∞.

pub mod algebra;
pub mod completions;
pub mod continuation;
pub mod criterion;
pub mod error;
pub mod json;
pub mod parse;
pub mod polylog;
pub mod tmodule;

pub use error::{Error, Result};
