//! Exact symbolic computation with the two complete families of
//! Segal-Sugawara vectors for the affine Kac-Moody algebra of gl(n):
//! the column-determinant family and the trace-power family.
//!
//! The engine works in the universal enveloping algebra of
//! t^{-1} gl_n[t^{-1}] + C tau + C K with a canonical PBW normal form
//! and exact rational coefficients.  On top of it sit
//! noncommutative matrices and column-determinants, the Segal-Sugawara
//! construction and its machine verification, the Miura map into the
//! classical W-algebra, and the evaluation to commuting Gaudin-model
//! operators.

pub mod element;
pub mod gaudin;
pub mod generator;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod ring;
pub mod sugawara;
pub mod wakimoto;
pub mod walgebra;

pub use element::NcElement;
pub use generator::{Gen, Term};
pub use matrix::{NcMatrix, USeries};
pub use poly::Poly;
pub use report::Report;
pub use ring::{cdet_generic, OpPoly, Ring};

/// Exact rational scalar used throughout.
pub type Q = num::BigRational;

/// Convenience constructor for small rationals.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Convenience constructor for integers.
pub fn qi(num: i64) -> Q {
    Q::from_integer(num.into())
}

/// Parse a rational from "p" or "p/q" form with q > 0.
pub fn q_parse(s: &str) -> Option<Q> {
    json::q_from_string(s, "$").ok()
}
