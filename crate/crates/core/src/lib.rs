//! Exact algebra over small finite fields: field towers, sparse forms, Lang's
//! composition of forms, Weil restriction, projective point search, Milnor K-theory
//! symbols of low degree, truncated Laurent series and inseparable norms over `F_p(u)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod descent;
pub mod error;
pub mod field;
pub mod imperfect;
pub mod lang;
pub mod laurent;
pub mod linalg;
pub mod milnor;
pub mod points;
pub mod poly;
pub mod ratfunc;
pub mod upoly;
mod util;

pub use error::{Error, Result};
pub use field::{discrete_log, make_field, norm, trace, Embedding, Extension, Field, FieldElem};
pub use poly::{Hypersurface, Monomial, MultiPoly, Ring};
pub use ratfunc::{Place, RationalFunc};
pub use upoly::UPoly;
