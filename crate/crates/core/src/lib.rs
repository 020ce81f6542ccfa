//! OM factorization of monic polynomials over the p-adic integers: types,
//! Newton polygons of higher order, residual polynomials, the Montes
//! branching engine, Okutsu invariants and factor lifting.

pub mod arith;
pub mod cli;
pub mod error;
pub mod ff;
pub mod invariants;
pub mod lifting;
pub mod montes;
pub mod omtype;
pub mod polygon;
pub mod serial;

pub use error::{Error, Result};
