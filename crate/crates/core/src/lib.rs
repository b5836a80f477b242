//! Exact verification toolkit for the unirationality of the quotient of a
//! triple product of harmonic elliptic curves by an order-4 automorphism.
//!
//! Layering, bottom up: [`arith`] (scalars), [`poly`] (polynomials and
//! rational functions), [`funcfield`] (the function field of the triple
//! product), [`identities`] (every displayed relation as a checkable
//! report), [`conic`] (conic bundle, parametrization, absence of a section),
//! and [`pipeline`] (the dominant map from projective 3-space and its
//! certificates).

pub mod arith;
pub mod conic;
pub mod error;
pub mod funcfield;
pub mod identities;
pub mod pipeline;
pub mod poly;

pub use error::{Error, Result};
