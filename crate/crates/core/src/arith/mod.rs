//! Exact scalar arithmetic.
//!
//! Everything above this module is generic over [`Field`], so the same
//! polynomial code runs over the Gaussian rationals `Q(i)` (all symbolic
//! checks) and over prime fields `F_p` with `p = 1 mod 4` (the bounded
//! search for rational points).

mod fp;
mod gauss;
mod rat;

use std::fmt;

pub use fp::{fp_sqrt_minus_one, FpElem, PrimeField};
pub use gauss::GaussRat;
pub use rat::Rat;

use crate::error::Result;

/// A commutative field with an optional runtime context.
///
/// The context carries whatever an element needs to build constants out of
/// nothing: `()` for `Q(i)`, the modulus for `F_p`. `Display` must produce
/// the canonical text encoding, and [`Field::parse`] must accept it.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn context(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self>;

    fn is_one(&self) -> bool {
        self.sub(&Self::one(&self.context())).is_zero()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// The four field operations, as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two Gaussian rationals; division by zero is an error.
pub fn gauss_arith(a: &GaussRat, b: &GaussRat, op: ArithOp) -> Result<GaussRat> {
    Ok(match op {
        ArithOp::Add => Field::add(a, b),
        ArithOp::Sub => Field::sub(a, b),
        ArithOp::Mul => Field::mul(a, b),
        ArithOp::Div => Field::div(a, b).ok_or(crate::Error::DivisionByZero)?,
    })
}
