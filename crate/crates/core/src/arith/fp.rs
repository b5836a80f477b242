use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// A prime field `F_p` with `p = 1 mod 4`, together with a fixed square
/// root of `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    sqrt_minus_one: u64,
}

impl PrimeField {
    /// Largest supported modulus; products of two residues must fit in `u64`.
    pub const MAX_MODULUS: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_MODULUS {
            return Err(Error::UnsupportedField {
                p,
                reason: "modulus too large",
            });
        }
        if !is_prime(p) {
            return Err(Error::UnsupportedField {
                p,
                reason: "not prime",
            });
        }
        if p % 4 != 1 {
            return Err(Error::UnsupportedField {
                p,
                reason: "p is not 1 mod 4",
            });
        }
        // c^((p-1)/4) squares to -1 as soon as c is a non-residue
        let j = (2..p)
            .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
            .map(|c| pow_mod(c, (p - 1) / 4, p))
            .expect("a non-residue exists for odd p");
        Ok(PrimeField {
            p,
            sqrt_minus_one: j.min(p - j),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn sqrt_minus_one(&self) -> FpElem {
        self.elem(self.sqrt_minus_one)
    }

    pub fn elem(&self, v: u64) -> FpElem {
        FpElem {
            value: v % self.p,
            field: *self,
        }
    }

    pub fn elem_i64(&self, v: i64) -> FpElem {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `j` with `j^2 = -1 mod p`.
pub fn fp_sqrt_minus_one(p: u64) -> Result<FpElem> {
    Ok(PrimeField::new(p)?.sqrt_minus_one())
}

/// An element of [`PrimeField`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    field: PrimeField,
}

impl FpElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn p(&self) -> u64 {
        self.field.p
    }
}

impl Field for FpElem {
    type Ctx = PrimeField;

    fn zero(ctx: &PrimeField) -> Self {
        ctx.elem(0)
    }

    fn one(ctx: &PrimeField) -> Self {
        ctx.elem(1)
    }

    fn from_i64(ctx: &PrimeField, n: i64) -> Self {
        ctx.elem_i64(n)
    }

    fn context(&self) -> PrimeField {
        self.field
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.value + rhs.value)
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.value + self.p() - rhs.value)
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.value * rhs.value)
    }

    fn neg(&self) -> Self {
        self.field.elem(self.p() - self.value)
    }

    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.field.elem(pow_mod(self.value, self.p() - 2, self.p())))
    }

    fn parse(ctx: &PrimeField, s: &str) -> Result<Self> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an F_p element: {s:?}")))?;
        Ok(ctx.elem_i64(v))
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.field.p)
    }
}
