//! Arbitrary-precision complex numbers on top of `astro_float::BigFloat`.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::arith::{GaussRat, Rat};

const RM: RoundingMode = RoundingMode::ToEven;

/// `re + im*i` with every operation rounded to `prec` bits.
#[derive(Debug, Clone)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

fn bigint_to_float(n: &BigInt, prec: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    // most significant digit first, exact up to the working precision
    let base = BigFloat::from_u64(1 << 32, prec).mul(&BigFloat::from_u64(1 << 32, prec), prec, RM);
    let mut acc = BigFloat::from_u64(0, prec);
    for d in digits.iter().rev() {
        acc = acc
            .mul(&base, prec, RM)
            .add(&BigFloat::from_u64(*d, prec), prec, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc = acc.neg();
    }
    acc
}

fn rat_to_float(r: &Rat, prec: usize) -> BigFloat {
    bigint_to_float(r.numer(), prec).div(&bigint_to_float(r.denom(), prec), prec, RM)
}

impl Complex {
    pub fn zero(prec: usize) -> Self {
        Complex {
            re: BigFloat::from_u64(0, prec),
            im: BigFloat::from_u64(0, prec),
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Complex {
            re: BigFloat::from_i64(n, prec),
            im: BigFloat::from_u64(0, prec),
            prec,
        }
    }

    pub fn from_gauss(z: &GaussRat, prec: usize) -> Self {
        Complex {
            re: rat_to_float(&z.re, prec),
            im: rat_to_float(&z.im, prec),
            prec,
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec;
        Complex {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            prec: p,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec;
        Complex {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            prec: p,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        let re = self
            .re
            .mul(&o.re, p, RM)
            .sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self
            .re
            .mul(&o.im, p, RM)
            .add(&self.im.mul(&o.re, p, RM), p, RM);
        Complex { re, im, prec: p }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// `None` when the divisor is exactly zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let p = self.prec;
        let d = o.norm_sqr();
        let re = self
            .re
            .mul(&o.re, p, RM)
            .add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self
            .im
            .mul(&o.re, p, RM)
            .sub(&self.re.mul(&o.im, p, RM), p, RM);
        Some(Complex {
            re: re.div(&d, p, RM),
            im: im.div(&d, p, RM),
            prec: p,
        })
    }

    pub fn neg(&self) -> Self {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
            prec: self.prec,
        }
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> Self {
        Complex {
            re: self.im.neg(),
            im: self.re.clone(),
            prec: self.prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// Principal square root: real part `>= 0`, branch cut on the negative
    /// real axis mapped to the upper half plane.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        if self.is_zero() {
            return Complex::zero(p);
        }
        let two = BigFloat::from_u64(2, p);
        let r = self.abs();
        if !self.re.is_negative() {
            let t = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
            let im = self.im.div(&t.mul(&two, p, RM), p, RM);
            Complex { re: t, im, prec: p }
        } else {
            let t = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
            let re = self.im.abs().div(&t.mul(&two, p, RM), p, RM);
            let im = if self.im.is_negative() { t.neg() } else { t };
            Complex { re, im, prec: p }
        }
    }

    /// `floor(log2 |z|)`-ish: the larger binary exponent of the two parts,
    /// `None` for zero.
    pub fn log2_magnitude(&self) -> Option<i64> {
        let e = |x: &BigFloat| {
            if x.is_zero() {
                None
            } else {
                x.exponent().map(|e| e as i64)
            }
        };
        match (e(&self.re), e(&self.im)) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    /// Bitwise equality of both parts.
    pub fn same_bits(&self, o: &Self) -> bool {
        self.re.cmp(&o.re) == Some(0) && self.im.cmp(&o.im) == Some(0)
    }
}

/// Decimal rendering of one part, deterministic for a given precision.
pub fn format_float(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut cc = Consts::new().expect("constant cache");
    x.format(Radix::Dec, RM, &mut cc).expect("finite value")
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = &self.im;
        if im.is_zero() {
            write!(f, "{}", format_float(&self.re))
        } else if im.is_negative() {
            write!(
                f,
                "{}-{}*i",
                format_float(&self.re),
                format_float(&im.neg())
            )
        } else {
            write!(f, "{}+{}*i", format_float(&self.re), format_float(im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> Complex {
        Complex::from_gauss(&GaussRat::new(Rat::from_i64(re), Rat::from_i64(im)), 128)
    }

    #[test]
    fn sqrt_examples() {
        assert!(c(-4, 0).sqrt().same_bits(&c(0, 2)));
        assert!(c(0, 2).sqrt().same_bits(&c(1, 1)));
        assert!(c(0, -2).sqrt().same_bits(&c(1, -1)));
        assert!(c(9, 0).sqrt().same_bits(&c(3, 0)));
        let z = c(3, -7);
        let r = z.sqrt();
        assert!(!r.re.is_negative());
        let err = r.square().sub(&z);
        assert!(err.log2_magnitude().is_none_or(|e| e < -115));
    }

    #[test]
    fn division_and_mul_i() {
        let q = c(1, 1).div(&c(1, -1)).unwrap();
        assert!(q.same_bits(&c(0, 1)));
        assert!(c(2, 3).mul_i().same_bits(&c(-3, 2)));
        assert!(c(1, 0).div(&c(0, 0)).is_none());
    }

    #[test]
    fn large_integers_convert_exactly() {
        let n: BigInt = BigInt::from(3u8).pow(60);
        let x = bigint_to_float(&n, 128);
        let back = BigFloat::parse(
            &n.to_string(),
            Radix::Dec,
            128,
            RM,
            &mut Consts::new().unwrap(),
        );
        assert_eq!(x.cmp(&back), Some(0));
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(c(1, -2).to_string(), c(1, -2).to_string());
        assert!(c(0, 0).to_string() == "0");
    }
}
