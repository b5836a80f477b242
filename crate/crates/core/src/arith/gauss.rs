use std::fmt;
use std::str::FromStr;

use super::{Field, Rat};
use crate::error::{Error, Result};

/// An element `re + im*i` of the Gaussian rationals `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussRat::new(Rat::from_i64(n), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat::new(re, Rat::zero())
    }

    /// `num/den` as a real Gaussian rational.
    pub fn frac(num: i64, den: i64) -> Result<Self> {
        Ok(GaussRat::from_rat(Rat::from_frac(num, den)?))
    }

    pub fn zero_value() -> Self {
        GaussRat::default()
    }

    pub fn one_value() -> Self {
        GaussRat::from_i64(1)
    }

    /// The fixed square root of `-1`.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Field for GaussRat {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        GaussRat::zero_value()
    }

    fn one(_: &()) -> Self {
        GaussRat::one_value()
    }

    fn from_i64(_: &(), n: i64) -> Self {
        GaussRat::from_i64(n)
    }

    fn context(&self) {}

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == Rat::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::from_rat(&self.re * &rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        GaussRat::new(re, im)
    }

    fn neg(&self) -> Self {
        GaussRat::new(-&self.re, -&self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.recip().map(GaussRat::from_rat);
        }
        let n = self.norm().recip()?;
        Some(GaussRat::new(&self.re * &n, -&(&self.im * &n)))
    }

    fn parse(_: &(), s: &str) -> Result<Self> {
        s.parse()
    }
}

/// Canonical text: `p/q`, `r/s*i`, or `p/q+r/s*i` with an explicit sign on
/// the imaginary part. Integers drop the `/1`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}*i", self.re, self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(GaussRat::from_rat(s.parse()?));
        };
        // the real/imaginary split is the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re: Rat = body[..k].parse()?;
                let im: Rat = body[k..].trim_start_matches('+').parse()?;
                Ok(GaussRat::new(re, im))
            }
            None => Ok(GaussRat::new(Rat::zero(), body.parse()?)),
        }
    }
}

macro_rules! gauss_binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat {
                Field::$m(self, rhs)
            }
        }
        impl std::ops::$tr for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                Field::$m(&self, &rhs)
            }
        }
    };
}

gauss_binop!(Add, add);
gauss_binop!(Sub, sub);
gauss_binop!(Mul, mul);

impl std::ops::Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        Field::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_gauss() -> impl Strategy<Value = GaussRat> {
        (-20i64..=20, 1i64..=12, -20i64..=20, 1i64..=12).prop_map(|(a, b, c, d)| {
            GaussRat::new(Rat::from_frac(a, b).unwrap(), Rat::from_frac(c, d).unwrap())
        })
    }

    #[test]
    fn canonical_text() {
        let x = GaussRat::new(
            Rat::from_frac(-3, 2).unwrap(),
            Rat::from_frac(1, 4).unwrap(),
        );
        assert_eq!(x.to_string(), "-3/2+1/4*i");
        assert_eq!(x.conj().to_string(), "-3/2-1/4*i");
        assert_eq!(GaussRat::i().to_string(), "1*i");
        assert_eq!((-GaussRat::i()).to_string(), "-1*i");
        assert_eq!(GaussRat::zero_value().to_string(), "0");
        assert_eq!(GaussRat::frac(6, 4).unwrap().to_string(), "3/2");
    }

    #[test]
    fn parse_accepts_every_shape() {
        for s in ["0", "-7", "3/2", "1*i", "-2/3*i", "-3/2+1/4*i", "5-1*i"] {
            let x: GaussRat = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("1+*i".parse::<GaussRat>().is_err());
        assert!("".parse::<GaussRat>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in small_gauss(), b in small_gauss(), c in small_gauss()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_encoding_decides_equality(a in small_gauss(), b in small_gauss()) {
            prop_assert_eq!(a == b, a.to_string() == b.to_string());
            prop_assert_eq!(a.to_string().parse::<GaussRat>().unwrap(), a);
        }
    }
}
