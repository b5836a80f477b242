use std::fmt;
use std::sync::Arc;

use super::{Poly, VarSet};
use crate::arith::Field;
use crate::error::{Error, Result};

/// A quotient `num / den` of polynomials over one [`VarSet`].
///
/// The denominator is nonzero with leading coefficient one. Fractions are not
/// reduced automatically; [`RatFunc::reduced`] cancels the gcd. Equality is
/// decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        num.check_same(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc_inv = den.leading_coeff().inv().expect("nonzero");
        if num.is_zero() {
            let one = Poly::one(num.vars(), num.ctx());
            return Ok(RatFunc { num, den: one });
        }
        Ok(RatFunc {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let den = Poly::one(p.vars(), p.ctx());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: &Arc<VarSet>, ctx: &F::Ctx) -> Self {
        Self::from_poly(Poly::zero(vars, ctx))
    }

    pub fn one(vars: &Arc<VarSet>, ctx: &F::Ctx) -> Self {
        Self::from_poly(Poly::one(vars, ctx))
    }

    pub fn constant(vars: &Arc<VarSet>, ctx: &F::Ctx, c: F) -> Self {
        Self::from_poly(Poly::constant(vars, ctx, c))
    }

    pub fn var(vars: &Arc<VarSet>, ctx: &F::Ctx, k: usize) -> Self {
        Self::from_poly(Poly::var(vars, ctx, k))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.num.vars()
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
            .fix_zero();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc {
            num,
            den: self.den.mul(&other.den),
        }
        .fix_zero()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars(), self.ctx());
        }
        RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .fix_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .fix_zero()
    }

    fn fix_zero(self) -> Self {
        if self.num.is_zero() && !self.den.is_one() {
            return Self::zero(self.vars(), self.ctx());
        }
        self
    }

    /// `self - other` as a single fraction; zero iff the two are equal.
    pub fn difference(&self, other: &Self) -> Self {
        self.sub(other)
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.vars(), self.ctx());
        }
        let g = self.num.gcd(&self.den);
        if g.is_one() {
            return self.clone();
        }
        let num = self.num.divide_exact(&g).expect("gcd divides numerator");
        let den = self.den.divide_exact(&g).expect("gcd divides denominator");
        RatFunc::new(num, den).expect("nonzero")
    }

    /// Exact value at a point; a vanishing denominator is an error.
    pub fn eval(&self, point: &[F]) -> Result<F> {
        let d = self.den.eval(point);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.num.eval(point).mul(&inv))
    }

    /// Quotient rule.
    pub fn partial_derivative(&self, k: usize) -> Self {
        let dn = self.num.partial_derivative(k);
        let dd = self.den.partial_derivative(k);
        if dd.is_zero() {
            return RatFunc {
                num: dn,
                den: self.den.clone(),
            }
            .fix_zero();
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        RatFunc {
            num,
            den: self.den.mul(&self.den),
        }
        .fix_zero()
    }

    /// Composition: variables of `self` are replaced by `images`.
    pub fn substitute(&self, images: &[RatFunc<F>]) -> Result<Self> {
        let n = self.num.substitute(images)?;
        let d = self.den.substitute(images)?;
        n.div(&d)
    }

    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        Ok(RatFunc {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    pub fn map_polys(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Result<Self> {
        RatFunc::new(f(&self.num), f(&self.den))
    }
}

impl<F: Field> PartialEq for RatFunc<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<F: Field> Eq for RatFunc<F> {}

impl<F: Field> From<Poly<F>> for RatFunc<F> {
    fn from(p: Poly<F>) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
