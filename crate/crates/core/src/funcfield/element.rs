use std::fmt;

use super::{curve_vars, xi, yi};
use crate::arith::{Field, GaussRat};
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};

/// An element of the coordinate ring, in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveRingElem(Poly<GaussRat>);

/// Rewrites every `y_i^2` as `x_i^3 - x_i` until all `y` exponents are < 2.
pub fn normal_form(f: &Poly<GaussRat>) -> Result<CurveRingElem> {
    let vars = curve_vars();
    if f.vars().names() != vars.names() {
        return Err(Error::VarSetMismatch(format!(
            "expected {:?}, got {:?}",
            vars.names(),
            f.vars().names()
        )));
    }
    if f.terms()
        .iter()
        .all(|(m, _)| (1..=3).all(|i| m.exps()[yi(i)] < 2))
    {
        return Ok(CurveRingElem(f.embed(vars)?));
    }
    // powers of x_i^3 - x_i, built lazily per curve
    let mut cubic_pows: Vec<Vec<Poly<GaussRat>>> = (1..=3)
        .map(|i| {
            let x = Poly::var(vars, &(), xi(i));
            vec![Poly::one(vars, &()), x.pow(3).sub(&x)]
        })
        .collect();
    let mut acc = Poly::zero(vars, &());
    for (m, c) in f.terms() {
        let mut e = m.exps().to_vec();
        let mut t = Poly::monomial(vars, &(), Mono::one(6), c.clone());
        for i in 1..=3 {
            let half = (e[yi(i)] / 2) as usize;
            e[yi(i)] %= 2;
            if half > 0 {
                let table = &mut cubic_pows[i - 1];
                while table.len() <= half {
                    let next = table.last().unwrap().mul(&table[1]);
                    table.push(next);
                }
                t = t.mul(&table[half]);
            }
        }
        acc = acc.add(&t.mul_term(&Mono::new(e), &GaussRat::one_value()));
    }
    Ok(CurveRingElem(acc))
}

impl CurveRingElem {
    pub fn zero() -> Self {
        CurveRingElem(Poly::zero(curve_vars(), &()))
    }

    pub fn one() -> Self {
        CurveRingElem(Poly::one(curve_vars(), &()))
    }

    pub fn constant(c: GaussRat) -> Self {
        CurveRingElem(Poly::constant(curve_vars(), &(), c))
    }

    pub fn poly(&self) -> &Poly<GaussRat> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        CurveRingElem(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CurveRingElem(self.0.sub(&o.0))
    }

    pub fn neg(&self) -> Self {
        CurveRingElem(self.0.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        normal_form(&self.0.mul(&o.0)).expect("curve variables")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Image under `x_i -> -x_i`, `y_i -> i*y_i`. Normal form is preserved.
    pub fn apply_g(&self) -> Self {
        CurveRingElem(g_on_poly(&self.0, 1))
    }
}

/// `g^n` on a polynomial: the term `x^a y^b` picks up `(-1)^|a| * i^|b|`
/// (to the `n`-th power).
fn g_on_poly(f: &Poly<GaussRat>, n: u32) -> Poly<GaussRat> {
    let i = GaussRat::i();
    let units = [
        GaussRat::one_value(),
        i.clone(),
        GaussRat::from_i64(-1),
        i.neg(),
    ];
    f.map_coeffs(|m, c| {
        let e = m.exps();
        let sx: u32 = (1..=3).map(|k| e[xi(k)]).sum();
        let sy: u32 = (1..=3).map(|k| e[yi(k)]).sum();
        // (-1)^sx = i^(2 sx)
        let k = ((2 * sx + sy) * n) % 4;
        c.mul(&units[k as usize])
    })
}

impl fmt::Display for CurveRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CurveRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveRingElem({})", self.0)
    }
}

/// An element `num/den` of the function field.
#[derive(Clone)]
pub struct FieldElem {
    num: CurveRingElem,
    den: CurveRingElem,
}

impl FieldElem {
    pub fn new(num: CurveRingElem, den: CurveRingElem) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem { num, den }.lightly_reduced())
    }

    pub fn zero() -> Self {
        FieldElem {
            num: CurveRingElem::zero(),
            den: CurveRingElem::one(),
        }
    }

    pub fn one() -> Self {
        FieldElem {
            num: CurveRingElem::one(),
            den: CurveRingElem::one(),
        }
    }

    pub fn constant(c: GaussRat) -> Self {
        FieldElem::from(CurveRingElem::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(GaussRat::from_i64(n))
    }

    pub fn num(&self) -> &CurveRingElem {
        &self.num
    }

    pub fn den(&self) -> &CurveRingElem {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the common monomial factor and makes the denominator's
    /// leading coefficient one. Both steps keep normal form.
    fn lightly_reduced(self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mn = self.num.0.monomial_content();
        let md = self.den.0.monomial_content();
        let common = Mono::new(
            mn.exps()
                .iter()
                .zip(md.exps())
                .map(|(a, b)| *a.min(b))
                .collect(),
        );
        let (mut num, mut den) = (self.num.0, self.den.0);
        if !common.is_one() {
            num = num.div_monomial(&common).expect("common factor");
            den = den.div_monomial(&common).expect("common factor");
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FieldElem {
            num: CurveRingElem(num),
            den: CurveRingElem(den),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return FieldElem {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            }
            .lightly_reduced();
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        FieldElem {
            num,
            den: self.den.mul(&o.den),
        }
        .lightly_reduced()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        FieldElem {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .lightly_reduced()
    }

    pub fn inv(&self) -> Result<Self> {
        FieldElem::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        FieldElem {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .lightly_reduced()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    /// Image under the automorphism `g`.
    pub fn apply_g(&self) -> Self {
        FieldElem {
            num: self.num.apply_g(),
            den: self.den.apply_g(),
        }
        .lightly_reduced()
    }

    /// Image under `g^n`.
    pub fn apply_g_pow(&self, n: u32) -> Self {
        FieldElem {
            num: CurveRingElem(g_on_poly(&self.num.0, n)),
            den: CurveRingElem(g_on_poly(&self.den.0, n)),
        }
        .lightly_reduced()
    }

    /// Evaluates a polynomial over any variable set at field elements.
    pub fn eval_poly(f: &Poly<GaussRat>, images: &[FieldElem]) -> Result<Self> {
        if images.len() != f.vars().len() {
            return Err(Error::VarSetMismatch(format!(
                "{} images for {} variables",
                images.len(),
                f.vars().len()
            )));
        }
        let mut pows: Vec<Vec<FieldElem>> = images
            .iter()
            .map(|x| vec![Self::one(), x.clone()])
            .collect();
        let mut acc = Self::zero();
        for (m, c) in f.terms() {
            let mut t = Self::constant(c.clone());
            for (k, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut pows[k];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().mul(&images[k]);
                    table.push(next);
                }
                t = t.mul(&table[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl From<CurveRingElem> for FieldElem {
    fn from(num: CurveRingElem) -> Self {
        FieldElem {
            num,
            den: CurveRingElem::one(),
        }
        .lightly_reduced()
    }
}

/// Cross-multiplication in normal form.
impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.0.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

/// Free-function form of [`FieldElem::apply_g`].
pub fn apply_g(f: &FieldElem) -> FieldElem {
    f.apply_g()
}

/// True iff `g(f) = f` exactly.
pub fn is_g_invariant(f: &FieldElem) -> bool {
    f.apply_g() == *f
}
