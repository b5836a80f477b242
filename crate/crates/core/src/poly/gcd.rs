//! Multivariate gcd by recursive content / primitive part.
//!
//! The polynomial is viewed as univariate in its last occurring variable
//! with coefficients in the ring of the others; contents are computed
//! recursively and the primitive parts are run through a primitive
//! pseudo-remainder sequence.

use super::Poly;
use crate::arith::Field;

impl<F: Field> Poly<F> {
    /// Greatest common divisor, made monic; `gcd(f, 0)` is `f` made monic.
    pub fn gcd(&self, other: &Self) -> Self {
        self.assert_same(other);
        gcd_rec(self, other).monic()
    }

    /// Gcd of the coefficients of `self` as a polynomial in `x_k`.
    pub fn content_in(&self, k: usize) -> Self {
        let mut g = Poly::zero(&self.vars, &self.ctx);
        for c in self.coeffs_in(k) {
            if c.is_zero() {
                continue;
            }
            g = gcd_rec(&g, &c);
            if g.is_constant() {
                return Poly::one(&self.vars, &self.ctx);
            }
        }
        g.monic()
    }

    /// `self` divided by its content in `x_k`.
    pub fn primitive_part_in(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(k);
        self.divide_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `divisor` in `x_k`, up to a factor that
    /// is a power of the leading coefficient of `divisor`.
    pub fn pseudo_rem(&self, divisor: &Self, k: usize) -> Self {
        let db = divisor.degree_in(k).expect("nonzero divisor");
        let lcb = divisor.coeffs_in(k).pop().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(k) {
            if dr < db || r.is_zero() {
                break;
            }
            let lcr = r.coeffs_in(k).pop().unwrap();
            let mut shift = vec![0; self.vars.len()];
            shift[k] = dr - db;
            let one = F::one(&self.ctx);
            let sub = divisor.mul(&lcr).mul_term(&super::Mono::new(shift), &one);
            r = r.mul(&lcb).sub(&sub);
        }
        r
    }
}

fn gcd_rec<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(&f.vars, &f.ctx);
    }
    // common monomial factor first; keeps the recursion on small inputs
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let mono = mf.gcd(&mg);
    let f = f.div_monomial(&mf).unwrap();
    let g = g.div_monomial(&mg).unwrap();
    let one = F::one(&f.ctx);
    let mono_poly = Poly::monomial(&f.vars, &f.ctx, mono, one);

    let mut support = f.support_vars();
    for k in g.support_vars() {
        if !support.contains(&k) {
            support.push(k);
        }
    }
    let Some(&k) = support.iter().max() else {
        return mono_poly;
    };

    let cf = f.content_in(k);
    let cg = g.content_in(k);
    let content = gcd_rec(&cf, &cg);
    let mut a = f.divide_exact(&cf).unwrap();
    let mut b = g.divide_exact(&cg).unwrap();
    if a.degree_in(k) < b.degree_in(k) {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = loop {
        if b.degree_in(k) == Some(0) {
            // b is primitive and free of x_k, hence a unit
            break Poly::one(&f.vars, &f.ctx);
        }
        let r = a.pseudo_rem(&b, k);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(k) == Some(0) {
            break Poly::one(&f.vars, &f.ctx);
        }
        a = b;
        b = r.primitive_part_in(k);
    };
    content.mul(&pp).mul(&mono_poly).monic()
}
