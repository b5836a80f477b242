//! Diagonal conics `A*a^2 = B*alpha^2 + C` over rational function fields.
//!
//! Covers the generic fibre of the hypersurface over `(b, beta)`, its pull
//! back along `b = s^2, beta = t^2`, the line-pencil parametrization through
//! a rational point, and the evidence that the original fibre has no
//! rational point (`descent` and `search`).

mod descent;
mod search;

use std::sync::Arc;

pub use descent::{
    cleared_identity, forced_divisibility, parity_check, CandidateTriple, DescentReport,
    ParityReport, SecondRound,
};
pub use search::{
    no_solution_search, PruneStrategy, SearchOptions, SearchReport, SolutionJson, SEARCH_LIMIT,
};

use crate::arith::{Field, GaussRat};
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc, VarSet};

/// The conic `A*a^2 = B*alpha^2 + C` with coefficients in `k(base vars)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicDiag<F: Field> {
    pub coeff_a: RatFunc<F>,
    pub coeff_alpha: RatFunc<F>,
    pub constant: RatFunc<F>,
}

impl<F: Field> ConicDiag<F> {
    pub fn new(coeff_a: RatFunc<F>, coeff_alpha: RatFunc<F>, constant: RatFunc<F>) -> Result<Self> {
        if coeff_a.vars() != coeff_alpha.vars() || coeff_a.vars() != constant.vars() {
            return Err(Error::VarSetMismatch(
                "conic coefficients over different variables".into(),
            ));
        }
        if coeff_a.is_zero() || coeff_alpha.is_zero() {
            return Err(Error::DegeneratePencil);
        }
        Ok(ConicDiag {
            coeff_a,
            coeff_alpha,
            constant,
        })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.coeff_a.vars()
    }

    /// `A*a0^2 - B*alpha0^2 - C`.
    pub fn residual(&self, a0: &RatFunc<F>, alpha0: &RatFunc<F>) -> RatFunc<F> {
        self.coeff_a
            .mul(&a0.pow(2))
            .sub(&self.coeff_alpha.mul(&alpha0.pow(2)))
            .sub(&self.constant)
    }
}

/// True iff `(a0, alpha0)` satisfies the conic exactly.
pub fn on_conic<F: Field>(c: &ConicDiag<F>, a0: &RatFunc<F>, alpha0: &RatFunc<F>) -> bool {
    c.residual(a0, alpha0).is_zero()
}

/// The generic fibre over `(b, beta)`:
/// `A = beta(1-beta^2)`, `B = b(1-b^2)`, `C = b*beta*(b^2-beta^2)`.
pub fn h_conic() -> ConicDiag<GaussRat> {
    let v = VarSet::new(["b", "beta"]).unwrap();
    let p = |s: &str| RatFunc::from_poly(Poly::parse(&v, &(), s).unwrap());
    ConicDiag::new(
        p("beta*(1-beta^2)"),
        p("b*(1-b^2)"),
        p("b*beta*(b^2-beta^2)"),
    )
    .unwrap()
}

/// Pulls every coefficient back along `images` (one per base variable).
pub fn pull_back<F: Field>(c: &ConicDiag<F>, images: &[RatFunc<F>]) -> Result<ConicDiag<F>> {
    let sub = |f: &RatFunc<F>| f.substitute(images);
    ConicDiag::new(sub(&c.coeff_a)?, sub(&c.coeff_alpha)?, sub(&c.constant)?)
}

/// Base change along `b = s^2`, `beta = t^2`: the two base variables are
/// replaced by the squares of new variables `[s, t]`.
pub fn base_change<F: Field>(c: &ConicDiag<F>) -> Result<ConicDiag<F>> {
    if c.vars().len() != 2 {
        return Err(Error::VarSetMismatch(format!(
            "base change expects two base variables, got {:?}",
            c.vars().names()
        )));
    }
    let st = VarSet::new(["s", "t"])?;
    let ctx = c.coeff_a.ctx().clone();
    let sq = |k| RatFunc::from_poly(Poly::var(&st, &ctx, k).pow(2));
    pull_back(c, &[sq(0), sq(1)])
}

/// The base-changed fibre over `(s, t)`.
pub fn q_conic() -> ConicDiag<GaussRat> {
    base_change(&h_conic()).expect("h_conic lives over [b, beta]")
}

/// A rational parametrization `v -> (a(v), alpha(v))` of a conic, over the
/// base variables extended by the slope `v`.
#[derive(Debug, Clone)]
pub struct ParamMap<F: Field> {
    pub a: RatFunc<F>,
    pub alpha: RatFunc<F>,
    pub base_point: (RatFunc<F>, RatFunc<F>),
    pub vars: Arc<VarSet>,
}

/// Name of the slope variable.
pub const SLOPE: &str = "v";

/// Line pencil through `(a0, alpha0)`: `a = a0 + w`, `alpha = alpha0 + v*w`
/// with `w = 2(B*alpha0*v - A*a0) / (A - B*v^2)`, the second intersection.
pub fn parametrize<F: Field>(
    c: &ConicDiag<F>,
    a0: &RatFunc<F>,
    alpha0: &RatFunc<F>,
) -> Result<ParamMap<F>> {
    if !on_conic(c, a0, alpha0) {
        return Err(Error::NotOnConic);
    }
    let base = c.vars();
    if base.index_of(SLOPE).is_some() {
        return Err(Error::VarSetMismatch(format!(
            "base already has a variable `{SLOPE}`"
        )));
    }
    let ext = VarSet::new(base.names().iter().cloned().chain([SLOPE.to_string()]))?;
    let lift = |f: &RatFunc<F>| f.embed(&ext);
    let (ca, cb) = (lift(&c.coeff_a)?, lift(&c.coeff_alpha)?);
    let (a0e, al0e) = (lift(a0)?, lift(alpha0)?);
    let ctx = ca.ctx().clone();
    let v = RatFunc::var(&ext, &ctx, ext.len() - 1);

    let pencil_den = ca.sub(&cb.mul(&v.pow(2)));
    if pencil_den.is_zero() {
        return Err(Error::DegeneratePencil);
    }
    let two = F::from_i64(&ctx, 2);
    let w_num = cb.mul(&al0e).mul(&v).sub(&ca.mul(&a0e)).scale(&two);
    let w = w_num.div(&pencil_den)?;
    let a = a0e.add(&w).reduced();
    let alpha = al0e.add(&v.mul(&w)).reduced();
    Ok(ParamMap {
        a,
        alpha,
        base_point: (a0e, al0e),
        vars: ext,
    })
}

impl<F: Field> ParamMap<F> {
    /// `(alpha(v) - alpha0) / (a(v) - a0)`, which should be `v` itself.
    pub fn recovered_slope(&self) -> Result<RatFunc<F>> {
        let (a0, al0) = &self.base_point;
        self.alpha.sub(al0).div(&self.a.sub(a0))
    }

    pub fn slope(&self) -> RatFunc<F> {
        RatFunc::var(&self.vars, self.a.ctx(), self.vars.len() - 1)
    }

    /// Residual of the conic at the parametrized point.
    pub fn residual(&self, c: &ConicDiag<F>) -> Result<RatFunc<F>> {
        let lift = |f: &RatFunc<F>| f.embed(&self.vars);
        let ce = ConicDiag::new(lift(&c.coeff_a)?, lift(&c.coeff_alpha)?, lift(&c.constant)?)?;
        Ok(ce.residual(&self.a, &self.alpha))
    }
}

#[cfg(test)]
mod tests;
