use serde::{Deserialize, Serialize};

use super::{Mono, Poly, RatFunc, VarSet};
use crate::arith::Field;
use crate::error::{Error, Result};

/// Wire form of a polynomial: variable names plus terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coef: String,
}

/// Wire form of a fraction of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl<F: Field> Poly<F> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exps: m.exps().to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    /// Inverse of [`Poly::to_json`]. Rejects out-of-order, repeated or zero
    /// terms so that decoding and re-encoding is byte-exact.
    pub fn from_json(j: &PolyJson, ctx: &F::Ctx) -> Result<Self> {
        let vars = VarSet::new(j.vars.iter().cloned())?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exps.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "term arity {} != {}",
                    t.exps.len(),
                    vars.len()
                )));
            }
            let c = F::parse(ctx, &t.coef)?;
            if c.is_zero() || c.to_string() != t.coef {
                return Err(Error::Parse(format!(
                    "non-canonical coefficient {:?}",
                    t.coef
                )));
            }
            terms.push((Mono::new(t.exps.clone()), c));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::Parse(
                "terms not in strictly descending grlex order".into(),
            ));
        }
        Ok(Poly {
            vars,
            ctx: ctx.clone(),
            terms,
        })
    }
}

impl<F: Field> RatFunc<F> {
    pub fn to_json(&self) -> RatFuncJson {
        RatFuncJson {
            num: self.num().to_json(),
            den: self.den().to_json(),
        }
    }

    pub fn from_json(j: &RatFuncJson, ctx: &F::Ctx) -> Result<Self> {
        let num = Poly::from_json(&j.num, ctx)?;
        let den = Poly::from_json(&j.den, ctx)?;
        let den = den.embed(num.vars())?;
        RatFunc::new(num, den)
    }
}
