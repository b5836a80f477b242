//! The dominant map `P^3 -> H` and its certificates.
//!
//! `phi(s, t, v)` pulls the fibre conic back along `b = s^2`, `beta = t^2`
//! and parametrizes it by lines of slope `v` through the point
//! `(a, alpha) = (s, t)`. Dominance is certified by an exact Jacobian rank,
//! birationality onto the base-changed bundle by recovering `v`, and the
//! final step down to the curves by [`numeric_lift`].

mod complex;
mod lift;
mod sample;

use std::sync::Arc;

use serde::Serialize;

pub use complex::{format_float, Complex};
pub use lift::{numeric_lift, numeric_lift_exact, LiftJson, LiftReport};
pub use sample::{
    convergence_check, draw_samples, fibre_check, sample_points, ConvergenceReport, FibreReport,
    Sample, SampleJson, SampleOptions, SampleReport,
};

use crate::arith::{Field, GaussRat};
use crate::conic::{parametrize, q_conic};
use crate::error::{Error, Result};
use crate::identities::{h_polynomial, IdentityReport, Witness};
use crate::poly::{Poly, RatFunc, RatFuncJson, VarSet};

/// `(a, alpha, b, beta)` as rational functions of `(s, t, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnirationalMap {
    pub a: RatFunc<GaussRat>,
    pub alpha: RatFunc<GaussRat>,
    pub b: RatFunc<GaussRat>,
    pub beta: RatFunc<GaussRat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnirationalMapJson {
    pub a: RatFuncJson,
    pub alpha: RatFuncJson,
    pub b: RatFuncJson,
    pub beta: RatFuncJson,
}

impl UnirationalMap {
    pub fn vars(&self) -> &Arc<VarSet> {
        self.a.vars()
    }

    pub fn components(&self) -> [&RatFunc<GaussRat>; 4] {
        [&self.a, &self.alpha, &self.b, &self.beta]
    }

    /// Exact value at `(s, t, v)`; a vanishing denominator is a bad sample.
    pub fn eval(&self, stv: &[GaussRat; 3]) -> Result<[GaussRat; 4]> {
        let ev = |f: &RatFunc<GaussRat>| {
            f.eval(stv)
                .map_err(|_| Error::BadSample(format!("phi has a pole at {}", fmt_point(stv))))
        };
        Ok([
            ev(&self.a)?,
            ev(&self.alpha)?,
            ev(&self.b)?,
            ev(&self.beta)?,
        ])
    }

    /// Precomposes with `(s, t, v) -> (sigma*s, tau*t, v)`.
    pub fn with_signs(&self, sigma: i64, tau: i64) -> Self {
        let vars = self.vars();
        let lin = |k: usize, c: i64| {
            RatFunc::from_poly(Poly::var(vars, &(), k).scale(&GaussRat::from_i64(c)))
        };
        let images = [lin(0, sigma), lin(1, tau), RatFunc::var(vars, &(), 2)];
        let sub = |f: &RatFunc<GaussRat>| {
            f.substitute(&images)
                .expect("linear substitution")
                .reduced()
        };
        UnirationalMap {
            a: sub(&self.a),
            alpha: sub(&self.alpha),
            b: sub(&self.b),
            beta: sub(&self.beta),
        }
    }

    pub fn to_json(&self) -> UnirationalMapJson {
        UnirationalMapJson {
            a: self.a.to_json(),
            alpha: self.alpha.to_json(),
            b: self.b.to_json(),
            beta: self.beta.to_json(),
        }
    }
}

fn fmt_point(p: &[GaussRat]) -> String {
    p.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Builds `phi` from the point `(s, t)` on the base-changed conic.
pub fn build_phi() -> UnirationalMap {
    let q = q_conic();
    let st = q.vars().clone();
    let var = |k| RatFunc::var(&st, &(), k);
    let m = parametrize(&q, &var(0), &var(1)).expect("(s, t) lies on the conic");
    let sq = |k| RatFunc::var(&m.vars, &(), k).pow(2);
    UnirationalMap {
        a: m.a,
        alpha: m.alpha,
        b: sq(0),
        beta: sq(1),
    }
}

/// Negates the leading numerator term of the `alpha` component.
pub fn mutate_phi(phi: &UnirationalMap) -> UnirationalMap {
    let num = phi.alpha.num();
    let (mono, c) = num.leading_term().expect("alpha is nonzero");
    let flip = Poly::monomial(num.vars(), &(), mono.clone(), c.clone());
    let alpha =
        RatFunc::new(num.sub(&flip).sub(&flip), phi.alpha.den().clone()).expect("same denominator");
    UnirationalMap {
        alpha,
        ..phi.clone()
    }
}

/// Substitutes `phi` into the hypersurface equation.
pub fn verify_on_h(phi: &UnirationalMap) -> IdentityReport {
    let images: Vec<_> = phi.components().into_iter().cloned().collect();
    match h_polynomial().substitute(&images) {
        Ok(r) => IdentityReport::identity("phi-on-H", Witness::RatFunc(r.reduced())),
        Err(e) => failed("phi-on-H", phi, e),
    }
}

/// `(alpha - t) / (a - s) = v`, which makes `P^3 -> Q` birational.
pub fn recover_v(phi: &UnirationalMap) -> IdentityReport {
    let vars = phi.vars();
    let var = |k| RatFunc::var(vars, &(), k);
    match phi.alpha.sub(&var(1)).div(&phi.a.sub(&var(0))) {
        Ok(slope) => {
            IdentityReport::identity("recover-v", Witness::RatFunc(slope.sub(&var(2)).reduced()))
        }
        Err(e) => failed("recover-v", phi, e),
    }
}

fn failed(id: &str, phi: &UnirationalMap, e: Error) -> IdentityReport {
    IdentityReport::identity(id, Witness::RatFunc(RatFunc::one(phi.vars(), &())))
        .with_detail(e.to_string())
}

/// Exact `4 x 3` Jacobian of `phi` at a point and its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianReport {
    pub point: [GaussRat; 3],
    pub matrix: Vec<Vec<GaussRat>>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianJson {
    pub point: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
}

impl JacobianReport {
    pub fn to_json(&self) -> JacobianJson {
        let strs = |row: &[GaussRat]| row.iter().map(|x| x.to_string()).collect();
        JacobianJson {
            point: strs(&self.point),
            matrix: self.matrix.iter().map(|r| strs(r)).collect(),
            rank: self.rank,
        }
    }
}

pub fn jacobian_rank(phi: &UnirationalMap, pt: &[GaussRat; 3]) -> Result<JacobianReport> {
    let mut matrix = Vec::with_capacity(4);
    for f in phi.components() {
        let mut row = Vec::with_capacity(3);
        for k in 0..3 {
            let d = f.partial_derivative(k).eval(pt).map_err(|_| {
                Error::BadSample(format!("derivative has a pole at {}", fmt_point(pt)))
            })?;
            row.push(d);
        }
        matrix.push(row);
    }
    let rank = exact_rank(matrix.clone());
    Ok(JacobianReport {
        point: pt.clone(),
        matrix,
        rank,
    })
}

/// Rank by Gaussian elimination over an exact field.
pub fn exact_rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].mul(&inv);
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = x.sub(&f.mul(p));
            }
        }
        rank += 1;
    }
    rank
}
