//! Lifting a point of `H` back to the triple product of curves.
//!
//! From `(a, alpha, b, beta) = (a2, a3, b2, b3)`:
//! `u1 = (a^2 - b) / (a^2 - b^3)` (also `(alpha^2 - beta)/(alpha^2 - beta^3)`),
//! `x1 = sqrt(u1)`, `y1 = sqrt(x1 (x1^2 - 1))`, then `x2 = b x1`,
//! `x3 = beta x1`, `y2 = a y1`, `y3 = alpha y1`.

use serde::Serialize;

use super::complex::Complex;
use crate::arith::GaussRat;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub precision: usize,
    /// `(a, alpha, b, beta)`
    pub point: [Complex; 4],
    /// `u1` from `(a, b)`, the one used for the lift
    pub u1: Complex,
    /// `u1` from `(alpha, beta)`
    pub u1_alt: Complex,
    /// `log2 |u1 - u1_alt| / |u1|`, `None` when equal
    pub u1_agreement_log2: Option<i64>,
    /// `u1 (u1 - 1)^2`, should equal `y1^4`
    pub w1: Complex,
    /// `u1 (u1 - 1)`, should equal `x1 y1^2`
    pub lam1: Complex,
    pub x: [Complex; 3],
    pub y: [Complex; 3],
    /// `log2 |y_j^2 - x_j (x_j^2 - 1)|`, `None` for an exact zero
    pub residuals_log2: [Option<i64>; 3],
    /// `log2 |y1^4 - w1|` and `log2 |x1 y1^2 - lam1|`
    pub generator_residuals_log2: [Option<i64>; 2],
    /// all four `g`-images give bitwise the same `(a, alpha, b, beta)`
    pub orbit_consistent: bool,
    /// `log2` of the largest difference between the recovered and the input point
    pub roundtrip_log2: Option<i64>,
}

fn below(e: Option<i64>, bound: i64) -> bool {
    e.is_none_or(|e| e <= bound)
}

impl LiftReport {
    /// Absolute tolerance exponent `16 - precision`.
    pub fn tolerance_log2(&self) -> i64 {
        16 - self.precision as i64
    }

    pub fn u1_ok(&self) -> bool {
        below(self.u1_agreement_log2, self.tolerance_log2())
    }

    pub fn residuals_ok(&self) -> bool {
        self.residuals_log2
            .iter()
            .all(|&e| below(e, self.tolerance_log2()))
    }

    pub fn max_residual_log2(&self) -> Option<i64> {
        self.residuals_log2.iter().flatten().copied().max()
    }

    pub fn ok(&self) -> bool {
        self.u1_ok() && self.residuals_ok() && self.orbit_consistent
    }

    pub fn to_json(&self) -> LiftJson {
        let s = |z: &Complex| z.to_string();
        LiftJson {
            precision: self.precision,
            u1: s(&self.u1),
            u1_alt: s(&self.u1_alt),
            u1_agreement_log2: self.u1_agreement_log2,
            w1: s(&self.w1),
            lam1: s(&self.lam1),
            x: self.x.iter().map(s).collect(),
            y: self.y.iter().map(s).collect(),
            residuals_log2: self.residuals_log2.to_vec(),
            generator_residuals_log2: self.generator_residuals_log2.to_vec(),
            orbit_consistent: self.orbit_consistent,
            roundtrip_log2: self.roundtrip_log2,
            ok: self.ok(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftJson {
    pub precision: usize,
    pub u1: String,
    pub u1_alt: String,
    pub u1_agreement_log2: Option<i64>,
    pub w1: String,
    pub lam1: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub residuals_log2: Vec<Option<i64>>,
    pub generator_residuals_log2: Vec<Option<i64>>,
    pub orbit_consistent: bool,
    pub roundtrip_log2: Option<i64>,
    pub ok: bool,
}

fn rel_log2(diff: &Complex, scale: &Complex) -> Option<i64> {
    let d = diff.log2_magnitude()?;
    Some(d - scale.log2_magnitude().unwrap_or(0).max(0))
}

/// `(a^2 - b) / (a^2 - b^3)`, refusing a denominator that has cancelled to
/// within half the working precision.
fn u1_from(a: &Complex, b: &Complex, what: &'static str) -> Result<Complex> {
    let a2 = a.square();
    let b3 = b.square().mul(b);
    let den = a2.sub(&b3);
    let scale = a2.log2_magnitude().max(b3.log2_magnitude()).unwrap_or(0);
    let half = a.prec() as i64 / 2;
    match den.log2_magnitude() {
        None => Err(Error::Conditioning {
            what,
            log2_magnitude: i64::MIN,
        }),
        Some(e) if e - scale < -half => Err(Error::Conditioning {
            what,
            log2_magnitude: e,
        }),
        Some(_) => Ok(a2.sub(b).div(&den).expect("nonzero")),
    }
}

fn nonsingular(z: &Complex, what: &'static str) -> Result<()> {
    match z.log2_magnitude() {
        None => Err(Error::Conditioning {
            what,
            log2_magnitude: i64::MIN,
        }),
        Some(e) if e < -(z.prec() as i64) / 2 => Err(Error::Conditioning {
            what,
            log2_magnitude: e,
        }),
        Some(_) => Ok(()),
    }
}

/// `(y2/y1, y3/y1, x2/x1, x3/x1)`.
fn invariants(x: &[Complex; 3], y: &[Complex; 3]) -> [Complex; 4] {
    let q = |n: &Complex, d: &Complex| n.div(d).expect("checked nonzero");
    [
        q(&y[1], &y[0]),
        q(&y[2], &y[0]),
        q(&x[1], &x[0]),
        q(&x[2], &x[0]),
    ]
}

/// Lifts a point given at the precision of its entries.
pub fn numeric_lift(pt: &[Complex; 4]) -> Result<LiftReport> {
    let prec = pt[0].prec();
    let [a, alpha, b, beta] = pt;
    let u1 = u1_from(a, b, "a^2 - b^3")?;
    let u1_alt = u1_from(alpha, beta, "alpha^2 - beta^3")?;
    let one = Complex::from_i64(1, prec);

    let x1 = u1.sqrt();
    nonsingular(&x1, "x1")?;
    let y1 = x1.mul(&x1.square().sub(&one)).sqrt();
    nonsingular(&y1, "y1")?;
    let x = [x1.clone(), b.mul(&x1), beta.mul(&x1)];
    let y = [y1.clone(), a.mul(&y1), alpha.mul(&y1)];

    let residual = |j: usize| {
        y[j].square()
            .sub(&x[j].mul(&x[j].square().sub(&one)))
            .log2_magnitude()
    };
    let residuals_log2 = [residual(0), residual(1), residual(2)];

    let u_minus_1 = u1.sub(&one);
    let w1 = u1.mul(&u_minus_1.square());
    let lam1 = u1.mul(&u_minus_1);
    let generator_residuals_log2 = [
        y1.square().square().sub(&w1).log2_magnitude(),
        x1.mul(&y1.square()).sub(&lam1).log2_magnitude(),
    ];

    let base = invariants(&x, &y);
    let mut orbit_consistent = true;
    let (mut gx, mut gy) = (x.clone(), y.clone());
    for _ in 1..4 {
        gx = gx.map(|z| z.neg());
        gy = gy.map(|z| z.mul_i());
        let img = invariants(&gx, &gy);
        orbit_consistent &= img.iter().zip(&base).all(|(u, v)| u.same_bits(v));
    }
    let roundtrip_log2 = base
        .iter()
        .zip(pt.iter())
        .filter_map(|(r, p)| rel_log2(&r.sub(p), p))
        .max();

    let u1_agreement_log2 = rel_log2(&u1.sub(&u1_alt), &u1);
    Ok(LiftReport {
        precision: prec,
        point: pt.clone(),
        u1,
        u1_alt,
        u1_agreement_log2,
        w1,
        lam1,
        x,
        y,
        residuals_log2,
        generator_residuals_log2,
        orbit_consistent,
        roundtrip_log2,
    })
}

/// Lifts an exact point, rounding it to `prec` bits first.
pub fn numeric_lift_exact(pt: &[GaussRat; 4], prec: usize) -> Result<LiftReport> {
    numeric_lift(&pt.clone().map(|z| Complex::from_gauss(&z, prec)))
}
