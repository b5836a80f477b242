//! Seeded sampling of exact points on `H`, and checks run on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lift::{numeric_lift_exact, LiftJson, LiftReport};
use super::UnirationalMap;
use crate::arith::{Field, GaussRat};
use crate::error::{Error, Result};
use crate::identities::h_polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    pub prec: usize,
    pub threads: usize,
}

/// A parameter point `(s, t, v)` and its image `(a, alpha, b, beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub index: usize,
    pub stv: [GaussRat; 3],
    pub point: [GaussRat; 4],
}

#[derive(Debug, Clone)]
pub struct SampleReport {
    pub sample: Sample,
    pub lift: LiftReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleJson {
    pub index: usize,
    pub s: String,
    pub t: String,
    pub v: String,
    pub a: String,
    pub alpha: String,
    pub b: String,
    pub beta: String,
    pub lift: LiftJson,
}

impl SampleReport {
    pub fn to_json(&self) -> SampleJson {
        let [s, t, v] = self.sample.stv.clone().map(|z| z.to_string());
        let [a, alpha, b, beta] = self.sample.point.clone().map(|z| z.to_string());
        SampleJson {
            index: self.sample.index,
            s,
            t,
            v,
            a,
            alpha,
            b,
            beta,
            lift: self.lift.to_json(),
        }
    }
}

fn draw_rational(rng: &mut ChaCha8Rng) -> GaussRat {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    GaussRat::frac(num, den).expect("positive denominator")
}

/// Why a draw is unusable, `None` if it is fine.
fn reject(phi: &UnirationalMap, stv: &[GaussRat; 3]) -> Option<[GaussRat; 4]> {
    let [s, t, _] = stv;
    let one = GaussRat::one_value();
    let s2 = s.mul(s);
    let t2 = t.mul(t);
    if s.is_zero() || t.is_zero() || s2 == t2 || s2 == one || t2 == one {
        return None;
    }
    let point = phi.eval(stv).ok()?;
    let [a, alpha, b, beta] = &point;
    // u1 from both fractions must be defined and avoid x1 = 0, y1 = 0
    for (p, q) in [(a, b), (alpha, beta)] {
        let p2 = p.mul(p);
        let den = p2.sub(&q.mul(q).mul(q));
        let u1 = p2.sub(q).div(&den)?;
        if u1.is_zero() || u1 == one {
            return None;
        }
    }
    Some(point)
}

/// Draws `count` usable points; numerators in `[-9, 9]`, denominators in
/// `[1, 9]`, rejected draws are skipped.
pub fn draw_samples(phi: &UnirationalMap, count: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let stv = [
            draw_rational(&mut rng),
            draw_rational(&mut rng),
            draw_rational(&mut rng),
        ];
        if let Some(point) = reject(phi, &stv) {
            out.push(Sample {
                index: out.len(),
                stv,
                point,
            });
        }
    }
    out
}

/// Draws and lifts samples; output order is by sample index.
pub fn sample_points(phi: &UnirationalMap, opts: &SampleOptions) -> Result<Vec<SampleReport>> {
    let samples = draw_samples(phi, opts.count, opts.seed);
    let threads = opts.threads.max(1).min(samples.len().max(1));
    let chunk = samples.len().div_ceil(threads).max(1);
    let lifts: Vec<Result<LiftReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = samples
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|s| numeric_lift_exact(&s.point, opts.prec))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("lift worker"))
            .collect()
    });
    samples
        .into_iter()
        .zip(lifts)
        .map(|(sample, lift)| {
            Ok(SampleReport {
                sample,
                lift: lift?,
            })
        })
        .collect()
}

/// The four preimages `(+-s, +-t, v)` of one fibre.
#[derive(Debug, Clone)]
pub struct FibreReport {
    pub points: Vec<[GaussRat; 4]>,
    /// all four share `(b, beta) = (s^2, t^2)`
    pub same_base: bool,
    /// each satisfies the hypersurface equation exactly
    pub all_on_h: bool,
}

impl FibreReport {
    pub fn ok(&self) -> bool {
        self.same_base && self.all_on_h
    }
}

pub fn fibre_check(phi: &UnirationalMap, stv: &[GaussRat; 3]) -> Result<FibreReport> {
    let h = h_polynomial();
    let mut points = Vec::with_capacity(4);
    for (sigma, tau) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        points.push(phi.with_signs(sigma, tau).eval(stv)?);
    }
    let same_base = points.iter().all(|p| p[2..] == points[0][2..]);
    let all_on_h = points.iter().all(|p| h.eval(p).is_zero());
    Ok(FibreReport {
        points,
        same_base,
        all_on_h,
    })
}

/// Worst curve residual of one point at several precisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// `(precision, max log2 residual)`; `None` for exact zeros
    pub levels: Vec<(usize, Option<i64>)>,
}

impl ConvergenceReport {
    /// Every level is within `2^(16 - prec)` and each step in precision
    /// moves the residual exponent by at least half the step.
    pub fn ok(&self) -> bool {
        let within = self
            .levels
            .iter()
            .all(|&(p, e)| e.is_none_or(|e| e <= 16 - p as i64));
        let scaling = self.levels.windows(2).all(|w| match (w[0].1, w[1].1) {
            (Some(lo), Some(hi)) => lo - hi >= (w[1].0 - w[0].0) as i64 / 2,
            _ => true,
        });
        within && scaling
    }
}

pub fn convergence_check(point: &[GaussRat; 4], precs: &[usize]) -> Result<ConvergenceReport> {
    let mut levels = Vec::with_capacity(precs.len());
    for &p in precs {
        if p < 64 {
            return Err(Error::BadSample(format!("precision {p} below 64 bits")));
        }
        levels.push((p, numeric_lift_exact(point, p)?.max_residual_log2()));
    }
    Ok(ConvergenceReport { levels })
}
