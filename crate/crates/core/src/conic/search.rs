//! Exhaustive search for polynomial points of the generic fibre over a
//! prime field.
//!
//! A point `(P/Q, R/Q)` is a triple of polynomials in `F_p[b, beta]` of
//! total degree `<= dmax` satisfying
//! `P^2 beta(1-beta^2) = R^2 b(1-b^2) + Q^2 b beta(b^2-beta^2)`. Triples
//! are enumerated up to scalars (first nonzero coefficient is 1).
//!
//! Pruning, applied before the full expansion:
//! * residue: setting `b = 0` forces `P(0, beta) = 0` and `beta = 0` forces
//!   `R(b, 0) = 0`, so only `P in b*F_p[b,beta]` and `R in beta*F_p[b,beta]`
//!   are enumerated. The rest is counted, not visited.
//! * leading: the top-degree homogeneous part of the identity must vanish.
//!   The `Q` term has even degree `2 deg Q + 4` and the others odd degree
//!   `2 deg P + 3`, `2 deg R + 3`, so the maximum must be attained by both
//!   `P` and `R` with `P_top^2 beta^3 = R_top^2 b^3`.

use serde::Serialize;

use crate::arith::{FpElem, PrimeField};
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, VarSet};

use super::descent::{cleared_identity, CandidateTriple};

/// Upper bound on the number of enumerated candidates.
pub const SEARCH_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneStrategy {
    /// full expansion of every projective triple
    None,
    Residue,
    Leading,
    ResidueAndLeading,
}

impl PruneStrategy {
    fn residue(self) -> bool {
        matches!(
            self,
            PruneStrategy::Residue | PruneStrategy::ResidueAndLeading
        )
    }

    fn leading(self) -> bool {
        matches!(
            self,
            PruneStrategy::Leading | PruneStrategy::ResidueAndLeading
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub prime: u64,
    pub max_degree: u32,
    pub threads: usize,
    pub prune: PruneStrategy,
}

impl SearchOptions {
    pub fn new(prime: u64, max_degree: u32) -> Self {
        SearchOptions {
            prime,
            max_degree,
            threads: 1,
            prune: PruneStrategy::ResidueAndLeading,
        }
    }
}

/// A found solution, polynomials rendered canonically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SolutionJson {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "R")]
    pub r: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub prime: u64,
    pub dmax: u32,
    pub candidates_pruned: u128,
    pub candidates_tested: u128,
    pub solutions: Vec<SolutionJson>,
    pub candidates_total: u128,
    pub pruned_by_residue: u128,
    pub pruned_by_leading: u128,
}

/// Monomials `b^i beta^j` with `i + j <= d`.
fn monomials(d: u32) -> Vec<(u32, u32)> {
    (0..=d)
        .flat_map(|tot| (0..=tot).map(move |j| (tot - j, j)))
        .collect()
}

fn projective_count(p: u64, n: usize) -> u128 {
    // (p^n - 1) / (p - 1), saturating
    let mut acc: u128 = 0;
    for _ in 0..n {
        acc = match acc.checked_mul(p as u128).and_then(|x| x.checked_add(1)) {
            Some(x) => x,
            None => return u128::MAX,
        };
    }
    acc
}

struct Layout {
    p: u64,
    /// side of the dense coefficient square
    side: usize,
    p_monos: Vec<(u32, u32)>,
    q_monos: Vec<(u32, u32)>,
    r_monos: Vec<(u32, u32)>,
}

impl Layout {
    fn n(&self) -> usize {
        self.p_monos.len() + self.q_monos.len() + self.r_monos.len()
    }

    /// Decodes a projective index into a coefficient vector with leading 1.
    fn decode(&self, mut idx: u128, out: &mut [u64]) {
        let n = out.len();
        let p = self.p as u128;
        let mut lead = 0;
        loop {
            let block = pow_u128(p, n - lead - 1);
            if idx < block {
                break;
            }
            idx -= block;
            lead += 1;
        }
        out[..lead].fill(0);
        out[lead] = 1;
        for slot in out[lead + 1..].iter_mut().rev() {
            *slot = (idx % p) as u64;
            idx /= p;
        }
    }

    fn dense(&self, monos: &[(u32, u32)], coefs: &[u64]) -> Vec<u64> {
        let mut d = vec![0u64; self.side * self.side];
        for (&(i, j), &c) in monos.iter().zip(coefs) {
            d[i as usize * self.side + j as usize] = c;
        }
        d
    }
}

fn pow_u128(b: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc * b)
}

/// Dense bivariate arithmetic mod p on a fixed `side x side` grid.
struct Dense<'a> {
    lay: &'a Layout,
}

impl Dense<'_> {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let s = self.lay.side;
        let p = self.lay.p;
        let mut out = vec![0u64; s * s];
        for (ia, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let (i1, j1) = (ia / s, ia % s);
            for (ib, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let (i2, j2) = (ib / s, ib % s);
                let k = (i1 + i2) * s + (j1 + j2);
                out[k] = (out[k] + ca * cb) % p;
            }
        }
        out
    }

    fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.lay.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + p - y) % p;
        }
    }

    fn sparse(&self, terms: &[(usize, usize, i64)]) -> Vec<u64> {
        let s = self.lay.side;
        let mut out = vec![0u64; s * s];
        for &(i, j, c) in terms {
            out[i * s + j] = c.rem_euclid(self.lay.p as i64) as u64;
        }
        out
    }

    fn degree(&self, a: &[u64]) -> Option<usize> {
        let s = self.lay.side;
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, _)| k / s + k % s)
            .max()
    }

    fn top_part(&self, a: &[u64], deg: usize) -> Vec<u64> {
        let s = self.lay.side;
        a.iter()
            .enumerate()
            .map(|(k, &c)| if k / s + k % s == deg { c } else { 0 })
            .collect()
    }
}

enum Verdict {
    PrunedLeading,
    Tested { solution: bool },
}

struct Weights {
    beta_1_minus_beta2: Vec<u64>,
    b_1_minus_b2: Vec<u64>,
    b_beta_diff: Vec<u64>,
    beta3: Vec<u64>,
    b3: Vec<u64>,
}

impl Weights {
    fn new(dense: &Dense) -> Self {
        Weights {
            beta_1_minus_beta2: dense.sparse(&[(0, 1, 1), (0, 3, -1)]),
            b_1_minus_b2: dense.sparse(&[(1, 0, 1), (3, 0, -1)]),
            b_beta_diff: dense.sparse(&[(3, 1, 1), (1, 3, -1)]),
            beta3: dense.sparse(&[(0, 3, 1)]),
            b3: dense.sparse(&[(3, 0, 1)]),
        }
    }
}

fn check(dense: &Dense, w: &Weights, leading: bool, pp: &[u64], qq: &[u64], rr: &[u64]) -> Verdict {
    let p2 = dense.mul(pp, pp);
    let r2 = dense.mul(rr, rr);
    let q2 = dense.mul(qq, qq);
    if leading {
        let dp = dense.degree(pp).map(|d| 2 * d + 3);
        let dr = dense.degree(rr).map(|d| 2 * d + 3);
        let dq = dense.degree(qq).map(|d| 2 * d + 4);
        let top = dp.max(dr).max(dq).expect("nonzero triple");
        if dq == Some(top) || dp != Some(top) || dr != Some(top) {
            return Verdict::PrunedLeading;
        }
        let half = (top - 3) / 2;
        let mut t = dense.mul(&dense.top_part(&p2, 2 * half), &w.beta3);
        dense.sub_assign(&mut t, &dense.mul(&dense.top_part(&r2, 2 * half), &w.b3));
        if t.iter().any(|&c| c != 0) {
            return Verdict::PrunedLeading;
        }
    }
    let e = expand(dense, w, &p2, &q2, &r2);
    Verdict::Tested {
        solution: e.iter().all(|&c| c == 0),
    }
}

fn expand(dense: &Dense, w: &Weights, p2: &[u64], q2: &[u64], r2: &[u64]) -> Vec<u64> {
    let mut e = dense.mul(p2, &w.beta_1_minus_beta2);
    dense.sub_assign(&mut e, &dense.mul(r2, &w.b_1_minus_b2));
    dense.sub_assign(&mut e, &dense.mul(q2, &w.b_beta_diff));
    e
}

#[derive(Default)]
struct Tally {
    pruned_leading: u128,
    tested: u128,
    solutions: Vec<Vec<u64>>,
}

/// Enumerates every projective triple of total degree `<= dmax` and reports
/// all solutions of the cleared identity (expected: none).
pub fn no_solution_search(opts: &SearchOptions) -> Result<SearchReport> {
    let field = PrimeField::new(opts.prime)?;
    let p = opts.prime;
    let d = opts.max_degree;
    let all = monomials(d);
    let m = all.len();
    let total = projective_count(p, 3 * m);
    let residue = opts.prune.residue();
    let (p_monos, r_monos): (Vec<_>, Vec<_>) = if residue {
        (
            all.iter().copied().filter(|&(i, _)| i >= 1).collect(),
            all.iter().copied().filter(|&(_, j)| j >= 1).collect(),
        )
    } else {
        (all.clone(), all.clone())
    };
    let lay = Layout {
        p,
        side: 2 * d as usize + 5,
        p_monos,
        q_monos: all.clone(),
        r_monos,
    };
    let n = lay.n();
    let enumerated = projective_count(p, n);
    if enumerated > SEARCH_LIMIT {
        return Err(Error::BudgetExceeded {
            estimate: enumerated,
            limit: SEARCH_LIMIT,
        });
    }

    let dense = Dense { lay: &lay };
    let w = Weights::new(&dense);
    let threads = opts.threads.max(1);
    let chunk = enumerated.div_ceil(threads as u128).max(1);
    let leading = opts.prune.leading();

    let run = |lo: u128, hi: u128| {
        let mut tally = Tally::default();
        let mut coefs = vec![0u64; n];
        let (np, nq) = (lay.p_monos.len(), lay.q_monos.len());
        for idx in lo..hi {
            lay.decode(idx, &mut coefs);
            let pp = lay.dense(&lay.p_monos, &coefs[..np]);
            let qq = lay.dense(&lay.q_monos, &coefs[np..np + nq]);
            let rr = lay.dense(&lay.r_monos, &coefs[np + nq..]);
            match check(&dense, &w, leading, &pp, &qq, &rr) {
                Verdict::PrunedLeading => tally.pruned_leading += 1,
                Verdict::Tested { solution } => {
                    tally.tested += 1;
                    if solution {
                        tally.solutions.push(coefs.clone());
                    }
                }
            }
        }
        tally
    };

    let tallies: Vec<Tally> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u128)
            .map(|t| {
                let lo = (t * chunk).min(enumerated);
                let hi = ((t + 1) * chunk).min(enumerated);
                let run = &run;
                scope.spawn(move || run(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker"))
            .collect()
    });

    let mut pruned_leading = 0;
    let mut tested = 0;
    let mut solutions = Vec::new();
    for t in tallies {
        pruned_leading += t.pruned_leading;
        tested += t.tested;
        for coefs in t.solutions {
            solutions.push(render_solution(&lay, field, &coefs)?);
        }
    }
    solutions.sort();
    let pruned_residue = total.saturating_sub(enumerated);
    Ok(SearchReport {
        prime: p,
        dmax: d,
        candidates_pruned: pruned_residue.saturating_add(pruned_leading),
        candidates_tested: tested,
        solutions,
        candidates_total: total,
        pruned_by_residue: pruned_residue,
        pruned_by_leading: pruned_leading,
    })
}

/// Re-checks a hit through the generic polynomial code and renders it.
fn render_solution(lay: &Layout, field: PrimeField, coefs: &[u64]) -> Result<SolutionJson> {
    let vars = VarSet::new(["b", "beta"])?;
    let build = |monos: &[(u32, u32)], cs: &[u64]| {
        Poly::from_terms(
            &vars,
            &field,
            monos
                .iter()
                .zip(cs)
                .map(|(&(i, j), &c)| (Mono::new(vec![i, j]), field.elem(c))),
        )
    };
    let (np, nq) = (lay.p_monos.len(), lay.q_monos.len());
    let t: CandidateTriple<FpElem> = CandidateTriple::new(
        build(&lay.p_monos, &coefs[..np]),
        build(&lay.q_monos, &coefs[np..np + nq]),
        build(&lay.r_monos, &coefs[np + nq..]),
    )?;
    assert!(
        cleared_identity(&t).is_zero(),
        "dense and generic arithmetic disagree"
    );
    Ok(SolutionJson {
        p: t.p.to_string(),
        q: t.q.to_string(),
        r: t.r.to_string(),
    })
}
