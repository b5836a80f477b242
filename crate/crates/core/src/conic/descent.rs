//! One round of the divisibility descent for
//! `P^2 beta(1-beta^2) = R^2 b(1-b^2) + Q^2 b beta(b^2-beta^2)` in `k[b, beta]`.

use std::sync::Arc;

use crate::arith::{Field, GaussRat};
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, VarSet};

/// A hypothetical solution `(a, alpha) = (P/Q, R/Q)` with polynomial parts
/// over `[b, beta]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateTriple<F: Field> {
    pub p: Poly<F>,
    pub q: Poly<F>,
    pub r: Poly<F>,
}

impl<F: Field> CandidateTriple<F> {
    pub fn new(p: Poly<F>, q: Poly<F>, r: Poly<F>) -> Result<Self> {
        let names = p.vars().names();
        if names != ["b", "beta"] || q.vars() != p.vars() || r.vars() != p.vars() {
            return Err(Error::VarSetMismatch(
                "candidate triple must live over [b, beta]".into(),
            ));
        }
        Ok(CandidateTriple { p, q, r })
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// True iff the three have no common non-constant factor.
    pub fn is_coprime(&self) -> bool {
        let g = self.p.gcd(&self.q).gcd(&self.r);
        !g.is_zero() && g.is_constant()
    }
}

fn fixed<F: Field>(vars: &Arc<VarSet>, ctx: &F::Ctx, src: &str) -> Poly<F> {
    Poly::parse(vars, ctx, src).expect("fixed expression")
}

/// `P^2 beta(1-beta^2) - R^2 b(1-b^2) - Q^2 b beta(b^2-beta^2)`.
pub fn cleared_identity<F: Field>(t: &CandidateTriple<F>) -> Poly<F> {
    let (v, ctx) = (t.p.vars(), t.p.ctx());
    t.p.pow(2)
        .mul(&fixed(v, ctx, "beta*(1-beta^2)"))
        .sub(&t.r.pow(2).mul(&fixed(v, ctx, "b*(1-b^2)")))
        .sub(&t.q.pow(2).mul(&fixed(v, ctx, "b*beta*(b^2-beta^2)")))
}

/// `P1^2 b(1-beta^2) - R1^2 beta(1-b^2) - Q^2 (b^2-beta^2)`, the identity after
/// extracting `P = b*P1`, `R = beta*R1` and dividing by `b*beta`.
fn reduced_identity<F: Field>(p1: &Poly<F>, q: &Poly<F>, r1: &Poly<F>) -> Poly<F> {
    let (v, ctx) = (p1.vars(), p1.ctx());
    p1.pow(2)
        .mul(&fixed(v, ctx, "b*(1-beta^2)"))
        .sub(&r1.pow(2).mul(&fixed(v, ctx, "beta*(1-b^2)")))
        .sub(&q.pow(2).mul(&fixed(v, ctx, "b^2-beta^2")))
}

/// Second-round divisibilities read off the reduced identity at `b = 0`
/// and at `beta = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondRound {
    pub b_divides_r1: bool,
    pub b_divides_q: bool,
    pub beta_divides_p1: bool,
    pub beta_divides_q: bool,
}

impl SecondRound {
    pub fn all(&self) -> bool {
        self.b_divides_r1 && self.b_divides_q && self.beta_divides_p1 && self.beta_divides_q
    }
}

#[derive(Debug, Clone)]
pub struct DescentReport<F: Field> {
    pub b_divides_p: bool,
    pub beta_divides_r: bool,
    pub p1: Poly<F>,
    pub r1: Poly<F>,
    pub reduced_identity_holds: bool,
    pub second_round: SecondRound,
    /// `b*beta` divides all of `P, Q, R`
    pub all_divisible_by_b_beta: bool,
    /// a nonzero input reaching here contradicts coprimality
    pub contradiction: bool,
}

fn vanishes_at<F: Field>(f: &Poly<F>, k: usize) -> bool {
    f.eval_var(k, &F::zero(f.ctx())).is_zero()
}

/// Runs the divisibility steps on a triple that satisfies the cleared
/// identity; any other triple is rejected.
pub fn forced_divisibility<F: Field>(t: &CandidateTriple<F>) -> Result<DescentReport<F>> {
    if !cleared_identity(t).is_zero() {
        return Err(Error::NotASolution);
    }
    let vars = t.p.vars();
    let (b, beta) = (vars.index("b")?, vars.index("beta")?);
    let mono = |k: usize| {
        let mut e = vec![0; 2];
        e[k] = 1;
        Mono::new(e)
    };
    let b_divides_p = vanishes_at(&t.p, b);
    let beta_divides_r = vanishes_at(&t.r, beta);
    // both follow from the identity; failure here would be a bug upstream
    debug_assert!(b_divides_p && beta_divides_r);
    let p1 = t.p.div_monomial(&mono(b))?;
    let r1 = t.r.div_monomial(&mono(beta))?;
    let reduced_identity_holds = reduced_identity(&p1, &t.q, &r1).is_zero();
    let second_round = SecondRound {
        b_divides_r1: vanishes_at(&r1, b),
        b_divides_q: vanishes_at(&t.q, b),
        beta_divides_p1: vanishes_at(&p1, beta),
        beta_divides_q: vanishes_at(&t.q, beta),
    };
    let bb = Poly::monomial(vars, t.p.ctx(), Mono::new(vec![1, 1]), F::one(t.p.ctx()));
    let divisible = |f: &Poly<F>| f.divide_exact(&bb).is_ok();
    let all_divisible_by_b_beta = divisible(&t.p) && divisible(&t.q) && divisible(&t.r);
    Ok(DescentReport {
        b_divides_p,
        beta_divides_r,
        p1,
        r1,
        reduced_identity_holds,
        second_round,
        all_divisible_by_b_beta,
        contradiction: all_divisible_by_b_beta && !t.is_zero(),
    })
}

/// Outcome of the degree-parity argument with fully symbolic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityReport {
    pub degree: u32,
    /// at `b = 0`: every coefficient of `R1(0, beta)` and `Q(0, beta)` is forced to zero
    pub b_zero_forces: bool,
    /// at `beta = 0`: every coefficient of `P1(b, 0)` and `Q(b, 0)` is forced to zero
    pub beta_zero_forces: bool,
    /// the restricted identity at `b = 0`, e.g. `R1(0,beta)^2 beta - Q(0,beta)^2 beta^2`
    pub b_zero_identity: String,
}

impl ParityReport {
    pub fn ok(&self) -> bool {
        self.b_zero_forces && self.beta_zero_forces
    }
}

/// Checks, for generic `P1, Q, R1` of total degree `<= degree`, that the
/// reduced identity restricted to `b = 0` forces `R1(0, beta) = Q(0, beta) = 0`
/// (and symmetrically at `beta = 0`).
///
/// The restricted identity is a polynomial in `beta` whose coefficients are
/// quadratic forms in the unknown coefficients. Working from the top degree
/// down, each coefficient must reduce to a nonzero multiple of a single
/// square `x^2` once the previously forced unknowns are zeroed, which forces
/// `x = 0`. This is exactly the parity of `beta`-degrees: the two summands
/// have degrees of opposite parity, so neither can cancel the other's top
/// term. Only `x^2 = 0 => x = 0` is used, which holds in any field.
pub fn parity_check(degree: u32) -> ParityReport {
    let monos: Vec<(u32, u32)> = (0..=degree)
        .flat_map(|tot| (0..=tot).map(move |i| (tot - i, i)))
        .collect();
    let mut names = vec!["b".to_string(), "beta".to_string()];
    for poly in ["p", "q", "r"] {
        for (i, j) in &monos {
            names.push(format!("{poly}_{i}_{j}"));
        }
    }
    let vars = VarSet::new(names).expect("distinct");
    let generic = |offset: usize| {
        let terms = monos.iter().enumerate().map(|(n, &(i, j))| {
            let mut e = vec![0u32; vars.len()];
            e[0] = i;
            e[1] = j;
            e[2 + offset + n] = 1;
            (Mono::new(e), GaussRat::one_value())
        });
        Poly::from_terms(&vars, &(), terms.collect::<Vec<_>>())
    };
    let m = monos.len();
    let (p1, q, r1) = (generic(0), generic(m), generic(2 * m));
    let ident = reduced_identity(&p1, &q, &r1);
    let zero = GaussRat::zero_value();

    let coeff_index = |poly: &str, i: u32, j: u32| vars.index(&format!("{poly}_{i}_{j}")).unwrap();
    let at_b0 = ident.eval_var(0, &zero);
    let need_b0: Vec<usize> = (0..=degree)
        .flat_map(|j| [coeff_index("r", 0, j), coeff_index("q", 0, j)])
        .collect();
    let at_beta0 = ident.eval_var(1, &zero);
    let need_beta0: Vec<usize> = (0..=degree)
        .flat_map(|i| [coeff_index("p", i, 0), coeff_index("q", i, 0)])
        .collect();

    ParityReport {
        degree,
        b_zero_forces: forces_all(&at_b0, 1, &need_b0),
        beta_zero_forces: forces_all(&at_beta0, 0, &need_beta0),
        b_zero_identity: at_b0.to_string(),
    }
}

/// Top-down elimination: repeatedly take the highest power of `x_main`,
/// require its coefficient to be `c * x^2` for one unknown `x`, and set
/// `x = 0`. Succeeds iff the identity collapses to zero with every unknown
/// in `needed` forced.
fn forces_all(identity: &Poly<GaussRat>, main: usize, needed: &[usize]) -> bool {
    let zero = GaussRat::zero_value();
    let mut e = identity.clone();
    let mut forced: Vec<usize> = Vec::new();
    while !e.is_zero() {
        let top = e.coeffs_in(main).pop().expect("nonzero");
        let single_square = match top.terms() {
            [(m, _)] => {
                let nz: Vec<(usize, u32)> = m
                    .exps()
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|&(_, x)| x > 0)
                    .collect();
                match nz.as_slice() {
                    [(k, 2)] if *k != main => Some(*k),
                    _ => None,
                }
            }
            _ => None,
        };
        let Some(k) = single_square else {
            return false;
        };
        forced.push(k);
        e = e.eval_var(k, &zero);
    }
    needed.iter().all(|k| forced.contains(k))
}
