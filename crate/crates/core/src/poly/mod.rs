//! Sparse multivariate polynomials over an abstract [`Field`].
//!
//! Terms are kept in graded-lexicographic order (leading term first), with
//! the variable order fixed by the [`VarSet`]. No zero coefficient is ever
//! stored, so structural equality is mathematical equality.

mod gcd;
mod json;
mod parse;
mod ratfunc;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use json::{PolyJson, RatFuncJson, TermJson};
pub use ratfunc::RatFunc;

use crate::arith::Field;
use crate::error::{Error, Result};

/// An ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(Error::VarSetMismatch(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarSet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, one entry per variable of the owning [`VarSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono(exps)
    }

    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn gcd(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

/// Graded lexicographic: total degree first, ties broken by the exponent of
/// the earliest variable.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial operation selector for [`Poly::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// A polynomial with coefficients in `F` over a fixed [`VarSet`].
#[derive(Clone)]
pub struct Poly<F: Field> {
    vars: Arc<VarSet>,
    ctx: F::Ctx,
    /// descending grlex, nonzero coefficients only
    terms: Vec<(Mono, F)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(vars: &Arc<VarSet>, ctx: &F::Ctx) -> Self {
        Poly {
            vars: vars.clone(),
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>, ctx: &F::Ctx) -> Self {
        Self::constant(vars, ctx, F::one(ctx))
    }

    pub fn constant(vars: &Arc<VarSet>, ctx: &F::Ctx, c: F) -> Self {
        Self::monomial(vars, ctx, Mono::one(vars.len()), c)
    }

    pub fn from_i64(vars: &Arc<VarSet>, ctx: &F::Ctx, n: i64) -> Self {
        Self::constant(vars, ctx, F::from_i64(ctx, n))
    }

    pub fn monomial(vars: &Arc<VarSet>, ctx: &F::Ctx, mono: Mono, c: F) -> Self {
        assert_eq!(mono.0.len(), vars.len(), "monomial arity");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(mono, c)]
        };
        Poly {
            vars: vars.clone(),
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The `k`-th variable.
    pub fn var(vars: &Arc<VarSet>, ctx: &F::Ctx, k: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        Self::monomial(vars, ctx, Mono(e), F::one(ctx))
    }

    pub fn var_named(vars: &Arc<VarSet>, ctx: &F::Ctx, name: &str) -> Result<Self> {
        Ok(Self::var(vars, ctx, vars.index(name)?))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(vars: &Arc<VarSet>, ctx: &F::Ctx, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, F)>,
    {
        let mut acc: BTreeMap<Mono, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial arity");
            match acc.get_mut(&m) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(vars, ctx, acc)
    }

    fn from_map(vars: &Arc<VarSet>, ctx: &F::Ctx, map: BTreeMap<Mono, F>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly {
            vars: vars.clone(),
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> F {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => F::zero(&self.ctx),
        }
    }

    pub fn leading_term(&self) -> Option<(&Mono, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Leading coefficient in grlex (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> F {
        self.terms
            .first()
            .map_or_else(|| F::zero(&self.ctx), |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[k]).max()
    }

    /// Coefficient of an exact monomial.
    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms
            .iter()
            .find(|(m, _)| m.0 == exps)
            .map_or_else(|| F::zero(&self.ctx), |(_, c)| c.clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(format!(
                "{:?} vs {:?}",
                self.vars.names, other.vars.names
            )))
        }
    }

    fn assert_same(&self, other: &Self) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    /// Checked arithmetic entry point; the operator-style methods panic on a
    /// variable-set mismatch instead.
    pub fn arith(&self, other: &Self, op: PolyOp) -> Result<Self> {
        if let PolyOp::Pow(e) = op {
            return Ok(self.pow(e));
        }
        self.check_same(other)?;
        Ok(match op {
            PolyOp::Add => self.add(other),
            PolyOp::Sub => self.sub(other),
            PolyOp::Mul => self.mul(other),
            PolyOp::Pow(_) => unreachable!(),
        })
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.assert_same(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &F| if negate_other { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Poly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Poly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars, &self.ctx);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Mono, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.vars, &self.ctx, acc)
    }

    /// Multiplication by a single term; the order is preserved.
    pub fn mul_term(&self, mono: &Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars, &self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| (m.mul(mono), d.mul(c)))
            .collect();
        Poly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.mul_term(&Mono::one(self.vars.len()), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars, &self.ctx);
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

    /// Scales so that the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.vars.len(), "evaluation point arity");
        let mut powers: Vec<Vec<F>> = point
            .iter()
            .map(|x| vec![F::one(&self.ctx), x.clone()])
            .collect();
        let mut acc = F::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[k];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().mul(&point[k]);
                    table.push(next);
                }
                t = t.mul(&table[e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces variable `k` by the constant `value`.
    pub fn eval_var(&self, k: usize, value: &F) -> Self {
        let mut pw = vec![F::one(&self.ctx)];
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.0[k] as usize;
            while pw.len() <= e {
                let next = pw.last().unwrap().mul(value);
                pw.push(next);
            }
            let mut m = m.clone();
            m.0[k] = 0;
            (m, c.mul(&pw[e]))
        });
        Self::from_terms(&self.vars, &self.ctx, terms.collect::<Vec<_>>())
    }

    /// Polynomial composition: variable `k` of `self` becomes `images[k]`.
    pub fn compose(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.vars.len() {
            return Err(Error::VarSetMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if !same_vars(&p.vars, &target) {
                return Err(Error::VarSetMismatch(
                    "images over different variable sets".into(),
                ));
            }
        }
        let mut cache: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::one(&target, &self.ctx), p.clone()])
            .collect();
        let mut acc = Poly::zero(&target, &self.ctx);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, &self.ctx, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut cache[k];
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

    /// Substitutes rational functions for the variables of `self`. All images
    /// must share one target variable set.
    pub fn substitute(&self, images: &[RatFunc<F>]) -> Result<RatFunc<F>> {
        if images.len() != self.vars.len() {
            return Err(Error::VarSetMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let Some(first) = images.first() else {
            return Err(Error::VarSetMismatch("empty substitution".into()));
        };
        let target = first.vars().clone();
        if images.iter().any(|r| !same_vars(r.vars(), &target)) {
            return Err(Error::VarSetMismatch(
                "images over different variable sets".into(),
            ));
        }
        let mut cache: Vec<Vec<RatFunc<F>>> = images
            .iter()
            .map(|r| vec![RatFunc::one(&target, &self.ctx), r.clone()])
            .collect();
        let mut acc = RatFunc::zero(&target, &self.ctx);
        for (m, c) in &self.terms {
            let mut t = RatFunc::constant(&target, &self.ctx, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut cache[k];
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

    /// Re-expresses `self` over `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        let map: Vec<Option<usize>> = self.vars.names.iter().map(|n| target.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[k] {
                    Some(j) => e[j] = x,
                    None => return Err(Error::UnknownVariable(self.vars.names[k].clone())),
                }
            }
            terms.push((Mono(e), c.clone()));
        }
        Ok(Self::from_terms(target, &self.ctx, terms))
    }

    pub fn partial_derivative(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[k] > 0).map(|(m, c)| {
            let e = m.0[k];
            let mut m = m.clone();
            m.0[k] -= 1;
            (m, c.mul(&F::from_i64(&self.ctx, e as i64)))
        });
        Self::from_terms(&self.vars, &self.ctx, terms.collect::<Vec<_>>())
    }

    /// Largest `e` such that `x_k^e` divides `self`.
    pub fn valuation(&self, k: usize) -> Result<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.0[k])
            .min()
            .ok_or(Error::UndefinedValuation)
    }

    /// Largest monomial dividing every term (the all-zero monomial for zero).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::one(self.vars.len()),
            Some((m, _)) => it.fold(m.clone(), |g, (m, _)| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, mono: &Mono) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if !mono.divides(m) {
                return Err(Error::NotDivisible);
            }
            terms.push((m.div(mono), c.clone()));
        }
        Ok(Poly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Exact division; fails unless `divisor` divides `self`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_same(divisor)?;
        let (lm, lc) = match divisor.terms.first() {
            None => return Err(Error::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let qm = m.div(&lm);
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Ok(Self::from_terms(&self.vars, &self.ctx, quot))
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `x_k`;
    /// entry `e` multiplies `x_k^e` and does not involve `x_k`.
    pub fn coeffs_in(&self, k: usize) -> Vec<Self> {
        let deg = self.degree_in(k).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Mono, F)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[k] as usize;
            let mut m = m.clone();
            m.0[k] = 0;
            buckets[e].push((m, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::from_terms(&self.vars, &self.ctx, t))
            .collect()
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Mono, &F) -> F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(m, c)))
            .collect::<Vec<_>>();
        Self::from_terms(&self.vars, &self.ctx, terms)
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&k| self.terms.iter().any(|(m, _)| m.0[k] > 0))
            .collect()
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let compound = cs.chars().skip(1).any(|ch| ch == '+' || ch == '-');
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ if compound => (false, format!("({cs})")),
                _ => (false, cs),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let factors: Vec<String> =
                m.0.iter()
                    .zip(&self.vars.names)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, v)| {
                        if e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{body}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.names.join(","), self)
    }
}
