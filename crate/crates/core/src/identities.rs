//! Every displayed relation of the unirationality argument as an exact
//! check with a witness.
//!
//! An identity check returns the normal-form difference of its two sides;
//! it passes iff that difference is exactly zero. Non-vanishing checks
//! return the value itself and pass iff it is nonzero. The valuation check
//! returns the two `b3`-adic valuations.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::arith::GaussRat;
use crate::funcfield::{self, apply_g, FieldElem, GenSet};
use crate::poly::{Poly, RatFunc, VarSet};

/// Variables of the hypersurface, standing for `(a2, a3, b2, b3)`.
pub const H_VARS: [&str; 4] = ["a", "alpha", "b", "beta"];

pub fn h_vars() -> &'static Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(H_VARS).expect("distinct"))
}

/// `(a^2 - b)(alpha^2 - beta^3) - (alpha^2 - beta)(a^2 - b^3)`.
pub fn h_product_form() -> Poly<GaussRat> {
    hp("(a^2-b)*(alpha^2-beta^3) - (alpha^2-beta)*(a^2-b^3)")
}

/// `a^2 beta (1 - beta^2) - alpha^2 b (1 - b^2) - b beta (b^2 - beta^2)`,
/// the defining polynomial of the hypersurface used everywhere downstream.
pub fn h_polynomial() -> Poly<GaussRat> {
    hp("a^2*beta*(1-beta^2) - alpha^2*b*(1-b^2) - b*beta*(b^2-beta^2)")
}

fn hp(src: &str) -> Poly<GaussRat> {
    Poly::parse(h_vars(), &(), src).expect("valid expression")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// passes iff the witness is zero
    Identity,
    /// passes iff the witness is nonzero
    Nonzero,
    /// passes iff the valuation of numerator times denominator is odd
    Valuation,
}

#[derive(Debug, Clone)]
pub enum Witness {
    Field(FieldElem),
    Poly(Poly<GaussRat>),
    RatFunc(RatFunc<GaussRat>),
    Valuations { num: u32, den: u32 },
}

impl Witness {
    pub fn is_zero(&self) -> bool {
        match self {
            Witness::Field(f) => f.is_zero(),
            Witness::Poly(p) => p.is_zero(),
            Witness::RatFunc(r) => r.is_zero(),
            Witness::Valuations { .. } => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Field(x) => write!(f, "{x}"),
            Witness::Poly(p) => write!(f, "{p}"),
            Witness::RatFunc(r) => write!(f, "{r}"),
            Witness::Valuations { num, den } => write!(f, "val(N)={num};val(D)={den}"),
        }
    }
}

/// Verdict for one labelled relation.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: String,
    pub kind: CheckKind,
    pub ok: bool,
    pub witness: Witness,
    pub detail: Option<String>,
}

impl IdentityReport {
    pub(crate) fn identity(id: impl Into<String>, witness: Witness) -> Self {
        let ok = witness.is_zero();
        IdentityReport {
            id: id.into(),
            kind: CheckKind::Identity,
            ok,
            witness,
            detail: None,
        }
    }

    fn nonzero(id: impl Into<String>, value: FieldElem) -> Self {
        let ok = !value.is_zero();
        IdentityReport {
            id: id.into(),
            kind: CheckKind::Nonzero,
            ok,
            witness: Witness::Field(value),
            detail: None,
        }
    }

    pub(crate) fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn to_json(&self) -> IdentityLine {
        IdentityLine {
            id: self.id.clone(),
            kind: self.kind,
            ok: self.ok,
            witness: self.witness.to_string(),
            detail: self.detail.clone(),
        }
    }
}

/// One output line of `verify-identities`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityLine {
    pub id: String,
    pub kind: CheckKind,
    pub ok: bool,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn e(src: &str) -> FieldElem {
    funcfield::elem(src).expect("valid expression")
}

fn r(num: &str, den: &str) -> FieldElem {
    funcfield::ratio(num, den).expect("nonzero denominator")
}

fn diff(lhs: &FieldElem, rhs: &FieldElem) -> Witness {
    Witness::Field(lhs.sub(rhs))
}

/// Evaluates a polynomial in `(a, alpha, b, beta)` at `(a2, a3, b2, b3)`.
pub fn at_generators(p: &Poly<GaussRat>, g: &GenSet) -> FieldElem {
    let images = [g.a2.clone(), g.a3.clone(), g.b2.clone(), g.b3.clone()];
    FieldElem::eval_poly(p, &images).expect("four images")
}

/// (I): `Y_i^2 - X_i (X_i^2 - 1)` vanishes in the coordinate ring.
pub fn check_i() -> Vec<IdentityReport> {
    (1..=3)
        .map(|i| {
            let raw = funcfield::curve_poly(&format!("y{i}^2 - x{i}*(x{i}^2-1)")).unwrap();
            let nf = funcfield::normal_form(&raw).unwrap();
            IdentityReport::identity(format!("I.{i}"), Witness::Poly(nf.poly().clone()))
        })
        .collect()
}

/// (II): each of the seven generators is fixed by `g`.
pub fn check_ii() -> Vec<IdentityReport> {
    let g = GenSet::new();
    g.named()
        .iter()
        .map(|(name, f)| IdentityReport::identity(format!("II.{name}"), diff(&apply_g(f), f)))
        .collect()
}

/// The field is generated over the invariants by `y1`, which satisfies
/// `T^4 - w1`: `y1^4 = w1`, and every coordinate is recovered from `y1`.
pub fn check_vi() -> Vec<IdentityReport> {
    let g = GenSet::new();
    let y1 = e("y1");
    let x1 = g.lam1.div(&y1.pow(2)).unwrap();
    vec![
        IdentityReport::identity("VI", diff(&y1.pow(4), &g.w1)),
        IdentityReport::identity("VI.x1", diff(&e("x1"), &x1)),
        IdentityReport::identity("VI.x2", diff(&e("x2"), &g.b2.mul(&x1))),
        IdentityReport::identity("VI.x3", diff(&e("x3"), &g.b3.mul(&x1))),
        IdentityReport::identity("VI.y2", diff(&e("y2"), &g.a2.mul(&y1))),
        IdentityReport::identity("VI.y3", diff(&e("y3"), &g.a3.mul(&y1))),
    ]
}

/// (VIII) `w1 = u1 (u1 - 1)^2` and (IX) `lam1 = u1 (u1 - 1)`.
pub fn check_viii_ix() -> [IdentityReport; 2] {
    let g = GenSet::new();
    let u_minus_1 = g.u1.sub(&FieldElem::one());
    [
        IdentityReport::identity("VIII", diff(&g.w1, &g.u1.mul(&u_minus_1.pow(2)))),
        IdentityReport::identity("IX", diff(&g.lam1, &g.u1.mul(&u_minus_1))),
    ]
}

fn x_rhs(j: usize, plus: bool) -> FieldElem {
    let sign = if plus { "+" } else { "-" };
    let ratio = r(&format!("x{j}^2{sign}1"), "x1^2-1");
    r(&format!("x{j}"), "x1").mul(&ratio.sub(&FieldElem::one()))
}

/// (X) for `j`, plus the non-vanishing of `a_j^2 - b_j` and `a_j^2 - b_j^3`.
pub fn check_x_and_lem3(j: usize) -> Vec<IdentityReport> {
    assert!(j == 2 || j == 3, "j must be 2 or 3");
    let g = GenSet::new();
    let lhs = g.a(j).pow(2).sub(g.b(j));
    vec![
        IdentityReport::identity(format!("X.{j}"), diff(&lhs, &x_rhs(j, false))),
        IdentityReport::nonzero(format!("lem3.{j}"), lhs.clone()),
        IdentityReport::nonzero(format!("lem3.cubic.{j}"), g.a(j).pow(2).sub(&g.b(j).pow(3))),
    ]
}

/// (**) for both `j`, both equalities of (XI), and the cross relation (XII).
pub fn check_xi_star() -> Vec<IdentityReport> {
    let g = GenSet::new();
    let lin = |j| g.a(j).pow(2).sub(g.b(j));
    let cub = |j| g.a(j).pow(2).sub(&g.b(j).pow(3));
    let mut out = Vec::new();
    for j in [2, 3] {
        out.push(IdentityReport::identity(
            format!("**.{j}"),
            diff(&g.u1.mul(&cub(j)), &lin(j)),
        ));
    }
    for j in [2, 3] {
        let frac = lin(j).div(&cub(j)).expect("a_j^2 - b_j^3 is nonzero");
        out.push(IdentityReport::identity(
            format!("XI.{j}"),
            diff(&g.u1, &frac),
        ));
    }
    out.push(IdentityReport::identity(
        "XII",
        diff(&lin(2).mul(&cub(3)), &lin(3).mul(&cub(2))),
    ));
    out
}

/// Result of comparing the product form with the expanded form.
#[derive(Debug, Clone)]
pub struct HFormsReport {
    /// `F1 = epsilon * F2`, or `None` if neither sign works
    pub epsilon: Option<i64>,
    pub equivalence: IdentityReport,
    /// coefficient of `a^2 alpha^2` in the expanded product form
    pub common_term: IdentityReport,
}

/// Determines the sign relating the two forms of the hypersurface in the
/// free polynomial ring.
pub fn check_h_forms() -> HFormsReport {
    h_forms_for(&h_product_form(), &h_polynomial())
}

pub(crate) fn h_forms_for(f1: &Poly<GaussRat>, f2: &Poly<GaussRat>) -> HFormsReport {
    let epsilon = [1i64, -1]
        .into_iter()
        .find(|&s| f1.sub(&f2.scale(&GaussRat::from_i64(s))).is_zero());
    let eps = epsilon.unwrap_or(1);
    let residue = f1.sub(&f2.scale(&GaussRat::from_i64(eps)));
    let coef = f1.coeff(&[2, 2, 0, 0]);
    let common = Poly::constant(f1.vars(), &(), coef);
    HFormsReport {
        epsilon,
        equivalence: IdentityReport::identity("H-equiv", Witness::Poly(residue))
            .with_detail(format!("epsilon={eps}")),
        common_term: IdentityReport::identity("H-no-a2alpha2", Witness::Poly(common)),
    }
}

/// `b3 (1 - b3^2)` as a polynomial in `(alpha, b, beta)`.
fn xiv_parts() -> (Poly<GaussRat>, Poly<GaussRat>) {
    let v = VarSet::new(["alpha", "b", "beta"]).unwrap();
    let p = |s: &str| Poly::parse(&v, &(), s).unwrap();
    (
        p("alpha^2*b*(1-b^2) + b*beta*(b^2-beta^2)"),
        p("beta*(1-beta^2)"),
    )
}

/// (XIII), (XIV) and the non-vanishing of the denominator `b3 (1 - b3^2)`.
pub fn check_xiii_xiv() -> Vec<IdentityReport> {
    let g = GenSet::new();
    let xiii = at_generators(&hp("a^2*beta*(1-beta^2)"), &g);
    let rhs = at_generators(&hp("alpha^2*b*(1-b^2) + b*beta*(b^2-beta^2)"), &g);
    let (n, d) = xiv_parts();
    let images = [g.a3.clone(), g.b2.clone(), g.b3.clone()];
    let num = FieldElem::eval_poly(&n, &images).unwrap();
    let den = FieldElem::eval_poly(&d, &images).unwrap();
    vec![
        IdentityReport::identity("XIII", diff(&xiii, &rhs)),
        IdentityReport::nonzero("XIV.den", den.clone()),
        IdentityReport::identity("XIV", diff(&g.a2.pow(2), &num.div(&den).expect("nonzero"))),
    ]
}

/// Valuations of the right side of (XIV) at the prime `b3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotSquareReport {
    pub val_num: u32,
    pub val_den: u32,
    pub numerator_nonconstant: bool,
}

impl NotSquareReport {
    /// Odd total valuation obstructs being a square.
    pub fn is_not_square(&self) -> bool {
        (self.val_num + self.val_den) % 2 == 1
    }
}

pub fn not_square_valuations() -> NotSquareReport {
    let (n, d) = xiv_parts();
    let beta = n.vars().index("beta").unwrap();
    NotSquareReport {
        val_num: n.valuation(beta).expect("nonzero"),
        val_den: d.valuation(beta).expect("nonzero"),
        numerator_nonconstant: !n.is_constant(),
    }
}

/// The right side of (XIV) is not a square in `k(a3, b2, b3)`.
pub fn check_not_square() -> IdentityReport {
    let v = not_square_valuations();
    IdentityReport {
        id: "not-square".into(),
        kind: CheckKind::Valuation,
        ok: v.is_not_square() && v.numerator_nonconstant,
        witness: Witness::Valuations {
            num: v.val_num,
            den: v.val_den,
        },
        detail: Some(format!("val(N*D)={}", v.val_num + v.val_den)),
    }
}

/// The full suite in a fixed order.
pub fn verify_all() -> Vec<IdentityReport> {
    let mut out = check_i();
    out.extend(check_ii());
    out.extend(check_vi());
    out.extend(check_viii_ix());
    out.extend(check_x_and_lem3(2));
    out.extend(check_x_and_lem3(3));
    out.extend(check_xi_star());
    out.extend(check_xiii_xiv());
    let h = check_h_forms();
    out.push(h.equivalence);
    out.push(h.common_term);
    out.push(check_not_square());
    out
}

/// Deliberately wrong variants of the checks above; each must produce a
/// nonzero witness.
pub fn mutations() -> Vec<IdentityReport> {
    let g = GenSet::new();
    let one = FieldElem::one();
    let u_minus_1 = g.u1.sub(&one);
    let mut out = Vec::new();

    let raw = funcfield::curve_poly("y1^2 - x1*(x1^2+1)").unwrap();
    let nf = funcfield::normal_form(&raw).unwrap();
    out.push(IdentityReport::identity(
        "mut.I",
        Witness::Poly(nf.poly().clone()),
    ));

    let b2_bad = e("x2");
    out.push(IdentityReport::identity(
        "mut.II",
        diff(&apply_g(&b2_bad), &b2_bad),
    ));

    out.push(IdentityReport::identity(
        "mut.VI",
        diff(&e("y1").pow(4), &g.lam1),
    ));
    out.push(IdentityReport::identity(
        "mut.VIII",
        diff(&g.w1, &g.u1.mul(&u_minus_1)),
    ));
    out.push(IdentityReport::identity(
        "mut.IX",
        diff(&g.lam1, &g.u1.mul(&g.u1.add(&one))),
    ));

    for j in [2, 3] {
        let lhs = g.a(j).pow(2).sub(g.b(j));
        out.push(IdentityReport::identity(
            format!("mut.X.{j}"),
            diff(&lhs, &x_rhs(j, true)),
        ));
    }

    let lin2 = g.a2.pow(2).sub(&g.b2);
    let sq2 = g.a2.pow(2).sub(&g.b2.pow(2));
    out.push(IdentityReport::identity(
        "mut.**",
        diff(&g.u1.mul(&sq2), &lin2),
    ));
    out.push(IdentityReport::identity(
        "mut.XI",
        diff(&g.u1, &lin2.div(&sq2).unwrap()),
    ));

    let lin3 = g.a3.pow(2).sub(&g.b3);
    let cub2 = g.a2.pow(2).sub(&g.b2.pow(3));
    let sq3 = g.a3.pow(2).sub(&g.b3.pow(2));
    out.push(IdentityReport::identity(
        "mut.XII",
        diff(&lin2.mul(&sq3), &lin3.mul(&cub2)),
    ));

    let xiii = at_generators(&hp("a^2*beta*(1-beta^2)"), &g);
    let flipped = at_generators(&hp("alpha^2*b*(1-b^2) - b*beta*(b^2-beta^2)"), &g);
    out.push(IdentityReport::identity("mut.XIII", diff(&xiii, &flipped)));

    let n = at_generators(&hp("alpha^2*b*(1-b^2) + b*beta*(b^2-beta^2)"), &g);
    let bad_den = at_generators(&hp("beta*(1+beta^2)"), &g);
    out.push(IdentityReport::identity(
        "mut.XIV",
        diff(&g.a2.pow(2), &n.div(&bad_den).unwrap()),
    ));

    let f2_flip = hp("a^2*beta*(1-beta^2) - alpha^2*b*(1-b^2) + b*beta*(b^2-beta^2)");
    let h = h_forms_for(&h_product_form(), &f2_flip);
    let mut eq = h.equivalence;
    eq.id = "mut.H-equiv".into();
    out.push(eq);

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ok(reports: &[IdentityReport]) {
        for r in reports {
            assert!(r.ok, "{} failed, witness {}", r.id, r.witness);
        }
    }

    #[test]
    fn relation_i_and_invariance() {
        all_ok(&check_i());
        let ii = check_ii();
        assert_eq!(ii.len(), 7);
        all_ok(&ii);
    }

    #[test]
    fn degree_four_relation() {
        all_ok(&check_vi());
    }

    #[test]
    fn viii_and_ix() {
        let [viii, ix] = check_viii_ix();
        assert!(viii.ok && viii.witness.is_zero());
        assert!(ix.ok && ix.witness.is_zero());
    }

    #[test]
    fn x_and_nonvanishing() {
        for j in [2, 3] {
            let rs = check_x_and_lem3(j);
            assert_eq!(rs.len(), 3);
            all_ok(&rs);
            assert_eq!(rs[1].kind, CheckKind::Nonzero);
        }
    }

    #[test]
    fn xi_star_and_xii() {
        let rs = check_xi_star();
        assert_eq!(
            rs.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(),
            ["**.2", "**.3", "XI.2", "XI.3", "XII"]
        );
        all_ok(&rs);
    }

    #[test]
    fn h_forms_agree_with_positive_sign() {
        let h = check_h_forms();
        assert_eq!(h.epsilon, Some(1));
        assert!(h.equivalence.witness.is_zero());
        assert!(h.common_term.ok, "a^2 alpha^2 survives expansion");
        // the expansion still has an a^2 alpha^2 term before subtracting
        let lhs = hp("(a^2-b)*(alpha^2-beta^3)");
        assert_eq!(lhs.coeff(&[2, 2, 0, 0]), GaussRat::from_i64(1));
    }

    #[test]
    fn xiii_xiv() {
        let rs = check_xiii_xiv();
        all_ok(&rs);
        assert_eq!(rs[1].id, "XIV.den");
    }

    #[test]
    fn not_square_by_valuation() {
        let v = not_square_valuations();
        assert_eq!(v.val_den, 1);
        assert_eq!(v.val_num, 0);
        assert!(v.is_not_square());
        assert!(check_not_square().ok);
    }

    #[test]
    fn every_mutation_detected() {
        let ms = mutations();
        assert!(ms.len() >= 12, "only {} mutations", ms.len());
        for m in &ms {
            assert_eq!(m.kind, CheckKind::Identity);
            assert!(!m.witness.is_zero(), "{} not detected", m.id);
            assert!(!m.ok);
        }
        let h = h_forms_for(
            &h_product_form(),
            &hp("a^2*beta*(1-beta^2) - alpha^2*b*(1-b^2) + b*beta*(b^2-beta^2)"),
        );
        assert_eq!(h.epsilon, None);
    }

    #[test]
    fn verdicts_are_deterministic() {
        let a: Vec<String> = verify_all()
            .iter()
            .map(|r| serde_json::to_string(&r.to_json()).unwrap())
            .collect();
        let b: Vec<String> = verify_all()
            .iter()
            .map(|r| serde_json::to_string(&r.to_json()).unwrap())
            .collect();
        assert_eq!(a, b);
        assert!(a[0].starts_with(r#"{"id":"I.1","kind":"identity","ok":true,"witness":"0"}"#));
    }
}
