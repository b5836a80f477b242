//! The function field of the triple product of affine curves
//! `y_i^2 = x_i (x_i^2 - 1)`, `i = 1, 2, 3`.
//!
//! Elements of the coordinate ring are stored in normal form (every `y_i`
//! exponent is 0 or 1). Fractions are never reduced to lowest terms; two
//! fractions are equal iff the cross-multiplied numerators have the same
//! normal form. Because the coordinate ring is a domain, a denominator is
//! nonzero exactly when its normal form is.

mod element;
mod generators;

use std::sync::{Arc, OnceLock};

pub use element::{apply_g, is_g_invariant, normal_form, CurveRingElem, FieldElem};
pub use generators::{Automorphism, GenSet};

use crate::arith::GaussRat;
use crate::poly::{Poly, VarSet};

/// Names of the six coordinates, `x` block first.
pub const CURVE_VARS: [&str; 6] = ["x1", "x2", "x3", "y1", "y2", "y3"];

/// Shared variable set `[x1, x2, x3, y1, y2, y3]`.
pub fn curve_vars() -> &'static Arc<VarSet> {
    static VARS: OnceLock<Arc<VarSet>> = OnceLock::new();
    VARS.get_or_init(|| VarSet::new(CURVE_VARS).expect("distinct names"))
}

/// Index of `x_i` (1-based curve index).
pub fn xi(i: usize) -> usize {
    assert!((1..=3).contains(&i));
    i - 1
}

/// Index of `y_i` (1-based curve index).
pub fn yi(i: usize) -> usize {
    assert!((1..=3).contains(&i));
    i + 2
}

/// Parses a polynomial in the six curve coordinates (not yet reduced).
pub fn curve_poly(src: &str) -> crate::Result<Poly<GaussRat>> {
    Poly::parse(curve_vars(), &(), src)
}

/// The normal form of `src` as a field element.
pub fn elem(src: &str) -> crate::Result<FieldElem> {
    Ok(FieldElem::from(normal_form(&curve_poly(src)?)?))
}

/// Ratio `num/den` of two polynomial expressions.
pub fn ratio(num: &str, den: &str) -> crate::Result<FieldElem> {
    FieldElem::new(
        normal_form(&curve_poly(num)?)?,
        normal_form(&curve_poly(den)?)?,
    )
}
