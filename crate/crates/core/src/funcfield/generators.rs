use super::element::{CurveRingElem, FieldElem};
use super::{curve_vars, xi, yi};
use crate::poly::{Poly, RatFuncJson};

/// The invariant elements `b2 = x2/x1`, `b3 = x3/x1`, `a2 = y2/y1`,
/// `a3 = y3/y1`, `u1 = x1^2`, `w1 = y1^4`, `lam1 = x1*y1^2`.
#[derive(Debug, Clone)]
pub struct GenSet {
    pub b2: FieldElem,
    pub b3: FieldElem,
    pub a2: FieldElem,
    pub a3: FieldElem,
    pub u1: FieldElem,
    pub w1: FieldElem,
    pub lam1: FieldElem,
}

impl GenSet {
    pub fn new() -> Self {
        let x = |i| Automorphism::coordinate_x(i);
        let y = |i| Automorphism::coordinate_y(i);
        let q = |a: FieldElem, b: FieldElem| a.div(&b).expect("coordinates are nonzero");
        GenSet {
            b2: q(x(2), x(1)),
            b3: q(x(3), x(1)),
            a2: q(y(2), y(1)),
            a3: q(y(3), y(1)),
            u1: x(1).pow(2),
            w1: y(1).pow(4),
            lam1: x(1).mul(&y(1).pow(2)),
        }
    }

    /// `(name, element)` pairs in declaration order.
    pub fn named(&self) -> [(&'static str, &FieldElem); 7] {
        [
            ("b2", &self.b2),
            ("b3", &self.b3),
            ("a2", &self.a2),
            ("a3", &self.a3),
            ("u1", &self.u1),
            ("w1", &self.w1),
            ("lam1", &self.lam1),
        ]
    }

    /// `b_j` for `j` in {2, 3}.
    pub fn b(&self, j: usize) -> &FieldElem {
        match j {
            2 => &self.b2,
            3 => &self.b3,
            _ => panic!("j must be 2 or 3"),
        }
    }

    /// `a_j` for `j` in {2, 3}.
    pub fn a(&self, j: usize) -> &FieldElem {
        match j {
            2 => &self.a2,
            3 => &self.a3,
            _ => panic!("j must be 2 or 3"),
        }
    }
}

impl Default for GenSet {
    fn default() -> Self {
        Self::new()
    }
}

/// The automorphism `x_i -> -x_i`, `y_i -> i*y_i` on all three factors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Automorphism;

impl Automorphism {
    pub fn coordinate_x(i: usize) -> FieldElem {
        FieldElem::from(super::normal_form(&Poly::var(curve_vars(), &(), xi(i))).unwrap())
    }

    pub fn coordinate_y(i: usize) -> FieldElem {
        FieldElem::from(super::normal_form(&Poly::var(curve_vars(), &(), yi(i))).unwrap())
    }

    /// The six coordinate functions `x1, x2, x3, y1, y2, y3`.
    pub fn coordinates() -> Vec<FieldElem> {
        (1..=3)
            .map(Self::coordinate_x)
            .chain((1..=3).map(Self::coordinate_y))
            .collect()
    }

    pub fn apply(&self, f: &FieldElem) -> FieldElem {
        f.apply_g()
    }

    pub fn apply_n(&self, f: &FieldElem, n: u32) -> FieldElem {
        f.apply_g_pow(n)
    }

    /// Smallest `n >= 1` with `g^n` the identity on every coordinate.
    pub fn order(&self) -> u32 {
        let coords = Self::coordinates();
        (1..=8)
            .find(|&n| coords.iter().all(|c| self.apply_n(c, n) == *c))
            .expect("order divides 4")
    }
}

impl CurveRingElem {
    pub fn to_json(&self) -> crate::poly::PolyJson {
        self.poly().to_json()
    }
}

impl FieldElem {
    pub fn to_json(&self) -> RatFuncJson {
        RatFuncJson {
            num: self.num().to_json(),
            den: self.den().to_json(),
        }
    }
}
