//! Truncated power series (jets).
//!
//! A [`Jet`] is a polynomial known only up to a total-degree order `n`:
//! it represents any power series whose degree-≤ n part equals the stored
//! polynomial. Ring operations truncate consistently, taking the minimum of
//! the operand orders, so precision is never silently overstated.

use super::poly::{Poly, Q, Vars};
use num::{One, Zero};

/// A polynomial truncated at total degree `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    poly: Poly,
    order: u32,
}

impl Jet {
    pub fn new(poly: Poly, order: u32) -> Self {
        Jet { poly: poly.truncate(order), order }
    }

    pub fn zero(vars: &Vars, order: u32) -> Self {
        Jet { poly: Poly::zero(vars), order }
    }

    pub fn one(vars: &Vars, order: u32) -> Self {
        Jet { poly: Poly::one(vars), order }
    }

    pub fn var(vars: &Vars, i: usize, order: u32) -> Self {
        Jet::new(Poly::var(vars, i), order)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lower the order (loses information; never raises).
    pub fn with_order(&self, order: u32) -> Jet {
        assert!(
            order <= self.order,
            "cannot raise jet order from {} to {}",
            self.order,
            order
        );
        Jet::new(self.poly.clone(), order)
    }

    fn joint_order(&self, other: &Jet) -> u32 {
        self.order.min(other.order)
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let n = self.joint_order(other);
        Jet::new(self.poly.add(&other.poly), n)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let n = self.joint_order(other);
        Jet::new(self.poly.sub(&other.poly), n)
    }

    pub fn neg(&self) -> Jet {
        Jet { poly: self.poly.neg(), order: self.order }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.joint_order(other);
        Jet::new(self.poly.mul_bounded(&other.poly, Some(n)), n)
    }

    pub fn scale(&self, c: &Q) -> Jet {
        Jet { poly: self.poly.scale(c), order: self.order }
    }

    pub fn pow(&self, e: u32) -> Jet {
        let mut r = Jet::one(self.vars(), self.order);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Substitute jets for all variables (origin-preserving images expected
    /// where precision matters).
    pub fn substitute(&self, subs: &[Jet]) -> Jet {
        assert_eq!(subs.len(), self.vars().len());
        let mut n = self.order;
        for s in subs {
            n = n.min(s.order);
        }
        let polys: Vec<Poly> = subs.iter().map(|s| s.poly.clone()).collect();
        Jet::new(self.poly.substitute(&polys, Some(n)), n)
    }

    /// True if the jet is a unit (nonzero constant term).
    pub fn is_unit(&self) -> bool {
        !self.poly.constant_term().is_zero()
    }

    /// Multiplicative inverse of a unit jet, via the geometric series:
    /// if `f = c(1 - r)` with `ord r ≥ 1` then `1/f = (1 + r + r² + …)/c`.
    pub fn invert_unit(&self) -> Jet {
        let c = self.poly.constant_term();
        assert!(!c.is_zero(), "invert_unit on a non-unit jet");
        let cinv = Q::one() / c;
        // r = 1 - f/c has order ≥ 1.
        let one = Poly::one(self.vars());
        let r = one.sub(&self.poly.scale(&cinv));
        debug_assert!(r.is_zero() || r.ord().unwrap_or(0) >= 1);
        let mut sum = Poly::one(self.vars());
        let mut pw = Poly::one(self.vars());
        for _ in 0..self.order {
            pw = pw.mul_bounded(&r, Some(self.order));
            if pw.is_zero() {
                break;
            }
            sum = sum.add(&pw);
        }
        Jet::new(sum.scale(&cinv), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::poly::qi;

    fn jet(vars: &Vars, s: &str, n: u32) -> Jet {
        Jet::new(parse_poly(vars, s).unwrap(), n)
    }

    #[test]
    fn construction_truncates() {
        let v = Vars::xyzt();
        let j = jet(&v, "x + x^5", 4);
        assert_eq!(j.poly(), &parse_poly(&v, "x").unwrap());
    }

    #[test]
    fn multiplication_takes_minimum_order() {
        let v = Vars::xyzt();
        let a = jet(&v, "1 + x", 6);
        let b = jet(&v, "1 + y", 3);
        let p = a.mul(&b);
        assert_eq!(p.order(), 3);
        assert_eq!(p.poly(), &parse_poly(&v, "1 + x + y + x*y").unwrap());
    }

    #[test]
    fn unit_inverse_is_exact_to_order() {
        let v = Vars::xyzt();
        let f = jet(&v, "2 + x + 3*y*z - t^2", 7);
        let inv = f.invert_unit();
        let prod = f.mul(&inv);
        assert_eq!(prod.poly(), &Poly::one(&v));
    }

    #[test]
    fn geometric_series_inverse_of_one_minus_x() {
        let v = Vars::xyzt();
        let f = jet(&v, "1 - x", 5);
        let inv = f.invert_unit();
        assert_eq!(
            inv.poly(),
            &parse_poly(&v, "1 + x + x^2 + x^3 + x^4 + x^5").unwrap()
        );
    }

    #[test]
    fn scale_keeps_order() {
        let v = Vars::xyzt();
        let f = jet(&v, "x + y", 9).scale(&qi(3));
        assert_eq!(f.order(), 9);
        assert_eq!(f.poly(), &parse_poly(&v, "3*x + 3*y").unwrap());
    }

    #[test]
    #[should_panic(expected = "non-unit")]
    fn inverting_non_unit_panics() {
        let v = Vars::xyzt();
        jet(&v, "x + y^2", 5).invert_unit();
    }
}
