//! Formal coordinate changes at the origin.
//!
//! A [`CoordinateChange`] maps each variable to a power-series image with
//! zero constant term and invertible linear part, truncated at a common jet
//! order. Changes act on polynomials by substitution:
//! `apply(p, c) = p(c.subs)`. Composition satisfies
//! `apply(p, compose(c, d)) = apply(apply(p, c), d)`, and every change has an
//! inverse to the stored order, computed by Newton iteration from the
//! inverted linear part.

use super::poly::{Mono, Poly, Q, Vars};
use num::{One, Zero};
use std::fmt;

/// Errors from constructing or inverting coordinate changes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChangeError {
    #[error("substitution image for {var} has a constant term; changes must fix the origin")]
    NotOriginPreserving { var: String },
    #[error("linear part of the coordinate change is not invertible")]
    SingularLinearPart,
}

/// An origin-preserving formal coordinate change with invertible linear part.
#[derive(Clone, PartialEq, Eq)]
pub struct CoordinateChange {
    vars: Vars,
    subs: Vec<Poly>,
    order: u32,
}

impl fmt::Debug for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordinateChange[order {}](", self.order)?;
        for (i, s) in self.subs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.vars.name(i), s)?;
        }
        write!(f, ")")
    }
}

/// Exact Gaussian elimination; returns the inverse matrix if it exists.
pub fn invert_matrix(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &t;
                let t = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

impl CoordinateChange {
    /// Build a change from substitution images; validates the invariants.
    pub fn new(vars: &Vars, subs: Vec<Poly>, order: u32) -> Result<Self, ChangeError> {
        assert_eq!(subs.len(), vars.len());
        for (i, s) in subs.iter().enumerate() {
            assert_eq!(s.vars(), vars, "substitution image over wrong variables");
            if !s.constant_term().is_zero() {
                return Err(ChangeError::NotOriginPreserving { var: vars.name(i).to_string() });
            }
        }
        let c = CoordinateChange { vars: vars.clone(), subs: subs.into_iter().map(|s| s.truncate(order)).collect(), order };
        if invert_matrix(&c.linear_matrix()).is_none() {
            return Err(ChangeError::SingularLinearPart);
        }
        Ok(c)
    }

    pub fn identity(vars: &Vars, order: u32) -> Self {
        let subs = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
        CoordinateChange { vars: vars.clone(), subs, order }
    }

    /// Linear change with matrix `m`: variable `i` maps to `Σ_j m[i][j]·x_j`.
    pub fn linear(vars: &Vars, m: &[Vec<Q>], order: u32) -> Result<Self, ChangeError> {
        let n = vars.len();
        assert_eq!(m.len(), n);
        let mut subs = Vec::with_capacity(n);
        for row in m {
            assert_eq!(row.len(), n);
            let mut s = Poly::zero(vars);
            for (j, c) in row.iter().enumerate() {
                s = s.add(&Poly::var(vars, j).scale(c));
            }
            subs.push(s);
        }
        CoordinateChange::new(vars, subs, order)
    }

    /// The change sending `var` to `var + shift` and fixing the others.
    /// `shift` must vanish at the origin and not involve `var` linearly in a
    /// way that degenerates the linear part (validated).
    pub fn shift(vars: &Vars, var: usize, shift: &Poly, order: u32) -> Result<Self, ChangeError> {
        let mut subs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
        subs[var] = subs[var].add(shift);
        CoordinateChange::new(vars, subs, order)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn subs(&self) -> &[Poly] {
        &self.subs
    }

    /// Matrix of the linear part: entry `[i][j]` is the coefficient of
    /// variable `j` in the image of variable `i`.
    pub fn linear_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.vars.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut m: Mono = vec![0; n];
                        m[j] = 1;
                        self.subs[i].coeff(&m)
                    })
                    .collect()
            })
            .collect()
    }

    /// Apply to a polynomial: substitute the images, truncating at the
    /// change's order.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.vars(), &self.vars);
        p.substitute(&self.subs, Some(self.order))
    }

    /// Apply without truncation (for exact polynomial identities).
    pub fn apply_exact(&self, p: &Poly) -> Poly {
        assert_eq!(p.vars(), &self.vars);
        p.substitute(&self.subs, None)
    }

    /// Composition: `apply(p, compose(c, d)) = apply(apply(p, c), d)`.
    pub fn compose(&self, after: &CoordinateChange) -> CoordinateChange {
        assert_eq!(self.vars, after.vars);
        let order = self.order.min(after.order);
        let subs = self.subs.iter().map(|s| after.apply(s).truncate(order)).collect();
        CoordinateChange { vars: self.vars.clone(), subs, order }
    }

    /// Inverse change to the stored order, by Newton iteration seeded with
    /// the inverted linear part.
    pub fn inverse(&self) -> CoordinateChange {
        let lin = self.linear_matrix();
        let lin_inv = invert_matrix(&lin).expect("validated at construction");
        let n = self.vars.len();
        // Seed: the inverse linear change.
        let mut g: Vec<Poly> = (0..n)
            .map(|i| {
                let mut s = Poly::zero(&self.vars);
                for (j, c) in lin_inv[i].iter().enumerate() {
                    s = s.add(&Poly::var(&self.vars, j).scale(c));
                }
                s
            })
            .collect();
        // Iterate g <- g - L⁻¹(f∘g - id); each pass gains one order.
        for _ in 0..self.order {
            let fg: Vec<Poly> = self
                .subs
                .iter()
                .map(|s| s.substitute(&g, Some(self.order)))
                .collect();
            let mut err: Vec<Poly> = Vec::with_capacity(n);
            let mut all_zero = true;
            for (i, f) in fg.iter().enumerate() {
                let e = f.sub(&Poly::var(&self.vars, i));
                if !e.is_zero() {
                    all_zero = false;
                }
                err.push(e);
            }
            if all_zero {
                break;
            }
            for i in 0..n {
                let mut corr = Poly::zero(&self.vars);
                for (j, c) in lin_inv[i].iter().enumerate() {
                    corr = corr.add(&err[j].scale(c));
                }
                g[i] = g[i].sub(&corr).truncate(self.order);
            }
        }
        CoordinateChange { vars: self.vars.clone(), subs: g, order: self.order }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::poly::qi;

    fn p(vars: &Vars, s: &str) -> Poly {
        parse_poly(vars, s).unwrap()
    }

    #[test]
    fn apply_substitutes_images() {
        let v = Vars::xyzt();
        let c = CoordinateChange::shift(&v, 0, &p(&v, "-1/2*y^2"), 8).unwrap();
        let f = p(&v, "x^2 + x*y^2");
        // x -> x - y²/2: x² + xy² -> x² - y⁴/4.
        assert_eq!(c.apply(&f), p(&v, "x^2 - 1/4*y^4"));
    }

    #[test]
    fn compose_matches_sequential_application() {
        let v = Vars::xyzt();
        let c = CoordinateChange::shift(&v, 0, &p(&v, "y^2"), 8).unwrap();
        let d = CoordinateChange::shift(&v, 1, &p(&v, "z*t"), 8).unwrap();
        let f = p(&v, "x^2 + y^3 - z*t");
        let seq = d.apply(&c.apply(&f));
        let comp = c.compose(&d).apply(&f);
        assert_eq!(seq, comp);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let v = Vars::xyzt();
        let mut subs: Vec<Poly> = (0..4).map(|i| Poly::var(&v, i)).collect();
        subs[0] = p(&v, "x + y^2 - z*t + t^3");
        subs[1] = p(&v, "y + x*z");
        subs[2] = p(&v, "z - x^2 + y*t^2");
        let c = CoordinateChange::new(&v, subs, 9).unwrap();
        let cinv = c.inverse();
        let f = p(&v, "x^2 + y^2*z - z^4 + x*y*t");
        let back = cinv.apply(&c.apply(&f)).truncate(9);
        assert_eq!(back, f.truncate(9));
    }

    #[test]
    fn linear_change_by_matrix() {
        let v = Vars::uvw();
        // u -> u+v, v -> u-v, w -> w.
        let m = vec![
            vec![qi(1), qi(1), qi(0)],
            vec![qi(1), qi(-1), qi(0)],
            vec![qi(0), qi(0), qi(1)],
        ];
        let c = CoordinateChange::linear(&v, &m, 6).unwrap();
        assert_eq!(c.apply(&p(&v, "u*v")), p(&v, "u^2 - v^2"));
    }

    #[test]
    fn rejects_non_origin_preserving_and_singular() {
        let v = Vars::uvw();
        let mut subs: Vec<Poly> = (0..3).map(|i| Poly::var(&v, i)).collect();
        subs[0] = p(&v, "u + 1");
        assert!(matches!(
            CoordinateChange::new(&v, subs, 5),
            Err(ChangeError::NotOriginPreserving { .. })
        ));
        let mut subs: Vec<Poly> = (0..3).map(|i| Poly::var(&v, i)).collect();
        subs[0] = p(&v, "v");
        subs[1] = p(&v, "v + u^2");
        assert!(matches!(
            CoordinateChange::new(&v, subs, 5),
            Err(ChangeError::SingularLinearPart)
        ));
    }

    #[test]
    fn matrix_inversion_small_cases() {
        let m = vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]];
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(inv, m);
        let sing = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert!(invert_matrix(&sing).is_none());
    }
}
