//! Weierstrass division and preparation for jets.
//!
//! A jet `f` is *pivot-regular of order d* if `f(0,…,pivot,…,0) = c·pivot^d +
//! higher` with `c ≠ 0`. For such `f`, division writes any `g` as
//! `g = q·f + r` with `r` of pivot-degree < d, and preparation factors
//! `f = U·(pivot^d + A_{d-1}·pivot^{d-1} + … + A_0)` with `U` a unit and the
//! `A_i` free of the pivot variable. All identities hold exactly at the
//! stored jet order.
//!
//! [`square_reduce`] and [`cubic_reduce`] combine preparation with the
//! degree-lowering shift (completing the square / depressing the cubic) and
//! return certified unit-and-change data.

use super::change::CoordinateChange;
use super::jet::Jet;
use super::poly::{qi, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("jet is not {pivot}-regular at order {order}: its restriction to the {pivot}-axis vanishes to that order")]
    NotPivotRegular { pivot: String, order: u32 },
    #[error("expected pivot order {expected}, found {found}")]
    WrongPivotOrder { expected: u32, found: u32 },
}

/// Order of `f` restricted to the pivot axis (all other variables set to 0);
/// `None` if the restriction vanishes identically at the jet order.
pub fn pivot_order(f: &Jet, pivot: usize) -> Option<u32> {
    let mut axis = f.poly().clone();
    for i in 0..f.vars().len() {
        if i != pivot {
            axis = axis.set_var(i, &num::Zero::zero());
        }
    }
    axis.var_order(pivot)
}

fn split_by_pivot_degree(h: &Poly, pivot: usize, d: u16) -> (Poly, Poly) {
    // h = pivot^d · high + low, with low of pivot-degree < d.
    let mut high = Poly::zero(h.vars());
    let mut low = Poly::zero(h.vars());
    for (m, c) in h.terms() {
        if m[pivot] >= d {
            let mut mm = m.clone();
            mm[pivot] -= d;
            high = high.add(&Poly::monomial(h.vars(), &mm, c.clone()));
        } else {
            low = low.add(&Poly::monomial(h.vars(), m, c.clone()));
        }
    }
    (high, low)
}

/// Weierstrass division: `g = q·f + r` with `r` of pivot-degree < d, where
/// `d` is the pivot order of `f`. Exact at the joint jet order.
pub fn weierstrass_divide(g: &Jet, f: &Jet, pivot: usize) -> Result<(Jet, Jet), WeierstrassError> {
    let n = g.order().min(f.order());
    let d = pivot_order(f, pivot).ok_or_else(|| WeierstrassError::NotPivotRegular {
        pivot: f.vars().name(pivot).to_string(),
        order: f.order(),
    })? as u16;
    let (u1, b) = split_by_pivot_degree(f.poly(), pivot, d);
    // u1 is a unit: its constant term is the pivot^d coefficient of f on the
    // axis. b has pivot-degree < d and vanishes on the pivot axis.
    let u1_inv = Jet::new(u1, n).invert_unit();
    let mut q = Poly::zero(g.vars());
    let mut r = Poly::zero(g.vars());
    let mut h = g.poly().truncate(n);
    for _ in 0..=(n + 1) {
        if h.is_zero() {
            break;
        }
        let (h1, h0) = split_by_pivot_degree(&h, pivot, d);
        r = r.add(&h0);
        if h1.is_zero() {
            break;
        }
        let h1u = h1.mul_bounded(u1_inv.poly(), Some(n));
        q = q.add(&h1u);
        h = h1u.mul_bounded(&b, Some(n)).neg();
    }
    Ok((Jet::new(q, n), Jet::new(r, n)))
}

/// Weierstrass preparation data: `f = unit · wpoly` with
/// `wpoly = pivot^d + Σ_{i<d} coeffs[i]·pivot^i`, each `coeffs[i]` free of
/// the pivot variable.
#[derive(Debug, Clone)]
pub struct Preparation {
    pub d: u32,
    pub unit: Jet,
    pub coeffs: Vec<Jet>,
}

impl Preparation {
    /// The distinguished polynomial `pivot^d + Σ coeffs[i]·pivot^i`.
    pub fn wpoly(&self, pivot: usize) -> Jet {
        let vars = self.unit.vars();
        let order = self.unit.order();
        let mut p = Jet::var(vars, pivot, order).pow(self.d);
        for (i, a) in self.coeffs.iter().enumerate() {
            let pw = Jet::var(vars, pivot, order).pow(i as u32);
            p = p.add(&a.mul(&pw));
        }
        p
    }
}

/// Weierstrass preparation of a pivot-regular jet.
pub fn prepare(f: &Jet, pivot: usize) -> Result<Preparation, WeierstrassError> {
    let n = f.order();
    let d = pivot_order(f, pivot).ok_or_else(|| WeierstrassError::NotPivotRegular {
        pivot: f.vars().name(pivot).to_string(),
        order: n,
    })?;
    // Divide pivot^d by f: pivot^d = q·f + r, so f = q⁻¹·(pivot^d − r).
    let pd = Jet::var(f.vars(), pivot, n).pow(d);
    let (q, r) = weierstrass_divide(&pd, f, pivot)?;
    let unit = q.invert_unit();
    let mut coeffs = Vec::with_capacity(d as usize);
    let by_pivot = r.poly().coeffs_in_var(pivot);
    for i in 0..d as u16 {
        let c = by_pivot.get(&i).cloned().unwrap_or_else(|| Poly::zero(f.vars()));
        coeffs.push(Jet::new(c.neg(), n));
    }
    Ok(Preparation { d, unit, coeffs })
}

/// Result of preparing a pivot-order-2 jet and completing the square:
/// `unit · (f ∘ change) = pivot² + residual`, with `residual` free of the
/// pivot variable.
#[derive(Debug, Clone)]
pub struct SquareReduction {
    pub change: CoordinateChange,
    pub unit: Jet,
    pub residual: Jet,
}

/// Complete the square on a pivot-order-2 jet.
pub fn square_reduce(f: &Jet, pivot: usize) -> Result<SquareReduction, WeierstrassError> {
    let prep = prepare(f, pivot)?;
    if prep.d != 2 {
        return Err(WeierstrassError::WrongPivotOrder { expected: 2, found: prep.d });
    }
    let n = f.order();
    let a1 = &prep.coeffs[1];
    let a0 = &prep.coeffs[0];
    // pivot -> pivot - A₁/2 turns pivot² + A₁·pivot + A₀ into
    // pivot² + (A₀ - A₁²/4).
    let shift = a1.poly().scale(&qi(-2).recip());
    let change = CoordinateChange::shift(f.vars(), pivot, &shift, n)
        .expect("A₁ has no constant term, so the shift is a valid change");
    let residual = a0.sub(&a1.mul(a1).scale(&qi(4).recip()));
    // f∘change = (U∘change)·(pivot² + residual); report the inverse unit so
    // unit·(f∘change) is the normal form.
    let unit = Jet::new(change.apply(prep.unit.poly()), n).invert_unit();
    Ok(SquareReduction { change, unit, residual })
}

/// Result of preparing a pivot-order-3 jet and depressing the cubic:
/// `unit · (f ∘ change) = pivot³ + a1·pivot + a0`.
#[derive(Debug, Clone)]
pub struct CubicReduction {
    pub change: CoordinateChange,
    pub unit: Jet,
    pub a1: Jet,
    pub a0: Jet,
}

/// Depress a pivot-order-3 jet (Tschirnhaus shift kills the square term).
pub fn cubic_reduce(f: &Jet, pivot: usize) -> Result<CubicReduction, WeierstrassError> {
    let prep = prepare(f, pivot)?;
    if prep.d != 3 {
        return Err(WeierstrassError::WrongPivotOrder { expected: 3, found: prep.d });
    }
    let n = f.order();
    let a2 = &prep.coeffs[2];
    let a1 = &prep.coeffs[1];
    let a0 = &prep.coeffs[0];
    let shift = a2.poly().scale(&qi(-3).recip());
    let change = CoordinateChange::shift(f.vars(), pivot, &shift, n)
        .expect("A₂ has no constant term, so the shift is a valid change");
    // (v - a/3)³ + A₂(v - a/3)² + A₁(v - a/3) + A₀ with a = A₂ gives
    // v³ + (A₁ - A₂²/3)v + (A₀ - A₁A₂/3 + 2A₂³/27).
    let a2sq = a2.mul(a2);
    let new_a1 = a1.sub(&a2sq.scale(&qi(3).recip()));
    let new_a0 = a0
        .sub(&a1.mul(a2).scale(&qi(3).recip()))
        .add(&a2sq.mul(a2).scale(&(qi(2) / qi(27))));
    let unit = Jet::new(change.apply(prep.unit.poly()), n).invert_unit();
    Ok(CubicReduction { change, unit, a1: new_a1, a0: new_a0 })
}
