//! Du Val (ADE) classification of surface germs, exact over ℚ.
//!
//! Input: a three-variable jet vanishing at the origin. The pipeline is the
//! classical recognition algorithm: read the rank of the quadratic part,
//! split off squares by Weierstrass preparation, and analyze the residual —
//! a pure power series for the A chain, a binary cubic root pattern followed
//! by an order-by-order reduction toward `v²w + w^{n-1}` for the D chain,
//! and a depressed-cubic Newton polygon for E₆/E₇/E₈.
//!
//! Every verdict is exact for the given jet order: when the jet genuinely
//! does not determine the type (e.g. `u² + v²` at any finite order), the
//! result is [`DuValType::Undetermined`], never a guess. Germs whose
//! singularity is outside the ADE list (multiplicity ≥ 3, corank-2 residual
//! of order ≥ 4, or beyond E₈) return [`DuValType::NotDuVal`].

use crate::algebra::change::CoordinateChange;
use crate::algebra::groebner::{groebner, staircase_dimension, GbBudget, GbError};
use crate::algebra::jet::Jet;
use crate::algebra::poly::{qi, univariate_gcd, MonomialOrder, Poly, Q, Vars};
use crate::algebra::weierstrass::{cubic_reduce, square_reduce};
use num::{One, Zero};
use std::fmt;

/// The classification outcome for a surface germ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DuValType {
    /// The germ is smooth (nonzero linear part).
    Smooth,
    /// `A_n`, `n ≥ 1`: `u² + v² + w^{n+1}`.
    A(u32),
    /// `D_n`, `n ≥ 4`: `u² + v²w + w^{n-1}`.
    D(u32),
    /// `E_6`, `E_7` or `E_8`.
    E(u32),
    /// Certified outside the Du Val list (at the given jet order).
    NotDuVal,
    /// The jet order does not determine the type; retry with a higher order.
    Undetermined { order: u32 },
}

impl DuValType {
    /// Number of exceptional curves in the minimal resolution.
    pub fn rank(&self) -> Option<u32> {
        match *self {
            DuValType::A(n) | DuValType::D(n) | DuValType::E(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuValType::Smooth => write!(f, "smooth"),
            DuValType::A(n) => write!(f, "A{n}"),
            DuValType::D(n) => write!(f, "D{n}"),
            DuValType::E(n) => write!(f, "E{n}"),
            DuValType::NotDuVal => write!(f, "not Du Val"),
            DuValType::Undetermined { order } => write!(f, "undetermined at jet order {order}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DuValError {
    #[error("expected a germ vanishing at the origin")]
    NotAGerm,
    #[error("expected a 3-variable germ, found {found} variables")]
    WrongVariableCount { found: usize },
}

/// Symmetric Gram matrix of the quadratic part.
fn gram_matrix(q2: &Poly) -> Vec<Vec<Q>> {
    let n = q2.vars().len();
    let mut g = vec![vec![Q::zero(); n]; n];
    for (m, c) in q2.terms() {
        let support: Vec<usize> = (0..n).filter(|&i| m[i] > 0).collect();
        match support.len() {
            1 => {
                let i = support[0];
                g[i][i] = c.clone();
            }
            2 => {
                let (i, j) = (support[0], support[1]);
                let half = c / qi(2);
                g[i][j] = half.clone();
                g[j][i] = half;
            }
            _ => unreachable!("quadratic part has terms of degree 2"),
        }
    }
    g
}

/// Congruence diagonalization over ℚ: returns `(p, diag)` with
/// `pᵀ·G·p = diag(diag)` and nonzero diagonal entries first. Substituting
/// `x = p·y` diagonalizes the quadratic form.
fn diagonalize_symmetric(g: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g.to_vec();
    let mut p: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    // Column operation on p mirrors the basis change; a gets the congruent
    // row-and-column operation.
    let col_add = |m: &mut Vec<Vec<Q>>, dst: usize, src: usize, lam: &Q| {
        for row in m.iter_mut() {
            let t = &row[src] * lam;
            row[dst] = &row[dst] + &t;
        }
    };
    let col_swap = |m: &mut Vec<Vec<Q>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !a[l][l].is_zero()) {
                col_swap(&mut a, k, l);
                a.swap(k, l);
                col_swap(&mut p, k, l);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // a[i][j] ≠ 0 with zero diagonal: add column j to column i
                // to create a diagonal entry 2·a[i][j].
                let one = Q::one();
                col_add(&mut a, i, j, &one);
                let row_j = a[j].clone();
                for (idx, v) in row_j.iter().enumerate() {
                    a[i][idx] = &a[i][idx] + v;
                }
                col_add(&mut p, i, j, &one);
                if i != k {
                    col_swap(&mut a, k, i);
                    a.swap(k, i);
                    col_swap(&mut p, k, i);
                }
            } else {
                break;
            }
        }
        let pivot = a[k][k].clone();
        for j in k + 1..n {
            if a[k][j].is_zero() {
                continue;
            }
            let lam = -(&a[k][j] / &pivot);
            col_add(&mut a, j, k, &lam);
            let row_k = a[k].clone();
            for (idx, v) in row_k.iter().enumerate() {
                let t = v * &lam;
                a[j][idx] = &a[j][idx] + &t;
            }
            col_add(&mut p, j, k, &lam);
        }
    }
    // Stable-move nonzero diagonal entries to the front.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| a[i][i].is_zero());
    let diag: Vec<Q> = order.iter().map(|&i| a[i][i].clone()).collect();
    let p_perm: Vec<Vec<Q>> = (0..n)
        .map(|r| order.iter().map(|&c| p[r][c].clone()).collect())
        .collect();
    (p_perm, diag)
}

/// Root multiplicity pattern of a nonzero binary cubic in the variables
/// `(v, w)`, over ℂ. Computed via the rational gcd of the dehomogenization
/// and its derivative; repeated roots of a rational cubic are rational, so
/// the repeated line has exact rational coefficients `(a, b)` for `a·v+b·w`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum CubicPattern {
    ThreeDistinct,
    DoubleSimple { double: (Q, Q) },
    Triple { line: (Q, Q) },
}

fn cubic_pattern(h3: &Poly, v: usize, w: usize) -> CubicPattern {
    let nvars = h3.vars().len();
    let coeff = |ev: u16, ew: u16| -> Q {
        let mut m = vec![0u16; nvars];
        m[v] = ev;
        m[w] = ew;
        h3.coeff(&m)
    };
    // h₃ = a₃v³ + a₂v²w + a₁vw² + a₀w³; p(s) = h₃(s, 1).
    let p = [coeff(0, 3), coeff(1, 2), coeff(2, 1), coeff(3, 0)];
    let deg_p = (0..4).rev().find(|&i| !p[i].is_zero());
    let deg_p = match deg_p {
        Some(d) => d,
        None => unreachable!("cubic_pattern requires a nonzero cubic"),
    };
    let m_inf = 3 - deg_p; // multiplicity of the root at infinity, i.e. the line {w = 0}
    if deg_p == 0 {
        // h₃ = c·w³.
        return CubicPattern::Triple { line: (Q::zero(), Q::one()) };
    }
    let pc: Vec<Q> = p[..=deg_p].to_vec();
    let dpc: Vec<Q> = (1..=deg_p).map(|i| &pc[i] * qi(i as i64)).collect();
    let g = univariate_gcd(&pc, &dpc);
    let deg_g = g.len().saturating_sub(1);
    match (deg_g, m_inf) {
        (0, 0) | (0, 1) => CubicPattern::ThreeDistinct,
        (0, 2) => CubicPattern::DoubleSimple { double: (Q::zero(), Q::one()) },
        (1, _) => {
            // Monic linear gcd s + g[0]: double root ρ = -g[0], line v - ρw.
            let rho = -g[0].clone();
            CubicPattern::DoubleSimple { double: (Q::one(), -rho) }
        }
        (2, _) => {
            // Monic (s - ρ)²: ρ = -g[1]/2.
            let rho = -(&g[1] / qi(2));
            CubicPattern::Triple { line: (Q::one(), -rho) }
        }
        _ => unreachable!("gcd of a cubic and its derivative has degree ≤ 2"),
    }
}

/// Linear change fixing `u` and mapping the lines `ℓ, m` (in `(v, w)`) to
/// the coordinate lines `v, w`.
fn align_lines(
    vars: &Vars,
    v: usize,
    w: usize,
    ell: &(Q, Q),
    m: &(Q, Q),
    order: u32,
) -> CoordinateChange {
    let det = &ell.0 * &m.1 - &ell.1 * &m.0;
    assert!(!det.is_zero(), "lines must be independent");
    // S = M⁻¹ for M = [[ℓ₀, ℓ₁], [m₀, m₁]]; substitution v -> S₀₀v + S₀₁w, …
    let s00 = &m.1 / &det;
    let s01 = -(&ell.1 / &det);
    let s10 = -(&m.0 / &det);
    let s11 = &ell.0 / &det;
    let mut subs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
    subs[v] = Poly::var(vars, v).scale(&s00).add(&Poly::var(vars, w).scale(&s01));
    subs[w] = Poly::var(vars, v).scale(&s10).add(&Poly::var(vars, w).scale(&s11));
    CoordinateChange::new(vars, subs, order).expect("invertible by construction")
}

/// Classify a three-variable germ.
pub fn classify_duval(f: &Jet) -> Result<DuValType, DuValError> {
    let vars = f.vars().clone();
    if vars.len() != 3 {
        return Err(DuValError::WrongVariableCount { found: vars.len() });
    }
    if !f.poly().constant_term().is_zero() {
        return Err(DuValError::NotAGerm);
    }
    let n = f.order();
    if f.is_zero() {
        return Ok(DuValType::Undetermined { order: n });
    }
    let ord = f.poly().ord().unwrap();
    if ord == 1 {
        return Ok(DuValType::Smooth);
    }
    if ord >= 3 {
        // Multiplicity ≥ 3 is outside the Du Val list.
        return Ok(DuValType::NotDuVal);
    }

    // Diagonalize the quadratic part and move the squares up front.
    let q2 = f.poly().homogeneous_part(2);
    let (p, diag) = diagonalize_symmetric(&gram_matrix(&q2));
    let rank = diag.iter().filter(|c| !c.is_zero()).count();
    let change = CoordinateChange::linear(&vars, &p, n).expect("congruence matrix is invertible");
    let g = Jet::new(change.apply(f.poly()), n);

    match rank {
        3 => Ok(DuValType::A(1)),
        2 => classify_rank2(&g, n),
        1 => classify_rank1(&g, n),
        _ => unreachable!("order-2 germ has quadratic rank ≥ 1"),
    }
}

/// Rank-2 quadratic part `c₁u² + c₂v²`: the A chain. Split off both squares
/// and read the order of the pure-`w` residual.
fn classify_rank2(g: &Jet, n: u32) -> Result<DuValType, DuValError> {
    let red_u = square_reduce(g, 0).expect("pivot u has order 2 after diagonalization");
    let b = red_u.residual;
    debug_assert_eq!(b.poly().degree_in(0), 0);
    let red_v = square_reduce(&b, 1).expect("residual keeps the rank-1 v² part");
    let h = red_v.residual;
    debug_assert_eq!(h.poly().degree_in(1), 0);
    if h.is_zero() {
        return Ok(DuValType::Undetermined { order: n });
    }
    let k = h.poly().ord().unwrap();
    debug_assert!(k >= 3, "rank would be 3 otherwise");
    Ok(DuValType::A(k - 1))
}

/// Rank-1 quadratic part `c·u²`: D and E chains via the cubic pattern of the
/// residual.
fn classify_rank1(g: &Jet, n: u32) -> Result<DuValType, DuValError> {
    let vars = g.vars().clone();
    let red = square_reduce(g, 0).expect("pivot u has order 2 after diagonalization");
    let h = red.residual;
    debug_assert_eq!(h.poly().degree_in(0), 0);
    if h.is_zero() {
        return Ok(DuValType::Undetermined { order: n });
    }
    debug_assert!(h.poly().ord().unwrap() >= 3, "quadratic rank is exactly 1");
    let h3 = h.poly().homogeneous_part(3);
    if h3.is_zero() {
        // Corank 2 with residual of order ≥ 4: beyond the D/E chains.
        return Ok(DuValType::NotDuVal);
    }
    match cubic_pattern(&h3, 1, 2) {
        CubicPattern::ThreeDistinct => Ok(DuValType::D(4)),
        CubicPattern::DoubleSimple { double } => {
            let m = h3
                .try_div_exact(&line_poly(&vars, 1, 2, &double))
                .and_then(|q| q.try_div_exact(&line_poly(&vars, 1, 2, &double)))
                .expect("the double line divides the cubic twice");
            let mc = (line_coeff(&m, 1), line_coeff(&m, 2));
            let align = align_lines(&vars, 1, 2, &double, &mc, n);
            let aligned = Jet::new(align.apply(h.poly()), n);
            classify_d_chain(&aligned, n)
        }
        CubicPattern::Triple { line } => {
            let mc = if !line.0.is_zero() { (Q::zero(), Q::one()) } else { (Q::one(), Q::zero()) };
            let align = align_lines(&vars, 1, 2, &line, &mc, n);
            let aligned = Jet::new(align.apply(h.poly()), n);
            classify_e_chain(&aligned, n)
        }
    }
}

fn line_poly(vars: &Vars, v: usize, w: usize, l: &(Q, Q)) -> Poly {
    Poly::var(vars, v).scale(&l.0).add(&Poly::var(vars, w).scale(&l.1))
}

fn line_coeff(m: &Poly, var: usize) -> Q {
    let nvars = m.vars().len();
    let mut mono = vec![0u16; nvars];
    mono[var] = 1;
    m.coeff(&mono)
}

/// Residual `v²w + (order ≥ 4)`: absorb, order by order, everything except a
/// pure power of `w`; the first surviving `w^k` gives `D_{k+1}`.
fn classify_d_chain(h: &Jet, n: u32) -> Result<DuValType, DuValError> {
    let vars = h.vars().clone();
    let v2w = Poly::var(&vars, 1).pow(2).mul(&Poly::var(&vars, 2));
    debug_assert_eq!(h.poly().homogeneous_part(3), v2w, "cubic part must be aligned to v²w");
    let mut cur = h.clone();
    for k in 4..=n {
        let rest = cur.poly().sub(&v2w);
        debug_assert!(rest.is_zero() || rest.ord().unwrap() >= k);
        let hk = rest.homogeneous_part(k);
        if hk.is_zero() {
            continue;
        }
        let mut alpha = Q::zero();
        let mut beta = Q::zero();
        let mut gamma = Poly::zero(&vars);
        for (m, c) in hk.terms() {
            if m[1] == 0 {
                debug_assert_eq!(m[2] as u32, k);
                alpha = c.clone();
            } else if m[1] == 1 {
                beta = c.clone();
            } else {
                let mut mm = m.clone();
                mm[1] -= 2;
                gamma = gamma.add(&Poly::monomial(&vars, &mm, c.clone()));
            }
        }
        if !alpha.is_zero() {
            return Ok(DuValType::D(k + 1));
        }
        // Kill v²·γ via w -> w - γ, then β·v·w^{k-1} via v -> v - (β/2)w^{k-2}.
        if !gamma.is_zero() {
            let ch = CoordinateChange::shift(&vars, 2, &gamma.neg(), n)
                .expect("γ has order ≥ 2, a valid shift");
            cur = Jet::new(ch.apply(cur.poly()), n);
        }
        if !beta.is_zero() {
            let shift = Poly::var(&vars, 2)
                .pow(k - 2)
                .scale(&(-&beta / qi(2)));
            let ch = CoordinateChange::shift(&vars, 1, &shift, n)
                .expect("w^{k-2} with k ≥ 4 is a valid shift");
            cur = Jet::new(ch.apply(cur.poly()), n);
        }
    }
    Ok(DuValType::Undetermined { order: n })
}

/// Residual `c·v³ + (order ≥ 4)`: depress the cubic in `v` and read the
/// Newton data `(ord ã₀, ord ã₁)` of `v³ + ã₁(w)·v + ã₀(w)`.
fn classify_e_chain(h: &Jet, n: u32) -> Result<DuValType, DuValError> {
    let red = cubic_reduce(h, 1).expect("pivot v has order 3 after alignment");
    debug_assert_eq!(red.a0.poly().degree_in(1), 0);
    debug_assert_eq!(red.a1.poly().degree_in(1), 0);
    let nu0 = red.a0.poly().ord();
    let nu1 = red.a1.poly().ord();
    debug_assert!(nu0.is_none_or(|v| v >= 4));
    debug_assert!(nu1.is_none_or(|v| v >= 3));
    // A zero coefficient jet of order m only certifies "true order > m".
    let nu0_at_least = |threshold: u32| match nu0 {
        Some(v) => v >= threshold,
        None => red.a0.order() + 1 >= threshold,
    };
    let nu1_at_least = |threshold: u32| match nu1 {
        Some(v) => v >= threshold,
        None => red.a1.order() + 1 >= threshold,
    };
    if nu0 == Some(4) {
        return Ok(DuValType::E(6));
    }
    if nu1 == Some(3) {
        // E₇ only once ν₀ = 4 (which would mean E₆) is excluded.
        return if nu0_at_least(5) {
            Ok(DuValType::E(7))
        } else {
            Ok(DuValType::Undetermined { order: n })
        };
    }
    if nu0 == Some(5) {
        // E₈ only once ν₁ = 3 (which would mean E₇) is excluded.
        return if nu1_at_least(4) {
            Ok(DuValType::E(8))
        } else {
            Ok(DuValType::Undetermined { order: n })
        };
    }
    // Beyond E₈ requires confirming ord ã₁ ≥ 4 and ord ã₀ ≥ 6.
    if nu1_at_least(4) && nu0_at_least(6) {
        return Ok(DuValType::NotDuVal);
    }
    Ok(DuValType::Undetermined { order: n })
}

/// Dimension over ℚ of `ℚ[vars]/(∂f/∂x_i)` — the global Milnor number. For
/// a polynomial whose only critical point is the origin this equals the
/// local Milnor number (`n` for `A_n`/`D_n`/`E_n`). `None` if the critical
/// locus is not finite.
pub fn jacobian_quotient_dimension(
    f: &Poly,
    budget: &mut GbBudget,
) -> Result<Option<u64>, GbError> {
    let vars = f.vars().clone();
    let partials: Vec<Poly> = (0..vars.len()).map(|i| f.derivative(i)).collect();
    if partials.iter().all(|p| p.is_zero()) {
        return Ok(None);
    }
    let gb = groebner(&partials, MonomialOrder::GrevLex, budget)?;
    match staircase_dimension(&gb, &vars, MonomialOrder::GrevLex) {
        None => return Ok(Some(0)),
        Some(0) => {}
        Some(_) => return Ok(None),
    }
    // Count standard monomials inside the box given by the pure-power
    // leading terms (they exist in every variable for a 0-dimensional ideal).
    let lead: Vec<Vec<u16>> = gb
        .iter()
        .map(|g| g.leading_term(MonomialOrder::GrevLex).unwrap().0.clone())
        .collect();
    let nv = vars.len();
    let mut bound = vec![0u16; nv];
    for (i, b) in bound.iter_mut().enumerate() {
        let pure = lead
            .iter()
            .filter(|m| (0..nv).all(|j| j == i || m[j] == 0))
            .map(|m| m[i])
            .min();
        match pure {
            Some(d) => *b = d,
            None => return Ok(None),
        }
    }
    let mut count: u64 = 0;
    let mut stack = vec![vec![0u16; 0]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == nv {
            let standard = lead
                .iter()
                .all(|m| !(0..nv).all(|j| m[j] <= prefix[j]));
            if standard {
                count += 1;
            }
            continue;
        }
        let i = prefix.len();
        for e in 0..bound[i] {
            let mut next = prefix.clone();
            next.push(e);
            stack.push(next);
        }
    }
    Ok(Some(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    const N: u32 = 12;

    fn classify(s: &str) -> DuValType {
        let v = Vars::uvw();
        let f = Jet::new(parse_poly(&v, s).unwrap(), N);
        classify_duval(&f).unwrap()
    }

    #[test]
    fn smooth_and_too_singular() {
        assert_eq!(classify("u + v^2"), DuValType::Smooth);
        assert_eq!(classify("u^3 + v^3 + w^3"), DuValType::NotDuVal);
    }

    #[test]
    fn a_chain_normal_forms() {
        assert_eq!(classify("u^2 + v^2 + w^2"), DuValType::A(1));
        assert_eq!(classify("u^2 + v^2 + w^3"), DuValType::A(2));
        for n in 2..=10u32 {
            let s = format!("w^{} - u*v", n + 1);
            assert_eq!(classify(&s), DuValType::A(n), "A_{n}");
        }
    }

    #[test]
    fn d_chain_normal_forms() {
        for n in 4..=12u32 {
            let s = format!("u^2 + v^2*w - w^{}", n - 1);
            assert_eq!(classify(&s), DuValType::D(n), "D_{n}");
        }
    }

    #[test]
    fn d_chain_alternate_presentations() {
        // Even: u² + v²w + 2vw^m is D_{2m}; odd: u² + v²w + 2uw^m is D_{2m+1}.
        for m in 2..=5u32 {
            let even = format!("u^2 + v^2*w + 2*v*w^{m}");
            assert_eq!(classify(&even), DuValType::D(2 * m), "D_{}", 2 * m);
            let odd = format!("u^2 + v^2*w + 2*u*w^{m}");
            assert_eq!(classify(&odd), DuValType::D(2 * m + 1), "D_{}", 2 * m + 1);
        }
    }

    #[test]
    fn e_chain_normal_forms() {
        assert_eq!(classify("u^2 + v^3 - w^4"), DuValType::E(6));
        assert_eq!(classify("u^2 + v^3 + v*w^3"), DuValType::E(7));
        assert_eq!(classify("u^2 + v^3 + w^5"), DuValType::E(8));
    }

    #[test]
    fn e6_dominates_e7_term() {
        // v³ + w⁴ + vw³ has local Milnor number 6 at the origin: the w⁴ term
        // wins over vw³. Its critical locus also contains a Morse point at
        // (64/9, -16/3), so the global Jacobian quotient has dimension 7.
        assert_eq!(classify("u^2 + v^3 + w^4 + v*w^3"), DuValType::E(6));
        let v2 = Vars::new(vec!["v", "w"]);
        let f = parse_poly(&v2, "v^3 + w^4 + v*w^3").unwrap();
        let mut b = GbBudget::standard();
        assert_eq!(jacobian_quotient_dimension(&f, &mut b).unwrap(), Some(7));
        // Saturating the Jacobian ideal by w + 16/3 removes the far critical
        // point and leaves the local algebra at the origin, of dimension 6.
        let partials = vec![f.derivative(0), f.derivative(1)];
        let far = parse_poly(&v2, "w + 16/3").unwrap();
        let local = crate::algebra::ideal::saturate(&partials, &far, &mut b).unwrap();
        let local_dim = {
            let gb = groebner(&local, MonomialOrder::GrevLex, &mut b).unwrap();
            let lead: Vec<Vec<u16>> = gb
                .iter()
                .map(|g| g.leading_term(MonomialOrder::GrevLex).unwrap().0.clone())
                .collect();
            let bv = lead.iter().filter(|m| m[1] == 0).map(|m| m[0]).min().unwrap();
            let bw = lead.iter().filter(|m| m[0] == 0).map(|m| m[1]).min().unwrap();
            (0..bv)
                .flat_map(|a| (0..bw).map(move |b| (a, b)))
                .filter(|&(a, b)| lead.iter().all(|m| !(m[0] <= a && m[1] <= b)))
                .count()
        };
        assert_eq!(local_dim, 6);
    }

    #[test]
    fn beyond_the_list_is_not_du_val() {
        // Corank 2 with quartic residual.
        assert_eq!(classify("u^2 + v^4 + w^4"), DuValType::NotDuVal);
        // Beyond E₈ on the Newton polygon.
        assert_eq!(classify("u^2 + v^3 + w^6"), DuValType::NotDuVal);
        assert_eq!(classify("u^2 + v^3 + w^7"), DuValType::NotDuVal);
        // Non-isolated: u² + v³ (certified beyond at order 12).
        assert_eq!(classify("u^2 + v^3"), DuValType::NotDuVal);
    }

    #[test]
    fn undetermined_cases_say_so() {
        assert_eq!(classify("u^2 + v^2"), DuValType::Undetermined { order: N });
        assert_eq!(classify("u^2 + v^2*w"), DuValType::Undetermined { order: N });
        assert_eq!(classify("u^2"), DuValType::Undetermined { order: N });
    }

    #[test]
    fn invariance_under_units_and_linear_changes() {
        let v = Vars::uvw();
        let f = parse_poly(&v, "u^2 + v^2*w - w^5").unwrap(); // D₆
        let unit = parse_poly(&v, "1 + u - 2*v*w + w^3").unwrap();
        let uf = Jet::new(f.mul_bounded(&unit, Some(N)), N);
        assert_eq!(classify_duval(&uf).unwrap(), DuValType::D(6));
        // A shearing linear change plus a nonlinear one.
        let subs = vec![
            parse_poly(&v, "u + v - w").unwrap(),
            parse_poly(&v, "v + 2*w + u^2").unwrap(),
            parse_poly(&v, "w + v^2 - u*w").unwrap(),
        ];
        let ch = CoordinateChange::new(&v, subs, N).unwrap();
        let g = Jet::new(ch.apply(&f), N);
        assert_eq!(classify_duval(&g).unwrap(), DuValType::D(6));
    }

    #[test]
    fn rotated_and_scaled_inputs() {
        // A₃ hidden in non-diagonal coordinates: (u+v)(u-v) + w⁴.
        assert_eq!(classify("u^2 - v^2 + w^4"), DuValType::A(3));
        assert_eq!(classify("u*v + w^4"), DuValType::A(3));
        assert_eq!(classify("3*u^2 + 5*v*w + 7*u*v"), DuValType::A(1));
        // D₅ with the double line in skew position.
        assert_eq!(classify("u^2 + (v + w)^2*(v - w) + w^4"), DuValType::D(5));
    }

    #[test]
    fn milnor_numbers_match_types_on_normal_forms() {
        let v2 = Vars::new(vec!["v", "w"]);
        let mut b = GbBudget::standard();
        let cases = [
            ("v^2 + w^3", 2u64),      // A₂
            ("v^2*w + w^3", 4),       // D₄
            ("v^2*w + w^4", 5),       // D₅
            ("v^3 + w^4", 6),         // E₆
            ("v^3 + v*w^3", 7),       // E₇
            ("v^3 + w^5", 8),         // E₈
        ];
        for (s, mu) in cases {
            let f = parse_poly(&v2, s).unwrap();
            assert_eq!(
                jacobian_quotient_dimension(&f, &mut b).unwrap(),
                Some(mu),
                "μ({s})"
            );
        }
    }

    #[test]
    fn germ_contract_is_enforced() {
        let v = Vars::uvw();
        let f = Jet::new(parse_poly(&v, "1 + u^2").unwrap(), 8);
        assert!(matches!(classify_duval(&f), Err(DuValError::NotAGerm)));
        let v4 = Vars::xyzt();
        let f = Jet::new(parse_poly(&v4, "x^2 + y^2").unwrap(), 8);
        assert!(matches!(
            classify_duval(&f),
            Err(DuValError::WrongVariableCount { found: 4 })
        ));
    }
}
