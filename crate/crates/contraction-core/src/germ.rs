//! Input germs: a hypersurface `X = {f = 0} ⊂ ℂ⁴` containing a smooth curve
//! `Γ` through the origin, and the coordinate straightening that turns `Γ`
//! into an axis. The same machinery handles surface germs `S = {g = 0} ⊂ ℂ³`
//! containing a smooth curve, which arise from hyperplane sections.
//!
//! The rest of the pipeline works in straightened coordinates, where the
//! curve ideal is generated by all but one of the coordinates and the curve
//! itself is the remaining coordinate axis. [`straighten`] reduces any valid
//! input to that situation: it row-reduces the generators' linear parts,
//! applies the corresponding linear change, then Newton-solves for the curve
//! parametrization and shifts it away. Containment `Γ ⊂ X` is certified to
//! the working jet order by the absence of pure-parameter monomials.

use crate::algebra::change::{invert_matrix, CoordinateChange};
use crate::algebra::jet::Jet;
use crate::algebra::poly::{Poly, Q, Vars};
use num::{One, Zero};

/// A hypersurface germ together with the curve to blow up.
#[derive(Debug, Clone)]
pub struct Germ3Fold {
    pub vars: Vars,
    /// Equation of the hypersurface `X`.
    pub f: Poly,
    /// Three generators of the ideal of the curve `Γ`.
    pub curve: Vec<Poly>,
}

/// A surface germ `S = {g = 0} ⊂ ℂ³` together with a smooth curve on it.
#[derive(Debug, Clone)]
pub struct SurfaceGerm {
    pub vars: Vars,
    /// Equation of the surface `S`.
    pub g: Poly,
    /// Two generators of the ideal of the curve `Γ`.
    pub curve: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("expected {expected} ambient variables, found {found}")]
    WrongVariableCount { expected: usize, found: usize },
    #[error("expected {expected} curve generators, found {found}")]
    WrongGeneratorCount { expected: usize, found: usize },
    #[error("the hypersurface equation is identically zero")]
    HypersurfaceIsZero,
    #[error("the hypersurface does not pass through the origin")]
    HypersurfaceNotThroughOrigin,
    #[error("curve generator {index} does not vanish at the origin")]
    CurveGeneratorNotVanishing { index: usize },
    #[error(
        "the curve generators do not define a smooth curve: linear parts have rank {rank} < {expected}"
    )]
    CurveNotSmooth { rank: usize, expected: usize },
    #[error("the curve is not contained in the hypersurface (checked to jet order {order})")]
    CurveNotInHypersurface { order: u32 },
}

/// A germ in straightened coordinates: the curve is `V(curve_vars)`, i.e.
/// the `param_var` axis, and `f` lies in the ideal of the curve variables.
#[derive(Debug, Clone)]
pub struct StraightenedGerm {
    pub vars: Vars,
    /// The straightened equation, a jet of the working order.
    pub f: Jet,
    /// Indices of the three coordinates generating the curve ideal.
    pub curve_vars: [usize; 3],
    /// Index of the coordinate along the curve.
    pub param_var: usize,
    /// The change with `f = original ∘ change` (original coordinates in
    /// terms of the new ones).
    pub change: CoordinateChange,
}

impl StraightenedGerm {
    /// Order of vanishing of the hypersurface equation at the origin.
    pub fn hypersurface_order(&self) -> u32 {
        self.f.poly().ord().expect("validated nonzero")
    }
}

/// A surface germ in straightened coordinates: the curve is the
/// `param_var` axis and `g` lies in the ideal of the two curve variables.
#[derive(Debug, Clone)]
pub struct StraightenedSurface {
    pub vars: Vars,
    pub g: Jet,
    /// Indices of the two coordinates generating the curve ideal.
    pub curve_vars: [usize; 2],
    pub param_var: usize,
    pub change: CoordinateChange,
}

impl StraightenedSurface {
    /// Order of vanishing of the surface equation at the origin.
    pub fn surface_order(&self) -> u32 {
        self.g.poly().ord().expect("validated nonzero")
    }
}

/// Validate a 3-fold germ and put the curve on a coordinate axis.
pub fn straighten(germ: &Germ3Fold, order: u32) -> Result<StraightenedGerm, GermError> {
    if germ.vars.len() != 4 {
        return Err(GermError::WrongVariableCount { expected: 4, found: germ.vars.len() });
    }
    if germ.curve.len() != 3 {
        return Err(GermError::WrongGeneratorCount { expected: 3, found: germ.curve.len() });
    }
    let (f, pivots, param_var, change) = straighten_core(&germ.vars, &germ.f, &germ.curve, order)?;
    Ok(StraightenedGerm {
        vars: germ.vars.clone(),
        f,
        curve_vars: [pivots[0], pivots[1], pivots[2]],
        param_var,
        change,
    })
}

/// Validate a surface germ and put the curve on a coordinate axis.
pub fn straighten_surface(
    germ: &SurfaceGerm,
    order: u32,
) -> Result<StraightenedSurface, GermError> {
    if germ.vars.len() != 3 {
        return Err(GermError::WrongVariableCount { expected: 3, found: germ.vars.len() });
    }
    if germ.curve.len() != 2 {
        return Err(GermError::WrongGeneratorCount { expected: 2, found: germ.curve.len() });
    }
    let (g, pivots, param_var, change) = straighten_core(&germ.vars, &germ.g, &germ.curve, order)?;
    Ok(StraightenedSurface {
        vars: germ.vars.clone(),
        g,
        curve_vars: [pivots[0], pivots[1]],
        param_var,
        change,
    })
}

/// Shared straightening: `n` ambient variables, `n − 1` curve generators.
fn straighten_core(
    vars: &Vars,
    f: &Poly,
    curve: &[Poly],
    order: u32,
) -> Result<(Jet, Vec<usize>, usize, CoordinateChange), GermError> {
    let n = vars.len();
    let k = curve.len();
    debug_assert_eq!(k, n - 1);
    if f.is_zero() {
        return Err(GermError::HypersurfaceIsZero);
    }
    if !f.constant_term().is_zero() {
        return Err(GermError::HypersurfaceNotThroughOrigin);
    }
    for (index, g) in curve.iter().enumerate() {
        if !g.constant_term().is_zero() {
            return Err(GermError::CurveGeneratorNotVanishing { index });
        }
    }

    // Row-reduce the linear parts, mirroring every operation on the full
    // generators so the new generators have unit-vector linear parts in the
    // pivot columns (plus a multiple of the parameter column).
    let mut gens: Vec<Poly> = curve.to_vec();
    let mut lin: Vec<Vec<Q>> = gens
        .iter()
        .map(|g| (0..n).map(|j| g.homogeneous_part(1).coeff(&unit_mono(n, j))).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..k).find(|&r| !lin[r][col].is_zero()) else {
            continue;
        };
        lin.swap(row, p);
        gens.swap(row, p);
        let inv = Q::one() / lin[row][col].clone();
        for v in lin[row].iter_mut() {
            *v = &*v * &inv;
        }
        gens[row] = gens[row].scale(&inv);
        let pivot_row = lin[row].clone();
        for r in 0..k {
            if r == row || lin[r][col].is_zero() {
                continue;
            }
            let lam = lin[r][col].clone();
            for (v, pv) in lin[r].iter_mut().zip(&pivot_row) {
                let t = pv * &lam;
                *v = &*v - &t;
            }
            gens[r] = gens[r].sub(&gens[row].scale(&lam));
        }
        pivots.push(col);
        row += 1;
        if row == k {
            break;
        }
    }
    if pivots.len() != k {
        return Err(GermError::CurveNotSmooth { rank: pivots.len(), expected: k });
    }
    let param = (0..n).find(|c| !pivots.contains(c)).unwrap();

    // Linear change sending each generator's linear part to its pivot
    // variable and fixing the parameter variable.
    let mut b = vec![vec![Q::zero(); n]; n];
    for (i, &c) in pivots.iter().enumerate() {
        b[c] = lin[i].clone();
    }
    b[param][param] = Q::one();
    let a = invert_matrix(&b).expect("pivot rows and the parameter axis are independent");
    let linear = CoordinateChange::linear(vars, &a, order).expect("invertible");
    let gens: Vec<Poly> = gens.iter().map(|g| linear.apply_exact(g)).collect();
    for (i, &c) in pivots.iter().enumerate() {
        debug_assert_eq!(gens[i].homogeneous_part(1), Poly::var(vars, c));
    }

    // Newton-solve gens = 0 for the pivot variables along the parameter
    // axis; each pass gains at least one jet order.
    let h: Vec<Poly> = (0..k)
        .map(|i| gens[i].sub(&Poly::var(vars, pivots[i])).truncate(order))
        .collect();
    let mut gamma: Vec<Poly> = vec![Poly::zero(vars); k];
    for _ in 0..order {
        let mut subs: Vec<Poly> = (0..n).map(|j| Poly::var(vars, j)).collect();
        for (i, &c) in pivots.iter().enumerate() {
            subs[c] = gamma[i].clone();
        }
        let next: Vec<Poly> =
            (0..k).map(|i| h[i].substitute(&subs, Some(order)).neg()).collect();
        if next == gamma {
            break;
        }
        gamma = next;
    }
    let mut subs: Vec<Poly> = (0..n).map(|j| Poly::var(vars, j)).collect();
    for (i, &c) in pivots.iter().enumerate() {
        debug_assert!(
            pivots.iter().all(|&p| gamma[i].degree_in(p) == 0),
            "parametrization must be a pure series in the parameter"
        );
        subs[c] = Poly::var(vars, c).add(&gamma[i]);
    }
    let shift = CoordinateChange::new(vars, subs, order).expect("unipotent shift");
    for (i, &c) in pivots.iter().enumerate() {
        let moved = Jet::new(shift.apply(&gens[i]), order);
        debug_assert!(
            moved.poly().in_coordinate_ideal(&pivots),
            "generator {i} (pivot {c}) must vanish on the parameter axis"
        );
    }

    let change = linear.compose(&shift);
    let out = Jet::new(change.apply(f), order);
    if !out.poly().in_coordinate_ideal(&pivots) {
        return Err(GermError::CurveNotInHypersurface { order });
    }
    Ok((out, pivots, param, change))
}

fn unit_mono(n: usize, j: usize) -> Vec<u16> {
    let mut m = vec![0u16; n];
    m[j] = 1;
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    const N: u32 = 12;

    fn germ(f: &str, gens: [&str; 3]) -> Germ3Fold {
        let vars = Vars::xyzt();
        Germ3Fold {
            vars: vars.clone(),
            f: parse_poly(&vars, f).unwrap(),
            curve: gens.iter().map(|g| parse_poly(&vars, g).unwrap()).collect(),
        }
    }

    fn surface(g: &str, gens: [&str; 2]) -> SurfaceGerm {
        let vars = Vars::uvw();
        SurfaceGerm {
            vars: vars.clone(),
            g: parse_poly(&vars, g).unwrap(),
            curve: gens.iter().map(|g| parse_poly(&vars, g).unwrap()).collect(),
        }
    }

    #[test]
    fn already_straight_germ_is_untouched() {
        let g = germ("x^2 + y^3 + z^3 + y*t^6", ["x", "y", "z"]);
        let s = straighten(&g, N).unwrap();
        assert_eq!(s.curve_vars, [0, 1, 2]);
        assert_eq!(s.param_var, 3);
        assert_eq!(s.f.poly(), &g.f);
        assert_eq!(s.hypersurface_order(), 2);
    }

    #[test]
    fn cylinder_curve_straightens_to_an_axis() {
        // Γ = (z², z³, t) on the A4 cylinder x·y = z⁵.
        let g = germ("x*y - z^5", ["x - z^2", "y - z^3", "t"]);
        let s = straighten(&g, N).unwrap();
        assert_eq!(s.curve_vars, [0, 1, 3]);
        assert_eq!(s.param_var, 2);
        let vars = Vars::xyzt();
        let expect = parse_poly(&vars, "x*y + x*z^3 + y*z^2").unwrap();
        assert_eq!(s.f.poly(), &expect);
    }

    #[test]
    fn skew_linear_parts_are_handled() {
        let g = germ(
            "(x + y)^2 + (y - z)*t^3 + (x + y)*z^2",
            ["x + y", "y - z", "t + x^2"],
        );
        let s = straighten(&g, N).unwrap();
        assert_eq!(s.curve_vars, [0, 1, 3]);
        assert_eq!(s.param_var, 2);
        assert!(s.f.poly().in_coordinate_ideal(&[0, 1, 3]));
        assert_eq!(s.hypersurface_order(), 2);
    }

    #[test]
    fn containment_is_checked() {
        let g = germ("x^2 + t^2", ["x", "y", "z"]);
        assert!(matches!(
            straighten(&g, N),
            Err(GermError::CurveNotInHypersurface { order: N })
        ));
        // Containment failures hidden behind a nontrivial parametrization.
        let g = germ("x*y - z^6", ["x - z^2", "y - z^3", "t"]);
        assert!(matches!(
            straighten(&g, N),
            Err(GermError::CurveNotInHypersurface { .. })
        ));
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let g = germ("x^2 + y^2", ["x", "y", "x + y"]);
        assert!(matches!(straighten(&g, N), Err(GermError::CurveNotSmooth { rank: 2, .. })));
        let g = germ("x^2 + y^2 + 1", ["x", "y", "z"]);
        assert!(matches!(straighten(&g, N), Err(GermError::HypersurfaceNotThroughOrigin)));
        let g = germ("x^2 + y^2", ["x", "y", "z + 1"]);
        assert!(matches!(
            straighten(&g, N),
            Err(GermError::CurveGeneratorNotVanishing { index: 2 })
        ));
        let mut g = germ("x^2 + y^2", ["x", "y", "z"]);
        g.curve.pop();
        assert!(matches!(
            straighten(&g, N),
            Err(GermError::WrongGeneratorCount { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn smooth_hypersurface_is_a_valid_germ() {
        let g = germ("x + y^2 + z*t", ["x", "y", "z"]);
        let s = straighten(&g, N).unwrap();
        assert_eq!(s.hypersurface_order(), 1);
    }

    #[test]
    fn straightening_change_reproduces_the_input() {
        // Applying the recorded change to the original f gives the
        // straightened jet.
        let g = germ("x*y - z^5", ["x - z^2", "y - z^3", "t"]);
        let s = straighten(&g, N).unwrap();
        let via_change = Jet::new(s.change.apply(&g.f), N);
        assert_eq!(via_change.poly(), s.f.poly());
    }

    #[test]
    fn surface_germ_straightens() {
        // A4 with the curve meeting E₂: g = w⁵ − uv, Γ = (u − w², v − w³).
        let s = surface("w^5 - u*v", ["u - w^2", "v - w^3"]);
        let out = straighten_surface(&s, N).unwrap();
        assert_eq!(out.curve_vars, [0, 1]);
        assert_eq!(out.param_var, 2);
        assert!(out.g.poly().in_coordinate_ideal(&[0, 1]));
        assert_eq!(out.surface_order(), 2);
        let vars = Vars::uvw();
        let expect = parse_poly(&vars, "-u*v - u*w^3 - v*w^2").unwrap();
        assert_eq!(out.g.poly(), &expect);
    }

    #[test]
    fn surface_germ_already_straight() {
        // D₅ with the curve on the chain end: g = u² + v²w − w⁴, Γ = (u, w).
        let s = surface("u^2 + v^2*w - w^4", ["u", "w"]);
        let out = straighten_surface(&s, N).unwrap();
        assert_eq!(out.curve_vars, [0, 2]);
        assert_eq!(out.param_var, 1);
        assert_eq!(out.g.poly(), &s.g);
    }

    #[test]
    fn surface_containment_is_checked() {
        let s = surface("u^2 + w^2", ["u", "v"]);
        assert!(matches!(
            straighten_surface(&s, N),
            Err(GermError::CurveNotInHypersurface { .. })
        ));
    }
}
