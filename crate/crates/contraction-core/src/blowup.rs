//! Blow-up of a straightened curve on a hypersurface: affine chart
//! equations, the decomposition of the pulled-back curve ideal into a
//! component dominating the curve plus a multiple of the component over the
//! origin, singular-locus verdicts along prescribed loci, the second-stage
//! blow-up that untwists the first, and the multiplicity drop of transverse
//! hyperplane sections.
//!
//! Everything is chart-local. A chart of the blow-up of the coordinate
//! subspace `V(x_{i_1}, …, x_{i_k})` keeps one center variable `w` as the
//! exceptional coordinate and reinterprets the others as ratios: the chart
//! map is `x_j ↦ x_j·w` for the other center variables and the identity
//! elsewhere. This is a monomial substitution, so total transforms are
//! exact, and the exceptional multiplicities extracted here are orders of
//! honest length computations at generic points, valid whether or not the
//! blown-up hypersurface is normal.
//!
//! The component over the origin is `E₂ = V(w, s)` in every chart (`s` the
//! curve parameter) and its multiplicity `d` in the pulled-back curve is the
//! `s`-adic order of `strict|_{w=0}`. The dominating component is
//! `E₁ = V(w, R)` with `R = (strict|_{w=0})/s^d`, an identity of ideals, so
//! no elimination is needed. Both are exact for jets of the input: when the
//! exceptional order is 1, the only monomials landing in `strict|_{w=0}`
//! are `c·v·s^k` with `v` a single center variable, of total degree
//! `k + 1 ≤ order`, so `d ≤ order − 1` while anything hidden above the jet
//! order sits in `s`-degree ≥ order.

use crate::algebra::groebner::{GbBudget, GbError};
use crate::algebra::ideal::{variety_contained_in_zero_set, variety_dimension};
use crate::algebra::poly::{qi, univariate_gcd, Poly, Q, Vars};
use crate::germ::{
    straighten, straighten_surface, Germ3Fold, GermError, StraightenedGerm, StraightenedSurface,
    SurfaceGerm,
};
use num::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error("the chart variable must be one of the center variables")]
    ChartNotInCenter,
    #[error("the equation does not lie in the ideal of the blow-up center")]
    CenterNotContained,
    #[error(
        "the equation's working jet lies in the {exc_order}-th power of the center ideal: \
         either the hypersurface is singular along the entire center, or the jet order is too \
         low to witness a generically smooth point"
    )]
    SingularAlongCenter { exc_order: u32 },
    #[error("charts disagree on the exceptional decomposition: {detail}")]
    ChartMismatch { detail: String },
    #[error(
        "the dominating exceptional component is not a coordinate pair in chart {chart} \
         (residual equation {residual}); its blow-up is not supported"
    )]
    E1NotCoordinatePair { chart: usize, residual: String },
    #[error("the queried locus is not contained in the chart's strict transform")]
    LocusNotOnHypersurface,
    #[error("outside the supported regime: {reason}")]
    OutsideSupportedRegime { reason: String },
    #[error("a precondition could not be decided within the budget: {what}")]
    UndecidedPrecondition { what: String },
    #[error("the section does not pass through the origin")]
    SectionNotThroughOrigin,
    #[error("the section contains the curve, so no transverse multiplicity drop applies")]
    SectionContainsCurve,
    #[error("the section is not generic: {reason}")]
    SectionNotGeneric { reason: String },
}

/// One affine chart of the blow-up of a coordinate subspace.
///
/// The chart keeps the ambient variable list: `chart_var` is the
/// exceptional coordinate and the remaining center variables are
/// reinterpreted as the ratios `x_j/w`.
#[derive(Debug, Clone)]
pub struct BlowupChart {
    pub vars: Vars,
    /// Indices of the variables generating the blown-up center.
    pub center: Vec<usize>,
    /// The center variable kept as the exceptional coordinate.
    pub chart_var: usize,
    /// The chart map: `subs[j]` is the image of the `j`-th old coordinate.
    pub subs: Vec<Poly>,
    /// Pullback of the equation through the chart map, exact.
    pub total: Poly,
    /// Order of the equation along the center: `total = w^{exc_order}·strict`.
    pub exc_order: u32,
    /// Strict transform of the hypersurface in this chart.
    pub strict: Poly,
    /// Jet order to which the transform is certified.
    pub order: u32,
}

/// Pull `f` back through the chart map of the blow-up of `V(center)` and
/// split off the exceptional factor. The substitution is monomial, hence
/// injective on exponent vectors: no cancellation occurs and the result is
/// exact.
pub fn blowup_chart(
    f: &Poly,
    center: &[usize],
    chart_var: usize,
    order: u32,
) -> Result<BlowupChart, BlowupError> {
    let vars = f.vars().clone();
    assert!(
        center.iter().all(|&j| j < vars.len()),
        "center variables out of range"
    );
    if !center.contains(&chart_var) {
        return Err(BlowupError::ChartNotInCenter);
    }
    let mut total = Poly::zero(&vars);
    let mut exc_order: Option<u32> = None;
    for (m, c) in f.terms() {
        let c_ord: u32 = center.iter().map(|&j| u32::from(m[j])).sum();
        let mut mm = m.clone();
        mm[chart_var] = u16::try_from(c_ord).expect("exponent fits in u16");
        total = total.add(&Poly::monomial(&vars, &mm, c.clone()));
        exc_order = Some(exc_order.map_or(c_ord, |e| e.min(c_ord)));
    }
    let exc_order = exc_order.unwrap_or(0);
    if exc_order == 0 && !f.is_zero() {
        return Err(BlowupError::CenterNotContained);
    }
    let strict = total.div_var_power(chart_var, u16::try_from(exc_order).unwrap());
    let mut subs: Vec<Poly> = (0..vars.len()).map(|j| Poly::var(&vars, j)).collect();
    for &j in center {
        if j != chart_var {
            subs[j] = Poly::var(&vars, j).mul(&Poly::var(&vars, chart_var));
        }
    }
    Ok(BlowupChart { vars, center: center.to_vec(), chart_var, subs, total, exc_order, strict, order })
}

/// A chart of the blow-up along a straightened curve, with the exceptional
/// components identified in chart coordinates.
#[derive(Debug, Clone)]
pub struct CurveChart {
    pub chart: BlowupChart,
    /// The curve parameter.
    pub param_var: usize,
    /// Center variables other than the chart variable (the ratios).
    pub ratio_vars: Vec<usize>,
    /// The component dominating the curve, `V(w, R)`, when it meets this
    /// chart. For surfaces this is the strict transform of the curve itself.
    pub e1: Option<Vec<Poly>>,
    /// The component over the origin, `V(w, s)`, when present.
    pub e2: Option<Vec<Poly>>,
    /// Their intersection `L = V(w, s, R)`, when both are visible.
    pub l: Option<Vec<Poly>>,
}

/// The divisorial decomposition of the pulled-back curve ideal:
/// `f*(curve) = E₁ + d·E₂`, where `E₁` dominates the curve and `E₂` lies
/// over the origin. For a surface germ read `Γ′ + d·E` instead.
#[derive(Debug, Clone)]
pub struct ExceptionalDecomposition {
    /// Multiplicity of the component over the origin; `0` iff that
    /// component is absent, which happens exactly over a smooth ambient
    /// point (multiplicity-one equation).
    pub d: u32,
    /// Chart-local equations of the dominating component, per chart index.
    pub e1: Vec<(usize, Vec<Poly>)>,
    /// Chart-local equations of the component over the origin.
    pub e2: Vec<(usize, Vec<Poly>)>,
    /// Chart-local equations of their intersection curve `L`.
    pub l: Vec<(usize, Vec<Poly>)>,
}

/// Blow-up of a 3-fold germ along its straightened curve: one chart per
/// curve generator plus the decomposition of the exceptional fiber.
#[derive(Debug, Clone)]
pub struct CurveBlowup {
    pub germ: StraightenedGerm,
    pub charts: Vec<CurveChart>,
    pub decomp: ExceptionalDecomposition,
}

/// Straighten a 3-fold germ and blow up the curve.
pub fn blowup_curve(germ: &Germ3Fold, order: u32) -> Result<CurveBlowup, BlowupError> {
    blowup_straightened(&straighten(germ, order)?)
}

/// Blow up the curve of an already straightened 3-fold germ.
pub fn blowup_straightened(sg: &StraightenedGerm) -> Result<CurveBlowup, BlowupError> {
    let (charts, decomp) = curve_blowup_core(
        sg.f.poly(),
        &sg.curve_vars,
        sg.param_var,
        sg.f.order(),
    )?;
    Ok(CurveBlowup { germ: sg.clone(), charts, decomp })
}

/// Blow-up of a surface germ along its straightened curve.
#[derive(Debug, Clone)]
pub struct SurfaceBlowup {
    pub germ: StraightenedSurface,
    pub charts: Vec<CurveChart>,
    pub decomp: ExceptionalDecomposition,
}

/// Straighten a surface germ and blow up the curve on it. The decomposition
/// reads `g*(curve) = Γ′ + d·E` with `Γ′` the strict transform of the curve
/// (in `e1`) and `E` the exceptional curve over the origin (in `e2`).
pub fn surface_blowup(germ: &SurfaceGerm, order: u32) -> Result<SurfaceBlowup, BlowupError> {
    surface_blowup_straightened(&straighten_surface(germ, order)?)
}

/// Blow up the curve of an already straightened surface germ.
pub fn surface_blowup_straightened(
    ss: &StraightenedSurface,
) -> Result<SurfaceBlowup, BlowupError> {
    let (charts, decomp) = curve_blowup_core(
        ss.g.poly(),
        &ss.curve_vars,
        ss.param_var,
        ss.g.order(),
    )?;
    Ok(SurfaceBlowup { germ: ss.clone(), charts, decomp })
}

/// Shared chart analysis for curve blow-ups on 3-folds (three center
/// variables) and surfaces (two center variables).
fn curve_blowup_core(
    f: &Poly,
    center: &[usize],
    param_var: usize,
    order: u32,
) -> Result<(Vec<CurveChart>, ExceptionalDecomposition), BlowupError> {
    let vars = f.vars().clone();
    let mut charts = Vec::with_capacity(center.len());
    let mut decomp = ExceptionalDecomposition { d: 0, e1: Vec::new(), e2: Vec::new(), l: Vec::new() };
    let mut d_seen: Option<u32> = None;
    for (idx, &cv) in center.iter().enumerate() {
        let chart = blowup_chart(f, center, cv, order)?;
        if chart.exc_order >= 2 {
            return Err(BlowupError::SingularAlongCenter { exc_order: chart.exc_order });
        }
        // strict|_{w=0} = s^d·R: d is the multiplicity of the component over
        // the origin (a length at its generic point), R cuts the dominating
        // component inside {w = 0}.
        let a = chart.strict.set_var(cv, &Q::zero());
        debug_assert!(!a.is_zero(), "some monomial realizes the minimal center order");
        let d = a.var_order(param_var).expect("nonzero");
        debug_assert!(d < order, "a center-order-1 monomial v·s^d has total degree d + 1 ≤ order");
        match d_seen {
            None => d_seen = Some(d),
            Some(prev) if prev != d => {
                return Err(BlowupError::ChartMismatch {
                    detail: format!("multiplicity {prev} in one chart, {d} in chart {idx}"),
                })
            }
            Some(_) => {}
        }
        let r = a.div_var_power(param_var, u16::try_from(d).unwrap());
        let w = Poly::var(&vars, cv);
        let s = Poly::var(&vars, param_var);
        let e1 = (!r.is_constant()).then(|| vec![w.clone(), r.clone()]);
        let e2 = (d >= 1).then(|| vec![w.clone(), s.clone()]);
        let l = (e1.is_some() && e2.is_some()).then(|| vec![w, s, r]);
        if let Some(g) = &e1 {
            decomp.e1.push((idx, g.clone()));
        }
        if let Some(g) = &e2 {
            decomp.e2.push((idx, g.clone()));
        }
        if let Some(g) = &l {
            decomp.l.push((idx, g.clone()));
        }
        charts.push(CurveChart {
            chart,
            param_var,
            ratio_vars: center.iter().copied().filter(|&j| j != cv).collect(),
            e1,
            e2,
            l,
        });
    }
    decomp.d = d_seen.expect("at least one chart");
    if decomp.e1.is_empty() {
        return Err(BlowupError::ChartMismatch {
            detail: "the dominating component is visible in no chart".into(),
        });
    }
    Ok((charts, decomp))
}

/// Verdict on the singular locus of a strict transform along a locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusVerdict {
    Empty,
    Finite,
    PositiveDimensional { dim: u32 },
    UndecidedAtBudget,
}

impl LocusVerdict {
    fn severity(self) -> u32 {
        match self {
            LocusVerdict::Empty => 0,
            LocusVerdict::Finite => 1,
            LocusVerdict::UndecidedAtBudget => 2,
            LocusVerdict::PositiveDimensional { .. } => 3,
        }
    }

    /// The more pessimistic of two verdicts.
    pub fn merge(self, other: LocusVerdict) -> LocusVerdict {
        if self.severity() >= other.severity() {
            self
        } else {
            other
        }
    }
}

/// Singular locus of a chart's strict transform intersected with a locus.
#[derive(Debug, Clone)]
pub struct SingularLocusReport {
    pub locus: Vec<Poly>,
    pub verdict: LocusVerdict,
    /// The deciding system: the strict transform and its partials (plus any
    /// residual locus equations) restricted to the locus.
    pub witness: Vec<Poly>,
}

/// Dimension of `Sing(V(strict)) ∩ V(locus)` in a chart.
///
/// The locus must lie on the strict transform. Coordinate-subspace loci are
/// decided exactly without Gröbner bases (restriction plus a univariate gcd
/// on a line); other loci go through a Gröbner dimension computation and may
/// come back [`LocusVerdict::UndecidedAtBudget`] — never misreported.
pub fn singular_locus_along(
    chart: &BlowupChart,
    locus: &[Poly],
    budget: &mut GbBudget,
) -> Result<SingularLocusReport, BlowupError> {
    let vars = &chart.vars;
    let n = vars.len();
    let mut system: Vec<Poly> = vec![chart.strict.clone()];
    for v in 0..n {
        system.push(chart.strict.derivative(v));
    }

    if let Some(zero_vars) = coordinate_subspace(locus) {
        // Containment check by direct restriction.
        if !restrict(&chart.strict, &zero_vars).is_zero() {
            return Err(BlowupError::LocusNotOnHypersurface);
        }
        let restricted: Vec<Poly> =
            system.iter().map(|p| restrict(p, &zero_vars)).filter(|p| !p.is_zero()).collect();
        let free: Vec<usize> = (0..n).filter(|v| !zero_vars.contains(v)).collect();
        let verdict = if restricted.is_empty() {
            // The whole locus is singular.
            match u32::try_from(free.len()).unwrap() {
                0 => LocusVerdict::Finite,
                dim => LocusVerdict::PositiveDimensional { dim },
            }
        } else if restricted.iter().any(|p| p.is_constant()) {
            LocusVerdict::Empty
        } else {
            match free.len() {
                0 => unreachable!("a nonzero restricted poly in no variables is constant"),
                1 => match line_gcd(&restricted, free[0]) {
                    g if g.len() <= 1 => LocusVerdict::Empty,
                    _ => LocusVerdict::Finite,
                },
                _ => {
                    let mut gens = restricted.clone();
                    gens.extend(zero_vars.iter().map(|&v| Poly::var(vars, v)));
                    match variety_dimension(&gens, budget) {
                        Ok(None) => LocusVerdict::Empty,
                        Ok(Some(0)) => LocusVerdict::Finite,
                        Ok(Some(dim)) => LocusVerdict::PositiveDimensional { dim },
                        Err(GbError::BudgetExceeded { .. }) => LocusVerdict::UndecidedAtBudget,
                    }
                }
            }
        };
        return Ok(SingularLocusReport { locus: locus.to_vec(), verdict, witness: restricted });
    }

    // General locus: full Gröbner route.
    match variety_contained_in_zero_set(locus, &chart.strict, budget) {
        Ok(true) => {}
        Ok(false) => return Err(BlowupError::LocusNotOnHypersurface),
        Err(GbError::BudgetExceeded { .. }) => {
            return Ok(SingularLocusReport {
                locus: locus.to_vec(),
                verdict: LocusVerdict::UndecidedAtBudget,
                witness: Vec::new(),
            })
        }
    }
    system.extend(locus.iter().cloned());
    let verdict = match variety_dimension(&system, budget) {
        Ok(None) => LocusVerdict::Empty,
        Ok(Some(0)) => LocusVerdict::Finite,
        Ok(Some(dim)) => LocusVerdict::PositiveDimensional { dim },
        Err(GbError::BudgetExceeded { .. }) => LocusVerdict::UndecidedAtBudget,
    };
    Ok(SingularLocusReport { locus: locus.to_vec(), verdict, witness: system })
}

/// If the locus is a coordinate subspace (every generator reduces to a
/// scalar multiple of a variable after substituting the other generators'
/// variables by zero), return the vanishing variables.
fn coordinate_subspace(locus: &[Poly]) -> Option<Vec<usize>> {
    let mut zero_vars: Vec<usize> = Vec::new();
    let mut rest: Vec<Poly> = locus.to_vec();
    loop {
        let mut progress = false;
        let mut remaining = Vec::new();
        for g in rest {
            let g = restrict(&g, &zero_vars);
            if g.is_zero() {
                progress = true;
                continue;
            }
            if let Some(v) = single_variable(&g) {
                if !zero_vars.contains(&v) {
                    zero_vars.push(v);
                }
                progress = true;
            } else {
                remaining.push(g);
            }
        }
        rest = remaining;
        if rest.is_empty() {
            zero_vars.sort_unstable();
            return Some(zero_vars);
        }
        if !progress {
            return None;
        }
    }
}

/// `Some(v)` if `p` is a nonzero scalar multiple of the variable `v`.
fn single_variable(p: &Poly) -> Option<usize> {
    let mut terms = p.terms();
    let (m, _) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let mut var = None;
    for (v, &e) in m.iter().enumerate() {
        match (e, var) {
            (0, _) => {}
            (1, None) => var = Some(v),
            _ => return None,
        }
    }
    var
}

/// Set the named variables to zero.
fn restrict(p: &Poly, zero_vars: &[usize]) -> Poly {
    let mut out = p.clone();
    for &v in zero_vars {
        out = out.set_var(v, &Q::zero());
    }
    out
}

/// Coefficient vector of a polynomial supported on a single variable.
fn univariate(p: &Poly, var: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        debug_assert!(
            m.iter().enumerate().all(|(v, &e)| v == var || e == 0),
            "polynomial is not univariate in the expected variable"
        );
        out[m[var] as usize] = c.clone();
    }
    out
}

/// Gcd of the restrictions of a system to a coordinate line (all nonzero,
/// univariate in `var`). The gcd's roots are the common zeros on the line.
fn line_gcd(system: &[Poly], var: usize) -> Vec<Q> {
    let mut g: Vec<Q> = Vec::new();
    for p in system {
        let c = univariate(p, var);
        g = if g.is_empty() { c } else { univariate_gcd(&g, &c) };
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// `true` if every root of the univariate coefficient vector is zero, i.e.
/// the polynomial is a monomial `c·x^k`.
fn roots_only_at_origin(g: &[Q]) -> bool {
    g.iter().filter(|c| !c.is_zero()).count() <= 1
}

/// One chart of the second-stage blow-up `Z = B_{E₁}Y`.
#[derive(Debug, Clone)]
pub struct ZChart {
    /// Index of the first-stage chart this lives over.
    pub from_y_chart: usize,
    pub chart: BlowupChart,
    /// The ratio variable of this chart.
    pub ratio_var: usize,
    /// The fiber over the first-stage chart origin: a coordinate line.
    pub c: Vec<Poly>,
    /// Strict transform of the component over the origin, when visible
    /// (pullback of its equations with the exceptional factor divided out).
    pub e2z: Option<Vec<Poly>>,
    /// Singular locus of the second blow-up along the fiber.
    pub report: SingularLocusReport,
}

/// Result of blowing up the dominating exceptional component.
#[derive(Debug, Clone)]
pub struct QFactorialization {
    /// Singularity reports along `L` per first-stage chart, from the
    /// regime precondition.
    pub l_reports: Vec<(usize, SingularLocusReport)>,
    pub z_charts: Vec<ZChart>,
    /// Merged verdict for the singular locus along the fibers over the
    /// first-stage origins.
    pub verdict: LocusVerdict,
}

/// Blow up the dominating exceptional component `E₁ ⊂ Y` and report the
/// singularities of the result along the fibers over the singular points of
/// `Y`.
///
/// Supported regime: the singular points of `Y` on `L = E₁ ∩ E₂` are
/// finitely many and sit at the chart origins, and `Y` is singular along no
/// curve of `L` — checked first through [`singular_locus_along`]. In that
/// case each first-stage chart with a singular origin on `E₁` is blown up
/// along `E₁` (which must be a coordinate pair there), the fiber
/// `C = g⁻¹(origin)` is the coordinate line complementary to the ratio
/// variable, and the verdicts along `C` are merged across charts. A
/// singular chart origin off `E₁` persists as an isolated singular point of
/// the blow-up (which is an isomorphism near it) and merges as a finite
/// contribution.
pub fn qfactorialize(
    y: &CurveBlowup,
    budget: &mut GbBudget,
) -> Result<QFactorialization, BlowupError> {
    let vars = &y.germ.vars;
    let n = vars.len();
    let mut out = QFactorialization {
        l_reports: Vec::new(),
        z_charts: Vec::new(),
        verdict: LocusVerdict::Empty,
    };
    for (yi, yc) in y.charts.iter().enumerate() {
        let ychart = &yc.chart;
        let origin_singular = ychart.strict.constant_term().is_zero()
            && (0..n).all(|v| ychart.strict.derivative(v).constant_term().is_zero());

        // Regime precondition along L, where both components meet.
        if let Some(l) = &yc.l {
            let report = singular_locus_along(ychart, l, budget)?;
            match report.verdict {
                LocusVerdict::Empty | LocusVerdict::Finite => {}
                LocusVerdict::PositiveDimensional { .. } => {
                    return Err(BlowupError::OutsideSupportedRegime {
                        reason: format!(
                            "the first blow-up is singular along a curve of L in chart {yi}"
                        ),
                    })
                }
                LocusVerdict::UndecidedAtBudget => {
                    return Err(BlowupError::UndecidedPrecondition {
                        what: format!("finiteness of the singular points on L in chart {yi}"),
                    })
                }
            }
            if report.verdict == LocusVerdict::Finite {
                match coordinate_subspace(l) {
                    Some(zero_vars) => {
                        let free: Vec<usize> =
                            (0..n).filter(|v| !zero_vars.contains(v)).collect();
                        if free.len() == 1
                            && !roots_only_at_origin(&line_gcd(&report.witness, free[0]))
                        {
                            return Err(BlowupError::OutsideSupportedRegime {
                                reason: format!(
                                    "singular points on L away from the origin of chart {yi}"
                                ),
                            });
                        }
                    }
                    None => {
                        return Err(BlowupError::UndecidedPrecondition {
                            what: format!(
                                "whether the singular points on L sit at the origin of chart {yi}"
                            ),
                        })
                    }
                }
            }
            out.l_reports.push((yi, report));
        }

        if !origin_singular {
            continue;
        }
        // A singular origin off the dominating component (or in a chart the
        // component misses) is untouched by its blow-up: the point persists
        // as an isolated singular point over the origin, with no chart to
        // build.
        let e1_through_origin =
            yc.e1.as_ref().filter(|gens| gens[1].constant_term().is_zero());
        let Some(e1) = e1_through_origin else {
            out.verdict = out.verdict.merge(LocusVerdict::Finite);
            continue;
        };
        let r = &e1[1];
        let Some(rv) = single_variable(r) else {
            return Err(BlowupError::E1NotCoordinatePair { chart: yi, residual: r.to_string() });
        };
        let center = [ychart.chart_var, rv];

        for &cv in &center {
            let zchart = blowup_chart(&ychart.strict, &center, cv, ychart.order)?;
            if zchart.exc_order >= 2 {
                return Err(BlowupError::OutsideSupportedRegime {
                    reason: format!(
                        "the strict transform is singular along the dominating component in \
                         chart {yi}"
                    ),
                });
            }
            let ratio_var = if cv == center[0] { center[1] } else { center[0] };
            let c: Vec<Poly> =
                (0..n).filter(|&v| v != ratio_var).map(|v| Poly::var(vars, v)).collect();
            let e2z = yc.e2.as_ref().and_then(|gens| strict_ideal(gens, &zchart, cv));
            let report = singular_locus_along(&zchart, &c, budget)?;
            out.verdict = out.verdict.merge(report.verdict);
            out.z_charts.push(ZChart { from_y_chart: yi, chart: zchart, ratio_var, c, e2z, report });
        }
    }
    Ok(out)
}

/// Pull coordinate equations through a blow-up chart and divide out the
/// exceptional factor (the strict transform of a coordinate subspace).
/// `None` when the result is the unit ideal, i.e. the subspace's strict
/// transform misses the chart.
fn strict_ideal(gens: &[Poly], chart: &BlowupChart, exc: usize) -> Option<Vec<Poly>> {
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let pulled = g.substitute(&chart.subs, None);
        let k = pulled.var_order(exc).expect("nonzero generator");
        let divided = pulled.div_var_power(exc, u16::try_from(k).unwrap());
        if divided.is_constant() {
            return None;
        }
        out.push(divided);
    }
    Some(out)
}

/// Multiplicity drop of a transverse hyperplane section: for a section `S`
/// through the origin, transverse to the curve, `f*S = S′ + a·E₂` with
/// `a = mult₀(X) − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityDrop {
    /// Multiplicity of the hypersurface at the origin.
    pub multiplicity: u32,
    /// Multiplicity of the component over the origin in the pulled-back
    /// section.
    pub a: u32,
}

/// Compute the multiplicity of the exceptional component over the origin in
/// the pullback of a hyperplane section transverse to the curve.
///
/// The section is solved for the curve parameter (requires a parameter term
/// — sections containing or tangent to the curve are rejected) and the
/// restricted equation's multiplicity is the genericity witness: it must
/// equal the ambient multiplicity `m`. The pullback order along the
/// component over the origin is then `m − 1` exactly: restricting to the
/// solved section and pulling back through any chart sends a monomial of
/// total degree `D` to `w^D·(ratios)`, so the length of the pulled-back
/// section at the generic point of that component is `ord(F|_S) − 1`.
pub fn multiplicity_drop(
    germ: &Germ3Fold,
    section: &Poly,
    order: u32,
) -> Result<MultiplicityDrop, BlowupError> {
    let sg = straighten(germ, order)?;
    let f = sg.f.poly();
    let m = sg.hypersurface_order();
    let exc_order = f
        .terms()
        .map(|(mono, _)| sg.curve_vars.iter().map(|&j| u32::from(mono[j])).sum::<u32>())
        .min()
        .expect("nonzero");
    debug_assert!(exc_order >= 1, "straightening certified containment");
    if exc_order >= 2 {
        return Err(BlowupError::SingularAlongCenter { exc_order });
    }

    let sec = sg.change.apply(section);
    if !sec.constant_term().is_zero() {
        return Err(BlowupError::SectionNotThroughOrigin);
    }
    let vars = &sg.vars;
    let s = sg.param_var;
    let mut unit = vec![0u16; vars.len()];
    unit[s] = 1;
    let c_s = sec.coeff(&unit);
    if c_s.is_zero() {
        if sec.in_coordinate_ideal(&sg.curve_vars) {
            return Err(BlowupError::SectionContainsCurve);
        }
        return Err(BlowupError::SectionNotGeneric {
            reason: "the section is tangent to the curve (no parameter term)".into(),
        });
    }

    // Solve the section for the parameter: s = τ(curve variables).
    let inv = -(qi(1) / c_s);
    let mut tau = Poly::zero(vars);
    for _ in 0..=order {
        let val = sec.subst_var(s, &tau, Some(order));
        let next = tau.add(&val.scale(&inv));
        if next == tau {
            break;
        }
        tau = next;
    }
    debug_assert!(sec.subst_var(s, &tau, Some(order)).is_zero(), "section solved for the parameter");

    let f_s = f.subst_var(s, &tau, Some(order));
    if f_s.is_zero() {
        return Err(BlowupError::SectionNotGeneric {
            reason: "the section is contained in the hypersurface".into(),
        });
    }
    let m_s = f_s.ord().expect("nonzero");
    if m_s != m {
        return Err(BlowupError::SectionNotGeneric {
            reason: format!("the section raises the multiplicity at the origin from {m} to {m_s}"),
        });
    }
    Ok(MultiplicityDrop { multiplicity: m, a: m - 1 })
}
