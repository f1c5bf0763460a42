//! Normal forms for three-fold germs whose hyperplane section `t = 0`
//! through the curve is Du Val of type D (curve meeting the chain end or a
//! fork arm) or A₃ (curve meeting the middle of the chain).
//!
//! Each reduction is a composition of three exact moves:
//!
//! * Weierstrass preparation in the square-carrying variable, recording the
//!   unit factor;
//! * curve-preserving shifts that absorb one monomial family into a
//!   principal term of the section;
//! * unit rescalings of a single variable.
//!
//! The result certifies `unit · (f ∘ change) = f_normal` at the working jet
//! order, together with the monomial families that are absent from
//! `f_normal`. All arithmetic is exact over the rationals; where the complex
//! normal form would rescale a coefficient to `1` or `2` by an irrational
//! root, the reduction keeps the coefficient as a rational scalar inside
//! `f_normal`, and the excluded families carry the invariant content.
//!
//! Supported shapes, in straightened coordinates with the deformation
//! variable `t` last:
//!
//! * [`Target::FdL`] — curve `(x, z, t)`, section `c₀x² + c₁y²z + c₂zⁿ⁻¹`
//!   (`n ≥ 4`). The family `t·yᵏ` is absorbed into `y²z`; for `n ≥ 5` the
//!   quadratic part of the deformation must vanish, else a `D₄` section
//!   exists through the curve and the stratum claim is rejected.
//! * [`Target::FdREven`] — curve `(x, y, t)`, section
//!   `c₀x² + c₁y²z + c₂yzᵐ` (`n = 2m`). The family `t·zᵏ` is absorbed into
//!   `yzᵐ`; this needs `k ≥ m`, and `k < m` contradicts the claimed meeting
//!   multiplicity, so it is rejected as a wrong stratum.
//! * [`Target::FdROddA`], [`Target::FdROddB`] — curve `(x, y, t)`, section
//!   `c₀x² + c₁y²z + c₂xzᵐ` (`n = 2m + 1`). The family `t·zᵏ` is absorbed
//!   into `xzᵐ` (needs `k > m`); the leftover deformation of `x` is rescaled
//!   to a single monomial `a·xzᵛt`. Variant A then removes the `yzt`
//!   monomial, variant B removes both `yzt` and `y²t`.
//!
//! [`normalize_a3_middle`] handles the A₃ case: curve `(x, y, t)`, section
//! A₃ with the curve meeting the middle exceptional curve (`d = 2`). The
//! germ is reduced to `x² + u₀y² + f_{≤3}(x, z, t) + f_{≥4}(x, z, t)` with
//! `u₀` a nonzero rational, `y` confined to the single monomial `y²`, and no
//! `t·zᵏ` family (such terms are absorbed into the `x·z²`-foot of the
//! section).

use std::fmt;

use num::{One, Zero};

use crate::algebra::change::CoordinateChange;
use crate::algebra::jet::Jet;
use crate::algebra::poly::{qi, Poly, Q, Vars};
use crate::algebra::weierstrass::{prepare, square_reduce, WeierstrassError};
use crate::blowup::{surface_blowup, BlowupError};
use crate::duval::{classify_duval, DuValError, DuValType};
use crate::germ::{straighten, Germ3Fold, GermError, SurfaceGerm};

/// Which normal form [`normalize`] should reduce to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// D-section, curve meeting the chain end: curve `(x, z, t)`.
    FdL,
    /// Even D-section, curve meeting a fork arm: curve `(x, y, t)`.
    FdREven,
    /// Odd D-section, fork arm; removes `t·zᵏ` and `yzt`.
    FdROddA,
    /// Odd D-section, fork arm; removes `t·zᵏ`, `yzt`, and `y²t`.
    FdROddB,
}

/// Tag of the achieved normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormTag {
    DFdl,
    DFdlN5Plus,
    DFdrEven,
    DFdrOddA,
    DFdrOddB,
    A3Middle,
}

impl FormTag {
    /// Stable identifier used in serialized output.
    pub fn as_str(&self) -> &'static str {
        match self {
            FormTag::DFdl => "D_FDl",
            FormTag::DFdlN5Plus => "D_FDl_n5plus",
            FormTag::DFdrEven => "D_FDr_even",
            FormTag::DFdrOddA => "D_FDr_odd_a",
            FormTag::DFdrOddB => "D_FDr_odd_b",
            FormTag::A3Middle => "A3_middle",
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalFormError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    DuVal(#[from] DuValError),
    #[error("the germ is not in the expected shape: {detail}")]
    WrongShape { detail: String },
    #[error("the germ is not general in the claimed stratum: {reason}")]
    WrongStratum { reason: String },
    #[error("the reduction is not available in rational arithmetic: {reason}")]
    UnsupportedShape { reason: String },
}

/// A monomial family certified absent from the normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedFamily {
    /// `x` appears only in the monomial `x²`.
    XOnlySquare,
    /// `x`-divisible monomials are `x²` or `x·zᵃtᵇ` (degree one in `x`, no `y`).
    XLinearZt,
    /// No monomial `t·vᵏ` for any `k ≥ 1` (`t` times a pure power of `v`).
    TLinearPure { var: usize },
    /// No degree-3 monomial divisible by `t` and free of `x`: the quadratic
    /// part of the deformation vanishes.
    QuadraticDeformation,
    /// The coefficient of `y·z·t` vanishes.
    TyzAbsent,
    /// The coefficient of `y²·t` vanishes.
    Ty2Absent,
    /// Monomials divisible by both `x` and `t` form exactly the single
    /// monomial `x·z^power·t` (or none, when `power` is `None`).
    SingleXDeformation { power: Option<u32> },
    /// `y` appears only in the monomial `y²`.
    YOnlySquare,
}

impl ExcludedFamily {
    /// Check the certificate against a polynomial over `x, y, z, t`.
    pub fn holds(&self, f: &Poly) -> bool {
        let deg = |m: &[u16]| m.iter().map(|&e| u32::from(e)).sum::<u32>();
        match *self {
            ExcludedFamily::XOnlySquare => f
                .terms()
                .all(|(m, _)| m[0] == 0 || (m[0] == 2 && deg(m) == 2)),
            ExcludedFamily::XLinearZt => f
                .terms()
                .all(|(m, _)| m[0] == 0 || (m[0] == 2 && deg(m) == 2) || (m[0] == 1 && m[1] == 0)),
            ExcludedFamily::TLinearPure { var } => f
                .terms()
                .all(|(m, _)| !(m[3] == 1 && m[var] >= 1 && deg(m) == 1 + u32::from(m[var]))),
            ExcludedFamily::QuadraticDeformation => f
                .terms()
                .all(|(m, _)| !(m[0] == 0 && m[3] >= 1 && deg(m) == 3)),
            ExcludedFamily::TyzAbsent => f.coeff(&[0, 1, 1, 1]).is_zero(),
            ExcludedFamily::Ty2Absent => f.coeff(&[0, 2, 0, 1]).is_zero(),
            ExcludedFamily::SingleXDeformation { power } => {
                let mut seen = false;
                for (m, _) in f.terms() {
                    if m[0] == 0 || m[3] == 0 {
                        continue;
                    }
                    let expected = match power {
                        Some(p) => m[0] == 1 && m[1] == 0 && u32::from(m[2]) == p && m[3] == 1,
                        None => false,
                    };
                    if !expected || seen {
                        return false;
                    }
                    seen = true;
                }
                power.is_none() || seen
            }
            ExcludedFamily::YOnlySquare => f
                .terms()
                .all(|(m, _)| m[1] == 0 || (m[1] == 2 && deg(m) == 2)),
        }
    }
}

impl fmt::Display for ExcludedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExcludedFamily::XOnlySquare => write!(f, "x only in x^2"),
            ExcludedFamily::XLinearZt => write!(f, "x-terms are x^2 or x*z^a*t^b"),
            ExcludedFamily::TLinearPure { var } => {
                let v = ["x", "y", "z", "t"][var];
                write!(f, "no t*{v}^k")
            }
            ExcludedFamily::QuadraticDeformation => write!(f, "quadratic deformation vanishes"),
            ExcludedFamily::TyzAbsent => write!(f, "no y*z*t"),
            ExcludedFamily::Ty2Absent => write!(f, "no y^2*t"),
            ExcludedFamily::SingleXDeformation { power: Some(p) } => {
                write!(f, "x-deformation is a single x*z^{p}*t")
            }
            ExcludedFamily::SingleXDeformation { power: None } => write!(f, "no x-deformation"),
            ExcludedFamily::YOnlySquare => write!(f, "y only in y^2"),
        }
    }
}

/// A certified normal form: `unit · (f ∘ change) = f_normal` at the jet
/// order, where `f` is the input equation in its original coordinates.
#[derive(Debug, Clone)]
pub struct NormalFormResult {
    pub tag: FormTag,
    pub f_normal: Jet,
    /// Change from the input coordinates to the normal coordinates.
    pub change: CoordinateChange,
    /// The accumulated unit factor.
    pub unit: Jet,
    /// Monomial families certified absent from `f_normal`.
    pub excluded: Vec<ExcludedFamily>,
    /// Du Val index of the `t = 0` section (`n` for `Dₙ`; `3` for A₃).
    pub n: u32,
}

impl NormalFormResult {
    /// Replay the certificate against the original equation.
    pub fn replays(&self, f_input: &Poly) -> bool {
        let moved = Jet::new(self.change.apply(f_input), self.f_normal.order());
        self.unit.mul(&moved).poly() == self.f_normal.poly()
    }

    /// Check every excluded family against `f_normal`.
    pub fn exclusions_hold(&self) -> bool {
        self.excluded.iter().all(|e| e.holds(self.f_normal.poly()))
    }
}

/// The A₃ normal form together with its degree split
/// `x² + u₀y² + f_{≤3} + f_{≥4}`.
#[derive(Debug, Clone)]
pub struct A3MiddleForm {
    pub result: NormalFormResult,
    /// Coefficient `u₀` of `y²` (`1` when the input admits it rationally).
    pub y_square_coeff: Q,
    /// Degree ≤ 3 part of the tail; free of `y`.
    pub f_le3: Poly,
    /// Degree ≥ 4 part of the tail; free of `y`.
    pub f_ge4: Poly,
}

impl A3MiddleForm {
    /// The cubic in `(z, t)` left after eliminating `x` by completing the
    /// square. In the normal form the coefficient of `x` is a series of
    /// order ≥ 2 (the quadric `x² + u₀y²` is diagonal and the section foot
    /// is `x·z²·unit`), so the square completion `x ↦ x − B/2` only shifts
    /// terms of degree ≥ 4 and the degree ≤ 3 part of the eliminated tail
    /// is exactly the `x`-free part of `f_le3`.
    pub fn criterion_cubic(&self) -> Poly {
        let vars = self.f_le3.vars();
        let mut out = Poly::zero(vars);
        for (m, c) in self.f_le3.terms() {
            if m[0] == 0 && m[1] == 0 {
                out = out.add(&Poly::monomial(vars, m, c.clone()));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Square test for quadratic parts restricted to hyperplanes through the curve.

/// Closed-form test: with `q = a₁x² + a₂y² + a₃z² + a₄xy + a₅xz + a₆yz` in
/// the roles `[x, y, z]`, the restriction `q(by + cz, y, z)` is a square (of
/// rank ≤ 1) for every `(b, c)` iff `a₁ = a₄ = a₅ = 0` and `4a₂a₃ = a₆²` —
/// which happens iff `q` itself has rank ≤ 1.
pub fn square_test_q2(q: &Poly, roles: [usize; 3]) -> bool {
    let n = q.vars().len();
    let mono = |pairs: &[(usize, u16)]| {
        let mut m = vec![0u16; n];
        for &(v, e) in pairs {
            m[v] += e;
        }
        m
    };
    let [x, y, z] = roles;
    let a1 = q.coeff(&mono(&[(x, 2)]));
    let a2 = q.coeff(&mono(&[(y, 2)]));
    let a3 = q.coeff(&mono(&[(z, 2)]));
    let a4 = q.coeff(&mono(&[(x, 1), (y, 1)]));
    let a5 = q.coeff(&mono(&[(x, 1), (z, 1)]));
    let a6 = q.coeff(&mono(&[(y, 1), (z, 1)]));
    a1.is_zero() && a4.is_zero() && a5.is_zero() && qi(4) * a2 * a3 == &a6 * &a6
}

/// Decide whether the general hyperplane section through the curve has
/// type A (its quadratic part has rank at least 2): straighten the curve to
/// an axis and sweep sections `x = b·y + c·z` over the integer grid
/// `0 ≤ b, c ≤ 4`, where `x, y, z` are the three coordinates vanishing on
/// the curve and the roles are taken among the remaining coordinates.
///
/// Exactness of the sweep: rank ≥ 2 is an open condition, so one grid point
/// with rank ≥ 2 settles the general section. Conversely the Gram entries of
/// the restricted quadratic are polynomials of degree ≤ 2 in `(b, c)`, so
/// its 2×2 minors have degree ≤ 4; if they vanish on the 5×5 grid they
/// vanish identically and the restriction is a square for every `(b, c)`.
pub fn is_general_section_a(germ: &Germ3Fold, order: u32) -> Result<bool, NormalFormError> {
    let sg = straighten(germ, order)?;
    let vars = sg.vars.clone();
    let [cv0, cv1, cv2] = sg.curve_vars;
    let rest = [cv1, cv2, sg.param_var];
    for b in 0..5i64 {
        for c in 0..5i64 {
            let image = Poly::var(&vars, cv1)
                .scale(&qi(b))
                .add(&Poly::var(&vars, cv2).scale(&qi(c)));
            let section = sg.f.poly().subst_var(cv0, &image, Some(order));
            let psi2 = section.homogeneous_part(2);
            if gram_rank(&psi2, rest) >= 2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Rank of the Gram matrix of a quadratic form in the three given variables.
fn gram_rank(q: &Poly, vs: [usize; 3]) -> usize {
    let n = q.vars().len();
    let entry = |i: usize, j: usize| {
        let mut m = vec![0u16; n];
        m[vs[i]] += 1;
        m[vs[j]] += 1;
        let c = q.coeff(&m);
        if i == j {
            c
        } else {
            c / qi(2)
        }
    };
    let mut g: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&r| !g[r][col].is_zero()) else {
            continue;
        };
        g.swap(rank, p);
        let inv = Q::one() / g[rank][col].clone();
        for v in g[rank].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = g[rank].clone();
        for (r, row) in g.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let lam = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                let t = pv * &lam;
                *v = &*v - &t;
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Reduction bookkeeping.

/// Tracks `f = unit · (f_input ∘ change)` through the reduction.
struct Reducer {
    f: Jet,
    change: CoordinateChange,
    unit: Jet,
}

impl Reducer {
    fn new(f: Jet, change: CoordinateChange) -> Reducer {
        let unit = Jet::one(f.vars(), f.order());
        Reducer { f, change, unit }
    }

    fn order(&self) -> u32 {
        self.f.order()
    }

    /// Apply a coordinate change to the running state.
    fn apply(&mut self, ch: &CoordinateChange) {
        self.f = Jet::new(ch.apply(self.f.poly()), self.order());
        self.unit = Jet::new(ch.apply(self.unit.poly()), self.order());
        self.change = self.change.compose(ch);
    }

    /// Multiply the running equation by a unit jet.
    fn times_unit(&mut self, u: &Jet) {
        self.f = self.f.mul(u);
        self.unit = self.unit.mul(u);
    }

    fn shift(&mut self, var: usize, amount: &Poly) {
        let ch = CoordinateChange::shift(self.f.vars(), var, amount, self.order())
            .expect("reduction shifts vanish at the origin");
        self.apply(&ch);
    }
}

// ---------------------------------------------------------------------------
// Shared helpers.

/// The family `t·vᵏ` (`k ≥ 1`) of `f`, returned as a polynomial in `v`
/// (the `t`-exponent dropped).
fn t_linear_pure(f: &Poly, v: usize, t: usize) -> Poly {
    let vars = f.vars();
    let mut out = Poly::zero(vars);
    for (m, c) in f.terms() {
        if m[t] != 1 || m[v] == 0 {
            continue;
        }
        let pure = m.iter().enumerate().all(|(i, &e)| i == v || i == t || e == 0);
        if pure {
            let mut mm = m.clone();
            mm[t] = 0;
            out = out.add(&Poly::monomial(vars, &mm, c.clone()));
        }
    }
    out
}

/// The family `v·zʲ` (`j ≥ 1`, nothing else) of `f`, returned as a
/// polynomial in `z`.
fn linear_foot(f: &Poly, v: usize, z: usize) -> Poly {
    let vars = f.vars();
    let mut out = Poly::zero(vars);
    for (m, c) in f.terms() {
        if m[v] != 1 || m[z] == 0 {
            continue;
        }
        let pure = m.iter().enumerate().all(|(i, &e)| i == v || i == z || e == 0);
        if pure {
            let mut mm = m.clone();
            mm[v] = 0;
            out = out.add(&Poly::monomial(vars, &mm, c.clone()));
        }
    }
    out
}

/// Quotient `b / a` of two series in the single variable `z`, at the jet
/// order; `None` when `a = 0` or `ord(a) > ord(b)`.
fn series_quotient(b: &Poly, a: &Poly, z: usize, order: u32) -> Option<Poly> {
    if b.is_zero() {
        return Some(Poly::zero(b.vars()));
    }
    let orda = a.var_order(z)?;
    let ordb = b.var_order(z).expect("nonzero polynomial has an order");
    if orda > ordb {
        return None;
    }
    let unit = a.div_var_power(z, orda as u16);
    let inv = Jet::new(unit, order).invert_unit();
    Some(b.div_var_power(z, orda as u16).mul(inv.poly()).truncate(order))
}

/// Square root of a unit jet with constant term 1, by Newton iteration.
fn sqrt_unit(g: &Jet) -> Jet {
    debug_assert!(g.poly().constant_term().is_one());
    let mut s = Jet::one(g.vars(), g.order());
    let half = qi(2).recip();
    let mut passes = 1u32;
    while (1u32 << passes) <= g.order() + 1 {
        passes += 1;
    }
    for _ in 0..=passes {
        s = s.add(&g.mul(&s.invert_unit())).scale(&half);
    }
    debug_assert_eq!(s.mul(&s).poly(), g.poly());
    s
}

/// Copy a polynomial supported on the `keep` variables into a three-variable
/// ring.
fn restrict_to(p: &Poly, keep: [usize; 3], target: &Vars) -> Poly {
    let mut out = Poly::zero(target);
    for (m, c) in p.terms() {
        debug_assert!(m.iter().enumerate().all(|(i, &e)| keep.contains(&i) || e == 0));
        let mm = [m[keep[0]], m[keep[1]], m[keep[2]]];
        out = out.add(&Poly::monomial(target, &mm, c.clone()));
    }
    out
}

// ---------------------------------------------------------------------------
// Section recognition.

struct SectionShape {
    /// Foot power: `n − 1` for the chain-end case, `m` for the fork cases.
    power: u32,
    /// Du Val index of the section.
    n: u32,
}

fn parse_section(section: &Poly, target: Target) -> Result<SectionShape, NormalFormError> {
    let mut c0 = Q::zero();
    let mut c1 = Q::zero();
    let mut cfoot = Q::zero();
    let mut power: Option<u16> = None;
    let describe = match target {
        Target::FdL => "c0*x^2 + c1*y^2*z + c2*z^(n-1) with curve (x, z, t)",
        Target::FdREven => "c0*x^2 + c1*y^2*z + c2*y*z^m with curve (x, y, t)",
        Target::FdROddA | Target::FdROddB => "c0*x^2 + c1*y^2*z + c2*x*z^m with curve (x, y, t)",
    };
    let reject = |what: String| NormalFormError::WrongShape {
        detail: format!("the t = 0 section must be {describe}; {what}"),
    };
    for (m, c) in section.terms() {
        debug_assert_eq!(m[3], 0, "section obtained by setting t = 0");
        if *m == [2, 0, 0, 0] {
            c0 = c.clone();
            continue;
        }
        if *m == [0, 2, 1, 0] {
            c1 = c.clone();
            continue;
        }
        let is_foot = match target {
            Target::FdL => m[0] == 0 && m[1] == 0 && m[2] >= 3,
            Target::FdREven => m[0] == 0 && m[1] == 1 && m[2] >= 2,
            Target::FdROddA | Target::FdROddB => m[0] == 1 && m[1] == 0 && m[2] >= 2,
        };
        if is_foot {
            if power.is_some() {
                return Err(reject("found two candidate foot monomials".to_string()));
            }
            power = Some(m[2]);
            cfoot = c.clone();
            continue;
        }
        return Err(reject(format!("found the extra monomial exponent {m:?}")));
    }
    if c0.is_zero() {
        return Err(reject("the x^2 term is missing".to_string()));
    }
    if c1.is_zero() {
        return Err(reject("the y^2*z term is missing".to_string()));
    }
    if cfoot.is_zero() || power.is_none() {
        return Err(reject("the foot monomial is missing".to_string()));
    }
    let power = u32::from(power.expect("checked above"));
    let n = match target {
        Target::FdL => power + 1,
        Target::FdREven => 2 * power,
        Target::FdROddA | Target::FdROddB => 2 * power + 1,
    };
    Ok(SectionShape { power, n })
}

// ---------------------------------------------------------------------------
// The D-strata reductions.

/// Reduce a germ whose `t = 0` section is an exact D-form to the normal
/// form of the given target, certifying the excluded monomial families.
pub fn normalize(
    germ: &Germ3Fold,
    target: Target,
    order: u32,
) -> Result<NormalFormResult, NormalFormError> {
    let sg = straighten(germ, order)?;
    let vars = sg.vars.clone();
    let expected_param = match target {
        Target::FdL => 1,
        _ => 2,
    };
    if sg.param_var != expected_param {
        return Err(NormalFormError::WrongShape {
            detail: format!(
                "the straightened curve is the {}-axis, expected the {}-axis",
                vars.name(sg.param_var),
                vars.name(expected_param)
            ),
        });
    }
    if !sg.f.poly().coeff(&[0, 0, 0, 1]).is_zero() {
        return Err(NormalFormError::WrongStratum {
            reason: "the equation contains the monomial t, so the total space is smooth \
                     and the general section through the curve is smooth"
                .to_string(),
        });
    }
    let mut r = Reducer::new(sg.f.clone(), sg.change.clone());
    let shape = parse_section(&r.f.poly().set_var(3, &Q::zero()), target)?;
    let m = shape.power;

    // Weierstrass step: isolate x² (chain-end and even fork cases), or
    // x² + c₂xzᵐ (odd fork case, where the x-linear section term is kept and
    // only the t-carrying half of the linear coefficient is absorbed).
    match target {
        Target::FdL | Target::FdREven => {
            let red = square_reduce(&r.f, 0)?;
            r.apply(&red.change);
            r.times_unit(&red.unit);
        }
        Target::FdROddA | Target::FdROddB => {
            let prep = prepare(&r.f, 0)?;
            if prep.d != 2 {
                return Err(NormalFormError::WrongShape {
                    detail: format!("expected x-order 2, found {}", prep.d),
                });
            }
            let a1 = prep.coeffs[1].poly().clone();
            let keep = a1.set_var(3, &Q::zero());
            debug_assert_eq!(keep.var_order(2), Some(m), "the kept part is the foot");
            debug_assert_eq!(keep.terms().count(), 1, "the kept part is one monomial");
            let delta = keep.sub(&a1).scale(&qi(2).recip());
            let ch = CoordinateChange::shift(&vars, 0, &delta, order)
                .expect("preparation coefficients have no constant term");
            let unit_moved = Jet::new(ch.apply(prep.unit.poly()), order);
            r.apply(&ch);
            r.times_unit(&unit_moved.invert_unit());
        }
    }

    // Linear-deformation check: a surviving quadratic `ty`, `tz` or `t²`
    // makes the total space a cA point, whose general section through the
    // curve has type A — not the claimed D stratum.
    for quad in [[0u16, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 2]] {
        if !r.f.poly().coeff(&quad).is_zero() {
            return Err(NormalFormError::WrongStratum {
                reason: "the deformation has a linear part, so the total space is a cA \
                         point and its general section through the curve has type A"
                    .to_string(),
            });
        }
    }

    // Absorption step: fold the t-linear pure-power family into the matching
    // section term by a curve-preserving shift.
    match target {
        Target::FdL => {
            let g = t_linear_pure(r.f.poly(), 1, 3);
            if !g.is_zero() {
                let k = g.var_order(1).expect("nonzero");
                debug_assert!(k >= 2, "k = 1 is excluded by the linear check");
                let c1 = r.f.poly().coeff(&[0, 2, 1, 0]);
                let unit = g.div_var_power(1, k as u16);
                let head = Poly::monomial(&vars, &[0, (k - 2) as u16, 0, 1], -(qi(1) / c1));
                r.shift(2, &head.mul(&unit).truncate(order));
            }
            debug_assert!(t_linear_pure(r.f.poly(), 1, 3).is_zero());
        }
        Target::FdREven => {
            let g = t_linear_pure(r.f.poly(), 2, 3);
            if !g.is_zero() {
                let k = g.var_order(2).expect("nonzero");
                if k < m {
                    return Err(NormalFormError::WrongStratum {
                        reason: format!(
                            "the deformation carries t·z^{k} with {k} < m = {m}: the \
                             exceptional multiplicity would drop below the claimed \
                             fork position"
                        ),
                    });
                }
                let c2 = r.f.poly().coeff(&[0, 1, m as u16, 0]);
                let unit = g.div_var_power(2, k as u16);
                let head = Poly::monomial(&vars, &[0, 0, (k - m) as u16, 1], -(qi(1) / c2));
                r.shift(1, &head.mul(&unit).truncate(order));
            }
            debug_assert!(t_linear_pure(r.f.poly(), 2, 3).is_zero());
        }
        Target::FdROddA | Target::FdROddB => {
            let g = t_linear_pure(r.f.poly(), 2, 3);
            if !g.is_zero() {
                let k = g.var_order(2).expect("nonzero");
                if k < m {
                    return Err(NormalFormError::WrongStratum {
                        reason: format!(
                            "the deformation carries t·z^{k} with {k} < m = {m}: the \
                             exceptional multiplicity would drop below the claimed \
                             fork position"
                        ),
                    });
                }
                if k == m {
                    return Err(NormalFormError::WrongStratum {
                        reason: format!(
                            "the deformation carries t·z^{m} with exponent exactly m: \
                             the blown-up space acquires singular points along the \
                             exceptional ruling, which contradicts the claimed odd \
                             fork position"
                        ),
                    });
                }
                let c2 = r.f.poly().coeff(&[1, 0, m as u16, 0]);
                let unit = g.div_var_power(2, k as u16);
                let head = Poly::monomial(&vars, &[0, 0, (k - m) as u16, 1], -(qi(1) / c2));
                r.shift(0, &head.mul(&unit).truncate(order));
            }
            debug_assert!(t_linear_pure(r.f.poly(), 2, 3).is_zero());

            // Rescale t by a unit series in z so that the x-deformation
            // becomes a single monomial a·x·zᵛ·t.
            let family = x_deformation(r.f.poly());
            if !family.is_zero() {
                let nu = family.var_order(2).expect("nonzero");
                debug_assert!(nu >= 1, "k > m leaves a positive z-power");
                let w1 = family.div_var_power(2, nu as u16);
                let a = w1.constant_term();
                let w1_inv = Jet::new(w1, order).invert_unit();
                let mut subs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(&vars, i)).collect();
                subs[3] = Poly::var(&vars, 3).mul(&w1_inv.poly().scale(&a)).truncate(order);
                let ch = CoordinateChange::new(&vars, subs, order)
                    .expect("unit rescaling of t is invertible");
                r.apply(&ch);
            }

            // Remove the y·z·t monomial by shifting y along t.
            let byz = r.f.poly().coeff(&[0, 1, 1, 1]);
            if !byz.is_zero() {
                let c1 = r.f.poly().coeff(&[0, 2, 1, 0]);
                let s = Poly::monomial(&vars, &[0, 0, 0, 1], -(byz / (qi(2) * c1)));
                r.shift(1, &s);
            }

            if target == Target::FdROddB {
                // Remove the y²·t monomial by shifting z along t.
                let by2 = r.f.poly().coeff(&[0, 2, 0, 1]);
                if !by2.is_zero() {
                    let c1 = r.f.poly().coeff(&[0, 2, 1, 0]);
                    let s = Poly::monomial(&vars, &[0, 0, 0, 1], -(by2 / c1));
                    r.shift(2, &s);
                }
            }
        }
    }

    // Certification and tagging.
    let (tag, excluded) = match target {
        Target::FdL => {
            let mut ex = vec![ExcludedFamily::XOnlySquare, ExcludedFamily::TLinearPure { var: 1 }];
            if shape.n >= 5 {
                let quadratic_survives = r.f.poly().terms().any(|(mm, _)| {
                    mm[0] == 0 && mm[3] >= 1 && mm.iter().map(|&e| u32::from(e)).sum::<u32>() == 3
                });
                if quadratic_survives {
                    return Err(NormalFormError::WrongStratum {
                        reason: "the quadratic part of the deformation survives, so a D4 \
                                 section exists through the curve and the claimed section \
                                 type is not the general one"
                            .to_string(),
                    });
                }
                ex.push(ExcludedFamily::QuadraticDeformation);
                (FormTag::DFdlN5Plus, ex)
            } else {
                (FormTag::DFdl, ex)
            }
        }
        Target::FdREven => (
            FormTag::DFdrEven,
            vec![ExcludedFamily::XOnlySquare, ExcludedFamily::TLinearPure { var: 2 }],
        ),
        Target::FdROddA => {
            let family = x_deformation(r.f.poly());
            let power = family.var_order(2);
            (
                FormTag::DFdrOddA,
                vec![
                    ExcludedFamily::XLinearZt,
                    ExcludedFamily::TLinearPure { var: 2 },
                    ExcludedFamily::TyzAbsent,
                    ExcludedFamily::SingleXDeformation { power },
                ],
            )
        }
        Target::FdROddB => (
            FormTag::DFdrOddB,
            vec![
                ExcludedFamily::XLinearZt,
                ExcludedFamily::TLinearPure { var: 2 },
                ExcludedFamily::TyzAbsent,
                ExcludedFamily::Ty2Absent,
            ],
        ),
    };
    debug_assert!(excluded.iter().all(|e| e.holds(r.f.poly())));
    Ok(NormalFormResult {
        tag,
        f_normal: r.f,
        change: r.change,
        unit: r.unit,
        excluded,
        n: shape.n,
    })
}

/// The monomials of `f` divisible by both `x` and `t`, as a polynomial in
/// `z` (all such monomials are `x·zʲ·t` at the points this is called).
fn x_deformation(f: &Poly) -> Poly {
    let vars = f.vars();
    let mut out = Poly::zero(vars);
    for (m, c) in f.terms() {
        if m[0] == 0 || m[3] == 0 {
            continue;
        }
        debug_assert_eq!(*m, vec![1, 0, m[2], 1], "x-deformation family is x·z^j·t");
        out = out.add(&Poly::monomial(vars, &[0, 0, m[2], 0], c.clone()));
    }
    out
}

// ---------------------------------------------------------------------------
// The A₃ middle reduction.

/// Reduce a germ whose `t = 0` section is A₃ with the curve meeting the
/// middle exceptional curve. The normal form is
/// `x² + u₀y² + f_{≤3}(x, z, t) + f_{≥4}(x, z, t)` with `y` confined to `y²`
/// and no `t·zᵏ` family.
pub fn normalize_a3_middle(germ: &Germ3Fold, order: u32) -> Result<A3MiddleForm, NormalFormError> {
    let sg = straighten(germ, order)?;
    let vars = sg.vars.clone();
    if sg.param_var != 2 {
        return Err(NormalFormError::WrongShape {
            detail: format!(
                "the straightened curve is the {}-axis, expected the {}-axis",
                vars.name(sg.param_var),
                vars.name(2)
            ),
        });
    }
    if !sg.f.poly().coeff(&[0, 0, 0, 1]).is_zero() {
        return Err(NormalFormError::WrongStratum {
            reason: "the equation contains the monomial t, so the total space is smooth \
                     and the general section through the curve is smooth"
                .to_string(),
        });
    }
    let mut r = Reducer::new(sg.f.clone(), sg.change.clone());

    // Section checks: type A₃ and middle position (d = 2).
    let section = r.f.poly().set_var(3, &Q::zero());
    let uvw = Vars::uvw();
    let s3 = restrict_to(&section, [0, 1, 2], &uvw);
    let ty = classify_duval(&Jet::new(s3.clone(), order))?;
    if ty != DuValType::A(3) {
        return Err(NormalFormError::WrongShape {
            detail: format!("the t = 0 section has type {ty}, expected A3"),
        });
    }
    let sblow = surface_blowup(
        &SurfaceGerm {
            vars: uvw.clone(),
            g: s3,
            curve: vec![Poly::var(&uvw, 0), Poly::var(&uvw, 1)],
        },
        order,
    )?;
    if sblow.decomp.d != 2 {
        return Err(NormalFormError::WrongShape {
            detail: format!(
                "the curve meets the section's exceptional locus with multiplicity {}, \
                 expected the middle position d = 2",
                sblow.decomp.d
            ),
        });
    }
    for (m, _) in section.homogeneous_part(2).terms() {
        if m[2] >= 1 {
            return Err(NormalFormError::WrongShape {
                detail: "the section quadratic involves the curve parameter, which is \
                         incompatible with the middle position"
                    .to_string(),
            });
        }
    }

    // Pick a rational mix of the two transverse coordinates that exposes a
    // square on y and moves the z-feet onto x; a following shear
    // x ↦ x − γ(z)·y then clears the y-feet exactly. Both moves preserve
    // the curve (x, y, t).
    let candidates: [[[i64; 2]; 2]; 9] = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 1], [0, 1]],
        [[1, 0], [1, 1]],
        [[1, -1], [0, 1]],
        [[1, 0], [-1, 1]],
        [[1, 1], [1, -1]],
        [[1, 2], [0, 1]],
        [[2, 1], [1, 1]],
    ];
    let mut committed = false;
    for cand in candidates {
        let mut mat = vec![vec![Q::zero(); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                mat[i][j] = qi(cand[i][j]);
            }
        }
        mat[2][2] = Q::one();
        mat[3][3] = Q::one();
        let ch = CoordinateChange::linear(&vars, &mat, order).expect("unimodular candidate");
        let trial = ch.apply(r.f.poly());
        if trial.coeff(&[0, 2, 0, 0]).is_zero() {
            continue;
        }
        let a = linear_foot(&trial, 0, 2);
        let b = linear_foot(&trial, 1, 2);
        let mix = if b.is_zero() {
            None
        } else {
            let Some(gamma) = series_quotient(&b, &a, 2, order) else {
                continue;
            };
            let mut subs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(&vars, i)).collect();
            subs[0] = subs[0].sub(&Poly::var(&vars, 1).mul(&gamma).truncate(order));
            let shear = CoordinateChange::new(&vars, subs, order)
                .expect("adding a y-multiple to x is invertible");
            if shear.apply(&trial).coeff(&[0, 2, 0, 0]).is_zero() {
                continue;
            }
            Some(shear)
        };
        r.apply(&ch);
        if let Some(shear) = mix {
            r.apply(&shear);
        }
        debug_assert!(linear_foot(r.f.poly(), 1, 2).is_zero());
        committed = true;
        break;
    }
    if !committed {
        return Err(NormalFormError::UnsupportedShape {
            reason: "no unimodular mix of the transverse coordinates exposes a square \
                     on y together with a dominant z-foot on x"
                .to_string(),
        });
    }

    // Isolate y². The completion shift is curve-preserving: the curve lies
    // in the three-fold, so the equation has no pure powers of z, and after
    // the shear it has no y-linear pure-z terms either; hence the linear
    // coefficient of the y-preparation lies in the ideal (x, t).
    {
        let prep = prepare(&r.f, 1)?;
        if prep.d != 2 {
            return Err(NormalFormError::WrongShape {
                detail: format!("expected y-order 2, found {}", prep.d),
            });
        }
        let stray = prep.coeffs[1].poly().set_var(0, &Q::zero()).set_var(3, &Q::zero());
        if !stray.is_zero() {
            return Err(NormalFormError::UnsupportedShape {
                reason: "the square completion on y would move the curve".to_string(),
            });
        }
    }
    let red = square_reduce(&r.f, 1)?;
    r.apply(&red.change);
    r.times_unit(&red.unit);
    debug_assert!(r.f.poly().terms().all(|(m, _)| m[1] == 0 || *m == [0, 2, 0, 0]));

    // Normalize the x-part of the y-free remainder: Weierstrass on x, then a
    // shift by the t-carrying half of the linear coefficient only — the
    // pure-z half is the section's foot and must stay.
    let y2 = Poly::monomial(&vars, &[0, 2, 0, 0], Q::one());
    let c_part = r.f.poly().sub(&y2);
    let prep2 = prepare(&Jet::new(c_part, order), 0).map_err(|e| match e {
        WeierstrassError::NotPivotRegular { .. } => NormalFormError::WrongShape {
            detail: "the y-free remainder has no x² term".to_string(),
        },
        other => NormalFormError::Weierstrass(other),
    })?;
    if prep2.d != 2 {
        return Err(NormalFormError::WrongShape {
            detail: format!("expected x-order 2 in the remainder, found {}", prep2.d),
        });
    }
    let b2 = prep2.coeffs[1].poly().clone();
    let b2_foot = b2.set_var(3, &Q::zero());
    let b2_t = b2.sub(&b2_foot);
    let w_unit = if b2_t.is_zero() {
        prep2.unit.clone()
    } else {
        let ch = CoordinateChange::shift(&vars, 0, &b2_t.scale(&qi(-2).recip()), order)
            .expect("the t-carrying shift vanishes at the origin");
        let moved = Jet::new(ch.apply(prep2.unit.poly()), order);
        r.apply(&ch);
        moved
    };
    r.times_unit(&w_unit.invert_unit());
    if b2_foot.var_order(2) != Some(2) {
        return Err(NormalFormError::WrongShape {
            detail: "the section foot x·z²·(unit) is missing after reduction, which \
                     contradicts the A3 middle assumption"
                .to_string(),
        });
    }

    // Absorb the t-linear pure-z family into the foot.
    let g = t_linear_pure(r.f.poly(), 2, 3);
    if !g.is_zero() {
        let k = g.var_order(2).expect("nonzero");
        if k < 2 {
            return Err(NormalFormError::WrongStratum {
                reason: "the deformation contains the curve parameter linearly, so the \
                         general section through the curve is A1"
                    .to_string(),
            });
        }
        let q = series_quotient(&g, &b2_foot, 2, order).expect("the foot has order 2");
        let s = Poly::var(&vars, 3).mul(&q).neg().truncate(order);
        r.shift(0, &s);
        debug_assert!(t_linear_pure(r.f.poly(), 2, 3).is_zero());
    }

    // Rescale y by the square root of its coefficient series so that y²
    // carries a single rational scalar.
    let mut uy = Poly::zero(&vars);
    for (m, c) in r.f.poly().terms() {
        if m[1] == 0 {
            continue;
        }
        debug_assert_eq!(m[1], 2, "y is confined to y²-carrying monomials");
        let mut mm = m.clone();
        mm[1] = 0;
        uy = uy.add(&Poly::monomial(&vars, &mm, c.clone()));
    }
    let u0 = uy.constant_term();
    debug_assert!(!u0.is_zero());
    if !uy.is_constant() {
        let ratio = Jet::new(uy.scale(&(Q::one() / &u0)), order).invert_unit();
        let sigma = sqrt_unit(&ratio);
        let mut subs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(&vars, i)).collect();
        subs[1] = Poly::var(&vars, 1).mul(sigma.poly()).truncate(order);
        let ch = CoordinateChange::new(&vars, subs, order).expect("unit rescaling of y");
        r.apply(&ch);
    }

    let head = Poly::monomial(&vars, &[2, 0, 0, 0], Q::one())
        .add(&Poly::monomial(&vars, &[0, 2, 0, 0], u0.clone()));
    let tail = r.f.poly().sub(&head);
    let mut f_le3 = Poly::zero(&vars);
    let mut f_ge4 = Poly::zero(&vars);
    for (m, c) in tail.terms() {
        debug_assert_eq!(m[1], 0, "the tail is y-free");
        let part = Poly::monomial(&vars, m, c.clone());
        if m.iter().map(|&e| u32::from(e)).sum::<u32>() <= 3 {
            f_le3 = f_le3.add(&part);
        } else {
            f_ge4 = f_ge4.add(&part);
        }
    }

    let excluded = vec![ExcludedFamily::YOnlySquare, ExcludedFamily::TLinearPure { var: 2 }];
    debug_assert!(excluded.iter().all(|e| e.holds(r.f.poly())));
    Ok(A3MiddleForm {
        result: NormalFormResult {
            tag: FormTag::A3Middle,
            f_normal: r.f,
            change: r.change,
            unit: r.unit,
            excluded,
            n: 3,
        },
        y_square_coeff: u0,
        f_le3,
        f_ge4,
    })
}
