//! Linear-factor detection over ℂ for low-degree polynomials.
//!
//! A polynomial of total degree ≤ 3 is reducible over ℂ exactly when it has
//! an affine-linear factor, and a homogeneous cubic is of the form
//! `g·h²` (h linear) exactly when some linear form divides it together with
//! one well-chosen partial derivative. Both questions reduce to asking
//! whether a system of polynomial equations in the unknown coefficients of
//! the linear form has a complex solution, which the Gröbner engine answers
//! exactly.

use super::groebner::{GbBudget, GbError};
use super::ideal::{fresh_var_name, has_common_zero};
use super::poly::{Poly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("total degree {found} exceeds the supported bound {bound} for factor queries")]
    DegreeTooLarge { found: u32, bound: u32 },
    #[error("expected a homogeneous polynomial of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error(transparent)]
    Budget(#[from] GbError),
}

/// Does some linear combination `v_p + Σ a_j·v_j (+ c)` of the active
/// variables divide `f`? Charts run over which active variable is monic.
/// With `with_derivative`, also require the pivot derivative to vanish on
/// the zero set (divisibility by the square).
fn linear_divisor_exists(
    f: &Poly,
    active: &[usize],
    affine: bool,
    with_derivative: bool,
    budget: &mut GbBudget,
) -> Result<bool, GbError> {
    let ambient = f.vars().clone();
    for (chart, &pivot) in active.iter().enumerate() {
        // Unknown coefficients: one per later active variable, plus the
        // constant term in the affine case.
        let later: Vec<usize> = active[chart + 1..].to_vec();
        let mut param_names: Vec<String> = Vec::new();
        let mut taken = ambient.clone();
        for _ in &later {
            let n = fresh_var_name(&taken, "a");
            taken = taken.extend(vec![n.clone()]);
            param_names.push(n);
        }
        let const_name = if affine {
            let n = fresh_var_name(&taken, "c");
            taken = taken.extend(vec![n.clone()]);
            Some(n)
        } else {
            None
        };
        let ext = taken;
        let lift_map: Vec<usize> = (0..ambient.len()).collect();
        // Substitute pivot -> -(Σ a_j·v_j + c).
        let mut image = Poly::zero(&ext);
        for (k, &j) in later.iter().enumerate() {
            let a = Poly::var(&ext, ext.index_of(&param_names[k]).unwrap());
            let vj = Poly::var(&ext, j);
            image = image.add(&a.mul(&vj));
        }
        if let Some(cn) = &const_name {
            image = image.add(&Poly::var(&ext, ext.index_of(cn).unwrap()));
        }
        image = image.neg();

        let mut targets = vec![f.clone()];
        if with_derivative {
            targets.push(f.derivative(pivot));
        }
        let mut system: Vec<Poly> = Vec::new();
        for t in &targets {
            let lifted = t.lift(&ext, &lift_map);
            let substituted = lifted.subst_var(pivot, &image, None);
            system.extend(coefficients_in_ambient(&substituted, ambient.len()));
        }
        let n_params = param_names.len() + const_name.iter().count();
        if n_params == 0 {
            if system.iter().all(|p| p.is_zero()) {
                return Ok(true);
            }
            continue;
        }
        // Project the coefficient system onto the parameter variables.
        let pvars = Vars::new(
            (ambient.len()..ext.len())
                .map(|i| ext.name(i).to_string())
                .collect::<Vec<_>>(),
        );
        let mut proj: Vec<Option<usize>> = vec![None; ambient.len()];
        proj.extend((0..n_params).map(Some));
        let system: Vec<Poly> = system.iter().map(|p| p.project(&pvars, &proj)).collect();
        if system.iter().all(|p| p.is_zero()) {
            return Ok(true);
        }
        let nonzero: Vec<Poly> = system.into_iter().filter(|p| !p.is_zero()).collect();
        if has_common_zero(&nonzero, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Group a polynomial over `ambient ++ params` by its ambient monomial;
/// returns the coefficient polynomials (in the full extended ring, but
/// involving only parameter variables).
fn coefficients_in_ambient(p: &Poly, n_ambient: usize) -> Vec<Poly> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let ambient_part: Vec<u16> = m[..n_ambient].to_vec();
        let mut param_mono = m.clone();
        for e in param_mono.iter_mut().take(n_ambient) {
            *e = 0;
        }
        let entry = groups
            .entry(ambient_part)
            .or_insert_with(|| Poly::zero(p.vars()));
        *entry = entry.add(&Poly::monomial(p.vars(), &param_mono, c.clone()));
    }
    groups.into_values().collect()
}

/// Does a (homogeneous) linear form in the active variables divide the
/// homogeneous polynomial `f`?
pub fn homogeneous_linear_factor_exists(
    f: &Poly,
    active: &[usize],
    budget: &mut GbBudget,
) -> Result<bool, FactorError> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.total_degree().unwrap();
    if f.ord() != Some(d) {
        return Err(FactorError::NotHomogeneous { expected: d });
    }
    Ok(linear_divisor_exists(f, active, false, false, budget)?)
}

/// Is the homogeneous cubic `q` of the form `g·h²` with `h` a nonzero
/// linear form in the active variables (g linear or, when `q = 0`, zero)?
pub fn square_linear_divisor_exists(
    q: &Poly,
    active: &[usize],
    budget: &mut GbBudget,
) -> Result<bool, FactorError> {
    if q.is_zero() {
        return Ok(true);
    }
    if q.ord() != Some(3) || q.total_degree() != Some(3) {
        return Err(FactorError::NotHomogeneous { expected: 3 });
    }
    Ok(linear_divisor_exists(q, active, false, true, budget)?)
}

/// Is `f` (total degree ≤ 3, vanishing at the origin) reducible over ℂ —
/// equivalently, does `V(f)` contain a proper algebraic component through
/// the origin? The zero polynomial counts as reducible.
pub fn proper_component_through_origin(
    f: &Poly,
    active: &[usize],
    budget: &mut GbBudget,
) -> Result<bool, FactorError> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.total_degree().unwrap();
    if d > 3 {
        return Err(FactorError::DegreeTooLarge { found: d, bound: 3 });
    }
    if d <= 1 {
        return Ok(false);
    }
    // Degree 2 or 3: reducible over ℂ iff an affine-linear factor exists.
    Ok(linear_divisor_exists(f, active, true, false, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn p(vars: &Vars, s: &str) -> Poly {
        parse_poly(vars, s).unwrap()
    }

    #[test]
    fn complex_factors_are_found() {
        // u² + v² = (u + iv)(u - iv): reducible over ℂ though not over ℚ.
        let v = Vars::uvw();
        let mut b = GbBudget::standard();
        let f = p(&v, "u^2 + v^2");
        assert!(homogeneous_linear_factor_exists(&f, &[0, 1, 2], &mut b).unwrap());
        assert!(proper_component_through_origin(&f, &[0, 1, 2], &mut b).unwrap());
    }

    #[test]
    fn irreducible_cubics_are_rejected() {
        let v = Vars::new(vec!["z", "t"]);
        let mut b = GbBudget::standard();
        // The cuspidal cubic t² - z³ is irreducible.
        let f = p(&v, "t^2 - z^3");
        assert!(!proper_component_through_origin(&f, &[0, 1], &mut b).unwrap());
    }

    #[test]
    fn products_with_unit_factors_count_as_reducible() {
        let v = Vars::new(vec!["z", "t"]);
        let mut b = GbBudget::standard();
        // (1 + z)·t²: reducible; the component {t = 0} passes the origin.
        let f = p(&v, "t^2 + z*t^2");
        assert!(proper_component_through_origin(&f, &[0, 1], &mut b).unwrap());
    }

    #[test]
    fn pure_squares_and_products() {
        let v = Vars::new(vec!["z", "t"]);
        let mut b = GbBudget::standard();
        assert!(proper_component_through_origin(&p(&v, "t^2"), &[0, 1], &mut b).unwrap());
        assert!(proper_component_through_origin(&p(&v, "z*t"), &[0, 1], &mut b).unwrap());
        assert!(proper_component_through_origin(&p(&v, "t^2 - z^2"), &[0, 1], &mut b).unwrap());
        // Degree-1 polynomials are irreducible.
        assert!(!proper_component_through_origin(&p(&v, "t"), &[0, 1], &mut b).unwrap());
    }

    #[test]
    fn degree_bound_is_enforced() {
        let v = Vars::new(vec!["z", "t"]);
        let mut b = GbBudget::standard();
        let f = p(&v, "t^4 + z^4");
        assert!(matches!(
            proper_component_through_origin(&f, &[0, 1], &mut b),
            Err(FactorError::DegreeTooLarge { found: 4, bound: 3 })
        ));
    }

    #[test]
    fn square_linear_divisors_of_cubics() {
        let v = Vars::uvw();
        let mut b = GbBudget::standard();
        // v²w has the square divisor v².
        assert!(square_linear_divisor_exists(&p(&v, "v^2*w"), &[0, 1, 2], &mut b).unwrap());
        // (v+w)²·u too, in a skew line.
        let q = p(&v, "(v + w)^2*u");
        assert!(square_linear_divisor_exists(&q, &[0, 1, 2], &mut b).unwrap());
        // v²w + w³ = w(v+iw)(v-iw): three distinct lines, no square.
        assert!(!square_linear_divisor_exists(&p(&v, "v^2*w + w^3"), &[0, 1, 2], &mut b).unwrap());
        // u³ + v³ + w³ is smooth (Fermat): no square divisor.
        let q = p(&v, "u^3 + v^3 + w^3");
        assert!(!square_linear_divisor_exists(&q, &[0, 1, 2], &mut b).unwrap());
        // A perfect cube certainly has one.
        assert!(square_linear_divisor_exists(&p(&v, "u^3"), &[0, 1, 2], &mut b).unwrap());
    }

    #[test]
    fn inhomogeneous_input_is_rejected_for_homogeneous_queries() {
        let v = Vars::uvw();
        let mut b = GbBudget::standard();
        let f = p(&v, "u^2 + v^3");
        assert!(matches!(
            square_linear_divisor_exists(&f, &[0, 1, 2], &mut b),
            Err(FactorError::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn active_variable_restriction_matters() {
        // y²z + z³ viewed in 4 ambient variables, active {y, z} only.
        let v = Vars::xyzt();
        let mut b = GbBudget::standard();
        let q = p(&v, "y^2*z + z^3");
        assert!(!square_linear_divisor_exists(&q, &[1, 2], &mut b).unwrap());
        let q = p(&v, "y^2*z");
        assert!(square_linear_divisor_exists(&q, &[1, 2], &mut b).unwrap());
    }
}
