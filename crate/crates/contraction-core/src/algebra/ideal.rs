//! Ideal-theoretic operations built on the Gröbner engine.
//!
//! Saturation uses the Rabinowitsch trick (adjoin `1 - s·g`, eliminate `s`),
//! intersection the standard `t·I + (1-t)·J` construction. Geometric
//! queries (`has_common_zero`, `variety_contained_in_zero_set`) are answered
//! over ℂ via the Nullstellensatz: a proper ideal of ℚ[x] has a common
//! complex zero.

use super::groebner::{
    elimination_ideal, groebner, in_ideal, is_unit_ideal, staircase_dimension, GbBudget, GbError,
};
use super::poly::{MonomialOrder, Poly, Vars};


/// A variable name not clashing with any existing one.
pub fn fresh_var_name(vars: &Vars, base: &str) -> String {
    if vars.index_of(base).is_none() {
        return base.to_string();
    }
    for i in 0.. {
        let name = format!("{base}{i}");
        if vars.index_of(&name).is_none() {
            return name;
        }
    }
    unreachable!()
}

/// Prepend an auxiliary variable: returns the extended list, the lift map
/// old→new (shift by one), and the projection map back.
fn prepend_var(vars: &Vars, base: &str) -> (Vars, Vec<usize>, Vec<Option<usize>>) {
    let name = fresh_var_name(vars, base);
    let mut names: Vec<String> = vec![name];
    names.extend(vars.names().iter().cloned());
    let ext = Vars::new(names);
    let lift: Vec<usize> = (0..vars.len()).map(|i| i + 1).collect();
    let mut proj: Vec<Option<usize>> = vec![None];
    proj.extend((0..vars.len()).map(Some));
    (ext, lift, proj)
}

/// True if the generators have a common zero over ℂ.
pub fn has_common_zero(gens: &[Poly], budget: &mut GbBudget) -> Result<bool, GbError> {
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(true);
    }
    let gb = groebner(gens, MonomialOrder::GrevLex, budget)?;
    Ok(!is_unit_ideal(&gb))
}

/// True if every common zero of `gens` is a zero of `g`
/// (i.e. `V(gens) ⊆ V(g)`, equivalently `g ∈ √(gens)`).
pub fn variety_contained_in_zero_set(
    gens: &[Poly],
    g: &Poly,
    budget: &mut GbBudget,
) -> Result<bool, GbError> {
    let vars = g.vars();
    let (ext, lift, _) = prepend_var(vars, "s_");
    let mut sys: Vec<Poly> = gens.iter().map(|p| p.lift(&ext, &lift)).collect();
    let s = Poly::var(&ext, 0);
    let one = Poly::one(&ext);
    sys.push(one.sub(&s.mul(&g.lift(&ext, &lift))));
    Ok(!has_common_zero(&sys, budget)?)
}

/// Saturation `(I : g^∞)` as a reduced basis in the original variables.
pub fn saturate(gens: &[Poly], g: &Poly, budget: &mut GbBudget) -> Result<Vec<Poly>, GbError> {
    let vars = g.vars();
    if g.is_zero() {
        return groebner(gens, MonomialOrder::GrevLex, budget);
    }
    let (ext, lift, proj) = prepend_var(vars, "s_");
    let mut sys: Vec<Poly> = gens.iter().map(|p| p.lift(&ext, &lift)).collect();
    let s = Poly::var(&ext, 0);
    let one = Poly::one(&ext);
    sys.push(one.sub(&s.mul(&g.lift(&ext, &lift))));
    let gb = groebner(&sys, MonomialOrder::Block { eliminate: 1 }, budget)?;
    let elim = elimination_ideal(&gb, 1);
    let back: Vec<Poly> = elim.iter().map(|p| p.project(vars, &proj)).collect();
    if back.is_empty() {
        // Saturation of the zero-ish ideal: nothing but 0.
        return Ok(vec![]);
    }
    groebner(&back, MonomialOrder::GrevLex, budget)
}

/// Intersection `I ∩ J` as a reduced basis.
pub fn intersect(a: &[Poly], b: &[Poly], budget: &mut GbBudget) -> Result<Vec<Poly>, GbError> {
    let vars = a
        .first()
        .or_else(|| b.first())
        .expect("intersect: need at least one generator")
        .vars()
        .clone();
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let (ext, lift, proj) = prepend_var(&vars, "t_");
    let t = Poly::var(&ext, 0);
    let one_minus_t = Poly::one(&ext).sub(&t);
    let mut sys: Vec<Poly> = Vec::new();
    for p in a {
        sys.push(t.mul(&p.lift(&ext, &lift)));
    }
    for p in b {
        sys.push(one_minus_t.mul(&p.lift(&ext, &lift)));
    }
    let gb = groebner(&sys, MonomialOrder::Block { eliminate: 1 }, budget)?;
    let elim = elimination_ideal(&gb, 1);
    let back: Vec<Poly> = elim.iter().map(|p| p.project(&vars, &proj)).collect();
    if back.is_empty() {
        return Ok(vec![]);
    }
    groebner(&back, MonomialOrder::GrevLex, budget)
}

/// Saturation by the irrelevant maximal ideal:
/// `(J : m^∞) = ∩_v (J : v^∞)` over the coordinate variables.
pub fn saturate_by_maximal_ideal(
    gens: &[Poly],
    budget: &mut GbBudget,
) -> Result<Vec<Poly>, GbError> {
    let vars = gens.first().expect("need generators").vars().clone();
    let mut acc: Option<Vec<Poly>> = None;
    for i in 0..vars.len() {
        let v = Poly::var(&vars, i);
        let sat = saturate(gens, &v, budget)?;
        acc = Some(match acc {
            None => sat,
            Some(prev) => intersect(&prev, &sat, budget)?,
        });
    }
    Ok(acc.unwrap())
}

/// All products of `d` generators (with repetition): generators of `I^d`.
pub fn ideal_power(gens: &[Poly], d: u32) -> Vec<Poly> {
    let vars = gens.first().expect("need generators").vars().clone();
    let mut out = vec![Poly::one(&vars)];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &out {
            for g in gens {
                next.push(p.mul(g));
            }
        }
        // Deduplicate (products commute, so many repeats arise).
        next.sort_by_key(|p| p.to_string());
        next.dedup();
        out = next;
    }
    out
}

/// Pairwise products: generators of `I·J`.
pub fn ideal_product(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = Vec::new();
    for p in a {
        for q in b {
            out.push(p.mul(q));
        }
    }
    out.sort_by_key(|p| p.to_string());
    out.dedup();
    out
}

/// The `d`-th symbolic power of the ideal of a curve on the hypersurface
/// `{f = 0}`: `I^(d) = ((I^d + (f)) : m^∞)`, computed in the ambient
/// polynomial ring. For a prime ideal `I` of a curve through the origin this
/// strips the embedded components at the origin from the ordinary power.
pub fn symbolic_power(
    curve: &[Poly],
    f: &Poly,
    d: u32,
    budget: &mut GbBudget,
) -> Result<Vec<Poly>, GbError> {
    let mut gens = ideal_power(curve, d);
    gens.push(f.clone());
    saturate_by_maximal_ideal(&gens, budget)
}

/// Equality of ideals via reduced Gröbner bases.
pub fn ideals_equal(a: &[Poly], b: &[Poly], budget: &mut GbBudget) -> Result<bool, GbError> {
    if a.is_empty() && b.is_empty() {
        return Ok(true);
    }
    if a.is_empty() || b.is_empty() {
        let nonempty = if a.is_empty() { b } else { a };
        return Ok(nonempty.iter().all(|p| p.is_zero()));
    }
    let ga = groebner(a, MonomialOrder::GrevLex, budget)?;
    let gb = groebner(b, MonomialOrder::GrevLex, budget)?;
    Ok(ga == gb)
}

/// Dimension of `V(gens)` (affine, over ℂ); `None` if empty.
pub fn variety_dimension(gens: &[Poly], budget: &mut GbBudget) -> Result<Option<u32>, GbError> {
    let vars = gens.first().expect("need generators").vars().clone();
    let gb = groebner(gens, MonomialOrder::GrevLex, budget)?;
    Ok(staircase_dimension(&gb, &vars, MonomialOrder::GrevLex))
}

/// Ideal membership helper that computes the basis internally.
pub fn member(p: &Poly, gens: &[Poly], budget: &mut GbBudget) -> Result<bool, GbError> {
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(p.is_zero());
    }
    let gb = groebner(gens, MonomialOrder::GrevLex, budget)?;
    in_ideal(p, &gb, MonomialOrder::GrevLex, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn polys(vars: &Vars, ss: &[&str]) -> Vec<Poly> {
        ss.iter().map(|s| parse_poly(vars, s).unwrap()).collect()
    }

    #[test]
    fn saturation_strips_an_embedded_component() {
        // (u·v, u·w) : u^∞ = (v, w).
        let v = Vars::uvw();
        let gens = polys(&v, &["u*v", "u*w"]);
        let mut b = GbBudget::standard();
        let sat = saturate(&gens, &parse_poly(&v, "u").unwrap(), &mut b).unwrap();
        let expected = groebner(&polys(&v, &["v", "w"]), MonomialOrder::GrevLex, &mut b).unwrap();
        assert_eq!(sat, expected);
    }

    #[test]
    fn saturation_result_contains_the_ideal() {
        let v = Vars::uvw();
        let gens = polys(&v, &["u^2*w - u*v^2", "u*v*w"]);
        let mut b = GbBudget::standard();
        let sat = saturate(&gens, &parse_poly(&v, "u").unwrap(), &mut b).unwrap();
        for g in &gens {
            assert!(in_ideal(g, &sat, MonomialOrder::GrevLex, &mut b).unwrap());
        }
    }

    #[test]
    fn intersection_of_two_lines_is_their_union_ideal() {
        // V(u,v) ∪ V(u,w) has ideal (u, v·w).
        let v = Vars::uvw();
        let mut b = GbBudget::standard();
        let i1 = polys(&v, &["u", "v"]);
        let i2 = polys(&v, &["u", "w"]);
        let inter = intersect(&i1, &i2, &mut b).unwrap();
        let expected =
            groebner(&polys(&v, &["u", "v*w"]), MonomialOrder::GrevLex, &mut b).unwrap();
        assert_eq!(inter, expected);
    }

    #[test]
    fn containment_query_over_the_complex_numbers() {
        // V(u² + v²) ⊆ V(u² + v²) but not ⊆ V(u) (it has the two complex
        // lines u = ±i·v).
        let v = Vars::uvw();
        let mut b = GbBudget::standard();
        let gens = polys(&v, &["u^2 + v^2", "w"]);
        let u = parse_poly(&v, "u").unwrap();
        assert!(!variety_contained_in_zero_set(&gens, &u, &mut b).unwrap());
        let f = parse_poly(&v, "u^2 + v^2").unwrap();
        assert!(variety_contained_in_zero_set(&gens, &f, &mut b).unwrap());
        // The radical catches powers: V(u²) ⊆ V(u).
        let gens = polys(&v, &["u^2"]);
        assert!(variety_contained_in_zero_set(&gens, &u, &mut b).unwrap());
    }

    #[test]
    fn symbolic_power_differs_from_ordinary_power_where_it_should() {
        // Curve Γ = V(x, y) on the A₁ 3-fold x² + y² + z·t = 0. The ordinary
        // square I² = (x², xy, y²) misses z·t·(x,y)-combinations like
        // x² + y² ≡ -z·t; the symbolic square must contain x²+y²+zt trivially
        // and stay saturated at the origin.
        let v = Vars::xyzt();
        let mut b = GbBudget::standard();
        let f = parse_poly(&v, "x^2 + y^2 + z*t").unwrap();
        let curve = polys(&v, &["x", "y"]);
        let s2 = symbolic_power(&curve, &f, 2, &mut b).unwrap();
        assert!(in_ideal(&f, &s2, MonomialOrder::GrevLex, &mut b).unwrap());
        // x·y is in I², hence in I^(2).
        let xy = parse_poly(&v, "x*y").unwrap();
        assert!(in_ideal(&xy, &s2, MonomialOrder::GrevLex, &mut b).unwrap());
        // x alone is not.
        let x = parse_poly(&v, "x").unwrap();
        assert!(!in_ideal(&x, &s2, MonomialOrder::GrevLex, &mut b).unwrap());
    }

    #[test]
    fn ideal_power_enumerates_monomial_products() {
        let v = Vars::uvw();
        let gens = polys(&v, &["u", "v"]);
        let p2 = ideal_power(&gens, 2);
        assert_eq!(p2.len(), 3); // u², uv, v²
    }

    #[test]
    fn variety_dimension_of_a_curve_union_point_setup() {
        let v = Vars::xyzt();
        let mut b = GbBudget::standard();
        // The t-axis: dimension 1.
        let gens = polys(&v, &["x", "y", "z"]);
        assert_eq!(variety_dimension(&gens, &mut b).unwrap(), Some(1));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let v = Vars::new(vec!["s_", "x"]);
        let n = fresh_var_name(&v, "s_");
        assert_ne!(n, "s_");
        assert!(v.index_of(&n).is_none());
    }
}
