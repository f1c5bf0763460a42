//! Gröbner bases over ℚ with explicit work budgets.
//!
//! Buchberger's algorithm with the sugar selection strategy and the product
//! and chain criteria. Every entry point draws from a caller-supplied
//! [`GbBudget`]; exhausting it returns [`GbError::BudgetExceeded`] instead of
//! running unboundedly, so callers can distinguish "decided" from "gave up".
//!
//! Output bases are reduced, monic, and deterministically sorted, so equal
//! ideals yield identical bases.

use super::poly::{Mono, MonomialOrder, Poly, Q, Vars};
use num::One;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("Gröbner budget exceeded ({spent} work units); raise the budget to decide this query")]
    BudgetExceeded { spent: u64 },
}

/// Abstract work budget shared across a computation. One unit is roughly one
/// reduction step or queue operation.
#[derive(Debug, Clone)]
pub struct GbBudget {
    left: u64,
    capacity: u64,
}

impl GbBudget {
    pub fn new(units: u64) -> Self {
        GbBudget { left: units, capacity: units }
    }

    /// Default budget, ample for every germ in the supported regime.
    pub fn standard() -> Self {
        GbBudget::new(4_000_000)
    }

    pub fn spend(&mut self, units: u64) -> Result<(), GbError> {
        if self.left < units {
            self.left = 0;
            return Err(GbError::BudgetExceeded { spent: self.capacity });
        }
        self.left -= units;
        Ok(())
    }

    pub fn spent(&self) -> u64 {
        self.capacity - self.left
    }

    pub fn remaining(&self) -> u64 {
        self.left
    }
}

fn mono_lcm(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect()
}

fn mono_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_sub(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Fully reduce `p` modulo `basis`: no term of the result is divisible by
/// any basis leading term.
pub fn normal_form(
    p: &Poly,
    basis: &[Poly],
    order: MonomialOrder,
    budget: &mut GbBudget,
) -> Result<Poly, GbError> {
    let lts: Vec<(Mono, Q)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("basis elements must be nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut rem = Poly::zero(p.vars());
    let mut cur = p.clone();
    while let Some((m, c)) = cur.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        budget.spend(1)?;
        let mut reduced = false;
        for (i, (lm, lc)) in lts.iter().enumerate() {
            if mono_divides(lm, &m) {
                let factor = &c / lc;
                let shift = mono_sub(&m, lm);
                cur = cur.sub(&basis[i].mul_term(&shift, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            rem = rem.add(&Poly::monomial(p.vars(), &m, c.clone()));
            cur = cur.sub(&Poly::monomial(p.vars(), &m, c));
        }
    }
    Ok(rem)
}

fn spoly(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mono_lcm(mf, mg);
    let a = f.mul_term(&mono_sub(&l, mf), &(Q::one() / cf.clone()));
    let b = g.mul_term(&mono_sub(&l, mg), &(Q::one() / cg.clone()));
    a.sub(&b)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    lcm_deg: u32,
    lcm: Mono,
    i: usize,
    j: usize,
}

/// Compute the reduced Gröbner basis of the given generators.
pub fn groebner(
    gens: &[Poly],
    order: MonomialOrder,
    budget: &mut GbBudget,
) -> Result<Vec<Poly>, GbError> {
    let vars = gens
        .first()
        .map(|g| g.vars().clone())
        .expect("groebner: need at least one generator");
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    for g in gens {
        assert_eq!(g.vars(), &vars);
        if !g.is_zero() {
            basis.push(g.clone());
            sugars.push(g.total_degree().unwrap_or(0));
        }
    }
    if basis.is_empty() {
        return Ok(vec![]);
    }

    use std::collections::BTreeSet;
    let mut queue: BTreeSet<Pair> = BTreeSet::new();
    let mut processed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let make_pair = |basis: &[Poly], sugars: &[u32], i: usize, j: usize| -> Pair {
        let (mi, _) = basis[i].leading_term(order).unwrap();
        let (mj, _) = basis[j].leading_term(order).unwrap();
        let l = mono_lcm(mi, mj);
        let deg = |m: &Mono| m.iter().map(|&e| e as u32).sum::<u32>();
        let ldeg = deg(&l);
        let si = sugars[i] + ldeg - deg(&mi.clone());
        let sj = sugars[j] + ldeg - deg(&mj.clone());
        Pair { sugar: si.max(sj), lcm_deg: ldeg, lcm: l, i, j }
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            queue.insert(make_pair(&basis, &sugars, i, j));
        }
    }

    while let Some(pair) = queue.iter().next().cloned() {
        queue.remove(&pair);
        budget.spend(1)?;
        let Pair { i, j, ref lcm, .. } = pair;
        processed.insert((i, j));
        let (mi, _) = basis[i].leading_term(order).unwrap();
        let (mj, _) = basis[j].leading_term(order).unwrap();
        // Product criterion: disjoint leading monomials reduce to zero.
        let prod: Mono = mi.iter().zip(mj.iter()).map(|(a, b)| a + b).collect();
        if &prod == lcm {
            continue;
        }
        // Chain criterion: skip if some other leading term divides the lcm
        // and both sub-pairs were already treated.
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (mk, _) = g.leading_term(order).unwrap();
            if mono_divides(mk, lcm)
                && processed.contains(&(i.min(k), i.max(k)))
                && processed.contains(&(j.min(k), j.max(k)))
            {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], order);
        let red = normal_form(&s, &basis, order, budget)?;
        if red.is_zero() {
            continue;
        }
        let sugar = red.total_degree().unwrap_or(0);
        basis.push(red);
        sugars.push(sugar);
        let new = basis.len() - 1;
        for k in 0..new {
            queue.insert(make_pair(&basis, &sugars, k, new));
        }
    }

    reduce_basis(basis, order, budget)
}

/// Minimalize, tail-reduce, normalize, and sort a Gröbner basis.
fn reduce_basis(
    mut basis: Vec<Poly>,
    order: MonomialOrder,
    budget: &mut GbBudget,
) -> Result<Vec<Poly>, GbError> {
    // Minimal: drop any element whose leading term another's divides.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading_term(order).unwrap();
        let mi = mi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading_term(order).unwrap();
            if mono_divides(&mj.clone(), &mi) && (mj != &mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Reduced: each element fully reduced against the others.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let r = if others.is_empty() {
            minimal[i].clone()
        } else {
            normal_form(&minimal[i], &others, order, budget)?
        };
        if !r.is_zero() {
            reduced.push(r.monic(order));
        }
    }
    reduced.sort_by(|a, b| {
        let (ma, _) = a.leading_term(order).unwrap();
        let (mb, _) = b.leading_term(order).unwrap();
        order.cmp(ma, mb)
    });
    Ok(reduced)
}

/// True if the reduced basis is `{1}` (the ideal is the whole ring).
pub fn is_unit_ideal(reduced: &[Poly]) -> bool {
    reduced.len() == 1 && reduced[0].is_constant() && !reduced[0].is_zero()
}

/// Ideal membership via full reduction by a Gröbner basis.
pub fn in_ideal(
    p: &Poly,
    reduced_basis: &[Poly],
    order: MonomialOrder,
    budget: &mut GbBudget,
) -> Result<bool, GbError> {
    if reduced_basis.is_empty() {
        return Ok(p.is_zero());
    }
    Ok(normal_form(p, reduced_basis, order, budget)?.is_zero())
}

/// Basis of the elimination ideal: elements free of the first `k` variables.
/// `reduced` must be a reduced basis with respect to
/// `MonomialOrder::Block { eliminate: k }`.
pub fn elimination_ideal(reduced: &[Poly], k: usize) -> Vec<Poly> {
    reduced
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= k))
        .cloned()
        .collect()
}

/// Krull dimension of the affine variety cut out by the ideal with the given
/// reduced basis: the largest number of variables no leading monomial is
/// supported in. `None` for the unit ideal (empty variety).
pub fn staircase_dimension(reduced: &[Poly], vars: &Vars, order: MonomialOrder) -> Option<u32> {
    if is_unit_ideal(reduced) {
        return None;
    }
    if reduced.is_empty() {
        return Some(vars.len() as u32);
    }
    let lead: Vec<Mono> = reduced
        .iter()
        .map(|g| g.leading_term(order).unwrap().0.clone())
        .collect();
    let n = vars.len();
    let mut best = 0u32;
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        // Independent iff no leading monomial is supported inside `subset`.
        let independent = lead.iter().all(|m| {
            !(0..n).all(|i| m[i] == 0 || subset.contains(&i))
        });
        if independent {
            best = best.max(subset.len() as u32);
        }
    }
    Some(best)
}
