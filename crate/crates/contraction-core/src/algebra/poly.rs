//! Sparse multivariate polynomials over the rationals.
//!
//! Polynomials are stored as `BTreeMap<exponent vector, coefficient>` with
//! arbitrary-precision rational coefficients, so every operation in this
//! crate is exact. A [`Vars`] value fixes the ordered list of variable names;
//! polynomials over different variable lists never mix silently.
//!
//! Printing is canonical (graded-lexicographic, descending, explicit `*` and
//! `^`), and `parse` of a printed polynomial returns the same polynomial.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exact rational coefficient type used throughout the crate.
pub type Q = BigRational;

/// Convenience constructors for small rationals.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// An ordered, shared list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty(), "variable list must be nonempty");
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate variable name {n}");
        }
        Vars(Arc::new(names))
    }

    /// The standard 3-fold ambient variables.
    pub fn xyzt() -> Self {
        Vars::new(vec!["x", "y", "z", "t"])
    }

    /// The standard surface-germ variables.
    pub fn uvw() -> Self {
        Vars::new(vec!["u", "v", "w"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new variable list with `extra` names appended.
    pub fn extend<S: Into<String>>(&self, extra: Vec<S>) -> Vars {
        let mut names: Vec<String> = self.0.as_ref().clone();
        for e in extra {
            names.push(e.into());
        }
        Vars::new(names)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// Exponent vector; always the same length as the owning polynomial's `Vars`.
pub type Mono = Vec<u16>;

pub fn mono_total_degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Term orders used by the Gröbner engine and for canonical printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (default for Gröbner bases).
    GrevLex,
    /// Pure lexicographic in the ambient variable order.
    Lex,
    /// Graded lexicographic (used for canonical printing).
    GrLex,
    /// Elimination order: the first `k` variables are eliminated. Compares by
    /// grevlex on the first block, then grevlex on the rest.
    Block { eliminate: usize },
}

impl MonomialOrder {
    /// Compare two exponent vectors; `Greater` means `a` is the larger term.
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::GrLex => grlex_cmp(a, b),
            MonomialOrder::Block { eliminate } => {
                let (a1, a2) = a.split_at(eliminate.min(a.len()));
                let (b1, b2) = b.split_at(eliminate.min(b.len()));
                grevlex_cmp(a1, b1).then_with(|| grevlex_cmp(a2, b2))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::GrLex => "grlex".to_string(),
            MonomialOrder::Block { eliminate } => format!("block(eliminate={eliminate})"),
        }
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    mono_total_degree(a)
        .cmp(&mono_total_degree(b))
        .then_with(|| lex_cmp(a, b))
}

fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da = mono_total_degree(a);
    let db = mono_total_degree(b);
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Reverse lex: the last non-equal exponent decides, smaller wins.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// A sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Poly::constant(vars, Q::one())
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Poly::constant(vars, qi(n))
    }

    /// The variable with index `i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len());
        let mut m = vec![0u16; vars.len()];
        m[i] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(m, Q::one());
        p
    }

    pub fn monomial(vars: &Vars, exps: &[u16], c: Q) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u16]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| mono_total_degree(m) == 0)
    }

    fn insert_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Poly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            r.terms.insert(m.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut r = Poly::zero(&self.vars);
        for (m, k) in &self.terms {
            r.terms.insert(m.clone(), k * c);
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_bounded(other, None)
    }

    /// Product, dropping terms of total degree above `cap` when given.
    pub fn mul_bounded(&self, other: &Poly, cap: Option<u32>) -> Poly {
        self.assert_same_vars(other);
        let mut r = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            let d1 = mono_total_degree(m1);
            for (m2, c2) in &other.terms {
                if let Some(n) = cap {
                    if d1 + mono_total_degree(m2) > n {
                        continue;
                    }
                }
                let m: Mono = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                r.insert_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn mul_term(&self, exps: &[u16], c: &Q) -> Poly {
        let mut r = Poly::zero(&self.vars);
        if c.is_zero() {
            return r;
        }
        for (m, k) in &self.terms {
            let mm: Mono = m.iter().zip(exps.iter()).map(|(a, b)| a + b).collect();
            r.terms.insert(mm, k * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_bounded(e, None)
    }

    pub fn pow_bounded(&self, e: u32, cap: Option<u32>) -> Poly {
        let mut r = Poly::one(&self.vars);
        for _ in 0..e {
            r = r.mul_bounded(self, cap);
        }
        r
    }

    /// Minimum total degree of a term (`None` for the zero polynomial).
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_total_degree(m)).min()
    }

    /// Maximum total degree of a term (`None` for the zero polynomial).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_total_degree(m)).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var] as u32).max().unwrap_or(0)
    }

    /// Minimum exponent of `var` over all terms (`var`-adic order);
    /// `None` for the zero polynomial.
    pub fn var_order(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var] as u32).min()
    }

    /// Exact division by `var^k`; panics unless `var^k` divides every term.
    pub fn div_var_power(&self, var: usize, k: u16) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            assert!(m[var] >= k, "div_var_power: not divisible");
            let mut mm = m.clone();
            mm[var] -= k;
            r.terms.insert(mm, c.clone());
        }
        r
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if mono_total_degree(m) == d {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Truncation to total degree ≤ `n`.
    pub fn truncate(&self, n: u32) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if mono_total_degree(m) <= n {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// The part of total degree ≤ `n` (alias of `truncate`, reads better in
    /// normal-form code).
    pub fn low_part(&self, n: u32) -> Poly {
        self.truncate(n)
    }

    /// The part of total degree ≥ `n`.
    pub fn high_part(&self, n: u32) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if mono_total_degree(m) >= n {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut mm = m.clone();
            let e = mm[var];
            mm[var] -= 1;
            r.insert_term(mm, c * qi(e as i64));
        }
        r
    }

    /// Substitute `subs[i]` for variable `i`, truncating total degree at
    /// `cap` when given. All substitution images must share one variable
    /// list, which becomes the result's.
    pub fn substitute(&self, subs: &[Poly], cap: Option<u32>) -> Poly {
        assert_eq!(subs.len(), self.vars.len());
        let target = subs[0].vars.clone();
        for s in subs {
            assert_eq!(s.vars, target);
        }
        // Memoize powers of each substitution image.
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(&target), s.clone()]).collect();
        let mut r = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let last = powers[i].last().unwrap().clone();
                    powers[i].push(last.mul_bounded(&subs[i], cap));
                }
                term = term.mul_bounded(&powers[i][e as usize], cap);
                if term.is_zero() {
                    break;
                }
            }
            r = r.add(&term);
        }
        r
    }

    /// Substitute a polynomial for a single variable, leaving the others.
    pub fn subst_var(&self, var: usize, value: &Poly, cap: Option<u32>) -> Poly {
        assert_eq!(value.vars, self.vars);
        let subs: Vec<Poly> = (0..self.vars.len())
            .map(|i| if i == var { value.clone() } else { Poly::var(&self.vars, i) })
            .collect();
        self.substitute(&subs, cap)
    }

    /// Set a single variable to a rational constant.
    pub fn set_var(&self, var: usize, value: &Q) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m[var];
            let mut mm = m.clone();
            mm[var] = 0;
            let mut coeff = c.clone();
            if e > 0 {
                if value.is_zero() {
                    continue;
                }
                let mut pw = Q::one();
                for _ in 0..e {
                    pw *= value;
                }
                coeff *= pw;
            }
            r.insert_term(mm, coeff);
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Mono, &Q)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Q::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        (0..n).filter(|&i| used[i]).collect()
    }

    /// True if every term is divisible by one of the given variables
    /// (equivalently, membership in the prime ideal they generate).
    pub fn in_coordinate_ideal(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| vars.iter().any(|&v| m[v] > 0))
    }

    /// Reinterpret over a larger variable list; `map[i]` is the index of old
    /// variable `i` in `new_vars`.
    pub fn lift(&self, new_vars: &Vars, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.vars.len());
        let mut r = Poly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut mm = vec![0u16; new_vars.len()];
            for (i, &e) in m.iter().enumerate() {
                mm[map[i]] = e;
            }
            r.terms.insert(mm, c.clone());
        }
        r
    }

    /// Reinterpret over a smaller variable list containing all occurring
    /// variables; `map[i]` gives the new index of old variable `i`, or
    /// `None` if old variable `i` must not occur.
    pub fn project(&self, new_vars: &Vars, map: &[Option<usize>]) -> Poly {
        assert_eq!(map.len(), self.vars.len());
        let mut r = Poly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut mm = vec![0u16; new_vars.len()];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let j = map[i].expect("project: eliminated variable occurs");
                    mm[j] = e;
                }
            }
            r.terms.insert(mm, c.clone());
        }
        r
    }

    /// Exact division: `Some(q)` with `self = q·d` if `d` divides exactly,
    /// `None` otherwise.
    pub fn try_div_exact(&self, d: &Poly) -> Option<Poly> {
        self.assert_same_vars(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let order = MonomialOrder::GrevLex;
        let (dm, dc) = d.leading_term(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Poly::zero(&self.vars);
        let mut r = self.clone();
        while let Some((m, c)) = r.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.iter().zip(m.iter()).all(|(a, b)| a <= b) {
                return None;
            }
            let shift: Mono = m.iter().zip(dm.iter()).map(|(a, b)| a - b).collect();
            let coeff = &c / &dc;
            q.insert_term(shift.clone(), coeff.clone());
            r = r.sub(&d.mul_term(&shift, &coeff));
        }
        Some(q)
    }

    /// Coefficients of the polynomial viewed as univariate in `var`
    /// (constant coefficients required; `None` if other variables occur).
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<Q>> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Q::zero(); deg + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if i != var && e > 0 {
                    return None;
                }
            }
            coeffs[m[var] as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// Collects the polynomial as a map `exponent of var -> coefficient
    /// polynomial in the remaining variables` (still over the same Vars).
    pub fn coeffs_in_var(&self, var: usize) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m[var];
            let mut mm = m.clone();
            mm[var] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(&self.vars))
                .insert_term(mm, c.clone());
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Canonical order: graded lexicographic, descending.
        let mut terms: Vec<(&Mono, &Q)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex_cmp(b, a));
        let mut first = true;
        for (m, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = mono_total_degree(m) == 0;
            let mut wrote_coeff = false;
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
                wrote_coeff = true;
            }
            let mut first_var = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_coeff || !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.vars.name(i))?;
                if e >= 2 {
                    write!(f, "^{e}")?;
                }
                wrote_coeff = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars, self)
    }
}

/// Exact univariate polynomial GCD (monic result), for coefficient lists.
pub fn univariate_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    fn trim(mut v: Vec<Q>) -> Vec<Q> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }
    fn rem(mut a: Vec<Q>, b: &[Q]) -> Vec<Q> {
        let db = b.len() - 1;
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() && !a.is_empty() {
            let da = a.len() - 1;
            let q = a.last().unwrap().clone() / lb.clone();
            for (i, bc) in b.iter().enumerate() {
                let idx = da - db + i;
                let sub = &q * bc;
                a[idx] -= sub;
            }
            a = trim(a);
        }
        a
    }
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lead = a.last().unwrap().clone();
    a.into_iter().map(|c| c / lead.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: &Vars, s: &str) -> Poly {
        crate::algebra::parse::parse_poly(vars, s).unwrap()
    }

    #[test]
    fn display_is_canonical_and_sorted() {
        let v = Vars::xyzt();
        let f = p(&v, "y + x^2 - 3*z*t + 1/2");
        assert_eq!(f.to_string(), "x^2 - 3*z*t + y + 1/2");
    }

    #[test]
    fn display_suppresses_unit_coefficients() {
        let v = Vars::xyzt();
        assert_eq!(p(&v, "1*x + -1*y").to_string(), "x - y");
        assert_eq!(p(&v, "0").to_string(), "0");
        assert_eq!(p(&v, "-x^2").to_string(), "-x^2");
    }

    #[test]
    fn arithmetic_basics() {
        let v = Vars::xyzt();
        let a = p(&v, "x + y");
        let b = p(&v, "x - y");
        assert_eq!(a.mul(&b), p(&v, "x^2 - y^2"));
        assert_eq!(a.add(&b), p(&v, "2*x"));
        assert_eq!(a.sub(&a), Poly::zero(&v));
        assert_eq!(a.pow(2), p(&v, "x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn truncated_multiplication_drops_high_degrees() {
        let v = Vars::xyzt();
        let a = p(&v, "x + x^2");
        let b = p(&v, "1 + x^3");
        assert_eq!(a.mul_bounded(&b, Some(3)), p(&v, "x + x^2"));
    }

    #[test]
    fn ord_and_degree() {
        let v = Vars::xyzt();
        let f = p(&v, "x^2 + y*z*t + t^5");
        assert_eq!(f.ord(), Some(2));
        assert_eq!(f.total_degree(), Some(5));
        assert_eq!(f.degree_in(3), 5);
        assert_eq!(f.var_order(3), Some(0));
        assert_eq!(Poly::zero(&v).ord(), None);
    }

    #[test]
    fn homogeneous_parts_partition() {
        let v = Vars::xyzt();
        let f = p(&v, "x^2 + y^2*z - z^3 + t^5");
        let mut sum = Poly::zero(&v);
        for d in 0..=5 {
            sum = sum.add(&f.homogeneous_part(d));
        }
        assert_eq!(sum, f);
        assert_eq!(f.homogeneous_part(3), p(&v, "y^2*z - z^3"));
    }

    #[test]
    fn substitution_and_blowup_shape() {
        let v = Vars::xyzt();
        // x^2 + y*t under x -> x*t is t^2*x^2 + y*t = t*(t*x^2 + y).
        let f = p(&v, "x^2 + y*t");
        let g = f.subst_var(0, &p(&v, "x*t"), None);
        assert_eq!(g, p(&v, "x^2*t^2 + y*t"));
        assert_eq!(g.var_order(3), Some(1));
        assert_eq!(g.div_var_power(3, 1), p(&v, "x^2*t + y"));
    }

    #[test]
    fn derivative_matches_hand_computation() {
        let v = Vars::xyzt();
        let f = p(&v, "x^2*y + 3*z^4");
        assert_eq!(f.derivative(0), p(&v, "2*x*y"));
        assert_eq!(f.derivative(1), p(&v, "x^2"));
        assert_eq!(f.derivative(2), p(&v, "12*z^3"));
        assert_eq!(f.derivative(3), Poly::zero(&v));
    }

    #[test]
    fn coordinate_ideal_membership_is_monomial_wise() {
        let v = Vars::xyzt();
        assert!(p(&v, "x^2 + y^2*z + z^3 + t^5").in_coordinate_ideal(&[0, 2, 3]));
        assert!(!p(&v, "x^2 + y^2").in_coordinate_ideal(&[0, 2, 3]));
    }

    #[test]
    fn grevlex_and_lex_disagree_where_expected() {
        // x*z vs y^2 in x>y>z: grevlex compares degree 2 = 2, then last
        // variable: x*z has z=1, y^2 has z=0, so y^2 > x*z in grevlex;
        // in lex x*z > y^2.
        let a = vec![1u16, 0, 1];
        let b = vec![0u16, 2, 0];
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_variables() {
        // Any monomial containing an eliminated variable beats any without.
        let ord = MonomialOrder::Block { eliminate: 1 };
        let with_x = vec![1u16, 0, 0];
        let without = vec![0u16, 5, 5];
        assert_eq!(ord.cmp(&with_x, &without), Ordering::Greater);
    }

    #[test]
    fn univariate_gcd_detects_double_roots() {
        // (s-1)^2 (s+2) and its derivative share (s-1).
        let f = vec![qi(2), qi(-3), qi(0), qi(1)]; // s^3 - 3s + 2
        let df = vec![qi(-3), qi(0), qi(3)];
        let g = univariate_gcd(&f, &df);
        assert_eq!(g, vec![qi(-1), qi(1)]); // s - 1
    }

    #[test]
    fn exact_division_succeeds_and_fails_correctly() {
        let v = Vars::uvw();
        let f = p(&v, "v^2*w + v*w^2");
        let l = p(&v, "v + w");
        assert_eq!(f.try_div_exact(&l), Some(p(&v, "v*w")));
        assert_eq!(f.try_div_exact(&p(&v, "v - w")), None);
        // (v - w)² divides (v-w)²·(v+2w).
        let q = p(&v, "(v - w)^2*(v + 2*w)");
        let d = p(&v, "(v - w)^2");
        assert_eq!(q.try_div_exact(&d), Some(p(&v, "v + 2*w")));
    }

    #[test]
    fn lift_and_project_roundtrip() {
        let v3 = Vars::uvw();
        let v5 = v3.extend(vec!["a", "b"]);
        let f = p(&v3, "u^2 + v*w");
        let lifted = f.lift(&v5, &[0, 1, 2]);
        assert_eq!(lifted.to_string(), "u^2 + v*w");
        let back = lifted.project(&v3, &[Some(0), Some(1), Some(2), None, None]);
        assert_eq!(back, f);
    }
}
