//! Intersection combinatorics of ADE exceptional curve configurations.
//!
//! For a Du Val singularity with minimal resolution graph `G`, a smooth curve
//! `Γ` through the singular point meets the exceptional configuration at a
//! single vertex whose fundamental-cycle coefficient is 1. A general
//! hyperplane section through `Γ` cuts the surface in `Γ` plus a residual
//! curve `ℓ`, and its total pullback is `Γ' + ℓ' + Σ aᵢFᵢ` with every
//! intersection number `(Γ' + ℓ' + Σ aᵢFᵢ)·Fⱼ = 0`. Knowing only where `Γ'`
//! meets the graph, the position of `ℓ'` is pinned down by integrality: among
//! all admissible vertices for `ℓ'`, exactly one makes the linear system
//! solvable in integers. [`solve_cycle`] performs that search and reports the
//! cycle, the selected vertex, and the multiplicity `d` of the cycle at it —
//! the same `d` that appears as the coefficient of the second exceptional
//! divisor in the threefold blow-up along `Γ`.

use crate::algebra::change::invert_matrix;
use crate::algebra::poly::{qi, Q};
use crate::duval::DuValType;
use num::{ToPrimitive, Zero};

/// A Dynkin graph of type `A_n`, `D_n` (n ≥ 4) or `E_n` (n ∈ {6,7,8}).
///
/// Vertices are 1-based: `A_n` is the chain `E₁ – … – E_n`; `D_n` is the
/// chain `E₁ – … – E_{n-2}` with both `E_{n-1}` and `E_n` attached to
/// `E_{n-2}`; `E_n` is the chain `E₁ – … – E_{n-1}` with `E_n` attached
/// to `E₃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    ty: DuValType,
    n: usize,
    /// 0-based adjacency pairs.
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("no Dynkin graph is associated with `{ty}`")]
    UnsupportedType { ty: DuValType },
    #[error("vertex {meeting} is not a valid position on a graph with {n} vertices")]
    MeetingOutOfRange { meeting: usize, n: usize },
    #[error(
        "a smooth curve cannot meet vertex {meeting}: the fundamental cycle \
         has coefficient {coefficient} > 1 there"
    )]
    MeetingNotReduced { meeting: usize, coefficient: i64 },
    #[error("no residual-curve position gives an integral cycle")]
    NoIntegralSolution,
    #[error("multiple residual-curve positions give integral cycles: {edges:?}")]
    AmbiguousEdge { edges: Vec<usize> },
}

impl DynkinGraph {
    pub fn new(ty: DuValType) -> Result<Self, CycleError> {
        let (n, edges) = match ty {
            DuValType::A(n) if n >= 1 => {
                let n = n as usize;
                (n, (0..n - 1).map(|i| (i, i + 1)).collect())
            }
            DuValType::D(n) if n >= 4 => {
                let n = n as usize;
                let mut e: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                (n, e)
            }
            DuValType::E(n) if (6..=8).contains(&n) => {
                let n = n as usize;
                let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((2, n - 1));
                (n, e)
            }
            _ => return Err(CycleError::UnsupportedType { ty }),
        };
        Ok(DynkinGraph { ty, n, edges })
    }

    pub fn du_val_type(&self) -> DuValType {
        self.ty
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Intersection matrix: `-2` on the diagonal, `1` for adjacent pairs.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.n]; self.n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(i, j) in &self.edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    /// The fundamental cycle: the minimal nonzero effective cycle `Z` with
    /// `Z·Fᵢ ≤ 0` for every `i`, computed by the standard increment loop.
    pub fn fundamental_cycle(&self) -> Vec<i64> {
        let m = self.intersection_matrix();
        let mut z = vec![1i64; self.n];
        loop {
            let prod: Vec<i64> = (0..self.n)
                .map(|i| (0..self.n).map(|j| m[i][j] * z[j]).sum())
                .collect();
            match (0..self.n).find(|&i| prod[i] > 0) {
                Some(i) => z[i] += 1,
                None => return z,
            }
        }
    }
}

/// The solved pullback cycle for a general hyperplane section through a
/// smooth curve meeting the configuration at a fixed vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSolution {
    /// `aᵢ`, indexed so `coefficients[i]` is the multiplicity of `E_{i+1}`.
    pub coefficients: Vec<i64>,
    /// 1-based vertex met by the residual curve of the hyperplane section.
    pub edge_vertex: usize,
    /// Cycle multiplicity at `edge_vertex`.
    pub d: i64,
}

/// Solve `M·a = -(e_meeting + e_j)` over every admissible residual position
/// `j`, keeping the unique choice with an integral (automatically positive)
/// solution. `meeting` is 1-based.
pub fn solve_cycle(graph: &DynkinGraph, meeting: usize) -> Result<CycleSolution, CycleError> {
    let n = graph.vertex_count();
    if meeting < 1 || meeting > n {
        return Err(CycleError::MeetingOutOfRange { meeting, n });
    }
    let fund = graph.fundamental_cycle();
    if fund[meeting - 1] != 1 {
        return Err(CycleError::MeetingNotReduced {
            meeting,
            coefficient: fund[meeting - 1],
        });
    }
    let m: Vec<Vec<Q>> = graph
        .intersection_matrix()
        .iter()
        .map(|row| row.iter().map(|&v| qi(v)).collect())
        .collect();
    let minv = invert_matrix(&m).expect("ADE intersection matrices are negative definite");
    let mut hits: Vec<(usize, Vec<i64>)> = Vec::new();
    for j in (0..n).filter(|&j| fund[j] == 1) {
        let mut rhs = vec![Q::zero(); n];
        rhs[meeting - 1] = &rhs[meeting - 1] - &qi(1);
        rhs[j] = &rhs[j] - &qi(1);
        let a: Vec<Q> = (0..n)
            .map(|i| (0..n).map(|c| &minv[i][c] * &rhs[c]).sum())
            .collect();
        if a.iter().all(|x| x.is_integer()) {
            let ints: Vec<i64> = a
                .iter()
                .map(|x| x.to_integer().to_i64().expect("cycle coefficients are small"))
                .collect();
            debug_assert!(ints.iter().all(|&v| v >= 1));
            hits.push((j, ints));
        }
    }
    match hits.len() {
        0 => Err(CycleError::NoIntegralSolution),
        1 => {
            let (j, coefficients) = hits.pop().unwrap();
            let d = coefficients[j];
            Ok(CycleSolution { coefficients, edge_vertex: j + 1, d })
        }
        _ => Err(CycleError::AmbiguousEdge {
            edges: hits.iter().map(|(j, _)| j + 1).collect(),
        }),
    }
}

/// Position of a smooth curve through a Du Val point, reconstructed from the
/// section type and the exceptional multiplicity `d` of the threefold
/// blow-up along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvePosition {
    /// `A_n`, curve meeting `E_k` (canonically `2k ≤ n+1`).
    AChain { k: u32 },
    /// `D₄`: all three reduced positions are equivalent under the graph
    /// symmetry.
    D4Symmetric,
    /// `D_n`, `n ≥ 5`: curve meeting the long end `E₁` of the chain.
    FdL,
    /// `D_n`, `n ≥ 5`: curve meeting a fork vertex.
    FdR,
}

impl std::fmt::Display for CurvePosition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvePosition::AChain { k } => write!(f, "A-chain position k={k}"),
            CurvePosition::D4Symmetric => write!(f, "D4 position"),
            CurvePosition::FdL => write!(f, "D chain-end position (FD_l)"),
            CurvePosition::FdR => write!(f, "D fork position (FD_r)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PositionError {
    #[error("curve positions are only classified for A and D sections, not `{ty}`")]
    UnsupportedType { ty: DuValType },
    #[error("no curve position on `{ty}` produces multiplicity d={d}")]
    InvalidMultiplicity { ty: DuValType, d: u32 },
    #[error("on D5 both positions give d=2; the blow-up surface geometry decides")]
    AmbiguousD5,
}

/// Reconstruct the curve position from `(section type, d)`.
///
/// `d` determines the position except on `D₅`, where the chain-end and fork
/// positions share `d = 2` and the caller must disambiguate through the
/// geometry of the blown-up surface.
pub fn position_from_d(ty: DuValType, d: u32) -> Result<CurvePosition, PositionError> {
    match ty {
        DuValType::A(n) => {
            if d >= 1 && 2 * d <= n + 1 {
                Ok(CurvePosition::AChain { k: d })
            } else {
                Err(PositionError::InvalidMultiplicity { ty, d })
            }
        }
        DuValType::D(4) => {
            if d == 2 {
                Ok(CurvePosition::D4Symmetric)
            } else {
                Err(PositionError::InvalidMultiplicity { ty, d })
            }
        }
        DuValType::D(5) => {
            if d == 2 {
                Err(PositionError::AmbiguousD5)
            } else {
                Err(PositionError::InvalidMultiplicity { ty, d })
            }
        }
        DuValType::D(n) if n >= 6 => {
            let fork_d = if n % 2 == 0 { n / 2 } else { (n - 1) / 2 };
            if d == 2 {
                Ok(CurvePosition::FdL)
            } else if d == fork_d {
                Ok(CurvePosition::FdR)
            } else {
                Err(PositionError::InvalidMultiplicity { ty, d })
            }
        }
        _ => Err(PositionError::UnsupportedType { ty }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_leading_minors_positive(m: &[Vec<i64>]) -> bool {
        // Positive definiteness of -M via exact rational elimination.
        let n = m.len();
        for k in 1..=n {
            let mut a: Vec<Vec<Q>> = (0..k)
                .map(|i| (0..k).map(|j| qi(-m[i][j])).collect())
                .collect();
            let mut det = qi(1);
            for c in 0..k {
                let p = match (c..k).find(|&r| !a[r][c].is_zero()) {
                    Some(p) => p,
                    None => return false,
                };
                if p != c {
                    a.swap(p, c);
                    det = -det;
                }
                det = &det * &a[c][c];
                let pivot_row = a[c].clone();
                for row in a[c + 1..k].iter_mut() {
                    let f = &row[c] / &pivot_row[c];
                    for (v, pv) in row[c..k].iter_mut().zip(&pivot_row[c..k]) {
                        let t = &f * pv;
                        *v = &*v - &t;
                    }
                }
            }
            if det <= qi(0) {
                return false;
            }
        }
        true
    }

    fn det(m: &[Vec<i64>]) -> Q {
        let n = m.len();
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| qi(m[i][j])).collect())
            .collect();
        let mut det = qi(1);
        for c in 0..n {
            let p = match (c..n).find(|&r| !a[r][c].is_zero()) {
                Some(p) => p,
                None => return qi(0),
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let pivot_row = a[c].clone();
            for row in a[c + 1..n].iter_mut() {
                let f = &row[c] / &pivot_row[c];
                for (v, pv) in row[c..n].iter_mut().zip(&pivot_row[c..n]) {
                    let t = &f * pv;
                    *v = &*v - &t;
                }
            }
        }
        det
    }

    #[test]
    fn matrices_are_negative_definite_with_known_determinants() {
        for n in 1..=10 {
            let g = DynkinGraph::new(DuValType::A(n)).unwrap();
            let m = g.intersection_matrix();
            assert!(det_leading_minors_positive(&m));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(det(&m), qi(sign * (n as i64 + 1)), "det A_{n}");
        }
        for n in 4..=12 {
            let g = DynkinGraph::new(DuValType::D(n)).unwrap();
            let m = g.intersection_matrix();
            assert!(det_leading_minors_positive(&m));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(det(&m), qi(sign * 4), "det D_{n}");
        }
        for (n, dt) in [(6u32, 3i64), (7, 2), (8, 1)] {
            let g = DynkinGraph::new(DuValType::E(n)).unwrap();
            let m = g.intersection_matrix();
            assert!(det_leading_minors_positive(&m));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(det(&m), qi(sign * dt), "det E_{n}");
        }
    }

    #[test]
    fn fundamental_cycles_match_the_classical_tables() {
        for n in 1..=10usize {
            let g = DynkinGraph::new(DuValType::A(n as u32)).unwrap();
            assert_eq!(g.fundamental_cycle(), vec![1; n]);
        }
        for n in 4..=12usize {
            let g = DynkinGraph::new(DuValType::D(n as u32)).unwrap();
            let mut expect = vec![2i64; n];
            expect[0] = 1;
            expect[n - 2] = 1;
            expect[n - 1] = 1;
            assert_eq!(g.fundamental_cycle(), expect, "D_{n}");
        }
        let e6 = DynkinGraph::new(DuValType::E(6)).unwrap();
        assert_eq!(e6.fundamental_cycle(), vec![1, 2, 3, 2, 1, 2]);
        let e7 = DynkinGraph::new(DuValType::E(7)).unwrap();
        assert_eq!(e7.fundamental_cycle(), vec![2, 3, 4, 3, 2, 1, 2]);
        let e8 = DynkinGraph::new(DuValType::E(8)).unwrap();
        assert_eq!(e8.fundamental_cycle(), vec![2, 4, 6, 5, 4, 3, 2, 3]);
    }

    #[test]
    fn a_chain_cycles_follow_the_min_formula() {
        for n in 1..=10usize {
            let g = DynkinGraph::new(DuValType::A(n as u32)).unwrap();
            for k in 1..=n {
                let sol = solve_cycle(&g, k).unwrap();
                let expect: Vec<i64> = (1..=n)
                    .map(|i| [i, k, n + 1 - i, n + 1 - k].into_iter().min().unwrap() as i64)
                    .collect();
                assert_eq!(sol.coefficients, expect, "A_{n} meeting {k}");
                assert_eq!(sol.edge_vertex, n + 1 - k);
                assert_eq!(sol.d, k.min(n + 1 - k) as i64);
            }
        }
    }

    #[test]
    fn d_chain_end_cycles_are_two_two_one_one() {
        for n in 4..=12usize {
            let g = DynkinGraph::new(DuValType::D(n as u32)).unwrap();
            let sol = solve_cycle(&g, 1).unwrap();
            let mut expect = vec![2i64; n];
            expect[0] = 2;
            expect[n - 2] = 1;
            expect[n - 1] = 1;
            assert_eq!(sol.coefficients, expect, "D_{n} chain end");
            assert_eq!(sol.edge_vertex, 1);
            assert_eq!(sol.d, 2);
        }
    }

    #[test]
    fn d_fork_cycles_ramp_up_the_chain() {
        for n in 4..=12usize {
            let g = DynkinGraph::new(DuValType::D(n as u32)).unwrap();
            let sol = solve_cycle(&g, n - 1).unwrap();
            let mut expect: Vec<i64> = (1..=n - 2).map(|i| i as i64).collect();
            if n % 2 == 0 {
                expect.push(n as i64 / 2);
                expect.push((n as i64 - 2) / 2);
                assert_eq!(sol.edge_vertex, n - 1, "D_{n} even fork edge");
                assert_eq!(sol.d, n as i64 / 2);
            } else {
                expect.push((n as i64 - 1) / 2);
                expect.push((n as i64 - 1) / 2);
                assert_eq!(sol.edge_vertex, n, "D_{n} odd fork edge");
                assert_eq!(sol.d, (n as i64 - 1) / 2);
            }
            assert_eq!(sol.coefficients, expect, "D_{n} fork");
            // The mirrored fork position gives the mirrored answer.
            let mirror = solve_cycle(&g, n).unwrap();
            let mut me = sol.coefficients.clone();
            me.swap(n - 2, n - 1);
            assert_eq!(mirror.coefficients, me);
            assert_eq!(mirror.d, sol.d);
        }
    }

    #[test]
    fn cycle_consistency_against_matrix() {
        // Independent check: M·a really is -(e_meeting + e_edge).
        for (ty, meetings) in [
            (DuValType::A(7), vec![1, 2, 3, 4]),
            (DuValType::D(9), vec![1, 8, 9]),
            (DuValType::D(10), vec![1, 9, 10]),
        ] {
            let g = DynkinGraph::new(ty).unwrap();
            let m = g.intersection_matrix();
            for meet in meetings {
                let sol = solve_cycle(&g, meet).unwrap();
                for (i, row) in m.iter().enumerate() {
                    let prod: i64 = (0..g.vertex_count())
                        .map(|j| row[j] * sol.coefficients[j])
                        .sum();
                    let mut expect = 0;
                    if i + 1 == meet {
                        expect -= 1;
                    }
                    if i + 1 == sol.edge_vertex {
                        expect -= 1;
                    }
                    assert_eq!(prod, expect, "{ty} meeting {meet}, row {i}");
                }
            }
        }
    }

    #[test]
    fn invalid_meetings_are_rejected() {
        let d6 = DynkinGraph::new(DuValType::D(6)).unwrap();
        assert!(matches!(
            solve_cycle(&d6, 3),
            Err(CycleError::MeetingNotReduced { meeting: 3, coefficient: 2 })
        ));
        assert!(matches!(
            solve_cycle(&d6, 7),
            Err(CycleError::MeetingOutOfRange { meeting: 7, n: 6 })
        ));
        // E8 has no reduced vertex at all: no smooth curve passes through it.
        let e8 = DynkinGraph::new(DuValType::E(8)).unwrap();
        for v in 1..=8 {
            assert!(matches!(
                solve_cycle(&e8, v),
                Err(CycleError::MeetingNotReduced { .. })
            ));
        }
        assert!(matches!(
            DynkinGraph::new(DuValType::NotDuVal),
            Err(CycleError::UnsupportedType { .. })
        ));
    }

    #[test]
    fn positions_reconstruct_from_d() {
        assert_eq!(position_from_d(DuValType::A(5), 2), Ok(CurvePosition::AChain { k: 2 }));
        assert_eq!(position_from_d(DuValType::A(5), 3), Ok(CurvePosition::AChain { k: 3 }));
        assert!(matches!(
            position_from_d(DuValType::A(5), 4),
            Err(PositionError::InvalidMultiplicity { .. })
        ));
        assert_eq!(position_from_d(DuValType::D(4), 2), Ok(CurvePosition::D4Symmetric));
        assert_eq!(position_from_d(DuValType::D(5), 2), Err(PositionError::AmbiguousD5));
        assert_eq!(position_from_d(DuValType::D(6), 2), Ok(CurvePosition::FdL));
        assert_eq!(position_from_d(DuValType::D(6), 3), Ok(CurvePosition::FdR));
        assert_eq!(position_from_d(DuValType::D(7), 3), Ok(CurvePosition::FdR));
        assert_eq!(position_from_d(DuValType::D(12), 6), Ok(CurvePosition::FdR));
        assert!(matches!(
            position_from_d(DuValType::D(7), 4),
            Err(PositionError::InvalidMultiplicity { .. })
        ));
        assert!(matches!(
            position_from_d(DuValType::E(6), 2),
            Err(PositionError::UnsupportedType { .. })
        ));
        assert!(matches!(
            position_from_d(DuValType::Smooth, 1),
            Err(PositionError::UnsupportedType { .. })
        ));
    }

    #[test]
    fn every_solution_in_range_is_uniquely_integral() {
        // The solver already errors on ambiguity; this pins the full
        // acceptance range explicitly.
        for n in 1..=10 {
            let g = DynkinGraph::new(DuValType::A(n)).unwrap();
            for k in 1..=n as usize {
                assert!(solve_cycle(&g, k).is_ok(), "A_{n} meeting {k}");
            }
        }
        for n in 4..=12 {
            let g = DynkinGraph::new(DuValType::D(n)).unwrap();
            for k in [1, n as usize - 1, n as usize] {
                assert!(solve_cycle(&g, k).is_ok(), "D_{n} meeting {k}");
            }
        }
    }
}
