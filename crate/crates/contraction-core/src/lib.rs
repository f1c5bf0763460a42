//! Exact-arithmetic classification of divisorial contractions of a surface
//! to a curve on hypersurface 3-folds.
//!
//! Given a germ of a hypersurface 3-fold `X ⊂ ℂ⁴` that is smooth away from a
//! point `P`, together with a smooth curve `Γ ⊂ X` through `P`, this crate:
//!
//! - classifies the Du Val type of the general hyperplane section of `X`
//!   through `Γ` and the position of `Γ` in its minimal resolution
//!   ([`duval`], [`cycles`], [`oracle`]);
//! - computes the blow-up of `X` along `Γ` chart by chart, identifies the
//!   exceptional components `E₁` (dominating `Γ`) and `E₂` (over `P`), and
//!   extracts the multiplicity `d` with `f⁻¹(Γ) = E₁ + d·E₂` ([`blowup`]);
//! - reduces the germ to the normal forms attached to each curve position,
//!   with certified unit-and-coordinate-change data ([`normal_form`]);
//! - decides whether a terminal (or only canonical) divisorial contraction
//!   to `(X, Γ)` exists, with the singularity data of the resulting 3-fold,
//!   and cross-checks the decision against the ℚ-factorialization charts
//!   ([`oracle`]).
//!
//! All arithmetic is exact over ℚ. Power series are handled as jets
//! (truncations at a stated total-degree order), and every reported result
//! either is certified at that order or is returned as an explicit
//! "undetermined at this order" / "inconclusive within budget" outcome.

pub mod algebra {
    pub mod change;
    pub mod factor;
    pub mod groebner;
    pub mod ideal;
    pub mod jet;
    pub mod parse;
    pub mod poly;
    pub mod weierstrass;
}

pub mod blowup;
pub mod cycles;
pub mod duval;
pub mod germ;
pub mod normal_form;
pub mod oracle;

pub use algebra::change::CoordinateChange;
pub use algebra::jet::Jet;
pub use algebra::parse::{parse_poly, ParseError};
pub use algebra::poly::{Poly, Q, Vars};

/// Default jet order used when callers do not specify one.
pub const DEFAULT_ORDER: u32 = 12;
