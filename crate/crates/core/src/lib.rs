//! Decides discreteness, non-discreteness, or non-freeness of two-generator
//! subgroups of the real Möbius group acting on the hyperbolic plane.
//!
//! The decision procedure runs the Gilman–Maskit geometric algorithm in its
//! shortened form: instead of materializing linear steps it computes each
//! Fibonacci exponent in closed form by Euclidean division on half
//! translation lengths (hyperbolic pairs) or on trace decrements (pairs with
//! a parabolic). In the discrete-free case the stopping generators realize
//! the shortest geodesics on the quotient surface.
//!
//! Module map:
//! - [`moebius`] — matrix arithmetic and trace classification of isometries
//! - [`geometry`] — geodesics, common perpendiculars, reflection factors,
//!   separation and side predicates
//! - [`word`] — freely reduced words in two generators
//! - [`algorithm`] — the main loop, step counts, stopping tests, verdicts
//! - [`oracle`] — independent brute-force checks and instance generation

pub mod algorithm;
pub mod geometry;
pub mod moebius;
pub mod oracle;
pub mod word;

use moebius::IsometryClass;

/// Default tolerance driving classification and separation predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default band around integer length ratios inside which the closed-form
/// floor is distrusted and the geometric separation count decides.
pub const DEFAULT_RATIO_TOLERANCE: f64 = 1e-7;
/// Default hard cap on Fibonacci steps. The trace-decrement lower bound makes
/// this unreachable for sane inputs; it exists as a floating-point failsafe.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix determinant {0} is not positive; not a lift of an orientation-preserving isometry")]
    NonPositiveDeterminant(f64),
    #[error("matrix entries are not finite")]
    NonFiniteEntries,
    #[error("element is the identity")]
    IdentityElement,
    #[error("element is not hyperbolic (classified {0:?})")]
    NotHyperbolic(IsometryClass),
    #[error("geodesic ends coincide")]
    DegenerateGeodesic,
    #[error("geodesics are not disjoint ({0:?})")]
    NotDisjoint(geometry::IntersectionKind),
    #[error("fixed point coincides with an end of the geodesic")]
    DegenerateSide,
    #[error("geodesic is not perpendicular to the axis (or does not pass through the parabolic fixed point)")]
    NotPerpendicular,
    #[error("generators share a fixed point; the group is elementary")]
    ElementaryGroup,
    #[error("a generator is the identity")]
    IdentityGenerator,
    #[error("axes intersect inside the plane; use the intersecting-axes branch")]
    IntersectingAxes,
    #[error("pair member is not of the class this operation expects")]
    WrongPairClass,
    #[error("commutator trace is 2 within tolerance; configuration is elementary or degenerate")]
    DegenerateCommutator,
    #[error("computed step count is zero; the stopping test must decide this configuration")]
    ZeroStepCount,
    #[error("step limit {0} exceeded without a verdict")]
    MaxStepsExceeded(usize),
    #[error("unsatisfiable instance spec: {0}")]
    UnsatisfiableSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
