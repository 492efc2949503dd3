//! Error type shared by all geometry modules.

use thiserror::Error;

/// Why a seed angle cannot start a Poncelet triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedRejection {
    /// S_AA has the wrong sign for the conic kind (no real tangents).
    WrongSignature,
    /// The seed lies on the conic itself (tangents coincide).
    OnConic,
    /// The seed lies on a common tangent of the circle and the conic.
    CommonTangent,
}

impl std::fmt::Display for SeedRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedRejection::WrongSignature => write!(f, "no real tangents from seed"),
            SeedRejection::OnConic => write!(f, "seed lies on the conic"),
            SeedRejection::CommonTangent => write!(f, "seed lies on a common tangent"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("non-finite coordinate or parameter")]
    NonFinite,
    #[error("degenerate central conic: need a > b, t < a, t != b (a={a}, b={b}, t={t})")]
    DegenerateConic { a: f64, b: f64, t: f64 },
    #[error("circle radius must be positive and finite (R={0})")]
    InvalidRadius(f64),
    #[error("tolerances must be strictly positive")]
    InvalidTolerances,
    #[error("polar line degenerates: all coefficients below tolerance")]
    DegeneratePolar,
    #[error("polar is the line at infinity (pole is the conic center)")]
    NoFinitePolar,
    #[error("line through the two points is not tangent to the conic")]
    NotTangent,
    #[error("section point too close to an endpoint (or at infinity) to classify")]
    AmbiguousSection,
    #[error("no real tangents from the point to the conic")]
    NoRealTangents,
    #[error("tangent pencil degenerates (U and V both vanish)")]
    DegenerateTangency,
    #[error("point does not lie on the circle")]
    PointNotOnCircle,
    #[error("chord undefined: the two tangent chords collapse to a point")]
    DegenerateChord,
    #[error("a focus lies on the circle (t = b degeneracy)")]
    FocusOnCircle,
    #[error("foci are inverse points with respect to the circle (t = a degeneracy)")]
    InverseFociDegeneracy,
    #[error("circle center coincides with a focus; dual radius undefined")]
    CenterIsFocus,
    #[error("inadmissible seed: {0}")]
    InadmissibleSeed(SeedRejection),
    #[error("triangle failed to close (defect {defect:e} exceeds {limit:e})")]
    ClosureFailure { defect: f64, limit: f64 },
    #[error("no admissible seed produced a triangle")]
    EmptyFamily,
    #[error("degenerate (collinear) triangle")]
    DegenerateTriangle,
    #[error("operation requires a focus-centered pair")]
    NotFocusCentered,
    #[error("operation requires a concentric pair")]
    NotConcentric,
    #[error("vertices are collinear")]
    CollinearVertices,
    #[error("triangle has a right angle: a Marden weight vanishes")]
    RightAngleDegeneracy,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
    #[error("square root argument is negative (x outside the admissible range)")]
    NegativeRadicand,
    #[error("formula denominator vanishes at this input")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
