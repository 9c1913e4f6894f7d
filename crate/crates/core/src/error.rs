use thiserror::Error;

use crate::lattice::Space;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: Space, right: Space },
    #[error("finite space needs at least one point")]
    EmptySpace,
    #[error("value vector has length {got}, space has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point {point} is not in {space}")]
    PointOutOfRange { point: usize, space: Space },
    #[error("operation requires a finite space, got {0}")]
    NotFinite(Space),

    #[error("negative argument to a radical")]
    NegativeRadicand,
    #[error("radical degree must be at least 1")]
    ZeroDegree,
    #[error("empty argument list")]
    EmptyArguments,
    #[error("product radical of degree {degree} needs exactly {degree} arguments, got {got}")]
    ProductArity { degree: usize, got: usize },
    #[error("radical degree {radical} does not match polynomial degree {polynomial}")]
    RadicalDegreeMismatch { radical: usize, polynomial: usize },
    #[error("radical arguments are only evaluated exactly for measure-represented polynomials")]
    RadicalOnTensor,
    #[error("mixed-degree radical arithmetic ({0} vs {1})")]
    MixedRadicalDegree(usize, usize),
    #[error("radicand {0} is too large to factor")]
    RadicandTooLarge(String),

    #[error("rearrangement index {k} out of range 1..={m}")]
    RearrangementIndex { k: usize, m: usize },
    #[error("principal ideal generator must be nonnegative and nonzero")]
    BadGenerator,
    #[error("element is not in the principal ideal")]
    NotInIdeal,

    #[error("unsupported family kind for {role}: {kind}")]
    UnsupportedFamily { role: &'static str, kind: String },
    #[error("bound {bound} violated at index {index}: sup-norm {norm}")]
    BoundViolated { index: usize, bound: String, norm: String },
    #[error("certificate does not verify: {0}")]
    Unverifiable(String),
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("certificate limit must be zero")]
    NonZeroLimit,

    #[error("form expects {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("tensor index {0:?} is out of range or has the wrong length")]
    BadIndex(Vec<usize>),
    #[error("duplicate atom at point {0}")]
    DuplicateAtom(usize),
    #[error("mode {mode} is not applicable: {reason}")]
    ModeNotApplicable { mode: String, reason: String },
    #[error("polynomial is not orthogonally additive (off-diagonal entry at {0:?})")]
    NotOrthogonallyAdditive(Vec<usize>),
    #[error("operation requires a measure-represented polynomial")]
    NotMeasure,
    #[error("limit atom on a finite space")]
    LimitAtomOnFinite,
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("decomposition of argument {arg} is invalid: {reason}")]
    BadPartition { arg: usize, reason: String },

    #[error("{0}")]
    NoWitness(String),

    #[error("invalid instance at {path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
