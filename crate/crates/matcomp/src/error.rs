use thiserror::Error;

/// Errors reported by the library.
///
/// Domain errors (a well-formed request that the mathematics rejects, such as
/// composing relations with mismatched interfaces) and malformed-value errors
/// (duplicate labels, out-of-range subsets) share this one type; the CLI maps
/// them onto its exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),

    #[error("label `{0}` does not belong to the ground set")]
    UnknownLabel(String),

    #[error("ground set too large: {size} points (cap {max}, override with MATCOMP_MAX_GROUND)")]
    TooManyPoints { size: usize, max: usize },

    #[error("ground sets do not match: {0}")]
    GroundMismatch(String),

    #[error("interface mismatch: codomain {found} does not match expected domain {expected}")]
    InterfaceMismatch { expected: String, found: String },

    #[error("label clash while forming a disjoint union: {0}")]
    LabelClash(String),

    #[error("family is not a matroid: {0}")]
    NotAMatroid(String),

    #[error("relation does not satisfy the exchange axiom: {0}")]
    NotExchange(String),

    #[error("operation undefined on a zero morphism")]
    ZeroMorphism,

    #[error("operation undefined on the zero matroid")]
    ZeroMatroid,

    #[error("point `{0}` is missing from the ground set")]
    MissingPoint(String),

    #[error("sets must be disjoint: {0}")]
    OverlappingSets(String),

    #[error("relation is not symmetric on block {{{0}}}")]
    SymmetryViolation(String),

    #[error("set is not M-convex: {0}")]
    NotMConvex(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed digraph: {0}")]
    MalformedDigraph(String),

    #[error("multifold plan shape violation: {0}")]
    ShapeViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
