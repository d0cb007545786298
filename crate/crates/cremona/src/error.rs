//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong, from arithmetic up to family construction.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("rewrite rule does not decrease the graded-lex order: {0}")]
    BadRule(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("no image supplied for variable `{0}`")]
    MissingImage(String),
    #[error("every component of the tuple is zero")]
    AllZeroTuple,
    #[error("component block {0} is identically zero")]
    IdenticallyZeroBlock(usize),
    #[error("component blocks do not match the target model")]
    BlockMismatch,
    #[error("component is not multihomogeneous: {0}")]
    NotMultihomogeneous(String),
    #[error("pullback of `{0}` does not vanish on the source model")]
    EquationNotPreserved(String),
    #[error("representatives disagree on the source model")]
    RepMismatch,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("point does not satisfy the model equations")]
    PointOffModel,
    #[error("point has an all-zero coordinate block")]
    ZeroBlock,
    #[error("model has no conic-bundle projection")]
    NoProjection,
    #[error("source and target models do not match")]
    ModelMismatch,
    #[error("curve lies in the base locus of the map")]
    CurveInBaseLocus,
    #[error("no representative of the map is defined at {0}")]
    UndefinedAtPoint(String),
    #[error("not an automorphism of a supported surface: {0}")]
    NotAnAutomorphism(String),
    #[error("image of curve `{0}` is not a named curve")]
    ImageNotNamed(String),
    #[error("induced permutation is not a symmetry of the hexagon")]
    NotDihedral,
    #[error("orbit escaped the candidate set (bound {0})")]
    OrbitEscape(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("configuration point {0} is real")]
    RealPoint(String),
    #[error("the point at infinity has no interval invariant")]
    InfinitePoint,
    #[error("element acts trivially on the sections; no double cover")]
    KernelElement,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("need at least three distinct points, got {0}")]
    DegenerateTriple(usize),
    #[error("configuration sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
