use alloc::string::String;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("path is not composable: {0}")]
    NotComposable(String),
    #[error("relation terms are not parallel: {0}")]
    NotParallel(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("cannot mutate at `{0}`: loop or 2-cycle")]
    MutationObstructed(String),
    #[error("algebra is not finite-dimensional within path length {0}")]
    InfiniteDimensional(usize),
    #[error("quotient is the zero algebra")]
    ZeroAlgebra,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("resolution did not terminate within {0} steps")]
    ResolutionCap(usize),
    #[error("global dimension is larger than 2")]
    GlobalDimensionTooLarge,
    #[error("module is not projective")]
    NotProjective,
    #[error("could not split module: {0}")]
    DecompositionFailed(String),
    #[error("fragment of the AR quiver is incomplete: {0}")]
    IncompleteFragment(String),
    #[error("not a local slice: {0}")]
    NotLocalSlice(String),
    #[error("module is not a sum of slice modules: {0}")]
    NotInSlice(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
