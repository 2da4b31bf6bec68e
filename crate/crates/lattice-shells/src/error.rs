use thiserror::Error;

/// Errors for data-dependent failures. Structural misuse of the API
/// (dimension mismatches, non-square inputs to square-only operations)
/// panics instead, as with most matrix kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not positive definite (pivot {pivot} at step {step} is not positive)")]
    NotPositiveDefinite { step: usize, pivot: String },

    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),

    #[error("entry {entry} is not an integer")]
    NonIntegralEntry { entry: String },

    #[error("conductor diagonal has length {got}, lattice rank is {want}")]
    ConductorLength { got: usize, want: usize },

    #[error("conductor diagonal entry {0} is not positive")]
    ConductorNotPositive(String),

    #[error("basis map does not carry the sublattice Gram to the overlattice Gram")]
    EmbeddingGramMismatch,

    #[error("basis map is singular")]
    SingularBasisMap,

    #[error("shell norm must be positive")]
    ZeroNorm,

    #[error("shell is empty")]
    EmptyShell,

    #[error("shell is not closed under negation")]
    NotAntipodal,

    #[error("shell has {got} vectors, expected {want} for an orthoplex frame")]
    WrongShellCardinality { got: usize, want: usize },

    #[error("non-integral Cartan number {0}; the vector pair is not a root configuration")]
    NonIntegralCartan(String),

    #[error("matrix is not a simply-laced Cartan candidate: {0}")]
    NotSimplyLaced(String),

    #[error("Cartan graph is not of finite simply-laced type: {0}")]
    NotFiniteSimplyLaced(String),

    #[error("first shell is not a scaled orthoplex: {0}")]
    FirstShellNotOrthoplex(String),

    #[error("orbit {signature} has {got} members, closed form predicts {want}")]
    OrbitCountMismatch {
        signature: String,
        got: u64,
        want: u64,
    },

    #[error("lattice is odd; the discriminant quadratic form needs an even lattice")]
    OddLattice,

    #[error("glue vector {0} is not in the dual lattice")]
    NotInDualLattice(String),

    #[error("glue coset {coset} has q-value {q}, not 0 mod 2")]
    NotIsotropic { coset: String, q: String },

    #[error("glue group has order {got}, embedding index is {want}")]
    GlueOrderMismatch { got: String, want: String },

    #[error("quotient is not an elementary 2-group: invariant factor {0}")]
    NotElementaryTwoGroup(String),

    #[error("no embedding of `{0}` into `{1}` is registered")]
    UnknownEmbedding(String, String),

    #[error("unknown table `{0}`")]
    UnknownTable(String),

    #[error("lattice spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
