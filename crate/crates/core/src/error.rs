use thiserror::Error;

/// Errors raised by the poset, homology, partition and arrangement layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements {0} and {1} are not comparable (expected {0} <= {1})")]
    NotComparable(String, String),
    #[error("bounded poset has 0^ = 1^; proper part is undefined")]
    DegenerateBounds,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("dimension {dim} outside the complex (top dimension {top})")]
    DimensionOutOfRange { dim: isize, top: isize },
    #[error("top homology has rank {0}, expected 1")]
    RankNotOne(usize),
    #[error("chain #{0} is not a cycle")]
    NotACycle(usize),
    #[error("size mismatch: {0} cycles vs {1} facets")]
    SizeMismatch(usize, usize),
    #[error("poset is not a Boolean lattice: {0}")]
    NotBoolean(String),
    #[error("chain {0} is not a face of the ambient complex")]
    MissingChain(String),
    #[error("coefficient does not fit in a machine integer")]
    CoefficientOverflow,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("constraint matrix of region {0} is singular")]
    SingularConstraints(String),
    #[error("vector is not generic for the arrangement: {0}")]
    NotGeneric(String),
    #[error("extreme ray {ray} of region {region} is orthogonal to the slicing vector")]
    GenericityViolated { region: String, ray: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
