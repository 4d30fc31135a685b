use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("algebra kind mismatch: {0} vs {1}")]
    KindMismatch(String, String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrices have incompatible sizes")]
    ShapeMismatch,
    #[error("basis of `{0}` is linearly dependent")]
    DependentBasis(String),
    #[error("`{name}` is not a subalgebra: [X{i}, X{j}] leaves the span")]
    NotSubalgebra { name: String, i: usize, j: usize },
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("form is degenerate on the subspace")]
    DegenerateForm,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot parse family spec `{0}`: {1}")]
    Parse(String, String),
    #[error("unsupported Clifford signature ({0},{1})")]
    UnsupportedClifford(usize, usize),
    #[error("no symmetric invariant spinor form for signature ({0},{1})")]
    NoSpinorForm(usize, usize),
    #[error("factors of `{0}` do not commute")]
    FactorsDoNotCommute(String),
    #[error("invalid reductive decomposition: {0}")]
    NotReductive(String),
    #[error("{0} is not Einstein")]
    NotEinstein(String),
    #[error("interpolation degenerate: {0}")]
    DegenerateInterpolation(String),
    #[error("Cartan involution does not preserve the span of `{0}`; change base point or basis")]
    InvolutionEscapes(String),
    #[error("subspace is not θ-invariant: {0}; change the base point")]
    NotThetaInvariant(String),
    #[error("dual algebra is not compact: {0}")]
    NotCompact(String),
    #[error("unknown space tag `{0}`")]
    UnknownTag(String),
    #[error("unknown row {row} of table {table}")]
    UnknownRow { table: u8, row: u8 },
    #[error("check failed for {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
