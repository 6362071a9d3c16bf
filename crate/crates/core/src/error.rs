use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field modulus {0} (expected one of 2, 3, 5, 7)")]
    UnsupportedField(u32),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("quiver mismatch between operands")]
    QuiverMismatch,

    #[error("quiver has an oriented cycle through vertex {0}")]
    CyclicQuiver(usize),

    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("commuting square fails for arrow {arrow}")]
    NotCommuting { arrow: String },

    #[error("subspace is not closed under arrow {arrow}")]
    NotArrowClosed { arrow: String },

    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("cannot factor {value}: no factor found below trial bound {bound}")]
    FactorBound { value: String, bound: u64 },

    #[error("enumeration budget exceeded for {what}: needs {needed}, budget {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant `{invariant}` violated: {detail}")]
    Invariant { invariant: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invariant(invariant: &str, detail: impl Into<String>) -> Self {
        Error::Invariant { invariant: invariant.to_string(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
