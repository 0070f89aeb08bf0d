use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no image under the substitution")]
    UnmappedVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("empty variety: the ideal contains 1")]
    EmptyVariety,
    #[error("ring homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("generator set mismatch")]
    GeneratorMismatch,
    #[error("inconsistent presentation: a relation reduces to the nonzero constant {0}")]
    InconsistentPresentation(String),
    #[error("degree budget exceeded: input degree {degree} + rule degree {rule_degree} > cap {cap}")]
    DegreeBudget { degree: usize, rule_degree: usize, cap: usize },
    #[error("rewrite system is cap-limited at degree {0}")]
    CapLimited(usize),
    #[error("cone is not pointed; lineality space spanned by {0}")]
    NotPointed(String),
    #[error("images do not commute")]
    NonCommuting,
    #[error("joint spectrum is not rational")]
    IrrationalSpectrum,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("sampling exhausted: {0}")]
    SamplingExhausted(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
