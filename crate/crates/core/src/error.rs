use thiserror::Error;

use crate::scalar::FieldTag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldTag, right: FieldTag },

    #[error("scalar over {field} needs {expected} components, got {got}")]
    ScalarWidth {
        field: FieldTag,
        expected: usize,
        got: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("scalar is not invertible (norm {0:e})")]
    NonInvertible(f64),

    #[error("real_sqrt of negative value {0:e}")]
    DomainError(f64),

    #[error("morphism is not a dagger monomorphism (residual {0:e})")]
    NotDaggerMono(f64),

    #[error("no non-zero morphism into the zero object")]
    NoMorphism,

    #[error("zero vector cannot be normalized")]
    NotNormalizable,

    #[error("morphism is not unitary (residual {0:e})")]
    NonUnitary(f64),

    #[error("operation not supported over {0}")]
    UnsupportedField(FieldTag),

    #[error("empty morphism list")]
    EmptyList,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("index poset is not directed: {0}")]
    NotDirected(String),

    #[error("basis does not span the ambient object (residual {0:e})")]
    Residual(f64),

    #[error("linear algebra failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
