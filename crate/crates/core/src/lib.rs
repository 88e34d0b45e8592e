//! Finite-dimensional matrix dagger categories over ℝ, ℂ and ℍ.
//!
//! Objects are dimensions, morphisms are matrices, the dagger is the
//! conjugate transpose. On top of that the crate builds dagger biproducts and
//! the semiadditive structure they induce, verifiers and constructors for the
//! axioms (H1)–(H5) of a Hilbert-space-like dagger category, the
//! reconstruction of scalars and Hermitian spaces from hom-sets, and a check
//! that projections generate all operators over ℂ in dimension at least two.

pub mod axioms;
pub mod biproduct;
pub mod campaign;
pub mod cli;
pub mod error;
pub mod lemmas;
pub(crate) mod linalg;
pub mod matcat;
pub mod oracle;
pub mod par;
pub mod projspan;
pub mod random;
pub mod reconstruct;
pub mod report;
pub mod scalar;

pub use biproduct::{copairing, derived_add, make_biproduct, oplus_mor, pairing, Biproduct};
pub use error::{Error, Result};
pub use matcat::{Morphism, Object};
pub use report::{Report, Status, SuiteReport};
pub use scalar::{FieldTag, Scalar, Tolerance};
