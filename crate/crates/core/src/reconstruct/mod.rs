//! Reconstruction of the Hilbert-space structure from the category: scalars
//! as `𝒞(I, I)ᵒᵖ`, vectors as `hom(I, X)`, and the functor `hom(I, −)`.

pub mod field;
pub mod functor;
pub mod space;

pub use field::{center_sqrt_minus_one_test, scalar_field_witness, FieldWitness, ScalarFieldRecon};
pub use functor::{
    faithful_trial, faithfulness_check, functor_v, rank_n_object, separating_column,
};
pub use space::{
    gram_schmidt, inner_product, onb_expand, onb_expand_with_residual, orthogonal_residual,
    projection_of_subspace, subspace_to_dagger_mono, HermitianVector, OrthoclosedSubspace,
    GRAM_SCHMIDT_DROP,
};
