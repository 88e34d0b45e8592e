//! Verifiers and constructors for the axioms (H1)–(H5) on the matrix model.

mod colimit;
mod refute;
mod sqrt;

pub use colimit::{
    competing_cocone, finite_directed_colimit, jointly_epic_check, mediate, random_diagram,
    subset_diagram, ColimitCocone, DirectedDiagram, EpicCheck, EpicWitness,
};
pub use refute::{
    analyse_h5_scalar_case, centre_basis, centre_dimension, commutant_dimension,
    refute_h5_scalar_case, H5Refutation,
};
pub use sqrt::{
    is_strict_sqrt, polynomial_fit_residual, principal_sqrt, strict_sqrt_c, strictness_check,
    ProjectionFamily, RootNode, StrictSqrtCertificate, StrictnessCheck, CLUSTER_TOL,
};

use crate::biproduct::{copairing, make_biproduct};
use crate::error::{Error, Result};
use crate::matcat::{basis_column, Morphism, Object};
use crate::reconstruct::space::{orthogonal_residual, HermitianVector};
use crate::report::Report;
use crate::scalar::{real_sqrt, FieldTag, Scalar, Tolerance};

/// (H1): the canonical biproduct of every pair drawn from `dims` satisfies
/// the dagger biproduct laws.
pub fn check_h1(field: FieldTag, dims: &[usize], tol: &Tolerance) -> Report {
    let mut worst = 0.0f64;
    let mut failure = None;
    for &a in dims {
        for &b in dims {
            let bp = make_biproduct(field, Object(a), Object(b));
            let r = bp
                .residuals()
                .expect("canonical injections share a codomain");
            if r.max() > worst {
                worst = r.max();
            }
            if !r.passes(tol) && failure.is_none() {
                failure = Some((a, b, bp.inj_left));
            }
        }
    }
    match failure {
        None => Report::check("H1", field, true, worst)
            .with_detail(format!("{} pairs", dims.len() * dims.len())),
        Some((a, b, w)) => Report::check("H1", field, false, worst)
            .with_witness(w)
            .with_detail(format!("biproduct {a}+{b} violates the laws")),
    }
}

/// (H3): a dagger mono `g : B → X` completing `f : A → X` to a dagger
/// biproduct. Columns come from pivoted Gram–Schmidt on the coordinate
/// vectors against the range of `f`, so `dim B = dim X − dim A`.
pub fn complement_h3(f: &Morphism, tol: &Tolerance) -> Result<Morphism> {
    if !f.is_dagger_mono(tol) {
        return Err(Error::NotDaggerMono(f.dagger_mono_residual()));
    }
    let field = f.field();
    let n = f.cod().dim();
    let need = n - f.dom().dim();
    let mut basis: Vec<HermitianVector> = (0..f.dom().dim())
        .map(|j| HermitianVector::new(f.column_at(j)))
        .collect::<Result<_>>()?;
    let mut chosen: Vec<Morphism> = Vec::with_capacity(need);
    for _ in 0..need {
        let mut best: Option<(f64, HermitianVector)> = None;
        for j in 0..n {
            let e = HermitianVector::new(basis_column(field, n, j))?;
            let w = orthogonal_residual(&orthogonal_residual(&e, &basis)?, &basis)?;
            let norm = w.norm(tol)?;
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, w));
            }
        }
        let (_, w) = best.expect("n > 0 whenever a complement vector is needed");
        let h = normalize_h4b(w.carrier(), tol)?;
        let unit = w.act(&h)?;
        chosen.push(unit.carrier().clone());
        basis.push(unit);
    }
    if chosen.is_empty() {
        return Ok(Morphism::zero(field, 0, n));
    }
    copairing(&chosen)
}

/// (H4)(a): a non-zero morphism `I → A`, the first coordinate column.
pub fn construct_h4a(field: FieldTag, a: Object) -> Result<Morphism> {
    if a.is_zero() {
        return Err(Error::NoMorphism);
    }
    Ok(basis_column(field, a.dim(), 0))
}

/// (H4)(b): the automorphism `h` of `I` with `u ∘ h` a dagger mono, namely
/// `h = 1 / sqrt(u⋆ ∘ u)`.
pub fn normalize_h4b(u: &Morphism, tol: &Tolerance) -> Result<Scalar> {
    if u.dom() != Object::UNIT {
        return Err(Error::DimensionMismatch(format!(
            "expected a morphism out of I, got domain {}",
            u.dom()
        )));
    }
    let gram = u.dagger().compose(u)?.as_scalar()?;
    let norm = real_sqrt(gram.re(), tol)?;
    if tol.is_zero(norm) {
        return Err(Error::NotNormalizable);
    }
    Scalar::real(u.field(), norm).inv(tol)
}

/// Uniqueness of the dagger simple object: a dagger iso between two copies of
/// `I`, built from (H4)(a) and (H4)(b).
pub fn simple_object_iso(field: FieldTag, tol: &Tolerance) -> Result<Morphism> {
    let u = construct_h4a(field, Object::UNIT)?;
    let h = normalize_h4b(&u, tol)?;
    u.scaled(&h)
}
