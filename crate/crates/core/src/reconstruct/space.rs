//! The Hermitian space `hom(I, X)`.
//!
//! Vectors are morphisms `I → X`, scalars act on the right (`α · u = u ∘ α`)
//! and `⟨u, v⟩ = v⋆ ∘ u`. Everything below is computed through composition,
//! dagger and the derived addition, never through coordinate formulas.

use crate::axioms;
use crate::biproduct::{copairing, derived_sub, derived_sum};
use crate::error::{Error, Result};
use crate::matcat::{Morphism, Object};
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// Residual norm below which Gram–Schmidt treats a vector as dependent.
pub const GRAM_SCHMIDT_DROP: f64 = 1e-8;

/// A vector of `hom(I, X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianVector(Morphism);

impl HermitianVector {
    pub fn new(carrier: Morphism) -> Result<HermitianVector> {
        if carrier.dom() != Object::UNIT {
            return Err(Error::DimensionMismatch(format!(
                "a vector must have domain I, got {}",
                carrier.dom()
            )));
        }
        Ok(HermitianVector(carrier))
    }

    pub fn carrier(&self) -> &Morphism {
        &self.0
    }

    pub fn into_carrier(self) -> Morphism {
        self.0
    }

    pub fn space(&self) -> Object {
        self.0.cod()
    }

    pub fn field(&self) -> FieldTag {
        self.0.field()
    }

    /// `α · u = u ∘ α`.
    pub fn act(&self, alpha: &Scalar) -> Result<HermitianVector> {
        Ok(HermitianVector(
            self.0.compose(&Morphism::from_scalar(alpha))?,
        ))
    }

    /// `sqrt⟨u, u⟩`.
    pub fn norm(&self, tol: &Tolerance) -> Result<f64> {
        let sq = inner_product(self, self)?;
        crate::scalar::real_sqrt(sq.re(), tol)
    }
}

/// `⟨u, v⟩ = v⋆ ∘ u`.
pub fn inner_product(u: &HermitianVector, v: &HermitianVector) -> Result<Scalar> {
    if u.space() != v.space() {
        return Err(Error::DimensionMismatch(format!(
            "vectors live in {} and {}",
            u.space(),
            v.space()
        )));
    }
    v.0.dagger().compose(&u.0)?.as_scalar()
}

/// Removes from `u` its components along the orthonormal list `onb`:
/// `u − Σ eᵢ ∘ (eᵢ⋆ ∘ u)`.
pub fn orthogonal_residual(
    u: &HermitianVector,
    onb: &[HermitianVector],
) -> Result<HermitianVector> {
    let mut w = u.0.clone();
    for e in onb {
        let coeff = e.0.dagger().compose(&w)?;
        w = derived_sub(&w, &e.0.compose(&coeff)?)?;
    }
    Ok(HermitianVector(w))
}

/// A subspace given by an orthonormal spanning list.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoclosedSubspace {
    field: FieldTag,
    ambient: Object,
    onb: Vec<HermitianVector>,
}

impl OrthoclosedSubspace {
    /// Wraps a list that must already be orthonormal.
    pub fn new(
        field: FieldTag,
        ambient: Object,
        onb: Vec<HermitianVector>,
        tol: &Tolerance,
    ) -> Result<OrthoclosedSubspace> {
        for e in &onb {
            if e.space() != ambient || e.field() != field {
                return Err(Error::DimensionMismatch(
                    "basis vector outside the ambient object".into(),
                ));
            }
        }
        let s = OrthoclosedSubspace {
            field,
            ambient,
            onb,
        };
        let h = s.as_dagger_mono()?;
        if !h.is_dagger_mono(tol) {
            return Err(Error::NotDaggerMono(h.dagger_mono_residual()));
        }
        Ok(s)
    }

    /// The coordinate basis of `ambient`.
    pub fn coordinate(field: FieldTag, ambient: Object) -> OrthoclosedSubspace {
        let onb = (0..ambient.dim())
            .map(|j| HermitianVector(crate::matcat::basis_column(field, ambient.dim(), j)))
            .collect();
        OrthoclosedSubspace {
            field,
            ambient,
            onb,
        }
    }

    /// Subspace spanned by the columns of a dagger mono.
    pub fn from_dagger_mono(h: &Morphism, tol: &Tolerance) -> Result<OrthoclosedSubspace> {
        let onb = (0..h.dom().dim())
            .map(|j| HermitianVector(h.column_at(j)))
            .collect();
        OrthoclosedSubspace::new(h.field(), h.cod(), onb, tol)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn ambient(&self) -> Object {
        self.ambient
    }

    pub fn onb(&self) -> &[HermitianVector] {
        &self.onb
    }

    pub fn dim(&self) -> usize {
        self.onb.len()
    }

    pub fn spans_ambient(&self) -> bool {
        self.onb.len() == self.ambient.dim()
    }

    fn as_dagger_mono(&self) -> Result<Morphism> {
        if self.onb.is_empty() {
            return Ok(Morphism::zero(self.field, 0, self.ambient.dim()));
        }
        let cols: Vec<Morphism> = self.onb.iter().map(|e| e.0.clone()).collect();
        copairing(&cols)
    }

    /// `M⊥`, spanned by the columns of the (H3) complement of `M`'s dagger mono.
    pub fn orthocomplement(&self, tol: &Tolerance) -> Result<OrthoclosedSubspace> {
        let g = axioms::complement_h3(&self.as_dagger_mono()?, tol)?;
        OrthoclosedSubspace::from_dagger_mono(&g, tol)
    }
}

/// Orthonormalizes `vs` inside `ambient`, dropping vectors whose residual
/// norm falls below [`GRAM_SCHMIDT_DROP`]. Normalization divides on the right.
pub fn gram_schmidt(
    field: FieldTag,
    ambient: Object,
    vs: &[HermitianVector],
    tol: &Tolerance,
) -> Result<OrthoclosedSubspace> {
    let mut onb: Vec<HermitianVector> = Vec::new();
    for v in vs {
        if v.space() != ambient || v.field() != field {
            return Err(Error::DimensionMismatch(
                "vector outside the ambient object".into(),
            ));
        }
        // second pass picks up the rounding left by the first
        let w = orthogonal_residual(&orthogonal_residual(v, &onb)?, &onb)?;
        if w.norm(tol)? < GRAM_SCHMIDT_DROP {
            continue;
        }
        let h = axioms::normalize_h4b(w.carrier(), tol)?;
        onb.push(w.act(&h)?);
    }
    Ok(OrthoclosedSubspace {
        field,
        ambient,
        onb,
    })
}

/// Coefficients `cᵢ = eᵢ⋆ ∘ u` of `u` in `basis`, after checking that
/// `Σ eᵢ ∘ cᵢ` reproduces `u`.
pub fn onb_expand(
    u: &HermitianVector,
    basis: &OrthoclosedSubspace,
    tol: &Tolerance,
) -> Result<Vec<Scalar>> {
    let (coeffs, residual) = onb_expand_with_residual(u, basis)?;
    if !tol.close(residual, u.carrier().frobenius_norm(), 0.0) {
        return Err(Error::Residual(residual));
    }
    Ok(coeffs)
}

/// Like [`onb_expand`] but returns the reconstruction residual instead of
/// judging it.
pub fn onb_expand_with_residual(
    u: &HermitianVector,
    basis: &OrthoclosedSubspace,
) -> Result<(Vec<Scalar>, f64)> {
    if u.space() != basis.ambient {
        return Err(Error::DimensionMismatch(
            "vector outside the basis' ambient object".into(),
        ));
    }
    let mut coeffs = Vec::with_capacity(basis.dim());
    let mut terms = Vec::with_capacity(basis.dim());
    for e in &basis.onb {
        let c = e.0.dagger().compose(&u.0)?;
        terms.push(e.0.compose(&c)?);
        coeffs.push(c.as_scalar()?);
    }
    let recon = derived_sum(basis.field, Object::UNIT, basis.ambient, &terms)?;
    let residual = recon.frobenius_distance(&u.0)?;
    Ok((coeffs, residual))
}

/// The dagger mono `[e₁, …, eₙ]` whose image is `M`; `0 → X` for `M = 0`.
pub fn subspace_to_dagger_mono(m: &OrthoclosedSubspace) -> Morphism {
    m.as_dagger_mono()
        .expect("basis vectors share the ambient object")
}

/// The orthogonal projection `h ∘ h⋆` onto `M`.
pub fn projection_of_subspace(m: &OrthoclosedSubspace) -> Morphism {
    let h = subspace_to_dagger_mono(m);
    h.compose(&h.dagger()).expect("shapes agree")
}
