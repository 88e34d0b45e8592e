//! The scalars `𝔽 = 𝒞(I, I)ᵒᵖ` rebuilt from the category: addition is the
//! derived sum, multiplication is reversed composition and `⋆` is the dagger.

use crate::axioms::{centre_basis, complement_h3, normalize_h4b};
use crate::biproduct::{derived_add, diagonal_pair, make_biproduct};
use crate::error::{Error, Result};
use crate::matcat::{Morphism, Object};
use crate::report::{Report, Status};
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// Ring operations on the endomorphisms of `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalarFieldRecon {
    pub field: FieldTag,
}

impl ScalarFieldRecon {
    pub fn new(field: FieldTag) -> ScalarFieldRecon {
        ScalarFieldRecon { field }
    }

    fn check(&self, a: &Morphism) -> Result<()> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: a.field(),
            });
        }
        if a.dom() != Object::UNIT || a.cod() != Object::UNIT {
            return Err(Error::DimensionMismatch(format!(
                "expected an endomorphism of I, got {}→{}",
                a.dom(),
                a.cod()
            )));
        }
        Ok(())
    }

    /// The element `[[α]]`.
    pub fn element(&self, alpha: &Scalar) -> Result<Morphism> {
        if alpha.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: alpha.field(),
            });
        }
        Ok(Morphism::from_scalar(alpha))
    }

    pub fn zero(&self) -> Morphism {
        Morphism::zero(self.field, 1, 1)
    }

    pub fn one(&self) -> Morphism {
        Morphism::identity(self.field, 1)
    }

    pub fn add(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        self.check(a)?;
        self.check(b)?;
        derived_add(a, b)
    }

    pub fn neg(&self, a: &Morphism) -> Result<Morphism> {
        self.check(a)?;
        a.scaled(&Scalar::real(self.field, -1.0))
    }

    /// `α · β = β ∘ α`.
    pub fn mul(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        self.check(a)?;
        self.check(b)?;
        b.compose(a)
    }

    pub fn star(&self, a: &Morphism) -> Result<Morphism> {
        self.check(a)?;
        Ok(a.dagger())
    }

    /// Two-sided inverse for `·`, the compositional inverse.
    pub fn inv(&self, a: &Morphism, tol: &Tolerance) -> Result<Morphism> {
        self.check(a)?;
        Ok(Morphism::from_scalar(&a.as_scalar()?.inv(tol)?))
    }
}

/// The two components of `k : I ⊕ I → I` with `k ∘ Δ_I = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldWitness {
    pub k1: Scalar,
    pub k2: Scalar,
    /// `k1 + k2` through the derived addition
    pub sum: Scalar,
    /// `‖k ∘ Δ_I ∘ h‖`
    pub annihilation_residual: f64,
}

/// Replays the construction showing that the sum of two nonzero scalars can
/// vanish: normalize `Δ_I` by `h = 1/√2`, complete it with `f : J → I ⊕ I`,
/// take `g = id_J` and `k = g⋆ ∘ f⋆`; then `k₁ + k₂ = k ∘ Δ_I = 0`.
pub fn scalar_field_witness(field: FieldTag, tol: &Tolerance) -> Result<FieldWitness> {
    let delta = diagonal_pair(field, Object::UNIT).diagonal;
    let h = normalize_h4b(&delta, tol)?;
    let unit_delta = delta.scaled(&h)?;
    let f = complement_h3(&unit_delta, tol)?;
    let g = Morphism::identity(field, f.dom().dim());
    let k = g.dagger().compose(&f.dagger())?;
    let bp = make_biproduct(field, Object::UNIT, Object::UNIT);
    let k1 = k.compose(&bp.inj_left)?;
    let k2 = k.compose(&bp.inj_right)?;
    let sum = derived_add(&k1, &k2)?;
    Ok(FieldWitness {
        k1: k1.as_scalar()?,
        k2: k2.as_scalar()?,
        sum: sum.as_scalar()?,
        annihilation_residual: k.compose(&unit_delta)?.frobenius_norm(),
    })
}

/// Looks for a central scalar with `α² = −1`. The centre is computed as a
/// real subspace; if it is only `ℝ·1`, then `α² ≥ 0` for every central `α`.
pub fn center_sqrt_minus_one_test(field: FieldTag, tol: &Tolerance) -> Report {
    let basis = centre_basis(field);
    let axiom = "centre-sqrt-minus-one";
    // component of the centre orthogonal to 1
    let imaginary = basis.iter().find_map(|b| {
        let c = b.components();
        let w: Vec<f64> = std::iter::once(0.0).chain(c[1..].iter().copied()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        (norm > 1e-6).then(|| Scalar::new(field, &w).expect("width").scale(1.0 / norm))
    });
    match imaginary {
        Some(alpha) => {
            let residual = (alpha * alpha + Scalar::one(field)).norm();
            Report::check(axiom, field, residual <= tol.abs_eps, residual)
                .with_witness(Morphism::from_scalar(&alpha))
                .with_detail(format!("alpha = {alpha}"))
        }
        None => Report::new(axiom, field, Status::Infeasible, 1.0).with_detail(format!(
            "centre has real dimension {}; central squares are non-negative",
            basis.len()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn witness_values() {
        for field in FieldTag::ALL {
            let w = scalar_field_witness(field, &tol()).unwrap();
            assert!((w.k1.re() - FRAC_1_SQRT_2).abs() < 1e-12, "{field}");
            assert!((w.k2.re() + FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((w.k1.norm() - w.k2.norm()).abs() < 1e-12);
            assert!(w.sum.norm() < 1e-12);
            assert!(w.annihilation_residual < 1e-12);
        }
    }

    #[test]
    fn centre_search() {
        let t = tol();
        let c = center_sqrt_minus_one_test(FieldTag::Complex, &t);
        assert_eq!(c.status, Status::Pass);
        let alpha = c.witness.unwrap().as_scalar().unwrap();
        assert!((alpha.components()[1].abs() - 1.0).abs() < 1e-12);
        for field in [FieldTag::Real, FieldTag::Quaternion] {
            assert_eq!(
                center_sqrt_minus_one_test(field, &t).status,
                Status::Infeasible
            );
        }
    }

    #[test]
    fn multiplication_is_reversed() {
        let f = ScalarFieldRecon::new(FieldTag::Quaternion);
        let i = f.element(&Scalar::quaternion(0.0, 1.0, 0.0, 0.0)).unwrap();
        let j = f.element(&Scalar::quaternion(0.0, 0.0, 1.0, 0.0)).unwrap();
        // i · j = j ∘ i = [[j i]] = [[−k]]
        let ij = f.mul(&i, &j).unwrap().as_scalar().unwrap();
        assert_eq!(ij, Scalar::quaternion(0.0, 0.0, 0.0, -1.0));
        let inv = f.inv(&f.add(&i, &j).unwrap(), &tol()).unwrap();
        let prod = f.mul(&inv, &f.add(&i, &j).unwrap()).unwrap();
        assert!(prod.approx_eq(&f.one(), &tol()));
    }

    #[test]
    fn rejects_non_scalars() {
        let f = ScalarFieldRecon::new(FieldTag::Real);
        assert!(f
            .add(&Morphism::identity(FieldTag::Real, 2), &f.one())
            .is_err());
        assert!(f
            .mul(&Morphism::identity(FieldTag::Complex, 1), &f.one())
            .is_err());
    }
}
