//! Dagger biproducts and the semiadditive structure they induce.
//!
//! Addition of morphisms is never computed entrywise here. `derived_add`
//! evaluates `∇_Y ∘ (f ⊕ g) ∘ Δ_X`, where `⊕` on morphisms is assembled from
//! the injections and copairing, and `Δ`/`∇` come from pairing identities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcat::{Morphism, Object};
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// A dagger biproduct `left → total ← right`.
#[derive(Debug, Clone, PartialEq)]
pub struct Biproduct {
    pub left: Object,
    pub right: Object,
    pub total: Object,
    pub inj_left: Morphism,
    pub inj_right: Morphism,
}

/// Residuals of the biproduct laws for an injection pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiproductResiduals {
    /// `‖ι_A⋆ ∘ ι_A − id‖`
    pub left_mono: f64,
    /// `‖ι_B⋆ ∘ ι_B − id‖`
    pub right_mono: f64,
    /// `‖ι_B⋆ ∘ ι_A‖`
    pub orthogonality: f64,
    /// `‖ι_A∘ι_A⋆ + ι_B∘ι_B⋆ − id‖`, with `+` the derived addition
    pub completeness: f64,
}

impl BiproductResiduals {
    pub fn max(&self) -> f64 {
        self.left_mono
            .max(self.right_mono)
            .max(self.orthogonality)
            .max(self.completeness)
    }

    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.max() <= tol.abs_eps
    }
}

impl Biproduct {
    pub fn field(&self) -> FieldTag {
        self.inj_left.field()
    }

    pub fn residuals(&self) -> Result<BiproductResiduals> {
        verify_injections(&self.inj_left, &self.inj_right)
    }
}

/// Checks the dagger biproduct laws for an arbitrary pair of injections into
/// a common object.
pub fn verify_injections(inj_left: &Morphism, inj_right: &Morphism) -> Result<BiproductResiduals> {
    if inj_left.cod() != inj_right.cod() {
        return Err(Error::DimensionMismatch(format!(
            "injections land in {} and {}",
            inj_left.cod(),
            inj_right.cod()
        )));
    }
    let field = inj_left.field();
    let total = inj_left.cod().dim();
    let range_left = inj_left.compose(&inj_left.dagger())?;
    let range_right = inj_right.compose(&inj_right.dagger())?;
    let sum = derived_add(&range_left, &range_right)?;
    Ok(BiproductResiduals {
        left_mono: inj_left.dagger_mono_residual(),
        right_mono: inj_right.dagger_mono_residual(),
        orthogonality: inj_right.dagger().compose(inj_left)?.frobenius_norm(),
        completeness: sum.frobenius_distance(&Morphism::identity(field, total))?,
    })
}

/// Canonical biproduct `A ⊕ B` with block injections `[I; 0]` and `[0; I]`.
/// For `B = 0` the left injection is `id_A`.
pub fn make_biproduct(field: FieldTag, a: Object, b: Object) -> Biproduct {
    let total = a.dim() + b.dim();
    let mut inj_left = Morphism::zero(field, a.dim(), total);
    let mut inj_right = Morphism::zero(field, b.dim(), total);
    let one = Scalar::one(field).raw();
    for i in 0..a.dim() {
        inj_left.set_raw(i, i, one);
    }
    for i in 0..b.dim() {
        inj_right.set_raw(a.dim() + i, i, one);
    }
    Biproduct {
        left: a,
        right: b,
        total: Object(total),
        inj_left,
        inj_right,
    }
}

/// Copairing `[f₁, …, fₙ] : A₁ ⊕ … ⊕ Aₙ → X` of morphisms with common
/// codomain: the unique map restricting to `fᵢ` along the `i`-th injection.
pub fn copairing(fs: &[Morphism]) -> Result<Morphism> {
    let first = fs.first().ok_or(Error::EmptyList)?;
    let field = first.field();
    let cod = first.cod().dim();
    let mut dom = 0;
    for f in fs {
        if f.field() != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: f.field(),
            });
        }
        if f.cod().dim() != cod {
            return Err(Error::DimensionMismatch(format!(
                "copairing needs a common codomain, got {} and {}",
                cod,
                f.cod()
            )));
        }
        dom += f.dom().dim();
    }
    let mut out = Morphism::zero(field, dom, cod);
    let mut offset = 0;
    for f in fs {
        for r in 0..cod {
            for c in 0..f.dom().dim() {
                out.set_raw(r, offset + c, *f.raw(r, c));
            }
        }
        offset += f.dom().dim();
    }
    Ok(out)
}

/// Pairing `(f₁, …, fₙ) : X → B₁ ⊕ … ⊕ Bₙ` of morphisms with common domain.
/// Computed as the dagger of the copairing of daggers.
pub fn pairing(fs: &[Morphism]) -> Result<Morphism> {
    let daggers: Vec<Morphism> = fs.iter().map(Morphism::dagger).collect();
    copairing(&daggers).map(|m| m.dagger())
}

/// `f ⊕ g : A ⊕ B → C ⊕ D`, the copairing of `ι_C ∘ f` and `ι_D ∘ g`.
pub fn oplus_mor(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch {
            left: f.field(),
            right: g.field(),
        });
    }
    let target = make_biproduct(f.field(), f.cod(), g.cod());
    let left = target.inj_left.compose(f)?;
    let right = target.inj_right.compose(g)?;
    copairing(&[left, right])
}

/// Diagonal `Δ_X = (id, id)` and codiagonal `∇_X = Δ_X⋆`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPair {
    pub object: Object,
    pub diagonal: Morphism,
    pub codiagonal: Morphism,
}

pub fn diagonal_pair(field: FieldTag, x: Object) -> DiagonalPair {
    let id = Morphism::identity(field, x.dim());
    let diagonal = pairing(&[id.clone(), id]).expect("identities pair");
    let codiagonal = diagonal.dagger();
    DiagonalPair {
        object: x,
        diagonal,
        codiagonal,
    }
}

/// The semiadditive sum `f + g = ∇_Y ∘ (f ⊕ g) ∘ Δ_X`.
pub fn derived_add(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DimensionMismatch(format!(
            "cannot add {}→{} and {}→{}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    if f.field() != g.field() {
        return Err(Error::FieldMismatch {
            left: f.field(),
            right: g.field(),
        });
    }
    let field = f.field();
    let delta = diagonal_pair(field, f.dom()).diagonal;
    let nabla = diagonal_pair(field, f.cod()).codiagonal;
    nabla.compose(&oplus_mor(f, g)?.compose(&delta)?)
}

/// Left fold of `derived_add`; the empty sum is `0_{dom,cod}`.
pub fn derived_sum(
    field: FieldTag,
    dom: Object,
    cod: Object,
    terms: &[Morphism],
) -> Result<Morphism> {
    terms
        .iter()
        .try_fold(Morphism::zero(field, dom.dim(), cod.dim()), |acc, t| {
            derived_add(&acc, t)
        })
}

/// `f − g = f + g ∘ (−1)`.
pub fn derived_sub(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let minus_one = Scalar::real(g.field(), -1.0);
    derived_add(f, &g.scaled(&minus_one)?)
}

/// The `n` injections of the `n`-fold biproduct `n X`. For `n = 0` the list
/// is empty and the biproduct is the zero object.
pub fn nfold_biproduct(field: FieldTag, x: Object, n: usize) -> Vec<Morphism> {
    let d = x.dim();
    let total = n * d;
    let one = Scalar::one(field).raw();
    (0..n)
        .map(|k| {
            let mut inj = Morphism::zero(field, d, total);
            for i in 0..d {
                inj.set_raw(k * d + i, i, one);
            }
            inj
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::random;
    use std::f64::consts::FRAC_1_SQRT_2;

    const R: FieldTag = FieldTag::Real;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn make_biproduct_examples() {
        let b = make_biproduct(R, Object(1), Object(1));
        assert_eq!(
            b.inj_left,
            Morphism::from_real_rows(R, &[&[1.0], &[0.0]]).unwrap()
        );
        assert_eq!(
            b.inj_right,
            Morphism::from_real_rows(R, &[&[0.0], &[1.0]]).unwrap()
        );

        let b = make_biproduct(R, Object(2), Object(0));
        assert_eq!(b.inj_left, Morphism::identity(R, 2));
        assert_eq!(b.inj_right, Morphism::zero(R, 0, 2));
        assert!(b.residuals().unwrap().passes(&tol()));

        let b = make_biproduct(R, Object(0), Object(0));
        assert_eq!(b.total, Object(0));
        assert!(b.residuals().unwrap().passes(&tol()));
    }

    #[test]
    fn oplus_examples() {
        let id1 = Morphism::identity(R, 1);
        assert_eq!(oplus_mor(&id1, &id1).unwrap(), Morphism::identity(R, 2));
        let two = Morphism::from_real_rows(R, &[&[2.0]]).unwrap();
        let three = Morphism::from_real_rows(R, &[&[3.0]]).unwrap();
        assert_eq!(
            oplus_mor(&two, &three).unwrap(),
            Morphism::from_real_rows(R, &[&[2.0, 0.0], &[0.0, 3.0]]).unwrap()
        );
        let f = Morphism::from_real_rows(R, &[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        assert_eq!(oplus_mor(&f, &Morphism::zero(R, 0, 0)).unwrap(), f);
    }

    #[test]
    fn copairing_and_pairing_examples() {
        let e1 = Morphism::from_real_rows(R, &[&[1.0], &[0.0]]).unwrap();
        let e2 = Morphism::from_real_rows(R, &[&[0.0], &[1.0]]).unwrap();
        assert_eq!(
            copairing(&[e1.clone(), e2]).unwrap(),
            Morphism::identity(R, 2)
        );
        assert_eq!(copairing(std::slice::from_ref(&e1)).unwrap(), e1);
        let r1 = Morphism::from_real_rows(R, &[&[1.0, 0.0]]).unwrap();
        let r2 = Morphism::from_real_rows(R, &[&[0.0, 1.0]]).unwrap();
        assert_eq!(pairing(&[r1, r2]).unwrap(), Morphism::identity(R, 2));
        assert_eq!(copairing(&[]), Err(Error::EmptyList));
        let bad = Morphism::zero(R, 1, 3);
        assert!(copairing(&[e1, bad]).is_err());
    }

    #[test]
    fn derived_add_examples() {
        let two = Morphism::from_real_rows(R, &[&[2.0]]).unwrap();
        let three = Morphism::from_real_rows(R, &[&[3.0]]).unwrap();
        // ∇ (2 ⊕ 3) Δ = [1 1] diag(2,3) [1;1] = 5
        assert_eq!(
            derived_add(&two, &three).unwrap(),
            Morphism::from_real_rows(R, &[&[5.0]]).unwrap()
        );
        let mut rng = random::rng(3, "derived-add", 0);
        for field in FieldTag::ALL {
            let f = random::morphism(field, 3, 2, &mut rng);
            let g = random::morphism(field, 3, 2, &mut rng);
            let z = Morphism::zero(field, 3, 2);
            assert!(derived_add(&f, &z).unwrap().approx_eq(&f, &tol()));
            assert!(derived_add(&f, &g)
                .unwrap()
                .approx_eq(&derived_add(&g, &f).unwrap(), &tol()));
            let oracle = oracle::entrywise_sum(&f, &g).unwrap();
            assert!(
                derived_add(&f, &g)
                    .unwrap()
                    .frobenius_distance(&oracle)
                    .unwrap()
                    <= 1e-12
            );
        }
        assert!(derived_add(&two, &Morphism::zero(R, 1, 2)).is_err());
    }

    #[test]
    fn diagonal_pair_laws() {
        for field in FieldTag::ALL {
            let dp = diagonal_pair(field, Object(3));
            assert_eq!(dp.codiagonal, dp.diagonal.dagger());
            let b = make_biproduct(field, Object(3), Object(3));
            let id = Morphism::identity(field, 3);
            assert_eq!(b.inj_left.dagger().compose(&dp.diagonal).unwrap(), id);
            assert_eq!(b.inj_right.dagger().compose(&dp.diagonal).unwrap(), id);
        }
    }

    #[test]
    fn nfold_examples() {
        let inj = nfold_biproduct(R, Object(1), 2);
        assert_eq!(inj.len(), 2);
        assert_eq!(copairing(&inj).unwrap(), Morphism::identity(R, 2));
        assert!(nfold_biproduct(R, Object(1), 0).is_empty());
        let inj = nfold_biproduct(R, Object(2), 2);
        assert_eq!(inj[1].cod(), Object(4));
        assert_eq!(inj[1].dom(), Object(2));
        let residuals = verify_injections(&inj[0], &inj[1]).unwrap();
        assert!(residuals.passes(&tol()));
    }

    #[test]
    fn adversarial_injections_fail() {
        let bad = Morphism::from_real_rows(R, &[&[1.0], &[1.0]]).unwrap();
        let e2 = Morphism::from_real_rows(R, &[&[0.0], &[1.0]]).unwrap();
        let r = verify_injections(&bad, &e2).unwrap();
        assert!(!r.passes(&tol()));
        assert!(r.left_mono > 0.5);

        let h = FRAC_1_SQRT_2;
        let a = Morphism::from_real_rows(R, &[&[h], &[h]]).unwrap();
        let b = Morphism::from_real_rows(R, &[&[h], &[-h]]).unwrap();
        assert!(verify_injections(&a, &b).unwrap().passes(&tol()));
    }

    #[test]
    fn derived_sub_cancels() {
        let mut rng = random::rng(9, "sub", 0);
        for field in FieldTag::ALL {
            let f = random::morphism(field, 2, 4, &mut rng);
            assert!(derived_sub(&f, &f).unwrap().is_zero(&tol()));
        }
    }
}
