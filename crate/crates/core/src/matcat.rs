//! The matrix dagger category: objects are dimensions, morphisms are matrices
//! over a fixed field, the dagger is the conjugate transpose.

use std::fmt;

use rand::Rng;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{
    qadd, qconj, qmul, qnorm_sqr, FieldTag, Quat, Scalar, Tolerance, Q_ONE, Q_ZERO,
};

/// An object of the category, identified by its dimension. `0` is the zero
/// object and `1` the dagger simple object `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Object(pub usize);

impl Object {
    pub const ZERO: Object = Object(0);
    pub const UNIT: Object = Object(1);

    pub fn dim(self) -> usize {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A matrix `cod × dom` acting on column vectors, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    field: FieldTag,
    dom: usize,
    cod: usize,
    entries: Vec<Quat>,
}

impl Morphism {
    pub fn zero(field: FieldTag, dom: usize, cod: usize) -> Morphism {
        Morphism {
            field,
            dom,
            cod,
            entries: vec![Q_ZERO; dom * cod],
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Morphism {
        Morphism::scalar_identity(&Scalar::one(field), n)
    }

    /// `α · id_n`, i.e. the diagonal matrix with `α` on the diagonal.
    pub fn scalar_identity(alpha: &Scalar, n: usize) -> Morphism {
        let mut m = Morphism::zero(alpha.field(), n, n);
        for i in 0..n {
            m.entries[i * n + i] = alpha.raw();
        }
        m
    }

    /// The 1×1 endomorphism of `I` carrying `α`.
    pub fn from_scalar(alpha: &Scalar) -> Morphism {
        Morphism::scalar_identity(alpha, 1)
    }

    pub fn from_rows(field: FieldTag, rows: &[Vec<Scalar>], dom: usize) -> Result<Morphism> {
        let cod = rows.len();
        let mut entries = Vec::with_capacity(dom * cod);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dom {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {dom}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: s.field(),
                    });
                }
                entries.push(s.raw());
            }
        }
        Ok(Morphism {
            field,
            dom,
            cod,
            entries,
        })
    }

    /// Matrix with real entries embedded in `field`.
    pub fn from_real_rows(field: FieldTag, rows: &[&[f64]]) -> Result<Morphism> {
        let dom = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::real(field, x)).collect())
            .collect();
        Morphism::from_rows(field, &rows, dom)
    }

    /// Diagonal matrix with the given scalars.
    pub fn diagonal(field: FieldTag, diag: &[Scalar]) -> Result<Morphism> {
        let n = diag.len();
        let mut m = Morphism::zero(field, n, n);
        for (i, s) in diag.iter().enumerate() {
            if s.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: s.field(),
                });
            }
            m.entries[i * n + i] = s.raw();
        }
        Ok(m)
    }

    /// A column `I → cod` with the given entries.
    pub fn column(field: FieldTag, entries: &[Scalar]) -> Result<Morphism> {
        let rows: Vec<Vec<Scalar>> = entries.iter().map(|s| vec![*s]).collect();
        Morphism::from_rows(field, &rows, 1)
    }

    pub(crate) fn from_raw(
        field: FieldTag,
        dom: usize,
        cod: usize,
        entries: Vec<Quat>,
    ) -> Morphism {
        debug_assert_eq!(entries.len(), dom * cod);
        Morphism {
            field,
            dom,
            cod,
            entries,
        }
    }

    pub(crate) fn raw_entries(&self) -> &[Quat] {
        &self.entries
    }

    pub(crate) fn raw(&self, r: usize, c: usize) -> &Quat {
        &self.entries[r * self.dom + c]
    }

    pub(crate) fn set_raw(&mut self, r: usize, c: usize, q: Quat) {
        self.entries[r * self.dom + c] = q;
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dom(&self) -> Object {
        Object(self.dom)
    }

    pub fn cod(&self) -> Object {
        Object(self.cod)
    }

    pub fn is_square(&self) -> bool {
        self.dom == self.cod
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        Scalar::from_raw(self.field, self.entries[r * self.dom + c])
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.cod)
            .map(|r| (0..self.dom).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// The `j`-th column as a vector `I → cod`.
    pub fn column_at(&self, j: usize) -> Morphism {
        let entries = (0..self.cod).map(|r| *self.raw(r, j)).collect();
        Morphism::from_raw(self.field, 1, self.cod, entries)
    }

    /// The single entry of a 1×1 morphism.
    pub fn as_scalar(&self) -> Result<Scalar> {
        if self.dom != 1 || self.cod != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a 1x1 morphism, got {}x{}",
                self.cod, self.dom
            )));
        }
        Ok(self.get(0, 0))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if self.field != f.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: f.field,
            });
        }
        if f.cod != self.dom {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.dom, self.cod, f.dom, f.cod
            )));
        }
        let (n, k, m) = (self.cod, self.dom, f.dom);
        let mut out = vec![Q_ZERO; n * m];
        for r in 0..n {
            for t in 0..k {
                let a = &self.entries[r * k + t];
                if qnorm_sqr(a) == 0.0 {
                    continue;
                }
                for c in 0..m {
                    let p = qmul(a, &f.entries[t * m + c]);
                    out[r * m + c] = qadd(&out[r * m + c], &p);
                }
            }
        }
        Ok(Morphism::from_raw(self.field, m, n, out))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Morphism {
        let mut out = vec![Q_ZERO; self.entries.len()];
        for r in 0..self.cod {
            for c in 0..self.dom {
                out[c * self.cod + r] = qconj(&self.entries[r * self.dom + c]);
            }
        }
        Morphism::from_raw(self.field, self.cod, self.dom, out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(qnorm_sqr).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, g: &Morphism) -> Result<f64> {
        self.check_same_shape(g)?;
        Ok(self
            .entries
            .iter()
            .zip(&g.entries)
            .map(|(a, b)| {
                let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]];
                qnorm_sqr(&d)
            })
            .sum::<f64>()
            .sqrt())
    }

    /// Tolerance-based equality; shape or field mismatch is never equal.
    pub fn approx_eq(&self, g: &Morphism, tol: &Tolerance) -> bool {
        match self.frobenius_distance(g) {
            Ok(d) => tol.close(d, self.frobenius_norm(), g.frobenius_norm()),
            Err(_) => false,
        }
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        tol.is_zero(self.frobenius_norm())
    }

    /// `‖f⋆ ∘ f − id‖`.
    pub fn dagger_mono_residual(&self) -> f64 {
        let g = self.dagger().compose(self).expect("dagger composes");
        g.frobenius_distance(&Morphism::identity(self.field, self.dom))
            .expect("square")
    }

    /// `max(‖f⋆∘f − id‖, ‖f∘f⋆ − id‖)`, infinite for non-square matrices.
    pub fn dagger_iso_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let back = self.compose(&self.dagger()).expect("dagger composes");
        let r = back
            .frobenius_distance(&Morphism::identity(self.field, self.cod))
            .expect("square");
        r.max(self.dagger_mono_residual())
    }

    pub fn is_dagger_mono(&self, tol: &Tolerance) -> bool {
        tol.close(self.dagger_mono_residual(), (self.dom as f64).sqrt(), 0.0)
    }

    pub fn is_dagger_iso(&self, tol: &Tolerance) -> bool {
        self.is_square() && tol.close(self.dagger_iso_residual(), (self.dom as f64).sqrt(), 0.0)
    }

    /// Selfadjoint idempotent endomorphism.
    pub fn is_projection(&self, tol: &Tolerance) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "projection must be an endomorphism, got {}→{}",
                self.dom, self.cod
            )));
        }
        let selfadjoint = self.approx_eq(&self.dagger(), tol);
        let idempotent = self.approx_eq(&self.compose(self)?, tol);
        Ok(selfadjoint && idempotent)
    }

    /// `‖self ∘ g − g ∘ self‖` for endomorphisms of the same object.
    pub fn commutator_norm(&self, g: &Morphism) -> Result<f64> {
        self.compose(g)?.frobenius_distance(&g.compose(self)?)
    }

    pub fn commutes_with(&self, g: &Morphism, tol: &Tolerance) -> Result<bool> {
        let ab = self.compose(g)?;
        let ba = g.compose(self)?;
        Ok(ab.approx_eq(&ba, tol))
    }

    /// Right action of a scalar: `self ∘ (α · id_dom)`.
    pub fn scaled(&self, alpha: &Scalar) -> Result<Morphism> {
        self.compose(&Morphism::scalar_identity(alpha, self.dom))
    }

    fn check_same_shape(&self, g: &Morphism) -> Result<()> {
        if self.field != g.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: g.field,
            });
        }
        if self.dom != g.dom || self.cod != g.cod {
            return Err(Error::DimensionMismatch(format!(
                "{}→{} vs {}→{}",
                self.dom, self.cod, g.dom, g.cod
            )));
        }
        Ok(())
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    g.compose(f)
}

/// `e_j : I → n`, the `j`-th canonical basis column.
pub fn basis_column(field: FieldTag, n: usize, j: usize) -> Morphism {
    let mut e = Morphism::zero(field, 1, n);
    e.set_raw(j, 0, Q_ONE);
    e
}

/// Whether `x` is dagger simple: non-zero and every non-zero dagger mono
/// into it is a dagger iso. The dimension test is cross-validated against
/// `trials` random dagger monos `d → x` for `d = 1..=dim`.
pub fn is_dagger_simple<R: Rng + ?Sized>(
    x: Object,
    field: FieldTag,
    trials: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> bool {
    if x.is_zero() {
        return false;
    }
    for t in 0..trials.max(1) {
        let d = 1 + t % x.dim();
        let mono = crate::random::dagger_mono(field, d, x.dim(), rng);
        if !mono.is_dagger_iso(tol) {
            return false;
        }
    }
    x.dim() == 1
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    field: FieldTag,
    dom: usize,
    cod: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson {
            field: self.field,
            dom: self.dom,
            cod: self.cod,
            entries: self.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let js = MorphismJson::deserialize(deserializer)?;
        if js.entries.len() != js.cod {
            return Err(serde::de::Error::custom(format!(
                "expected {} rows, got {}",
                js.cod,
                js.entries.len()
            )));
        }
        Morphism::from_rows(js.field, &js.entries, js.dom).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}→{} [", self.field, self.dom, self.cod)?;
        for r in 0..self.cod {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.dom {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use std::f64::consts::FRAC_1_SQRT_2;

    const R: FieldTag = FieldTag::Real;
    const C: FieldTag = FieldTag::Complex;
    const H: FieldTag = FieldTag::Quaternion;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn compose_examples() {
        let f = Morphism::from_real_rows(R, &[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let id = Morphism::identity(R, 2);
        assert_eq!(id.compose(&f).unwrap(), f);

        let swap = Morphism::from_real_rows(R, &[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(swap.compose(&swap).unwrap(), id);

        let i = Morphism::from_scalar(&Scalar::quaternion(0.0, 1.0, 0.0, 0.0));
        let j = Morphism::from_scalar(&Scalar::quaternion(0.0, 0.0, 1.0, 0.0));
        assert_eq!(
            i.compose(&j).unwrap(),
            Morphism::from_scalar(&Scalar::quaternion(0.0, 0.0, 0.0, 1.0))
        );
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = Morphism::zero(R, 2, 3);
        let b = Morphism::zero(R, 2, 2);
        assert!(matches!(a.compose(&a), Err(Error::DimensionMismatch(_))));
        assert!(a.compose(&b).is_ok());
        let c = Morphism::zero(C, 2, 2);
        assert!(matches!(a.compose(&c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn dagger_examples() {
        let i = Morphism::from_scalar(&Scalar::complex(0.0, 1.0));
        assert_eq!(
            i.dagger(),
            Morphism::from_scalar(&Scalar::complex(0.0, -1.0))
        );
        let f = Morphism::from_real_rows(R, &[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let ft = Morphism::from_real_rows(R, &[&[1.0, 3.0], &[2.0, 4.0]]).unwrap();
        assert_eq!(f.dagger(), ft);
        let z = Morphism::zero(H, 2, 3);
        assert_eq!(z.dagger(), Morphism::zero(H, 3, 2));
    }

    #[test]
    fn predicate_examples() {
        let t = tol();
        let unit = Morphism::from_real_rows(R, &[&[FRAC_1_SQRT_2], &[FRAC_1_SQRT_2]]).unwrap();
        assert!(unit.is_dagger_mono(&t));
        assert!(!unit.is_dagger_iso(&t));
        let ones = Morphism::from_real_rows(R, &[&[1.0], &[1.0]]).unwrap();
        assert!(!ones.is_dagger_mono(&t));
        let p = Morphism::from_real_rows(R, &[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(p.is_projection(&t).unwrap());
        assert!(ones.is_projection(&t).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f = Morphism::from_real_rows(R, &[&[1.0, 2.0]]).unwrap();
        assert_eq!(f.frobenius_distance(&f).unwrap(), 0.0);
        let id1 = Morphism::identity(R, 1);
        assert_eq!(
            id1.frobenius_distance(&Morphism::zero(R, 1, 1)).unwrap(),
            1.0
        );
        let three = Morphism::from_real_rows(R, &[&[3.0]]).unwrap();
        assert_eq!(
            three.frobenius_distance(&Morphism::zero(R, 1, 1)).unwrap(),
            3.0
        );
        assert!(f.frobenius_distance(&id1).is_err());
    }

    #[test]
    fn dagger_simple_examples() {
        let mut rng = random::rng(7, "dagger-simple", 0);
        let t = tol();
        for field in FieldTag::ALL {
            assert!(is_dagger_simple(Object(1), field, 8, &mut rng, &t));
            assert!(!is_dagger_simple(Object(0), field, 8, &mut rng, &t));
            assert!(!is_dagger_simple(Object(2), field, 8, &mut rng, &t));
        }
    }

    #[test]
    fn zero_dimensional_morphisms() {
        let e = Morphism::zero(C, 0, 3);
        assert_eq!(e.raw_entries().len(), 0);
        assert_eq!(e.dagger().cod(), Object(0));
        let id0 = Morphism::identity(C, 0);
        assert!(id0.is_dagger_iso(&tol()));
        let back = e.compose(&id0).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn json_schema() {
        let f = Morphism::from_rows(
            C,
            &[vec![Scalar::complex(1.0, 0.0), Scalar::complex(0.0, 2.0)]],
            2,
        )
        .unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(
            js,
            r#"{"field":"C","dom":2,"cod":1,"entries":[[[1.0,0.0],[0.0,2.0]]]}"#
        );
        let back: Morphism = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"field":"C","dom":1,"cod":1,"entries":[[[1.0]]]}"#;
        assert!(serde_json::from_str::<Morphism>(bad).is_err());
        let short = r#"{"field":"R","dom":1,"cod":2,"entries":[[[1.0]]]}"#;
        assert!(serde_json::from_str::<Morphism>(short).is_err());
    }
}
