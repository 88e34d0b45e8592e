//! Scalars of the three classical star-fields.
//!
//! Every scalar is stored as four raw reals `w + xi + yj + zk`. Real and
//! complex scalars keep the unused components at exactly zero, so a single
//! quaternion product serves all three fields: the subfields are closed under
//! it and the zero components stay zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which division ring the scalars live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl FieldTag {
    pub const ALL: [FieldTag; 3] = [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion];

    /// Number of real components of a scalar.
    pub fn width(self) -> usize {
        match self {
            FieldTag::Real => 1,
            FieldTag::Complex => 2,
            FieldTag::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
            FieldTag::Quaternion => "H",
        }
    }

    fn from_width(width: usize) -> Option<FieldTag> {
        match width {
            1 => Some(FieldTag::Real),
            2 => Some(FieldTag::Complex),
            4 => Some(FieldTag::Quaternion),
            _ => None,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FieldTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "real" | "reals" => Ok(FieldTag::Real),
            "c" | "complex" => Ok(FieldTag::Complex),
            "h" | "quaternion" | "quaternions" => Ok(FieldTag::Quaternion),
            other => Err(format!("unknown field `{other}` (expected R, C or H)")),
        }
    }
}

/// Approximate-comparison policy shared by every check in the crate.
///
/// `a ≈ b` iff `|a − b| ≤ abs_eps + rel_eps · max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    /// Whether two quantities of magnitude `mag_a`, `mag_b` that differ by
    /// `diff` count as equal.
    pub fn close(&self, diff: f64, mag_a: f64, mag_b: f64) -> bool {
        diff <= self.abs_eps + self.rel_eps * mag_a.max(mag_b)
    }

    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        self.close((a - b).abs(), a.abs(), b.abs())
    }

    pub fn is_zero(&self, magnitude: f64) -> bool {
        magnitude <= self.abs_eps
    }
}

pub(crate) type Quat = [f64; 4];

pub(crate) const Q_ZERO: Quat = [0.0; 4];
pub(crate) const Q_ONE: Quat = [1.0, 0.0, 0.0, 0.0];

#[inline]
pub(crate) fn qmul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

#[inline]
pub(crate) fn qconj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

#[inline]
pub(crate) fn qadd(a: &Quat, b: &Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

#[inline]
pub(crate) fn qnorm_sqr(a: &Quat) -> f64 {
    a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]
}

/// Element of ℝ, ℂ or ℍ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    field: FieldTag,
    c: Quat,
}

impl Scalar {
    /// Builds a scalar from exactly `field.width()` components.
    pub fn new(field: FieldTag, components: &[f64]) -> Result<Scalar> {
        if components.len() != field.width() {
            return Err(Error::ScalarWidth {
                field,
                expected: field.width(),
                got: components.len(),
            });
        }
        let mut c = Q_ZERO;
        c[..components.len()].copy_from_slice(components);
        Ok(Scalar { field, c })
    }

    /// Builds a scalar from raw quaternion components, dropping whatever the
    /// field cannot hold.
    pub(crate) fn from_raw(field: FieldTag, raw: Quat) -> Scalar {
        let mut c = Q_ZERO;
        let w = field.width();
        c[..w].copy_from_slice(&raw[..w]);
        Scalar { field, c }
    }

    pub(crate) fn raw(&self) -> Quat {
        self.c
    }

    pub fn real(field: FieldTag, r: f64) -> Scalar {
        Scalar {
            field,
            c: [r, 0.0, 0.0, 0.0],
        }
    }

    pub fn zero(field: FieldTag) -> Scalar {
        Scalar::real(field, 0.0)
    }

    pub fn one(field: FieldTag) -> Scalar {
        Scalar::real(field, 1.0)
    }

    pub fn complex(re: f64, im: f64) -> Scalar {
        Scalar {
            field: FieldTag::Complex,
            c: [re, im, 0.0, 0.0],
        }
    }

    pub fn quaternion(w: f64, x: f64, y: f64, z: f64) -> Scalar {
        Scalar {
            field: FieldTag::Quaternion,
            c: [w, x, y, z],
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// The `field.width()` meaningful components.
    pub fn components(&self) -> &[f64] {
        &self.c[..self.field.width()]
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// The involution: identity on ℝ, complex or quaternion conjugation.
    pub fn conj(&self) -> Scalar {
        Scalar {
            field: self.field,
            c: qconj(&self.c),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(Scalar {
            field: self.field,
            c: qmul(&self.c, &other.c),
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        qnorm_sqr(&self.c)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Two-sided inverse `conj(α) / |α|²`.
    pub fn inv(&self, tol: &Tolerance) -> Result<Scalar> {
        let n = self.norm();
        if n <= tol.abs_eps {
            return Err(Error::NonInvertible(n));
        }
        let s = 1.0 / (n * n);
        let q = qconj(&self.c);
        Ok(Scalar {
            field: self.field,
            c: [q[0] * s, q[1] * s, q[2] * s, q[3] * s],
        })
    }

    /// Whether the scalar lies in the centre of its field. The centre of ℍ is
    /// ℝ; ℝ and ℂ are commutative.
    pub fn is_central(&self, tol: &Tolerance) -> bool {
        match self.field {
            FieldTag::Real | FieldTag::Complex => true,
            FieldTag::Quaternion => {
                let imag =
                    (self.c[1] * self.c[1] + self.c[2] * self.c[2] + self.c[3] * self.c[3]).sqrt();
                tol.is_zero(imag)
            }
        }
    }

    pub fn scale(&self, r: f64) -> Scalar {
        Scalar {
            field: self.field,
            c: [self.c[0] * r, self.c[1] * r, self.c[2] * r, self.c[3] * r],
        }
    }

    pub fn distance(&self, other: &Scalar) -> f64 {
        let d = [
            self.c[0] - other.c[0],
            self.c[1] - other.c[1],
            self.c[2] - other.c[2],
            self.c[3] - other.c[3],
        ];
        qnorm_sqr(&d).sqrt()
    }

    pub fn approx_eq(&self, other: &Scalar, tol: &Tolerance) -> bool {
        self.field == other.field && tol.close(self.distance(other), self.norm(), other.norm())
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }
}

/// Square root of a non-negative real. Inputs in `[−abs_eps, 0]` are rounding
/// noise and clamp to zero.
pub fn real_sqrt(r: f64, tol: &Tolerance) -> Result<f64> {
    if r >= 0.0 {
        Ok(r.sqrt())
    } else if r >= -tol.abs_eps {
        Ok(0.0)
    } else {
        Err(Error::DomainError(r))
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    /// Panics on field mismatch; use [`Scalar::try_mul`] for a checked product.
    fn mul(self, rhs: Scalar) -> Scalar {
        match self.try_mul(&rhs) {
            Ok(s) => s,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.field, rhs.field, "field mismatch in scalar addition");
        Scalar {
            field: self.field,
            c: qadd(&self.c, &rhs.c),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.c;
        match self.field {
            FieldTag::Real => write!(f, "{w}"),
            FieldTag::Complex => write!(f, "{w}{x:+}i"),
            FieldTag::Quaternion => write!(f, "{w}{x:+}i{y:+}j{z:+}k"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let comps = self.components();
        let mut seq = serializer.serialize_seq(Some(comps.len()))?;
        for v in comps {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of 1, 2 or 4 numbers")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Scalar, A::Error> {
                let mut comps = Vec::with_capacity(4);
                while let Some(v) = seq.next_element::<f64>()? {
                    comps.push(v);
                }
                let field = FieldTag::from_width(comps.len())
                    .ok_or_else(|| de::Error::invalid_length(comps.len(), &self))?;
                Scalar::new(field, &comps).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(ScalarVisitor)
    }
}
