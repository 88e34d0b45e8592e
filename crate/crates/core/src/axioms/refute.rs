//! (H5) fails over ℝ and ℍ: a strict square root of `−id` is forced to be a
//! central scalar with square `−1`, and the centre of those scalars is ℝ.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matcat::Morphism;
use crate::random;
use crate::report::{Report, Status};
use crate::scalar::{qmul, FieldTag, Quat, Scalar, Tolerance, Q_ZERO};

const RANK_REL: f64 = 1e-10;

/// Numerical evidence behind a refutation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct H5Refutation {
    pub field: FieldTag,
    pub dim: usize,
    pub sampled_projections: usize,
    /// real dimension of the endomorphisms commuting with every sample
    pub commutant_dim: usize,
    /// real dimension of the centre of the scalars
    pub centre_dim: usize,
    /// every commutant basis element is `α·id` with `α` central
    pub commutant_is_central_scalars: bool,
}

fn unit_quat(k: usize) -> Quat {
    let mut q = Q_ZERO;
    q[k] = 1.0;
    q
}

fn flatten(m: &Morphism, width: usize) -> Vec<f64> {
    let (rows, cols) = (m.cod().dim(), m.dom().dim());
    let mut out = Vec::with_capacity(rows * cols * width);
    for r in 0..rows {
        for c in 0..cols {
            out.extend_from_slice(&m.raw(r, c)[..width]);
        }
    }
    out
}

/// Real-linear basis of the `n × n` matrices over `field`.
fn real_basis(field: FieldTag, n: usize) -> Vec<Morphism> {
    let w = field.width();
    let mut out = Vec::with_capacity(n * n * w);
    for idx in 0..n * n {
        for k in 0..w {
            let mut entries = vec![Q_ZERO; n * n];
            entries[idx] = unit_quat(k);
            out.push(Morphism::from_raw(field, n, n, entries));
        }
    }
    out
}

fn from_real_coords(field: FieldTag, n: usize, coords: &[f64]) -> Morphism {
    let w = field.width();
    let entries = coords
        .chunks(w)
        .map(|c| {
            let mut q = Q_ZERO;
            q[..w].copy_from_slice(c);
            q
        })
        .collect();
    Morphism::from_raw(field, n, n, entries)
}

/// Real basis of `{X : p∘X = X∘p for all p}` as a null space.
fn commutant_basis(field: FieldTag, n: usize, projections: &[Morphism]) -> Result<Vec<Morphism>> {
    let basis = real_basis(field, n);
    let w = field.width();
    let len = n * n * w;
    // column k of the constraint matrix is the stacked commutators of basis[k]
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(basis.len());
    for e in &basis {
        let mut col = Vec::with_capacity(len * projections.len());
        for p in projections {
            let pe = flatten(&p.compose(e)?, w);
            let ep = flatten(&e.compose(p)?, w);
            col.extend(pe.iter().zip(&ep).map(|(a, b)| a - b));
        }
        columns.push(col);
    }
    let nrows = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vec<f64>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    Ok(linalg::real_nullspace(&rows, basis.len(), RANK_REL)
        .into_iter()
        .map(|v| from_real_coords(field, n, &v))
        .collect())
}

/// Real dimension of the commutant of `projections` inside `End(n)`.
pub fn commutant_dimension(field: FieldTag, n: usize, projections: &[Morphism]) -> Result<usize> {
    Ok(commutant_basis(field, n, projections)?.len())
}

/// Real basis of the centre of the scalars: the null space of
/// `q ↦ q b − b q` over the basis units `b`.
pub fn centre_basis(field: FieldTag) -> Vec<Scalar> {
    let w = field.width();
    let mut rows = Vec::new();
    for b in 0..w {
        let bq = unit_quat(b);
        // row block: component t of (q b − b q) as a function of q's coordinates
        for t in 0..w {
            rows.push(
                (0..w)
                    .map(|k| {
                        let q = unit_quat(k);
                        qmul(&q, &bq)[t] - qmul(&bq, &q)[t]
                    })
                    .collect(),
            );
        }
    }
    linalg::real_nullspace(&rows, w, RANK_REL)
        .into_iter()
        .map(|v| Scalar::new(field, &v).expect("width matches"))
        .collect()
}

/// Real dimension of the centre of the scalars.
pub fn centre_dimension(field: FieldTag) -> usize {
    centre_basis(field).len()
}

fn is_central_scalar_identity(m: &Morphism, tol: &Tolerance) -> bool {
    let n = m.dom().dim();
    let alpha = m.get(0, 0);
    alpha.is_central(tol) && m.approx_eq(&Morphism::scalar_identity(&alpha, n), tol)
}

/// Builds the commutant witness for `U = −id` on an `n`-dimensional object.
pub fn analyse_h5_scalar_case<R: Rng + ?Sized>(
    field: FieldTag,
    dim: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<H5Refutation> {
    if dim < 2 {
        return Err(Error::DimensionMismatch(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    let mut projections: Vec<Morphism> = (0..dim)
        .map(|i| {
            let diag: Vec<Scalar> = (0..dim)
                .map(|j| Scalar::real(field, if i == j { 1.0 } else { 0.0 }))
                .collect();
            Morphism::diagonal(field, &diag).expect("field matches")
        })
        .collect();
    projections.extend((0..dim + 2).map(|_| random::rank_one_projection(field, dim, rng)));
    let basis = commutant_basis(field, dim, &projections)?;
    Ok(H5Refutation {
        field,
        dim,
        sampled_projections: projections.len(),
        commutant_dim: basis.len(),
        centre_dim: centre_dimension(field),
        commutant_is_central_scalars: basis.iter().all(|m| is_central_scalar_identity(m, tol)),
    })
}

/// `U = −id` has no strict square root over ℝ or ℍ: such a root commutes
/// with every rank-one projection, hence is `α·id` with `α` central and
/// `α² = −1`, but the central scalars are only the reals.
pub fn refute_h5_scalar_case(field: FieldTag, dim: usize, tol: &Tolerance) -> Result<Report> {
    if field == FieldTag::Complex {
        return Err(Error::UnsupportedField(field));
    }
    let mut rng = random::rng(dim as u64, "refute-h5", 0);
    let a = analyse_h5_scalar_case(field, dim, &mut rng, tol)?;
    let minus_id = Morphism::scalar_identity(&Scalar::real(field, -1.0), dim);
    let forced = a.commutant_is_central_scalars && a.commutant_dim == a.centre_dim;
    let detail = format!(
        "commutant of {} projections has real dim {}; centre has real dim {}; \
         no central alpha with alpha^2 = -1",
        a.sampled_projections, a.commutant_dim, a.centre_dim
    );
    if forced && a.centre_dim == 1 {
        // inf over real alpha of |alpha^2 + 1|
        Ok(Report::new("H5", field, Status::Infeasible, 1.0)
            .with_witness(minus_id)
            .with_detail(detail))
    } else {
        Ok(Report::new(
            "H5",
            field,
            Status::Fail,
            a.commutant_dim.abs_diff(a.centre_dim) as f64,
        )
        .with_witness(minus_id)
        .with_detail(format!("refutation inconclusive: {detail}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn centres() {
        assert_eq!(centre_dimension(FieldTag::Real), 1);
        assert_eq!(centre_dimension(FieldTag::Complex), 2);
        assert_eq!(centre_dimension(FieldTag::Quaternion), 1);
    }

    #[test]
    fn refutations() {
        for (field, dim) in [
            (FieldTag::Real, 2),
            (FieldTag::Real, 3),
            (FieldTag::Quaternion, 2),
        ] {
            let r = refute_h5_scalar_case(field, dim, &tol()).unwrap();
            assert_eq!(r.status, Status::Infeasible, "{field} {dim}");
            assert!(r.witness.is_some());
        }
        assert_eq!(
            refute_h5_scalar_case(FieldTag::Complex, 2, &tol()),
            Err(Error::UnsupportedField(FieldTag::Complex))
        );
    }

    #[test]
    fn complex_commutant_is_two_dimensional() {
        let mut rng = random::rng(1, "commutant", 0);
        let a = analyse_h5_scalar_case(FieldTag::Complex, 3, &mut rng, &tol()).unwrap();
        assert_eq!(a.commutant_dim, 2);
        assert!(a.commutant_is_central_scalars);
    }

    #[test]
    fn coordinate_projections_alone_leave_diagonals() {
        let n = 3;
        let coords = |field: FieldTag| -> Vec<Morphism> {
            (0..n)
                .map(|i| {
                    let d: Vec<Scalar> = (0..n)
                        .map(|j| Scalar::real(field, (i == j) as u8 as f64))
                        .collect();
                    Morphism::diagonal(field, &d).unwrap()
                })
                .collect()
        };
        let real = coords(FieldTag::Real);
        let quat = coords(FieldTag::Quaternion);
        assert_eq!(commutant_dimension(FieldTag::Real, n, &real).unwrap(), 3);
        assert_eq!(
            commutant_dimension(FieldTag::Quaternion, n, &quat).unwrap(),
            12
        );
        assert!(commutant_dimension(FieldTag::Quaternion, n, &real).is_err());
    }
}
