//! Dense numerical kernels backed by nalgebra: complex eigenvalues, SVD
//! ranks and least-squares residuals.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matcat::Morphism;
use crate::scalar::FieldTag;

pub(crate) type C64 = Complex<f64>;

pub(crate) fn to_complex_matrix(m: &Morphism) -> Result<DMatrix<C64>> {
    if m.field() == FieldTag::Quaternion {
        return Err(Error::UnsupportedField(FieldTag::Quaternion));
    }
    let (rows, cols) = (m.cod().dim(), m.dom().dim());
    Ok(DMatrix::from_fn(rows, cols, |r, c| {
        let q = m.raw(r, c);
        C64::new(q[0], q[1])
    }))
}

pub(crate) fn from_complex_matrix(m: &DMatrix<C64>) -> Morphism {
    let (rows, cols) = m.shape();
    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let z = m[(r, c)];
            entries.push([z.re, z.im, 0.0, 0.0]);
        }
    }
    Morphism::from_raw(FieldTag::Complex, cols, rows, entries)
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub(crate) fn complex_eigenvalues(m: &Morphism) -> Result<Vec<C64>> {
    let a = to_complex_matrix(m)?;
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = a
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Singular values of a real matrix given row by row.
pub(crate) fn real_singular_values(rows: &[Vec<f64>], ncols: usize) -> Vec<f64> {
    if rows.is_empty() || ncols == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(rows.len(), ncols, |r, c| rows[r][c]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank: singular values above `rel · σ_max`.
pub(crate) fn real_rank(rows: &[Vec<f64>], ncols: usize, rel: f64) -> usize {
    let sv = real_singular_values(rows, ncols);
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > rel * max).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the null space of a real matrix (as row-major rows),
/// with singular values at most `rel · σ_max` treated as zero.
pub(crate) fn real_nullspace(rows: &[Vec<f64>], ncols: usize, rel: f64) -> Vec<Vec<f64>> {
    if ncols == 0 {
        return Vec::new();
    }
    // pad to a square-or-tall matrix so that V is complete
    let nrows = rows.len().max(ncols);
    let m = DMatrix::from_fn(nrows, ncols, |r, c| rows.get(r).map_or(0.0, |row| row[c]));
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (i, &s) in sv.iter().enumerate() {
        if max == 0.0 || s <= rel * max {
            out.push(v_t.row(i).iter().copied().collect());
        }
    }
    out
}

/// `min_x ‖A x − b‖` for complex columns `A`, through an SVD pseudo-inverse
/// that discards singular values below `rel · σ_max`.
pub(crate) fn complex_lstsq_residual(columns: &[Vec<C64>], b: &[C64], rel: f64) -> Result<f64> {
    let n = b.len();
    if columns.is_empty() {
        return Ok(b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    }
    let a = DMatrix::from_fn(n, columns.len(), |r, c| columns[c][r]);
    let rhs = DVector::from_column_slice(b);
    let svd = a.clone().svd(true, true);
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let x = svd
        .solve(&rhs, rel * max)
        .map_err(|e| Error::Numerical(e.to_string()))?;
    Ok((a * x - rhs).norm())
}
