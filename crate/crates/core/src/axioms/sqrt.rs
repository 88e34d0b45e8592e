//! (H5) over ℂ: strict square roots of unitaries by spectral interpolation.
//!
//! The root is the Lagrange interpolation polynomial through
//! `(λᵢ, √λᵢ)` evaluated at `U`, with `√` the principal branch. Being a
//! polynomial in `U`, it commutes with everything `U` commutes with, which is
//! the forward half of strictness; the converse follows from `U = V²`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::matcat::Morphism;
use crate::random;
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// Eigenvalues closer than this are merged into one interpolation node.
pub const CLUSTER_TOL: f64 = 1e-7;

/// One interpolation node: an eigenvalue and the root chosen for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootNode {
    pub eigenvalue: Scalar,
    pub chosen_root: Scalar,
    pub multiplicity: usize,
}

/// Output of [`strict_sqrt_c`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictSqrtCertificate {
    pub root: Morphism,
    pub interpolation_data: Vec<RootNode>,
    /// `‖root ∘ root − U‖`
    pub residual: f64,
    /// `max(‖root⋆root − id‖, ‖root root⋆ − id‖)`
    pub unitarity_residual: f64,
    /// least-squares residual of `root` against `U⁰, …, U^{d−1}`, `d` nodes
    pub polynomial_residual: f64,
}

/// Principal square root of a unit complex number: `arg ∈ (−π, π]` is halved.
/// Arguments within [`CLUSTER_TOL`] of `−π` are read as `π`, so `√(−1) = i`.
pub fn principal_sqrt(lambda: C64) -> C64 {
    let mut arg = lambda.im.atan2(lambda.re);
    if arg <= -PI + CLUSTER_TOL {
        arg = PI;
    }
    let r = lambda.norm().sqrt();
    C64::from_polar(r, arg / 2.0)
}

struct Cluster {
    center: C64,
    members: Vec<C64>,
}

fn cluster_eigenvalues(eigs: &[C64]) -> Vec<Cluster> {
    let mut clusters: Vec<Cluster> = Vec::new();
    for &l in eigs {
        let l = l / l.norm();
        match clusters
            .iter_mut()
            .find(|c| (c.center - l).norm() < CLUSTER_TOL)
        {
            Some(c) => {
                c.members.push(l);
                let mean: C64 = c.members.iter().sum::<C64>() / c.members.len() as f64;
                c.center = mean / mean.norm();
            }
            None => clusters.push(Cluster {
                center: l,
                members: vec![l],
            }),
        }
    }
    clusters.sort_by(|a, b| {
        let (aa, ab) = (
            a.center.im.atan2(a.center.re),
            b.center.im.atan2(b.center.re),
        );
        aa.total_cmp(&ab)
    });
    clusters
}

/// Lagrange basis `Lᵢ(U) = Π_{j≠i} (U − λⱼ) / (λᵢ − λⱼ)`; for a normal `U`
/// these are the orthogonal projections onto its eigenspaces.
fn lagrange_basis(u: &DMatrix<C64>, nodes: &[C64]) -> Vec<DMatrix<C64>> {
    let n = u.nrows();
    let id = DMatrix::<C64>::identity(n, n);
    (0..nodes.len())
        .map(|i| {
            let mut acc = id.clone();
            for (j, &lj) in nodes.iter().enumerate() {
                if j != i {
                    acc *= (u - &id * lj) / (nodes[i] - lj);
                }
            }
            acc
        })
        .collect()
}

fn check_complex_unitary(u: &Morphism, tol: &Tolerance) -> Result<()> {
    if u.field() != FieldTag::Complex {
        return Err(Error::UnsupportedField(u.field()));
    }
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "dagger automorphism must be square, got {}→{}",
            u.dom(),
            u.cod()
        )));
    }
    if !u.is_dagger_iso(tol) {
        return Err(Error::NonUnitary(u.dagger_iso_residual()));
    }
    Ok(())
}

/// Strict square root of a complex unitary.
pub fn strict_sqrt_c(u: &Morphism, tol: &Tolerance) -> Result<StrictSqrtCertificate> {
    check_complex_unitary(u, tol)?;
    let n = u.dom().dim();
    let eigs = linalg::complex_eigenvalues(u)?;
    let clusters = cluster_eigenvalues(&eigs);
    let nodes: Vec<C64> = clusters.iter().map(|c| c.center).collect();
    let roots: Vec<C64> = nodes.iter().map(|&l| principal_sqrt(l)).collect();

    let um = linalg::to_complex_matrix(u)?;
    let mut root = DMatrix::<C64>::zeros(n, n);
    for (basis, r) in lagrange_basis(&um, &nodes).into_iter().zip(&roots) {
        root += basis * *r;
    }
    let root = linalg::from_complex_matrix(&root);

    let residual = root.compose(&root)?.frobenius_distance(u)?;
    let unitarity_residual = root.dagger_iso_residual();
    let polynomial_residual = polynomial_fit_residual(u, &root, nodes.len())?;
    let interpolation_data = clusters
        .iter()
        .zip(&roots)
        .map(|(c, r)| RootNode {
            eigenvalue: Scalar::complex(c.center.re, c.center.im),
            chosen_root: Scalar::complex(r.re, r.im),
            multiplicity: c.members.len(),
        })
        .collect();
    Ok(StrictSqrtCertificate {
        root,
        interpolation_data,
        residual,
        unitarity_residual,
        polynomial_residual,
    })
}

/// Least-squares residual of `v` against the span of `U⁰, …, U^{d−1}`.
pub fn polynomial_fit_residual(u: &Morphism, v: &Morphism, degree: usize) -> Result<f64> {
    let um = linalg::to_complex_matrix(u)?;
    let vm = linalg::to_complex_matrix(v)?;
    let n = um.nrows();
    let mut power = DMatrix::<C64>::identity(n, n);
    let mut columns = Vec::with_capacity(degree);
    for _ in 0..degree.max(1) {
        columns.push(power.iter().copied().collect::<Vec<_>>());
        power = &power * &um;
    }
    let b: Vec<C64> = vm.iter().copied().collect();
    linalg::complex_lstsq_residual(&columns, &b, 1e-12)
}

/// Which projection family separated `U` from `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionFamily {
    Coordinate,
    RandomRankOne,
    Spectral,
}

/// Detailed outcome of [`strictness_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct StrictnessCheck {
    pub square_residual: f64,
    pub projections_tested: usize,
    pub counterexample: Option<(ProjectionFamily, Morphism)>,
    pub holds: bool,
}

fn coordinate_projections(field: FieldTag, n: usize) -> Vec<Morphism> {
    let subsets: Vec<u64> = if n <= 10 {
        (1..(1u64 << n)).collect()
    } else {
        (0..n).map(|i| 1u64 << i).collect()
    };
    subsets
        .into_iter()
        .map(|mask| {
            let diag: Vec<Scalar> = (0..n)
                .map(|i| Scalar::real(field, if mask >> i & 1 == 1 { 1.0 } else { 0.0 }))
                .collect();
            Morphism::diagonal(field, &diag).expect("field matches")
        })
        .collect()
}

/// Projections in the commutant of `U`: sums of its spectral projections and
/// rank-one projections inside single eigenspaces.
fn spectral_projections<R: Rng + ?Sized>(
    u: &Morphism,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<Morphism>> {
    let eigs = linalg::complex_eigenvalues(u)?;
    let nodes: Vec<C64> = cluster_eigenvalues(&eigs)
        .iter()
        .map(|c| c.center)
        .collect();
    let um = linalg::to_complex_matrix(u)?;
    let basis = lagrange_basis(&um, &nodes);
    let n = um.nrows();
    let mut out = Vec::new();
    let d = basis.len().min(10);
    for mask in 1..(1u64 << d) {
        let mut p = DMatrix::<C64>::zeros(n, n);
        for (i, b) in basis.iter().enumerate().take(d) {
            if mask >> i & 1 == 1 {
                p += b;
            }
        }
        out.push(linalg::from_complex_matrix(&p));
    }
    for s in 0..samples {
        let b = &basis[s % basis.len()];
        let w = linalg::to_complex_matrix(&random::vector(FieldTag::Complex, n, rng))?;
        let v = b * w;
        let norm = v.norm();
        if norm < 1e-6 {
            continue;
        }
        let v = v / C64::new(norm, 0.0);
        out.push(linalg::from_complex_matrix(&(&v * v.adjoint())));
    }
    Ok(out)
}

/// Checks `V² = U` and, over three projection families, that a projection
/// commutes with `U` exactly when it commutes with `V`.
pub fn strictness_check<R: Rng + ?Sized>(
    u: &Morphism,
    v: &Morphism,
    projection_samples: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<StrictnessCheck> {
    if u.field() != v.field() || u.dom() != v.dom() || !u.is_square() || !v.is_square() {
        return Err(Error::DimensionMismatch(
            "strict square root needs two endomorphisms of the same object".into(),
        ));
    }
    let square_residual = v.compose(v)?.frobenius_distance(u)?;
    let square_ok = v.compose(v)?.approx_eq(u, tol);
    let unitary = u.is_dagger_iso(tol) && v.is_dagger_iso(tol);
    let field = u.field();
    let n = u.dom().dim();

    let mut families: Vec<(ProjectionFamily, Vec<Morphism>)> = vec![
        (
            ProjectionFamily::Coordinate,
            coordinate_projections(field, n),
        ),
        (
            ProjectionFamily::RandomRankOne,
            (0..projection_samples)
                .map(|_| random::rank_one_projection(field, n, rng))
                .collect(),
        ),
    ];
    if field == FieldTag::Complex && unitary && n > 0 {
        families.push((
            ProjectionFamily::Spectral,
            spectral_projections(u, projection_samples, rng)?,
        ));
    }

    let mut tested = 0;
    let mut counterexample = None;
    'outer: for (family, projections) in families {
        for p in projections {
            tested += 1;
            if p.commutes_with(u, tol)? != p.commutes_with(v, tol)? {
                counterexample = Some((family, p));
                break 'outer;
            }
        }
    }
    Ok(StrictnessCheck {
        square_residual,
        projections_tested: tested,
        holds: square_ok && unitary && counterexample.is_none(),
        counterexample,
    })
}

/// Whether `V` is a strict square root of `U`, judged on the finite
/// projection families of [`strictness_check`].
pub fn is_strict_sqrt<R: Rng + ?Sized>(
    u: &Morphism,
    v: &Morphism,
    projection_samples: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<bool> {
    Ok(strictness_check(u, v, projection_samples, rng, tol)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: FieldTag = FieldTag::Complex;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::complex(re, im)
    }

    #[test]
    fn principal_branch() {
        assert!((principal_sqrt(C64::new(-1.0, 0.0)) - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((principal_sqrt(C64::new(-1.0, -1e-12)) - C64::new(0.0, 1.0)).norm() < 1e-10);
        assert!(
            (principal_sqrt(C64::new(0.0, 1.0)) - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-15
        );
        assert!((principal_sqrt(C64::new(1.0, 0.0)) - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_root() {
        let cert = strict_sqrt_c(&Morphism::identity(C, 2), &tol()).unwrap();
        assert!(cert.root.approx_eq(&Morphism::identity(C, 2), &tol()));
        assert_eq!(cert.interpolation_data.len(), 1);
        assert_eq!(cert.interpolation_data[0].multiplicity, 2);
    }

    #[test]
    fn diag_one_minus_one() {
        // principal root of −1 is i
        let u = Morphism::diagonal(C, &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let cert = strict_sqrt_c(&u, &tol()).unwrap();
        let expected = Morphism::diagonal(C, &[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(cert.root.frobenius_distance(&expected).unwrap() < 1e-12);
        let mut rng = random::rng(0, "diag", 0);
        assert!(is_strict_sqrt(&u, &cert.root, 100, &mut rng, &tol()).unwrap());
    }

    #[test]
    fn minus_identity_has_scalar_root() {
        let u = Morphism::scalar_identity(&c(-1.0, 0.0), 2);
        let cert = strict_sqrt_c(&u, &tol()).unwrap();
        let expected = Morphism::scalar_identity(&c(0.0, 1.0), 2);
        assert!(cert.root.frobenius_distance(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn rotation_is_not_strict() {
        // squares to −id but does not commute with diag(1,0), which −id does
        let u = Morphism::scalar_identity(&c(-1.0, 0.0), 2);
        let rot = Morphism::from_real_rows(C, &[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        assert!(rot.compose(&rot).unwrap().approx_eq(&u, &tol()));
        let mut rng = random::rng(0, "rot", 0);
        let check = strictness_check(&u, &rot, 10, &mut rng, &tol()).unwrap();
        assert!(!check.holds);
        let (family, p) = check.counterexample.unwrap();
        assert_eq!(family, ProjectionFamily::Coordinate);
        assert!(p.is_projection(&tol()).unwrap());
    }

    #[test]
    fn identity_is_its_own_strict_root() {
        let id = Morphism::identity(C, 3);
        let mut rng = random::rng(0, "id", 0);
        assert!(is_strict_sqrt(&id, &id, 20, &mut rng, &tol()).unwrap());
    }

    #[test]
    fn random_unitaries() {
        let t = tol();
        for i in 0..20 {
            let mut rng = random::rng(99, "sqrt-unit", i);
            let n = 1 + (i as usize % 6);
            let u = random::unitary(C, n, &mut rng);
            let cert = strict_sqrt_c(&u, &t).unwrap();
            assert!(cert.residual < 1e-10, "{}", cert.residual);
            assert!(cert.unitarity_residual < 1e-10);
            assert!(cert.polynomial_residual < 1e-9);
            assert!(is_strict_sqrt(&u, &cert.root, 50, &mut rng, &t).unwrap());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = tol();
        let r = Morphism::identity(FieldTag::Real, 2);
        assert_eq!(
            strict_sqrt_c(&r, &t),
            Err(Error::UnsupportedField(FieldTag::Real))
        );
        let not_unitary = Morphism::scalar_identity(&c(2.0, 0.0), 2);
        assert!(matches!(
            strict_sqrt_c(&not_unitary, &t),
            Err(Error::NonUnitary(_))
        ));
        let mut rng = random::rng(0, "bad", 0);
        assert!(is_strict_sqrt(
            &Morphism::identity(C, 2),
            &Morphism::identity(C, 3),
            1,
            &mut rng,
            &t
        )
        .is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let u = Morphism::diagonal(C, &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let cert = strict_sqrt_c(&u, &tol()).unwrap();
        let js = serde_json::to_string(&cert).unwrap();
        assert!(js.contains("\"interpolation_data\""));
        let back: StrictSqrtCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, cert);
    }
}
