//! The functor `𝒱 = hom(I, −)` on morphisms, in chosen orthonormal bases.

use rand::Rng;

use crate::biproduct::{copairing, derived_add, nfold_biproduct};
use crate::error::{Error, Result};
use crate::matcat::{basis_column, Morphism, Object};
use crate::par;
use crate::random;
use crate::report::Report;
use crate::scalar::{FieldTag, Scalar, Tolerance};

use super::space::{HermitianVector, OrthoclosedSubspace};

/// Matrix of `u ↦ f ∘ u` with entries `e'ᵢ⋆ ∘ f ∘ eⱼ`.
pub fn functor_v(
    f: &Morphism,
    basis_dom: &OrthoclosedSubspace,
    basis_cod: &OrthoclosedSubspace,
) -> Result<Morphism> {
    if basis_dom.ambient() != f.dom() || basis_cod.ambient() != f.cod() {
        return Err(Error::DimensionMismatch(
            "bases live on the wrong objects".into(),
        ));
    }
    if !basis_dom.spans_ambient() || !basis_cod.spans_ambient() {
        return Err(Error::DimensionMismatch(
            "basis does not span its object".into(),
        ));
    }
    let images: Vec<Morphism> = basis_dom
        .onb()
        .iter()
        .map(|e| f.compose(e.carrier()))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Scalar>> = basis_cod
        .onb()
        .iter()
        .map(|e| {
            let ed = e.carrier().dagger();
            images
                .iter()
                .map(|fu| ed.compose(fu)?.as_scalar())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Morphism::from_rows(f.field(), &rows, basis_dom.dim())
}

/// First coordinate column `u = eⱼ` with `f ∘ u ≠ g ∘ u`.
pub fn separating_column(f: &Morphism, g: &Morphism, tol: &Tolerance) -> Result<Option<usize>> {
    if f.dom() != g.dom() || f.cod() != g.cod() || f.field() != g.field() {
        return Err(Error::DimensionMismatch(
            "morphisms are not parallel".into(),
        ));
    }
    for j in 0..f.dom().dim() {
        let u = basis_column(f.field(), f.dom().dim(), j);
        if !f.compose(&u)?.approx_eq(&g.compose(&u)?, tol) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Faithfulness on `trials` random unequal pairs per dimension. Half of the
/// pairs differ in a single entry `(i, j)` and must be separated by column
/// `j`; the rest are independent random morphisms.
pub fn faithfulness_check(
    field: FieldTag,
    dims: &[usize],
    trials: usize,
    seed: u64,
    tol: &Tolerance,
) -> Report {
    let cases: Vec<(usize, usize)> = dims
        .iter()
        .filter(|&&d| d > 0)
        .flat_map(|&d| (0..trials).map(move |t| (d, t)))
        .collect();
    let outcomes = par::map_slice(&cases, |&(d, t)| {
        let mut rng = random::rng(seed, "faithful", (d * trials + t) as u64);
        faithful_trial(field, d, t % 2 == 0, &mut rng, tol)
    });
    let mut failures = 0;
    let mut witness = None;
    for (ok, pair) in outcomes {
        if !ok {
            failures += 1;
            witness.get_or_insert(pair);
        }
    }
    let report = Report::check("faithful", field, failures == 0, failures as f64).with_detail(
        format!("{} unequal pairs, {failures} unseparated", cases.len()),
    );
    match witness {
        Some(w) => report.with_witness(w),
        None => report,
    }
}

/// One unequal pair `(f, g)`; with `entry_probe` they differ in one entry
/// `(i, j)` and must be separated by column `j`. Returns `(separated, f)`.
pub fn faithful_trial<R: Rng + ?Sized>(
    field: FieldTag,
    d: usize,
    entry_probe: bool,
    rng: &mut R,
    tol: &Tolerance,
) -> (bool, Morphism) {
    let cod = rng.random_range(1..=d);
    let f = random::morphism(field, d, cod, rng);
    let (g, col) = if entry_probe {
        let (i, j) = (rng.random_range(0..cod), rng.random_range(0..d));
        let mut bump = Morphism::zero(field, d, cod);
        let mut s = random::unit_scalar(field, rng);
        s = s.scale(0.5 + rng.random::<f64>());
        bump.set_raw(i, j, s.raw());
        (derived_add(&f, &bump).expect("parallel"), Some(j))
    } else {
        (random::morphism(field, d, cod, rng), None)
    };
    let ok = match separating_column(&f, &g, tol) {
        Ok(Some(j)) => col.is_none_or(|c| c == j),
        _ => false,
    };
    (ok, f)
}

/// An object of rank `n`: the `n`-fold biproduct `n I` with its coordinate
/// injections as orthonormal basis. Checks that `[e₁, …, eₙ]` is a dagger iso.
pub fn rank_n_object(
    field: FieldTag,
    n: usize,
    tol: &Tolerance,
) -> Result<(Object, OrthoclosedSubspace)> {
    let injections = nfold_biproduct(field, Object::UNIT, n);
    let x = Object(n);
    if n == 0 {
        return Ok((x, OrthoclosedSubspace::coordinate(field, x)));
    }
    let e = copairing(&injections)?;
    if !e.is_dagger_iso(tol) {
        return Err(Error::NonUnitary(e.dagger_iso_residual()));
    }
    let onb = injections
        .into_iter()
        .map(HermitianVector::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((x, OrthoclosedSubspace::new(field, x, onb, tol)?))
}
