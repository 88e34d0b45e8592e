//! Coordinate-formula oracles.
//!
//! These compute the same quantities as the categorical constructions but by
//! direct entry manipulation. They exist only to cross-check the library
//! (tests and the lemma campaign) and are never called by it.

use crate::error::{Error, Result};
use crate::matcat::Morphism;
use crate::scalar::qadd;

/// Entrywise matrix sum.
pub fn entrywise_sum(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch {
            left: f.field(),
            right: g.field(),
        });
    }
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DimensionMismatch(
            "entrywise sum of different shapes".into(),
        ));
    }
    let entries = f
        .raw_entries()
        .iter()
        .zip(g.raw_entries())
        .map(|(a, b)| qadd(a, b))
        .collect();
    Ok(Morphism::from_raw(
        f.field(),
        f.dom().dim(),
        f.cod().dim(),
        entries,
    ))
}

/// Block-diagonal matrix `diag(f, g)` written out entry by entry.
pub fn block_diagonal(f: &Morphism, g: &Morphism) -> Morphism {
    let (fd, fc) = (f.dom().dim(), f.cod().dim());
    let (gd, gc) = (g.dom().dim(), g.cod().dim());
    let mut out = Morphism::zero(f.field(), fd + gd, fc + gc);
    for r in 0..fc {
        for c in 0..fd {
            out.set_raw(r, c, *f.raw(r, c));
        }
    }
    for r in 0..gc {
        for c in 0..gd {
            out.set_raw(fc + r, fd + c, *g.raw(r, c));
        }
    }
    out
}

/// Change-of-basis matrix `B_cod⋆ f B_dom` with bases given as unitary
/// matrices whose columns are the basis vectors.
pub fn change_of_basis(
    f: &Morphism,
    basis_dom: &Morphism,
    basis_cod: &Morphism,
) -> Result<Morphism> {
    basis_cod.dagger().compose(&f.compose(basis_dom)?)
}
