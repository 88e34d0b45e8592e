//! Seeded generators for campaign inputs.
//!
//! Every trial draws from its own ChaCha stream derived from
//! `(seed, check id, trial index)`, so results do not depend on the order in
//! which trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matcat::Morphism;
use crate::scalar::{qadd, qconj, qmul, qnorm_sqr, FieldTag, Quat, Scalar, Q_ZERO};

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Deterministic generator for trial `index` of the check named `stream`.
pub fn rng(seed: u64, stream: &str, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(splitmix64(seed) ^ fnv1a(stream));
    r.set_stream(index);
    r
}

fn raw_scalar<R: Rng + ?Sized>(field: FieldTag, rng: &mut R) -> Quat {
    let mut q = Q_ZERO;
    for c in q.iter_mut().take(field.width()) {
        *c = rng.sample(StandardNormal);
    }
    q
}

/// Scalar with independent standard normal components.
pub fn scalar<R: Rng + ?Sized>(field: FieldTag, rng: &mut R) -> Scalar {
    Scalar::from_raw(field, raw_scalar(field, rng))
}

/// Non-zero scalar of unit norm.
pub fn unit_scalar<R: Rng + ?Sized>(field: FieldTag, rng: &mut R) -> Scalar {
    loop {
        let s = scalar(field, rng);
        let n = s.norm();
        if n > 1e-3 {
            return s.scale(1.0 / n);
        }
    }
}

/// Gaussian `cod × dom` matrix.
pub fn morphism<R: Rng + ?Sized>(field: FieldTag, dom: usize, cod: usize, rng: &mut R) -> Morphism {
    let entries = (0..dom * cod).map(|_| raw_scalar(field, rng)).collect();
    Morphism::from_raw(field, dom, cod, entries)
}

/// Non-zero Gaussian vector `I → n`.
pub fn vector<R: Rng + ?Sized>(field: FieldTag, n: usize, rng: &mut R) -> Morphism {
    loop {
        let v = morphism(field, 1, n, rng);
        if v.frobenius_norm() > 1e-3 || n == 0 {
            return v;
        }
    }
}

/// Random isometry `dom → cod` (requires `dom ≤ cod`), obtained by
/// orthonormalizing Gaussian columns with scalars acting on the right.
pub fn dagger_mono<R: Rng + ?Sized>(
    field: FieldTag,
    dom: usize,
    cod: usize,
    rng: &mut R,
) -> Morphism {
    assert!(dom <= cod, "no dagger mono {dom} → {cod}");
    loop {
        if let Some(m) = try_orthonormal_columns(field, dom, cod, rng) {
            return m;
        }
    }
}

/// Haar-like random unitary of dimension `n`.
pub fn unitary<R: Rng + ?Sized>(field: FieldTag, n: usize, rng: &mut R) -> Morphism {
    dagger_mono(field, n, n, rng)
}

fn try_orthonormal_columns<R: Rng + ?Sized>(
    field: FieldTag,
    dom: usize,
    cod: usize,
    rng: &mut R,
) -> Option<Morphism> {
    let mut cols: Vec<Vec<Quat>> = Vec::with_capacity(dom);
    for _ in 0..dom {
        let mut v: Vec<Quat> = (0..cod).map(|_| raw_scalar(field, rng)).collect();
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for e in &cols {
                // coefficient c = e⋆ v, then v ← v − e c
                let c = e
                    .iter()
                    .zip(&v)
                    .fold(Q_ZERO, |acc, (a, b)| qadd(&acc, &qmul(&qconj(a), b)));
                for (vi, ei) in v.iter_mut().zip(e) {
                    let p = qmul(ei, &c);
                    *vi = [vi[0] - p[0], vi[1] - p[1], vi[2] - p[2], vi[3] - p[3]];
                }
            }
        }
        let n = v.iter().map(qnorm_sqr).sum::<f64>().sqrt();
        if n < 1e-6 {
            return None;
        }
        for vi in v.iter_mut() {
            for x in vi.iter_mut() {
                *x /= n;
            }
        }
        cols.push(v);
    }
    let mut entries = vec![Q_ZERO; dom * cod];
    for (j, col) in cols.iter().enumerate() {
        for (i, q) in col.iter().enumerate() {
            entries[i * dom + j] = *q;
        }
    }
    Some(Morphism::from_raw(field, dom, cod, entries))
}

/// Rank-1 projection `v ∘ v⋆` for a random unit vector `v`.
pub fn rank_one_projection<R: Rng + ?Sized>(field: FieldTag, n: usize, rng: &mut R) -> Morphism {
    let v = dagger_mono(field, 1, n, rng);
    v.compose(&v.dagger()).expect("shapes agree")
}

/// Uniform pick from a non-empty slice.
pub fn pick<T: Copy, R: Rng + ?Sized>(items: &[T], rng: &mut R) -> T {
    items[rng.random_range(0..items.len())]
}
