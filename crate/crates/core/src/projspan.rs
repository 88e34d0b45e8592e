//! Products of projections span every endomorphism of a complex space of
//! dimension at least 2. Words in a few projections are enumerated up to a
//! fixed length and the rank of their real span is compared with `2n²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matcat::Morphism;
use crate::par;
use crate::random;
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// Singular values below this fraction of the largest do not count.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Words closer than this in Frobenius norm are treated as equal.
pub const DEDUP_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_LEN: usize = 3;
pub const DEFAULT_GENERATORS: usize = 2;

/// Generators, the words they produce and the rank of their real span.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionWordBasis {
    pub generators: Vec<Morphism>,
    pub words: Vec<Morphism>,
    pub real_span_rank: usize,
}

impl ProjectionWordBasis {
    pub fn build(generators: Vec<Morphism>, max_len: usize) -> Result<ProjectionWordBasis> {
        let words = word_closure(&generators, max_len)?;
        let real_span_rank = real_span_rank(&words);
        Ok(ProjectionWordBasis {
            generators,
            words,
            real_span_rank,
        })
    }
}

/// The `dim` coordinate projections and `count` random rank-one projections
/// `v v⋆` over ℂ.
pub fn projection_generators(dim: usize, seed: u64, count: usize) -> Vec<Morphism> {
    let field = FieldTag::Complex;
    let mut out: Vec<Morphism> = (0..dim)
        .map(|i| {
            let d: Vec<Scalar> = (0..dim)
                .map(|j| Scalar::real(field, if i == j { 1.0 } else { 0.0 }))
                .collect();
            Morphism::diagonal(field, &d).expect("field matches")
        })
        .collect();
    let mut rng = random::rng(seed, "projspan-generators", dim as u64);
    out.extend((0..count).map(|_| random::rank_one_projection(field, dim, &mut rng)));
    out
}

fn push_unique(words: &mut Vec<Morphism>, w: Morphism) -> bool {
    let seen = words
        .iter()
        .any(|u| u.frobenius_distance(&w).is_ok_and(|d| d <= DEDUP_TOL));
    if !seen {
        words.push(w);
    }
    !seen
}

/// All products `g₁ ∘ … ∘ g_k` with `1 ≤ k ≤ max_len`, deduplicated. Each
/// level extends only the words first found at the previous level; the
/// products of a level are computed in parallel and merged in order.
pub fn word_closure(gens: &[Morphism], max_len: usize) -> Result<Vec<Morphism>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    for g in gens {
        if g.field() != first.field() || g.dom() != first.dom() || !g.is_square() {
            return Err(Error::DimensionMismatch(
                "generators must be endomorphisms of one object".into(),
            ));
        }
    }
    let mut words: Vec<Morphism> = Vec::new();
    let mut frontier: Vec<Morphism> = Vec::new();
    if max_len == 0 {
        return Ok(words);
    }
    for g in gens {
        if push_unique(&mut words, g.clone()) {
            frontier.push(g.clone());
        }
    }
    for _ in 1..max_len {
        let products: Vec<Vec<Morphism>> = par::map_slice(&frontier, |w| {
            gens.iter()
                .map(|g| w.compose(g).expect("shapes checked"))
                .collect()
        });
        frontier = Vec::new();
        for w in products.into_iter().flatten() {
            if push_unique(&mut words, w.clone()) {
                frontier.push(w);
            }
        }
        if frontier.is_empty() {
            break;
        }
    }
    Ok(words)
}

/// Rank of the real-linear span of `words`, each read as a vector of `2n²`
/// reals.
pub fn real_span_rank(words: &[Morphism]) -> usize {
    let Some(first) = words.first() else {
        return 0;
    };
    let w = first.field().width();
    let rows: Vec<Vec<f64>> = words
        .iter()
        .map(|m| {
            m.raw_entries()
                .iter()
                .flat_map(|q| q[..w].to_vec())
                .collect()
        })
        .collect();
    let ncols = rows[0].len();
    linalg::real_rank(&rows, ncols, RANK_THRESHOLD)
}

/// Result of [`saturation_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanReport {
    pub dim: usize,
    pub rank: usize,
    pub target: usize,
    pub words: usize,
    pub seed: u64,
    pub status: String,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.status != "fail"
    }

    pub fn line(&self) -> String {
        format!(
            "span dim={} rank={} target={} words={} seed={} {}",
            self.dim, self.rank, self.target, self.words, self.seed, self.status
        )
    }
}

/// Compares the real span rank of the word closure with `2n²`. In
/// dimension 1 the only projections are `0` and `1`, whose span is the real
/// line; that case is reported as below threshold rather than failed.
pub fn saturation_check(
    field: FieldTag,
    dim: usize,
    seed: u64,
    max_len: usize,
    generators: usize,
) -> Result<SpanReport> {
    if field != FieldTag::Complex {
        return Err(Error::UnsupportedField(field));
    }
    if dim == 0 {
        return Err(Error::DimensionMismatch(
            "dimension must be at least 1".into(),
        ));
    }
    let basis = ProjectionWordBasis::build(projection_generators(dim, seed, generators), max_len)?;
    let target = 2 * dim * dim;
    let status = if dim == 1 {
        "below-threshold (expected)"
    } else if basis.real_span_rank == target {
        "pass"
    } else {
        "fail"
    };
    Ok(SpanReport {
        dim,
        rank: basis.real_span_rank,
        target,
        words: basis.words.len(),
        seed,
        status: status.to_string(),
    })
}

/// Whether every word is a product of projections with entries bounded by
/// `dim`, and every generator is a projection.
pub fn sanity_check(basis: &ProjectionWordBasis, tol: &Tolerance) -> Result<bool> {
    for g in &basis.generators {
        if !g.is_projection(tol)? {
            return Ok(false);
        }
    }
    Ok(basis.words.iter().all(|w| {
        let n = w.dom().dim() as f64;
        w.raw_entries()
            .iter()
            .all(|q| q.iter().all(|x| x.abs() <= n))
    }))
}
