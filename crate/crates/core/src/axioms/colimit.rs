//! (H2) on finite diagrams: directed diagrams of dagger monos, their colimit
//! cocones, mediating morphisms and the joint-epi test on legs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::biproduct::derived_add;
use crate::error::{Error, Result};
use crate::matcat::{Morphism, Object};
use crate::random;
use crate::reconstruct::space::{gram_schmidt, projection_of_subspace, HermitianVector};
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// A finite directed poset `K` with objects `A_i` and dagger monos
/// `k_{i≤j} : A_i → A_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedDiagram {
    field: FieldTag,
    objects: Vec<Object>,
    /// `leq[i][j]` iff `i ≤ j`
    leq: Vec<Vec<bool>>,
    arrows: BTreeMap<(usize, usize), Morphism>,
    top: usize,
}

impl DirectedDiagram {
    /// Builds a diagram from the arrows of a generating relation. Composites
    /// of given arrows fill in missing comparable pairs; arrows given for a
    /// pair that is also a composite must agree with it.
    pub fn new(
        field: FieldTag,
        objects: Vec<Object>,
        arrows: Vec<((usize, usize), Morphism)>,
        tol: &Tolerance,
    ) -> Result<DirectedDiagram> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("empty index poset".into()));
        }
        let mut map = BTreeMap::new();
        for ((i, j), k) in arrows {
            if i >= n || j >= n {
                return Err(Error::InvalidDiagram(format!(
                    "arrow {i}≤{j} names a missing node"
                )));
            }
            if i == j {
                if !k.approx_eq(&Morphism::identity(field, objects[i].dim()), tol) {
                    return Err(Error::InvalidDiagram(format!(
                        "k_{{{i}≤{i}}} is not the identity"
                    )));
                }
                continue;
            }
            if k.field() != field || k.dom() != objects[i] || k.cod() != objects[j] {
                return Err(Error::InvalidDiagram(format!(
                    "arrow {i}≤{j} has type {}→{}, expected {}→{}",
                    k.dom(),
                    k.cod(),
                    objects[i],
                    objects[j]
                )));
            }
            if !k.is_dagger_mono(tol) {
                return Err(Error::NotDaggerMono(k.dagger_mono_residual()));
            }
            if map.insert((i, j), k).is_some() {
                return Err(Error::InvalidDiagram(format!("arrow {i}≤{j} given twice")));
            }
        }

        // transitive closure, composing arrows as pairs become comparable
        loop {
            let mut added = Vec::new();
            for (&(i, j), kij) in &map {
                for (&(j2, l), kjl) in map.range((j, 0)..(j + 1, 0)) {
                    debug_assert_eq!(j, j2);
                    if i == l {
                        return Err(Error::InvalidDiagram(format!("cycle through {i} and {j}")));
                    }
                    let composite = kjl.compose(kij)?;
                    match map.get(&(i, l)) {
                        Some(k) if !k.approx_eq(&composite, tol) => {
                            return Err(Error::InvalidDiagram(format!(
                                "functoriality fails at {i}≤{j}≤{l}"
                            )))
                        }
                        Some(_) => {}
                        None => added.push(((i, l), composite)),
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for (key, k) in added {
                map.entry(key).or_insert(k);
            }
        }

        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in map.keys() {
            leq[i][j] = true;
        }
        let upper_bound = |a: usize, b: usize| (0..n).find(|&m| leq[a][m] && leq[b][m]);
        for a in 0..n {
            for b in a + 1..n {
                if upper_bound(a, b).is_none() {
                    return Err(Error::NotDirected(format!(
                        "nodes {a} and {b} have no upper bound"
                    )));
                }
            }
        }
        let mut top = 0;
        for i in 1..n {
            top = upper_bound(top, i).expect("directedness checked above");
        }
        debug_assert!((0..n).all(|i| leq[i][top]));
        Ok(DirectedDiagram {
            field,
            objects,
            leq,
            arrows: map,
            top,
        })
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// The greatest element of `K`.
    pub fn top(&self) -> usize {
        self.top
    }

    /// `k_{i≤j}`, or `None` when `i ≰ j`.
    pub fn arrow(&self, i: usize, j: usize) -> Option<Morphism> {
        if i == j {
            return Some(Morphism::identity(self.field, self.objects[i].dim()));
        }
        self.arrows.get(&(i, j)).cloned()
    }

    /// Largest `‖k_{j≤l} ∘ k_{i≤j} − k_{i≤l}‖` over comparable triples.
    pub fn functoriality_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (&(i, j), kij) in &self.arrows {
            for (&(_, l), kjl) in self.arrows.range((j, 0)..(j + 1, 0)) {
                let direct = self.arrows.get(&(i, l)).expect("closed under composition");
                worst = worst.max(kjl.compose(kij)?.frobenius_distance(direct)?);
            }
        }
        Ok(worst)
    }
}

/// A cocone `(h_i : A_i → X)_{i∈K}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColimitCocone {
    pub apex: Object,
    pub legs: Vec<Morphism>,
}

impl ColimitCocone {
    /// Largest `‖h_j ∘ k_{i≤j} − h_i‖` together with the dagger-mono
    /// residuals of the legs.
    pub fn residual(&self, d: &DirectedDiagram) -> Result<f64> {
        if self.legs.len() != d.len() {
            return Err(Error::InvalidDiagram(
                "cocone and diagram differ in size".into(),
            ));
        }
        let mut worst = self
            .legs
            .iter()
            .map(Morphism::dagger_mono_residual)
            .fold(0.0, f64::max);
        for (&(i, j), k) in &d.arrows {
            worst = worst.max(self.legs[j].compose(k)?.frobenius_distance(&self.legs[i])?);
        }
        Ok(worst)
    }
}

/// Colimit of a finite directed diagram: the object at the greatest element,
/// with legs `k_{i≤top}`.
pub fn finite_directed_colimit(d: &DirectedDiagram) -> ColimitCocone {
    let top = d.top();
    ColimitCocone {
        apex: d.objects[top],
        legs: (0..d.len())
            .map(|i| d.arrow(i, top).expect("every node lies below the top"))
            .collect(),
    }
}

/// The mediating morphism `u : apex → Y` with `u ∘ h_i = c_i`, which is
/// `c_top` because `h_top = id`. Errors if `u` fails any of the equations.
pub fn mediate(
    d: &DirectedDiagram,
    colimit: &ColimitCocone,
    competing: &ColimitCocone,
    tol: &Tolerance,
) -> Result<Morphism> {
    if competing.legs.len() != d.len() {
        return Err(Error::InvalidDiagram(
            "competing cocone has the wrong size".into(),
        ));
    }
    let u = competing.legs[d.top()].clone();
    for (h, c) in colimit.legs.iter().zip(&competing.legs) {
        let lhs = u.compose(h)?;
        if !lhs.approx_eq(c, tol) {
            return Err(Error::Residual(lhs.frobenius_distance(c)?));
        }
    }
    Ok(u)
}

/// A pair `f ≠ g` that agrees on every leg.
#[derive(Debug, Clone, PartialEq)]
pub struct EpicWitness {
    pub f: Morphism,
    pub g: Morphism,
}

/// Outcome of [`jointly_epic_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct EpicCheck {
    pub jointly_epic: bool,
    pub span_rank: usize,
    pub apex_dim: usize,
    pub witness: Option<EpicWitness>,
}

/// Whether the legs are jointly epic. The combined column span of the legs
/// is compared with the apex; `trials` random pairs `(f, g)` that agree on
/// the legs are then compared directly.
pub fn jointly_epic_check<R: Rng + ?Sized>(
    cocone: &ColimitCocone,
    field: FieldTag,
    trials: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<EpicCheck> {
    let n = cocone.apex.dim();
    let columns: Vec<HermitianVector> = cocone
        .legs
        .iter()
        .flat_map(|h| (0..h.dom().dim()).map(move |j| h.column_at(j)))
        .map(HermitianVector::new)
        .collect::<Result<_>>()?;
    let span = gram_schmidt(field, cocone.apex, &columns, tol)?;
    let p = projection_of_subspace(&span);
    let complement = derived_add(
        &Morphism::identity(field, n),
        &p.scaled(&Scalar::real(field, -1.0))?,
    )?;

    let mut witness = None;
    if span.dim() < n {
        witness = Some(EpicWitness {
            f: Morphism::zero(field, n, n),
            g: complement.clone(),
        });
    }
    for _ in 0..trials {
        if witness.is_some() {
            break;
        }
        let f = random::morphism(field, n, n, rng);
        let r = random::morphism(field, n, n, rng);
        // g agrees with f on the span of the legs
        let g = derived_add(&f, &r.compose(&complement)?)?;
        let agree = cocone.legs.iter().all(|h| {
            f.compose(h)
                .and_then(|fh| Ok(fh.approx_eq(&g.compose(h)?, tol)))
                .unwrap_or(false)
        });
        if agree && !f.approx_eq(&g, tol) {
            witness = Some(EpicWitness { f, g });
        }
    }
    Ok(EpicCheck {
        jointly_epic: witness.is_none(),
        span_rank: span.dim(),
        apex_dim: n,
        witness,
    })
}

/// The diagram of all subsets `F` of an `e`-element set, with `A_F = |F|·I`
/// and `k_{F⊆G}` the copairing of the coordinates of `G` indexed by `F`.
/// Node `F` is the bitmask `F`.
pub fn subset_diagram(field: FieldTag, e: usize, tol: &Tolerance) -> Result<DirectedDiagram> {
    if e > 10 {
        return Err(Error::InvalidDiagram(format!(
            "subset diagram of {e} elements is too large"
        )));
    }
    let count = 1usize << e;
    let objects: Vec<Object> = (0..count)
        .map(|f| Object(f.count_ones() as usize))
        .collect();
    let mut arrows = Vec::new();
    for f in 0..count {
        for g in 0..count {
            if f != g && f & g == f {
                arrows.push(((f, g), subset_inclusion(field, f, g)));
            }
        }
    }
    DirectedDiagram::new(field, objects, arrows, tol)
}

fn subset_inclusion(field: FieldTag, f: usize, g: usize) -> Morphism {
    let g_elems: Vec<usize> = (0..usize::BITS as usize)
        .filter(|b| g >> b & 1 == 1)
        .collect();
    let cod = g_elems.len();
    let dom = f.count_ones() as usize;
    let mut m = Morphism::zero(field, dom, cod);
    let mut col = 0;
    for (row, b) in g_elems.iter().enumerate() {
        if f >> b & 1 == 1 {
            m.set_raw(row, col, crate::scalar::Q_ONE);
            col += 1;
        }
    }
    m
}

/// A random directed diagram with at most `max_nodes` nodes on objects of
/// dimension at most `max_dim`. Nodes are distinct coordinate subsets `S_i`
/// of a random unitary `W` (one of them the full set), `e_i = W_{S_i} ∘ Q_i`
/// for random unitaries `Q_i`, and `k_{i≤j} = e_j⋆ ∘ e_i` when `S_i ⊆ S_j`.
pub fn random_diagram<R: Rng + ?Sized>(
    field: FieldTag,
    max_nodes: usize,
    max_dim: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<DirectedDiagram> {
    let d = rng.random_range(1..=max_dim.max(1));
    let w = random::unitary(field, d, rng);
    let full = (1usize << d) - 1;
    let nodes = rng.random_range(1..=max_nodes.max(1)).min(1 << d);
    let mut subsets = vec![full];
    while subsets.len() < nodes {
        let s = rng.random_range(0..=full);
        if !subsets.contains(&s) {
            subsets.push(s);
        }
    }
    subsets.shuffle(rng);

    let embeddings: Vec<Morphism> = subsets
        .iter()
        .map(|&s| {
            let cols: Vec<Morphism> = (0..d)
                .filter(|b| s >> b & 1 == 1)
                .map(|b| w.column_at(b))
                .collect();
            let k = cols.len();
            let ws = if k == 0 {
                Morphism::zero(field, 0, d)
            } else {
                crate::biproduct::copairing(&cols)?
            };
            ws.compose(&random::unitary(field, k, rng))
        })
        .collect::<Result<_>>()?;
    let objects: Vec<Object> = embeddings.iter().map(Morphism::dom).collect();
    let mut arrows = Vec::new();
    for (i, &si) in subsets.iter().enumerate() {
        for (j, &sj) in subsets.iter().enumerate() {
            if i != j && si & sj == si {
                arrows.push(((i, j), embeddings[j].dagger().compose(&embeddings[i])?));
            }
        }
    }
    DirectedDiagram::new(field, objects, arrows, tol)
}

/// A competing cocone `c_i = m ∘ h_i` through a random dagger mono
/// `m : apex → Y`, returned with `m`.
pub fn competing_cocone<R: Rng + ?Sized>(
    colimit: &ColimitCocone,
    field: FieldTag,
    extra_dim: usize,
    rng: &mut R,
) -> Result<(ColimitCocone, Morphism)> {
    let n = colimit.apex.dim();
    let m = random::dagger_mono(field, n, n + extra_dim, rng);
    let legs = colimit
        .legs
        .iter()
        .map(|h| m.compose(h))
        .collect::<Result<_>>()?;
    Ok((
        ColimitCocone {
            apex: Object(n + extra_dim),
            legs,
        },
        m,
    ))
}
