//! The property catalogue. Each entry is a randomized law checked over many
//! seeded trials; a trial draws everything from its own generator, so the
//! outcome is the same whether trials run in parallel or in sequence.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{
    competing_cocone, complement_h3, construct_h4a, finite_directed_colimit, is_strict_sqrt,
    jointly_epic_check, mediate, normalize_h4b, random_diagram, strict_sqrt_c,
};
use crate::biproduct::{copairing, derived_add, make_biproduct, oplus_mor, verify_injections};
use crate::error::Result;
use crate::matcat::{Morphism, Object};
use crate::oracle;
use crate::par;
use crate::projspan::{self, ProjectionWordBasis};
use crate::random;
use crate::reconstruct::{
    center_sqrt_minus_one_test, faithful_trial, functor_v, gram_schmidt, inner_product,
    onb_expand_with_residual, projection_of_subspace, rank_n_object, scalar_field_witness,
    HermitianVector, OrthoclosedSubspace, ScalarFieldRecon,
};
use crate::report::{Report, Status};
use crate::scalar::{FieldTag, Scalar, Tolerance};

/// Dimensions used when a configuration does not name any.
pub const DEFAULT_DIMS: [usize; 6] = [1, 2, 3, 4, 5, 6];

const ORACLE_TOL: f64 = 1e-9;
const SQRT_TOL: f64 = 1e-8;
const POLY_TOL: f64 = 1e-7;
const COMPLEMENT_TOL: f64 = 1e-8;
const MEDIATE_TOL: f64 = 1e-8;
const EXPANSION_TOL: f64 = 1e-9;

/// Shared inputs of one campaign.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub field: FieldTag,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub tol: Tolerance,
}

impl Ctx {
    pub fn new(field: FieldTag, dims: &[usize], seed: u64, tol: Tolerance) -> Ctx {
        let dims = if dims.is_empty() {
            DEFAULT_DIMS.to_vec()
        } else {
            dims.to_vec()
        };
        Ctx {
            field,
            dims,
            seed,
            tol,
        }
    }

    /// A configured dimension in `lo..=hi`, or the nearest bound if none fits.
    fn dim(&self, rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
        let fits: Vec<usize> = self
            .dims
            .iter()
            .copied()
            .filter(|d| (lo..=hi).contains(d))
            .collect();
        if fits.is_empty() {
            let max = self.dims.iter().copied().max().unwrap_or(lo);
            max.clamp(lo, hi)
        } else {
            random::pick(&fits, rng)
        }
    }
}

/// Outcome of a single trial.
#[derive(Debug, Clone)]
pub struct Trial {
    pub ok: bool,
    pub residual: f64,
    pub witness: Option<Morphism>,
}

impl Trial {
    fn within(residual: f64, bound: f64) -> Trial {
        Trial {
            ok: residual <= bound,
            residual,
            witness: None,
        }
    }

    fn judge(ok: bool, residual: f64) -> Trial {
        Trial {
            ok,
            residual,
            witness: None,
        }
    }

    fn witness(mut self, w: Morphism) -> Trial {
        if !self.ok {
            self.witness = Some(w);
        }
        self
    }
}

type TrialFn = fn(&Ctx, usize, &mut ChaCha8Rng) -> Result<Trial>;

/// One catalogue entry.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub trials: usize,
    /// the trial count does not follow the configured override
    pub fixed: bool,
    pub fields: &'static [FieldTag],
    run: TrialFn,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("trials", &self.trials)
            .field("fixed", &self.fixed)
            .finish()
    }
}

impl Check {
    pub fn applies_to(&self, field: FieldTag) -> bool {
        self.fields.contains(&field)
    }
}

const ALL: &[FieldTag] = &FieldTag::ALL;
const C_ONLY: &[FieldTag] = &[FieldTag::Complex];
const H_ONLY: &[FieldTag] = &[FieldTag::Quaternion];

const fn check(
    id: &'static str,
    trials: usize,
    fields: &'static [FieldTag],
    run: TrialFn,
) -> Check {
    Check {
        id,
        trials,
        fixed: false,
        fields,
        run,
    }
}

const fn fixed(
    id: &'static str,
    trials: usize,
    fields: &'static [FieldTag],
    run: TrialFn,
) -> Check {
    Check {
        id,
        trials,
        fixed: true,
        fields,
        run,
    }
}

/// Every check, sorted by id.
pub fn catalogue() -> Vec<Check> {
    let mut out = vec![
        check("axioms.h2-colimit", 100, ALL, h2_colimit),
        check("axioms.h3-complement", 300, ALL, h3_complement),
        check("axioms.h4-normalize", 200, ALL, h4_normalize),
        check("axioms.h5-sqrt", 100, C_ONLY, h5_sqrt),
        check("axioms.simple-object-iso", 200, ALL, simple_object_iso),
        check("biproduct.completeness", 200, ALL, biproduct_completeness),
        check("biproduct.dagger-additive", 200, ALL, dagger_additive),
        check("biproduct.entrywise-oracle", 200, ALL, entrywise_oracle),
        check("biproduct.oplus-dagger", 200, ALL, oplus_dagger),
        check("biproduct.semiadditive-laws", 200, ALL, semiadditive_laws),
        check("biproduct.zero-leg-iso", 200, ALL, zero_leg_iso),
        check("matcat.dagger-functor", 500, ALL, dagger_functor),
        check(
            "matcat.dagger-mono-cancellable",
            200,
            ALL,
            dagger_mono_cancellable,
        ),
        check(
            "matcat.small-objects-distinct",
            200,
            ALL,
            small_objects_distinct,
        ),
        check("projspan.monotone", 20, C_ONLY, span_monotone),
        fixed("projspan.saturation", 21, C_ONLY, span_saturation),
        fixed(
            "reconstruct.centre-sqrt-minus-one",
            1,
            ALL,
            centre_sqrt_minus_one,
        ),
        check(
            "reconstruct.dagger-mono-orthonormal",
            200,
            ALL,
            dagger_mono_orthonormal,
        ),
        check("reconstruct.division-ring", 200, ALL, division_ring),
        check("reconstruct.faithful", 200, ALL, faithful),
        fixed("reconstruct.field-witness", 1, ALL, field_witness),
        check("reconstruct.functor", 200, ALL, functor_laws),
        check("reconstruct.hermitian-form", 300, ALL, hermitian_form),
        check("reconstruct.isometry", 200, ALL, isometry),
        check("reconstruct.onb-expansion", 200, ALL, onb_expansion),
        check("reconstruct.orthomodular", 200, ALL, orthomodular),
        fixed("reconstruct.rank-n-object", 16, ALL, rank_n),
        check("reconstruct.scalar-iso", 200, ALL, scalar_iso),
        check("reconstruct.uniform", 200, ALL, uniform),
        check(
            "scalar.conj-reverses-products",
            1000,
            ALL,
            conj_reverses_products,
        ),
        check("scalar.inverse-two-sided", 1000, ALL, inverse_two_sided),
        fixed(
            "scalar.quaternion-noncommutative",
            1,
            H_ONLY,
            quaternion_noncommutative,
        ),
    ];
    out.sort_by_key(|c| c.id);
    out
}

pub fn find(id: &str) -> Option<Check> {
    catalogue().into_iter().find(|c| c.id == id)
}

/// Runs `check` with its default trial count or `trials_override`.
pub fn run_check(check: &Check, ctx: &Ctx, trials_override: Option<usize>) -> Report {
    let trials = match trials_override {
        Some(t) if !check.fixed => t,
        _ => check.trials,
    };
    let outcomes = par::map_trials(trials, |t| {
        let mut rng = random::rng(ctx.seed, check.id, t as u64);
        (check.run)(ctx, t, &mut rng)
    });
    summarize(check.id, ctx.field, trials, outcomes)
}

/// Like [`run_check`] but strictly sequential.
pub fn run_check_seq(check: &Check, ctx: &Ctx, trials_override: Option<usize>) -> Report {
    let trials = match trials_override {
        Some(t) if !check.fixed => t,
        _ => check.trials,
    };
    let outcomes = par::map_trials_seq(trials, |t| {
        let mut rng = random::rng(ctx.seed, check.id, t as u64);
        (check.run)(ctx, t, &mut rng)
    });
    summarize(check.id, ctx.field, trials, outcomes)
}

fn summarize(id: &str, field: FieldTag, trials: usize, outcomes: Vec<Result<Trial>>) -> Report {
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut witness = None;
    let mut first_error = None;
    for o in outcomes {
        match o {
            Ok(t) => {
                if t.residual.is_finite() {
                    worst = worst.max(t.residual);
                }
                if !t.ok {
                    failures += 1;
                    if witness.is_none() {
                        witness = t.witness;
                    }
                }
            }
            Err(e) => {
                failures += 1;
                first_error.get_or_insert(e.to_string());
            }
        }
    }
    let mut detail = format!("{trials} trials, {failures} failures");
    if let Some(e) = first_error {
        detail.push_str(&format!("; first error: {e}"));
    }
    let report = Report::check(id, field, failures == 0, worst).with_detail(detail);
    match witness {
        Some(w) => report.with_witness(w),
        None => report,
    }
}

/// Every applicable check for `ctx.field`, sorted by id.
pub fn run_all(ctx: &Ctx, trials_override: Option<usize>) -> Vec<Report> {
    catalogue()
        .iter()
        .filter(|c| c.applies_to(ctx.field))
        .map(|c| run_check(c, ctx, trials_override))
        .collect()
}

fn hv(m: Morphism) -> Result<HermitianVector> {
    HermitianVector::new(m)
}

fn dist(a: &Morphism, b: &Morphism) -> Result<f64> {
    a.frobenius_distance(b)
}

fn rel(ctx: &Ctx, residual: f64, scale: f64) -> bool {
    ctx.tol.close(residual, scale, 0.0)
}

// scalars

fn conj_reverses_products(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (a, b) = (
        random::scalar(ctx.field, rng),
        random::scalar(ctx.field, rng),
    );
    let lhs = (a * b).conj();
    let rhs = b.conj() * a.conj();
    Ok(Trial::judge(
        lhs.approx_eq(&rhs, &ctx.tol),
        lhs.distance(&rhs),
    ))
}

fn inverse_two_sided(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let a = loop {
        let a = random::scalar(ctx.field, rng);
        if a.norm() > 1e-3 {
            break a;
        }
    };
    let inv = a.inv(&ctx.tol)?;
    let one = Scalar::one(ctx.field);
    let r = (a * inv).distance(&one).max((inv * a).distance(&one));
    Ok(Trial::judge(rel(ctx, r, 1.0), r))
}

fn quaternion_noncommutative(ctx: &Ctx, _: usize, _: &mut ChaCha8Rng) -> Result<Trial> {
    let i = Scalar::quaternion(0.0, 1.0, 0.0, 0.0);
    let j = Scalar::quaternion(0.0, 0.0, 1.0, 0.0);
    let gap = (i * j).distance(&(j * i));
    Ok(Trial::judge(!(i * j).approx_eq(&(j * i), &ctx.tol), gap))
}

// matrices

fn dagger_functor(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let a = ctx.dim(rng, 0, 8);
    let b = ctx.dim(rng, 0, 8);
    let c = ctx.dim(rng, 0, 8);
    let f = random::morphism(ctx.field, a, b, rng);
    let g = random::morphism(ctx.field, b, c, rng);
    let id = Morphism::identity(ctx.field, a);
    let r = dist(&g.compose(&f)?.dagger(), &f.dagger().compose(&g.dagger())?)?
        .max(dist(&id.dagger(), &id)?)
        .max(dist(&f.dagger().dagger(), &f)?);
    let scale = f.frobenius_norm() * g.frobenius_norm();
    Ok(Trial::judge(rel(ctx, r, scale), r).witness(f))
}

fn dagger_mono_cancellable(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let c = ctx.dim(rng, 1, 8);
    let b = rng.random_range(0..=c);
    let x = ctx.dim(rng, 1, 8);
    let f = random::dagger_mono(ctx.field, b, c, rng);
    let a1 = random::morphism(ctx.field, x, b, rng);
    let a2 = random::morphism(ctx.field, x, b, rng);
    // f ∘ a determines a through f⋆
    let recovered = f.dagger().compose(&f.compose(&a1)?)?;
    let r = dist(&recovered, &a1)?;
    let equal_images = f.compose(&a1)?.approx_eq(&f.compose(&a2)?, &ctx.tol);
    let ok = rel(ctx, r, a1.frobenius_norm()) && (equal_images == a1.approx_eq(&a2, &ctx.tol));
    Ok(Trial::judge(ok, r).witness(f))
}

fn small_objects_distinct(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let a = rng.random_range(0..3usize);
    let b = (a + rng.random_range(1..3usize)) % 3;
    let m = random::morphism(ctx.field, a, b, rng);
    let shape_ok = !m.is_dagger_iso(&ctx.tol);
    // two dagger monos into I have overlapping ranges, so I is not I ⊕ I
    let u = Morphism::from_scalar(&random::unit_scalar(ctx.field, rng));
    let v = Morphism::from_scalar(&random::unit_scalar(ctx.field, rng));
    let overlap = v.dagger().compose(&u)?.as_scalar()?.norm();
    let laws_fail = !verify_injections(&u, &v)?.passes(&ctx.tol);
    Ok(Trial::judge(shape_ok && laws_fail && overlap > 0.5, 0.0).witness(m))
}

// biproducts

fn zero_leg_iso(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let b = ctx.dim(rng, 0, 8);
    let bp = make_biproduct(ctx.field, Object::ZERO, Object(b));
    let canonical = bp.inj_right.dagger_iso_residual();
    // any dagger mono g with (0, g) a biproduct is a dagger iso
    let g = random::unitary(ctx.field, b, rng);
    let zero = Morphism::zero(ctx.field, 0, b);
    let laws = verify_injections(&zero, &g)?.max();
    let r = canonical.max(g.dagger_iso_residual()).max(laws);
    Ok(Trial::judge(rel(ctx, r, 1.0), r).witness(g))
}

fn oplus_dagger(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let dims: Vec<usize> = (0..4).map(|_| ctx.dim(rng, 0, 8)).collect();
    let f1 = random::morphism(ctx.field, dims[0], dims[1], rng);
    let f2 = random::morphism(ctx.field, dims[2], dims[3], rng);
    let lhs = oplus_mor(&f1, &f2)?.dagger();
    let rhs = oplus_mor(&f1.dagger(), &f2.dagger())?;
    let r = dist(&lhs, &rhs)?;
    Ok(Trial::judge(rel(ctx, r, lhs.frobenius_norm()), r).witness(f1))
}

fn biproduct_completeness(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let a = ctx.dim(rng, 0, 6);
    let b = ctx.dim(rng, 0, 6);
    let bp = make_biproduct(ctx.field, Object(a), Object(b));
    let id = Morphism::identity(ctx.field, a + b);
    let sum = |l: &Morphism, r: &Morphism| -> Result<Morphism> {
        derived_add(&l.compose(&l.dagger())?, &r.compose(&r.dagger())?)
    };
    let canonical = dist(&sum(&bp.inj_left, &bp.inj_right)?, &id)?;
    // a rotated biproduct: split the columns of a random unitary
    let w = random::unitary(ctx.field, a + b, rng);
    let cols: Vec<Morphism> = (0..a + b).map(|j| w.column_at(j)).collect();
    let side = |cs: &[Morphism], n: usize| -> Result<Morphism> {
        if cs.is_empty() {
            Ok(Morphism::zero(ctx.field, 0, n))
        } else {
            copairing(cs)
        }
    };
    let left = side(&cols[..a], a + b)?;
    let right = side(&cols[a..], a + b)?;
    let rotated = dist(&sum(&left, &right)?, &id)?;
    let r = canonical.max(rotated);
    Ok(Trial::judge(rel(ctx, r, 1.0), r).witness(w))
}

fn dagger_additive(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (a, b) = (ctx.dim(rng, 0, 8), ctx.dim(rng, 0, 8));
    let f = random::morphism(ctx.field, a, b, rng);
    let g = random::morphism(ctx.field, a, b, rng);
    let lhs = derived_add(&f, &g)?.dagger();
    let rhs = derived_add(&f.dagger(), &g.dagger())?;
    let r = dist(&lhs, &rhs)?;
    Ok(Trial::judge(rel(ctx, r, lhs.frobenius_norm()), r).witness(f))
}

fn semiadditive_laws(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (w, x, y, z) = (
        ctx.dim(rng, 0, 6),
        ctx.dim(rng, 0, 6),
        ctx.dim(rng, 0, 6),
        ctx.dim(rng, 0, 6),
    );
    let fld = ctx.field;
    let f = random::morphism(fld, x, y, rng);
    let g = random::morphism(fld, x, y, rng);
    let h = random::morphism(fld, x, y, rng);
    let k = random::morphism(fld, y, z, rng);
    let l = random::morphism(fld, w, x, rng);
    let zero = Morphism::zero(fld, x, y);
    let fg = derived_add(&f, &g)?;
    let assoc = dist(
        &derived_add(&fg, &h)?,
        &derived_add(&f, &derived_add(&g, &h)?)?,
    )?;
    let comm = dist(&fg, &derived_add(&g, &f)?)?;
    let unit = dist(&derived_add(&f, &zero)?, &f)?;
    let left = dist(
        &k.compose(&fg)?,
        &derived_add(&k.compose(&f)?, &k.compose(&g)?)?,
    )?;
    let right = dist(
        &fg.compose(&l)?,
        &derived_add(&f.compose(&l)?, &g.compose(&l)?)?,
    )?;
    let r = assoc.max(comm).max(unit).max(left).max(right);
    let scale = (1.0 + f.frobenius_norm() + g.frobenius_norm() + h.frobenius_norm())
        * (1.0 + k.frobenius_norm() + l.frobenius_norm());
    Ok(Trial::judge(rel(ctx, r, scale), r).witness(f))
}

fn entrywise_oracle(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let (a, b) = (ctx.dim(rng, 0, 8), ctx.dim(rng, 0, 8));
    let f = random::morphism(ctx.field, a, b, rng);
    let g = random::morphism(ctx.field, a, b, rng);
    let r = dist(&derived_add(&f, &g)?, &oracle::entrywise_sum(&f, &g)?)?;
    Ok(Trial::within(r, ORACLE_TOL).witness(f))
}

// axioms

fn h2_colimit(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let max_dim = ctx.dims.iter().copied().max().unwrap_or(6).clamp(1, 6);
    let d = random_diagram(ctx.field, 6, max_dim, rng, &ctx.tol)?;
    let c = finite_directed_colimit(&d);
    let cocone = c.residual(&d)?.max(d.functoriality_residual()?);
    let (comp, m) = competing_cocone(&c, ctx.field, rng.random_range(0..3), rng)?;
    let u = mediate(&d, &c, &comp, &ctx.tol)?;
    let unique = dist(&u, &m)?;
    let epic = jointly_epic_check(&c, ctx.field, 3, rng, &ctx.tol)?.jointly_epic;
    let r = cocone.max(unique).max(u.dagger_mono_residual());
    Ok(Trial::judge(epic && r <= MEDIATE_TOL, r))
}

fn h3_complement(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let x = ctx.dim(rng, 0, 8);
    let a = rng.random_range(0..=x);
    let f = random::dagger_mono(ctx.field, a, x, rng);
    let g = complement_h3(&f, &ctx.tol)?;
    let r = verify_injections(&f, &g)?.max();
    let shape = g.dom().dim() + a == x;
    Ok(Trial::judge(shape && r <= COMPLEMENT_TOL, r).witness(f))
}

fn h4_normalize(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 8);
    let nonzero = !construct_h4a(ctx.field, Object(n))?.is_zero(&ctx.tol);
    let u = random::vector(ctx.field, n, rng);
    let h = normalize_h4b(&u, &ctx.tol)?;
    let unit = u.scaled(&h)?;
    let r = unit.dagger_mono_residual();
    Ok(Trial::judge(nonzero && h.is_central(&ctx.tol) && rel(ctx, r, 1.0), r).witness(u))
}

fn h5_sqrt(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 6);
    let u = random::unitary(ctx.field, n, rng);
    let cert = strict_sqrt_c(&u, &ctx.tol)?;
    let strict = is_strict_sqrt(&u, &cert.root, 50, rng, &ctx.tol)?;
    let ok = strict
        && cert.residual <= SQRT_TOL
        && cert.unitarity_residual <= SQRT_TOL
        && cert.polynomial_residual <= POLY_TOL;
    let r = cert
        .residual
        .max(cert.unitarity_residual)
        .max(cert.polynomial_residual);
    Ok(Trial::judge(ok, r).witness(u))
}

fn simple_object_iso(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    // unit vectors of two copies of I, and the dagger iso carrying one to the other
    let e1 = Morphism::from_scalar(&random::scalar(ctx.field, rng));
    let e2 = Morphism::from_scalar(&random::scalar(ctx.field, rng));
    let e1 = e1.scaled(&normalize_h4b(&e1, &ctx.tol)?)?;
    let e2 = e2.scaled(&normalize_h4b(&e2, &ctx.tol)?)?;
    let iso = e2.compose(&e1.dagger())?;
    let r = iso
        .dagger_iso_residual()
        .max(dist(&iso.compose(&e1)?, &e2)?);
    Ok(Trial::judge(rel(ctx, r, 1.0), r).witness(iso))
}

// reconstruction

fn hermitian_form(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 8);
    let fld = ScalarFieldRecon::new(ctx.field);
    let u = hv(random::vector(ctx.field, n, rng))?;
    let v = hv(random::vector(ctx.field, n, rng))?;
    let w = hv(random::vector(ctx.field, n, rng))?;
    let alpha = random::scalar(ctx.field, rng);
    let el = |s: Scalar| Morphism::from_scalar(&s);
    let uv = el(inner_product(&u, &v)?);
    // ⟨α·u, v⟩ = α·⟨u, v⟩ and ⟨u, α·v⟩ = ⟨u, v⟩·α⋆ in the reversed product
    let first = dist(
        &el(inner_product(&u.act(&alpha)?, &v)?),
        &fld.mul(&el(alpha), &uv)?,
    )?;
    let second = dist(
        &el(inner_product(&u, &v.act(&alpha)?)?),
        &fld.mul(&uv, &fld.star(&el(alpha))?)?,
    )?;
    let uw = hv(derived_add(u.carrier(), w.carrier())?)?;
    let additive = dist(
        &el(inner_product(&uw, &v)?),
        &fld.add(&uv, &el(inner_product(&w, &v)?))?,
    )?;
    let symmetric = dist(&el(inner_product(&v, &u)?), &fld.star(&uv)?)?;
    let uu = inner_product(&u, &u)?;
    let positive = uu.re() > 0.0
        && uu.components()[1..]
            .iter()
            .all(|x| x.abs() <= ctx.tol.abs_eps * (1.0 + uu.re()));
    let r = first.max(second).max(additive).max(symmetric);
    let scale = (1.0 + alpha.norm())
        * u.carrier().frobenius_norm()
        * (1.0 + v.carrier().frobenius_norm() + w.carrier().frobenius_norm());
    Ok(Trial::judge(positive && rel(ctx, r, scale), r).witness(u.into_carrier()))
}

fn uniform(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 8);
    let u = hv(random::vector(ctx.field, n, rng))?;
    let h = normalize_h4b(u.carrier(), &ctx.tol)?;
    let unit = u.act(&h)?;
    let r = (inner_product(&unit, &unit)?.distance(&Scalar::one(ctx.field))).abs();
    Ok(Trial::judge(rel(ctx, r, 1.0), r).witness(u.into_carrier()))
}

fn dagger_mono_orthonormal(ctx: &Ctx, t: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 8);
    let k = rng.random_range(1..=n);
    let m = match t % 3 {
        0 => random::dagger_mono(ctx.field, k, n, rng),
        1 => random::morphism(ctx.field, k, n, rng),
        // orthonormal except for one rescaled vector
        _ => {
            let m = random::dagger_mono(ctx.field, k, n, rng);
            let mut cols: Vec<Morphism> = (0..k).map(|j| m.column_at(j)).collect();
            let j = rng.random_range(0..k);
            cols[j] = cols[j].scaled(&Scalar::real(ctx.field, 1.5))?;
            copairing(&cols)?
        }
    };
    let vs: Vec<HermitianVector> = (0..k).map(|j| hv(m.column_at(j))).collect::<Result<_>>()?;
    let mut orthonormal = true;
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let expected = Scalar::real(ctx.field, if i == j { 1.0 } else { 0.0 });
            orthonormal &= inner_product(a, b)?.approx_eq(&expected, &ctx.tol);
        }
    }
    let mono = copairing(&vs.iter().map(|v| v.carrier().clone()).collect::<Vec<_>>())?
        .is_dagger_mono(&ctx.tol);
    let expected = t.is_multiple_of(3);
    Ok(Trial::judge(orthonormal == mono && mono == expected, 0.0).witness(m))
}

fn onb_expansion(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let n = ctx.dim(rng, 1, 8);
    let w = random::unitary(ctx.field, n, rng);
    let basis = OrthoclosedSubspace::from_dagger_mono(&w, &ctx.tol)?;
    let iso = copairing(
        &basis
            .onb()
            .iter()
            .map(|e| e.carrier().clone())
            .collect::<Vec<_>>(),
    )?;
    let u = hv(random::vector(ctx.field, n, rng))?;
    let (_, residual) = onb_expand_with_residual(&u, &basis)?;
    let ok = iso.is_dagger_iso(&ctx.tol) && basis.spans_ambient() && residual <= EXPANSION_TOL;
    Ok(Trial::judge(ok, residual).witness(w))
}

fn isometry(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let x = ctx.dim(rng, 1, 8);
    let a = rng.random_range(0..=x);
    let h = random::dagger_mono(ctx.field, a, x, rng);
    let mut r = 0.0f64;
    if a > 0 {
        let u = hv(random::vector(ctx.field, a, rng))?;
        let v = hv(random::vector(ctx.field, a, rng))?;
        let hu = hv(h.compose(u.carrier())?)?;
        let hv_ = hv(h.compose(v.carrier())?)?;
        r = inner_product(&hu, &hv_)?.distance(&inner_product(&u, &v)?);
    }
    // ambient = image(h) ⊕ ker(h⋆)
    let g = complement_h3(&h, &ctx.tol)?;
    let cross = h.dagger().compose(&g)?.frobenius_norm();
    let cols = |m: &Morphism| -> Result<Vec<HermitianVector>> {
        (0..m.dom().dim()).map(|j| hv(m.column_at(j))).collect()
    };
    let image = gram_schmidt(ctx.field, Object(x), &cols(&h)?, &ctx.tol)?.dim();
    let kernel_ok = h.dagger().compose(&g)?.is_zero(&ctx.tol);
    let mut all = cols(&h)?;
    all.extend(cols(&g)?);
    let total = gram_schmidt(ctx.field, Object(x), &all, &ctx.tol)?.dim();
    let r = r.max(cross);
    let ok = image == a && total == x && g.dom().dim() == x - a && kernel_ok && rel(ctx, r, 10.0);
    Ok(Trial::judge(ok, r).witness(h))
}

fn orthomodular(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let x = ctx.dim(rng, 1, 8);
    let a = rng.random_range(0..=x);
    let h = random::dagger_mono(ctx.field, a, x, rng);
    let m = OrthoclosedSubspace::from_dagger_mono(&h, &ctx.tol)?;
    let perp = m.orthocomplement(&ctx.tol)?;
    let sum = derived_add(&projection_of_subspace(&m), &projection_of_subspace(&perp))?;
    let r = dist(&sum, &Morphism::identity(ctx.field, x))?;
    let ok = m.dim() + perp.dim() == x && rel(ctx, r, 1.0);
    Ok(Trial::judge(ok, r).witness(h))
}

fn scalar_iso(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let fld = ScalarFieldRecon::new(ctx.field);
    let a = random::scalar(ctx.field, rng);
    let b = random::scalar(ctx.field, rng);
    // φ(α) = [[conj α]] is a ⋆-ring isomorphism; ψ(α) = [[α]] reverses products
    let phi = |s: &Scalar| Morphism::from_scalar(&s.conj());
    let psi = |s: &Scalar| Morphism::from_scalar(s);
    let add = dist(&phi(&(a + b)), &fld.add(&phi(&a), &phi(&b))?)?;
    let mul = dist(&phi(&(a * b)), &fld.mul(&phi(&a), &phi(&b))?)?;
    let star = dist(&phi(&a.conj()), &fld.star(&phi(&a))?)?;
    let one = dist(&phi(&Scalar::one(ctx.field)), &fld.one())?;
    let reversed = dist(&psi(&(b * a)), &fld.mul(&psi(&a), &psi(&b))?)?;
    let r = add.max(mul).max(star).max(one).max(reversed);
    let scale = (1.0 + a.norm()) * (1.0 + b.norm());
    Ok(Trial::judge(rel(ctx, r, scale), r))
}

fn division_ring(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let fld = ScalarFieldRecon::new(ctx.field);
    let el = |rng: &mut ChaCha8Rng| Morphism::from_scalar(&random::scalar(ctx.field, rng));
    let (a, b, c) = (el(rng), el(rng), el(rng));
    let assoc = dist(
        &fld.mul(&fld.mul(&a, &b)?, &c)?,
        &fld.mul(&a, &fld.mul(&b, &c)?)?,
    )?;
    let dist_l = dist(
        &fld.mul(&a, &fld.add(&b, &c)?)?,
        &fld.add(&fld.mul(&a, &b)?, &fld.mul(&a, &c)?)?,
    )?;
    let dist_r = dist(
        &fld.mul(&fld.add(&a, &b)?, &c)?,
        &fld.add(&fld.mul(&a, &c)?, &fld.mul(&b, &c)?)?,
    )?;
    let unit = dist(&fld.mul(&a, &fld.one())?, &a)?.max(dist(&fld.mul(&fld.one(), &a)?, &a)?);
    let neg = dist(&fld.add(&a, &fld.neg(&a)?)?, &fld.zero())?;
    let mut inverse = 0.0;
    if a.frobenius_norm() > 1e-3 {
        let ai = fld.inv(&a, &ctx.tol)?;
        inverse = dist(&fld.mul(&a, &ai)?, &fld.one())?.max(dist(&fld.mul(&ai, &a)?, &fld.one())?);
    }
    let anti = dist(
        &fld.star(&fld.mul(&a, &b)?)?,
        &fld.mul(&fld.star(&b)?, &fld.star(&a)?)?,
    )?;
    let invol = dist(&fld.star(&fld.star(&a)?)?, &a)?;
    let r = [assoc, dist_l, dist_r, unit, neg, inverse, anti, invol]
        .into_iter()
        .fold(0.0, f64::max);
    let scale =
        (1.0 + a.frobenius_norm()) * (1.0 + b.frobenius_norm()) * (1.0 + c.frobenius_norm());
    Ok(Trial::judge(rel(ctx, r, scale), r))
}

fn field_witness(ctx: &Ctx, _: usize, _: &mut ChaCha8Rng) -> Result<Trial> {
    let w = scalar_field_witness(ctx.field, &ctx.tol)?;
    let ok = w.k1.norm() >= 0.1
        && w.k2.norm() >= 0.1
        && w.sum.norm() <= ORACLE_TOL
        && w.annihilation_residual <= ORACLE_TOL;
    Ok(Trial::judge(ok, w.sum.norm().max(w.annihilation_residual)))
}

fn centre_sqrt_minus_one(ctx: &Ctx, _: usize, _: &mut ChaCha8Rng) -> Result<Trial> {
    let r = center_sqrt_minus_one_test(ctx.field, &ctx.tol);
    let expected = if ctx.field == FieldTag::Complex {
        Status::Pass
    } else {
        Status::Infeasible
    };
    Ok(Trial::judge(
        r.status == expected,
        if expected == Status::Pass {
            r.residual
        } else {
            0.0
        },
    ))
}

fn functor_laws(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let fl = ctx.field;
    let (a, b, c) = (ctx.dim(rng, 1, 6), ctx.dim(rng, 1, 6), ctx.dim(rng, 1, 6));
    let basis = |n: usize, rng: &mut ChaCha8Rng| -> Result<OrthoclosedSubspace> {
        OrthoclosedSubspace::from_dagger_mono(&random::unitary(fl, n, rng), &ctx.tol)
    };
    let (ba, bb, bc) = (basis(a, rng)?, basis(b, rng)?, basis(c, rng)?);
    let f = random::morphism(fl, a, b, rng);
    let g = random::morphism(fl, a, b, rng);
    let k = random::morphism(fl, b, c, rng);
    let vf = functor_v(&f, &ba, &bb)?;
    let dagger = dist(&functor_v(&f.dagger(), &bb, &ba)?, &vf.dagger())?;
    let additive = dist(
        &functor_v(&derived_add(&f, &g)?, &ba, &bb)?,
        &derived_add(&vf, &functor_v(&g, &ba, &bb)?)?,
    )?;
    let composite = dist(
        &functor_v(&k.compose(&f)?, &ba, &bc)?,
        &functor_v(&k, &bb, &bc)?.compose(&vf)?,
    )?;
    let identity = dist(
        &functor_v(&Morphism::identity(fl, a), &ba, &ba)?,
        &Morphism::identity(fl, a),
    )?;
    let r = dagger.max(additive).max(composite).max(identity);
    Ok(Trial::within(
        r,
        ORACLE_TOL * (1.0 + f.frobenius_norm() * k.frobenius_norm()),
    )
    .witness(f))
}

fn faithful(ctx: &Ctx, t: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let d = ctx.dim(rng, 1, 8);
    let (ok, f) = faithful_trial(ctx.field, d, t.is_multiple_of(2), rng, &ctx.tol);
    Ok(Trial::judge(ok, 0.0).witness(f))
}

fn rank_n(ctx: &Ctx, t: usize, _: &mut ChaCha8Rng) -> Result<Trial> {
    let n = t + 1;
    let (x, onb) = rank_n_object(ctx.field, n, &ctx.tol)?;
    Ok(Trial::judge(
        x.dim() == n && onb.dim() == n && onb.spans_ambient(),
        0.0,
    ))
}

// projections

fn span_saturation(ctx: &Ctx, t: usize, _: &mut ChaCha8Rng) -> Result<Trial> {
    // trials 0..20 cover dims 2..=5 with five seeds each; the last is dim 1
    let (dim, seed) = if t < 20 {
        (2 + t / 5, ctx.seed.wrapping_add((t % 5) as u64))
    } else {
        (1, ctx.seed)
    };
    let r = projspan::saturation_check(
        ctx.field,
        dim,
        seed,
        projspan::DEFAULT_MAX_LEN,
        projspan::DEFAULT_GENERATORS,
    )?;
    let expected = if dim == 1 { 1 } else { r.target };
    Ok(Trial::judge(
        r.rank == expected,
        expected.abs_diff(r.rank) as f64,
    ))
}

fn span_monotone(ctx: &Ctx, _: usize, rng: &mut ChaCha8Rng) -> Result<Trial> {
    let dim = rng.random_range(2..=3usize);
    let seed: u64 = rng.random();
    let gens = projspan::projection_generators(dim, seed, 2);
    let ranks: Vec<usize> = (1..=3)
        .map(|len| ProjectionWordBasis::build(gens.clone(), len).map(|b| b.real_span_rank))
        .collect::<Result<_>>()?;
    let fewer = ProjectionWordBasis::build(projspan::projection_generators(dim, seed, 1), 3)?;
    let full = ProjectionWordBasis::build(gens, 3)?;
    let sane = projspan::sanity_check(&full, &ctx.tol)?;
    let ok = ranks.windows(2).all(|w| w[0] <= w[1]) && fewer.real_span_rank <= ranks[2] && sane;
    Ok(Trial::judge(ok, 0.0))
}
