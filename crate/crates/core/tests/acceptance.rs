//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use daggerlab::axioms::{
    competing_cocone, complement_h3, finite_directed_colimit, is_strict_sqrt, jointly_epic_check,
    mediate, random_diagram, refute_h5_scalar_case, strict_sqrt_c,
};
use daggerlab::biproduct::{derived_add, verify_injections};
use daggerlab::cli;
use daggerlab::lemmas::{self, Ctx};
use daggerlab::matcat::Morphism;
use daggerlab::projspan::{saturation_check, DEFAULT_GENERATORS};
use daggerlab::random;
use daggerlab::reconstruct::{faithfulness_check, rank_n_object, scalar_field_witness};
use daggerlab::report::Status;
use daggerlab::scalar::{FieldTag, Scalar, Tolerance};
use rand::Rng;

const C: FieldTag = FieldTag::Complex;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// Entry-by-entry sum, computed from raw components.
fn entrywise(f: &Morphism, g: &Morphism) -> Morphism {
    let field = f.field();
    let rows: Vec<Vec<Scalar>> = (0..f.cod().dim())
        .map(|i| {
            (0..f.dom().dim())
                .map(|j| {
                    let (a, b) = (f.get(i, j), g.get(i, j));
                    let c: Vec<f64> = a
                        .components()
                        .iter()
                        .zip(b.components())
                        .map(|(x, y)| x + y)
                        .collect();
                    Scalar::new(field, &c).unwrap()
                })
                .collect()
        })
        .collect();
    Morphism::from_rows(field, &rows, f.dom().dim()).unwrap()
}

fn semiadditive_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for field in FieldTag::ALL {
        for t in 0..200 {
            let mut rng = random::rng(1, "accept-oracle", t);
            let (a, b) = (rng.random_range(0..=8), rng.random_range(0..=8));
            let f = random::morphism(field, a, b, &mut rng);
            let g = random::morphism(field, a, b, &mut rng);
            let d = derived_add(&f, &g)
                .unwrap()
                .frobenius_distance(&entrywise(&f, &g))
                .unwrap();
            worst = worst.max(d);
            pairs += 1;
        }
    }
    outcome(
        worst <= 1e-9,
        format!("{pairs} pairs, max frobenius {worst:.3e}"),
    )
}

fn lemma_suite_c() -> Outcome {
    let ctx = Ctx::new(C, &[], 42, Tolerance::default());
    let reports = lemmas::run_all(&ctx, Some(200));
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.axiom.clone())
        .collect();
    outcome(
        failing.is_empty(),
        format!(
            "{} checks at 200 instances, failing: {failing:?}",
            reports.len()
        ),
    )
}

fn field_witness() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for field in FieldTag::ALL {
        let w = scalar_field_witness(field, &Tolerance::default()).unwrap();
        let good = w.k1.norm() >= 0.1 && w.k2.norm() >= 0.1 && w.sum.norm() <= 1e-9;
        ok &= good;
        parts.push(format!(
            "{field}: k1={} k2={} |k1+k2|={:.1e}",
            w.k1,
            w.k2,
            w.sum.norm()
        ));
    }
    outcome(ok, parts.join("; "))
}

fn h5_over_c() -> Outcome {
    let tol = Tolerance::default();
    let mut failures = 0;
    let mut worst = (0.0f64, 0.0f64);
    for t in 0..100 {
        let mut rng = random::rng(3, "accept-h5", t);
        let n = rng.random_range(1..=6);
        let u = random::unitary(C, n, &mut rng);
        let cert = strict_sqrt_c(&u, &tol).unwrap();
        let strict = is_strict_sqrt(&u, &cert.root, 50, &mut rng, &tol).unwrap();
        let r = cert.residual.max(cert.unitarity_residual);
        worst = (worst.0.max(r), worst.1.max(cert.polynomial_residual));
        if !(strict && r <= 1e-8 && cert.polynomial_residual <= 1e-7) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!(
            "100 unitaries, {failures} failures, max root residual {:.3e}, max fit residual {:.3e}",
            worst.0, worst.1
        ),
    )
}

fn exit_code(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    cli::run(
        args.iter().copied(),
        &mut std::io::empty(),
        &mut out,
        &mut err,
    )
}

fn h5_refutation() -> Outcome {
    let tol = Tolerance::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (field, dim) in [
        (FieldTag::Real, 2),
        (FieldTag::Real, 3),
        (FieldTag::Quaternion, 2),
    ] {
        let r = refute_h5_scalar_case(field, dim, &tol).unwrap();
        ok &= r.status == Status::Infeasible;
        parts.push(format!("({field},{dim}) {:?}", r.status));
    }
    for (field, expected) in [("R", 1), ("H", 1), ("C", 0)] {
        let code = exit_code(&[
            "daggerlab",
            "verify-axioms",
            "--field",
            field,
            "--format",
            "text",
        ]);
        ok &= code == expected;
        parts.push(format!("verify-axioms {field} exit {code}"));
    }
    outcome(ok, parts.join("; "))
}

fn h3_complement() -> Outcome {
    let tol = Tolerance::default();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for t in 0..300u64 {
        let field = FieldTag::ALL[(t % 3) as usize];
        let mut rng = random::rng(4, "accept-h3", t);
        let x = rng.random_range(0..=8);
        let a = rng.random_range(0..=x);
        let f = random::dagger_mono(field, a, x, &mut rng);
        let g = complement_h3(&f, &tol).unwrap();
        let r = verify_injections(&f, &g).unwrap().max();
        worst = worst.max(r);
        if r > 1e-8 || g.dom().dim() + a != x {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("300 monos, {failures} failures, max residual {worst:.3e}"),
    )
}

fn h2_colimits() -> Outcome {
    let tol = Tolerance::default();
    let mut failures = 0;
    let mut worst = 0.0f64;
    for t in 0..50u64 {
        let field = FieldTag::ALL[(t % 3) as usize];
        let mut rng = random::rng(5, "accept-h2", t);
        let d = random_diagram(field, 6, 6, &mut rng, &tol).unwrap();
        let c = finite_directed_colimit(&d);
        let commute = c.residual(&d).unwrap();
        let (comp, m) = competing_cocone(&c, field, rng.random_range(0..3), &mut rng).unwrap();
        let u = mediate(&d, &c, &comp, &tol).unwrap();
        let unique = u.frobenius_distance(&m).unwrap();
        let epic = jointly_epic_check(&c, field, 5, &mut rng, &tol).unwrap();
        let r = commute.max(unique).max(u.dagger_mono_residual());
        worst = worst.max(r);
        if r > 1e-8 || !epic.jointly_epic || d.len() > 6 {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("50 diagrams, {failures} failures, max residual {worst:.3e}"),
    )
}

fn saturation() -> Outcome {
    let mut ok = true;
    let mut ranks = Vec::new();
    for dim in 2..=5 {
        for seed in 0..5 {
            let r = saturation_check(C, dim, seed, 3, DEFAULT_GENERATORS).unwrap();
            ok &= r.rank == 2 * dim * dim;
            ranks.push(r.rank);
        }
    }
    let one = saturation_check(C, 1, 0, 3, DEFAULT_GENERATORS).unwrap();
    ok &= one.rank == 1;
    outcome(
        ok,
        format!(
            "ranks dims 2..5 x 5 seeds {ranks:?}; dim 1 rank {} ({})",
            one.rank, one.status
        ),
    )
}

fn functor_checks() -> Outcome {
    let tol = Tolerance::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for field in FieldTag::ALL {
        let faithful = faithfulness_check(field, &[4], 200, 6, &tol);
        let ctx = Ctx::new(field, &[], 6, tol);
        let laws = lemmas::run_check(
            &lemmas::find("reconstruct.functor").unwrap(),
            &ctx,
            Some(200),
        );
        let ranks = (0..=16).all(|n| {
            rank_n_object(field, n, &tol).is_ok_and(|(x, onb)| x.dim() == n && onb.dim() == n)
        });
        ok &= faithful.passed() && laws.passed() && ranks && laws.residual <= 1e-9;
        parts.push(format!(
            "{field}: faithful {}, laws residual {:.1e}, rank-n {ranks}",
            faithful.passed(),
            laws.residual
        ));
    }
    outcome(ok, parts.join("; "))
}

fn lemmas_json(seed: &str) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    cli::run(
        ["daggerlab", "lemmas", "--seed", seed],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    out
}

fn determinism() -> Outcome {
    let a = lemmas_json("11");
    let b = lemmas_json("11");
    outcome(
        !a.is_empty() && a == b,
        format!("{} bytes, identical {}", a.len(), a == b),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "semiadditive oracle",
            Some(Duration::from_secs(5)),
            semiadditive_oracle,
        ),
        (
            "lemma suite over C",
            Some(Duration::from_secs(20)),
            lemma_suite_c,
        ),
        ("scalar field witness", None, field_witness),
        (
            "strict square roots over C",
            Some(Duration::from_secs(10)),
            h5_over_c,
        ),
        ("square root refutation over R and H", None, h5_refutation),
        ("orthogonal complements", None, h3_complement),
        ("finite directed colimits", None, h2_colimits),
        (
            "projection span saturation",
            Some(Duration::from_secs(30)),
            saturation,
        ),
        ("functor checks", None, functor_checks),
        ("determinism", None, determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let ok = o.ok && in_time;
        if !ok {
            failed += 1;
        }
        let limit = budget
            .map(|b| format!(" (limit {}s)", b.as_secs()))
            .unwrap_or_default();
        println!(
            "[{}] {name}: {} [{:.2}s{limit}]",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(60);
    if !in_time {
        failed += 1;
    }
    println!(
        "[{}] full suite wall clock: {:.2}s (limit 60s)",
        if in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    println!("acceptance: {failed} failing");
    if failed > 0 {
        std::process::exit(1);
    }
}
