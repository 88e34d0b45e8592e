//! Campaign configuration and the suites run by the command-line tool.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::axioms::{check_h1, refute_h5_scalar_case};
use crate::error::{Error, Result};
use crate::lemmas::{self, Ctx};
use crate::projspan::{self, SpanReport};
use crate::report::{Report, Status, SuiteReport};
use crate::scalar::{FieldTag, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Everything a campaign depends on. Identical configurations produce
/// identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CampaignConfig {
    pub field: FieldTag,
    pub dims: Vec<usize>,
    pub seed: u64,
    /// overrides the per-check trial counts when set
    pub trials: Option<usize>,
    pub tolerance: Tolerance,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            field: FieldTag::Complex,
            dims: Vec::new(),
            seed: 0,
            trials: None,
            tolerance: Tolerance::default(),
            output: None,
            format: Format::Json,
        }
    }
}

impl CampaignConfig {
    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.field, &self.dims, self.seed, self.tolerance)
    }

    fn suite(&self, command: &str, reports: Vec<Report>) -> SuiteReport {
        SuiteReport {
            command: command.to_string(),
            field: self.field,
            seed: self.seed,
            reports,
        }
        .sorted()
    }
}

fn relabel(mut r: Report, axiom: &str) -> Report {
    r.axiom = axiom.to_string();
    r
}

/// (H1)–(H5) for the configured field. Over ℝ and ℍ the (H5) entries are
/// refutations, so the suite does not pass there.
pub fn verify_axioms(cfg: &CampaignConfig, on_report: &mut dyn FnMut(&Report)) -> SuiteReport {
    let ctx = cfg.ctx();
    let mut reports = Vec::new();
    let mut emit = |r: Report, reports: &mut Vec<Report>| {
        on_report(&r);
        reports.push(r);
    };
    let h1_dims: Vec<usize> = std::iter::once(0).chain(ctx.dims.iter().copied()).collect();
    emit(check_h1(cfg.field, &h1_dims, &cfg.tolerance), &mut reports);
    for (axiom, id) in [
        ("H2", "axioms.h2-colimit"),
        ("H3", "axioms.h3-complement"),
        ("H4", "axioms.h4-normalize"),
    ] {
        let check = lemmas::find(id).expect("catalogue entry");
        emit(
            relabel(lemmas::run_check(&check, &ctx, cfg.trials), axiom),
            &mut reports,
        );
    }
    if cfg.field == FieldTag::Complex {
        let check = lemmas::find("axioms.h5-sqrt").expect("catalogue entry");
        emit(
            relabel(lemmas::run_check(&check, &ctx, cfg.trials), "H5"),
            &mut reports,
        );
    } else {
        let mut dims: Vec<usize> = ctx.dims.iter().copied().filter(|&d| d >= 2).collect();
        if dims.is_empty() {
            dims.push(2);
        }
        for d in dims {
            let r = refute_h5_scalar_case(cfg.field, d, &cfg.tolerance).unwrap_or_else(|e| {
                Report::new("H5", cfg.field, Status::Fail, 0.0).with_detail(e.to_string())
            });
            let detail = format!(
                "dim {d}: {}; expected over {}",
                r.detail.clone().unwrap_or_default(),
                cfg.field
            );
            emit(r.with_detail(detail), &mut reports);
        }
    }
    cfg.suite("verify-axioms", reports)
}

fn run_prefix(
    cfg: &CampaignConfig,
    command: &str,
    prefix: &str,
    on_report: &mut dyn FnMut(&Report),
) -> SuiteReport {
    let ctx = cfg.ctx();
    let reports = lemmas::catalogue()
        .iter()
        .filter(|c| c.applies_to(cfg.field) && c.id.starts_with(prefix))
        .map(|c| {
            let r = lemmas::run_check(c, &ctx, cfg.trials);
            on_report(&r);
            r
        })
        .collect();
    cfg.suite(command, reports)
}

/// The reconstruction checks: scalars, Hermitian form, bases, subspaces and
/// the functor `hom(I, −)`.
pub fn reconstruct(cfg: &CampaignConfig, on_report: &mut dyn FnMut(&Report)) -> SuiteReport {
    run_prefix(cfg, "reconstruct", "reconstruct.", on_report)
}

/// Every catalogue entry that applies to the configured field.
pub fn lemmas(cfg: &CampaignConfig, on_report: &mut dyn FnMut(&Report)) -> SuiteReport {
    run_prefix(cfg, "lemmas", "", on_report)
}

/// Span saturation for each configured dimension (default 1 to 5).
pub fn span(
    cfg: &CampaignConfig,
    max_len: usize,
    generators: usize,
    on_report: &mut dyn FnMut(&SpanReport),
) -> Result<Vec<SpanReport>> {
    if cfg.field != FieldTag::Complex {
        return Err(Error::UnsupportedField(cfg.field));
    }
    let dims = if cfg.dims.is_empty() {
        vec![1, 2, 3, 4, 5]
    } else {
        cfg.dims.clone()
    };
    let mut out = Vec::with_capacity(dims.len());
    for d in dims {
        let r = projspan::saturation_check(cfg.field, d, cfg.seed, max_len, generators)?;
        on_report(&r);
        out.push(r);
    }
    Ok(out)
}
