use serde::Serialize;

use super::config::AnalysisConfig;
use super::output::{num, opt_num, render, Tabular};
use super::OutputFormat;
use crate::error::{Error, Result};
use crate::evidence::{
    evaluate, p_value_conservative_exact, AnalysisOptions, EvidenceReport, ReportRecord,
};
use crate::special_fn::ChiSquare;

/// Grid resolution over Θ₀ for the exact conservative p-value.
pub const CONSERVATIVE_GRID: usize = 2001;

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeRow {
    pub label: String,
    #[serde(flatten)]
    pub record: ReportRecord,
    pub dof_full: usize,
    pub dof_null_codim: Option<usize>,
}

impl Tabular for AnalyzeRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "label",
            "s_value",
            "s_complement",
            "deviance",
            "p_lr",
            "p_wald",
            "theta0_hat",
            "p_conservative",
            "alpha_corrected",
            "dof_full",
            "dof_null_codim",
        ]
    }

    fn cells(&self) -> Vec<Option<String>> {
        let r = &self.record;
        vec![
            Some(self.label.clone()),
            Some(num(r.s_value)),
            Some(num(r.s_complement)),
            opt_num(r.deviance),
            opt_num(r.p_lr),
            opt_num(r.p_wald),
            r.theta0_hat
                .as_ref()
                .map(|t| t.iter().map(|x| num(*x)).collect::<Vec<_>>().join(";")),
            opt_num(r.p_conservative),
            opt_num(r.alpha_corrected),
            Some(self.dof_full.to_string()),
            self.dof_null_codim.map(|r| r.to_string()),
        ]
    }
}

/// Evaluates every configured null in order.
pub fn analyze(cfg: &AnalysisConfig, conservative: bool) -> Result<Vec<(String, EvidenceReport)>> {
    let model = cfg.build_model()?;
    let nulls = cfg.build_nulls()?;
    let reference = cfg.f_dof.map(ChiSquare::new).transpose()?;
    let conservative = conservative || cfg.conservative;
    let tri = cfg.trinomial();
    if conservative && tri.is_none() {
        return Err(Error::Unsupported(
            "--conservative needs a trinomial model".into(),
        ));
    }
    nulls
        .into_iter()
        .map(|(label, codim, null)| {
            let opts = AnalysisOptions {
                reference,
                codimension: codim,
                alpha: cfg.alpha,
            };
            let mut report = evaluate(model.as_ref(), &null, &opts)?;
            if let (true, Some(t)) = (conservative, &tri) {
                report.p_value_conservative = Some(p_value_conservative_exact(
                    t,
                    &null,
                    report.deviance,
                    CONSERVATIVE_GRID,
                )?);
            }
            Ok((label, report))
        })
        .collect()
}

pub fn run_analyze(
    cfg: &AnalysisConfig,
    conservative: bool,
    format: OutputFormat,
) -> Result<String> {
    let rows: Vec<AnalyzeRow> = analyze(cfg, conservative)?
        .into_iter()
        .map(|(label, r)| AnalyzeRow {
            label,
            record: r.record(),
            dof_full: r.dof_full,
            dof_null_codim: r.dof_null_codim,
        })
        .collect();
    render(&rows, format)
}
