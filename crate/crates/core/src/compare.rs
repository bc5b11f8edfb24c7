//! Fit several families to one dataset and rank them by log-likelihood.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::distributions::Family;
use crate::error::Result;
use crate::estimation::{fit_mle, FitResult, OptimizerConfig};
use crate::gof::{gof_report, GofReport};

/// One parameter with its uncertainty columns. `variance` is the diagonal of
/// the inverse observed information; `scaled_se` is `sqrt(variance / m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamEstimate {
    pub name: String,
    pub estimate: f64,
    pub variance: Option<f64>,
    pub se: Option<f64>,
    pub scaled_se: Option<f64>,
    pub wald_z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub params: Vec<ParamEstimate>,
    pub loglik: f64,
    pub k: usize,
    pub m: usize,
    pub aic: f64,
    pub caic: f64,
    pub bic: f64,
    pub covariance: Option<Vec<Vec<f64>>>,
    pub converged: bool,
    pub at_boundary: bool,
    pub evaluations: usize,
    pub start_used: Vec<f64>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl From<&FitResult> for FitSummary {
    fn from(fit: &FitResult) -> Self {
        let names = fit.model.family().param_names();
        let pick = |v: &Option<Vec<f64>>, i: usize| v.as_ref().and_then(|v| finite(v[i]));
        let params = fit
            .params()
            .iter()
            .enumerate()
            .map(|(i, &estimate)| ParamEstimate {
                name: names[i].to_string(),
                estimate,
                variance: fit.covariance.as_ref().and_then(|c| finite(c[i][i])),
                se: pick(&fit.se, i),
                scaled_se: pick(&fit.scaled_se, i),
                wald_z: pick(&fit.wald_z, i),
            })
            .collect();
        let covariance = fit
            .covariance
            .clone()
            .filter(|c| c.iter().flatten().all(|v| v.is_finite()));
        FitSummary {
            params,
            loglik: fit.loglik,
            k: fit.k,
            m: fit.m,
            aic: fit.criteria.aic,
            caic: fit.criteria.caic,
            bic: fit.criteria.bic,
            covariance,
            converged: fit.converged,
            at_boundary: fit.at_boundary,
            evaluations: fit.evaluations,
            start_used: fit.start_used.clone(),
        }
    }
}

/// A family's row. Failed fits keep their row with `error` set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub family: Family,
    pub fit: Option<FitSummary>,
    pub gof: Option<GofReport>,
    pub error: Option<String>,
}

impl ComparisonRow {
    pub fn loglik(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.loglik)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub m: usize,
    pub seed: u64,
    pub families: Vec<ComparisonRow>,
}

pub fn fit_row(family: Family, data: &Dataset, config: &OptimizerConfig) -> ComparisonRow {
    let attempt = || -> Result<(FitResult, GofReport)> {
        let fit = fit_mle(family, data, config)?;
        let gof = gof_report(data, &fit.model)?;
        Ok((fit, gof))
    };
    match attempt() {
        Ok((fit, gof)) => ComparisonRow {
            family,
            fit: Some(FitSummary::from(&fit)),
            gof: Some(gof),
            error: None,
        },
        Err(e) => ComparisonRow { family, fit: None, gof: None, error: Some(e.to_string()) },
    }
}

/// Rows sorted by log-likelihood, highest first; failed rows go last in
/// request order.
pub fn compare(data: &Dataset, families: &[Family], config: &OptimizerConfig, seed: u64) -> ComparisonTable {
    let mut rows: Vec<ComparisonRow> = families.iter().map(|&f| fit_row(f, data, config)).collect();
    rows.sort_by(|a, b| match (a.loglik(), b.loglik()) {
        (Some(x), Some(y)) => y.total_cmp(&x),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    ComparisonTable { m: data.len(), seed, families: rows }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

impl ComparisonTable {
    /// Fixed-width text rendering, one row per family.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<14} {:<34} {:>9} {:>9} {:>9} {:>9} {:>7} {:>7} {:>7} {:>7} decision",
            "family", "estimates (scaled se)", "loglik", "aic", "caic", "bic", "ks", "ks_p", "ad", "cvm"
        );
        for row in &self.families {
            match (&row.fit, &row.gof) {
                (Some(fit), Some(gof)) => {
                    let est: Vec<String> = fit
                        .params
                        .iter()
                        .map(|p| format!("{}={:.4}({})", p.name, p.estimate, opt(p.scaled_se)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "{:<14} {:<34} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {}",
                        row.family.name(),
                        est.join(" "),
                        fit.loglik,
                        fit.aic,
                        fit.caic,
                        fit.bic,
                        gof.ks,
                        gof.ks_p,
                        gof.ad,
                        gof.cvm,
                        gof.decision.label()
                    );
                }
                _ => {
                    let _ = writeln!(
                        out,
                        "{:<14} error: {}",
                        row.family.name(),
                        row.error.as_deref().unwrap_or("unknown")
                    );
                }
            }
        }
        out
    }

    /// One line per parameter so every family fits the same columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "family,param,estimate,variance,se,scaled_se,wald_z,loglik,aic,caic,bic,ks,ks_p,ad,cvm,decision,error\n",
        );
        let cell = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x}"));
        for row in &self.families {
            match (&row.fit, &row.gof) {
                (Some(fit), Some(gof)) => {
                    for p in &fit.params {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},",
                            row.family.name(),
                            p.name,
                            p.estimate,
                            cell(p.variance),
                            cell(p.se),
                            cell(p.scaled_se),
                            cell(p.wald_z),
                            fit.loglik,
                            fit.aic,
                            fit.caic,
                            fit.bic,
                            gof.ks,
                            gof.ks_p,
                            gof.ad,
                            gof.cvm,
                            gof.decision.label()
                        );
                    }
                }
                _ => {
                    let msg = row.error.as_deref().unwrap_or("unknown").replace(['"', ','], " ");
                    let _ = writeln!(out, "{},,,,,,,,,,,,,,,,{msg}", row.family.name());
                }
            }
        }
        out
    }
}
