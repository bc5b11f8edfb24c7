//! Goodness-of-fit statistics computed from the probability-integral
//! transform of a sample under a fitted model.
//!
//! The KS p-value treats the parameters as known (no Lilliefors-type
//! correction), so it is optimistic for fitted models.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::distributions::DistributionModel;
use crate::error::{Error, Result};
use crate::specfun::kolmogorov_sf;

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;
/// PIT values are clamped to `[Z_CLAMP, 1 - Z_CLAMP]` before taking logs.
pub const Z_CLAMP: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Reject,
    FailToReject,
}

impl Decision {
    pub fn from_pvalue(p: f64) -> Self {
        if p < SIGNIFICANCE_LEVEL {
            Decision::Reject
        } else {
            Decision::FailToReject
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Decision::Reject => "reject",
            Decision::FailToReject => "fail_to_reject",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks: f64,
    pub ks_p: f64,
    pub ad: f64,
    pub cvm: f64,
    pub decision: Decision,
    /// Some PIT value hit the clamp bound in the Anderson-Darling sum.
    pub clamped: bool,
}

/// Right-continuous empirical distribution function of a sorted sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf<'a> {
    sorted: &'a [f64],
}

impl<'a> Ecdf<'a> {
    pub fn new(data: &'a Dataset) -> Self {
        Ecdf { sorted: data.values() }
    }

    /// Fraction of observations `≤ y`.
    pub fn eval(&self, y: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= y);
        count as f64 / self.sorted.len() as f64
    }
}

pub fn ecdf(data: &Dataset) -> Ecdf<'_> {
    Ecdf::new(data)
}

/// Sorted `zᵢ = F(y₍ᵢ₎)`.
pub fn pit(data: &Dataset, model: &DistributionModel) -> Result<Vec<f64>> {
    let mut z = data.values().iter().map(|&y| model.cdf(y)).collect::<Result<Vec<_>>>()?;
    // cdf is monotone, but guard against ties broken by rounding
    z.sort_by(f64::total_cmp);
    Ok(z)
}

fn check_z(z: &[f64]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::Empty);
    }
    if z.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::domain("gof", "PIT values must lie in [0, 1]"));
    }
    Ok(())
}

/// Kolmogorov–Smirnov distance from sorted PIT values.
pub fn ks_from_pit(z: &[f64]) -> Result<f64> {
    check_z(z)?;
    let m = z.len() as f64;
    Ok(z.iter()
        .enumerate()
        .map(|(i, &zi)| ((i as f64 + 1.0) / m - zi).max(zi - i as f64 / m))
        .fold(0.0, f64::max))
}

/// Anderson–Darling `A²` and whether clamping fired.
pub fn ad_from_pit(z: &[f64]) -> Result<(f64, bool)> {
    check_z(z)?;
    let m = z.len();
    let mut clamped = false;
    let mut clamp = |v: f64| {
        let c = v.clamp(Z_CLAMP, 1.0 - Z_CLAMP);
        clamped |= c != v;
        c
    };
    let zc: Vec<f64> = z.iter().map(|&v| clamp(v)).collect();
    let sum: f64 = (0..m)
        .map(|i| (2 * i + 1) as f64 * (zc[i].ln() + (-zc[m - 1 - i]).ln_1p()))
        .sum();
    Ok((-(m as f64) - sum / m as f64, clamped))
}

/// Cramér–von Mises `W²` from sorted PIT values.
pub fn cvm_from_pit(z: &[f64]) -> Result<f64> {
    check_z(z)?;
    let m = z.len() as f64;
    Ok(1.0 / (12.0 * m)
        + z.iter()
            .enumerate()
            .map(|(i, &zi)| (zi - (2.0 * i as f64 + 1.0) / (2.0 * m)).powi(2))
            .sum::<f64>())
}

pub fn ks_statistic(data: &Dataset, model: &DistributionModel) -> Result<f64> {
    ks_from_pit(&pit(data, model)?)
}

pub fn anderson_darling(data: &Dataset, model: &DistributionModel) -> Result<(f64, bool)> {
    ad_from_pit(&pit(data, model)?)
}

pub fn cramer_von_mises(data: &Dataset, model: &DistributionModel) -> Result<f64> {
    cvm_from_pit(&pit(data, model)?)
}

/// Asymptotic Kolmogorov p-value with the small-sample argument
/// `λ = (√m + 0.12 + 0.11/√m)·d`.
pub fn ks_pvalue(d: f64, m: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) || m == 0 {
        return Err(Error::domain("ks_pvalue", format!("d = {d}, m = {m}")));
    }
    let sm = (m as f64).sqrt();
    kolmogorov_sf((sm + 0.12 + 0.11 / sm) * d)
}

pub fn gof_from_pit(z: &[f64]) -> Result<GofReport> {
    let ks = ks_from_pit(z)?;
    let ks_p = ks_pvalue(ks, z.len())?;
    let (ad, clamped) = ad_from_pit(z)?;
    let cvm = cvm_from_pit(z)?;
    Ok(GofReport { ks, ks_p, ad, cvm, decision: Decision::from_pvalue(ks_p), clamped })
}

pub fn gof_report(data: &Dataset, model: &DistributionModel) -> Result<GofReport> {
    gof_from_pit(&pit(data, model)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ecdf_steps() {
        let d = Dataset::new(vec![0.5]).unwrap();
        assert_eq!(ecdf(&d).eval(0.5), 1.0);
        assert_eq!(ecdf(&d).eval(0.4999), 0.0);
        let d = Dataset::new(vec![0.2, 0.4]).unwrap();
        assert_eq!(ecdf(&d).eval(0.3), 0.5);
        assert_eq!(ecdf(&Dataset::flood()).eval(0.405), 0.5);
        assert_eq!(ecdf(&Dataset::flood()).eval(0.42), 14.0 / 20.0);
    }

    #[test]
    fn single_point_closed_forms() {
        let z = [0.5];
        assert_abs_diff_eq!(ks_from_pit(&z).unwrap(), 0.5);
        assert_abs_diff_eq!(ad_from_pit(&z).unwrap().0, -1.0 + 2.0 * 2f64.ln(), epsilon = 1e-14);
        // the single midpoint (2i-1)/(2m) is 0.5 itself
        assert_abs_diff_eq!(cvm_from_pit(&z).unwrap(), 1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cvm_from_pit(&[0.25]).unwrap(), 1.0 / 12.0 + 0.0625, epsilon = 1e-15);
    }

    #[test]
    fn pvalue_edges() {
        assert_eq!(ks_pvalue(0.0, 7).unwrap(), 1.0);
        assert!(ks_pvalue(1.0, 20).unwrap() < 1e-12);
        assert_abs_diff_eq!(ks_pvalue(0.2040, 20).unwrap(), 0.337, epsilon = 2e-3);
        assert!(ks_pvalue(1.5, 20).is_err());
    }

    #[test]
    fn clamping_is_flagged() {
        let (a, c) = ad_from_pit(&[0.0, 0.5, 1.0]).unwrap();
        assert!(a.is_finite());
        assert!(c);
        assert!(!ad_from_pit(&[0.2, 0.5]).unwrap().1);
    }

    #[test]
    fn decision_rule() {
        assert_eq!(Decision::from_pvalue(0.0141), Decision::Reject);
        assert_eq!(Decision::from_pvalue(0.0311), Decision::Reject);
        assert_eq!(Decision::from_pvalue(0.3297), Decision::FailToReject);
    }
}
