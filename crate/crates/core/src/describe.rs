//! Summary statistics for a unit-interval sample.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// How skewness and kurtosis are normalized.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentConvention {
    /// Bias-corrected sample skewness `G1` and kurtosis `G2 + 3`.
    #[default]
    BiasCorrected,
    /// Plain population moments `m3 / m2^1.5` and `m4 / m2²`.
    Population,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub m: usize,
    pub min: f64,
    pub mean: f64,
    /// Uses the `m - 1` denominator.
    pub std: f64,
    pub skewness: f64,
    /// Non-excess: 3 for a normal sample.
    pub kurtosis: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub max: f64,
    pub convention: MomentConvention,
}

/// Percentile by linear interpolation with the midpoint plotting position:
/// the i-th order statistic sits at `(i - 0.5) / m`, values outside the
/// first and last positions are clamped.
pub fn percentile(sorted: &[f64], p: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Empty);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("percentile", format!("p = {p}")));
    }
    let m = sorted.len();
    let pos = p * m as f64 + 0.5;
    if pos <= 1.0 {
        return Ok(sorted[0]);
    }
    if pos >= m as f64 {
        return Ok(sorted[m - 1]);
    }
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    Ok((1.0 - frac) * sorted[lo - 1] + frac * sorted[lo])
}

pub fn describe(data: &Dataset) -> Result<DescriptiveStats> {
    describe_with(data, MomentConvention::default())
}

pub fn describe_with(data: &Dataset, convention: MomentConvention) -> Result<DescriptiveStats> {
    let ys = data.values();
    let m = ys.len();
    if m < 2 {
        return Err(Error::DegenerateData { needed: 2, got: m });
    }
    let mf = m as f64;
    let mean = ys.iter().sum::<f64>() / mf;
    let central = |k: i32| ys.iter().map(|y| (y - mean).powi(k)).sum::<f64>() / mf;
    let (m2, m3, m4) = (central(2), central(3), central(4));
    let std = (m2 * mf / (mf - 1.0)).sqrt();

    let g1 = m3 / m2.powf(1.5);
    let b2 = m4 / (m2 * m2);
    let (skewness, kurtosis) = match convention {
        MomentConvention::Population => (g1, b2),
        MomentConvention::BiasCorrected => {
            if m < 4 {
                return Err(Error::DegenerateData { needed: 4, got: m });
            }
            let skew = g1 * (mf * (mf - 1.0)).sqrt() / (mf - 2.0);
            let excess = (mf - 1.0) / ((mf - 2.0) * (mf - 3.0)) * ((mf + 1.0) * b2 - 3.0 * (mf - 1.0));
            (skew, excess + 3.0)
        }
    };

    Ok(DescriptiveStats {
        m,
        min: ys[0],
        mean,
        std,
        skewness,
        kurtosis,
        p25: percentile(ys, 0.25)?,
        p50: percentile(ys, 0.5)?,
        p75: percentile(ys, 0.75)?,
        max: ys[m - 1],
        convention,
    })
}
