//! Hazard-shape scanning on a uniform open grid.
//!
//! Two traces are produced: one with the tail-accurate survival function and
//! one with `1 - cdf` formed by subtraction. Where the cdf rounds to one the
//! naive trace develops spurious wiggles and then infinite values; comparing
//! the two shows which features of a hazard curve survive accurate evaluation.

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HazardShape {
    Increasing,
    Bathtub,
    JShaped,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HazardPoint {
    pub y: f64,
    /// `None` when the survival value underflowed to zero.
    pub hazard: Option<f64>,
    pub survival: f64,
}

impl HazardPoint {
    pub fn is_finite(&self) -> bool {
        self.hazard.is_some_and(f64::is_finite)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    /// Strict sign changes of first differences between adjacent finite points.
    pub sign_changes: usize,
    /// Grid abscissa at which each sign change occurs.
    pub sign_change_positions: Vec<f64>,
    pub shape: HazardShape,
    /// First grid point where survival is exactly zero.
    pub underflow_y: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HazardScan {
    pub safe: Vec<HazardPoint>,
    pub naive: Vec<HazardPoint>,
    pub safe_summary: TraceSummary,
    pub naive_summary: TraceSummary,
}

/// Midpoint grid `(i + 1/2) / N`, `i = 0..N`.
pub fn open_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| (i as f64 + 0.5) / points as f64).collect()
}

pub fn hazard_scan(model: &DistributionModel, grid_points: usize) -> Result<HazardScan> {
    if grid_points < 16 {
        return Err(Error::domain("hazard_scan", format!("grid_points = {grid_points} < 16")));
    }
    let grid = open_grid(grid_points);
    let mut safe = Vec::with_capacity(grid_points);
    let mut naive = Vec::with_capacity(grid_points);
    for &y in &grid {
        let log_pdf = model.log_pdf(y)?;
        safe.push(point(y, log_pdf, model.survival(y)?));
        naive.push(point(y, log_pdf, model.survival_naive(y)?));
    }
    let safe_summary = summarize(&safe);
    let naive_summary = summarize(&naive);
    Ok(HazardScan { safe, naive, safe_summary, naive_summary })
}

fn point(y: f64, log_pdf: f64, survival: f64) -> HazardPoint {
    let hazard = if survival > 0.0 { Some((log_pdf - survival.ln()).exp()) } else { None };
    HazardPoint { y, hazard, survival }
}

fn summarize(trace: &[HazardPoint]) -> TraceSummary {
    let underflow_y = trace.iter().find(|p| p.survival <= 0.0).map(|p| p.y);

    // (position, sign) of each nonzero difference between adjacent finite points
    let diffs: Vec<(usize, f64)> = trace
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| match (w[0].hazard, w[1].hazard) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() && a != b => {
                Some((i, (b - a).signum()))
            }
            _ => None,
        })
        .collect();

    let mut positions = Vec::new();
    for pair in diffs.windows(2) {
        if pair[0].1 != pair[1].1 {
            positions.push(trace[pair[1].0].y);
        }
    }

    let shape = classify(trace, &diffs, underflow_y);
    TraceSummary { sign_changes: positions.len(), sign_change_positions: positions, shape, underflow_y }
}

fn classify(trace: &[HazardPoint], diffs: &[(usize, f64)], underflow_y: Option<f64>) -> HazardShape {
    let limit = underflow_y.unwrap_or(f64::INFINITY);
    let mut runs: Vec<(f64, usize)> = Vec::new();
    for &(i, s) in diffs.iter().filter(|(i, _)| trace[i + 1].y < limit) {
        match runs.last() {
            Some(&(last, _)) if last == s => {}
            _ => runs.push((s, i)),
        }
    }
    match runs.as_slice() {
        [(s, _)] if *s > 0.0 => HazardShape::Increasing,
        [(a, _), (b, turn)] if *a < 0.0 && *b > 0.0 => {
            // a minimum in the first tenth of the grid reads as J rather than a tub
            if (*turn as f64) < 0.1 * trace.len() as f64 {
                HazardShape::JShaped
            } else {
                HazardShape::Bathtub
            }
        }
        _ => HazardShape::Other,
    }
}
