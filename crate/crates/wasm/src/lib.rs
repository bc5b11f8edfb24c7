//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export returns a JSON string; errors surface as thrown JS errors.

use gombur::{compare, hazard_scan, Dataset, DistributionModel, Family, OptimizerConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn gombur_model(version: u8, n: f64, alpha: f64) -> Result<DistributionModel, String> {
    let family = match version {
        1 => Family::GomburV1,
        2 => Family::GomburV2,
        v => return Err(format!("unknown version {v}")),
    };
    family.model(&[n, alpha]).map_err(|e| e.to_string())
}

fn finite_or_null(v: gombur::Result<f64>) -> serde_json::Value {
    match v {
        Ok(x) if x.is_finite() => json!(x),
        _ => serde_json::Value::Null,
    }
}

/// Density, cdf and both hazard traces on a midpoint grid.
pub fn curves_json(version: u8, n: f64, alpha: f64, points: usize) -> Result<String, String> {
    if !(2..=4096).contains(&points) {
        return Err("points must lie in 2..=4096".into());
    }
    let model = gombur_model(version, n, alpha)?;
    let grid = gombur::hazard_scan::open_grid(points);
    let mut pdf = Vec::with_capacity(points);
    let mut cdf = Vec::with_capacity(points);
    let mut hazard = Vec::with_capacity(points);
    let mut hazard_naive = Vec::with_capacity(points);
    for &y in &grid {
        pdf.push(finite_or_null(model.pdf(y)));
        cdf.push(finite_or_null(model.cdf(y)));
        hazard.push(finite_or_null(model.hazard(y)));
        let naive = model.survival_naive(y).and_then(|s| Ok(model.pdf(y)? / s));
        hazard_naive.push(finite_or_null(naive));
    }
    Ok(json!({
        "y": grid,
        "pdf": pdf,
        "cdf": cdf,
        "hazard": hazard,
        "hazard_naive": hazard_naive,
        "median": model.quantile(0.5).ok(),
    })
    .to_string())
}

/// Sign-change summaries for the accurate and naive hazard traces.
pub fn hazard_summary_json(version: u8, n: f64, alpha: f64, points: usize) -> Result<String, String> {
    let model = gombur_model(version, n, alpha)?;
    let scan = hazard_scan(&model, points).map_err(|e| e.to_string())?;
    Ok(json!({ "safe": scan.safe_summary, "naive": scan.naive_summary }).to_string())
}

/// Fit every family to whitespace/comma separated values; empty input uses the flood data.
pub fn fit_json(text: &str) -> Result<String, String> {
    let data = if text.trim().is_empty() {
        Dataset::flood()
    } else {
        Dataset::parse_text(text).map_err(|e| e.to_string())?
    };
    let table = compare(&data, &Family::ALL, &OptimizerConfig::default(), 0);
    serde_json::to_string(&table).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn curves(version: u8, n: f64, alpha: f64, points: usize) -> Result<String, JsError> {
    curves_json(version, n, alpha, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hazard_summary(version: u8, n: f64, alpha: f64, points: usize) -> Result<String, JsError> {
    hazard_summary_json(version, n, alpha, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fit(text: &str) -> Result<String, JsError> {
    fit_json(text).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_have_grid_length() {
        let v: serde_json::Value = serde_json::from_str(&curves_json(1, 3.0, 2f64.sqrt(), 64).unwrap()).unwrap();
        assert_eq!(v["y"].as_array().unwrap().len(), 64);
        assert_eq!(v["pdf"].as_array().unwrap().len(), 64);
        assert!((v["median"].as_f64().unwrap() - 0.25).abs() < 1e-12);
        assert!(curves_json(3, 3.0, 1.0, 64).is_err());
        assert!(curves_json(1, -3.0, 1.0, 64).is_err());
    }

    #[test]
    fn naive_hazard_goes_missing_in_the_tail() {
        let v: serde_json::Value = serde_json::from_str(&curves_json(1, 50.0, 1.8, 512).unwrap()).unwrap();
        assert!(v["hazard"].as_array().unwrap().iter().all(|h| h.is_number()));
        assert!(v["hazard_naive"].as_array().unwrap().iter().any(|h| h.is_null()));
        let s: serde_json::Value = serde_json::from_str(&hazard_summary_json(1, 50.0, 1.8, 512).unwrap()).unwrap();
        assert_eq!(s["safe"]["sign_changes"], 0);
    }

    #[test]
    fn fit_defaults_to_flood() {
        let v: serde_json::Value = serde_json::from_str(&fit_json("").unwrap()).unwrap();
        assert_eq!(v["m"], 20);
        assert!(fit_json("0.2 1.4").is_err());
        assert!(fit_json("0.1, 0.2, 0.3, 0.35, 0.5, 0.6").is_ok());
    }
}
