//! Tabular data behind histogram-with-density and ECDF-versus-CDF plots.

use std::fmt::Write as _;
use std::path::Path;

use crate::dataset::Dataset;
use crate::describe::percentile;
use crate::distributions::DistributionModel;
use crate::error::{Error, Result};
use crate::gof::ecdf;
use crate::hazard_scan::open_grid;

pub const PLOT_GRID_POINTS: usize = 256;

/// Equal-width histogram over `[min, max]`, scaled to unit area.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn new(data: &Dataset, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::domain("histogram", format!("bins = {bins} < 2")));
        }
        let ys = data.values();
        let (lo, hi) = (ys[0], ys[ys.len() - 1]);
        if hi <= lo {
            return Err(Error::DegenerateData { needed: 2, got: 1 });
        }
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0usize; bins];
        for &y in ys {
            // the last bin is closed on the right
            let i = (((y - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        let scale = 1.0 / (ys.len() as f64 * width);
        let densities = counts.iter().map(|&c| c as f64 * scale).collect();
        Ok(Histogram { edges, densities })
    }

    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    /// Bar height at `y`, zero outside the covered range.
    pub fn density_at(&self, y: f64) -> f64 {
        let (lo, hi) = (self.edges[0], self.edges[self.edges.len() - 1]);
        if y < lo || y > hi {
            return 0.0;
        }
        let i = (((y - lo) / self.bin_width()) as usize).min(self.densities.len() - 1);
        self.densities[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityRow {
    pub y: f64,
    pub density: f64,
    pub fitted_pdf: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfRow {
    pub y: f64,
    pub ecdf: f64,
    pub cdf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub histogram: Histogram,
    pub density: Vec<DensityRow>,
    pub cdf: Vec<CdfRow>,
}

pub fn plot_data(data: &Dataset, model: &DistributionModel, bins: usize) -> Result<PlotData> {
    let histogram = Histogram::new(data, bins)?;
    let grid = open_grid(PLOT_GRID_POINTS);
    let density = grid
        .iter()
        .map(|&y| Ok(DensityRow { y, density: histogram.density_at(y), fitted_pdf: model.pdf(y)? }))
        .collect::<Result<Vec<_>>>()?;

    // grid, the observations themselves and the quartiles, so the ECDF jumps
    // and the median are represented exactly
    let mut ys = grid;
    ys.extend_from_slice(data.values());
    for p in [0.25, 0.5, 0.75] {
        ys.push(percentile(data.values(), p)?);
    }
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let e = ecdf(data);
    let cdf = ys
        .iter()
        .map(|&y| Ok(CdfRow { y, ecdf: e.eval(y), cdf: model.cdf(y)? }))
        .collect::<Result<Vec<_>>>()?;

    Ok(PlotData { histogram, density, cdf })
}

impl PlotData {
    pub fn density_csv(&self) -> String {
        let mut out = String::from("y,density,fitted_pdf\n");
        for r in &self.density {
            let _ = writeln!(out, "{},{},{}", r.y, r.density, r.fitted_pdf);
        }
        out
    }

    pub fn cdf_csv(&self) -> String {
        let mut out = String::from("y,ecdf,cdf\n");
        for r in &self.cdf {
            let _ = writeln!(out, "{},{},{}", r.y, r.ecdf, r.cdf);
        }
        out
    }

    /// Writes `<prefix>_density.csv` and `<prefix>_cdf.csv` into `dir`.
    pub fn write(&self, dir: &Path, prefix: &str) -> Result<(String, String)> {
        let write = |name: String, body: String| -> Result<String> {
            let path = dir.join(name);
            let shown = path.display().to_string();
            std::fs::write(&path, body).map_err(|e| Error::Io { path: shown.clone(), detail: e.to_string() })?;
            Ok(shown)
        };
        Ok((
            write(format!("{prefix}_density.csv"), self.density_csv())?,
            write(format!("{prefix}_cdf.csv"), self.cdf_csv())?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_has_unit_area() {
        let d = Dataset::flood();
        for bins in [2, 5, 8, 13] {
            let h = Histogram::new(&d, bins).unwrap();
            let area: f64 = h.densities.iter().sum::<f64>() * h.bin_width();
            assert!((area - 1.0).abs() < 1e-12, "bins {bins}: {area}");
        }
        assert!(Histogram::new(&d, 1).is_err());
    }

    #[test]
    fn cdf_file_contains_median() {
        let d = Dataset::flood();
        let m = DistributionModel::gombur_v1(8.1044, 1.1168).unwrap();
        let p = plot_data(&d, &m, 8).unwrap();
        let row = p.cdf.iter().find(|r| r.y == 0.405).unwrap();
        assert_eq!(row.ecdf, 0.5);
        assert_eq!(row.cdf, m.cdf(0.405).unwrap());
        assert!(p.density.iter().all(|r| r.fitted_pdf >= 0.0));
        assert_eq!(p.density.len(), PLOT_GRID_POINTS);
        assert!(p.density_csv().starts_with("y,density,fitted_pdf\n"));
        assert!(p.cdf_csv().starts_with("y,ecdf,cdf\n"));
    }
}
