//! Maximum-likelihood fitting with observed-information standard errors and
//! the AIC / CAIC / BIC criteria.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::distributions::{DistributionModel, Family};
use crate::error::{Error, Result};
use crate::optimize::nelder_mead;

/// Shift keeping version 2's `n ≥ 1` constraint strictly inside the log map.
pub const V2_SHIFT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Stop when the simplex's function spread falls below this.
    pub tolerance: f64,
    pub max_evaluations: usize,
    /// Relative finite-difference step for the observed information.
    pub hessian_step: f64,
    /// Initial simplex edge in the unconstrained (log) coordinates.
    pub simplex_step: f64,
    /// Replaces the per-family default start grid when set.
    pub starts: Option<Vec<Vec<f64>>>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            tolerance: 1e-10,
            max_evaluations: 20_000,
            hessian_step: 1e-4,
            simplex_step: 0.5,
            starts: None,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.hessian_step > 0.0 && self.simplex_step > 0.0)
            || self.max_evaluations == 0
        {
            return Err(Error::domain("OptimizerConfig", "all settings must be positive"));
        }
        Ok(())
    }

    /// Starting points, sorted lexicographically so ties resolve to the smallest.
    pub fn start_grid(&self, family: Family, data: &Dataset) -> Vec<Vec<f64>> {
        let mut grid = match &self.starts {
            Some(s) => s.clone(),
            None => default_grid(family, data),
        };
        grid.sort_by(|a, b| {
            a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        grid
    }
}

const GOMBUR_N: [f64; 8] = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
const GOMBUR_ALPHA: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const COARSE: [f64; 3] = [0.5, 2.0, 8.0];

fn default_grid(family: Family, data: &Dataset) -> Vec<Vec<f64>> {
    let ys = data.values();
    let m = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / m;
    let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / m;
    let cross = |a: &[f64], b: &[f64]| -> Vec<Vec<f64>> {
        a.iter().flat_map(|&x| b.iter().map(move |&y| vec![x, y])).collect()
    };
    match family {
        Family::GomburV1 => cross(&GOMBUR_N, &GOMBUR_ALPHA),
        Family::GomburV2 => {
            let n2: Vec<f64> = GOMBUR_N.iter().map(|n| 2.0 * n + 1.0).collect();
            cross(&n2, &GOMBUR_ALPHA)
        }
        Family::Mbur => GOMBUR_ALPHA.iter().map(|&a| vec![a]).collect(),
        Family::Beta => {
            let mut g = cross(&COARSE, &COARSE);
            if var > 0.0 {
                let common = mean * (1.0 - mean) / var - 1.0;
                if common > 0.0 {
                    g.push(vec![mean * common, (1.0 - mean) * common]);
                }
            }
            g
        }
        Family::Kumaraswamy => {
            let mut g = cross(&COARSE, &COARSE);
            g.push(vec![1.0, 1.0]);
            g
        }
        Family::ToppLeone => {
            let mut g: Vec<Vec<f64>> = COARSE.iter().map(|&t| vec![t]).collect();
            // median matching: (med (2 - med))^θ = 1/2
            let med = ys[ys.len() / 2];
            let theta = 0.5f64.ln() / (med * (2.0 - med)).ln();
            if theta.is_finite() && theta > 0.0 {
                g.push(vec![theta]);
            }
            g
        }
        Family::UnitLindley => {
            let mut g: Vec<Vec<f64>> = COARSE.iter().map(|&t| vec![t]).collect();
            // mean matching: E[Y] = 1/(1+θ)
            g.push(vec![1.0 / mean - 1.0]);
            g
        }
    }
}

fn to_free(family: Family, params: &[f64]) -> Vec<f64> {
    match family {
        Family::GomburV2 => vec![(params[0] - 1.0 + V2_SHIFT).ln(), params[1].ln()],
        _ => params.iter().map(|p| p.ln()).collect(),
    }
}

fn from_free(family: Family, free: &[f64]) -> Vec<f64> {
    match family {
        Family::GomburV2 => vec![free[0].exp() + 1.0 - V2_SHIFT, free[1].exp()],
        _ => free.iter().map(|t| t.exp()).collect(),
    }
}

/// `-Σ log f(yᵢ)`, or `+∞` for parameters outside the family's domain or a
/// zero density at any observation.
pub fn negative_log_likelihood(family: Family, params: &[f64], data: &Dataset) -> f64 {
    let Ok(model) = family.model(params) else {
        return f64::INFINITY;
    };
    let mut total = 0.0;
    for &y in data.values() {
        match model.log_pdf(y) {
            Ok(lp) if lp.is_finite() => total -= lp,
            _ => return f64::INFINITY,
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationCriteria {
    pub aic: f64,
    /// Small-sample corrected AIC, `aic + 2k(k+1)/(m-k-1)`.
    pub caic: f64,
    pub bic: f64,
}

pub fn information_criteria(loglik: f64, k: usize, m: usize) -> Result<InformationCriteria> {
    if m <= k + 1 {
        return Err(Error::DegenerateData { needed: k + 2, got: m });
    }
    let (kf, mf) = (k as f64, m as f64);
    let aic = 2.0 * kf - 2.0 * loglik;
    Ok(InformationCriteria {
        aic,
        caic: aic + 2.0 * kf * (kf + 1.0) / (mf - kf - 1.0),
        bic: kf * mf.ln() - 2.0 * loglik,
    })
}

/// Central finite-difference Hessian of `f` at `x` with steps `h_rel · |xᵢ|`,
/// symmetrized.
pub fn numerical_hessian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h_rel: f64) -> Vec<Vec<f64>> {
    let k = x.len();
    let h: Vec<f64> = x.iter().map(|xi| h_rel * xi.abs().max(1e-8)).collect();
    let at = |offsets: &[(usize, f64)]| {
        let mut p = x.to_vec();
        for &(i, d) in offsets {
            p[i] += d;
        }
        f(&p)
    };
    let f0 = f(x);
    let mut hess = vec![vec![0.0; k]; k];
    for i in 0..k {
        hess[i][i] = (at(&[(i, h[i])]) - 2.0 * f0 + at(&[(i, -h[i])])) / (h[i] * h[i]);
        for j in 0..i {
            let v = (at(&[(i, h[i]), (j, h[j])]) - at(&[(i, h[i]), (j, -h[j])])
                - at(&[(i, -h[i]), (j, h[j])])
                + at(&[(i, -h[i]), (j, -h[j])]))
                / (4.0 * h[i] * h[j]);
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    hess
}

/// Observed information: Hessian of the negative log-likelihood in the
/// original parameter coordinates.
pub fn observed_information(
    family: Family,
    params: &[f64],
    data: &Dataset,
    h_rel: f64,
) -> Result<Vec<Vec<f64>>> {
    family.model(params)?;
    let hess = numerical_hessian(|p| negative_log_likelihood(family, p, data), params, h_rel);
    if hess.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::domain("observed_information", "parameters are not interior"));
    }
    if to_matrix(&hess).cholesky().is_none() {
        return Err(Error::SingularHessian);
    }
    Ok(hess)
}

fn to_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let k = rows.len();
    DMatrix::from_fn(k, k, |i, j| rows[i][j])
}

/// Inverse of a symmetric positive definite matrix.
pub fn invert_spd(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let inv = to_matrix(rows).cholesky().ok_or(Error::SingularHessian)?.inverse();
    let k = rows.len();
    Ok((0..k).map(|i| (0..k).map(|j| inv[(i, j)]).collect()).collect())
}

/// Maximum-likelihood fit.
///
/// `covariance` is the inverse observed information. The flood-data
/// comparison tables this crate reproduces list exactly this matrix as
/// "Var" and report `sqrt(covariance_ii / m)` as "SE"; that quantity is kept
/// as `scaled_se`, separate from the usual Wald `se`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: DistributionModel,
    pub loglik: f64,
    pub k: usize,
    pub m: usize,
    pub criteria: InformationCriteria,
    pub covariance: Option<Vec<Vec<f64>>>,
    pub se: Option<Vec<f64>>,
    pub scaled_se: Option<Vec<f64>>,
    /// Wald statistics `estimate / se`.
    pub wald_z: Option<Vec<f64>>,
    pub converged: bool,
    /// The optimum sits on the lower edge of the parameter space (n → 0 for
    /// version 1, n → 1 for version 2); no covariance is computed there.
    pub at_boundary: bool,
    pub evaluations: usize,
    pub start_used: Vec<f64>,
}

impl FitResult {
    pub fn params(&self) -> Vec<f64> {
        self.model.params()
    }
}

pub fn fit_mle(family: Family, data: &Dataset, config: &OptimizerConfig) -> Result<FitResult> {
    config.validate()?;
    let k = family.num_params();
    let m = data.len();
    if m < k + 2 {
        return Err(Error::DegenerateData { needed: k + 2, got: m });
    }

    let nll = |p: &[f64]| negative_log_likelihood(family, p, data);
    let mut evaluations = 0;
    let mut start = None;
    let mut start_value = f64::INFINITY;
    for s in config.start_grid(family, data) {
        evaluations += 1;
        let v = nll(&s);
        if v < start_value {
            start_value = v;
            start = Some(s);
        }
    }
    let start = start.ok_or_else(|| Error::domain("fit_mle", "no feasible starting point"))?;

    let objective = |t: &[f64]| nll(&from_free(family, t));
    let mut free = to_free(family, &start);
    let mut best = f64::INFINITY;
    let mut converged = false;
    let mut step = config.simplex_step;
    // restarts guard against a simplex that collapsed before reaching the optimum
    for _ in 0..4 {
        let budget = config.max_evaluations.saturating_sub(evaluations).max(1);
        let run = nelder_mead(objective, &free, step, config.tolerance, budget);
        evaluations += run.evaluations;
        converged = run.converged;
        let improved = best - run.value;
        if run.value < best {
            best = run.value;
            free = run.x;
        }
        if improved <= config.tolerance || evaluations >= config.max_evaluations {
            break;
        }
        step = 0.1;
    }

    let params = from_free(family, &free);
    let model = family.model(&params)?;
    let loglik = -best;
    let criteria = information_criteria(loglik, k, m)?;

    let at_boundary = match family {
        Family::GomburV1 => params[0] < 1e-8,
        Family::GomburV2 => params[0] - 1.0 < 1e-8,
        _ => false,
    };
    let covariance = if at_boundary {
        None
    } else {
        observed_information(family, &params, data, config.hessian_step)
            .and_then(|h| invert_spd(&h))
            .ok()
    };
    let se: Option<Vec<f64>> = covariance
        .as_ref()
        .map(|c| (0..k).map(|i| c[i][i].sqrt()).collect());
    let scaled_se = covariance
        .as_ref()
        .map(|c| (0..k).map(|i| (c[i][i] / m as f64).sqrt()).collect());
    let wald_z = se.as_ref().map(|s| params.iter().zip(s).map(|(p, s)| p / s).collect());

    Ok(FitResult {
        model,
        loglik,
        k,
        m,
        criteria,
        covariance,
        se,
        scaled_se,
        wald_z,
        converged,
        at_boundary,
        evaluations,
        start_used: start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn criteria_formulas() {
        let ic = information_criteria(0.0, 1, 10).unwrap();
        assert_abs_diff_eq!(ic.aic, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ic.caic, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ic.bic, 10f64.ln(), epsilon = 1e-15);
        let ic = information_criteria(14.2281, 2, 20).unwrap();
        assert_abs_diff_eq!(ic.aic, -24.4562, epsilon = 5e-4);
        assert_abs_diff_eq!(ic.caic, -23.7503, epsilon = 5e-4);
        assert_abs_diff_eq!(ic.bic, -22.4647, epsilon = 5e-4);
        let ic = information_criteria(7.3814, 1, 20).unwrap();
        assert_abs_diff_eq!(ic.aic, -12.7628, epsilon = 1e-3);
        assert!(information_criteria(1.0, 2, 3).is_err());
    }

    #[test]
    fn nll_sentinels() {
        let d = Dataset::flood();
        assert_abs_diff_eq!(negative_log_likelihood(Family::GomburV1, &[0.0, 1.0], &d), 0.0, epsilon = 1e-12);
        assert_eq!(negative_log_likelihood(Family::GomburV1, &[-1.0, 1.0], &d), f64::INFINITY);
        assert_eq!(negative_log_likelihood(Family::Beta, &[1.0], &d), f64::INFINITY);
        assert_eq!(negative_log_likelihood(Family::GomburV2, &[0.5, 1.0], &d), f64::INFINITY);
    }

    #[test]
    fn hessian_of_quadratic() {
        let a = [[4.0, 1.0], [1.0, 3.0]];
        let f = |x: &[f64]| {
            0.5 * (a[0][0] * x[0] * x[0] + 2.0 * a[0][1] * x[0] * x[1] + a[1][1] * x[1] * x[1])
        };
        let h = numerical_hessian(f, &[0.7, -1.3], 1e-4);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(h[i][j], a[i][j], epsilon = 1e-6 * 5.0);
            }
        }
        let inv = invert_spd(&h).unwrap();
        assert_abs_diff_eq!(inv[0][0], 3.0 / 11.0, epsilon = 1e-6);
        assert!(invert_spd(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
    }

    #[test]
    fn reparameterization_roundtrip() {
        for (f, p) in [
            (Family::GomburV1, vec![8.1, 1.1]),
            (Family::GomburV2, vec![17.2, 1.1]),
            (Family::ToppLeone, vec![2.2]),
        ] {
            let back = from_free(f, &to_free(f, &p));
            for (a, b) in p.iter().zip(&back) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fit_rejects_tiny_samples() {
        let d = Dataset::new(vec![0.2, 0.3, 0.4]).unwrap();
        assert!(matches!(
            fit_mle(Family::GomburV1, &d, &OptimizerConfig::default()),
            Err(Error::DegenerateData { needed: 4, got: 3 })
        ));
        assert!(fit_mle(Family::ToppLeone, &d, &OptimizerConfig::default()).is_ok());
    }

    #[test]
    fn start_grid_sizes() {
        let d = Dataset::flood();
        let cfg = OptimizerConfig::default();
        assert_eq!(cfg.start_grid(Family::GomburV1, &d).len(), 40);
        assert_eq!(cfg.start_grid(Family::GomburV2, &d).len(), 40);
        assert_eq!(cfg.start_grid(Family::Beta, &d).len(), 10);
        let g = cfg.start_grid(Family::GomburV1, &d);
        assert!(g.windows(2).all(|w| w[0] <= w[1]));
    }
}
