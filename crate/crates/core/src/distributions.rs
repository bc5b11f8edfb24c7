//! Unit-interval distribution families behind one evaluation contract.
//!
//! The two GO-MBUR versions share a kernel: with `w = y^(1/α²)`, `w` follows a
//! symmetric `Beta(a, a)` law where `a = n + 1` (version 1) or `a = (n + 1)/2`
//! (version 2). Densities are assembled in log space.

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::quadrature_unit;
use crate::specfun::{betareg, betareg_complement, betareg_inv, log_beta, log_gamma};

/// Default median order of the original (non-generalized) MBUR: a sample of five.
pub const MBUR_DEFAULT_ORDER: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GomburV1,
    GomburV2,
    Mbur,
    Beta,
    Kumaraswamy,
    ToppLeone,
    UnitLindley,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::GomburV1,
        Family::GomburV2,
        Family::Mbur,
        Family::Beta,
        Family::Kumaraswamy,
        Family::ToppLeone,
        Family::UnitLindley,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GomburV1 => "gombur_v1",
            Family::GomburV2 => "gombur_v2",
            Family::Mbur => "mbur",
            Family::Beta => "beta",
            Family::Kumaraswamy => "kumaraswamy",
            Family::ToppLeone => "topp_leone",
            Family::UnitLindley => "unit_lindley",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::GomburV1 | Family::GomburV2 => &["n", "alpha"],
            Family::Mbur => &["alpha"],
            Family::Beta | Family::Kumaraswamy => &["alpha", "beta"],
            Family::ToppLeone | Family::UnitLindley => &["theta"],
        }
    }

    /// Number of free parameters `k`.
    pub fn num_params(self) -> usize {
        self.param_names().len()
    }

    /// Builds a model from a parameter vector ordered as [`Family::param_names`].
    pub fn model(self, params: &[f64]) -> Result<DistributionModel> {
        if params.len() != self.num_params() {
            return Err(Error::param(
                self.name(),
                format!("expected {} parameters, got {}", self.num_params(), params.len()),
            ));
        }
        Ok(match self {
            Family::GomburV1 => DistributionModel::GomburV1(GomburV1Params::new(params[0], params[1])?),
            Family::GomburV2 => DistributionModel::GomburV2(GomburV2Params::new(params[0], params[1])?),
            Family::Mbur => DistributionModel::Mbur(MburParams::new(params[0])?),
            Family::Beta => DistributionModel::Beta(BetaParams::new(params[0], params[1])?),
            Family::Kumaraswamy => {
                DistributionModel::Kumaraswamy(KumaraswamyParams::new(params[0], params[1])?)
            }
            Family::ToppLeone => DistributionModel::ToppLeone(ToppLeoneParams::new(params[0])?),
            Family::UnitLindley => DistributionModel::UnitLindley(UnitLindleyParams::new(params[0])?),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn positive(family: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(family, format!("{name} = {v} must be positive and finite")))
    }
}

/// GO-MBUR version 1: `n ≥ 0`, `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GomburV1Params {
    n: f64,
    alpha: f64,
}

impl GomburV1Params {
    pub fn new(n: f64, alpha: f64) -> Result<Self> {
        if !(n >= 0.0 && n.is_finite()) {
            return Err(Error::param("gombur_v1", format!("n = {n} must be >= 0")));
        }
        positive("gombur_v1", "alpha", alpha)?;
        Ok(GomburV1Params { n, alpha })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Symmetric beta shape `n + 1`.
    pub fn shape(&self) -> f64 {
        self.n + 1.0
    }

    fn kernel(&self) -> Kernel {
        let n = self.n;
        // Γ(2n+2) / (Γ(n+1) Γ(n+1))
        let log_norm = ln_gamma(2.0 * n + 2.0) - 2.0 * ln_gamma(n + 1.0);
        Kernel::new(self.shape(), self.alpha, log_norm)
    }
}

/// GO-MBUR version 2: `n ≥ 1`, `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GomburV2Params {
    n: f64,
    alpha: f64,
}

impl GomburV2Params {
    pub fn new(n: f64, alpha: f64) -> Result<Self> {
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::param("gombur_v2", format!("n = {n} must be >= 1")));
        }
        positive("gombur_v2", "alpha", alpha)?;
        Ok(GomburV2Params { n, alpha })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Symmetric beta shape `(n + 1) / 2`.
    pub fn shape(&self) -> f64 {
        0.5 * (self.n + 1.0)
    }

    fn kernel(&self) -> Kernel {
        let n = self.n;
        // Γ(n+1) / (Γ(n/2 + 1/2) Γ(n/2 + 1/2))
        let log_norm = ln_gamma(n + 1.0) - 2.0 * ln_gamma(0.5 * n + 0.5);
        Kernel::new(self.shape(), self.alpha, log_norm)
    }
}

/// Original MBUR: version 1 with the median order frozen (default `n = 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MburParams {
    alpha: f64,
    order: f64,
}

impl MburParams {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_order(alpha, MBUR_DEFAULT_ORDER)
    }

    pub fn with_order(alpha: f64, order: f64) -> Result<Self> {
        positive("mbur", "alpha", alpha)?;
        if !(order >= 0.0 && order.is_finite()) {
            return Err(Error::param("mbur", format!("order = {order} must be >= 0")));
        }
        Ok(MburParams { alpha, order })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    fn as_v1(&self) -> GomburV1Params {
        GomburV1Params { n: self.order, alpha: self.alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        positive("beta", "alpha", alpha)?;
        positive("beta", "beta", beta)?;
        Ok(BetaParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Kumaraswamy with cdf `1 - (1 - y^α)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KumaraswamyParams {
    alpha: f64,
    beta: f64,
}

impl KumaraswamyParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        positive("kumaraswamy", "alpha", alpha)?;
        positive("kumaraswamy", "beta", beta)?;
        Ok(KumaraswamyParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Topp-Leone with cdf `(y (2 - y))^θ`. Only `θ > 0` is enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToppLeoneParams {
    theta: f64,
}

impl ToppLeoneParams {
    pub fn new(theta: f64) -> Result<Self> {
        positive("topp_leone", "theta", theta)?;
        Ok(ToppLeoneParams { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Unit-Lindley with density `θ²/(1+θ) (1-y)^-3 exp(-θy/(1-y))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitLindleyParams {
    theta: f64,
}

impl UnitLindleyParams {
    pub fn new(theta: f64) -> Result<Self> {
        positive("unit_lindley", "theta", theta)?;
        Ok(UnitLindleyParams { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// A distribution family together with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionModel {
    GomburV1(GomburV1Params),
    GomburV2(GomburV2Params),
    Mbur(MburParams),
    Beta(BetaParams),
    Kumaraswamy(KumaraswamyParams),
    ToppLeone(ToppLeoneParams),
    UnitLindley(UnitLindleyParams),
}

impl fmt::Display for DistributionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family())?;
        let names = self.family().param_names();
        for (i, (name, value)) in names.iter().zip(self.params()).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        f.write_str(")")
    }
}

fn ln_gamma(x: f64) -> f64 {
    // arguments here are validated shapes, always > 0
    log_gamma(x).unwrap_or(f64::NAN)
}

fn check_open(op: &'static str, y: f64) -> Result<()> {
    if y > 0.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("y = {y} outside (0, 1)")))
    }
}

fn check_closed(op: &'static str, y: f64) -> Result<()> {
    if (0.0..=1.0).contains(&y) {
        Ok(())
    } else {
        Err(Error::domain(op, format!("y = {y} outside [0, 1]")))
    }
}

/// `ln(1 - e^x)` for `x <= 0`.
fn ln_one_minus_exp(x: f64) -> f64 {
    (-x.exp_m1()).ln()
}

/// Shared GO-MBUR evaluation: `w = y^(1/α²) ~ Beta(a, a)`.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    a: f64,
    alpha2: f64,
    log_norm: f64,
}

impl Kernel {
    fn new(a: f64, alpha: f64, log_norm: f64) -> Self {
        Kernel { a, alpha2: alpha * alpha, log_norm }
    }

    fn log_pdf(&self, y: f64) -> f64 {
        let ln_y = y.ln();
        let ln_w = ln_y / self.alpha2;
        let body = if self.a == 1.0 { 0.0 } else { (self.a - 1.0) * ln_one_minus_exp(ln_w) };
        self.log_norm - self.alpha2.ln() + body + (self.a / self.alpha2 - 1.0) * ln_y
    }

    fn cdf(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        let w = (y.ln() / self.alpha2).exp();
        betareg(w.min(1.0), self.a, self.a)
    }

    /// `I_{1-w}(a, a)` with `1 - w` formed as `-expm1(ln w)`.
    fn survival(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Ok(1.0);
        }
        let one_minus_w = -(y.ln() / self.alpha2).exp_m1();
        betareg(one_minus_w.clamp(0.0, 1.0), self.a, self.a)
    }

    /// `1 - I_w(a, a)` by subtraction. Only for cancellation diagnostics.
    fn survival_naive(&self, y: f64) -> Result<f64> {
        Ok(1.0 - self.cdf(y)?)
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        Ok(betareg_inv(p, self.a, self.a)?.powf(self.alpha2))
    }

    fn raw_moment(&self, r: f64) -> f64 {
        let a = self.a;
        let s = r * self.alpha2;
        (ln_gamma(2.0 * a) + ln_gamma(a + s) - ln_gamma(a) - ln_gamma(2.0 * a + s)).exp()
    }
}

impl DistributionModel {
    pub fn gombur_v1(n: f64, alpha: f64) -> Result<Self> {
        Ok(DistributionModel::GomburV1(GomburV1Params::new(n, alpha)?))
    }

    pub fn gombur_v2(n: f64, alpha: f64) -> Result<Self> {
        Ok(DistributionModel::GomburV2(GomburV2Params::new(n, alpha)?))
    }

    pub fn mbur(alpha: f64) -> Result<Self> {
        Ok(DistributionModel::Mbur(MburParams::new(alpha)?))
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        Ok(DistributionModel::Beta(BetaParams::new(alpha, beta)?))
    }

    pub fn kumaraswamy(alpha: f64, beta: f64) -> Result<Self> {
        Ok(DistributionModel::Kumaraswamy(KumaraswamyParams::new(alpha, beta)?))
    }

    pub fn topp_leone(theta: f64) -> Result<Self> {
        Ok(DistributionModel::ToppLeone(ToppLeoneParams::new(theta)?))
    }

    pub fn unit_lindley(theta: f64) -> Result<Self> {
        Ok(DistributionModel::UnitLindley(UnitLindleyParams::new(theta)?))
    }

    pub fn family(&self) -> Family {
        match self {
            DistributionModel::GomburV1(_) => Family::GomburV1,
            DistributionModel::GomburV2(_) => Family::GomburV2,
            DistributionModel::Mbur(_) => Family::Mbur,
            DistributionModel::Beta(_) => Family::Beta,
            DistributionModel::Kumaraswamy(_) => Family::Kumaraswamy,
            DistributionModel::ToppLeone(_) => Family::ToppLeone,
            DistributionModel::UnitLindley(_) => Family::UnitLindley,
        }
    }

    /// Free parameters in [`Family::param_names`] order.
    pub fn params(&self) -> Vec<f64> {
        match self {
            DistributionModel::GomburV1(p) => vec![p.n, p.alpha],
            DistributionModel::GomburV2(p) => vec![p.n, p.alpha],
            DistributionModel::Mbur(p) => vec![p.alpha],
            DistributionModel::Beta(p) => vec![p.alpha, p.beta],
            DistributionModel::Kumaraswamy(p) => vec![p.alpha, p.beta],
            DistributionModel::ToppLeone(p) => vec![p.theta],
            DistributionModel::UnitLindley(p) => vec![p.theta],
        }
    }

    fn kernel(&self) -> Option<Kernel> {
        match self {
            DistributionModel::GomburV1(p) => Some(p.kernel()),
            DistributionModel::GomburV2(p) => Some(p.kernel()),
            DistributionModel::Mbur(p) => Some(p.as_v1().kernel()),
            _ => None,
        }
    }

    pub fn pdf(&self, y: f64) -> Result<f64> {
        Ok(self.log_pdf(y)?.exp())
    }

    pub fn log_pdf(&self, y: f64) -> Result<f64> {
        check_open("pdf", y)?;
        if let Some(k) = self.kernel() {
            return Ok(k.log_pdf(y));
        }
        let ln_y = y.ln();
        let ln_1my = (-y).ln_1p();
        Ok(match self {
            DistributionModel::Beta(p) => {
                (p.alpha - 1.0) * ln_y + (p.beta - 1.0) * ln_1my - log_beta(p.alpha, p.beta)?
            }
            DistributionModel::Kumaraswamy(p) => {
                (p.alpha * p.beta).ln()
                    + (p.alpha - 1.0) * ln_y
                    + (p.beta - 1.0) * ln_one_minus_exp(p.alpha * ln_y)
            }
            DistributionModel::ToppLeone(p) => {
                let ln_v = topp_leone_ln_v(y);
                (2.0 * p.theta).ln() + ln_1my + (p.theta - 1.0) * ln_v
            }
            DistributionModel::UnitLindley(p) => {
                let t = p.theta;
                2.0 * t.ln() - t.ln_1p() - 3.0 * ln_1my - t * y / (1.0 - y)
            }
            _ => unreachable!("GO-MBUR families handled by the kernel"),
        })
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        check_closed("cdf", y)?;
        if let Some(k) = self.kernel() {
            return k.cdf(y);
        }
        match self {
            DistributionModel::Beta(p) => betareg(y, p.alpha, p.beta),
            DistributionModel::Kumaraswamy(p) => {
                Ok(-(p.beta * ln_one_minus_exp(p.alpha * y.ln())).exp_m1())
            }
            DistributionModel::ToppLeone(p) => Ok((p.theta * topp_leone_ln_v(y)).exp()),
            DistributionModel::UnitLindley(p) => Ok(unit_lindley_cdf(p.theta, y)),
            _ => unreachable!(),
        }
    }

    /// `1 - cdf`, evaluated directly from the upper tail.
    pub fn survival(&self, y: f64) -> Result<f64> {
        check_closed("survival", y)?;
        if let Some(k) = self.kernel() {
            return k.survival(y);
        }
        match self {
            DistributionModel::Beta(p) => betareg_complement(y, p.alpha, p.beta),
            DistributionModel::Kumaraswamy(p) => {
                Ok((p.beta * ln_one_minus_exp(p.alpha * y.ln())).exp())
            }
            DistributionModel::ToppLeone(p) => Ok(-(p.theta * topp_leone_ln_v(y)).exp_m1()),
            DistributionModel::UnitLindley(p) => Ok(unit_lindley_survival(p.theta, y)),
            _ => unreachable!(),
        }
    }

    /// `1 - cdf(y)` computed by subtraction. Loses all relative accuracy once
    /// the cdf rounds to one; exposed for the hazard cancellation diagnostic.
    pub fn survival_naive(&self, y: f64) -> Result<f64> {
        check_closed("survival", y)?;
        match self.kernel() {
            Some(k) => k.survival_naive(y),
            None => Ok(1.0 - self.cdf(y)?),
        }
    }

    pub fn hazard(&self, y: f64) -> Result<f64> {
        check_open("hazard", y)?;
        let s = self.survival(y)?;
        if s <= 0.0 {
            return Err(Error::HazardOverflow { y });
        }
        Ok((self.log_pdf(y)? - s.ln()).exp())
    }

    pub fn reversed_hazard(&self, y: f64) -> Result<f64> {
        check_open("reversed_hazard", y)?;
        let c = self.cdf(y)?;
        if c <= 0.0 {
            return Err(Error::HazardOverflow { y });
        }
        Ok((self.log_pdf(y)? - c.ln()).exp())
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("quantile", format!("p = {p} outside [0, 1]")));
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        if p == 1.0 {
            return Ok(1.0);
        }
        if let Some(k) = self.kernel() {
            return k.quantile(p);
        }
        match self {
            DistributionModel::Beta(b) => betareg_inv(p, b.alpha, b.beta),
            DistributionModel::Kumaraswamy(k) => {
                // (1 - (1-p)^(1/β))^(1/α)
                let inner = -((-p).ln_1p() / k.beta).exp_m1();
                Ok((inner.ln() / k.alpha).exp())
            }
            DistributionModel::ToppLeone(t) => {
                // y(2-y) = p^(1/θ)  =>  y = 1 - sqrt(1 - p^(1/θ))
                let one_minus_v = -(p.ln() / t.theta).exp_m1();
                Ok(1.0 - one_minus_v.sqrt())
            }
            DistributionModel::UnitLindley(_) => self.invert_cdf(p),
            _ => unreachable!(),
        }
    }

    /// Bracketed Newton inversion of the cdf for families without a closed form.
    fn invert_cdf(&self, p: f64) -> Result<f64> {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut y = 0.5;
        for _ in 0..300 {
            let f = self.cdf(y)? - p;
            if f == 0.0 || f.abs() <= 1e-14 * p.min(1.0 - p) {
                return Ok(y);
            }
            if f < 0.0 {
                lo = y;
            } else {
                hi = y;
            }
            let d = self.pdf(y)?;
            let newton = y - f / d;
            let next = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - y).abs() <= 4.0 * f64::EPSILON * next.max(f64::MIN_POSITIVE) {
                return Ok(next);
            }
            y = next;
        }
        Err(Error::IterationLimit { op: "quantile", max_iter: 300 })
    }

    /// `E[Y^r]` for integer `r >= 1`.
    pub fn raw_moment(&self, r: u32) -> Result<f64> {
        if r < 1 {
            return Err(Error::domain("raw_moment", "r must be >= 1"));
        }
        let rf = f64::from(r);
        if let Some(k) = self.kernel() {
            return Ok(k.raw_moment(rf));
        }
        match self {
            DistributionModel::Beta(p) => {
                Ok((log_beta(p.alpha + rf, p.beta)? - log_beta(p.alpha, p.beta)?).exp())
            }
            DistributionModel::Kumaraswamy(p) => {
                Ok(p.beta * log_beta(1.0 + rf / p.alpha, p.beta)?.exp())
            }
            // E[Y^r] = ∫ r y^(r-1) S(y) dy, bounded integrand
            _ => quadrature_unit(
                |y| rf * y.powi(r as i32 - 1) * self.survival(y).unwrap_or(f64::NAN),
                1e-12,
            ),
        }
    }

    /// `count` seeded draws by inverse transform of a ChaCha8 uniform stream.
    ///
    /// The generator is `ChaCha8Rng::seed_from_u64(seed)` and each draw uses one
    /// `Open01` variate. Draws are clamped into the open unit interval.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::domain("sample", "count must be >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let upper = 1.0 - f64::EPSILON / 2.0;
        (0..count)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                Ok(self.quantile(u)?.clamp(f64::MIN_POSITIVE, upper))
            })
            .collect()
    }
}

fn topp_leone_ln_v(y: f64) -> f64 {
    if y < 0.5 {
        y.ln() + (2.0 - y).ln()
    } else {
        // ln(y (2 - y)) = ln(1 - (1-y)^2), accurate as y -> 1
        (-(1.0 - y) * (1.0 - y)).ln_1p()
    }
}

fn unit_lindley_survival(theta: f64, y: f64) -> f64 {
    if y >= 1.0 {
        return 0.0;
    }
    let t = theta * y / (1.0 - y);
    (1.0 + t / (1.0 + theta)) * (-t).exp()
}

fn unit_lindley_cdf(theta: f64, y: f64) -> f64 {
    if y >= 1.0 {
        return 1.0;
    }
    let t = theta * y / (1.0 - y);
    let e = (-t).exp();
    (-(-t).exp_m1() - t / (1.0 + theta) * e).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v1(n: f64, a: f64) -> DistributionModel {
        DistributionModel::gombur_v1(n, a).unwrap()
    }

    fn v2(n: f64, a: f64) -> DistributionModel {
        DistributionModel::gombur_v2(n, a).unwrap()
    }

    #[test]
    fn parameter_domains() {
        assert!(DistributionModel::gombur_v1(0.0, 1.0).is_ok());
        assert!(DistributionModel::gombur_v1(-0.1, 1.0).is_err());
        assert!(DistributionModel::gombur_v1(1.0, 0.0).is_err());
        assert!(DistributionModel::gombur_v2(0.99, 1.0).is_err());
        assert!(DistributionModel::gombur_v2(1.0, 1.0).is_ok());
        assert!(DistributionModel::topp_leone(3.5).is_ok());
        assert!(DistributionModel::topp_leone(0.0).is_err());
        assert!(DistributionModel::unit_lindley(f64::INFINITY).is_err());
        assert!(Family::Beta.model(&[1.0]).is_err());
    }

    #[test]
    fn family_names_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("Topp-Leone".parse::<Family>().unwrap(), Family::ToppLeone);
        assert!("weibull".parse::<Family>().is_err());
    }

    #[test]
    fn v1_reduces_to_uniform_and_beta() {
        assert_abs_diff_eq!(v1(0.0, 1.0).pdf(0.37).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v1(0.0, 1.0).log_pdf(0.5).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v1(1.0, 1.0).pdf(0.5).unwrap(), 1.5, epsilon = 1e-13);
        assert_abs_diff_eq!(v1(0.0, 1.0).cdf(0.25).unwrap(), 0.25, epsilon = 1e-14);
        for n in [0.0, 1.0, 3.7, 40.0] {
            assert_abs_diff_eq!(v1(n, 1.0).cdf(0.5).unwrap(), 0.5, epsilon = 1e-13);
            assert_abs_diff_eq!(v1(n, 1.0).survival(0.5).unwrap(), 0.5, epsilon = 1e-13);
            assert_abs_diff_eq!(v1(n, 1.0).quantile(0.5).unwrap(), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(v1(n, 2f64.sqrt()).quantile(0.5).unwrap(), 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn endpoint_policy() {
        let m = v1(2.0, 1.3);
        assert!(m.pdf(0.0).is_err());
        assert!(m.pdf(1.0).is_err());
        assert!(m.hazard(1.0).is_err());
        assert!(m.cdf(1.2).is_err());
        assert_eq!(m.cdf(0.0).unwrap(), 0.0);
        assert_eq!(m.cdf(1.0).unwrap(), 1.0);
        assert_eq!(m.survival(0.0).unwrap(), 1.0);
        assert_eq!(m.survival(1.0).unwrap(), 0.0);
        assert!(m.quantile(-0.01).is_err());
        for model in [
            DistributionModel::beta(2.0, 3.0).unwrap(),
            DistributionModel::kumaraswamy(2.0, 3.0).unwrap(),
            DistributionModel::topp_leone(0.7).unwrap(),
            DistributionModel::unit_lindley(1.6).unwrap(),
        ] {
            assert_eq!(model.cdf(0.0).unwrap(), 0.0, "{model}");
            assert_eq!(model.cdf(1.0).unwrap(), 1.0, "{model}");
            assert_eq!(model.survival(0.0).unwrap(), 1.0, "{model}");
            assert_eq!(model.survival(1.0).unwrap(), 0.0, "{model}");
        }
    }

    #[test]
    fn uniform_hazards() {
        let u = v1(0.0, 1.0);
        assert_abs_diff_eq!(u.hazard(0.5).unwrap(), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(u.hazard(0.75).unwrap(), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(u.reversed_hazard(0.5).unwrap(), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(u.reversed_hazard(0.25).unwrap(), 4.0, epsilon = 1e-12);
        // v2 with n = 3, alpha = 1 is Beta(2,2)
        assert_abs_diff_eq!(v2(3.0, 1.0).reversed_hazard(0.5).unwrap(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn deep_survival_stays_relative() {
        let s = v1(50.0, 1.0).survival(0.95).unwrap();
        let direct = betareg(0.05, 51.0, 51.0).unwrap();
        assert!(s > 0.0 && s < 1e-30);
        assert!((s / direct - 1.0).abs() < 1e-12);
        assert_eq!(v1(50.0, 1.0).survival_naive(0.999).unwrap(), 0.0);
        assert!(v1(50.0, 1.0).hazard(0.999).unwrap().is_finite());
    }

    #[test]
    fn hazard_overflow_is_signalled() {
        // survival underflows below the smallest subnormal
        let m = v1(500.0, 1.0);
        assert!(matches!(m.hazard(0.9999), Err(Error::HazardOverflow { .. })));
    }

    #[test]
    fn moments_closed_forms() {
        assert_abs_diff_eq!(v1(0.0, 1.0).raw_moment(1).unwrap(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(v1(1.0, 1.0).raw_moment(2).unwrap(), 0.3, epsilon = 1e-13);
        assert!(v1(1.0, 1.0).raw_moment(0).is_err());
        let b = DistributionModel::beta(2.0, 5.0).unwrap();
        assert_abs_diff_eq!(b.raw_moment(1).unwrap(), 2.0 / 7.0, epsilon = 1e-13);
        // unit-Lindley mean is 1/(1+θ)
        let ul = DistributionModel::unit_lindley(1.6268).unwrap();
        assert_abs_diff_eq!(ul.raw_moment(1).unwrap(), 1.0 / 2.6268, epsilon = 1e-10);
        // Topp-Leone mean is 1 - B(1/2, θ+1)/2
        let theta = 2.2413;
        let tl = DistributionModel::topp_leone(theta).unwrap();
        let mean = 1.0 - 0.5 * log_beta(0.5, theta + 1.0).unwrap().exp();
        assert_abs_diff_eq!(tl.raw_moment(1).unwrap(), mean, epsilon = 1e-10);
        // Kumaraswamy(1, β) is Beta(1, β)
        let k = DistributionModel::kumaraswamy(1.0, 4.0).unwrap();
        assert_abs_diff_eq!(k.raw_moment(2).unwrap(), 2.0 / 30.0, epsilon = 1e-13);
    }

    #[test]
    fn competitor_quantiles_roundtrip() {
        for model in [
            DistributionModel::beta(6.8318, 9.2376).unwrap(),
            DistributionModel::kumaraswamy(3.3777, 12.0057).unwrap(),
            DistributionModel::topp_leone(2.2413).unwrap(),
            DistributionModel::unit_lindley(1.6268).unwrap(),
            DistributionModel::mbur(0.8).unwrap(),
        ] {
            for i in 1..20 {
                let p = i as f64 / 20.0;
                let y = model.quantile(p).unwrap();
                assert_abs_diff_eq!(model.cdf(y).unwrap(), p, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn mbur_is_v1_with_order_two() {
        let m = DistributionModel::mbur(0.9).unwrap();
        let reference = v1(2.0, 0.9);
        for y in [0.1, 0.4, 0.8] {
            assert_eq!(m.pdf(y).unwrap(), reference.pdf(y).unwrap());
        }
        let custom = DistributionModel::Mbur(MburParams::with_order(0.9, 3.0).unwrap());
        assert_eq!(custom.cdf(0.3).unwrap(), v1(3.0, 0.9).cdf(0.3).unwrap());
    }

    #[test]
    fn sampling_is_seeded_and_in_range() {
        let m = v1(8.1044, 1.1168);
        let a = m.sample(5, 7).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|&y| y > 0.0 && y < 1.0));
        assert_eq!(a, m.sample(5, 7).unwrap());
        assert_ne!(a, m.sample(5, 8).unwrap());
        assert!(m.sample(0, 1).is_err());
    }

    #[test]
    fn display_lists_params() {
        assert_eq!(v1(2.0, 1.5).to_string(), "gombur_v1(n=2, alpha=1.5)");
    }
}
