//! Independent verification machinery: the order-statistics construction of
//! GO-MBUR by simulation, adaptive Gauss–Kronrod quadrature, and centered
//! finite differences.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Settings for simulating transformed medians of odd Rayleigh samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianSimConfig {
    /// Median index; each replication draws `2n + 1` Rayleigh variates.
    pub n: u32,
    /// Rayleigh scale.
    pub alpha: f64,
    pub replications: usize,
    pub seed: u64,
}

impl MedianSimConfig {
    pub fn new(n: u32, alpha: f64, replications: usize, seed: u64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain("MedianSimConfig", format!("alpha = {alpha} must be > 0")));
        }
        if replications == 0 {
            return Err(Error::domain("MedianSimConfig", "replications must be >= 1"));
        }
        Ok(MedianSimConfig { n, alpha, replications, seed })
    }

    /// Configuration for an odd sample size `m = 2n + 1`, the version 2 view.
    pub fn from_sample_size(m: u32, alpha: f64, replications: usize, seed: u64) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(Error::domain("MedianSimConfig", format!("sample size {m} must be odd")));
        }
        Self::new((m - 1) / 2, alpha, replications, seed)
    }

    pub fn sample_size(&self) -> usize {
        2 * self.n as usize + 1
    }
}

/// Simulates `y = exp(-x_med²)` where `x_med` is the median of `2n + 1`
/// Rayleigh(α) draws `x = α sqrt(-ln U)`.
pub fn rayleigh_median_sample(config: &MedianSimConfig) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let size = config.sample_size();
    let mid = config.n as usize;
    let mut buf = vec![0.0; size];
    (0..config.replications)
        .map(|_| {
            for x in buf.iter_mut() {
                let u: f64 = rng.sample(Open01);
                *x = config.alpha * (-u.ln()).sqrt();
            }
            let (_, median, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
            (-*median * *median).exp()
        })
        .collect()
}

// Gauss–Kronrod 7/15 nodes on [-1, 1] (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    estimate: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment { a, b, estimate: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Nodes never touch the endpoints, so integrable endpoint singularities are
/// tolerated. `tol` bounds the summed absolute error estimate.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !(b > a) {
        return Err(Error::domain("quadrature", "need tol > 0 and b > a"));
    }
    let mut segments = vec![gk15(&f, a, b)];
    loop {
        let total: f64 = segments.iter().map(|s| s.estimate).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !total.is_finite() || !error.is_finite() {
            return Err(Error::ToleranceNotMet { estimate: total, error_bound: error });
        }
        if error <= tol {
            return Ok(total);
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::ToleranceNotMet { estimate: total, error_bound: error });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Err(Error::ToleranceNotMet { estimate: total, error_bound: error });
        }
        segments.push(gk15(&f, s.a, mid));
        segments.push(gk15(&f, mid, s.b));
    }
}

/// [`quadrature`] over the unit interval.
pub fn quadrature_unit<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    quadrature(f, 0.0, 1.0, tol)
}

/// Centered difference with `h = h_rel · max(|x|, 1)`. The step actually used
/// is the representable difference of the two abscissae.
pub fn finite_diff<F: Fn(f64) -> f64>(f: F, x: f64, h_rel: f64) -> f64 {
    let h = h_rel * x.abs().max(1.0);
    let (hi, lo) = (x + h, x - h);
    (f(hi) - f(lo)) / (hi - lo)
}
