//! Derivative-free Nelder–Mead simplex minimization.

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// Function spread over the final simplex fell below the tolerance.
    pub converged: bool,
}

/// Minimizes `f` from `start` with an axis-aligned initial simplex of size `step`.
///
/// Non-finite objective values are treated as `+∞`, so infeasible regions can
/// be encoded by returning `f64::INFINITY`. Stops when
/// `max f - min f <= tol` over the simplex or after `max_evals` evaluations.
pub fn nelder_mead<F>(mut f: F, start: &[f64], step: f64, tol: f64, max_evals: usize) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = start.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(start, &mut evals);
    simplex.push((start.to_vec(), v0));
    for i in 0..dim {
        let mut x = start.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    let mut converged = false;
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if best.is_finite() && worst - best <= tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let along = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, w)| c + t * (w - c)).collect()
        };

        let worst_x = simplex[dim].0.clone();
        let reflected = along(-1.0, &worst_x);
        let fr = eval(&reflected, &mut evals);
        let second_worst = simplex[dim - 1].1;

        if fr < best {
            let expanded = along(-2.0, &worst_x);
            let fe = eval(&expanded, &mut evals);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < second_worst {
            simplex[dim] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst {
            let xc = along(-0.5, &worst_x);
            let fc = eval(&xc, &mut evals);
            (xc, if fc <= fr { fc } else { f64::INFINITY })
        } else {
            let xc = along(0.5, &worst_x);
            let fc = eval(&xc, &mut evals);
            (xc, if fc < worst { fc } else { f64::INFINITY })
        };
        if fc.is_finite() {
            simplex[dim] = (contracted, fc);
            continue;
        }
        // shrink toward the best vertex
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best_x.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            let v = eval(&x, &mut evals);
            *vertex = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    NelderMeadResult { x, value, evaluations: evals, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(rosen, &[-1.2, 1.0], 0.5, 1e-14, 20_000);
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-4 && (r.x[1] - 1.0).abs() < 1e-4, "{:?}", r.x);
    }

    #[test]
    fn respects_infeasible_sentinel() {
        let f = |x: &[f64]| if x[0] < 0.5 { f64::INFINITY } else { (x[0] - 0.25).powi(2) };
        let r = nelder_mead(f, &[2.0], 0.5, 1e-12, 5_000);
        assert!(r.x[0] >= 0.5);
        assert!((r.x[0] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn one_dimensional_quadratic() {
        let r = nelder_mead(|x: &[f64]| (x[0] - 3.0).powi(2), &[0.0], 1.0, 1e-16, 1_000);
        assert!((r.x[0] - 3.0).abs() < 1e-7);
        assert!(r.evaluations <= 1_000);
    }

    #[test]
    fn stops_at_evaluation_cap() {
        let r = nelder_mead(|x: &[f64]| x[0].sin() + x[1].cos() * 1e-3, &[0.0, 0.0], 1.0, 0.0, 50);
        assert!(!r.converged);
        assert!(r.evaluations >= 50);
    }
}
