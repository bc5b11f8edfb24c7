use gombur::distributions::DistributionModel;
use gombur::gof::{ad_from_pit, cvm_from_pit, gof_from_pit, gof_report, ks_from_pit, ks_pvalue};
use gombur::oracle::{finite_diff, quadrature_unit};
use gombur::specfun::{betareg, betareg_complement, kolmogorov_sf};
use gombur::{Dataset, Family};
use proptest::prelude::*;

const V1_N: [f64; 8] = [0.0, 0.5, 1.0, 2.0, 5.0, 8.1044, 20.0, 50.0];
const V2_N: [f64; 8] = [1.0, 1.5, 2.0, 3.0, 5.0, 11.0, 17.2087, 41.0];
const ALPHAS: [f64; 6] = [0.452, 1.0, 1.1168, 1.8, 2.2, 4.5];

/// `∫ pdf dy` after substituting `y = w^(α²)`, which turns the integrand
/// into a smooth symmetric-beta density in `w`.
fn w_space_mass(model: &DistributionModel, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    quadrature_unit(
        |w| {
            let y = w.powf(a2);
            if y <= 0.0 || y >= 1.0 {
                return 0.0;
            }
            (model.log_pdf(y).unwrap() + a2.ln() + (a2 - 1.0) * w.ln()).exp()
        },
        1e-13,
    )
    .unwrap()
}

#[test]
fn gombur_densities_integrate_to_one() {
    for &alpha in &ALPHAS {
        for &n in &V1_N {
            let m = DistributionModel::gombur_v1(n, alpha).unwrap();
            let mass = w_space_mass(&m, alpha);
            assert!((mass - 1.0).abs() <= 1e-8, "v1 n={n} alpha={alpha}: {mass}");
        }
        for &n in &V2_N {
            let m = DistributionModel::gombur_v2(n, alpha).unwrap();
            let mass = w_space_mass(&m, alpha);
            assert!((mass - 1.0).abs() <= 1e-8, "v2 n={n} alpha={alpha}: {mass}");
        }
    }
}

#[test]
fn competitor_densities_integrate_to_one() {
    let models = [
        DistributionModel::beta(6.8318, 9.2376).unwrap(),
        DistributionModel::beta(0.7, 1.4).unwrap(),
        DistributionModel::kumaraswamy(3.3777, 12.0057).unwrap(),
        DistributionModel::topp_leone(2.2413).unwrap(),
        DistributionModel::topp_leone(0.6).unwrap(),
        DistributionModel::unit_lindley(1.6268).unwrap(),
        DistributionModel::mbur(1.0755).unwrap(),
    ];
    for m in &models {
        let mass = quadrature_unit(|y| m.pdf(y).unwrap(), 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "{m}: {mass}");
    }
}

#[test]
fn version_two_reparameterizes_version_one() {
    for &n in &[0.0, 1.0, 5.0, 8.1044] {
        for &alpha in &[0.5, 1.0, 1.1168, 2.2] {
            let v1 = DistributionModel::gombur_v1(n, alpha).unwrap();
            let v2 = DistributionModel::gombur_v2(2.0 * n + 1.0, alpha).unwrap();
            for i in 1..1000 {
                let y = i as f64 / 1000.0;
                let (p1, p2) = (v1.pdf(y).unwrap(), v2.pdf(y).unwrap());
                assert!((p1 - p2).abs() <= 1e-10 * p1.max(1.0), "n={n} alpha={alpha} y={y}");
                assert!((v1.cdf(y).unwrap() - v2.cdf(y).unwrap()).abs() <= 1e-12);
            }
        }
    }
    let v1 = DistributionModel::gombur_v1(8.1044, 1.1168).unwrap();
    let v2 = DistributionModel::gombur_v2(17.2088, 1.1168).unwrap();
    assert!((v1.log_pdf(0.405).unwrap() - v2.log_pdf(0.405).unwrap()).abs() < 1e-9);
}

#[test]
fn unit_alpha_reduces_to_symmetric_beta() {
    for &n in &[0.0, 0.5, 3.0, 12.7] {
        let g = DistributionModel::gombur_v1(n, 1.0).unwrap();
        let b = DistributionModel::beta(n + 1.0, n + 1.0).unwrap();
        for i in 1..100 {
            let y = i as f64 / 100.0;
            assert!((g.pdf(y).unwrap() - b.pdf(y).unwrap()).abs() <= 1e-10 * b.pdf(y).unwrap().max(1.0));
            assert!((g.cdf(y).unwrap() - b.cdf(y).unwrap()).abs() <= 1e-10);
        }
    }
}

fn settings(family: Family) -> Vec<Vec<f64>> {
    match family {
        Family::GomburV1 => vec![
            vec![0.0, 1.0],
            vec![2.0, 1.3],
            vec![8.1044, 1.1168],
            vec![0.5, 0.452],
            vec![20.0, 1.8],
            vec![5.0, 2.2],
        ],
        Family::GomburV2 => vec![
            vec![1.0, 1.0],
            vec![3.0, 1.0],
            vec![17.2087, 1.1168],
            vec![2.0, 0.452],
            vec![41.0, 1.8],
            vec![11.0, 2.2],
        ],
        Family::Mbur => vec![vec![0.452], vec![0.8], vec![1.0], vec![1.0755], vec![1.8], vec![2.2]],
        Family::Beta => vec![
            vec![6.8318, 9.2376],
            vec![2.0, 2.0],
            vec![1.5, 4.0],
            vec![3.0, 1.2],
            vec![1.0, 1.0],
            vec![20.0, 30.0],
        ],
        Family::Kumaraswamy => vec![
            vec![3.3777, 12.0057],
            vec![2.0, 2.0],
            vec![1.5, 4.0],
            vec![3.0, 1.2],
            vec![1.0, 1.0],
            vec![5.0, 30.0],
        ],
        Family::ToppLeone => vec![vec![2.2413], vec![1.0], vec![1.5], vec![3.0], vec![5.0], vec![0.8]],
        Family::UnitLindley => vec![vec![1.6268], vec![0.5], vec![1.0], vec![2.0], vec![4.0], vec![8.0]],
    }
}

fn models() -> Vec<DistributionModel> {
    Family::ALL
        .iter()
        .flat_map(|&f| settings(f).into_iter().map(move |p| f.model(&p).unwrap()))
        .collect()
}

#[test]
fn cdf_derivative_matches_pdf() {
    for m in models() {
        for i in 1..=25 {
            let y = i as f64 / 26.0;
            let d = finite_diff(|t| m.cdf(t).unwrap(), y, 1e-5);
            let p = m.pdf(y).unwrap();
            assert!((d - p).abs() <= 1e-6f64.max(1e-4 * p), "{m} y={y}: fd {d} pdf {p}");
        }
    }
}

#[test]
fn hazard_times_survival_is_density() {
    for m in models() {
        for i in 1..100 {
            let y = i as f64 / 100.0;
            let p = m.pdf(y).unwrap();
            let s = m.survival(y).unwrap();
            if s > 1e-200 {
                let h = m.hazard(y).unwrap();
                assert!((h * s - p).abs() <= 1e-10 * p, "{m} y={y}");
            }
            let c = m.cdf(y).unwrap();
            if c > 1e-200 {
                let r = m.reversed_hazard(y).unwrap();
                assert!((r * c - p).abs() <= 1e-10 * p, "{m} y={y}");
            }
        }
    }
}

#[test]
fn raw_moments_match_quadrature() {
    for m in models() {
        for r in 1..=3u32 {
            let closed = m.raw_moment(r).unwrap();
            let quad = match m.family() {
                // integrate y^r f(y) in w-space, where the integrand is smooth
                Family::GomburV1 | Family::GomburV2 | Family::Mbur => {
                    let a2 = m.params().last().unwrap().powi(2);
                    quadrature_unit(
                        |w| {
                            let y = w.powf(a2);
                            if y <= 0.0 || y >= 1.0 {
                                return 0.0;
                            }
                            (r as f64 * y.ln() + m.log_pdf(y).unwrap() + a2.ln() + (a2 - 1.0) * w.ln()).exp()
                        },
                        1e-13,
                    )
                    .unwrap()
                }
                _ => quadrature_unit(|y| y.powi(r as i32) * m.pdf(y).unwrap(), 1e-13).unwrap(),
            };
            assert!((closed - quad).abs() <= 1e-8, "{m} r={r}: {closed} vs {quad}");
        }
    }
}

#[test]
fn quantile_inverts_cdf() {
    for m in models() {
        for i in 1..=9 {
            let p = i as f64 / 10.0;
            let y = m.quantile(p).unwrap();
            assert!((m.cdf(y).unwrap() - p).abs() <= 1e-8, "{m} p={p}");
        }
        assert_eq!(m.quantile(0.0).unwrap(), 0.0);
        assert_eq!(m.quantile(1.0).unwrap(), 1.0);
    }
}

#[test]
fn statistics_depend_only_on_the_pit() {
    let d = Dataset::flood();
    let m = DistributionModel::gombur_v1(8.1044, 1.1168).unwrap();
    let z: Vec<f64> = d.values().iter().map(|&y| m.cdf(y).unwrap()).collect();
    let direct = gof_report(&d, &m).unwrap();
    // identity cdf on (0, 1) is the uniform, i.e. gombur_v1(0, 1)
    let zd = Dataset::new(z.clone()).unwrap();
    let uniform = DistributionModel::gombur_v1(0.0, 1.0).unwrap();
    let via_identity = gof_report(&zd, &uniform).unwrap();
    let via_pit = gof_from_pit(&z).unwrap();
    for other in [via_identity, via_pit] {
        assert!((direct.ks - other.ks).abs() < 1e-15);
        assert!((direct.ad - other.ad).abs() < 1e-12);
        assert!((direct.cvm - other.cvm).abs() < 1e-15);
        assert_eq!(direct.decision, other.decision);
    }
}

fn shape() -> impl Strategy<Value = f64> {
    0.5f64..50.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn betareg_is_monotone(a in shape(), b in shape()) {
        let mut prev = 0.0;
        for i in 0..=1000 {
            let v = betareg(i as f64 / 1000.0, a, b).unwrap();
            prop_assert!(v >= prev, "a={} b={} i={}", a, b, i);
            prop_assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn betareg_reflection(x in 0.0f64..=1.0, a in shape(), b in shape()) {
        let i = betareg(x, a, b).unwrap();
        let c = betareg_complement(x, a, b).unwrap();
        if i >= 1e-6 && c >= 1e-6 {
            prop_assert!((i + c - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn symmetric_beta_identity(x in 0.0f64..=1.0, a in shape()) {
        let lhs = betareg(x, a, a).unwrap();
        let rhs = 1.0 - betareg(1.0 - x, a, a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn kolmogorov_is_a_survival_function(l1 in 0.0f64..4.0, l2 in 0.0f64..4.0) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let (q_lo, q_hi) = (kolmogorov_sf(lo).unwrap(), kolmogorov_sf(hi).unwrap());
        prop_assert!((0.0..=1.0).contains(&q_lo) && (0.0..=1.0).contains(&q_hi));
        prop_assert!(q_hi <= q_lo);
    }

    #[test]
    fn ks_pvalue_decreases_in_d(d1 in 0.0f64..=1.0, d2 in 0.0f64..=1.0, m in 1usize..500) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(ks_pvalue(hi, m).unwrap() <= ks_pvalue(lo, m).unwrap());
    }

    #[test]
    fn gof_statistic_ranges(mut z in prop::collection::vec(0.0f64..=1.0, 1..60)) {
        z.sort_by(f64::total_cmp);
        let m = z.len() as f64;
        let d = ks_from_pit(&z).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(cvm_from_pit(&z).unwrap() >= 1.0 / (12.0 * m) - 1e-15);
        prop_assert!(ad_from_pit(&z).unwrap().0.is_finite());
    }

    #[test]
    fn gombur_cdf_is_monotone_and_bounded(n in 0.0f64..60.0, alpha in 0.3f64..5.0) {
        let m = DistributionModel::gombur_v1(n, alpha).unwrap();
        let mut prev = 0.0;
        for i in 0..=200 {
            let y = i as f64 / 200.0;
            let c = m.cdf(y).unwrap();
            prop_assert!(c >= prev && c <= 1.0);
            let s = m.survival(y).unwrap();
            prop_assert!((0.0..=1.0).contains(&s));
            prev = c;
        }
    }

    #[test]
    fn gombur_quantile_roundtrip(n in 0.0f64..60.0, alpha in 0.3f64..5.0, p in 0.001f64..0.999) {
        let m = DistributionModel::gombur_v2(2.0 * n + 1.0, alpha).unwrap();
        let y = m.quantile(p).unwrap();
        prop_assert!((m.cdf(y).unwrap() - p).abs() <= 1e-8);
    }

    #[test]
    fn samples_lie_strictly_inside(n in 0.0f64..60.0, alpha in 0.3f64..5.0, seed in any::<u64>()) {
        let m = DistributionModel::gombur_v1(n, alpha).unwrap();
        let xs = m.sample(50, seed).unwrap();
        prop_assert_eq!(xs.len(), 50);
        prop_assert!(xs.iter().all(|&x| x > 0.0 && x < 1.0));
        prop_assert_eq!(xs, m.sample(50, seed).unwrap());
    }
}
