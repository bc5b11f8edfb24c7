use std::fmt::Write as _;
use std::path::Path;

use gombur::describe::describe_with;
use gombur::distributions::DistributionModel;
use gombur::gof::{gof_report, ks_from_pit};
use gombur::oracle::{quadrature_unit, rayleigh_median_sample, MedianSimConfig};
use gombur::{
    compare, hazard_scan, load_dataset, plot_data, DataSource, Dataset, Family, FitSummary, GofReport,
    MomentConvention, OptimizerConfig,
};
use serde::Serialize;

use crate::args::{Cli, Command, DataArgs, FamilyArgs, FitArgs, Format};
use crate::Failure;

pub fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Describe { data, population, format } => describe(&data, population, format),
        Command::Fit { data, family, fit, format } => fit_one(&data, &family, &fit, format),
        Command::Compare { data, families, version, fit, seed, format } => {
            compare_families(&data, &families, version, &fit, seed, format)
        }
        Command::Gof { data, family, params, fit, format } => gof(&data, &family, params, &fit, format),
        Command::Sample { family, params, count, seed, format } => sample(&family, &params, count, seed, format),
        Command::Quantile { family, params, p, format } => quantile(&family, &params, &p, format),
        Command::HazardScan { family, params, grid, format } => scan(&family, &params, grid, format),
        Command::Verify { seed, replications, format } => verify(seed, replications, format),
        Command::PlotData { data, family, params, bins, out_dir, prefix, fit } => {
            plot(&data, &family, params, bins, &out_dir, &prefix, &fit)
        }
    }
}

fn parse_family(name: &str, version: u8) -> Result<Family, Failure> {
    match name {
        "gombur" => Ok(if version == 2 { Family::GomburV2 } else { Family::GomburV1 }),
        other => other.parse().map_err(|_| Failure::Usage(format!("unknown family `{other}`"))),
    }
}

fn family_of(args: &FamilyArgs) -> Result<Family, Failure> {
    parse_family(&args.family, args.version)
}

fn model_of(args: &FamilyArgs, params: &[f64]) -> Result<DistributionModel, Failure> {
    let family = family_of(args)?;
    if params.len() != family.num_params() {
        return Err(Failure::Usage(format!(
            "{family} takes {} parameter(s) ({}), got {}",
            family.num_params(),
            family.param_names().join(", "),
            params.len()
        )));
    }
    family.model(params).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(args: &DataArgs) -> Result<Dataset, Failure> {
    Ok(load_dataset(&DataSource::parse(&args.data))?)
}

fn optimizer(args: &FitArgs) -> Result<OptimizerConfig, Failure> {
    let mut cfg = OptimizerConfig::default();
    if let Some(tol) = args.tol {
        cfg.tolerance = tol;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Numeric(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn describe(args: &DataArgs, population: bool, format: Format) -> Result<String, Failure> {
    let data = load(args)?;
    let convention = if population { MomentConvention::Population } else { MomentConvention::BiasCorrected };
    let s = describe_with(&data, convention)?;
    let rows = [
        ("m", s.m as f64),
        ("min", s.min),
        ("mean", s.mean),
        ("std", s.std),
        ("skewness", s.skewness),
        ("kurtosis", s.kurtosis),
        ("p25", s.p25),
        ("p50", s.p50),
        ("p75", s.p75),
        ("max", s.max),
    ];
    Ok(match format {
        Format::Json => json(&s)?,
        Format::Csv => {
            let mut out = String::from("statistic,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},{v}");
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for (k, v) in rows {
                let _ = writeln!(out, "{k:<9} {v:>10.4}");
            }
            out
        }
    })
}

fn fitted_row(data: &Dataset, family: Family, cfg: &OptimizerConfig) -> Result<(FitSummary, GofReport), Failure> {
    let fit = gombur::fit_mle(family, data, cfg)?;
    let gof = gof_report(data, &fit.model)?;
    Ok((FitSummary::from(&fit), gof))
}

#[derive(Serialize)]
struct FitOutput<'a> {
    family: Family,
    fit: &'a FitSummary,
    gof: &'a GofReport,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.4}"))
}

fn fit_text(family: Family, fit: &FitSummary, gof: &GofReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family      {family}");
    let _ = writeln!(out, "m           {}", fit.m);
    let _ = writeln!(out, "converged   {} ({} evaluations)", fit.converged, fit.evaluations);
    if fit.at_boundary {
        let _ = writeln!(out, "note        optimum on the parameter boundary; no covariance");
    }
    let _ = writeln!(
        out,
        "\n{:<8} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "param", "estimate", "var", "se", "scaled_se", "wald_z"
    );
    for p in &fit.params {
        let _ = writeln!(
            out,
            "{:<8} {:>10.4} {:>10} {:>10} {:>10} {:>10}",
            p.name,
            p.estimate,
            opt(p.variance),
            opt(p.se),
            opt(p.scaled_se),
            opt(p.wald_z)
        );
    }
    let _ = writeln!(out, "\nloglik      {:.4}", fit.loglik);
    let _ = writeln!(out, "aic         {:.4}", fit.aic);
    let _ = writeln!(out, "caic        {:.4}", fit.caic);
    let _ = writeln!(out, "bic         {:.4}", fit.bic);
    let _ = write!(out, "{}", gof_text(gof));
    out
}

fn gof_text(gof: &GofReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ks          {:.4}", gof.ks);
    let _ = writeln!(out, "ks_p        {:.4}  (parameters treated as known)", gof.ks_p);
    let _ = writeln!(out, "ad          {:.4}{}", gof.ad, if gof.clamped { "  (PIT clamped)" } else { "" });
    let _ = writeln!(out, "cvm         {:.4}", gof.cvm);
    let _ = writeln!(out, "decision    {} at 0.05", gof.decision.label());
    out
}

fn fit_csv(family: Family, fit: &FitSummary, gof: &GofReport) -> String {
    let mut out = String::from("family,param,estimate,variance,se,scaled_se,wald_z,loglik,aic,caic,bic,ks,ks_p,ad,cvm,decision\n");
    let cell = |v: Option<f64>| v.map_or_else(String::new, |x| x.to_string());
    for p in &fit.params {
        let _ = writeln!(
            out,
            "{family},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            p.name,
            p.estimate,
            cell(p.variance),
            cell(p.se),
            cell(p.scaled_se),
            cell(p.wald_z),
            fit.loglik,
            fit.aic,
            fit.caic,
            fit.bic,
            gof.ks,
            gof.ks_p,
            gof.ad,
            gof.cvm,
            gof.decision.label()
        );
    }
    out
}

fn fit_one(data: &DataArgs, family: &FamilyArgs, fit: &FitArgs, format: Format) -> Result<String, Failure> {
    let family = family_of(family)?;
    let cfg = optimizer(fit)?;
    let data = load(data)?;
    let (summary, gof) = fitted_row(&data, family, &cfg)?;
    Ok(match format {
        Format::Json => json(&FitOutput { family, fit: &summary, gof: &gof })?,
        Format::Csv => fit_csv(family, &summary, &gof),
        Format::Table => fit_text(family, &summary, &gof),
    })
}

fn compare_families(
    data: &DataArgs,
    families: &str,
    version: u8,
    fit: &FitArgs,
    seed: u64,
    format: Format,
) -> Result<String, Failure> {
    let list: Vec<Family> = if families.trim() == "all" {
        Family::ALL.to_vec()
    } else {
        families
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_family(s, version))
            .collect::<Result<_, _>>()?
    };
    if list.is_empty() {
        return Err(Failure::Usage("no families requested".into()));
    }
    let cfg = optimizer(fit)?;
    let data = load(data)?;
    let table = compare(&data, &list, &cfg, seed);
    Ok(match format {
        Format::Json => json(&table)?,
        Format::Csv => table.to_csv(),
        Format::Table => table.to_text(),
    })
}

#[derive(Serialize)]
struct GofOutput {
    model: String,
    gof: GofReport,
}

fn gof(
    data: &DataArgs,
    family: &FamilyArgs,
    params: Option<Vec<f64>>,
    fit: &FitArgs,
    format: Format,
) -> Result<String, Failure> {
    let data_set = load(data)?;
    let model = match params {
        Some(p) => model_of(family, &p)?,
        None => gombur::fit_mle(family_of(family)?, &data_set, &optimizer(fit)?)?.model,
    };
    let report = gof_report(&data_set, &model)?;
    Ok(match format {
        Format::Json => json(&GofOutput { model: model.to_string(), gof: report })?,
        Format::Csv => format!(
            "model,ks,ks_p,ad,cvm,decision,clamped\n\"{model}\",{},{},{},{},{},{}\n",
            report.ks,
            report.ks_p,
            report.ad,
            report.cvm,
            report.decision.label(),
            report.clamped
        ),
        Format::Table => format!("model       {model}\n{}", gof_text(&report)),
    })
}

fn sample(family: &FamilyArgs, params: &[f64], count: usize, seed: u64, format: Format) -> Result<String, Failure> {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let model = model_of(family, params)?;
    let xs = model.sample(count, seed)?;
    Ok(match format {
        Format::Json => json(&xs)?,
        Format::Csv => std::iter::once("y".to_string()).chain(xs.iter().map(|x| x.to_string())).collect::<Vec<_>>().join("\n") + "\n",
        Format::Table => xs.iter().map(|x| format!("{x}\n")).collect(),
    })
}

#[derive(Serialize)]
struct QuantileRow {
    p: f64,
    y: f64,
}

fn quantile(family: &FamilyArgs, params: &[f64], ps: &[f64], format: Format) -> Result<String, Failure> {
    let model = model_of(family, params)?;
    let rows = ps
        .iter()
        .map(|&p| Ok(QuantileRow { p, y: model.quantile(p).map_err(|e| Failure::Usage(e.to_string()))? }))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(match format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut out = String::from("p,y\n");
            for r in &rows {
                let _ = writeln!(out, "{},{}", r.p, r.y);
            }
            out
        }
        Format::Table => rows.iter().map(|r| format!("{:<8} {:.10}\n", r.p, r.y)).collect(),
    })
}

fn scan(family: &FamilyArgs, params: &[f64], grid: usize, format: Format) -> Result<String, Failure> {
    let model = model_of(family, params)?;
    let scan = hazard_scan(&model, grid).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(match format {
        Format::Json => json(&scan)?,
        Format::Csv => {
            let cell = |h: Option<f64>| h.map_or_else(String::new, |x| x.to_string());
            let mut out = String::from("y,hazard_safe,hazard_naive,survival_safe,survival_naive\n");
            for (s, n) in scan.safe.iter().zip(&scan.naive) {
                let _ = writeln!(out, "{},{},{},{},{}", s.y, cell(s.hazard), cell(n.hazard), s.survival, n.survival);
            }
            out
        }
        Format::Table => {
            let mut out = format!("model       {model}\ngrid        {grid} points\n");
            for (label, sum) in [("safe", &scan.safe_summary), ("naive", &scan.naive_summary)] {
                let positions: Vec<String> = sum.sign_change_positions.iter().map(|y| format!("{y:.4}")).collect();
                let _ = writeln!(
                    out,
                    "{label:<6} shape={:?} sign_changes={} underflow_y={} at [{}]",
                    sum.shape,
                    sum.sign_changes,
                    sum.underflow_y.map_or_else(|| "none".into(), |y| format!("{y:.4}")),
                    positions.join(", ")
                );
            }
            out
        }
    })
}

#[derive(Serialize)]
struct Check {
    check: String,
    passed: bool,
    detail: String,
}

fn verify(seed: u64, replications: usize, format: Format) -> Result<String, Failure> {
    if replications < 100 {
        return Err(Failure::Usage("--replications must be at least 100".into()));
    }
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for &n in &[0.0, 1.0, 8.1044, 50.0] {
        for &alpha in &[0.452, 1.1168, 2.2] {
            let m = DistributionModel::gombur_v1(n, alpha)?;
            let a2 = alpha * alpha;
            let mass = quadrature_unit(
                |w| {
                    let y = w.powf(a2);
                    if y <= 0.0 || y >= 1.0 {
                        return 0.0;
                    }
                    m.log_pdf(y).map_or(0.0, |lp| (lp + a2.ln() + (a2 - 1.0) * w.ln()).exp())
                },
                1e-12,
            )?;
            worst = worst.max((mass - 1.0).abs());
        }
    }
    checks.push(Check { check: "normalization".into(), passed: worst <= 1e-8, detail: format!("max |mass - 1| = {worst:.2e}") });

    let mut worst = 0.0f64;
    for &n in &[0.0, 1.0, 5.0, 8.1044] {
        let v1 = DistributionModel::gombur_v1(n, 1.1168)?;
        let v2 = DistributionModel::gombur_v2(2.0 * n + 1.0, 1.1168)?;
        for i in 1..1000 {
            let y = i as f64 / 1000.0;
            let (a, b) = (v1.pdf(y)?, v2.pdf(y)?);
            worst = worst.max((a - b).abs() / a.max(1.0));
        }
    }
    checks.push(Check { check: "version_equivalence".into(), passed: worst <= 1e-10, detail: format!("max scaled diff = {worst:.2e}") });

    let crit = 1.95 / (replications as f64).sqrt();
    for (i, &(n, alpha)) in [(1u32, 1.0), (2, 0.452), (5, 1.8), (8, 1.1168)].iter().enumerate() {
        let cfg = MedianSimConfig::new(n, alpha, replications, seed.wrapping_add(i as u64))?;
        let mut ys = rayleigh_median_sample(&cfg);
        ys.sort_by(f64::total_cmp);
        let m = DistributionModel::gombur_v1(n as f64, alpha)?;
        let z = ys.iter().map(|&y| m.cdf(y)).collect::<gombur::Result<Vec<_>>>()?;
        let d = ks_from_pit(&z)?;
        checks.push(Check {
            check: format!("median_construction(n={n}, alpha={alpha})"),
            passed: d < crit,
            detail: format!("D = {d:.5}, critical {crit:.5}"),
        });
    }

    let m = DistributionModel::gombur_v1(8.1044, 1.1168)?;
    let mut worst = 0.0f64;
    for i in 1..100 {
        let p = i as f64 / 100.0;
        worst = worst.max((m.cdf(m.quantile(p)?)? - p).abs());
    }
    checks.push(Check { check: "quantile_roundtrip".into(), passed: worst <= 1e-8, detail: format!("max error = {worst:.2e}") });

    let all_passed = checks.iter().all(|c| c.passed);
    let out = match format {
        Format::Json => json(&checks)?,
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &checks {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", c.check, c.passed, c.detail);
            }
            out
        }
        Format::Table => checks
            .iter()
            .map(|c| format!("{} {:<44} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.check, c.detail))
            .collect(),
    };
    if all_passed {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Numeric("one or more self-checks failed".into()))
    }
}

fn plot(
    data: &DataArgs,
    family: &FamilyArgs,
    params: Option<Vec<f64>>,
    bins: usize,
    out_dir: &str,
    prefix: &str,
    fit: &FitArgs,
) -> Result<String, Failure> {
    if bins < 2 {
        return Err(Failure::Usage("--bins must be at least 2".into()));
    }
    let data_set = load(data)?;
    let model = match params {
        Some(p) => model_of(family, &p)?,
        None => gombur::fit_mle(family_of(family)?, &data_set, &optimizer(fit)?)?.model,
    };
    let plot = plot_data(&data_set, &model, bins)?;
    let (a, b) = plot.write(Path::new(out_dir), prefix)?;
    Ok(format!("model {model}\nwrote {a}\nwrote {b}\n"))
}
