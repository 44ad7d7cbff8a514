//! The four subcommands, each producing records or a sampled table.

use std::f64::consts::PI;

use ineqverify_core::constants::{beta_int, beta_sum_identity, extremal_density, i_nalpha, rhs_constant, InalphaMode};
use ineqverify_core::kernel::kernel;
use ineqverify_core::positivity::{alpha_threshold_in, region_scan, PositivityVerdict, Status};
use ineqverify_core::quadrature::{
    integrate_log_moment, integrate_phi_prime_moment, log_grid, verify_kernel_reproduction, verify_power_moment,
    verify_reduction_chain, ChainTolerances, DensityFunction, IdentityCheck, QuadConfig, QuadResult,
};
use ineqverify_core::transition::{p_poly, TransitionFn};
use ineqverify_core::Rational;
use serde_json::{json, Value};

use crate::report::{CheckStatus, Record, Table};
use crate::{Common, DensityChoice, Suite};

pub enum Output {
    Report { config: Value, records: Vec<Record> },
    Table { config: Value, table: Table },
}

type CmdResult = Result<Output, String>;

const CLOSED_FORM_TOL: f64 = 1e-8;
const IDENTITY_TOL: f64 = 1e-6;
const MAX_PLOT_POINTS: usize = 1_000_000;

pub fn quad_config(common: &Common) -> Result<QuadConfig, String> {
    let cfg = QuadConfig {
        abs_tol: common.abs_tol,
        rel_tol: common.rel_tol,
        max_subdivisions: common.max_subdivisions,
        ..QuadConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn quad_json(cfg: &QuadConfig) -> Value {
    json!({
        "absTol": cfg.abs_tol,
        "relTol": cfg.rel_tol,
        "maxSubdivisions": cfg.max_subdivisions,
    })
}

fn strings(alphas: &[Rational]) -> Vec<String> {
    alphas.iter().map(ToString::to_string).collect()
}

fn sorted(mut alphas: Vec<Rational>) -> Vec<Rational> {
    alphas.sort();
    alphas.dedup();
    alphas
}

fn quad_detail(record: Record, q: &QuadResult) -> Record {
    let record = record
        .detail("errorEstimate", q.error_estimate)
        .detail("subdivisions", q.subdivisions_used as u64)
        .detail("converged", q.converged);
    match &q.diagnostic {
        Some(d) => record.detail("diagnostic", d.as_str()),
        None => record,
    }
}

pub fn identities(alphas: &[Rational], n_max: u32) -> CmdResult {
    if n_max == 0 {
        return Err("--n-max must be at least 1".to_string());
    }
    let alphas = sorted(alphas.to_vec());
    let mut records = Vec::new();
    for alpha in &alphas {
        let sum_ok = beta_sum_identity(alpha, n_max).map_err(|e| e.to_string())?;
        for n in 1..=n_max {
            let core = |e: ineqverify_core::Error| e.to_string();
            let product = i_nalpha(alpha, n, InalphaMode::Product).map_err(core)?;
            let sum = i_nalpha(alpha, n, InalphaMode::Sum).map_err(core)?;
            let diff = &product - &sum;
            records.push(
                Record::new("beta-sum-identity", CheckStatus::from_bool(sum_ok[n as usize - 1]))
                    .param("n", n)
                    .param("alpha", alpha.to_string())
                    .numbers(Some(sum.to_f64()), Some(product.to_f64()), Some(diff.to_f64()))
                    .detail("product", product.to_string())
                    .detail("sum", sum.to_string()),
            );
            let beta = beta_int(alpha, n).map_err(core)?;
            let c = rhs_constant(alpha, n).map_err(core)?.pi_coefficient;
            let prod = &c * &beta;
            records.push(
                Record::new("reciprocity", CheckStatus::from_bool(prod == Rational::one()))
                    .param("n", n)
                    .param("alpha", alpha.to_string())
                    .numbers(Some(1.0), Some(prod.to_f64()), Some((&prod - &Rational::one()).to_f64()))
                    .detail("beta", beta.to_string())
                    .detail("piCoefficient", c.to_string()),
            );
        }
    }
    records.sort_by(|a, b| record_key(a).cmp(&record_key(b)));
    let config = json!({
        "command": "identities",
        "alpha": strings(&alphas),
        "nMax": n_max,
    });
    Ok(Output::Report { config, records })
}

// (n, alpha) ordering key; records without n sort first
fn record_key(r: &Record) -> (u64, Rational, String) {
    let n = r.params.get("n").and_then(Value::as_u64).unwrap_or(0);
    let alpha = r
        .params
        .get("alpha")
        .and_then(Value::as_str)
        .and_then(|s| s.parse().ok())
        .unwrap_or_default();
    (n, alpha, r.check.clone())
}

pub struct IntegralOptions {
    pub alphas: Option<Vec<Rational>>,
    pub ns: Option<Vec<u32>>,
    pub ys: Vec<f64>,
    pub density: DensityChoice,
    pub t_points: usize,
    pub tol: Option<f64>,
}

fn rats(list: &[(i64, i64)]) -> Vec<Rational> {
    list.iter().map(|&(p, q)| Rational::frac(p, q)).collect()
}

pub fn integrals(suite: Suite, opts: &IntegralOptions, cfg: &QuadConfig) -> CmdResult {
    if let Some(tol) = opts.tol {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(format!("--tol must be positive, got {tol}"));
        }
    }
    if suite == Suite::Chain || suite == Suite::All {
        if opts.t_points == 0 {
            return Err("--t-points must be at least 1".to_string());
        }
        if opts.ns.as_ref().is_some_and(|ns| ns.contains(&0)) {
            return Err("the chain suite needs n >= 1".to_string());
        }
    }
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Logmoment,
            Suite::Phimoment,
            Suite::KernelIdentity,
            Suite::PowerMoment,
            Suite::Chain,
        ],
        _ => std::slice::from_ref(&suite),
    };
    let mut records = Vec::new();
    let mut suite_configs = Vec::new();
    for &s in suites {
        let (alphas, ns, mut recs) = run_suite(s, opts, cfg)?;
        suite_configs.push(json!({
            "suite": suite_name(s),
            "alpha": strings(&alphas),
            "n": ns,
        }));
        records.append(&mut recs);
    }
    let mut config = json!({
        "command": "integrals",
        "suite": suite_name(suite),
        "quadrature": quad_json(cfg),
        "suites": suite_configs,
    });
    if let Some(tol) = opts.tol {
        config["tol"] = tol.into();
    }
    Ok(Output::Report { config, records })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Logmoment => "logmoment",
        Suite::Phimoment => "phimoment",
        Suite::KernelIdentity => "kernel-identity",
        Suite::PowerMoment => "power-moment",
        Suite::Chain => "chain",
        Suite::All => "all",
    }
}

type SuiteRun = (Vec<Rational>, Vec<u32>, Vec<Record>);

fn run_suite(suite: Suite, opts: &IntegralOptions, cfg: &QuadConfig) -> Result<SuiteRun, String> {
    let core = |e: ineqverify_core::Error| e.to_string();
    let pick = |default: &[(i64, i64)]| sorted(opts.alphas.clone().unwrap_or_else(|| rats(default)));
    let pick_n = |lo: u32, hi: u32| opts.ns.clone().unwrap_or_else(|| (lo..=hi).collect());
    let mut records = Vec::new();
    match suite {
        Suite::Logmoment | Suite::Phimoment => {
            let tol = opts.tol.unwrap_or(CLOSED_FORM_TOL);
            let alphas = if suite == Suite::Logmoment {
                pick(&[(1, 4), (1, 2), (1, 1), (2, 1)])
            } else {
                pick(&[(1, 2), (1, 1)])
            };
            for alpha in &alphas {
                let (check, q, target) = if suite == Suite::Logmoment {
                    ("log-moment", integrate_log_moment(alpha, cfg).map_err(core)?, PI / alpha.to_f64())
                } else {
                    ("phi-prime-moment", integrate_phi_prime_moment(alpha, cfg).map_err(core)?, -PI)
                };
                let residual = q.value - target;
                let ok = q.converged && residual.abs() <= tol;
                records.push(quad_detail(
                    Record::new(check, CheckStatus::from_bool(ok))
                        .param("alpha", alpha.to_string())
                        .numbers(Some(target), Some(q.value), Some(residual)),
                    &q,
                ));
            }
            Ok((alphas, Vec::new(), records))
        }
        Suite::KernelIdentity => {
            let tol = opts.tol.unwrap_or(IDENTITY_TOL);
            let alphas = pick(&[(1, 4), (1, 2)]);
            let ns = pick_n(0, 4);
            let mut ys = opts.ys.clone();
            ys.sort_by(f64::total_cmp);
            ys.dedup();
            for &n in &ns {
                for alpha in &alphas {
                    for &y in &ys {
                        let check = verify_kernel_reproduction(n, alpha, y, cfg).map_err(core)?;
                        records.push(identity_record("kernel-reproduction", &check, tol, n, alpha).param("y", y));
                    }
                }
            }
            Ok((alphas, ns, records))
        }
        Suite::PowerMoment => {
            let tol = opts.tol.unwrap_or(IDENTITY_TOL);
            let alphas = pick(&[(1, 4), (1, 2), (1, 1)]);
            let ns = pick_n(0, 4);
            for &n in &ns {
                for alpha in &alphas {
                    let check = verify_power_moment(n, alpha, cfg).map_err(core)?;
                    records.push(identity_record("power-moment", &check, tol, n, alpha));
                }
            }
            Ok((alphas, ns, records))
        }
        Suite::Chain => {
            let tolerances = ChainTolerances {
                premise: opts.tol.unwrap_or(ChainTolerances::default().premise),
                ..ChainTolerances::default()
            };
            let alphas = pick(&[(1, 4), (1, 2)]);
            let ns = pick_n(1, 3);
            let grid = log_grid(1e-3, 1e3, opts.t_points);
            for &n in &ns {
                for alpha in &alphas {
                    let q = density(opts.density, alpha, n).map_err(core)?;
                    let report = verify_reduction_chain(n, alpha, &q, &grid, cfg, &tolerances).map_err(core)?;
                    for p in &report.premise {
                        let ok = p.quadrature.converged && p.residual <= tolerances.premise;
                        records.push(quad_detail(
                            Record::new("chain-premise", CheckStatus::from_bool(ok))
                                .param("n", n)
                                .param("alpha", alpha.to_string())
                                .param("t", p.t)
                                .param("q", q.description.as_str())
                                .numbers(Some(p.bound), Some(p.lhs), Some(p.residual)),
                            &p.quadrature,
                        ));
                    }
                    let base = |status| {
                        Record::new("chain-conclusion", status)
                            .param("n", n)
                            .param("alpha", alpha.to_string())
                            .param("q", q.description.as_str())
                            .detail("applicable", report.applicable)
                            .detail("premiseSatisfied", report.premise_satisfied)
                            .detail("rhsPiCoefficient", report.rhs_pi_coefficient.to_string())
                    };
                    let rec = match (&report.conclusion_lhs, report.conclusion_satisfied) {
                        (Some(lhs), Some(ok)) => quad_detail(
                            base(CheckStatus::from_bool(ok))
                                .numbers(Some(report.rhs), Some(lhs.value), Some(lhs.value - report.rhs))
                                .detail("equalityWithinTol", report.equality_within_tol.unwrap_or(false)),
                            lhs,
                        ),
                        _ => {
                            let reason = if report.applicable {
                                "premise not satisfied"
                            } else {
                                "transition function not certified non-negative"
                            };
                            verdict_detail(
                                base(CheckStatus::Inconclusive)
                                    .numbers(Some(report.rhs), None, None)
                                    .detail("reason", reason),
                                &report.positivity,
                            )
                        }
                    };
                    records.push(rec);
                }
            }
            Ok((alphas, ns, records))
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn density(choice: DensityChoice, alpha: &Rational, n: u32) -> ineqverify_core::Result<DensityFunction> {
    Ok(match choice {
        DensityChoice::Extremal => extremal_density(alpha, n)?,
        DensityChoice::Zero => DensityFunction::zero(),
        DensityChoice::DoubleExtremal => extremal_density(alpha, n)?.scaled(2.0),
    })
}

fn identity_record(check: &str, c: &IdentityCheck, tol: f64, n: u32, alpha: &Rational) -> Record {
    quad_detail(
        Record::new(check, CheckStatus::from_bool(c.passes(tol)))
            .param("n", n)
            .param("alpha", alpha.to_string())
            .numbers(Some(c.target), Some(c.quadrature.value), Some(c.residual)),
        &c.quadrature,
    )
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Nonnegative => "nonnegative",
        Status::Negative => "negative",
        Status::Inconclusive => "inconclusive",
    }
}

fn verdict_detail(record: Record, v: &PositivityVerdict) -> Record {
    let mut record = record.detail("verdict", status_name(v.status));
    if let Some(c) = v.certificate {
        record = record.detail("certificate", serde_json::to_value(c).expect("enum serializes"));
    }
    if let Some(w) = &v.witness {
        record = record.detail("witness", w.to_string());
    }
    record
}

pub fn scan(ns: &[u32], alphas: &[Rational]) -> Output {
    let mut records = Vec::new();
    for &m in ns {
        let report = region_scan(m..=m, alphas);
        let poly = p_poly(m);
        for cell in &report.cells {
            // a scan cell passes when the verdict is decided and its evidence checks out
            let ok = match (&cell.verdict.status, &cell.verdict.witness) {
                (Status::Nonnegative, _) => true,
                (Status::Negative, Some(w)) => w.is_positive() && poly.eval(&cell.alpha, w).is_negative(),
                _ => false,
            };
            let status = match cell.verdict.status {
                Status::Inconclusive => CheckStatus::Inconclusive,
                _ => CheckStatus::from_bool(ok),
            };
            records.push(verdict_detail(
                Record::new("positivity", status)
                    .param("n", m)
                    .param("conjectureN", m + 1)
                    .param("alpha", cell.alpha.to_string()),
                &cell.verdict,
            ));
        }
    }
    let config = json!({
        "command": "scan",
        "n": ns,
        "alpha": strings(&sorted(alphas.to_vec())),
    });
    Output::Report { config, records }
}

pub fn threshold(ns: &[u32], tol: f64, upper: &Rational) -> CmdResult {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(format!("--tol must be positive, got {tol}"));
    }
    let mut records = Vec::new();
    for &m in ns {
        let iv = alpha_threshold_in(m, tol, upper);
        let width = iv.width().to_f64();
        let status = if iv.saturated || iv.inconclusive_probes > 0 {
            CheckStatus::Inconclusive
        } else {
            CheckStatus::from_bool(width <= tol)
        };
        records.push(
            Record::new("alpha-threshold", status)
                .param("n", m)
                .param("conjectureN", m + 1)
                .numbers(None, Some(iv.lo.midpoint(&iv.hi).to_f64()), Some(width))
                .detail("lo", iv.lo.to_string())
                .detail("hi", iv.hi.to_string())
                .detail("exact", iv.exact)
                .detail("saturated", iv.saturated)
                .detail("probes", iv.probes as u64)
                .detail("inconclusiveProbes", iv.inconclusive_probes as u64),
        );
    }
    let config = json!({
        "command": "scan",
        "threshold": true,
        "n": ns,
        "tol": tol,
        "upper": upper.to_string(),
    });
    Ok(Output::Report { config, records })
}

fn check_points(points: usize) -> Result<(), String> {
    if points == 0 || points > MAX_PLOT_POINTS {
        return Err(format!("--points must be in 1..={MAX_PLOT_POINTS}, got {points}"));
    }
    Ok(())
}

fn header(axis: &str, ns: &[u32]) -> Vec<String> {
    std::iter::once(axis.to_string())
        .chain(ns.iter().map(|n| format!("n={n}")))
        .collect()
}

/// `A_n(x)` at `x = i/points`, `i = 1..=points`.
pub fn plot_kernel(ns: &[u32], points: usize) -> CmdResult {
    check_points(points)?;
    let mut rows = Vec::with_capacity(points);
    for i in 1..=points {
        let x = i as f64 / points as f64;
        let mut row = vec![x];
        for &n in ns {
            row.push(kernel(n, x).map_err(|e| e.to_string())?);
        }
        rows.push(row);
    }
    let config = json!({"command": "plot-data", "curve": "kernel", "n": ns, "points": points});
    Ok(Output::Table {
        config,
        table: Table {
            header: header("x", ns),
            rows,
        },
    })
}

/// `Φ_n(α, t)` on a log-spaced grid.
pub fn plot_phi(ns: &[u32], alpha: &Rational, points: usize, t_min: f64, t_max: f64) -> CmdResult {
    check_points(points)?;
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(format!("need 0 < t-min < t-max, got {t_min} and {t_max}"));
    }
    let fns = ns
        .iter()
        .map(|&n| TransitionFn::new(n, alpha))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let rows = log_grid(t_min, t_max, points)
        .into_iter()
        .map(|t| std::iter::once(t).chain(fns.iter().map(|f| f.eval(t))).collect())
        .collect();
    let config = json!({
        "command": "plot-data",
        "curve": "phi",
        "n": ns,
        "alpha": alpha.to_string(),
        "points": points,
        "tMin": t_min,
        "tMax": t_max,
    });
    Ok(Output::Table {
        config,
        table: Table {
            header: header("t", ns),
            rows,
        },
    })
}
