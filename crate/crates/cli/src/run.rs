// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use reserving_core::bornhuetter::{bf_reserves, default_priors, PriorUltimates};
use reserving_core::chainladder::{
    estimate_development_factors, estimate_sigmas, mse_accident_year, mse_total, reserves, MackSummary,
};
use reserving_core::impact::{
    impact_bf_ay, impact_bf_total, impact_mse_ay, impact_mse_total, impact_reserve_ay, impact_reserve_total,
    impact_rmse, marginal_contributions, ImpactTriangle, Statistic,
};
use reserving_core::oracle::{
    verify_mse_components, verify_quantile_impacts, verify_reserve_impacts, ReserveTarget, VerificationReport,
};
use reserving_core::quantile::{fit_lognormal, impact_quantile, lognormal_quantile};
use reserving_core::triangle::cumulate;
use reserving_core::IncrementalTriangle;

use crate::config::{Format, Mode, PriorSource, RunConfig};
use crate::heatmap::render_svg;
use crate::ingest::{ingest, read_priors};
use crate::output::{
    impact_csv, impact_json, report_csv, report_json, reserves_csv, reserves_json, ReserveRow, ReserveTable,
};
use crate::CliError;

/// Value of a statistic and its impact triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub impacts: ImpactTriangle,
}

fn priors(cfg: &RunConfig, inc: &IncrementalTriangle) -> Result<PriorUltimates, CliError> {
    match &cfg.priors {
        PriorSource::ChainLadder => {
            let cum = cumulate(inc);
            let f = estimate_development_factors(&cum)?;
            Ok(default_priors(&cum, &f)?)
        }
        PriorSource::File(path) => read_priors(path),
    }
}

fn check_year(cfg: &RunConfig, dim: usize) -> Result<(), CliError> {
    match cfg.year {
        Some(i) if i > dim => Err(CliError::Usage(format!("--year {i} is outside 1..={dim}"))),
        _ => Ok(()),
    }
}

pub fn evaluate(cfg: &RunConfig, inc: &IncrementalTriangle) -> Result<Evaluation, CliError> {
    check_year(cfg, inc.dim())?;
    let cum = cumulate(inc);
    let f = estimate_development_factors(&cum)?;
    let year = || cfg.year.expect("validated with the config");
    let ev = match cfg.stat {
        Statistic::ReserveAy => Evaluation {
            value: reserves(&cum, &f)?.by_year[year() - 1],
            impacts: impact_reserve_ay(&cum, &f, year())?,
        },
        Statistic::ReserveTotal => Evaluation {
            value: reserves(&cum, &f)?.total,
            impacts: impact_reserve_total(&cum, &f)?,
        },
        Statistic::BfAy => {
            let p = priors(cfg, inc)?;
            Evaluation {
                value: bf_reserves(&cum, &f, &p)?.by_year[year() - 1],
                impacts: impact_bf_ay(&cum, &f, &p, year())?,
            }
        }
        Statistic::BfTotal => {
            let p = priors(cfg, inc)?;
            Evaluation {
                value: bf_reserves(&cum, &f, &p)?.total,
                impacts: impact_bf_total(&cum, &f, &p)?,
            }
        }
        Statistic::MseAy | Statistic::RmseAy => {
            let s = estimate_sigmas(&cum, &f)?;
            let mse = mse_accident_year(&cum, &f, &s, year())?;
            let im = impact_mse_ay(&cum, &f, &s, year())?;
            if cfg.stat == Statistic::MseAy {
                Evaluation {
                    value: mse,
                    impacts: im,
                }
            } else {
                Evaluation {
                    value: mse.sqrt(),
                    impacts: impact_rmse(mse, &im)?,
                }
            }
        }
        Statistic::MseTotal | Statistic::RmseTotal => {
            let s = estimate_sigmas(&cum, &f)?;
            let mse = mse_total(&cum, &f, &s)?;
            let im = impact_mse_total(&cum, &f, &s)?;
            if cfg.stat == Statistic::MseTotal {
                Evaluation {
                    value: mse,
                    impacts: im,
                }
            } else {
                Evaluation {
                    value: mse.sqrt(),
                    impacts: impact_rmse(mse, &im)?,
                }
            }
        }
        Statistic::Quantile => {
            let s = estimate_sigmas(&cum, &f)?;
            let fit = fit_lognormal(reserves(&cum, &f)?.total, mse_total(&cum, &f, &s)?)?;
            Evaluation {
                value: lognormal_quantile(&fit, cfg.q)?,
                impacts: impact_quantile(&cum, &f, &s, cfg.q)?,
            }
        }
        Statistic::Marginal => {
            let base = RunConfig {
                stat: if cfg.year.is_some() {
                    Statistic::ReserveAy
                } else {
                    Statistic::ReserveTotal
                },
                ..cfg.clone()
            };
            return marginal(&base, inc);
        }
    };
    if cfg.mode == Mode::Marginal {
        return Ok(Evaluation {
            value: ev.value,
            impacts: marginal_contributions(&ev.impacts, inc)?,
        });
    }
    Ok(ev)
}

fn marginal(base: &RunConfig, inc: &IncrementalTriangle) -> Result<Evaluation, CliError> {
    let ev = evaluate(base, inc)?;
    Ok(Evaluation {
        value: ev.value,
        impacts: marginal_contributions(&ev.impacts, inc)?,
    })
}

/// Finite-difference check of the impacts behind the configured statistic.
pub fn verify(cfg: &RunConfig, inc: &IncrementalTriangle) -> Result<VerificationReport, CliError> {
    check_year(cfg, inc.dim())?;
    let report = match cfg.stat {
        Statistic::ReserveTotal => verify_reserve_impacts(inc, &ReserveTarget::Total, &cfg.scheme, cfg.tolerance)?,
        Statistic::ReserveAy => {
            let target = ReserveTarget::Year(cfg.year.expect("validated with the config"));
            verify_reserve_impacts(inc, &target, &cfg.scheme, cfg.tolerance)?
        }
        Statistic::Marginal => {
            let target = cfg.year.map_or(ReserveTarget::Total, ReserveTarget::Year);
            verify_reserve_impacts(inc, &target, &cfg.scheme, cfg.tolerance)?
        }
        Statistic::BfTotal => {
            let target = ReserveTarget::BfTotal(priors(cfg, inc)?);
            verify_reserve_impacts(inc, &target, &cfg.scheme, cfg.tolerance)?
        }
        Statistic::BfAy => {
            let target = ReserveTarget::BfYear(cfg.year.expect("validated with the config"), priors(cfg, inc)?);
            verify_reserve_impacts(inc, &target, &cfg.scheme, cfg.tolerance)?
        }
        Statistic::MseAy | Statistic::MseTotal | Statistic::RmseAy | Statistic::RmseTotal => {
            verify_mse_components(inc, &cfg.scheme, cfg.tolerance)?
        }
        Statistic::Quantile => verify_quantile_impacts(inc, cfg.q, &cfg.scheme, cfg.tolerance)?,
    };
    Ok(report)
}

pub fn reserve_table(cfg: &RunConfig, inc: &IncrementalTriangle) -> Result<ReserveTable, CliError> {
    let m = MackSummary::from_incremental(inc)?;
    let cum = cumulate(inc);
    let bf = bf_reserves(&cum, &m.factors, &priors(cfg, inc)?)?;
    let dim = inc.dim();
    let rows: Vec<ReserveRow> = (1..=dim)
        .map(|i| ReserveRow {
            i,
            latest: cum.get(i, dim + 1 - i).expect("observed"),
            ultimate: m.ultimates[i - 1],
            reserve: m.reserves[i - 1],
            rmse: m.rmse(i),
            bf_reserve: bf.by_year[i - 1],
        })
        .collect();
    let total = ReserveRow {
        i: 0,
        latest: rows.iter().map(|r| r.latest).sum(),
        ultimate: m.ultimates.iter().sum(),
        reserve: m.total_reserve,
        rmse: m.rmse_total(),
        bf_reserve: bf.total,
    };
    Ok(ReserveTable { rows, total })
}

fn write_out(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            }),
    }
}

fn check_report(report: &VerificationReport) -> Result<(), CliError> {
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification {
            subject: report.subject.clone(),
            max_rel_error: report.max_rel_error(),
            tolerance: report.tolerance,
        })
    }
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let inc = ingest(&cfg.input)?;
    match cfg.mode {
        Mode::Reserves => {
            let table = reserve_table(cfg, &inc)?;
            let text = match cfg.format {
                Format::Json => reserves_json(&table),
                _ => reserves_csv(&table),
            };
            write_out(cfg, &text)
        }
        Mode::Verify => {
            let report = verify(cfg, &inc)?;
            let text = match cfg.format {
                Format::Json => report_json(&report),
                _ => report_csv(&report),
            };
            write_out(cfg, &text)?;
            eprintln!(
                "{}: {} cells, max relative error {:.3e} (tolerance {:.1e})",
                report.subject,
                report.cells.len(),
                report.max_rel_error(),
                report.tolerance
            );
            check_report(&report)
        }
        Mode::Impact | Mode::Marginal | Mode::Heatmap => {
            let ev = evaluate(cfg, &inc)?;
            let text = match cfg.format {
                Format::Csv => impact_csv(&ev.impacts),
                Format::Json => impact_json(&ev.impacts, ev.value),
                Format::Svg => render_svg(&ev.impacts),
            };
            write_out(cfg, &text)?;
            if cfg.verify {
                let report = verify(cfg, &inc)?;
                eprintln!(
                    "{}: max relative error {:.3e} (tolerance {:.1e})",
                    report.subject,
                    report.max_rel_error(),
                    report.tolerance
                );
                check_report(&report)?;
            }
            Ok(())
        }
    }
}
