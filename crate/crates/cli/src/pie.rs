use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ppm_link::approximations::{
    analytic_ook_prior, opt_order_noisy, pie_ook_noisy, pie_ppm_noisy, GammaFactor, NoiseRatio,
};
use ppm_link::channels::{
    mi_ook_noisy, mi_ppm_noisy, LinkBudget, OrderMode, PpmOrder, PulseProbability,
};
use ppm_link::optimizer::{maximize_ook_prior, maximize_ppm_order};
use ppm_link::Error;
use serde::Serialize;

use crate::{CliError, CliResult, SchemeArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PieMethod {
    /// Exact information rate, optimized numerically unless a parameter is given.
    Exact,
    /// Closed-form approximation at the optimum.
    Analytic,
}

#[derive(Debug, Args)]
pub struct PieArgs {
    /// Mean signal photons per time bin.
    #[arg(long, allow_negative_numbers = true)]
    pub na: f64,
    /// Mean background counts per time bin.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nb: f64,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    /// PPM order M (ppm only); optimized when omitted.
    #[arg(long, conflicts_with = "prior")]
    pub order: Option<f64>,
    /// OOK pulse probability q (ook only); optimized when omitted.
    #[arg(long)]
    pub prior: Option<f64>,
    #[arg(long, value_enum, default_value_t = PieMethod::Exact)]
    pub method: PieMethod,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One evaluated operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub param: f64,
    pub bits_per_bin: f64,
    pub pie: f64,
}

/// JSON object printed by `pie`. Keys form a closed set.
#[derive(Debug, Serialize)]
pub struct PieReport {
    pub scheme: &'static str,
    pub method: &'static str,
    pub na: f64,
    pub nb: f64,
    /// "order" for PPM, "prior" for OOK.
    pub param_name: &'static str,
    pub param: f64,
    pub optimized: bool,
    pub bits_per_bin: f64,
    pub pie: f64,
}

pub(crate) fn budget(na: f64, nb: f64) -> CliResult<LinkBudget> {
    if na.is_nan() || na <= 0.0 {
        return Err(Error::Domain("n_a must be positive".into()).into());
    }
    Ok(LinkBudget::new(na, nb)?)
}

/// Closed-form efficiency and the parameter the approximation optimizes to.
pub fn analytic_point(na: f64, nb: f64, scheme: SchemeArg) -> CliResult<Point> {
    let b = budget(na, nb)?;
    let r = NoiseRatio::new(nb / na)?;
    let (param, pie) = match scheme {
        SchemeArg::Ppm => (
            opt_order_noisy(na, GammaFactor::from_ratio(r))?.order,
            pie_ppm_noisy(b.signal(), b.background())?,
        ),
        SchemeArg::Ook => (analytic_ook_prior(na)?, pie_ook_noisy(na, r)?),
    };
    Ok(Point {
        param,
        bits_per_bin: pie * na,
        pie,
    })
}

/// Numerically optimized exact rate (continuous PPM order).
pub fn numeric_point(na: f64, nb: f64, scheme: SchemeArg) -> CliResult<Point> {
    let b = budget(na, nb)?;
    let report = match scheme {
        SchemeArg::Ppm => maximize_ppm_order(&b, OrderMode::Continuous)?,
        SchemeArg::Ook => maximize_ook_prior(&b)?,
    };
    Ok(Point {
        param: report.best_param,
        bits_per_bin: report.best_bits_per_bin,
        pie: report.best_pie,
    })
}

fn fixed_point(na: f64, nb: f64, scheme: SchemeArg, param: f64) -> CliResult<Point> {
    let b = budget(na, nb)?;
    let result = match scheme {
        SchemeArg::Ppm => mi_ppm_noisy(&b, PpmOrder::continuous(param)?),
        SchemeArg::Ook => mi_ook_noisy(&b, PulseProbability::new(param)?),
    };
    Ok(Point {
        param,
        bits_per_bin: result.bits_per_bin,
        pie: result.bits_per_bin / na,
    })
}

pub fn evaluate(args: &PieArgs) -> CliResult<PieReport> {
    let given = match (args.scheme, args.order, args.prior) {
        (SchemeArg::Ppm, _, Some(_)) => {
            return Err(CliError::Usage(
                "--prior applies to --scheme ook only".into(),
            ))
        }
        (SchemeArg::Ook, Some(_), _) => {
            return Err(CliError::Usage(
                "--order applies to --scheme ppm only".into(),
            ))
        }
        (SchemeArg::Ppm, order, None) => order,
        (SchemeArg::Ook, None, prior) => prior,
    };
    if args.method == PieMethod::Analytic && given.is_some() {
        return Err(CliError::Usage(
            "--method analytic evaluates the optimum; drop --order/--prior".into(),
        ));
    }
    let point = match (args.method, given) {
        (PieMethod::Analytic, _) => analytic_point(args.na, args.nb, args.scheme)?,
        (PieMethod::Exact, Some(p)) => fixed_point(args.na, args.nb, args.scheme, p)?,
        (PieMethod::Exact, None) => numeric_point(args.na, args.nb, args.scheme)?,
    };
    Ok(PieReport {
        scheme: args.scheme.as_str(),
        method: match args.method {
            PieMethod::Exact => "exact",
            PieMethod::Analytic => "analytic",
        },
        na: args.na,
        nb: args.nb,
        param_name: match args.scheme {
            SchemeArg::Ppm => "order",
            SchemeArg::Ook => "prior",
        },
        param: point.param,
        optimized: given.is_none(),
        bits_per_bin: point.bits_per_bin,
        pie: point.pie,
    })
}

pub fn run(args: &PieArgs) -> CliResult<String> {
    let report = evaluate(args)?;
    let mut json = serde_json::to_string(&report)?;
    json.push('\n');
    Ok(json)
}
