use std::path::PathBuf;

use clap::Args;
use ppm_link::channels::OrderMode;
use ppm_link::montecarlo::{self, Scheme, SimConfig, ValidationReport};
use ppm_link::optimizer::{maximize_ook_prior, maximize_ppm_order};
use serde::Serialize;

use crate::pie::budget;
use crate::{CliError, CliResult, SchemeArg};

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, allow_negative_numbers = true)]
    pub na: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nb: f64,
    /// PPM order; defaults to the integer optimum.
    #[arg(long, conflicts_with = "prior")]
    pub order: Option<u32>,
    /// OOK pulse probability; defaults to the numeric optimum.
    #[arg(long)]
    pub prior: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub frames: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bootstrap resamples.
    #[arg(long, default_value_t = 50)]
    pub resamples: usize,
    /// Pass threshold in bootstrap standard deviations.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct ValidateOutput {
    pub config: SimConfig,
    pub resamples: usize,
    pub threshold_sigmas: f64,
    #[serde(flatten)]
    pub report: ValidationReport,
    pub verdict: &'static str,
}

pub fn evaluate(args: &ValidateArgs) -> CliResult<ValidateOutput> {
    let b = budget(args.na, args.nb)?;
    let scheme = match (args.scheme, args.order, args.prior) {
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
        (SchemeArg::Ppm, Some(order), None) => Scheme::Ppm { order },
        (SchemeArg::Ppm, None, None) => {
            let m = maximize_ppm_order(&b, OrderMode::Integer)?.best_param;
            let order = u32::try_from(m as u64).map_err(|_| {
                CliError::Usage(format!("optimal order {m} is too large to simulate"))
            })?;
            Scheme::Ppm { order }
        }
        (SchemeArg::Ook, None, Some(prior)) => Scheme::Ook { prior },
        (SchemeArg::Ook, None, None) => Scheme::Ook {
            prior: maximize_ook_prior(&b)?.best_param,
        },
    };
    if args.resamples < 2 {
        return Err(CliError::Usage("--resamples must be at least 2".into()));
    }
    let config = SimConfig::new(b, scheme, args.frames, args.seed)?;
    let report = montecarlo::validate(&config, args.resamples, args.sigmas)?;
    Ok(ValidateOutput {
        config,
        resamples: args.resamples,
        threshold_sigmas: args.sigmas,
        report,
        verdict: if report.pass { "pass" } else { "fail" },
    })
}

pub fn run(args: &ValidateArgs) -> CliResult<String> {
    let mut json = serde_json::to_string(&evaluate(args)?)?;
    json.push('\n');
    Ok(json)
}
