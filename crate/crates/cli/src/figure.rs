use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ppm_link::approximations::{capacity_pie_bound, opt_order_noisy, GammaFactor, NoiseRatio};
use rayon::prelude::*;
use serde::Deserialize;

use crate::format::sig12;
use crate::pie::{analytic_point, numeric_point};
use crate::sweep::{SweepMethod, SweepSpec};
use crate::{CliError, CliResult, SchemeArg};

/// Default legend ratios and grid.
pub const DEFAULT_CONFIG: &str = include_str!("../figures.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// Optimal PPM order.
    Fig2b,
    /// Optimal mean photon number in the received pulse.
    Fig3,
    /// Optimized PPM efficiency with the capacity bound.
    Fig5,
    /// Optimized OOK efficiency with the capacity bound.
    Fig6,
}

impl FigureId {
    pub fn header(self) -> &'static str {
        match self {
            FigureId::Fig2b => "na,r,order_numeric,order_analytic",
            FigureId::Fig3 => "na,r,pulse_photons_numeric,pulse_photons_analytic",
            FigureId::Fig5 | FigureId::Fig6 => "na,r,pie_numeric,pie_analytic,capacity",
        }
    }
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub id: FigureId,
    /// JSON file overriding the legend ratios and n_a grid.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureConfig {
    /// Noisy legend entries; the noiseless curve is always included.
    pub noise_ratios: Vec<f64>,
    pub na_start: f64,
    pub na_stop: f64,
    pub points_per_decade: u32,
}

impl FigureConfig {
    pub fn load(path: Option<&std::path::Path>) -> CliResult<Self> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)?,
            None => DEFAULT_CONFIG.to_owned(),
        };
        Ok(serde_json::from_str(&text)?)
    }

    fn spec(&self) -> CliResult<SweepSpec> {
        if !(self.na_start > 0.0 && self.na_stop >= self.na_start && self.points_per_decade > 0) {
            return Err(CliError::Usage(
                "figure config has an invalid n_a grid".into(),
            ));
        }
        if self
            .noise_ratios
            .iter()
            .any(|r| !(*r >= 0.0 && r.is_finite()))
        {
            return Err(CliError::Usage(
                "figure config noise ratios must be non-negative".into(),
            ));
        }
        let mut ratios = vec![0.0];
        ratios.extend(&self.noise_ratios);
        ratios.sort_by(f64::total_cmp);
        ratios.dedup();
        Ok(SweepSpec {
            na_start: self.na_start,
            na_stop: self.na_stop,
            points_per_decade: self.points_per_decade,
            noise_ratios: ratios,
            schemes: Vec::new(),
            methods: vec![SweepMethod::Analytic, SweepMethod::Numeric],
            frames: 1,
            seed: 0,
        })
    }
}

fn row(id: FigureId, na: f64, r: f64) -> CliResult<Vec<f64>> {
    let nb = r * na;
    Ok(match id {
        FigureId::Fig2b | FigureId::Fig3 => {
            let numeric = numeric_point(na, nb, SchemeArg::Ppm)?.param;
            let analytic = opt_order_noisy(na, GammaFactor::from_ratio(NoiseRatio::new(r)?))?.order;
            if id == FigureId::Fig2b {
                vec![numeric, analytic]
            } else {
                vec![numeric * na, analytic * na]
            }
        }
        FigureId::Fig5 | FigureId::Fig6 => {
            let scheme = if id == FigureId::Fig5 {
                SchemeArg::Ppm
            } else {
                SchemeArg::Ook
            };
            vec![
                numeric_point(na, nb, scheme)?.pie,
                analytic_point(na, nb, scheme)?.pie,
                capacity_pie_bound(na)?,
            ]
        }
    })
}

pub fn render(id: FigureId, config: &FigureConfig) -> CliResult<String> {
    let spec = config.spec()?;
    let cells: Vec<(f64, f64)> = spec
        .grid()
        .into_iter()
        .flat_map(|na| spec.noise_ratios.iter().map(move |&r| (na, r)))
        .collect();
    let values = cells
        .par_iter()
        .map(|&(na, r)| row(id, na, r))
        .collect::<CliResult<Vec<_>>>()?;
    let mut out = String::from(id.header());
    out.push('\n');
    for ((na, r), vals) in cells.iter().zip(values) {
        let fields: Vec<String> = [*na, *r].into_iter().chain(vals).map(sig12).collect();
        writeln!(out, "{}", fields.join(",")).expect("writing to a String");
    }
    Ok(out)
}

pub fn run(args: &FigureArgs) -> CliResult<String> {
    let config = FigureConfig::load(args.config.as_deref())?;
    render(args.id, &config)
}
