use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ppm_link::channels::OrderMode;
use ppm_link::montecarlo::{estimate_mi, simulate, Scheme, SimConfig};
use ppm_link::optimizer::{maximize_ook_prior, maximize_ppm_order};
use rayon::prelude::*;

use crate::format::sig12;
use crate::pie::{analytic_point, budget, numeric_point, Point};
use crate::{CliError, CliResult, SchemeArg};

pub const HEADER: &str = "na,nb,scheme,method,param,bits_per_bin,pie";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum SweepMethod {
    Analytic,
    Numeric,
    Montecarlo,
}

impl SweepMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMethod::Analytic => "analytic",
            SweepMethod::Numeric => "numeric",
            SweepMethod::Montecarlo => "montecarlo",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub na_start: f64,
    #[arg(long)]
    pub na_stop: f64,
    #[arg(long, default_value_t = 10)]
    pub points_per_decade: u32,
    /// Noise ratios r = n_b / n_a.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub ratios: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ppm,ook")]
    pub schemes: Vec<SchemeArg>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "analytic,numeric"
    )]
    pub methods: Vec<SweepMethod>,
    /// Frames per Monte Carlo row.
    #[arg(long, default_value_t = 1_000_000)]
    pub frames: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A validated sweep: grid, ratios, schemes and methods in output order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub na_start: f64,
    pub na_stop: f64,
    pub points_per_decade: u32,
    pub noise_ratios: Vec<f64>,
    pub schemes: Vec<SchemeArg>,
    pub methods: Vec<SweepMethod>,
    pub frames: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn from_args(args: &SweepArgs) -> CliResult<Self> {
        let usage = |m: &str| Err(CliError::Usage(m.into()));
        if !(args.na_start > 0.0 && args.na_start.is_finite()) {
            return usage("--na-start must be positive");
        }
        if !(args.na_stop >= args.na_start && args.na_stop.is_finite()) {
            return usage("--na-stop must not be below --na-start");
        }
        if args.points_per_decade == 0 {
            return usage("--points-per-decade must be at least 1");
        }
        if args.ratios.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
            return usage("--ratios must be non-negative");
        }
        let mut noise_ratios = args.ratios.clone();
        noise_ratios.sort_by(f64::total_cmp);
        noise_ratios.dedup();
        let mut schemes = args.schemes.clone();
        schemes.sort();
        schemes.dedup();
        let mut methods = args.methods.clone();
        methods.sort();
        methods.dedup();
        Ok(Self {
            na_start: args.na_start,
            na_stop: args.na_stop,
            points_per_decade: args.points_per_decade,
            noise_ratios,
            schemes,
            methods,
            frames: args.frames,
            seed: args.seed,
        })
    }

    /// `na_start * 10^(k / points_per_decade)` up to and including `na_stop`.
    pub fn grid(&self) -> Vec<f64> {
        let ppd = f64::from(self.points_per_decade);
        let decades = (self.na_stop / self.na_start).log10();
        let steps = (decades * ppd + 1e-9).floor() as u32;
        let mut grid: Vec<f64> = (0..=steps)
            .map(|k| self.na_start * 10f64.powf(f64::from(k) / ppd))
            .collect();
        let last = grid.last_mut().expect("grid has at least one point");
        if (*last / self.na_stop - 1.0).abs() < 1e-9 {
            *last = self.na_stop;
        } else {
            grid.push(self.na_stop);
        }
        grid
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub na: f64,
    pub nb: f64,
    pub scheme: SchemeArg,
    pub method: SweepMethod,
    pub point: Point,
}

impl Row {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            sig12(self.na),
            sig12(self.nb),
            self.scheme.as_str(),
            self.method.as_str(),
            sig12(self.point.param),
            sig12(self.point.bits_per_bin),
            sig12(self.point.pie),
        )
    }
}

fn montecarlo_point(
    na: f64,
    nb: f64,
    scheme: SchemeArg,
    frames: u64,
    seed: u64,
) -> CliResult<Point> {
    let b = budget(na, nb)?;
    let (scheme, param) = match scheme {
        SchemeArg::Ppm => {
            let m = maximize_ppm_order(&b, OrderMode::Integer)?.best_param;
            let order = u32::try_from(m as u64).map_err(|_| {
                CliError::Usage(format!("optimal order {m} is too large to simulate"))
            })?;
            (Scheme::Ppm { order }, m)
        }
        SchemeArg::Ook => {
            let q = maximize_ook_prior(&b)?.best_param;
            (Scheme::Ook { prior: q }, q)
        }
    };
    let channel = simulate(&SimConfig::new(b, scheme, frames, seed)?)?;
    let estimate = estimate_mi(&channel)?;
    Ok(Point {
        param,
        bits_per_bin: estimate.bits_per_bin,
        pie: estimate.bits_per_bin / na,
    })
}

/// Evaluates every row of `spec` in output order.
pub fn rows(spec: &SweepSpec) -> CliResult<Vec<Row>> {
    let mut cells = Vec::new();
    for na in spec.grid() {
        for &r in &spec.noise_ratios {
            for &scheme in &spec.schemes {
                for &method in &spec.methods {
                    cells.push((na, r * na, scheme, method));
                }
            }
        }
    }
    cells
        .into_par_iter()
        .enumerate()
        .map(|(index, (na, nb, scheme, method))| {
            let point = match method {
                SweepMethod::Analytic => analytic_point(na, nb, scheme)?,
                SweepMethod::Numeric => numeric_point(na, nb, scheme)?,
                SweepMethod::Montecarlo => {
                    let seed = spec.seed.wrapping_add(index as u64);
                    montecarlo_point(na, nb, scheme, spec.frames, seed)?
                }
            };
            Ok(Row {
                na,
                nb,
                scheme,
                method,
                point,
            })
        })
        .collect()
}

pub fn run(args: &SweepArgs) -> CliResult<String> {
    let spec = SweepSpec::from_args(args)?;
    let mut out = String::from(HEADER);
    out.push('\n');
    for row in rows(&spec)? {
        writeln!(out, "{}", row.to_csv()).expect("writing to a String");
    }
    Ok(out)
}
