//! Frame-by-frame simulation of Poissonian direct detection and plug-in
//! estimation of mutual information from the resulting joint counts.
//!
//! Frames are grouped into fixed-size blocks and each block draws from its
//! own ChaCha8 stream keyed by the block index, so a given seed yields the
//! same counts regardless of how many threads run the blocks.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::LOG2_E;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{mi_ook_noisy, mi_ppm_noisy, LinkBudget, PpmOrder, PulseProbability};
use crate::error::{Error, Result};
use crate::special::one_minus_exp_neg;

/// Frames drawn from one RNG stream.
pub const FRAMES_PER_BLOCK: u64 = 1 << 16;

/// Largest dense tally allocated per block; bigger tables are kept sparse.
const DENSE_CELLS: usize = 1 << 16;

const BOOTSTRAP_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "scheme")]
pub enum Scheme {
    Ppm { order: u32 },
    Ook { prior: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub budget: LinkBudget,
    pub scheme: Scheme,
    pub frames: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(budget: LinkBudget, scheme: Scheme, frames: u64, seed: u64) -> Result<Self> {
        if frames == 0 {
            return Err(Error::Config("frames must be at least 1".into()));
        }
        match scheme {
            Scheme::Ppm { order } => {
                PpmOrder::integer(order as u64)?;
            }
            Scheme::Ook { prior } => {
                PulseProbability::new(prior)?;
            }
        }
        Ok(Self {
            budget,
            scheme,
            frames,
            seed,
        })
    }

    /// Exact information rate of the simulated channel, bits per bin.
    pub fn exact_bits_per_bin(&self) -> Result<f64> {
        Ok(match self.scheme {
            Scheme::Ppm { order } => {
                mi_ppm_noisy(&self.budget, PpmOrder::integer(order as u64)?).bits_per_bin
            }
            Scheme::Ook { prior } => {
                mi_ook_noisy(&self.budget, PulseProbability::new(prior)?).bits_per_bin
            }
        })
    }
}

/// Joint input-by-outcome counts of a simulated channel.
///
/// PPM: inputs are pulse positions `0..M`, outcomes are the decoded bin
/// `0..M` plus an erasure outcome at index `M`. OOK: input 1 is a pulse,
/// outcome 1 is a click.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalChannel {
    inputs: usize,
    outputs: usize,
    bins_per_use: u32,
    cells: BTreeMap<(u32, u32), u64>,
}

impl EmpiricalChannel {
    /// Builds a channel from explicit nonzero cells.
    pub fn from_counts(
        inputs: usize,
        outputs: usize,
        bins_per_use: u32,
        counts: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self> {
        if inputs == 0 || outputs == 0 || bins_per_use == 0 {
            return Err(Error::Config("channel dimensions must be positive".into()));
        }
        let mut cells = BTreeMap::new();
        for ((i, j), n) in counts {
            if i >= inputs || j >= outputs {
                return Err(Error::Config(format!("cell ({i}, {j}) out of range")));
            }
            if n > 0 {
                let slot = cells.entry((i as u32, j as u32)).or_insert(0u64);
                *slot = slot
                    .checked_add(n)
                    .ok_or_else(|| Error::Config("count overflow".into()))?;
            }
        }
        Ok(Self {
            inputs,
            outputs,
            bins_per_use,
            cells,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    /// Time bins covered by one channel use (M for PPM, 1 for OOK).
    pub fn bins_per_use(&self) -> u32 {
        self.bins_per_use
    }

    pub fn count(&self, input: usize, output: usize) -> u64 {
        self.cells
            .get(&(input as u32, output as u32))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero cells in row-major order.
    pub fn joint_counts(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.cells
            .iter()
            .map(|(&(i, j), &n)| ((i as usize, j as usize), n))
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    pub fn input_totals(&self) -> Vec<u64> {
        let mut rows = vec![0; self.inputs];
        for (&(i, _), &n) in &self.cells {
            rows[i as usize] += n;
        }
        rows
    }

    pub fn output_totals(&self) -> Vec<u64> {
        let mut cols = vec![0; self.outputs];
        for (&(_, j), &n) in &self.cells {
            cols[j as usize] += n;
        }
        cols
    }
}

enum Tally {
    Dense { outputs: usize, counts: Vec<u64> },
    Sparse(HashMap<(u32, u32), u64>),
}

impl Tally {
    fn new(inputs: usize, outputs: usize) -> Self {
        if inputs * outputs <= DENSE_CELLS {
            Tally::Dense {
                outputs,
                counts: vec![0; inputs * outputs],
            }
        } else {
            Tally::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn add(&mut self, input: usize, output: usize) {
        match self {
            Tally::Dense { outputs, counts } => counts[input * *outputs + output] += 1,
            Tally::Sparse(map) => *map.entry((input as u32, output as u32)).or_insert(0) += 1,
        }
    }

    fn into_cells(self) -> BTreeMap<(u32, u32), u64> {
        match self {
            Tally::Dense { outputs, counts } => counts
                .into_iter()
                .enumerate()
                .filter(|&(_, n)| n > 0)
                .map(|(k, n)| (((k / outputs) as u32, (k % outputs) as u32), n))
                .collect(),
            Tally::Sparse(map) => map.into_iter().collect(),
        }
    }
}

fn merge(
    mut a: BTreeMap<(u32, u32), u64>,
    b: BTreeMap<(u32, u32), u64>,
) -> BTreeMap<(u32, u32), u64> {
    for (k, n) in b {
        *a.entry(k).or_insert(0) += n;
    }
    a
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs the simulation on the current rayon pool.
///
/// PPM frames: uniform pulse position; the pulse bin clicks with `p_c` and
/// each of the other `M - 1` bins independently with `p_b` (drawn here as a
/// binomial count plus a uniform position, which has the same law); exactly
/// one click decodes to that bin, anything else is an erasure.
pub fn simulate(config: &SimConfig) -> Result<EmpiricalChannel> {
    let config = SimConfig::new(config.budget, config.scheme, config.frames, config.seed)?;
    let na = config.budget.signal();
    let nb = config.budget.background();
    let pb = one_minus_exp_neg(nb);

    let (inputs, outputs, bins_per_use) = match config.scheme {
        Scheme::Ppm { order } => (order as usize, order as usize + 1, order),
        Scheme::Ook { .. } => (2, 2, 1),
    };

    let blocks = config.frames.div_ceil(FRAMES_PER_BLOCK);
    let run_block = |block: u64| -> Result<BTreeMap<(u32, u32), u64>> {
        let mut rng = block_rng(config.seed, block);
        let start = block * FRAMES_PER_BLOCK;
        let frames = FRAMES_PER_BLOCK.min(config.frames - start);
        let mut tally = Tally::new(inputs, outputs);
        match config.scheme {
            Scheme::Ppm { order } => {
                let m = order as usize;
                let pc = one_minus_exp_neg(nb + order as f64 * na);
                let background = Binomial::new(order as u64 - 1, pb)
                    .map_err(|e| Error::Config(e.to_string()))?;
                for _ in 0..frames {
                    let sent = rng.random_range(0..m);
                    let pulse_click = rng.random::<f64>() < pc;
                    let others = if pb > 0.0 {
                        background.sample(&mut rng)
                    } else {
                        0
                    };
                    let decoded = match (pulse_click, others) {
                        (true, 0) => sent,
                        (false, 1) => {
                            let j = rng.random_range(0..m - 1);
                            if j >= sent {
                                j + 1
                            } else {
                                j
                            }
                        }
                        _ => m,
                    };
                    tally.add(sent, decoded);
                }
            }
            Scheme::Ook { prior } => {
                let pc = one_minus_exp_neg(nb + na / prior);
                for _ in 0..frames {
                    let pulse = rng.random::<f64>() < prior;
                    let p = if pulse { pc } else { pb };
                    let click = rng.random::<f64>() < p;
                    tally.add(pulse as usize, click as usize);
                }
            }
        }
        Ok(tally.into_cells())
    };

    let cells = (0..blocks)
        .into_par_iter()
        .map(run_block)
        .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))?;

    Ok(EmpiricalChannel {
        inputs,
        outputs,
        bins_per_use,
        cells,
    })
}

/// Plug-in information estimate with its leading-order bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiEstimate {
    pub bits_per_bin: f64,
    /// Expected upward bias `(|X|-1)(|Y|-1) / (2 N ln 2)`, per bin. Not
    /// subtracted from `bits_per_bin`.
    pub bias_bits_per_bin: f64,
    pub frames: u64,
}

fn plug_in_nats(
    cells: impl Iterator<Item = ((usize, usize), u64)>,
    rows: &[u64],
    cols: &[u64],
    total: u64,
) -> f64 {
    let n = total as f64;
    let mut nats = 0.0;
    for ((i, j), c) in cells {
        if c == 0 {
            continue;
        }
        let c = c as f64;
        nats += c * (c * n / (rows[i] as f64 * cols[j] as f64)).ln();
    }
    (nats / n).max(0.0)
}

pub fn estimate_mi(channel: &EmpiricalChannel) -> Result<MiEstimate> {
    let total = channel.total();
    if total == 0 {
        return Err(Error::Config("channel has no counts".into()));
    }
    let rows = channel.input_totals();
    let cols = channel.output_totals();
    let nats = plug_in_nats(channel.joint_counts(), &rows, &cols, total);
    let bins = channel.bins_per_use as f64;
    let bias = (channel.inputs - 1) as f64 * (channel.outputs - 1) as f64
        / (2.0 * total as f64 * std::f64::consts::LN_2);
    Ok(MiEstimate {
        bits_per_bin: nats * LOG2_E / bins,
        bias_bits_per_bin: bias / bins,
        frames: total,
    })
}

/// Bootstrap standard deviation of the plug-in estimate, in bits per bin.
///
/// Resampling frames with replacement is the same as drawing a multinomial
/// table from the observed cell frequencies, which is what is done here.
pub fn bootstrap_sigma(channel: &EmpiricalChannel, resamples: usize, seed: u64) -> Result<f64> {
    let total = channel.total();
    if total == 0 {
        return Err(Error::Config("channel has no counts".into()));
    }
    if resamples < 2 {
        return Err(Error::Config("bootstrap needs at least 2 resamples".into()));
    }
    let cells: Vec<((usize, usize), u64)> = channel.joint_counts().collect();
    let bins = channel.bins_per_use as f64;

    let estimates: Vec<f64> = (0..resamples as u64)
        .into_par_iter()
        .map(|r| -> Result<f64> {
            let mut rng = block_rng(seed.wrapping_add(BOOTSTRAP_SEED_OFFSET), r);
            let mut remaining_n = total;
            let mut remaining_mass = total;
            let mut drawn = Vec::with_capacity(cells.len());
            for &(cell, c) in &cells {
                let k = if remaining_mass == c {
                    remaining_n
                } else if remaining_n == 0 {
                    0
                } else {
                    let p = (c as f64 / remaining_mass as f64).min(1.0);
                    Binomial::new(remaining_n, p)
                        .map_err(|e| Error::Config(e.to_string()))?
                        .sample(&mut rng)
                };
                remaining_n -= k;
                remaining_mass -= c;
                drawn.push((cell, k));
            }
            let mut rows = vec![0u64; channel.inputs];
            let mut cols = vec![0u64; channel.outputs];
            for &((i, j), k) in &drawn {
                rows[i] += k;
                cols[j] += k;
            }
            Ok(plug_in_nats(drawn.into_iter(), &rows, &cols, total) * LOG2_E / bins)
        })
        .collect::<Result<_>>()?;

    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    let var =
        estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (estimates.len() - 1) as f64;
    Ok(var.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub exact_bits_per_bin: f64,
    pub empirical_bits_per_bin: f64,
    pub bias_bits_per_bin: f64,
    pub bootstrap_sigma: f64,
    /// `|empirical - exact| / sigma`.
    pub deviation_sigmas: f64,
    pub pass: bool,
}

/// Simulates `config`, estimates the information rate and compares it with
/// the exact formula at `threshold_sigmas` bootstrap standard deviations.
pub fn validate(
    config: &SimConfig,
    resamples: usize,
    threshold_sigmas: f64,
) -> Result<ValidationReport> {
    let exact = config.exact_bits_per_bin()?;
    let channel = simulate(config)?;
    let estimate = estimate_mi(&channel)?;
    let sigma = bootstrap_sigma(&channel, resamples, config.seed)?;
    let diff = (estimate.bits_per_bin - exact).abs();
    let deviation = if sigma > 0.0 {
        diff / sigma
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ValidationReport {
        exact_bits_per_bin: exact,
        empirical_bits_per_bin: estimate.bits_per_bin,
        bias_bits_per_bin: estimate.bias_bits_per_bin,
        bootstrap_sigma: sigma,
        deviation_sigmas: deviation,
        pass: deviation <= threshold_sigmas,
    })
}
