//! Exact detection probabilities and Shannon mutual information for PPM and
//! generalized OOK with Poissonian direct detection, with and without
//! background counts. All information quantities are in bits per time bin.

use std::f64::consts::LOG2_E;

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Result};
use crate::special::{binary_entropy_nats, one_minus_exp_neg};

/// Operating point of the link: mean received signal photons per time bin
/// and mean background counts per time bin.
///
/// Detector efficiency is assumed to be folded into the signal figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    signal: f64,
    background: f64,
}

impl LinkBudget {
    pub fn new(signal: f64, background: f64) -> Result<Self> {
        let signal = finite("n_a", signal)?;
        let background = finite("n_b", background)?;
        if signal < 0.0 {
            return Err(domain(format!("n_a must be non-negative (got {signal})")));
        }
        if background < 0.0 {
            return Err(domain(format!(
                "n_b must be non-negative (got {background})"
            )));
        }
        Ok(Self { signal, background })
    }

    pub fn noiseless(signal: f64) -> Result<Self> {
        Self::new(signal, 0.0)
    }

    /// Mean signal photons per bin, `n_a`.
    pub fn signal(&self) -> f64 {
        self.signal
    }

    /// Mean background counts per bin, `n_b`.
    pub fn background(&self) -> f64 {
        self.background
    }

    /// `n_b / n_a`, undefined without signal.
    pub fn noise_ratio(&self) -> Option<f64> {
        (self.signal > 0.0).then(|| self.background / self.signal)
    }

    /// Bits per photon for a given information rate, absent when `n_a = 0`.
    pub fn pie(&self, bits_per_bin: f64) -> Option<f64> {
        (self.signal > 0.0).then(|| bits_per_bin / self.signal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderMode {
    Continuous,
    Integer,
}

/// PPM frame length `M` in time bins, `M >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpmOrder {
    bins: f64,
    mode: OrderMode,
}

impl PpmOrder {
    pub fn continuous(bins: f64) -> Result<Self> {
        let bins = finite("M", bins)?;
        if bins < 2.0 {
            return Err(domain(format!("PPM order must be >= 2 (got {bins})")));
        }
        Ok(Self {
            bins,
            mode: OrderMode::Continuous,
        })
    }

    pub fn integer(bins: u64) -> Result<Self> {
        if bins < 2 {
            return Err(domain(format!("PPM order must be >= 2 (got {bins})")));
        }
        Ok(Self {
            bins: bins as f64,
            mode: OrderMode::Integer,
        })
    }

    pub fn bins(&self) -> f64 {
        self.bins
    }

    pub fn mode(&self) -> OrderMode {
        self.mode
    }
}

/// A priori probability `q` of sending a pulse in a bin, `0 < q < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct PulseProbability(f64);

impl PulseProbability {
    pub fn new(q: f64) -> Result<Self> {
        let q = finite("q", q)?;
        if !(q > 0.0 && q < 1.0) {
            return Err(domain(format!(
                "pulse probability must lie in (0, 1) (got {q})"
            )));
        }
        Ok(Self(q))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Per-bin and per-frame click probabilities for a PPM frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClickProbabilities {
    /// Pulse alone produces at least one photocount.
    pub pulse_only: f64,
    /// Background alone produces a click in an empty bin.
    pub background_only: f64,
    /// Pulse bin clicks from signal or background.
    pub pulse_or_background: f64,
    /// Only the pulse bin clicks in the frame.
    pub exclusive_correct: f64,
    /// Only one specific wrong bin clicks in the frame.
    pub single_wrong: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactNumeric,
    Analytic,
    MonteCarlo,
}

/// Information rate at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoResult {
    pub bits_per_bin: f64,
    /// Bits per received photon; `None` when `n_a = 0`.
    pub pie: Option<f64>,
    /// The PPM order or OOK prior that produced this value.
    pub param: f64,
    pub method: Method,
}

impl InfoResult {
    fn exact(budget: &LinkBudget, bits_per_bin: f64, param: f64) -> Self {
        Self {
            bits_per_bin,
            pie: budget.pie(bits_per_bin),
            param,
            method: Method::ExactNumeric,
        }
    }
}

/// The three-term split of noiseless OOK information, in bits per bin.
///
/// The first term is the PPM-like rate `q p_p log2(1/q)`; the remaining two
/// are small corrections in the photon-starved regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OokTerms {
    pub ppm_like: f64,
    pub missed_pulse: f64,
    pub output_entropy: f64,
}

impl OokTerms {
    pub fn total(&self) -> f64 {
        self.ppm_like + self.missed_pulse + self.output_entropy
    }
}

const NEGATIVE_SLACK: f64 = 1e-12;

fn clip_nonnegative(bits: f64) -> f64 {
    debug_assert!(
        bits >= -NEGATIVE_SLACK,
        "mutual information went negative: {bits}"
    );
    bits.max(0.0)
}

pub fn click_probs_ppm(budget: &LinkBudget, order: PpmOrder) -> ClickProbabilities {
    let (pulse_only, background_only, pulse_or_background, exclusive_correct, single_wrong) =
        ppm_probabilities(budget.signal, budget.background, order.bins);
    ClickProbabilities {
        pulse_only,
        background_only,
        pulse_or_background,
        exclusive_correct,
        single_wrong,
    }
}

#[inline]
fn ppm_probabilities(na: f64, nb: f64, m: f64) -> (f64, f64, f64, f64, f64) {
    let pulse = m * na;
    let pp = one_minus_exp_neg(pulse);
    let pb = one_minus_exp_neg(nb);
    let pc = one_minus_exp_neg(nb + pulse);
    // p_c (1 - p_b)^(M-1) and (1 - p_c) p_b (1 - p_b)^(M-2).
    let pe = pc * (-(m - 1.0) * nb).exp();
    let pd = pb * (-pulse - (m - 1.0) * nb).exp();
    (pp, pb, pc, pe, pd)
}

/// Simple-decision PPM information per frame, in nats.
#[inline]
fn ppm_frame_nats(pe: f64, pd: f64, m: f64) -> f64 {
    if pe == 0.0 {
        return 0.0;
    }
    let wrong = (m - 1.0) * pd;
    let spread = (wrong / pe).ln_1p();
    let mut nats = pe * (m.ln() - spread);
    if pd > 0.0 {
        nats += wrong * ((m * pd / pe).ln() - spread);
    }
    nats
}

/// Noisy PPM rate as a bare function of `(n_a, n_b, M)`; the optimizer's objective.
pub(crate) fn ppm_bits(na: f64, nb: f64, m: f64) -> f64 {
    if na == 0.0 {
        return 0.0;
    }
    let (_, _, _, pe, pd) = ppm_probabilities(na, nb, m);
    clip_nonnegative(ppm_frame_nats(pe, pd, m) / m * LOG2_E)
}

/// Noisy OOK rate as a bare function of `(n_a, n_b, q)`; the optimizer's objective.
pub(crate) fn ook_bits(na: f64, nb: f64, q: f64) -> f64 {
    if na == 0.0 {
        return 0.0;
    }
    let pb = one_minus_exp_neg(nb);
    let pc = one_minus_exp_neg(nb + na / q);
    let output = q * pc + (1.0 - q) * pb;
    let nats = binary_entropy_nats(output)
        - q * binary_entropy_nats(pc)
        - (1.0 - q) * binary_entropy_nats(pb);
    clip_nonnegative(nats * LOG2_E)
}

/// `(p_p / M) log2 M`: PPM over an M-ary erasure channel. Background is ignored.
pub fn mi_ppm_noiseless(budget: &LinkBudget, order: PpmOrder) -> InfoResult {
    let m = order.bins;
    let bits = if budget.signal == 0.0 {
        0.0
    } else {
        let pp = one_minus_exp_neg(m * budget.signal);
        clip_nonnegative(ppm_frame_nats(pp, 0.0, m) / m * LOG2_E)
    };
    InfoResult::exact(budget, bits, m)
}

/// PPM with background counts and a simple-decision receiver: frames with
/// zero or several clicks are erasures.
pub fn mi_ppm_noisy(budget: &LinkBudget, order: PpmOrder) -> InfoResult {
    let bits = ppm_bits(budget.signal, budget.background, order.bins);
    InfoResult::exact(budget, bits, order.bins)
}

/// Z-channel information `H(q p_p) - q H(p_p)` with `p_p = 1 - exp(-n_a/q)`.
/// Background is ignored.
pub fn mi_ook_noiseless(budget: &LinkBudget, q: PulseProbability) -> InfoResult {
    let bits = ook_bits(budget.signal, 0.0, q.0);
    InfoResult::exact(budget, bits, q.0)
}

/// Three-term decomposition of [`mi_ook_noiseless`].
pub fn ook_noiseless_terms(budget: &LinkBudget, q: PulseProbability) -> OokTerms {
    let q = q.0;
    let pp = one_minus_exp_neg(budget.signal / q);
    let sent = q * pp;
    OokTerms {
        ppm_like: -sent * q.log2(),
        missed_pulse: q * (1.0 - pp) * (-pp).ln_1p() * LOG2_E,
        output_entropy: -(1.0 - sent) * (-sent).ln_1p() * LOG2_E,
    }
}

/// Binary asymmetric channel information
/// `H(q p_c + (1-q) p_b) - q H(p_c) - (1-q) H(p_b)`, evaluated from the
/// entropy form directly.
pub fn mi_ook_noisy(budget: &LinkBudget, q: PulseProbability) -> InfoResult {
    let bits = ook_bits(budget.signal, budget.background, q.0);
    InfoResult::exact(budget, bits, q.0)
}
