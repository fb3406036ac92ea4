//! Closed-form results for optimized PPM and generalized OOK in the
//! photon-starved regime: Lambert-W optimal orders, the photon information
//! efficiency function `Π`, its asymptotic expansion, the noise penalty
//! corrections and the lossy bosonic capacity reference.
//!
//! All efficiencies are in bits per received photon.

use std::f64::consts::{E, LOG2_E};

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Result};
use crate::special::{lambert_w0, noise_penalty_g, noise_penalty_nats};

/// Background-to-signal ratio `r = n_b / n_a`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct NoiseRatio(f64);

impl NoiseRatio {
    pub fn new(r: f64) -> Result<Self> {
        let r = finite("noise ratio", r)?;
        if r < 0.0 {
            return Err(domain(format!("noise ratio must be >= 0 (got {r})")));
        }
        Ok(Self(r))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Second-order correction factor `γ = 1 + 2 n_b / n_a` of the exclusive
/// click probability.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GammaFactor(f64);

impl GammaFactor {
    pub fn new(gamma: f64) -> Result<Self> {
        let gamma = finite("gamma", gamma)?;
        if gamma < 1.0 {
            return Err(domain(format!("gamma must be >= 1 (got {gamma})")));
        }
        Ok(Self(gamma))
    }

    pub fn from_ratio(r: NoiseRatio) -> Self {
        Self(1.0 + 2.0 * r.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A continuous optimal PPM order together with a flag raised when the
/// estimate falls below the smallest meaningful frame length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub order: f64,
    pub below_minimum: bool,
}

impl OrderEstimate {
    fn new(order: f64) -> Self {
        Self {
            order,
            below_minimum: order < 2.0,
        }
    }
}

/// Quadratic coefficient of the noiseless click expansion `u - u²/2`.
pub const NOISELESS_QUADRATIC_COEFFICIENT: f64 = -0.5;

/// Quadratic coefficient of the exclusive-click expansion, `-γ/2`.
///
/// Differentiating `exp(-(M-1) n_b) - exp(-M (n_a + n_b))` twice in
/// `u = M n_a` at fixed `n_b/n_a` gives `-(1 + 2 n_b/n_a)`; the negative sign
/// is the one that yields the Lambert-W optimum in [`opt_order_noisy`].
pub fn noisy_quadratic_coefficient(gamma: GammaFactor) -> f64 {
    -0.5 * gamma.0
}

/// Second-order expansion `u + c u²` of a click probability in the mean
/// pulse photon number `u = M n_a`, with an explicitly signed coefficient `c`.
pub fn click_prob_quadratic(m_na: f64, coefficient: f64) -> Result<f64> {
    let u = finite("M n_a", m_na)?;
    let c = finite("coefficient", coefficient)?;
    if u < 0.0 {
        return Err(domain(format!("M n_a must be >= 0 (got {u})")));
    }
    Ok(u + c * u * u)
}

/// `W(2e/ν)` for `0 < ν < 2e`; the argument always exceeds 1.
fn w_of(nu: f64) -> Result<f64> {
    lambert_w0(2.0 * E / nu)
}

fn check_open(name: &str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value.is_finite() && value > lo && value < hi {
        Ok(value)
    } else {
        Err(domain(format!(
            "{name} must lie in ({lo}, {hi}) (got {value})"
        )))
    }
}

/// Optimal noiseless PPM order `M* = (2/n_a) / W(2e/n_a)`.
pub fn opt_order_noiseless(na: f64) -> Result<OrderEstimate> {
    let na = positive_signal(na)?;
    check_open("n_a", na, 0.0, 1.0)?;
    Ok(OrderEstimate::new(2.0 / (na * w_of(na)?)))
}

/// Optimal PPM order with background, `M* = (2/(γ n_a)) / W(2e/(γ n_a))`.
pub fn opt_order_noisy(na: f64, gamma: GammaFactor) -> Result<OrderEstimate> {
    let na = positive_signal(na)?;
    let nu = check_open("gamma * n_a", gamma.0 * na, 0.0, 1.0)?;
    Ok(OrderEstimate::new(2.0 / (nu * w_of(nu)?)))
}

/// Photon information efficiency of optimized PPM,
/// `Π(ν) = (W - 2 + 1/W) log2 e` with `W = W(2e/ν)`.
pub fn pie_function_pi(nu: f64) -> Result<f64> {
    let nu = check_open("nu", nu, 0.0, 2.0 * E)?;
    let w = w_of(nu)?;
    Ok((w - 2.0 + w.recip()) * LOG2_E)
}

/// Small-`n_a` expansion of `Π` up to the constant term:
/// `log2(1/n_a) - log2 ln(2e/n_a) - log2(e/2)`.
pub fn pie_expansion_pi(na: f64) -> Result<f64> {
    let na = check_open("n_a", na, 0.0, 2.0)?;
    Ok(-na.log2() - (2.0 * E / na).ln().log2() - (E / 2.0).log2())
}

/// Ultimate lossy bosonic capacity per photon, `g(n_a) / n_a`.
pub fn capacity_pie_bound(na: f64) -> Result<f64> {
    let na = positive_signal(na)?;
    Ok(noise_penalty_nats(na) / na * LOG2_E)
}

/// Two-term expansion `log2(1/n_a) + log2 e` of [`capacity_pie_bound`].
pub fn capacity_pie_expansion(na: f64) -> Result<f64> {
    let na = positive_signal(na)?;
    Ok(-na.log2() + LOG2_E)
}

/// Approximate efficiency of optimized generalized OOK with background:
/// `Π(n_a) - g(r)`.
pub fn pie_ook_noisy(na: f64, r: NoiseRatio) -> Result<f64> {
    let na = check_open("n_a", na, 0.0, 2.0 * E)?;
    Ok(pie_function_pi(na)? - noise_penalty_g(r.0)?)
}

/// Approximate efficiency of optimized PPM with a simple-decision receiver:
/// `Π(n_a + 2 n_b) - g(n_b / n_a)`.
pub fn pie_ppm_noisy(na: f64, nb: f64) -> Result<f64> {
    let na = positive_signal(na)?;
    let nb = finite("n_b", nb)?;
    if nb < 0.0 {
        return Err(domain(format!("n_b must be non-negative (got {nb})")));
    }
    Ok(pie_function_pi(na + 2.0 * nb)? - noise_penalty_g(nb / na)?)
}

/// Limiting PPM-versus-OOK efficiency gap `log2(1 + 2r)` at fixed ratio.
pub fn ppm_ook_gap_limit(r: NoiseRatio) -> f64 {
    (2.0 * r.0).ln_1p() * LOG2_E
}

/// Leading-order optimal pulse energy `M* n_a ≈ 2 / ln(2e/n_a)`.
pub fn mean_pulse_photons_asymptotic(na: f64) -> Result<f64> {
    let na = check_open("n_a", na, 0.0, 2.0)?;
    Ok(2.0 / (2.0 * E / na).ln())
}

/// Prior `q = 1/M*` shared by noiseless and noisy OOK in the approximation.
pub fn analytic_ook_prior(na: f64) -> Result<f64> {
    Ok(opt_order_noiseless(na)?.order.recip())
}

fn positive_signal(na: f64) -> Result<f64> {
    let na = finite("n_a", na)?;
    if na <= 0.0 {
        return Err(domain("n_a must be positive"));
    }
    Ok(na)
}
