//! Numerical maximization of the exact information rates over the PPM order
//! or the OOK prior.
//!
//! Both parameters span many decades, so the search runs in the logarithm of
//! the parameter: a coarse log-grid scan localizes the peak (and counts how
//! many local maxima it sees), then golden-section search refines it.

use serde::{Deserialize, Serialize};

use crate::channels::{ook_bits, ppm_bits, LinkBudget, OrderMode};
use crate::error::{domain, Result};

const SCAN_POINTS: usize = 64;
const REL_TOL: f64 = 1e-8;
const MAX_GOLDEN_ITER: usize = 200;
const INTEGER_NEIGHBORHOOD: u64 = 2;
/// `1/φ`, the golden-section shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    /// Optimal PPM order or OOK prior.
    pub best_param: f64,
    pub best_bits_per_bin: f64,
    pub best_pie: f64,
    pub evaluations: usize,
    pub bracket: (f64, f64),
    pub converged: bool,
    /// The coarse scan saw more than one interior local maximum.
    pub multiple_peaks: bool,
}

struct Peak {
    arg: f64,
    value: f64,
    evaluations: usize,
    converged: bool,
    multiple_peaks: bool,
}

/// Maximizes `f` over `[lo, hi]` searching in `ln x`.
fn maximize_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Peak {
    let (ulo, uhi) = (lo.ln(), hi.ln());
    let step = (uhi - ulo) / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| {
            if k == SCAN_POINTS - 1 {
                uhi
            } else {
                ulo + k as f64 * step
            }
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&u| f(u.exp())).collect();
    let mut evaluations = SCAN_POINTS;

    let best = values
        .iter()
        .enumerate()
        .fold(0, |b, (k, &v)| if v > values[b] { k } else { b });
    let interior_peaks = (1..SCAN_POINTS - 1)
        .filter(|&k| values[k] > values[k - 1] && values[k] >= values[k + 1])
        .count();

    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(SCAN_POINTS - 1)];
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c.exp());
    let mut fd = f(d.exp());
    evaluations += 2;
    let mut converged = false;
    for _ in 0..MAX_GOLDEN_ITER {
        if b - a <= REL_TOL {
            converged = true;
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c.exp());
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d.exp());
        }
        evaluations += 1;
    }

    let (refined, refined_value) = if fc >= fd { (c, fc) } else { (d, fd) };
    let arg = if values[best] > refined_value {
        grid[best]
    } else {
        refined
    };
    let arg = arg.exp().clamp(lo, hi);
    Peak {
        arg,
        value: f(arg),
        evaluations: evaluations + 1,
        converged,
        multiple_peaks: interior_peaks > 1,
    }
}

/// Search interval for the PPM order. The closed-form optimum satisfies
/// `M* γ n_a < 2`, so a tenfold margin keeps the peak interior.
pub fn ppm_order_bracket(budget: &LinkBudget) -> (f64, f64) {
    let hi = 20.0 / (budget.signal() + 2.0 * budget.background());
    (2.0, hi.max(4.0))
}

/// Search interval for the OOK prior.
pub fn ook_prior_bracket(budget: &LinkBudget) -> (f64, f64) {
    ((budget.signal() / 20.0).min(0.05), 0.5)
}

fn require_signal(budget: &LinkBudget) -> Result<()> {
    if budget.signal() > 0.0 {
        Ok(())
    } else {
        Err(domain("n_a must be positive"))
    }
}

pub fn maximize_ppm_order(budget: &LinkBudget, mode: OrderMode) -> Result<OptimizationReport> {
    require_signal(budget)?;
    let (na, nb) = (budget.signal(), budget.background());
    let objective = |m: f64| ppm_bits(na, nb, m);
    let bracket = ppm_order_bracket(budget);
    let peak = maximize_log(objective, bracket.0, bracket.1);

    let (best_param, best_bits, evaluations) = match mode {
        OrderMode::Continuous => (peak.arg, peak.value, peak.evaluations),
        OrderMode::Integer => {
            let lo = (peak.arg.floor() as u64)
                .saturating_sub(INTEGER_NEIGHBORHOOD)
                .max(2);
            let hi = peak.arg.ceil() as u64 + INTEGER_NEIGHBORHOOD;
            let mut best = (lo as f64, objective(lo as f64));
            for m in lo + 1..=hi {
                let v = objective(m as f64);
                if v > best.1 {
                    best = (m as f64, v);
                }
            }
            (best.0, best.1, peak.evaluations + (hi - lo + 1) as usize)
        }
    };

    Ok(OptimizationReport {
        best_param,
        best_bits_per_bin: best_bits,
        best_pie: best_bits / na,
        evaluations,
        bracket,
        converged: peak.converged,
        multiple_peaks: peak.multiple_peaks,
    })
}

pub fn maximize_ook_prior(budget: &LinkBudget) -> Result<OptimizationReport> {
    require_signal(budget)?;
    let (na, nb) = (budget.signal(), budget.background());
    let bracket = ook_prior_bracket(budget);
    let peak = maximize_log(|q| ook_bits(na, nb, q), bracket.0, bracket.1);
    Ok(OptimizationReport {
        best_param: peak.arg,
        best_bits_per_bin: peak.value,
        best_pie: peak.value / na,
        evaluations: peak.evaluations,
        bracket,
        converged: peak.converged,
        multiple_peaks: peak.multiple_peaks,
    })
}
