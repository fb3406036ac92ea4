//! Scalar kernels shared by every information formula: the principal branch
//! of the Lambert W function, entropy terms and the background-noise penalty.
//!
//! Everything here works in natural logarithms internally. Functions whose
//! name ends in `2` (or that are documented as returning bits) convert with a
//! single multiplication by `log2(e)` on the way out.

use std::f64::consts::{E, LOG2_E};

use crate::error::{domain, finite, Result};

/// `1/e`, the magnitude of the Lambert W branch point.
const INV_E: f64 = 0.36787944117144233;

/// Slack allowed below `-1/e` before an argument is rejected.
const BRANCH_TOLERANCE: f64 = 1e-12;

const HALLEY_MAX_ITER: usize = 50;
const HALLEY_REL_STEP: f64 = 1e-14;

/// Argument of the principal Lambert W branch, validated to lie in
/// `[-1/e, +inf)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WArgument(f64);

impl WArgument {
    pub fn new(x: f64) -> Result<Self> {
        let x = finite("Lambert W argument", x)?;
        if x < -INV_E - BRANCH_TOLERANCE {
            return Err(domain(format!(
                "Lambert W argument must be >= -1/e (got {x})"
            )));
        }
        Ok(Self(x.max(-INV_E)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Principal branch `W0(x)`, the solution `w >= -1` of `w * exp(w) = x`.
    pub fn w0(self) -> f64 {
        let x = self.0;
        if x == 0.0 {
            return 0.0;
        }
        if x + INV_E <= 0.0 {
            return -1.0;
        }
        halley(x, seed(x)).max(-1.0)
    }
}

/// Principal branch of the Lambert W function.
///
/// Halley iteration on `w * exp(w) - x`; converges to a relative residual
/// near machine precision over the whole domain.
pub fn lambert_w0(x: f64) -> Result<f64> {
    Ok(WArgument::new(x)?.w0())
}

/// Two-term large-argument expansion `ln x - ln ln x`.
///
/// Only meaningful for `x > e`; it under-estimates `W0(x)` there and the gap
/// closes like `ln ln x / ln x`.
pub fn lambert_w0_asymptotic(x: f64) -> Result<f64> {
    let x = finite("x", x)?;
    if x <= E {
        return Err(domain(format!(
            "asymptotic Lambert W needs x > e (got {x})"
        )));
    }
    let lx = x.ln();
    Ok(lx - lx.ln())
}

fn seed(x: f64) -> f64 {
    if x > E {
        let lx = x.ln();
        lx - lx.ln()
    } else if x < -0.25 {
        // Series about the branch point in p = sqrt(2 (e x + 1)).
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x.abs() <= 0.25 {
        x * (1.0 - x)
    } else {
        x.ln_1p()
    }
}

fn halley(x: f64, mut w: f64) -> f64 {
    for _ in 0..HALLEY_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= HALLEY_REL_STEP * w.abs() {
            break;
        }
    }
    w
}

/// `1 - exp(-x)` without cancellation for small `x`.
#[inline]
pub fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `x ln x` with the `0 ln 0 = 0` convention applied explicitly.
#[inline]
pub(crate) fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `x log2 x`, exactly zero at `x = 0`.
pub fn xlog2x(x: f64) -> Result<f64> {
    let x = finite("x", x)?;
    if x < 0.0 {
        return Err(domain(format!("x log2 x needs x >= 0 (got {x})")));
    }
    Ok(xlnx(x) * LOG2_E)
}

/// Binary entropy in nats. Caller guarantees `0 <= p <= 1`.
#[inline]
pub(crate) fn binary_entropy_nats(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    -(xlnx(p) + (1.0 - p) * (-p).ln_1p())
}

/// Binary entropy `H(x)` in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = finite("x", x)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!(
            "binary entropy needs 0 <= x <= 1 (got {x})"
        )));
    }
    Ok((binary_entropy_nats(x) * LOG2_E).clamp(0.0, 1.0))
}

/// `g(x) = (x+1) ln(x+1) - x ln x` in nats, for `x >= 0`.
#[inline]
pub(crate) fn noise_penalty_nats(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    // Rewritten as ln(1+x) + x ln(1 + 1/x) to avoid cancellation at large x.
    x.ln_1p() + x * x.recip().ln_1p()
}

/// Background-noise penalty `g(x) = (x+1) log2(x+1) - x log2 x` in bits,
/// with `g(0) = 0`.
pub fn noise_penalty_g(x: f64) -> Result<f64> {
    let x = finite("x", x)?;
    if x < 0.0 {
        return Err(domain(format!("noise penalty needs x >= 0 (got {x})")));
    }
    Ok(noise_penalty_nats(x) * LOG2_E)
}
