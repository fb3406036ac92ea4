//! Photon information efficiency of pulse position modulation (PPM) and
//! generalized on-off keying (OOK) over photon-counting links with
//! background counts.
//!
//! The crate evaluates exact Shannon information rates for both formats,
//! maximizes them numerically over the PPM order or OOK prior, provides the
//! Lambert-W closed forms for the optimized efficiency, and checks all of it
//! against a seeded Monte Carlo simulation of the detector.
//!
//! ```
//! use ppm_link::approximations::pie_function_pi;
//! use ppm_link::channels::{LinkBudget, OrderMode};
//! use ppm_link::optimizer::maximize_ppm_order;
//!
//! let budget = LinkBudget::noiseless(1e-5).unwrap();
//! let numeric = maximize_ppm_order(&budget, OrderMode::Continuous).unwrap();
//! let analytic = pie_function_pi(1e-5).unwrap();
//! assert!((numeric.best_pie - analytic).abs() / numeric.best_pie < 0.01);
//! ```

pub mod approximations;
pub mod channels;
pub mod error;
pub mod montecarlo;
pub mod optimizer;
pub mod special;

pub use error::{Error, Result};
