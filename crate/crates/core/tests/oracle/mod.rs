//! Reference values computed outside the crate. `frozen.rs` is produced by
//! `gen_oracles.py` (mpmath, 50 significant digits).

#[allow(dead_code)]
pub mod frozen;
