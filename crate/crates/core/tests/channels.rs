use ppm_link::channels::{
    click_probs_ppm, mi_ook_noiseless, mi_ook_noisy, mi_ppm_noiseless, mi_ppm_noisy, LinkBudget,
    PpmOrder, PulseProbability,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mutual information in bits of a discrete memoryless channel with input
/// distribution `prior` and transition rows `channel[x][y]`.
fn dmc_bits(prior: &[f64], channel: &[Vec<f64>]) -> f64 {
    let outputs = channel[0].len();
    let py: Vec<f64> = (0..outputs)
        .map(|y| prior.iter().zip(channel).map(|(p, row)| p * row[y]).sum())
        .collect();
    let mut bits = 0.0;
    for (p, row) in prior.iter().zip(channel) {
        for (y, &w) in row.iter().enumerate() {
            if w > 0.0 && *p > 0.0 {
                bits += p * w * (w / py[y]).log2();
            }
        }
    }
    bits
}

/// PPM simple-decision channel built by enumerating every click pattern of
/// an `m`-bin frame.
fn enumerated_ppm_bits_per_bin(na: f64, nb: f64, m: usize) -> f64 {
    let pb = 1.0 - (-nb).exp();
    let pc = 1.0 - (-nb - m as f64 * na).exp();
    let mut channel = vec![vec![0.0; m + 1]; m];
    for (sent, row) in channel.iter_mut().enumerate() {
        for pattern in 0u32..(1 << m) {
            let mut prob = 1.0;
            for bin in 0..m {
                let p = if bin == sent { pc } else { pb };
                prob *= if pattern >> bin & 1 == 1 { p } else { 1.0 - p };
            }
            let outcome = if pattern.count_ones() == 1 {
                pattern.trailing_zeros() as usize
            } else {
                m
            };
            row[outcome] += prob;
        }
    }
    dmc_bits(&vec![1.0 / m as f64; m], &channel) / m as f64
}

fn ook_dmc_bits(na: f64, nb: f64, q: f64) -> f64 {
    let pb = 1.0 - (-nb).exp();
    let pc = 1.0 - (-nb - na / q).exp();
    dmc_bits(&[1.0 - q, q], &[vec![1.0 - pb, pb], vec![1.0 - pc, pc]])
}

fn budget(na: f64, nb: f64) -> LinkBudget {
    LinkBudget::new(na, nb).unwrap()
}

#[test]
fn noisy_ppm_matches_enumerated_channel() {
    for &(na, nb, m) in &[
        (0.05, 0.01, 2usize),
        (0.02, 0.02, 4),
        (1e-2, 1e-3, 8),
        (0.1, 0.05, 10),
        (1e-3, 2e-3, 6),
    ] {
        let oracle = enumerated_ppm_bits_per_bin(na, nb, m);
        let got = mi_ppm_noisy(&budget(na, nb), PpmOrder::integer(m as u64).unwrap()).bits_per_bin;
        assert!(
            (got - oracle).abs() <= 1e-12 * oracle.max(1e-6),
            "({na}, {nb}, {m}): {got} vs {oracle}"
        );
    }
}

#[test]
fn noisy_ook_matches_generic_channel() {
    for &(na, nb, q) in &[
        (1e-4, 1e-4, 1e-3),
        (1e-2, 1e-3, 1.0 / 64.0),
        (0.3, 0.1, 0.4),
    ] {
        let oracle = ook_dmc_bits(na, nb, q);
        let got = mi_ook_noisy(&budget(na, nb), PulseProbability::new(q).unwrap()).bits_per_bin;
        assert!((got - oracle).abs() <= 1e-11 * oracle, "{got} vs {oracle}");
    }
}

#[test]
fn noiseless_ppm_direct_evaluation() {
    let (na, m) = (1e-4f64, 1e4f64);
    let direct = (1.0 - (-m * na).exp()) / m * m.log2();
    let got = mi_ppm_noiseless(&budget(na, 0.0), PpmOrder::continuous(m).unwrap());
    assert!((got.bits_per_bin - direct).abs() < 1e-15);
    assert!((got.pie.unwrap() - direct / na).abs() < 1e-10);
}

#[test]
fn reductions_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..100 {
        let na = 10f64.powf(rng.random_range(-8.0..-0.5));
        let m = 10f64.powf(rng.random_range(0.31..7.0));
        let q = 10f64.powf(rng.random_range(-7.0..-0.31));
        let b = budget(na, 0.0);
        let order = PpmOrder::continuous(m).unwrap();
        let prior = PulseProbability::new(q).unwrap();
        let ppm =
            (mi_ppm_noisy(&b, order).bits_per_bin - mi_ppm_noiseless(&b, order).bits_per_bin).abs();
        let ook =
            (mi_ook_noisy(&b, prior).bits_per_bin - mi_ook_noiseless(&b, prior).bits_per_bin).abs();
        assert!(ppm <= 1e-14 && ook <= 1e-14);
    }
}

#[test]
fn continuous_order_allowed() {
    let b = budget(1e-3, 1e-4);
    let a = mi_ppm_noisy(&b, PpmOrder::continuous(100.0).unwrap()).bits_per_bin;
    let c = mi_ppm_noisy(&b, PpmOrder::continuous(100.5).unwrap()).bits_per_bin;
    let d = mi_ppm_noisy(&b, PpmOrder::continuous(101.0).unwrap()).bits_per_bin;
    assert!((c - a).abs() > 0.0 && (c - d).abs() > 0.0);
}

#[test]
fn tiny_signal_probabilities_stay_accurate() {
    let p = click_probs_ppm(&budget(1e-30, 0.0), PpmOrder::integer(2).unwrap());
    assert!(((p.pulse_only - 2e-30) / 2e-30).abs() < 1e-12);
    let r = mi_ppm_noiseless(&budget(1e-30, 0.0), PpmOrder::integer(2).unwrap());
    // p_p/M log2 M with p_p = 2e-30, M = 2.
    assert!(((r.bits_per_bin - 1e-30) / 1e-30).abs() < 1e-12);
}

proptest! {
    #[test]
    fn rates_nonnegative(
        la in -8.0f64..0.0, lb in -9.0f64..0.0, lm in 0.31f64..6.0, lq in -7.0f64..-0.31,
    ) {
        let b = budget(10f64.powf(la), 10f64.powf(lb));
        let order = PpmOrder::continuous(10f64.powf(lm)).unwrap();
        let q = PulseProbability::new(10f64.powf(lq)).unwrap();
        prop_assert!(mi_ppm_noisy(&b, order).bits_per_bin >= 0.0);
        prop_assert!(mi_ook_noisy(&b, q).bits_per_bin >= 0.0);
        prop_assert!(mi_ppm_noiseless(&b, order).bits_per_bin >= 0.0);
        prop_assert!(mi_ook_noiseless(&b, q).bits_per_bin >= 0.0);
    }

    #[test]
    fn simple_decision_ppm_below_ook(la in -7.0f64..-1.0, r in 0.0f64..2.0, lm in 0.31f64..5.0) {
        let na = 10f64.powf(la);
        let b = budget(na, r * na);
        let m = 10f64.powf(lm);
        let ppm = mi_ppm_noisy(&b, PpmOrder::continuous(m).unwrap()).bits_per_bin;
        let ook = mi_ook_noisy(&b, PulseProbability::new(1.0 / m).unwrap()).bits_per_bin;
        prop_assert!(ppm <= ook * (1.0 + 1e-12), "ppm {} > ook {}", ppm, ook);
    }

    #[test]
    fn more_background_never_helps(la in -7.0f64..-1.0, lm in 0.31f64..5.0, lq in -6.0f64..-0.31) {
        let na = 10f64.powf(la);
        let order = PpmOrder::continuous(10f64.powf(lm)).unwrap();
        let q = PulseProbability::new(10f64.powf(lq)).unwrap();
        let mut last = (f64::INFINITY, f64::INFINITY);
        for r in [0.0, 0.01, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0] {
            let b = budget(na, r * na);
            let ppm = mi_ppm_noisy(&b, order).bits_per_bin;
            let ook = mi_ook_noisy(&b, q).bits_per_bin;
            prop_assert!(ppm <= last.0 * (1.0 + 1e-12));
            prop_assert!(ook <= last.1 * (1.0 + 1e-12));
            last = (ppm, ook);
        }
    }
}
