use ppm_link::channels::{click_probs_ppm, LinkBudget, PpmOrder};
use ppm_link::montecarlo::{
    bootstrap_sigma, estimate_mi, simulate, validate, EmpiricalChannel, Scheme, SimConfig,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn config(na: f64, nb: f64, scheme: Scheme, frames: u64, seed: u64) -> SimConfig {
    SimConfig::new(LinkBudget::new(na, nb).unwrap(), scheme, frames, seed).unwrap()
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn diagonal(ch: &EmpiricalChannel) -> u64 {
    (0..ch.inputs()).map(|i| ch.count(i, i)).sum()
}

#[test]
fn same_seed_same_counts_across_thread_counts() {
    let cfg = config(1e-2, 1e-3, Scheme::Ppm { order: 16 }, 300_000, 42);
    let one = with_threads(1, || simulate(&cfg).unwrap());
    let four = with_threads(4, || simulate(&cfg).unwrap());
    assert_eq!(one, four);
    assert_eq!(one, simulate(&cfg).unwrap());
    let other = simulate(&config(1e-2, 1e-3, Scheme::Ppm { order: 16 }, 300_000, 43)).unwrap();
    assert_ne!(one, other);

    let cfg = config(1e-2, 1e-3, Scheme::Ook { prior: 0.05 }, 200_000, 9);
    assert_eq!(
        with_threads(1, || simulate(&cfg).unwrap()),
        with_threads(4, || simulate(&cfg).unwrap())
    );
}

#[test]
fn counts_sum_to_frames() {
    for frames in [1, 17, 65_536, 65_537, 200_001] {
        let ch = simulate(&config(0.05, 0.01, Scheme::Ppm { order: 8 }, frames, 1)).unwrap();
        assert_eq!(ch.total(), frames);
        let ch = simulate(&config(0.05, 0.01, Scheme::Ook { prior: 0.2 }, frames, 1)).unwrap();
        assert_eq!(ch.total(), frames);
    }
}

#[test]
fn noiseless_erasure_rate() {
    let (na, m, frames) = (5e-3, 32u32, 2_000_000u64);
    let ch = simulate(&config(na, 0.0, Scheme::Ppm { order: m }, frames, 5)).unwrap();
    let erasure = 1.0 - (1.0 - (-(m as f64) * na).exp());
    let observed = ch.output_totals()[m as usize] as f64 / frames as f64;
    let sigma = (erasure * (1.0 - erasure) / frames as f64).sqrt();
    assert!((observed - erasure).abs() <= 4.0 * sigma);
    // Without background a wrong bin can never be decoded.
    assert_eq!(diagonal(&ch) + ch.output_totals()[m as usize], frames);
}

#[test]
fn exclusive_click_rate_matches_formula() {
    let (na, nb, frames) = (0.1, 0.01, 10_000_000u64);
    let ch = simulate(&config(na, nb, Scheme::Ppm { order: 4 }, frames, 11)).unwrap();
    let p = click_probs_ppm(
        &LinkBudget::new(na, nb).unwrap(),
        PpmOrder::integer(4).unwrap(),
    );
    let observed = diagonal(&ch) as f64 / frames as f64;
    let sigma = (p.exclusive_correct * (1.0 - p.exclusive_correct) / frames as f64).sqrt();
    assert!((observed - p.exclusive_correct).abs() <= 4.0 * sigma);

    let wrong: u64 = ch
        .joint_counts()
        .filter(|&((i, j), _)| j < 4 && i != j)
        .map(|(_, n)| n)
        .sum();
    let expected = 3.0 * p.single_wrong;
    let sigma = (expected * (1.0 - expected) / frames as f64).sqrt();
    assert!((wrong as f64 / frames as f64 - expected).abs() <= 4.0 * sigma);
}

#[test]
fn wrong_bins_are_exchangeable() {
    let m = 8usize;
    let ch = simulate(&config(
        0.02,
        0.02,
        Scheme::Ppm { order: m as u32 },
        4_000_000,
        21,
    ))
    .unwrap();
    // Pool wrong-bin decodes by offset from the sent position.
    let mut by_offset = vec![0u64; m - 1];
    for ((i, j), n) in ch.joint_counts() {
        if j < m && j != i {
            by_offset[(j + m - i) % m - 1] += n;
        }
    }
    let total: u64 = by_offset.iter().sum();
    let expected = total as f64 / (m - 1) as f64;
    let stat: f64 = by_offset
        .iter()
        .map(|&n| (n as f64 - expected).powi(2) / expected)
        .sum();
    let p_value = ChiSquared::new((m - 2) as f64).unwrap().sf(stat);
    assert!(p_value > 0.001, "chi-square {stat}, p = {p_value}");
}

#[test]
fn ppm_estimate_matches_exact_rate() {
    let cfg = config(1e-2, 1e-3, Scheme::Ppm { order: 64 }, 2_000_000, 3);
    let report = validate(&cfg, 50, 3.0).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(report.bias_bits_per_bin < report.bootstrap_sigma);
}

#[test]
fn noiseless_ook_estimate_matches_exact_rate() {
    let cfg = config(1e-2, 0.0, Scheme::Ook { prior: 0.1 }, 2_000_000, 4);
    let report = validate(&cfg, 50, 3.0).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn estimate_converges_with_frames() {
    let mut last_sigma = f64::INFINITY;
    for frames in [100_000u64, 1_000_000, 10_000_000] {
        let cfg = config(1e-2, 1e-3, Scheme::Ook { prior: 1.0 / 64.0 }, frames, 17);
        let ch = simulate(&cfg).unwrap();
        let est = estimate_mi(&ch).unwrap();
        let sigma = bootstrap_sigma(&ch, 50, 17).unwrap();
        let exact = cfg.exact_bits_per_bin().unwrap();
        assert!(sigma < last_sigma);
        assert!((est.bits_per_bin - exact).abs() <= 4.0 * sigma + est.bias_bits_per_bin);
        last_sigma = sigma;
    }
}

#[test]
fn bootstrap_is_deterministic() {
    let ch = simulate(&config(1e-2, 1e-3, Scheme::Ppm { order: 16 }, 100_000, 8)).unwrap();
    let a = with_threads(1, || bootstrap_sigma(&ch, 50, 8).unwrap());
    let b = with_threads(4, || bootstrap_sigma(&ch, 50, 8).unwrap());
    assert_eq!(a.to_bits(), b.to_bits());
    assert!(a > 0.0);
}
