//! Mixtures of k unimodal distributions on the 3-cube never show more than
//! k strict strong modes.
//!
//! `cargo run --release --example mixtures -- [trials]`

use mode_polytopes::oracle::mixture_strong_mode_test;
use mode_polytopes::Graph;

fn main() -> mode_polytopes::Result<()> {
    let trials: u64 = std::env::args()
        .nth(1)
        .map_or(2000, |s| s.parse().expect("trials"));
    let g = Graph::hypercube(3)?;
    for k in 1..=4 {
        let report = mixture_strong_mode_test(&g, k, trials, 42 + k as u64)?;
        println!(
            "k = {k}: {trials} mixtures, at most {} strict strong modes, {} violations",
            report.max_strict_strong_modes,
            report.count_violations.len() as u64 + report.mode_violations
        );
    }
    Ok(())
}
