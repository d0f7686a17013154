//! Estimates volume ratios by uniform sampling from the simplex and
//! compares them with the exact values.
//!
//! `cargo run --release --example montecarlo -- [trials] [seed]`

use mode_polytopes::oracle::{hrep_predicate, montecarlo_volume, rational_to_f64};
use mode_polytopes::{even_parity_set, mode_polytope, strong_polytope, Graph};

fn main() -> mode_polytopes::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args
        .next()
        .map_or(1_000_000, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    for n in 2..=3 {
        let g = Graph::hypercube(n)?;
        let c = even_parity_set(&g);
        let cases = [
            (
                "mode",
                mode_polytope::hrep(&g, &c)?,
                mode_polytope::volume_ratio(&g, &c)?,
            ),
            (
                "strong",
                strong_polytope::hrep(&g, &c)?,
                strong_polytope::volume_ratio(&g, &c)?,
            ),
        ];
        for (kind, h, exact) in cases {
            let est = montecarlo_volume(hrep_predicate(&h), g.len(), trials, seed);
            let z = (est.estimate_f64() - rational_to_f64(&exact)) / est.std_error();
            println!(
                "{n}-cube {kind:<6} exact {:<7} ≈ {:.6}  estimate {:.6} ± {:.6}  z = {z:+.2}",
                exact.to_string(),
                rational_to_f64(&exact),
                est.estimate_f64(),
                est.std_error()
            );
        }
    }
    Ok(())
}
