//! Any finite poset gives a polytope of distributions that are monotone
//! along it; its volume ratio is (number of linear extensions) / n!.
//!
//! `cargo run --example order_polytope`

use mode_polytopes::mode_polytope::{hrep_poset, volume_ratio_poset};
use mode_polytopes::oracle::{hrep_predicate, montecarlo_volume};
use mode_polytopes::poset::DEFAULT_MAX_IDEALS;
use mode_polytopes::Poset;

fn main() -> mode_polytopes::Result<()> {
    // the "zigzag" a < b > c < d > e
    let p = Poset::from_json(
        r#"{"elements": ["a", "b", "c", "d", "e"],
            "covers": [["a", "b"], ["c", "b"], ["c", "d"], ["e", "d"]]}"#,
    )?;
    let count = p.count_linear_extensions(DEFAULT_MAX_IDEALS)?;
    println!(
        "linear extensions: {count} (naive: {})",
        p.count_linear_extensions_naive()?
    );
    for order in p.enumerate_extensions(100)?.iter().take(5) {
        let names: Vec<&str> = order.iter().map(|&i| p.elements()[i].as_str()).collect();
        println!("  {}", names.join(" < "));
    }
    println!("  ...");

    let exact = volume_ratio_poset(&p)?;
    let h = hrep_poset(&p);
    let est = montecarlo_volume(hrep_predicate(&h), p.len(), 200_000, 1);
    println!(
        "volume ratio {exact}, sampled {:.4} ± {:.4}",
        est.estimate_f64(),
        est.std_error()
    );
    Ok(())
}
