//! Counts the orderings of the 4-cube compatible with every even-parity
//! node beating its four neighbors, and cross-checks the count with the
//! memoized top-down counter.
//!
//! `cargo run --release --example even_parity_4cube`

use std::time::Instant;

use mode_polytopes::oracle::count_extensions_recursive;
use mode_polytopes::poset::{factorial, DEFAULT_MAX_IDEALS};
use mode_polytopes::{even_parity_set, poset_from_modes, Graph};

fn main() -> mode_polytopes::Result<()> {
    let g = Graph::hypercube(4)?;
    let c = even_parity_set(&g);
    let poset = poset_from_modes(&g, &c)?;

    let start = Instant::now();
    let count = poset.count_linear_extensions(DEFAULT_MAX_IDEALS)?;
    println!("ideal DP:        {count}  ({:.2?})", start.elapsed());

    let start = Instant::now();
    let check = count_extensions_recursive(&poset, DEFAULT_MAX_IDEALS)?;
    println!("recursive count: {check}  ({:.2?})", start.elapsed());

    let floor = factorial(8) * factorial(8);
    println!("8! * 8!:         {floor}");
    println!(
        "volume ratio:    {}",
        mode_polytopes::mode_polytope::volume_ratio(&g, &c)?
    );
    assert_eq!(count, check);
    Ok(())
}
