//! Runs every closed-form versus brute-force check on a few instances.
//!
//! `cargo run --release --example check`

use mode_polytopes::verify::{check_instance, CheckOptions};
use mode_polytopes::{even_parity_set, Graph, ModeSet};

fn main() -> mode_polytopes::Result<()> {
    let cube = Graph::hypercube(3)?;
    let grid = Graph::grid(2, 3)?;
    let instances = [
        ("3-cube, even parity", cube.clone(), even_parity_set(&cube)),
        (
            "3-cube, {000, 111}",
            cube.clone(),
            ModeSet::from_labels(&cube, &["000", "111"])?,
        ),
        (
            "2x3 grid, corners",
            grid.clone(),
            ModeSet::from_labels(&grid, &["0.0", "1.2"])?,
        ),
        (
            "K_3,3, one side",
            Graph::complete_bipartite(3, 3)?,
            ModeSet::new(&Graph::complete_bipartite(3, 3)?, vec![0, 1, 2])?,
        ),
    ];
    for (name, g, c) in instances {
        let report = check_instance(&g, &c, &CheckOptions::default())?;
        println!("{name}");
        for o in &report.outcomes {
            println!("  {o}");
        }
    }
    Ok(())
}
