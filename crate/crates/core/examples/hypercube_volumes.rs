//! Volume ratios of mode and strong-mode polytopes on small hypercubes,
//! for a single mode and for the even-parity mode set.
//!
//! `cargo run --release --example hypercube_volumes`

use mode_polytopes::poset::DEFAULT_MAX_IDEALS;
use mode_polytopes::{
    even_parity_set, mode_polytope, poset_from_modes, strong_polytope, Graph, ModeSet,
};

fn main() -> mode_polytopes::Result<()> {
    println!(
        "{:<3} {:<12} {:>9} {:>16} {:>14} {:>22}",
        "n", "modes", "vertices", "extensions", "mode vol", "strong vol"
    );
    for n in 2..=4 {
        let g = Graph::hypercube(n)?;
        for (name, c) in [
            ("origin", ModeSet::new(&g, vec![0])?),
            ("even", even_parity_set(&g)),
        ] {
            let vertices = mode_polytope::vertices(&g, &c)?.len();
            let extensions =
                poset_from_modes(&g, &c)?.count_linear_extensions(DEFAULT_MAX_IDEALS)?;
            println!(
                "{n:<3} {name:<12} {vertices:>9} {extensions:>16} {:>14} {:>22}",
                mode_polytope::volume_ratio(&g, &c)?.to_string(),
                strong_polytope::volume_ratio(&g, &c)?.to_string(),
            );
        }
    }
    Ok(())
}
