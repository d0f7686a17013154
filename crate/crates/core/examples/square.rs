//! The smallest interesting case: the 4-cycle `00 - 01 - 11 - 10 - 00`
//! with modes `01` and `10`.
//!
//! Run with `cargo run --example square`.

use mode_polytopes::linalg::format_rational;
use mode_polytopes::{auxiliary_graph, mode_polytope, strong_polytope, Graph, ModeSet};

fn main() -> mode_polytopes::Result<()> {
    let g = Graph::hypercube(2)?;
    let c = ModeSet::from_labels(&g, &["01", "10"])?;

    let h = auxiliary_graph(&g, &c)?;
    println!("auxiliary graph on {:?}: {:?}", h.labels(), h.edge_labels());

    println!("\nmode polytope vertices:");
    for v in mode_polytope::vertices(&g, &c)?.vertices {
        let p: Vec<String> = v
            .distribution
            .probabilities()
            .iter()
            .map(format_rational)
            .collect();
        println!("  {:<10} {}", v.generator.tag(&g), p.join(" "));
    }

    println!("\ninequalities:");
    for f in mode_polytope::facets(&g, &c)? {
        let mark = if f.facet { "facet" } else { "     " };
        println!("  {mark}  {:<14} {}", f.inequality.kind.tag(&g), f.reason);
    }

    println!("\nstrong-mode polytope vertices:");
    for v in strong_polytope::vertices(&g, &c)? {
        println!(
            "  f:{}  uniform on {:?}",
            g.label(v.anchor),
            g.labels_of(&v.support)
        );
    }

    println!(
        "\nvolume ratios: mode {}, strong {}",
        mode_polytope::volume_ratio(&g, &c)?,
        strong_polytope::volume_ratio(&g, &c)?
    );
    Ok(())
}
