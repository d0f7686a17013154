//! The mode polytope is cut into simplices, one per linear extension;
//! `locate_simplex` finds the one containing a point.
//!
//! `cargo run --example triangulation`

use mode_polytopes::mode_polytope::locate_simplex;
use mode_polytopes::oracle::{sample_simplex, SplitMix64};
use mode_polytopes::{in_mode_polytope, poset_from_modes, Graph, ModeSet};

fn main() -> mode_polytopes::Result<()> {
    let g = Graph::hypercube(2)?;
    let c = ModeSet::from_labels(&g, &["01", "10"])?;
    let extensions = poset_from_modes(&g, &c)?.enumerate_extensions(100)?;
    let names = |order: &[usize]| g.labels_of(order).join(" <= ");

    let mut hits = vec![0u32; extensions.len()];
    let mut rng = SplitMix64::new(3);
    let mut inside = 0;
    while inside < 10_000 {
        let p = sample_simplex(g.len(), &mut rng).to_distribution();
        if !in_mode_polytope(&p, &g, &c)?.member {
            continue;
        }
        inside += 1;
        let sigma = locate_simplex(&p, &g, &c)?;
        let k = extensions
            .iter()
            .position(|e| *e == sigma)
            .expect("an extension");
        hits[k] += 1;
    }
    for (e, h) in extensions.iter().zip(&hits) {
        println!("{:<24} {h}", names(e));
    }
    Ok(())
}
