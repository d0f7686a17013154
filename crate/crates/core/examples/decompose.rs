//! Writes a distribution with prescribed modes as a convex combination of
//! vertices, then rebuilds it exactly.
//!
//! `cargo run --example decompose`

use mode_polytopes::linalg::{format_rational, rat};
use mode_polytopes::{even_parity_set, mode_polytope, strong_polytope, Distribution, Graph};

fn show(label: &str, parts: &[(String, String)]) {
    println!("{label}");
    for (tag, w) in parts {
        println!("  {w:>8}  {tag}");
    }
}

fn main() -> mode_polytopes::Result<()> {
    let g = Graph::hypercube(3)?;
    let c = even_parity_set(&g);

    // labels 000..111: even nodes 000, 011, 101, 110 carry more mass
    let p = Distribution::new(vec![
        rat(6, 32),
        rat(2, 32),
        rat(1, 32),
        rat(6, 32),
        rat(3, 32),
        rat(6, 32),
        rat(6, 32),
        rat(2, 32),
    ])?;

    let parts = mode_polytope::decompose(&p, &g, &c)?;
    show(
        "mode polytope:",
        &parts
            .iter()
            .map(|(v, w)| (v.generator.tag(&g), format_rational(w)))
            .collect::<Vec<_>>(),
    );
    let back = mode_polytope::recombine(g.len(), parts.iter().map(|(v, w)| (&v.distribution, w)));
    assert_eq!(back, p.probabilities());

    // each even node must outweigh its three neighbors together
    let q = Distribution::new(vec![
        rat(7, 32),
        rat(1, 32),
        rat(1, 32),
        rat(7, 32),
        rat(1, 32),
        rat(7, 32),
        rat(7, 32),
        rat(1, 32),
    ])?;
    match strong_polytope::decompose(&q, &g, &c) {
        Ok(parts) => show(
            "strong-mode polytope:",
            &parts
                .iter()
                .map(|(v, w)| (format!("f:{}", g.label(v.anchor)), format_rational(w)))
                .collect::<Vec<_>>(),
        ),
        Err(e) => println!("not a strong-mode member: {e}"),
    }
    Ok(())
}
