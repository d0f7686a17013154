//! Mode and strong-mode membership with violation certificates, and the
//! report produced for a mode set that is not independent.
//!
//! `cargo run --example membership`

use mode_polytopes::linalg::rat;
use mode_polytopes::membership::strict_strong_modes_of;
use mode_polytopes::{
    degeneracy_report, in_mode_polytope, in_strong_polytope, modes_of, Distribution, Graph,
    ModeSet, Strictness,
};

fn main() -> mode_polytopes::Result<()> {
    let g = Graph::cycle(5)?;
    let c = ModeSet::from_labels(&g, &["0", "2"])?;
    let p = Distribution::new(vec![
        rat(3, 10),
        rat(1, 10),
        rat(1, 4),
        rat(1, 5),
        rat(3, 20),
    ])?;

    let labels = |v: Vec<usize>| g.labels_of(&v).join(",");
    println!(
        "modes:               {}",
        labels(modes_of(&p, &g, Strictness::Weak)?)
    );
    println!(
        "strict strong modes: {}",
        labels(strict_strong_modes_of(&p, &g)?)
    );

    for (name, m) in [
        ("mode", in_mode_polytope(&p, &g, &c)?),
        ("strong", in_strong_polytope(&p, &g, &c)?),
    ] {
        match &m.violation {
            None => println!("{name}: member"),
            Some(v) => println!("{name}: not a member, {v}"),
        }
    }

    let adjacent = ModeSet::from_labels(&g, &["0", "1"])?;
    println!(
        "\n{{0, 1}} is not independent: {}",
        degeneracy_report(&g, &adjacent)
    );
    Ok(())
}
