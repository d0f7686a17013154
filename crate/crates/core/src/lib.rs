//! Exact geometry of probability polytopes defined by prescribed modes.
//!
//! Given a simple graph `G = (V, E)` describing which outcomes are
//! neighbors, and an independent set `C` of nodes, this crate describes
//!
//! * the **mode polytope**: distributions `p` on `V` with `p_x >= p_y` for
//!   every `x` in `C` and neighbor `y` ([`mode_polytope`]), and
//! * the **strong-mode polytope**: distributions with
//!   `p_x >= Σ_{y ~ x} p_y` for every `x` in `C` ([`strong_polytope`]),
//!
//! by inequalities, vertices, facets and volume. All arithmetic is exact;
//! volumes are reported as rationals relative to the volume of the
//! probability simplex on `V`. The [`oracle`] module holds independent
//! brute-force and Monte Carlo checks of every closed form.
//!
//! ```
//! use mode_polytopes::{even_parity_set, mode_polytope, strong_polytope, Graph};
//!
//! let cube = Graph::hypercube(3).unwrap();
//! let even = even_parity_set(&cube);
//! assert_eq!(mode_polytope::vertices(&cube, &even).unwrap().len(), 19);
//! assert_eq!(mode_polytope::volume_ratio(&cube, &even).unwrap().to_string(), "1/56");
//! assert_eq!(strong_polytope::volume_ratio(&cube, &even).unwrap().to_string(), "1/256");
//! ```

pub mod cli;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod membership;
pub mod mode_polytope;
pub mod oracle;
pub mod polytope;
pub mod poset;
pub mod strong_polytope;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    auxiliary_graph, even_parity_set, is_independent, mode_neighbors, odd_parity_set,
    AuxiliaryGraph, Graph, ModeSet,
};
pub use linalg::{RatMatrix, Rational};
pub use membership::{
    degeneracy_report, in_mode_polytope, in_strong_polytope, modes_of, strong_modes_of,
    DegeneracyReport, Membership, Strictness, ViolationCertificate,
};
pub use polytope::{Distribution, HRep, Inequality, InequalityKind};
pub use poset::{extension_lower_bound, poset_from_modes, Poset};
