//! Runs every oracle agreement check that is feasible for one instance.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::Result;
use crate::graph::{Graph, ModeSet};
use crate::linalg::{affine_rank, format_rational, Rational};
use crate::membership::require_independent;
use crate::oracle::{
    alternating_connected, count_extensions_recursive, is_facet_by_rank, naive_vertex_enum,
    NAIVE_VERTEX_MAX_DIM,
};
use crate::polytope::Distribution;
use crate::poset::{extension_lower_bound, poset_from_modes, NAIVE_MAX_ELEMENTS};
use crate::{mode_polytope, strong_polytope};

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Largest `|V|` for brute-force vertex enumeration.
    pub naive_vertex_max: usize,
    /// Largest `|V|` for permutation-filtering extension counts.
    pub naive_count_max: usize,
    pub max_ideals: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            naive_vertex_max: 8,
            naive_count_max: 9,
            max_ideals: crate::poset::DEFAULT_MAX_IDEALS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// `None` when skipped for size.
    pub passed: Option<bool>,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        };
        write!(f, "{status:4}  {:<30} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed != Some(false))
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.outcomes.push(CheckOutcome {
            name,
            passed: Some(passed),
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &'static str, detail: impl Into<String>) {
        self.outcomes.push(CheckOutcome {
            name,
            passed: None,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "check": o.name,
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect(),
        )
    }
}

fn as_set(points: Vec<Vec<Rational>>) -> BTreeSet<Vec<Rational>> {
    points.into_iter().collect()
}

/// Cross-checks closed forms against the oracles on `(g, c)`.
pub fn check_instance(g: &Graph, c: &ModeSet, opts: &CheckOptions) -> Result<CheckReport> {
    require_independent(g, c)?;
    let n = g.len();
    let mut r = CheckReport::default();

    let mode_h = mode_polytope::hrep(g, c)?;
    r.push(
        "uniform in mode polytope",
        mode_h.contains(Distribution::uniform(n).probabilities()),
        "",
    );

    let verts = mode_polytope::vertices(g, c)?;
    let points = verts.points();
    r.push(
        "mode vertices feasible",
        points.iter().all(|p| mode_h.contains(p)),
        format!("{} vertices", points.len()),
    );

    let aux = crate::graph::AuxiliaryGraph::new(g, c)?;
    if aux.nodes.len() <= 12 {
        let mut agree = true;
        for mask in 1u32..(1 << aux.nodes.len()) {
            let w: Vec<usize> = (0..aux.nodes.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| aux.nodes[i])
                .collect();
            agree &= aux.is_connected(&w) == alternating_connected(g, c, &w);
        }
        r.push("alternating paths", agree, "auxiliary-graph connectivity");
    } else {
        r.skip("alternating paths", "more than 12 non-modes");
    }

    if n <= opts.naive_vertex_max.min(NAIVE_VERTEX_MAX_DIM) {
        let naive = as_set(naive_vertex_enum(&mode_h)?);
        let ours = as_set(points.clone());
        r.push(
            "mode vertices vs brute force",
            naive == ours,
            format!("{} brute-force, {} enumerated", naive.len(), ours.len()),
        );
    } else {
        r.skip("mode vertices vs brute force", format!("|V| = {n}"));
    }

    if n >= 2 {
        let classes = mode_polytope::facets(g, c)?;
        let bad: Vec<String> = classes
            .iter()
            .filter(|f| is_facet_by_rank(&f.inequality, &points, n) != f.facet)
            .map(|f| f.inequality.kind.tag(g))
            .collect();
        r.push(
            "mode facet classification",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} facets", classes.iter().filter(|f| f.facet).count())
            } else {
                format!("misclassified {}", bad.join(" "))
            },
        );
    }

    let dim = mode_polytope::dimension(g, c)?;
    r.push("full dimension", dim + 1 == n, format!("dimension {dim}"));

    let poset = poset_from_modes(g, c)?;
    match poset.count_linear_extensions(opts.max_ideals) {
        Ok(count) => {
            let bound = extension_lower_bound(g, c)?;
            r.push(
                "extension lower bound",
                count >= bound,
                format!("{count} >= {bound}"),
            );
            if n <= opts.naive_count_max.min(NAIVE_MAX_ELEMENTS) {
                let naive = poset.count_linear_extensions_naive()?;
                r.push(
                    "extensions vs permutations",
                    naive == count,
                    format!("{naive}"),
                );
            } else {
                r.skip("extensions vs permutations", format!("|V| = {n}"));
            }
            match count_extensions_recursive(&poset, opts.max_ideals) {
                Ok(rec) => r.push("extensions vs recursion", rec == count, format!("{rec}")),
                Err(e) => r.skip("extensions vs recursion", e.to_string()),
            }
        }
        Err(e) => r.skip("extension counts", e.to_string()),
    }

    let strong_h = strong_polytope::hrep(g, c)?;
    let strong = strong_polytope::vertices(g, c)?;
    let strong_points: Vec<Vec<Rational>> = strong
        .iter()
        .map(|v| v.distribution.probabilities().to_vec())
        .collect();
    let ratio = strong_polytope::volume_ratio(g, c)?;
    let det = strong_polytope::volume_det(g, c)?;
    r.push(
        "strong volume product vs det",
        ratio == det,
        format!("{} vs {}", format_rational(&ratio), format_rational(&det)),
    );
    r.push(
        "strong vertices span simplex",
        affine_rank(&strong_points)? + 1 == n,
        "",
    );
    let facets = strong_polytope::facets(g, c)?;
    let incidences_ok = facets
        .iter()
        .all(|f| strong_points.iter().filter(|p| f.is_tight(p)).count() + 1 == n);
    r.push(
        "strong facet incidences",
        facets.len() == n && incidences_ok,
        format!("{} facets", facets.len()),
    );
    r.push(
        "strong inside mode polytope",
        strong_points
            .iter()
            .all(|p| strong_h.contains(p) && mode_h.contains(p)),
        "",
    );
    if n <= opts.naive_vertex_max.min(NAIVE_VERTEX_MAX_DIM) {
        let naive = as_set(naive_vertex_enum(&strong_h)?);
        r.push(
            "strong vertices vs brute force",
            naive == as_set(strong_points.clone()),
            format!("{} brute-force", naive.len()),
        );
    } else {
        r.skip("strong vertices vs brute force", format!("|V| = {n}"));
    }

    // barycenters are members; their decompositions must recombine exactly
    let bary_mode = barycenter(&points);
    let parts = mode_polytope::decompose(&bary_mode, g, c)?;
    let back = mode_polytope::recombine(n, parts.iter().map(|(v, w)| (&v.distribution, w)));
    let weight: Rational = parts.iter().map(|(_, w)| w.clone()).sum();
    r.push(
        "mode decomposition",
        back == bary_mode.probabilities() && weight.is_one(),
        format!("{} vertices used", parts.len()),
    );
    let bary_strong = barycenter(&strong_points);
    let parts = strong_polytope::decompose(&bary_strong, g, c)?;
    let expected = Rational::new(1.into(), n.into());
    r.push(
        "strong decomposition",
        parts.iter().all(|(_, w)| *w == expected),
        "barycentric weights 1/|V|",
    );

    Ok(r)
}

fn barycenter(points: &[Vec<Rational>]) -> Distribution {
    let n = points[0].len();
    let k = Rational::new(1.into(), points.len().into());
    let mut out = vec![Rational::zero(); n];
    for p in points {
        for (o, q) in out.iter_mut().zip(p) {
            *o += &k * q;
        }
    }
    Distribution::new(out).expect("average of distributions")
}
