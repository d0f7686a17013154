//! The polytope of distributions in which every prescribed node is a strong
//! mode. For an independent mode set it is a simplex with one vertex
//! `f_C^x` (uniform on `{x} ∪ N_C(x)`) per node.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{mode_neighbors, Graph, ModeSet};
use crate::linalg::{simplex_volume_ratio, RatMatrix, Rational};
use crate::membership::require_independent;
use crate::polytope::{Distribution, HRep, Inequality};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongVertex {
    pub anchor: usize,
    /// `{anchor} ∪ N_C(anchor)`, sorted.
    pub support: Vec<usize>,
    pub distribution: Distribution,
}

impl StrongVertex {
    pub fn to_json(&self, g: &Graph) -> Value {
        serde_json::json!({
            "anchor": g.label(self.anchor),
            "support": g.labels_of(&self.support),
            "probabilities": self.distribution.to_json(g),
        })
    }
}

/// Positivity for every node, then one strong-mode inequality per mode.
pub fn hrep(g: &Graph, c: &ModeSet) -> Result<HRep> {
    require_independent(g, c)?;
    let mut rows: Vec<Inequality> = (0..g.len()).map(Inequality::positivity).collect();
    rows.extend(
        c.members()
            .iter()
            .map(|&x| Inequality::strong_mode(x, g.neighbors(x))),
    );
    Ok(HRep::new(g.len(), rows))
}

/// The `|V|` vertices `f_C^x`, in node order.
pub fn vertices(g: &Graph, c: &ModeSet) -> Result<Vec<StrongVertex>> {
    require_independent(g, c)?;
    Ok((0..g.len())
        .map(|x| {
            let mut support = mode_neighbors(g, c, &[x]);
            support.push(x);
            support.sort_unstable();
            StrongVertex {
                anchor: x,
                distribution: Distribution::uniform_on(g.len(), &support),
                support,
            }
        })
        .collect())
}

/// Strong-mode inequalities for every mode and positivity for every
/// non-mode; exactly `|V|` facets.
pub fn facets(g: &Graph, c: &ModeSet) -> Result<Vec<Inequality>> {
    require_independent(g, c)?;
    let mut out: Vec<Inequality> = c
        .members()
        .iter()
        .map(|&x| Inequality::strong_mode(x, g.neighbors(x)))
        .collect();
    out.extend(
        c.complement(g.len())
            .into_iter()
            .map(Inequality::positivity),
    );
    Ok(out)
}

/// `Π_x 1 / (|N_C(x)| + 1)`.
pub fn volume_ratio(g: &Graph, c: &ModeSet) -> Result<Rational> {
    require_independent(g, c)?;
    let denom = (0..g.len()).fold(BigInt::one(), |acc, x| {
        let k = g.neighbors(x).iter().filter(|&&y| c.contains(y)).count();
        acc * BigInt::from(k + 1)
    });
    Ok(Rational::new(BigInt::one(), denom))
}

/// `|det|` of the matrix whose columns are the vertices.
pub fn volume_det(g: &Graph, c: &ModeSet) -> Result<Rational> {
    let points: Vec<Vec<Rational>> = vertices(g, c)?
        .into_iter()
        .map(|v| v.distribution.into_vec())
        .collect();
    simplex_volume_ratio(&points)
}

/// Barycentric coordinates of `p` with respect to [`vertices`], in node
/// order of the anchors.
pub fn decompose(
    p: &Distribution,
    g: &Graph,
    c: &ModeSet,
) -> Result<Vec<(StrongVertex, Rational)>> {
    p.check_against(g)?;
    if let Some(v) = hrep(g, c)?.first_violation(p.probabilities()) {
        return Err(Error::NotMember(Box::new(v)));
    }
    let verts = vertices(g, c)?;
    let columns: Vec<Vec<Rational>> = verts
        .iter()
        .map(|v| v.distribution.probabilities().to_vec())
        .collect();
    let weights = RatMatrix::from_columns(&columns)?.solve(p.probabilities())?;
    debug_assert!(weights.iter().all(|w| !w.is_negative()));
    Ok(verts.into_iter().zip(weights).collect())
}
