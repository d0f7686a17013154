//! The polytope of distributions in which every prescribed node is a mode.
//!
//! Its vertices are the point masses on the prescribed modes together with
//! the uniform distributions `e_C^W` on `W ∪ N_C(W)`, for every nonempty set
//! `W` of non-modes that is connected in the [`AuxiliaryGraph`]. The
//! polytope is triangulated by the simplices `{p : p ascending along σ}` for
//! the linear extensions `σ` of [`poset_from_modes`], so its volume relative
//! to the simplex is `e(P) / |V|!`.
//!
//! For a general partial order `⪰` the same polytope is
//! `{p in Δ(V) : p_x >= p_y whenever x ⪰ y}`; it is the vertex figure at the
//! origin of the order polytope of `⪰`. Only its inequalities and volume
//! are computed here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{mode_neighbors, AuxiliaryGraph, Graph, ModeSet};
use crate::linalg::{affine_rank, Rational};
use crate::membership::require_independent;
use crate::polytope::{hrep_json, Distribution, HRep, Inequality, InequalityKind};
use crate::poset::{factorial, poset_from_modes, Poset, DEFAULT_MAX_IDEALS};

/// Default cap on the number of vertices [`vertices`] will produce.
pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;

/// How a vertex arises.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Point mass on a prescribed mode.
    PointMass(usize),
    /// Uniform distribution on `W ∪ N_C(W)`; holds `W`, sorted.
    Uniform(Vec<usize>),
}

impl Generator {
    pub fn tag(&self, g: &Graph) -> String {
        match self {
            Generator::PointMass(x) => format!("delta:{}", g.label(*x)),
            Generator::Uniform(w) => format!("W:[{}]", g.labels_of(w).join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub generator: Generator,
    pub distribution: Distribution,
}

/// Vertex list, point masses first, then `e_C^W` by `(|W|, W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vertex>,
}

impl VRep {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.vertices
            .iter()
            .map(|v| v.distribution.probabilities().to_vec())
            .collect()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        Value::Array(
            self.vertices
                .iter()
                .map(|v| {
                    serde_json::json!({
                        "generator": v.generator.tag(g),
                        "probabilities": v.distribution.to_json(g),
                    })
                })
                .collect(),
        )
    }
}

/// `e_C^W`, the uniform distribution on `W ∪ N_C(W)`.
pub fn uniform_generator(g: &Graph, c: &ModeSet, w: &[usize]) -> Distribution {
    let mut support = mode_neighbors(g, c, w);
    support.extend_from_slice(w);
    support.sort_unstable();
    support.dedup();
    Distribution::uniform_on(g.len(), &support)
}

/// Positivity for every node, then `p_x >= p_y` for every mode `x` and
/// neighbor `y`, ordered by `(x, y)`.
pub fn hrep(g: &Graph, c: &ModeSet) -> Result<HRep> {
    require_independent(g, c)?;
    let mut rows: Vec<Inequality> = (0..g.len()).map(Inequality::positivity).collect();
    for &x in c.members() {
        rows.extend(g.neighbors(x).iter().map(|&y| Inequality::mode(x, y)));
    }
    Ok(HRep::new(g.len(), rows))
}

pub fn vertices(g: &Graph, c: &ModeSet) -> Result<VRep> {
    vertices_with_limit(g, c, DEFAULT_MAX_VERTICES)
}

pub fn vertices_with_limit(g: &Graph, c: &ModeSet, limit: u64) -> Result<VRep> {
    let aux = AuxiliaryGraph::new(g, c)?;
    let sets = aux.connected_sets(limit.saturating_sub(c.len() as u64))?;
    let mut out: Vec<Vertex> = c
        .members()
        .iter()
        .map(|&x| Vertex {
            generator: Generator::PointMass(x),
            distribution: Distribution::point_mass(g.len(), x),
        })
        .collect();
    out.extend(sets.into_iter().map(|w| Vertex {
        distribution: uniform_generator(g, c, &w),
        generator: Generator::Uniform(w),
    }));
    Ok(VRep { vertices: out })
}

/// Whether `e_C^W` is a vertex: `W` must be connected in the auxiliary
/// graph.
pub fn is_vertex_set(g: &Graph, c: &ModeSet, w: &[usize]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&x) = w.iter().find(|&&x| c.contains(x)) {
        return Err(Error::invalid(format!(
            "{} is a prescribed mode; W must avoid the mode set",
            g.label(x)
        )));
    }
    let aux = AuxiliaryGraph::new(g, c)?;
    let mut w = w.to_vec();
    w.sort_unstable();
    w.dedup();
    Ok(aux.is_connected(&w))
}

/// Why an inequality is or is not a facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetReason {
    /// Positivity at a node outside the mode set.
    NonModePositivity,
    /// Positivity at an isolated prescribed mode; that mode constrains nothing.
    IsolatedModePositivity,
    /// Positivity at a prescribed mode with a neighbor `y`: implied by
    /// `p_x >= p_y` and `p_y >= 0`, and strictly smaller than the face
    /// `p_y = 0`.
    ImpliedByNeighbor(usize),
    /// Every mode inequality is a facet.
    ModeInequality,
}

impl fmt::Display for FacetReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetReason::NonModePositivity => write!(f, "positivity outside the mode set"),
            FacetReason::IsolatedModePositivity => write!(f, "positivity at an isolated mode"),
            FacetReason::ImpliedByNeighbor(y) => {
                write!(f, "implied by the mode inequality towards node {y}")
            }
            FacetReason::ModeInequality => write!(f, "mode inequality"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClass {
    pub inequality: Inequality,
    pub facet: bool,
    pub reason: FacetReason,
}

/// Classifies every inequality of [`hrep`].
pub fn facets(g: &Graph, c: &ModeSet) -> Result<Vec<FacetClass>> {
    let h = hrep(g, c)?;
    Ok(h.inequalities()
        .iter()
        .map(|ineq| {
            let (facet, reason) = match ineq.kind {
                InequalityKind::Positivity(x) if !c.contains(x) => {
                    (true, FacetReason::NonModePositivity)
                }
                InequalityKind::Positivity(x) => match g.neighbors(x).first() {
                    None => (true, FacetReason::IsolatedModePositivity),
                    Some(&y) => (false, FacetReason::ImpliedByNeighbor(y)),
                },
                _ => (true, FacetReason::ModeInequality),
            };
            FacetClass {
                inequality: ineq.clone(),
                facet,
                reason,
            }
        })
        .collect())
}

pub fn facets_json(g: &Graph, classes: &[FacetClass]) -> Value {
    let rows: Vec<(Inequality, bool)> = classes
        .iter()
        .map(|f| (f.inequality.clone(), f.facet))
        .collect();
    hrep_json(g, &rows)
}

/// Dimension of the polytope, certified by the affine rank of the simplex
/// spanned by `δ_x` (`x` a mode) and `e_C^{y}` (`y` not a mode).
pub fn dimension(g: &Graph, c: &ModeSet) -> Result<usize> {
    require_independent(g, c)?;
    affine_rank(&witness_simplex(g, c))
}

/// `|V|` affinely independent points of the polytope.
pub fn witness_simplex(g: &Graph, c: &ModeSet) -> Vec<Vec<Rational>> {
    (0..g.len())
        .map(|x| {
            if c.contains(x) {
                Distribution::point_mass(g.len(), x)
            } else {
                uniform_generator(g, c, &[x])
            }
            .into_vec()
        })
        .collect()
}

/// `vol(M) / vol(Δ(V)) = e(P) / |V|!`.
pub fn volume_ratio(g: &Graph, c: &ModeSet) -> Result<Rational> {
    volume_ratio_with_budget(g, c, DEFAULT_MAX_IDEALS)
}

pub fn volume_ratio_with_budget(g: &Graph, c: &ModeSet, max_ideals: u64) -> Result<Rational> {
    volume_ratio_poset_with_budget(&poset_from_modes(g, c)?, max_ideals)
}

/// Positivity for every element, then `p_upper >= p_lower` for every cover.
pub fn hrep_poset(p: &Poset) -> HRep {
    let mut rows: Vec<Inequality> = (0..p.len()).map(Inequality::positivity).collect();
    let mut covers = p.covers().to_vec();
    covers.sort_unstable_by_key(|&(lo, hi)| (hi, lo));
    rows.extend(covers.iter().map(|&(lo, hi)| Inequality::order(hi, lo)));
    HRep::new(p.len(), rows)
}

pub fn volume_ratio_poset(p: &Poset) -> Result<Rational> {
    volume_ratio_poset_with_budget(p, DEFAULT_MAX_IDEALS)
}

pub fn volume_ratio_poset_with_budget(p: &Poset, max_ideals: u64) -> Result<Rational> {
    let count = p.count_linear_extensions(max_ideals)?;
    Ok(Rational::new(
        BigInt::from(count),
        BigInt::from(factorial(p.len())),
    ))
}

/// A linear extension `σ` of `poset` along which `values` ascend.
///
/// Values are sorted ascending; runs of equal values are ordered so that
/// poset-lower elements come first, breaking remaining ties by index. The
/// caller guarantees `values` satisfy every order inequality.
pub fn ascending_extension(poset: &Poset, values: &[Rational]) -> Vec<usize> {
    let mut by_value: Vec<usize> = (0..values.len()).collect();
    by_value.sort_by(|&a, &b| values[a].cmp(&values[b]).then(a.cmp(&b)));
    let mut order = Vec::with_capacity(values.len());
    let mut start = 0;
    while start < by_value.len() {
        let mut end = start + 1;
        while end < by_value.len() && values[by_value[end]] == values[by_value[start]] {
            end += 1;
        }
        let group = &by_value[start..end];
        let mut in_group = vec![false; values.len()];
        for &x in group {
            in_group[x] = true;
        }
        // Kahn's algorithm inside the tie group, smallest index first
        let mut missing: BTreeMap<usize, usize> = group
            .iter()
            .map(|&x| {
                let below = poset
                    .lower_covers(x)
                    .iter()
                    .filter(|&&lo| in_group[lo])
                    .count();
                (x, below)
            })
            .collect();
        while let Some((&x, _)) = missing.iter().find(|(_, &m)| m == 0) {
            missing.remove(&x);
            order.push(x);
            for &hi in poset.upper_covers(x) {
                if let Some(m) = missing.get_mut(&hi) {
                    *m -= 1;
                }
            }
        }
        debug_assert!(missing.is_empty(), "poset has a cycle");
        start = end;
    }
    order
}

/// The simplex `Δ_σ` of the triangulation containing `p`.
pub fn locate_simplex(p: &Distribution, g: &Graph, c: &ModeSet) -> Result<Vec<usize>> {
    p.check_against(g)?;
    if let Some(v) = hrep(g, c)?.first_violation(p.probabilities()) {
        return Err(Error::NotMember(Box::new(v)));
    }
    let poset = poset_from_modes(g, c)?;
    Ok(ascending_extension(&poset, p.probabilities()))
}

/// Writes `p` as a convex combination of vertices.
///
/// Each round takes the non-mode support `W` of the remainder, splits it
/// into auxiliary-graph components `W_i`, and subtracts
/// `m_i * |W_i ∪ N_C(W_i)| * e_C^{W_i}` where `m_i` is the smallest mass on
/// `W_i`. The components have disjoint mode neighborhoods, so each round
/// keeps every prescribed node a mode and empties at least one node of each
/// component. What is left sits on the modes and is split into point masses.
pub fn decompose(p: &Distribution, g: &Graph, c: &ModeSet) -> Result<Vec<(Vertex, Rational)>> {
    p.check_against(g)?;
    if let Some(v) = hrep(g, c)?.first_violation(p.probabilities()) {
        return Err(Error::NotMember(Box::new(v)));
    }
    let aux = AuxiliaryGraph::new(g, c)?;
    let mut rest = p.probabilities().to_vec();
    let mut weights: BTreeMap<Generator, Rational> = BTreeMap::new();
    loop {
        let w: Vec<usize> = (0..g.len())
            .filter(|&x| !c.contains(x) && !rest[x].is_zero())
            .collect();
        if w.is_empty() {
            break;
        }
        for comp in aux.components_of(&w) {
            let least = comp
                .iter()
                .map(|&x| rest[x].clone())
                .min()
                .expect("components are nonempty");
            let mut support = mode_neighbors(g, c, &comp);
            support.extend_from_slice(&comp);
            for &x in &support {
                rest[x] -= &least;
                debug_assert!(!rest[x].is_negative());
            }
            let weight = least * Rational::from_integer(support.len().into());
            *weights
                .entry(Generator::Uniform(comp))
                .or_insert_with(Rational::zero) += weight;
        }
    }
    for &x in c.members() {
        if !rest[x].is_zero() {
            weights.insert(Generator::PointMass(x), rest[x].clone());
        }
    }
    Ok(weights
        .into_iter()
        .map(|(generator, weight)| {
            let distribution = match &generator {
                Generator::PointMass(x) => Distribution::point_mass(g.len(), *x),
                Generator::Uniform(w) => uniform_generator(g, c, w),
            };
            (
                Vertex {
                    generator,
                    distribution,
                },
                weight,
            )
        })
        .collect())
}

/// `Σ weight * vertex`.
pub fn recombine<'a, I>(n: usize, parts: I) -> Vec<Rational>
where
    I: IntoIterator<Item = (&'a Distribution, &'a Rational)>,
{
    let mut out = vec![Rational::zero(); n];
    for (d, w) in parts {
        for (o, q) in out.iter_mut().zip(d.probabilities()) {
            *o += w * q;
        }
    }
    out
}
