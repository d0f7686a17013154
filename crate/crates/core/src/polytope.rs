//! Types shared by the mode and strong-mode polytopes: distributions,
//! inequalities, and H-representations inside the probability simplex.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::membership::ViolationCertificate;

/// Exact probability vector indexed by the nodes of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    probabilities: Vec<Rational>,
}

impl Distribution {
    pub fn new(probabilities: Vec<Rational>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = probabilities.iter().position(|p| p.is_negative()) {
            return Err(Error::invalid(format!("negative probability at index {i}")));
        }
        let total: Rational = probabilities.iter().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!(
                "probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Distribution { probabilities })
    }

    /// Uniform distribution on `support` within a space of `n` nodes.
    pub fn uniform_on(n: usize, support: &[usize]) -> Self {
        assert!(!support.is_empty(), "uniform distribution needs a support");
        let mass = Rational::new(1.into(), support.len().into());
        let mut probabilities = vec![Rational::zero(); n];
        for &v in support {
            probabilities[v] = mass.clone();
        }
        Distribution { probabilities }
    }

    pub fn point_mass(n: usize, node: usize) -> Self {
        Self::uniform_on(n, &[node])
    }

    pub fn uniform(n: usize) -> Self {
        Self::uniform_on(n, &(0..n).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.probabilities
    }

    pub fn get(&self, node: usize) -> &Rational {
        &self.probabilities[node]
    }

    /// Nodes with positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| !self.probabilities[v].is_zero())
            .collect()
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() != g.len() {
            return Err(Error::DimensionMismatch {
                expected: g.len(),
                found: self.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_against(&self, g: &Graph) -> Result<()> {
        self.check_graph(g)
    }

    /// Parses `{node: "num/den", ...}`; nodes left out carry zero mass.
    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let raw: Map<String, Value> = serde_json::from_str(text)?;
        let mut probabilities = vec![Rational::zero(); g.len()];
        for (label, value) in raw {
            let node = g.node(&label)?;
            let q = match &value {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() => {
                    Rational::from_integer(n.as_i64().unwrap().into())
                }
                other => {
                    return Err(Error::invalid(format!(
                        "probability of {label:?} must be a \"num/den\" string, got {other}"
                    )))
                }
            };
            probabilities[node] = q;
        }
        Distribution::new(probabilities)
    }

    /// `{node: "num/den"}` over all nodes in canonical order.
    pub fn to_json(&self, g: &Graph) -> Value {
        let map: Map<String, Value> = g
            .labels()
            .iter()
            .zip(&self.probabilities)
            .map(|(l, p)| (l.clone(), Value::String(format_rational(p))))
            .collect();
        Value::Object(map)
    }
}

/// Which defining inequality of a polytope this is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    /// `p_x >= 0`
    Positivity(usize),
    /// `p_mode >= p_neighbor`
    Mode { mode: usize, neighbor: usize },
    /// `p_mode >= sum of neighbor masses`
    StrongMode(usize),
    /// `p_upper >= p_lower` for a cover relation of a poset
    Order { upper: usize, lower: usize },
}

impl InequalityKind {
    pub fn tag(&self, g: &Graph) -> String {
        self.tag_with(g.labels())
    }

    pub fn tag_with(&self, labels: &[String]) -> String {
        match *self {
            InequalityKind::Positivity(x) => format!("positivity:{}", labels[x]),
            InequalityKind::Mode { mode, neighbor } => {
                format!("mode:{}>={}", labels[mode], labels[neighbor])
            }
            InequalityKind::StrongMode(x) => format!("strong:{}", labels[x]),
            InequalityKind::Order { upper, lower } => {
                format!("order:{}>={}", labels[upper], labels[lower])
            }
        }
    }
}

/// Homogeneous linear inequality `sum_i coeff_i * p_i >= 0`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub kind: InequalityKind,
    terms: Vec<(usize, Rational)>,
}

impl Inequality {
    pub fn new(kind: InequalityKind, mut terms: Vec<(usize, Rational)>) -> Self {
        terms.sort_by_key(|(i, _)| *i);
        terms.retain(|(_, c)| !c.is_zero());
        Inequality { kind, terms }
    }

    pub fn positivity(x: usize) -> Self {
        Self::new(InequalityKind::Positivity(x), vec![(x, Rational::one())])
    }

    pub fn mode(mode: usize, neighbor: usize) -> Self {
        Self::new(
            InequalityKind::Mode { mode, neighbor },
            vec![(mode, Rational::one()), (neighbor, -Rational::one())],
        )
    }

    pub fn order(upper: usize, lower: usize) -> Self {
        Self::new(
            InequalityKind::Order { upper, lower },
            vec![(upper, Rational::one()), (lower, -Rational::one())],
        )
    }

    pub fn strong_mode(mode: usize, neighbors: &[usize]) -> Self {
        let mut terms = vec![(mode, Rational::one())];
        terms.extend(neighbors.iter().map(|&y| (y, -Rational::one())));
        Self::new(InequalityKind::StrongMode(mode), terms)
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn dense(&self, n: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); n];
        for (i, c) in &self.terms {
            row[*i] = c.clone();
        }
        row
    }

    /// Splits the inequality into `lhs >= rhs` with nonnegative coefficients
    /// on each side and evaluates both at `p`.
    pub fn sides(&self, p: &[Rational]) -> (Rational, Rational) {
        let mut lhs = Rational::zero();
        let mut rhs = Rational::zero();
        for (i, c) in &self.terms {
            if c.is_positive() {
                lhs += c * &p[*i];
            } else {
                rhs -= c * &p[*i];
            }
        }
        (lhs, rhs)
    }

    pub fn value(&self, p: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (i, c)| acc + c * &p[*i])
    }

    pub fn holds(&self, p: &[Rational]) -> bool {
        !self.value(p).is_negative()
    }

    pub fn is_tight(&self, p: &[Rational]) -> bool {
        self.value(p).is_zero()
    }

    /// Integer coefficients, when all coefficients are integers that fit.
    pub fn integer_terms(&self) -> Option<Vec<(usize, i64)>> {
        self.terms
            .iter()
            .map(|(i, c)| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok().map(|v| (*i, v))
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in &self.terms {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            write!(f, "p[{i}]")?;
        }
        write!(f, " >= 0")
    }
}

/// Inequality description of a polytope inside the probability simplex.
///
/// The normalization `sum p = 1` is implicit; positivity constraints are
/// listed explicitly, first, in node order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    dimension: usize,
    inequalities: Vec<Inequality>,
}

impl HRep {
    pub fn new(dimension: usize, inequalities: Vec<Inequality>) -> Self {
        HRep {
            dimension,
            inequalities,
        }
    }

    /// Number of coordinates, `|V|`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.dimension && self.inequalities.iter().all(|h| h.holds(p))
    }

    pub fn first_violation(&self, p: &[Rational]) -> Option<ViolationCertificate> {
        self.inequalities
            .iter()
            .find(|h| !h.holds(p))
            .map(|h| ViolationCertificate::new(h.clone(), p))
    }

    /// Compiles the inequalities to machine integers for fast exact checks on
    /// points with a common denominator. `None` when some coefficient is not
    /// a small integer.
    pub fn integer_form(&self) -> Option<IntegerHRep> {
        let rows = self
            .inequalities
            .iter()
            .map(Inequality::integer_terms)
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerHRep { rows })
    }
}

/// An [`HRep`] with integer coefficients, evaluated on integer numerators
/// over a shared positive denominator. Sign checks are then exact.
#[derive(Clone, Debug)]
pub struct IntegerHRep {
    rows: Vec<Vec<(usize, i64)>>,
}

impl IntegerHRep {
    pub fn contains(&self, numerators: &[i64]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .map(|&(i, c)| c as i128 * numerators[i] as i128)
                .sum::<i128>()
                >= 0
        })
    }
}

/// Serializes an H-rep as `[{"kind": ..., "facet": bool}, ...]`.
pub fn hrep_json(g: &Graph, rows: &[(Inequality, bool)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(h, facet)| {
                serde_json::json!({
                    "kind": h.kind.tag(g),
                    "facet": facet,
                })
            })
            .collect(),
    )
}
