//! Mode extraction, polytope membership with violation certificates, and
//! reports on what a non-independent mode set forces.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{adjacent_pairs, Graph, ModeSet};
use crate::linalg::{format_rational, Rational};
use crate::polytope::{Distribution, HRep, Inequality};
use crate::{mode_polytope, strong_polytope};

/// Weak (`>=`) or strict (`>`) comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    Weak,
    Strict,
}

impl Strictness {
    fn accepts(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Strictness::Weak => lhs >= rhs,
            Strictness::Strict => lhs > rhs,
        }
    }
}

/// An inequality `lhs >= rhs` that fails at a given point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationCertificate {
    pub inequality: Inequality,
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs - rhs`, always negative.
    pub slack: Rational,
}

impl ViolationCertificate {
    pub(crate) fn new(inequality: Inequality, p: &[Rational]) -> Self {
        let (lhs, rhs) = inequality.sides(p);
        let slack = &lhs - &rhs;
        debug_assert!(slack.is_negative());
        ViolationCertificate {
            inequality,
            lhs,
            rhs,
            slack,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        serde_json::json!({
            "kind": self.inequality.kind.tag(g),
            "lhs": format_rational(&self.lhs),
            "rhs": format_rational(&self.rhs),
            "slack": format_rational(&self.slack),
        })
    }
}

impl fmt::Display for ViolationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails: {} < {} (slack {})",
            self.inequality,
            format_rational(&self.lhs),
            format_rational(&self.rhs),
            format_rational(&self.slack)
        )
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violation: Option<ViolationCertificate>,
}

impl Membership {
    fn from_hrep(h: &HRep, p: &Distribution) -> Self {
        let violation = h.first_violation(p.probabilities());
        Membership {
            member: violation.is_none(),
            violation,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let mut obj = serde_json::json!({ "member": self.member });
        if let Some(v) = &self.violation {
            obj["violation"] = v.to_json(g);
        }
        obj
    }
}

fn neighbor_mass(p: &Distribution, g: &Graph, x: usize) -> Rational {
    g.neighbors(x)
        .iter()
        .fold(Rational::zero(), |acc, &y| acc + p.get(y))
}

/// Nodes whose mass is at least (or, if strict, above) that of every
/// neighbor. Isolated nodes always qualify.
pub fn modes_of(p: &Distribution, g: &Graph, strictness: Strictness) -> Result<Vec<usize>> {
    p.check_against(g)?;
    Ok((0..g.len())
        .filter(|&x| {
            g.neighbors(x)
                .iter()
                .all(|&y| strictness.accepts(p.get(x), p.get(y)))
        })
        .collect())
}

/// Nodes whose mass is at least (or, if strict, above) the total mass of
/// their neighbors.
pub fn strong_modes_of(p: &Distribution, g: &Graph, strictness: Strictness) -> Result<Vec<usize>> {
    p.check_against(g)?;
    Ok((0..g.len())
        .filter(|&x| strictness.accepts(p.get(x), &neighbor_mass(p, g, x)))
        .collect())
}

pub fn strict_modes_of(p: &Distribution, g: &Graph) -> Result<Vec<usize>> {
    modes_of(p, g, Strictness::Strict)
}

pub fn strict_strong_modes_of(p: &Distribution, g: &Graph) -> Result<Vec<usize>> {
    strong_modes_of(p, g, Strictness::Strict)
}

pub fn in_mode_polytope(p: &Distribution, g: &Graph, c: &ModeSet) -> Result<Membership> {
    p.check_against(g)?;
    Ok(Membership::from_hrep(&mode_polytope::hrep(g, c)?, p))
}

pub fn in_strong_polytope(p: &Distribution, g: &Graph, c: &ModeSet) -> Result<Membership> {
    p.check_against(g)?;
    Ok(Membership::from_hrep(&strong_polytope::hrep(g, c)?, p))
}

/// Constraints forced on every distribution by adjacent prescribed modes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegeneracyReport {
    /// Adjacent prescribed modes `(x, y)`; both polytopes force `p_x = p_y`.
    pub equalities: Vec<(String, String)>,
    /// Nodes forced to zero mass in the strong-mode polytope: every other
    /// neighbor of an adjacent pair of strong modes.
    pub strong_zeros: Vec<String>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "mode": {
                "equalities": self.equalities,
            },
            "strong": {
                "equalities": self.equalities,
                "zeros": self.strong_zeros,
            },
        })
    }
}

impl fmt::Display for DegeneracyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self
            .equalities
            .iter()
            .map(|(a, b)| format!("p_{a} = p_{b}"))
            .collect();
        write!(f, "forced {}", eqs.join(", "))?;
        if !self.strong_zeros.is_empty() {
            let zeros: Vec<String> = self
                .strong_zeros
                .iter()
                .map(|z| format!("p_{z} = 0"))
                .collect();
            write!(f, "; for strong modes also {}", zeros.join(", "))?;
        }
        Ok(())
    }
}

pub fn degeneracy_report(g: &Graph, c: &ModeSet) -> DegeneracyReport {
    let pairs = adjacent_pairs(g, c);
    let mut zeros = vec![false; g.len()];
    for &(x, y) in &pairs {
        for &z in g.neighbors(x).iter().chain(g.neighbors(y)) {
            if z != x && z != y {
                zeros[z] = true;
            }
        }
    }
    DegeneracyReport {
        equalities: pairs
            .iter()
            .map(|&(x, y)| (g.label(x).to_owned(), g.label(y).to_owned()))
            .collect(),
        strong_zeros: (0..g.len())
            .filter(|&z| zeros[z])
            .map(|z| g.label(z).to_owned())
            .collect(),
    }
}

pub(crate) fn require_independent(g: &Graph, c: &ModeSet) -> Result<()> {
    if let Some(&bad) = c.members().iter().find(|&&v| v >= g.len()) {
        return Err(Error::invalid(format!("mode index {bad} out of range")));
    }
    let report = degeneracy_report(g, c);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::NotIndependent(report))
    }
}
