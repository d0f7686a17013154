//! Finite strict partial orders and exact linear-extension counting.
//!
//! A linear extension is read as an ascending order: every element appears
//! after everything below it. For the order induced by a graph and an
//! independent mode set, the linear extensions are exactly the orderings
//! that index the simplices triangulating the mode polytope.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, ModeSet};
use crate::membership::require_independent;

/// Default cap on the number of order ideals the counter may store.
pub const DEFAULT_MAX_IDEALS: u64 = 1 << 26;
/// Default cap on the number of extensions [`Poset::enumerate_extensions`]
/// will list.
pub const DEFAULT_MAX_EXTENSIONS: u64 = 100_000;
/// Largest poset accepted by the permutation-filtering counter.
pub const NAIVE_MAX_ELEMENTS: usize = 10;
/// Ideals are bitmasks, so connected components are limited to this many
/// elements.
pub const MAX_DP_ELEMENTS: usize = 128;

/// Strict partial order stored as its cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    /// Cover pairs `(lower, upper)`, sorted.
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds the order generated by `relations` (pairs `(lower, upper)` of
    /// element indices). Fails if the generated relation has a cycle.
    pub fn new(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut seen = std::collections::HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateNode(e.clone()));
            }
        }
        let mut up = vec![Vec::new(); n];
        for &(lo, hi) in relations {
            if lo >= n || hi >= n {
                return Err(Error::invalid(format!(
                    "relation ({lo}, {hi}) out of range"
                )));
            }
            if lo == hi {
                return Err(Error::NotAPartialOrder(elements[lo].clone()));
            }
            up[lo].push(hi);
        }
        // strict upsets by DFS from each element
        let mut above = vec![vec![false; n]; n];
        for start in 0..n {
            let mut stack: Vec<usize> = up[start].clone();
            while let Some(v) = stack.pop() {
                if v == start {
                    return Err(Error::NotAPartialOrder(elements[start].clone()));
                }
                if !above[start][v] {
                    above[start][v] = true;
                    stack.extend(&up[v]);
                }
            }
        }
        let mut covers = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if above[lo][hi] && !(0..n).any(|mid| above[lo][mid] && above[mid][hi]) {
                    covers.push((lo, hi));
                }
            }
        }
        Ok(Self::from_covers_unchecked(elements, covers))
    }

    fn from_covers_unchecked(elements: Vec<String>, mut covers: Vec<(usize, usize)>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        let n = elements.len();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            lower_covers[hi].push(lo);
            upper_covers[lo].push(hi);
        }
        Poset {
            elements,
            covers,
            lower_covers,
            upper_covers,
        }
    }

    pub fn antichain(elements: Vec<String>) -> Self {
        Self::from_covers_unchecked(elements, Vec::new())
    }

    pub fn chain(elements: Vec<String>) -> Self {
        let covers = (1..elements.len()).map(|i| (i - 1, i)).collect();
        Self::from_covers_unchecked(elements, covers)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PosetJson = serde_json::from_str(text)?;
        let index: HashMap<&str, usize> = raw
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownNode(l.to_owned()))
        };
        let relations = raw
            .covers
            .iter()
            .map(|(lo, hi)| Ok((lookup(lo)?, lookup(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(raw.elements, &relations)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = PosetJson {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(lo, hi)| (self.elements[lo].clone(), self.elements[hi].clone()))
                .collect(),
        };
        serde_json::to_value(raw).expect("poset serializes")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Cover pairs `(lower, upper)` of the transitive reduction.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// Applies `perm` to element positions: element `i` moves to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut elements = vec![String::new(); self.len()];
        for (i, e) in self.elements.iter().enumerate() {
            elements[perm[i]] = e.clone();
        }
        let covers = self
            .covers
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Self::from_covers_unchecked(elements, covers)
    }

    /// Whether `order` (a permutation of element indices, read bottom to top)
    /// respects every cover.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut position = vec![usize::MAX; self.len()];
        for (i, &x) in order.iter().enumerate() {
            if x >= self.len() || position[x] != usize::MAX {
                return false;
            }
            position[x] = i;
        }
        self.covers
            .iter()
            .all(|&(lo, hi)| position[lo] < position[hi])
    }

    /// Connected components of the comparability graph, each sorted, in
    /// order of their smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in self.lower_covers[x].iter().chain(&self.upper_covers[x]) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Lower-cover bitmasks of `comp`, indexed by position in `comp`.
    fn lower_masks(&self, comp: &[usize]) -> Result<Vec<u128>> {
        if comp.len() > MAX_DP_ELEMENTS {
            return Err(Error::OutOfRange {
                what: "connected component size for ideal counting",
                value: comp.len(),
                range: format!("0..={MAX_DP_ELEMENTS}"),
            });
        }
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in comp.iter().enumerate() {
            local[x] = i;
        }
        Ok(comp
            .iter()
            .map(|&x| {
                self.lower_covers[x]
                    .iter()
                    .fold(0u128, |m, &lo| m | (1u128 << local[lo]))
            })
            .collect())
    }

    /// Number of linear extensions, counted over order ideals.
    ///
    /// The count of an ideal is the sum of the counts of the ideals it covers
    /// in the ideal lattice. Ideals are processed one size at a time, so only
    /// two layers are held in memory; `max_ideals` bounds the total number
    /// visited. Connected components are counted separately and interleaved
    /// by a binomial factor. Counts are kept in `u128` and redone in big
    /// integers only if that overflows.
    pub fn count_linear_extensions(&self, max_ideals: u64) -> Result<BigUint> {
        let mut total = BigUint::one();
        let mut placed = 0;
        let mut visited = 0;
        for comp in self.components() {
            let k = comp.len();
            if k > 1 {
                let lower = self.lower_masks(&comp)?;
                let budget = max_ideals.saturating_sub(visited);
                let count = match ideal_dp::<u128>(&lower, budget, visited)? {
                    (Some(count), seen) => {
                        visited += seen;
                        BigUint::from(count)
                    }
                    (None, _) => {
                        let (count, seen) = ideal_dp::<BigUint>(&lower, budget, visited)?;
                        visited += seen;
                        count.expect("big integers do not overflow")
                    }
                };
                total *= count;
            }
            // interleave the new component with those already placed
            total = total * factorial(placed + k) / (factorial(placed) * factorial(k));
            placed += k;
        }
        Ok(total)
    }

    /// Counts linear extensions by filtering all permutations.
    pub fn count_linear_extensions_naive(&self) -> Result<BigUint> {
        let n = self.len();
        if n > NAIVE_MAX_ELEMENTS {
            return Err(Error::OutOfRange {
                what: "poset size for permutation filtering",
                value: n,
                range: format!("0..={NAIVE_MAX_ELEMENTS}"),
            });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut position = vec![0usize; n];
        let mut count: u64 = 0;
        // Heap's algorithm
        let mut c = vec![0usize; n];
        let mut check = |perm: &[usize]| {
            for (i, &x) in perm.iter().enumerate() {
                position[x] = i;
            }
            if self
                .covers
                .iter()
                .all(|&(lo, hi)| position[lo] < position[hi])
            {
                count += 1;
            }
        };
        check(&perm);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                check(&perm);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        Ok(BigUint::from(count))
    }

    /// Every linear extension as an ascending order, lexicographically
    /// sorted. Fails once more than `max_extensions` have been produced.
    pub fn enumerate_extensions(&self, max_extensions: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        let mut missing: Vec<usize> = self.lower_covers.iter().map(Vec::len).collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut out = Vec::new();
        self.extend_order(
            &mut missing,
            &mut placed,
            &mut order,
            &mut out,
            max_extensions,
        )?;
        Ok(out)
    }

    fn extend_order(
        &self,
        missing: &mut [usize],
        placed: &mut [bool],
        order: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: u64,
    ) -> Result<()> {
        if order.len() == self.len() {
            if out.len() as u64 >= limit {
                return Err(Error::BudgetExceeded {
                    what: "linear extension",
                    limit,
                    reached: out.len() as u64 + 1,
                });
            }
            out.push(order.clone());
            return Ok(());
        }
        for x in 0..self.len() {
            if placed[x] || missing[x] > 0 {
                continue;
            }
            placed[x] = true;
            order.push(x);
            for &hi in &self.upper_covers[x] {
                missing[hi] -= 1;
            }
            self.extend_order(missing, placed, order, out, limit)?;
            for &hi in &self.upper_covers[x] {
                missing[hi] += 1;
            }
            order.pop();
            placed[x] = false;
        }
        Ok(())
    }
}

trait Tally: Clone {
    fn unit() -> Self;
    /// `false` on overflow.
    fn accumulate(&mut self, other: &Self) -> bool;
}

impl Tally for u128 {
    fn unit() -> Self {
        1
    }

    fn accumulate(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Tally for BigUint {
    fn unit() -> Self {
        BigUint::one()
    }

    fn accumulate(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
}

/// Layered ideal DP over one component, returning the count (`None` if the
/// tally overflowed) and the number of ideals visited. `offset` is only used
/// to report the budget in whole-poset terms.
fn ideal_dp<T: Tally>(lower: &[u128], max_ideals: u64, offset: u64) -> Result<(Option<T>, u64)> {
    let mut layer: HashMap<u128, T> = HashMap::from([(0u128, T::unit())]);
    let mut visited: u64 = 1;
    for _ in 0..lower.len() {
        let mut next: HashMap<u128, T> = HashMap::with_capacity(layer.len() * 2);
        for (ideal, count) in &layer {
            for (x, &below) in lower.iter().enumerate() {
                let bit = 1u128 << x;
                if ideal & bit != 0 || below & !ideal != 0 {
                    continue;
                }
                match next.entry(ideal | bit) {
                    Entry::Occupied(mut e) => {
                        if !e.get_mut().accumulate(count) {
                            return Ok((None, visited));
                        }
                    }
                    Entry::Vacant(e) => {
                        visited += 1;
                        if visited > max_ideals {
                            return Err(Error::BudgetExceeded {
                                what: "order ideal",
                                limit: max_ideals + offset,
                                reached: visited + offset,
                            });
                        }
                        e.insert(count.clone());
                    }
                }
            }
        }
        layer = next;
    }
    Ok((
        Some(layer.into_values().next().unwrap_or_else(T::unit)),
        visited,
    ))
}

/// The order on the nodes of `g` in which each neighbor of a prescribed mode
/// lies below that mode.
///
/// With `c` independent the relation has no chains of length two, so it is
/// already transitively reduced and its pairs are the covers.
pub fn poset_from_modes(g: &Graph, c: &ModeSet) -> Result<Poset> {
    require_independent(g, c)?;
    let covers = c
        .members()
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().map(move |&y| (y, x)))
        .collect();
    Ok(Poset::from_covers_unchecked(g.labels().to_vec(), covers))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `|C|! * |V \ C|!`, a lower bound on the number of linear extensions of
/// [`poset_from_modes`].
pub fn extension_lower_bound(g: &Graph, c: &ModeSet) -> Result<BigUint> {
    require_independent(g, c)?;
    Ok(factorial(c.len()) * factorial(g.len() - c.len()))
}

/// Counts with the default ideal budget.
pub fn count_linear_extensions(p: &Poset) -> Result<BigUint> {
    p.count_linear_extensions(DEFAULT_MAX_IDEALS)
}
