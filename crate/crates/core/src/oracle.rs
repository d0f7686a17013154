//! Independent checks for the closed-form results: brute-force vertex
//! enumeration from inequalities, a second extension counter, a direct
//! alternating-path search, Monte Carlo volume estimates, and the
//! strong-mode bound for mixtures of unimodal distributions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, ModeSet};
use crate::linalg::{affine_rank, RatMatrix, Rational};
use crate::membership::{modes_of, strict_modes_of, strict_strong_modes_of, Strictness};
use crate::polytope::{Distribution, HRep, Inequality};
use crate::poset::Poset;

/// Largest `|V|` [`naive_vertex_enum`] accepts.
pub const NAIVE_VERTEX_MAX_DIM: usize = 10;

/// SplitMix64: a 64-bit counter passed through a fixed mixing function.
///
/// `state += 0x9E3779B97F4A7C15`, then
/// `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
/// `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`,
/// output `z ^ (z >> 31)`, all arithmetic wrapping mod 2^64.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for `index`, e.g. a worker or chunk number.
    pub fn derive(seed: u64, index: u64) -> Self {
        let mut root = SplitMix64::new(seed ^ mix(index.wrapping_add(0x632B_E59B_D9B4_E019)));
        SplitMix64::new(root.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix(self.state)
    }

    /// Uniform in the open interval `(0, 1)`.
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard exponential variate.
    pub fn next_exp(&mut self) -> f64 {
        -self.next_open01().ln()
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        // bias is below 2^-40 for the bounds used here
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Denominator shared by every sampled point: `2^53`.
pub const DYADIC_BITS: u32 = 53;
pub const DYADIC_ONE: i64 = 1 << DYADIC_BITS;

/// A point of the simplex with coordinates `numerators[i] / 2^53`; the
/// numerators sum to exactly `2^53`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicPoint {
    pub numerators: Vec<i64>,
}

impl DyadicPoint {
    pub fn to_distribution(&self) -> Distribution {
        let den = num_bigint::BigInt::from(DYADIC_ONE);
        Distribution::new(
            self.numerators
                .iter()
                .map(|&v| Rational::new(v.into(), den.clone()))
                .collect(),
        )
        .expect("numerators sum to the denominator")
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&v| v as f64 / DYADIC_ONE as f64)
            .collect()
    }
}

/// Uniform sample from the simplex with `n` coordinates (normalized
/// exponential variates), as floating point. Inexact by nature.
pub fn sample_simplex_f64(n: usize, rng: &mut SplitMix64) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| rng.next_exp()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / total).collect()
}

/// [`sample_simplex_f64`] truncated to multiples of `2^-53`; the last
/// coordinate absorbs the truncation so the point stays in the simplex.
pub fn sample_simplex(n: usize, rng: &mut SplitMix64) -> DyadicPoint {
    assert!(n >= 1, "the simplex needs at least one coordinate");
    let x = sample_simplex_f64(n, rng);
    let mut numerators: Vec<i64> = x[..n - 1]
        .iter()
        .map(|&v| (v * DYADIC_ONE as f64).floor() as i64)
        .collect();
    let used: i64 = numerators.iter().sum();
    numerators.push(DYADIC_ONE - used);
    DyadicPoint { numerators }
}

/// Fraction of uniform simplex samples accepted by a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McEstimate {
    pub hits: u64,
    pub trials: u64,
}

impl McEstimate {
    pub fn estimate(&self) -> Rational {
        Rational::new(self.hits.into(), self.trials.into())
    }

    pub fn estimate_f64(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    /// `sqrt(q (1 - q) / trials)` with `q` the estimate.
    pub fn std_error(&self) -> f64 {
        let q = self.estimate_f64();
        (q * (1.0 - q) / self.trials as f64).sqrt()
    }

    /// A rational number no smaller than [`Self::std_error`].
    pub fn std_error_bound(&self) -> Rational {
        let s = self.std_error();
        // round up on a 2^-40 grid
        let scaled = (s * (1u64 << 40) as f64).ceil() as u64 + 1;
        Rational::new(scaled.into(), (1u64 << 40).into())
    }

    /// Whether `exact` lies within `sigmas` standard errors of the estimate.
    /// A zero standard error (all hits or none) is replaced by that of a
    /// single hit.
    pub fn agrees_with(&self, exact: &Rational, sigmas: f64) -> bool {
        let exact = rational_to_f64(exact);
        let floor = ((1.0 / self.trials as f64) * (1.0 - 1.0 / self.trials as f64)
            / self.trials as f64)
            .sqrt();
        let se = self.std_error().max(floor);
        (self.estimate_f64() - exact).abs() <= sigmas * se
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Samples drawn per independent stream; the split of trials into streams
/// depends only on `trials`, not on the thread count.
pub const MC_CHUNK: u64 = 1 << 16;

/// Monte Carlo estimate of the fraction of the simplex accepted by
/// `predicate`.
pub fn montecarlo_volume<F>(predicate: F, n: usize, trials: u64, seed: u64) -> McEstimate
where
    F: Fn(&DyadicPoint) -> bool + Sync,
{
    let chunks = trials.div_ceil(MC_CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = SplitMix64::derive(seed, chunk);
            let size = MC_CHUNK.min(trials - chunk * MC_CHUNK);
            (0..size)
                .filter(|_| predicate(&sample_simplex(n, &mut rng)))
                .count() as u64
        })
        .sum();
    McEstimate { hits, trials }
}

/// Exact membership test for the polytope `h` on sampled points.
pub fn hrep_predicate(h: &HRep) -> impl Fn(&DyadicPoint) -> bool + Sync + '_ {
    let compiled = h.integer_form();
    move |p: &DyadicPoint| match &compiled {
        Some(ints) => ints.contains(&p.numerators),
        None => h.contains(p.to_distribution().probabilities()),
    }
}

/// Row-reduced system of equalities, always including `Σ p = 1`.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(Vec<Rational>, Rational)>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn normalization(n: usize) -> Self {
        Echelon {
            rows: vec![(vec![Rational::one(); n], Rational::one())],
            pivots: vec![0],
        }
    }

    /// Adds `row = 0`, or `None` if it is dependent on what is there.
    fn with(&self, mut row: Vec<Rational>) -> Option<Self> {
        let mut rhs = Rational::zero();
        for ((basis, b_rhs), &c) in self.rows.iter().zip(&self.pivots) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (r, b) in row.iter_mut().zip(basis) {
                *r -= &f * b;
            }
            rhs -= &f * b_rhs;
        }
        let pivot = row.iter().position(|v| !v.is_zero())?;
        let inv = Rational::one() / &row[pivot];
        for r in row.iter_mut() {
            *r *= &inv;
        }
        rhs *= &inv;
        let mut next = self.clone();
        for (basis, b_rhs) in next.rows.iter_mut() {
            if basis[pivot].is_zero() {
                continue;
            }
            let f = basis[pivot].clone();
            for (b, r) in basis.iter_mut().zip(&row) {
                *b -= &f * r;
            }
            *b_rhs -= &f * &rhs;
        }
        next.rows.push((row, rhs));
        next.pivots.push(pivot);
        Some(next)
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for ((_, rhs), &c) in self.rows.iter().zip(&self.pivots) {
            x[c] = rhs.clone();
        }
        x
    }
}

/// Every vertex of the polytope `h ∩ {Σ p = 1}`, found by solving every
/// linearly independent choice of `|V| - 1` tight inequalities and keeping
/// the feasible solutions. Sorted, deduplicated.
pub fn naive_vertex_enum(h: &HRep) -> Result<Vec<Vec<Rational>>> {
    let n = h.dimension();
    if n > NAIVE_VERTEX_MAX_DIM {
        return Err(Error::OutOfRange {
            what: "dimension for naive vertex enumeration",
            value: n,
            range: format!("1..={NAIVE_VERTEX_MAX_DIM}"),
        });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let rows: Vec<Vec<Rational>> = h.inequalities().iter().map(|i| i.dense(n)).collect();
    let mut found = BTreeSet::new();
    search_vertices(h, &rows, 0, &Echelon::normalization(n), &mut found);
    Ok(found.into_iter().collect())
}

fn search_vertices(
    h: &HRep,
    rows: &[Vec<Rational>],
    start: usize,
    basis: &Echelon,
    found: &mut BTreeSet<Vec<Rational>>,
) {
    let n = h.dimension();
    if basis.rows.len() == n {
        let x = basis.solution(n);
        if h.contains(&x) {
            found.insert(x);
        }
        return;
    }
    let needed = n - basis.rows.len();
    for i in start..rows.len() {
        if rows.len() - i < needed {
            break;
        }
        if let Some(next) = basis.with(rows[i].clone()) {
            search_vertices(h, rows, i + 1, &next, found);
        }
    }
}

/// Rank of the tight inequalities at `p` together with the normalization;
/// a feasible `p` is a vertex iff this equals `|V|`.
pub fn tight_rank(h: &HRep, p: &[Rational]) -> usize {
    let n = h.dimension();
    let mut rows = vec![vec![Rational::one(); n]];
    rows.extend(
        h.inequalities()
            .iter()
            .filter(|i| i.is_tight(p))
            .map(|i| i.dense(n)),
    );
    RatMatrix::from_rows(rows)
        .expect("rows share a length")
        .rank()
}

/// Affine rank of the points of `vertices` lying on `inequality = 0`, or
/// `None` if none do.
pub fn face_rank(inequality: &Inequality, vertices: &[Vec<Rational>]) -> Option<usize> {
    let on: Vec<Vec<Rational>> = vertices
        .iter()
        .filter(|v| inequality.is_tight(v))
        .cloned()
        .collect();
    if on.is_empty() {
        None
    } else {
        Some(affine_rank(&on).expect("nonempty"))
    }
}

/// Whether the inequality cuts out a facet of the polytope spanned by
/// `vertices` in a space of `n` coordinates.
pub fn is_facet_by_rank(inequality: &Inequality, vertices: &[Vec<Rational>], n: usize) -> bool {
    n >= 2 && face_rank(inequality, vertices) == Some(n - 2)
}

/// Linear extensions counted top-down: the extensions of a set of
/// remaining elements are those of the set minus one of its minimal
/// elements, with the remaining set as memo key.
pub fn count_extensions_recursive(p: &Poset, max_states: u64) -> Result<BigUint> {
    if p.len() > 128 {
        return Err(Error::OutOfRange {
            what: "poset size for recursive counting",
            value: p.len(),
            range: "0..=128".into(),
        });
    }
    let below: Vec<u128> = (0..p.len())
        .map(|x| p.lower_covers(x).iter().fold(0, |m, &lo| m | (1u128 << lo)))
        .collect();
    let full = if p.is_empty() {
        0
    } else {
        u128::MAX >> (128 - p.len())
    };
    let mut memo: HashMap<u128, BigUint> = HashMap::new();
    remaining_extensions(full, &below, &mut memo, max_states)
}

fn remaining_extensions(
    remaining: u128,
    below: &[u128],
    memo: &mut HashMap<u128, BigUint>,
    max_states: u64,
) -> Result<BigUint> {
    if remaining.count_ones() <= 1 {
        return Ok(BigUint::one());
    }
    if let Some(v) = memo.get(&remaining) {
        return Ok(v.clone());
    }
    let mut total = BigUint::zero();
    let mut bits = remaining;
    while bits != 0 {
        let x = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if below[x] & remaining == 0 {
            total += remaining_extensions(remaining & !(1u128 << x), below, memo, max_states)?;
        }
    }
    if memo.len() as u64 >= max_states {
        return Err(Error::BudgetExceeded {
            what: "recursive counter state",
            limit: max_states,
            reached: memo.len() as u64 + 1,
        });
    }
    memo.insert(remaining, total.clone());
    Ok(total)
}

/// Whether every two nodes of `w` are joined by a path in `g` whose nodes
/// alternate between `w` and modes adjacent to `w`.
pub fn alternating_connected(g: &Graph, c: &ModeSet, w: &[usize]) -> bool {
    let Some(&start) = w.first() else {
        return false;
    };
    let in_w = |x: usize| w.contains(&x);
    let mut seen = vec![false; g.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        // x in W; step to a mode neighbor, then to a W neighbor of that mode
        for &z in g.neighbors(x) {
            if !c.contains(z) || seen[z] {
                continue;
            }
            seen[z] = true;
            for &y in g.neighbors(z) {
                if in_w(y) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    w.iter().all(|&x| seen[x])
}

/// Outcome of [`mixture_strong_mode_test`].
#[derive(Clone, Debug, Default)]
pub struct MixtureReport {
    pub trials: u64,
    pub components: usize,
    /// Largest number of strict strong modes seen in any mixture.
    pub max_strict_strong_modes: usize,
    /// Mixtures with more than `components` strict strong modes.
    pub count_violations: Vec<Distribution>,
    /// Strict strong modes of a mixture that are not a mode of any
    /// component.
    pub mode_violations: u64,
}

impl MixtureReport {
    pub fn passed(&self) -> bool {
        self.count_violations.is_empty() && self.mode_violations == 0
    }
}

/// Retries allowed per component when rejection-sampling a unimodal
/// distribution.
pub const UNIMODAL_RETRIES: usize = 1000;

/// Flat Dirichlet sample conditioned on having exactly one strict mode.
pub fn sample_unimodal(g: &Graph, rng: &mut SplitMix64) -> Result<Distribution> {
    for _ in 0..UNIMODAL_RETRIES {
        let p = sample_simplex(g.len(), rng).to_distribution();
        if strict_modes_of(&p, g)?.len() == 1 {
            return Ok(p);
        }
    }
    Err(Error::RetryBudget(UNIMODAL_RETRIES))
}

/// Mixes `k` random unimodal distributions with random weights, `trials`
/// times, and checks that the mixture never has more than `k` strict strong
/// modes, each of which is a mode of some component.
pub fn mixture_strong_mode_test(
    g: &Graph,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<MixtureReport> {
    if k == 0 {
        return Err(Error::invalid("a mixture needs at least one component"));
    }
    let mut rng = SplitMix64::new(seed);
    let mut report = MixtureReport {
        trials,
        components: k,
        ..Default::default()
    };
    for _ in 0..trials {
        let parts = (0..k)
            .map(|_| sample_unimodal(g, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let weights = sample_simplex(k, &mut rng).to_distribution();
        let mixture = mix_distributions(&parts, weights.probabilities());
        let strong = strict_strong_modes_of(&mixture, g)?;
        report.max_strict_strong_modes = report.max_strict_strong_modes.max(strong.len());
        if strong.len() > k {
            report.count_violations.push(mixture.clone());
        }
        let component_modes = parts
            .iter()
            .map(|p| modes_of(p, g, Strictness::Weak))
            .collect::<Result<Vec<_>>>()?;
        for x in strong {
            if !component_modes.iter().any(|m| m.contains(&x)) {
                report.mode_violations += 1;
            }
        }
    }
    Ok(report)
}

/// `Σ_i weights[i] * parts[i]`.
pub fn mix_distributions(parts: &[Distribution], weights: &[Rational]) -> Distribution {
    let n = parts[0].len();
    let mut out = vec![Rational::zero(); n];
    for (p, w) in parts.iter().zip(weights) {
        for (o, q) in out.iter_mut().zip(p.probabilities()) {
            *o += w * q;
        }
    }
    Distribution::new(out).expect("convex combination of distributions")
}

/// Random convex combination of `points` with small positive rational
/// weights; used to sample exact interior-ish members of a polytope.
pub fn random_convex_combination(points: &[Vec<Rational>], rng: &mut SplitMix64) -> Vec<Rational> {
    let raw: Vec<u64> = points.iter().map(|_| rng.below(20)).collect();
    let raw: Vec<u64> = if raw.iter().all(|&v| v == 0) {
        vec![1; points.len()]
    } else {
        raw
    };
    let total: u64 = raw.iter().sum();
    let n = points[0].len();
    let mut out = vec![Rational::zero(); n];
    for (p, &w) in points.iter().zip(&raw) {
        if w == 0 {
            continue;
        }
        let w = Rational::new(w.into(), total.into());
        for (o, q) in out.iter_mut().zip(p) {
            *o += &w * q;
        }
    }
    debug_assert!(out.iter().all(|v| !v.is_negative()));
    out
}
