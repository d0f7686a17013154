//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use mode_polytopes::linalg::{format_rational, rat};
use mode_polytopes::oracle::{
    count_extensions_recursive, hrep_predicate, mixture_strong_mode_test, montecarlo_volume,
    naive_vertex_enum, random_convex_combination, sample_simplex, SplitMix64,
};
use mode_polytopes::poset::{factorial, DEFAULT_MAX_IDEALS};
use mode_polytopes::{
    even_parity_set, extension_lower_bound, mode_polytope, poset_from_modes, strong_polytope,
    Distribution, Graph, ModeSet, Poset, Rational,
};

/// Linear extensions of the 4-cube with even-parity modes. Computed by the
/// ideal DP and confirmed by the recursive counter and a separate subset DP.
const HYPERCUBE4_EVEN_EXTENSIONS: u64 = 3_804_143_616;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn square() -> (Graph, ModeSet) {
    let g = Graph::hypercube(2).unwrap();
    let c = ModeSet::from_labels(&g, &["01", "10"]).unwrap();
    (g, c)
}

fn cube_even() -> (Graph, ModeSet) {
    let g = Graph::hypercube(3).unwrap();
    let c = even_parity_set(&g);
    (g, c)
}

fn timed<T>(
    limit: Duration,
    f: impl FnOnce() -> Result<T, String>,
) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))?;
    Ok((out, took))
}

fn extension_counts() -> Outcome {
    let (counts, took) = timed(Duration::from_secs(1), || {
        let sq = Graph::hypercube(2).map_err(err)?;
        let a = poset_from_modes(&sq, &even_parity_set(&sq))
            .and_then(|p| p.count_linear_extensions(DEFAULT_MAX_IDEALS))
            .map_err(err)?;
        let (g, c) = cube_even();
        let b = poset_from_modes(&g, &c)
            .and_then(|p| p.count_linear_extensions(DEFAULT_MAX_IDEALS))
            .map_err(err)?;
        Ok((a, b))
    })?;
    ensure(
        counts == (4u32.into(), 720u32.into()),
        format!("got {counts:?}"),
    )?;
    Ok(format!("4 and 720 in {took:?}"))
}

fn volumes() -> Outcome {
    let (v, took) = timed(Duration::from_secs(1), || {
        let (sq, sc) = square();
        let (cu, cc) = cube_even();
        Ok([
            mode_polytope::volume_ratio(&sq, &sc).map_err(err)?,
            mode_polytope::volume_ratio(&cu, &cc).map_err(err)?,
            strong_polytope::volume_ratio(&sq, &sc).map_err(err)?,
            strong_polytope::volume_ratio(&cu, &cc).map_err(err)?,
        ])
    })?;
    let want = [rat(1, 6), rat(1, 56), rat(1, 9), rat(1, 256)];
    ensure(v == want, format!("got {v:?}"))?;
    let shown: Vec<String> = v.iter().map(format_rational).collect();
    Ok(format!("{} in {took:?}", shown.join(" ")))
}

fn point_set(points: Vec<Vec<Rational>>) -> BTreeSet<Vec<Rational>> {
    points.into_iter().collect()
}

fn vertex_counts() -> Outcome {
    let (sq, sc) = square();
    let (cu, ce) = cube_even();
    let c000 = ModeSet::from_labels(&cu, &["000"]).map_err(err)?;
    let cases = [
        ("square {01,10}", &sq, &sc, 5, 4),
        ("3-cube {000}", &cu, &c000, 12, 8),
        ("3-cube even", &cu, &ce, 19, 8),
    ];
    for (name, g, c, mode_count, strong_count) in cases {
        let mode = mode_polytope::vertices(g, c).map_err(err)?.points();
        let strong: Vec<Vec<Rational>> = strong_polytope::vertices(g, c)
            .map_err(err)?
            .into_iter()
            .map(|v| v.distribution.into_vec())
            .collect();
        ensure(
            mode.len() == mode_count && strong.len() == strong_count,
            format!("{name}: {} and {} vertices", mode.len(), strong.len()),
        )?;
        let naive_mode =
            naive_vertex_enum(&mode_polytope::hrep(g, c).map_err(err)?).map_err(err)?;
        let naive_strong =
            naive_vertex_enum(&strong_polytope::hrep(g, c).map_err(err)?).map_err(err)?;
        ensure(
            point_set(naive_mode) == point_set(mode),
            format!("{name}: mode vertices differ from brute force"),
        )?;
        ensure(
            point_set(naive_strong) == point_set(strong),
            format!("{name}: strong vertices differ from brute force"),
        )?;
    }
    Ok("5/4, 12/8, 19/8, equal to brute force".into())
}

fn two_mode_four_cube() -> Outcome {
    let g = Graph::hypercube(4).map_err(err)?;
    let c = ModeSet::from_labels(&g, &["0000", "1110"]).map_err(err)?;
    let m = mode_polytope::vertices(&g, &c).map_err(err)?.len();
    let s = strong_polytope::vertices(&g, &c).map_err(err)?.len();
    let ratio = strong_polytope::volume_ratio(&g, &c).map_err(err)?;
    let det = strong_polytope::volume_det(&g, &c).map_err(err)?;
    ensure(m == 38 && s == 16, format!("{m} and {s} vertices"))?;
    ensure(
        ratio == rat(1, 256) && det == ratio,
        format!("ratio {ratio}, det {det}"),
    )?;
    Ok("38 and 16 vertices, volume 1/256 = |det|".into())
}

/// Erdős–Rényi graph on `n` nodes with a random independent mode set.
fn random_instance(rng: &mut SplitMix64, n: usize) -> (Graph, ModeSet) {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let density = 1 + rng.below(3);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.below(6) < density {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let g = Graph::new(&labels, &edges).unwrap();
    let mut chosen: Vec<usize> = Vec::new();
    for x in 0..n {
        if rng.below(2) == 0 && chosen.iter().all(|&y| !g.adjacent(x, y)) {
            chosen.push(x);
        }
    }
    let c = ModeSet::new(&g, chosen).unwrap();
    (g, c)
}

fn strong_det_vs_product() -> Outcome {
    let mut rng = SplitMix64::new(5);
    let instances = 60;
    for i in 0..instances {
        let n = 2 + rng.below(11) as usize;
        let (g, c) = random_instance(&mut rng, n);
        let ratio = strong_polytope::volume_ratio(&g, &c).map_err(err)?;
        let det = strong_polytope::volume_det(&g, &c).map_err(err)?;
        ensure(ratio == det, format!("instance {i}: {ratio} vs {det}"))?;
    }
    Ok(format!("{instances} random instances with |V| <= 12"))
}

fn random_poset(rng: &mut SplitMix64, n: usize) -> Poset {
    let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let density = rng.below(5);
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.below(8) < density {
                relations.push((a, b));
            }
        }
    }
    // hide the topological order behind a random relabeling
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let relations: Vec<(usize, usize)> =
        relations.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Poset::new(elements, &relations).unwrap()
}

fn dp_vs_naive() -> Outcome {
    let mut rng = SplitMix64::new(6);
    let posets = 150;
    for i in 0..posets {
        let n = 1 + rng.below(9) as usize;
        let p = random_poset(&mut rng, n);
        let dp = p.count_linear_extensions(DEFAULT_MAX_IDEALS).map_err(err)?;
        let naive = p.count_linear_extensions_naive().map_err(err)?;
        ensure(dp == naive, format!("poset {i}: dp {dp}, naive {naive}"))?;
    }
    let instances = 60;
    for i in 0..instances {
        let n = 2 + rng.below(8) as usize;
        let (g, c) = random_instance(&mut rng, n);
        let count = poset_from_modes(&g, &c)
            .and_then(|p| p.count_linear_extensions(DEFAULT_MAX_IDEALS))
            .map_err(err)?;
        let bound = extension_lower_bound(&g, &c).map_err(err)?;
        ensure(count >= bound, format!("instance {i}: {count} < {bound}"))?;
    }
    for (a, b) in [(2, 2), (2, 3)] {
        let g = Graph::complete_bipartite(a, b).map_err(err)?;
        let side: Vec<String> = (0..a).map(|i| format!("a{i}")).collect();
        let c = ModeSet::from_labels(&g, &side).map_err(err)?;
        let count = poset_from_modes(&g, &c)
            .and_then(|p| p.count_linear_extensions(DEFAULT_MAX_IDEALS))
            .map_err(err)?;
        let bound = extension_lower_bound(&g, &c).map_err(err)?;
        ensure(count == bound, format!("K_{{{a},{b}}}: {count} != {bound}"))?;
    }
    Ok(format!(
        "{posets} random posets; bound held on {instances} instances, tight on K_2,2 and K_2,3"
    ))
}

fn open_case() -> Outcome {
    let g = Graph::hypercube(4).map_err(err)?;
    let c = even_parity_set(&g);
    let p = poset_from_modes(&g, &c).map_err(err)?;
    let (count, took) = timed(Duration::from_secs(600), || {
        p.count_linear_extensions(DEFAULT_MAX_IDEALS).map_err(err)
    })?;
    let recursive = count_extensions_recursive(&p, DEFAULT_MAX_IDEALS).map_err(err)?;
    let floor = factorial(8) * factorial(8);
    ensure(count >= floor, format!("{count} below {floor}"))?;
    ensure(
        count == recursive,
        format!("dp {count}, recursive {recursive}"),
    )?;
    ensure(
        count == BigUint::from(HYPERCUBE4_EVEN_EXTENSIONS),
        format!("{count} differs from reference {HYPERCUBE4_EVEN_EXTENSIONS}"),
    )?;
    Ok(format!("{count} >= {floor} in {took:?}, recursive agrees"))
}

fn montecarlo() -> Outcome {
    let (sq, sc) = square();
    let (cu, cc) = cube_even();
    let trials = 1_000_000;
    let mut lines = Vec::new();
    for (name, g, h, exact) in [
        (
            "square mode",
            &sq,
            mode_polytope::hrep(&sq, &sc),
            mode_polytope::volume_ratio(&sq, &sc),
        ),
        (
            "cube mode",
            &cu,
            mode_polytope::hrep(&cu, &cc),
            mode_polytope::volume_ratio(&cu, &cc),
        ),
        (
            "square strong",
            &sq,
            strong_polytope::hrep(&sq, &sc),
            strong_polytope::volume_ratio(&sq, &sc),
        ),
        (
            "cube strong",
            &cu,
            strong_polytope::hrep(&cu, &cc),
            strong_polytope::volume_ratio(&cu, &cc),
        ),
    ] {
        let h = h.map_err(err)?;
        let exact = exact.map_err(err)?;
        let est = montecarlo_volume(hrep_predicate(&h), g.len(), trials, 2024);
        ensure(
            est.agrees_with(&exact, 4.0),
            format!(
                "{name}: {} vs {exact}, se {}",
                est.estimate_f64(),
                est.std_error()
            ),
        )?;
        lines.push(format!("{name} {:.5}", est.estimate_f64()));
    }
    Ok(format!(
        "{trials} samples within 4 se: {}",
        lines.join(", ")
    ))
}

fn triangulation() -> Outcome {
    let (g, c) = square();
    let poset = poset_from_modes(&g, &c).map_err(err)?;
    let extensions = poset.enumerate_extensions(100).map_err(err)?;
    ensure(
        extensions.len() == 4,
        format!("{} extensions", extensions.len()),
    )?;
    let h = mode_polytope::hrep(&g, &c).map_err(err)?;
    let mut rng = SplitMix64::new(9);
    let mut hits = vec![0usize; extensions.len()];
    let mut points = 0;
    while points < 1000 {
        let p = sample_simplex(g.len(), &mut rng).to_distribution();
        if !h.contains(p.probabilities()) {
            continue;
        }
        points += 1;
        let sigma = mode_polytope::locate_simplex(&p, &g, &c).map_err(err)?;
        let pos = extensions
            .iter()
            .position(|e| *e == sigma)
            .ok_or(format!("{sigma:?} is not an extension"))?;
        let q = p.probabilities();
        ensure(
            sigma.windows(2).all(|w| q[w[0]] <= q[w[1]]),
            format!("not ascending along {sigma:?}"),
        )?;
        let distinct = q.iter().collect::<BTreeSet<_>>().len() == q.len();
        if distinct {
            let containing = extensions
                .iter()
                .filter(|e| e.windows(2).all(|w| q[w[0]] <= q[w[1]]))
                .count();
            ensure(
                containing == 1,
                format!("{containing} simplices contain {q:?}"),
            )?;
        }
        hits[pos] += 1;
    }
    ensure(hits.iter().all(|&h| h > 0), format!("hits {hits:?}"))?;
    Ok(format!("1000 points, hits per simplex {hits:?}"))
}

fn mixtures() -> Outcome {
    let g = Graph::hypercube(3).map_err(err)?;
    let trials = 10_000;
    let mut seen = Vec::new();
    for k in 1..=3 {
        let report = mixture_strong_mode_test(&g, k, trials, 100 + k as u64).map_err(err)?;
        ensure(
            report.passed(),
            format!(
                "k = {k}: {} count violations, {} mode violations",
                report.count_violations.len(),
                report.mode_violations
            ),
        )?;
        seen.push(report.max_strict_strong_modes);
    }
    Ok(format!(
        "{trials} trials each, max strict strong modes {seen:?} for k = 1, 2, 3"
    ))
}

fn decompositions() -> Outcome {
    let mut rng = SplitMix64::new(11);
    let (sq, sc) = square();
    let (cu, cc) = cube_even();
    let c000 = ModeSet::from_labels(&cu, &["000"]).map_err(err)?;
    let members = 200;
    for (name, g, c) in [
        ("square", &sq, &sc),
        ("cube even", &cu, &cc),
        ("cube {000}", &cu, &c000),
    ] {
        let mode_points = mode_polytope::vertices(g, c).map_err(err)?.points();
        let strong_points: Vec<Vec<Rational>> = strong_polytope::vertices(g, c)
            .map_err(err)?
            .into_iter()
            .map(|v| v.distribution.into_vec())
            .collect();
        for _ in 0..members {
            let p = Distribution::new(random_convex_combination(&mode_points, &mut rng))
                .map_err(err)?;
            let parts = mode_polytope::decompose(&p, g, c).map_err(err)?;
            let back =
                mode_polytope::recombine(g.len(), parts.iter().map(|(v, w)| (&v.distribution, w)));
            let total: Rational = parts.iter().map(|(_, w)| w.clone()).sum();
            ensure(
                back == p.probabilities()
                    && total.is_one()
                    && parts.iter().all(|(_, w)| *w > Rational::zero()),
                format!("{name}: mode decomposition of {p:?}"),
            )?;

            let p = Distribution::new(random_convex_combination(&strong_points, &mut rng))
                .map_err(err)?;
            let parts = strong_polytope::decompose(&p, g, c).map_err(err)?;
            let back =
                mode_polytope::recombine(g.len(), parts.iter().map(|(v, w)| (&v.distribution, w)));
            let total: Rational = parts.iter().map(|(_, w)| w.clone()).sum();
            ensure(
                back == p.probabilities()
                    && total.is_one()
                    && parts.iter().all(|(_, w)| *w >= Rational::zero()),
                format!("{name}: strong decomposition of {p:?}"),
            )?;
        }
    }
    Ok(format!(
        "{members} members per polytope on 3 instances recombine exactly"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("extension counts", extension_counts),
        ("volumes", volumes),
        ("vertex counts", vertex_counts),
        ("4-cube with two modes", two_mode_four_cube),
        ("strong det vs product", strong_det_vs_product),
        ("dp vs naive counting", dp_vs_naive),
        ("4-cube even-parity count", open_case),
        ("monte carlo", montecarlo),
        ("triangulation", triangulation),
        ("mixtures", mixtures),
        ("decompositions", decompositions),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
