use proptest::prelude::*;

use mode_polytopes::linalg::{int, simplex_volume_ratio};
use mode_polytopes::membership::{strict_strong_modes_of, Strictness};
use mode_polytopes::oracle::count_extensions_recursive;
use mode_polytopes::poset::DEFAULT_MAX_IDEALS;
use mode_polytopes::{
    auxiliary_graph, in_mode_polytope, is_independent, mode_polytope, modes_of, strong_modes_of,
    strong_polytope, Distribution, Graph, ModeSet, Poset, RatMatrix, Rational,
};

fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

fn to_matrix(m: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect(),
    )
    .unwrap()
}

prop_compose! {
    fn square_matrix(n: usize)(cells in prop::collection::vec(-6i64..=6, n * n)) -> Vec<Vec<i64>> {
        cells.chunks(n).map(|c| c.to_vec()).collect()
    }
}

prop_compose! {
    /// Random graph on up to 9 nodes plus a random node subset.
    fn graph_and_subset()(n in 2usize..=9)(
        n in Just(n),
        edges in prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
        pick in prop::collection::vec(any::<bool>(), n),
    ) -> (Graph, Vec<bool>) {
        let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let mut list = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if edges[k] {
                    list.push((labels[a].clone(), labels[b].clone()));
                }
                k += 1;
            }
        }
        (Graph::new(&labels, &list).unwrap(), pick)
    }
}

/// Greedy independent subset of the picked nodes.
fn independent(g: &Graph, pick: &[bool]) -> ModeSet {
    let mut chosen: Vec<usize> = Vec::new();
    for (x, &picked) in pick.iter().enumerate().take(g.len()) {
        if picked && chosen.iter().all(|&y| !g.adjacent(x, y)) {
            chosen.push(x);
        }
    }
    ModeSet::new(g, chosen).unwrap()
}

fn distribution(weights: &[u32]) -> Distribution {
    let total: u32 = weights.iter().sum::<u32>().max(1);
    let probs = if weights.iter().all(|&w| w == 0) {
        vec![Rational::new(1.into(), weights.len().into()); weights.len()]
    } else {
        weights
            .iter()
            .map(|&w| Rational::new(w.into(), total.into()))
            .collect()
    };
    Distribution::new(probs).unwrap()
}

prop_compose! {
    fn poset_strategy()(n in 1usize..=8)(
        n in Just(n),
        rel in prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
        perm in Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
    ) -> (Poset, Vec<usize>) {
        let mut relations = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if rel[k] {
                    relations.push((a, b));
                }
                k += 1;
            }
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        (Poset::new(elements, &relations).unwrap(), perm)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_cofactor_expansion(m in square_matrix(5)) {
        let det = to_matrix(&m).determinant().unwrap();
        prop_assert_eq!(det, Rational::from_integer(cofactor_det(&m).into()));
    }

    #[test]
    fn row_swap_negates_determinant(m in square_matrix(4), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        let mut swapped = to_matrix(&m);
        swapped.swap_rows(a, b);
        prop_assert_eq!(swapped.determinant().unwrap(), -to_matrix(&m).determinant().unwrap());
    }

    #[test]
    fn solve_round_trips(m in square_matrix(4), x in prop::collection::vec(-9i64..=9, 4)) {
        let a = to_matrix(&m);
        prop_assume!(a.rank() == 4);
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        let b = a.mul_vec(&x).unwrap();
        prop_assert_eq!(a.solve(&b).unwrap(), x);
    }

    #[test]
    fn strong_volume_ignores_vertex_order(
        (g, pick) in graph_and_subset(),
        perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let c = independent(&g, &pick);
        let pts: Vec<Vec<Rational>> = strong_polytope::vertices(&g, &c).unwrap()
            .into_iter().map(|v| v.distribution.into_vec()).collect();
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < pts.len()).collect();
        let shuffled: Vec<Vec<Rational>> = order.iter().map(|&i| pts[i].clone()).collect();
        prop_assert_eq!(simplex_volume_ratio(&shuffled).unwrap(), simplex_volume_ratio(&pts).unwrap());
        prop_assert_eq!(
            strong_polytope::volume_det(&g, &c).unwrap(),
            strong_polytope::volume_ratio(&g, &c).unwrap()
        );
    }

    #[test]
    fn dp_matches_naive_and_recursion((p, _) in poset_strategy()) {
        let dp = p.count_linear_extensions(DEFAULT_MAX_IDEALS).unwrap();
        prop_assert_eq!(&dp, &p.count_linear_extensions_naive().unwrap());
        prop_assert_eq!(&dp, &count_extensions_recursive(&p, DEFAULT_MAX_IDEALS).unwrap());
    }

    #[test]
    fn count_is_invariant_under_relabeling((p, perm) in poset_strategy()) {
        let relabeled = p.relabel(&perm);
        prop_assert_eq!(
            relabeled.count_linear_extensions(DEFAULT_MAX_IDEALS).unwrap(),
            p.count_linear_extensions(DEFAULT_MAX_IDEALS).unwrap()
        );
    }

    #[test]
    fn mode_hierarchy(
        (g, _) in graph_and_subset(),
        weights in prop::collection::vec(0u32..6, 9),
    ) {
        let p = distribution(&weights[..g.len()]);
        let modes = modes_of(&p, &g, Strictness::Weak).unwrap();
        let strong = strong_modes_of(&p, &g, Strictness::Weak).unwrap();
        let strict_strong = strict_strong_modes_of(&p, &g).unwrap();
        prop_assert!(strong.iter().all(|x| modes.contains(x)));
        prop_assert!(strict_strong.iter().all(|x| strong.contains(x)));
        let set = ModeSet::new(&g, strict_strong).unwrap();
        prop_assert!(is_independent(&g, &set));
    }

    #[test]
    fn membership_agrees_with_hrep(
        (g, pick) in graph_and_subset(),
        weights in prop::collection::vec(0u32..6, 9),
    ) {
        let c = independent(&g, &pick);
        let p = distribution(&weights[..g.len()]);
        let m = in_mode_polytope(&p, &g, &c).unwrap();
        let h = mode_polytope::hrep(&g, &c).unwrap();
        prop_assert_eq!(m.member, h.contains(p.probabilities()));
        prop_assert_eq!(m.violation.is_some(), !m.member);
        if let Some(v) = m.violation {
            prop_assert!(v.lhs < v.rhs);
        }
    }

    #[test]
    fn auxiliary_graph_is_simple_and_avoids_modes((g, pick) in graph_and_subset()) {
        let c = independent(&g, &pick);
        let h = auxiliary_graph(&g, &c).unwrap();
        for (a, b) in h.edges() {
            prop_assert!(a != b);
            prop_assert!(h.adjacent(b, a));
        }
        for label in h.labels() {
            prop_assert!(!c.contains(g.node(label).unwrap()));
        }
    }

    #[test]
    fn vertices_are_feasible_and_distinct((g, pick) in graph_and_subset()) {
        let c = independent(&g, &pick);
        let h = mode_polytope::hrep(&g, &c).unwrap();
        let pts = mode_polytope::vertices(&g, &c).unwrap().points();
        prop_assert!(pts.iter().all(|p| h.contains(p)));
        let unique: std::collections::BTreeSet<_> = pts.iter().collect();
        prop_assert_eq!(unique.len(), pts.len());
    }
}
