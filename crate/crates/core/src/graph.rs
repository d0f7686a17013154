//! Vicinity graphs, prescribed mode sets, and the auxiliary graph used for
//! vertex enumeration.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest hypercube dimension built without an explicit override.
pub const DEFAULT_MAX_CUBE_DIM: usize = 20;

/// Finite simple graph with string-labeled nodes.
///
/// Nodes are addressed by their index in declaration order; every output of
/// the crate lists nodes in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    /// Builds a graph from labels and edges given as label pairs.
    pub fn new<S: AsRef<str>>(nodes: &[S], edges: &[(S, S)]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::invalid("graph has no nodes"));
        }
        let mut g = Graph::with_nodes(nodes.iter().map(|s| s.as_ref().to_owned()).collect())?;
        for (a, b) in edges {
            let a = g.node(a.as_ref())?;
            let b = g.node(b.as_ref())?;
            g.add_edge(a, b)?;
        }
        g.finish();
        Ok(g)
    }

    fn with_nodes(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateNode(l.clone()));
            }
        }
        let adjacency = vec![Vec::new(); labels.len()];
        Ok(Graph {
            labels,
            index,
            adjacency,
        })
    }

    fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::LoopEdge(self.labels[a].clone()));
        }
        if self.adjacency[a].contains(&b) {
            let (x, y) = self.canonical_pair(a, b);
            return Err(Error::DuplicateEdge(x.to_owned(), y.to_owned()));
        }
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        Ok(())
    }

    fn finish(&mut self) {
        for nbrs in &mut self.adjacency {
            nbrs.sort_unstable();
        }
    }

    fn canonical_pair(&self, a: usize, b: usize) -> (&str, &str) {
        let (x, y) = (self.labels[a].as_str(), self.labels[b].as_str());
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Graph::new(&raw.nodes, &raw.edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = GraphJson {
            nodes: self.labels.clone(),
            edges: self
                .edge_labels()
                .into_iter()
                .map(|(a, b)| (a.to_owned(), b.to_owned()))
                .collect(),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }

    /// Edge graph of the `n`-cube on binary strings, `1 <= n <= 20`.
    pub fn hypercube(n: usize) -> Result<Self> {
        Self::hypercube_with_cap(n, DEFAULT_MAX_CUBE_DIM)
    }

    pub fn hypercube_with_cap(n: usize, max_dim: usize) -> Result<Self> {
        if n < 1 || n > max_dim || n >= usize::BITS as usize {
            return Err(Error::OutOfRange {
                what: "hypercube dimension",
                value: n,
                range: format!("1..={max_dim}"),
            });
        }
        let count = 1usize << n;
        let labels = (0..count).map(|i| format!("{i:0n$b}")).collect();
        let mut g = Graph::with_nodes(labels)?;
        for (i, nbrs) in g.adjacency.iter_mut().enumerate() {
            // bit n-1-k of the index is character k of the label
            nbrs.extend((0..n).map(|bit| i ^ (1 << bit)));
        }
        g.finish();
        Ok(g)
    }

    /// Path on `n >= 1` consecutive integers.
    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange {
                what: "path length",
                value: n,
                range: ">= 1".into(),
            });
        }
        let mut g = Graph::with_nodes(padded_labels(n))?;
        for i in 1..n {
            g.add_edge(i - 1, i)?;
        }
        g.finish();
        Ok(g)
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange {
                what: "cycle length",
                value: n,
                range: ">= 3".into(),
            });
        }
        let mut g = Graph::with_nodes(padded_labels(n))?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n)?;
        }
        g.finish();
        Ok(g)
    }

    /// `rows x cols` grid; labels are `"r.c"` with zero-padded coordinates.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        for (what, v) in [("grid rows", rows), ("grid columns", cols)] {
            if v < 1 {
                return Err(Error::OutOfRange {
                    what,
                    value: v,
                    range: ">= 1".into(),
                });
            }
        }
        let rw = digits(rows - 1);
        let cw = digits(cols - 1);
        let labels = (0..rows * cols)
            .map(|k| format!("{:0rw$}.{:0cw$}", k / cols, k % cols))
            .collect();
        let mut g = Graph::with_nodes(labels)?;
        for r in 0..rows {
            for c in 0..cols {
                let k = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(k, k + 1)?;
                }
                if r + 1 < rows {
                    g.add_edge(k, k + cols)?;
                }
            }
        }
        g.finish();
        Ok(g)
    }

    /// Complete bipartite graph with sides labeled `a0..` and `b0..`.
    pub fn complete_bipartite(left: usize, right: usize) -> Result<Self> {
        if left + right == 0 {
            return Err(Error::invalid("graph has no nodes"));
        }
        let mut labels: Vec<String> = (0..left).map(|i| format!("a{i}")).collect();
        labels.extend((0..right).map(|i| format!("b{i}")));
        let mut g = Graph::with_nodes(labels)?;
        for i in 0..left {
            for j in 0..right {
                g.add_edge(i, left + j)?;
            }
        }
        g.finish();
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn node(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownNode(label.to_owned()))
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Edges as label pairs, smaller label first, sorted.
    pub fn edge_labels(&self) -> Vec<(&str, &str)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|(a, b)| self.canonical_pair(a, b))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn labels_of(&self, nodes: &[usize]) -> Vec<String> {
        nodes.iter().map(|&v| self.labels[v].clone()).collect()
    }
}

fn digits(mut n: usize) -> usize {
    let mut d = 1;
    while n >= 10 {
        n /= 10;
        d += 1;
    }
    d
}

fn padded_labels(n: usize) -> Vec<String> {
    let w = digits(n - 1);
    (0..n).map(|i| format!("{i:0w$}")).collect()
}

/// Prescribed set of (strong) modes, stored as sorted node indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModeSet {
    members: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeSetJson {
    modes: Vec<String>,
}

impl ModeSet {
    pub fn empty() -> Self {
        ModeSet::default()
    }

    pub fn new(g: &Graph, mut members: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&v| v >= g.len()) {
            return Err(Error::invalid(format!("node index {bad} out of range")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(ModeSet { members })
    }

    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| g.node(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ModeSet::new(g, members)
    }

    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let raw: ModeSetJson = serde_json::from_str(text)?;
        ModeSet::from_labels(g, &raw.modes)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({ "modes": g.labels_of(&self.members) })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    /// Membership flags indexed by node.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    /// Nodes not in the set, in canonical order.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        let mask = self.mask(n);
        (0..n).filter(|&v| !mask[v]).collect()
    }
}

/// Binary strings of even Hamming weight in the node set of a hypercube.
pub fn even_parity_set(g: &Graph) -> ModeSet {
    parity_set(g, 0)
}

pub fn odd_parity_set(g: &Graph) -> ModeSet {
    parity_set(g, 1)
}

fn parity_set(g: &Graph, parity: usize) -> ModeSet {
    let members = (0..g.len())
        .filter(|&v| g.label(v).bytes().filter(|&b| b == b'1').count() % 2 == parity)
        .collect();
    ModeSet { members }
}

pub fn is_independent(g: &Graph, c: &ModeSet) -> bool {
    adjacent_pairs(g, c).is_empty()
}

/// Pairs `(x, y)`, `x < y`, of adjacent members of `c`.
pub fn adjacent_pairs(g: &Graph, c: &ModeSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &x in c.members() {
        for &y in g.neighbors(x) {
            if x < y && c.contains(y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// `N_C(W)`: members of `c` adjacent to some node of `w`, sorted.
pub fn mode_neighbors(g: &Graph, c: &ModeSet, w: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = w
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().copied())
        .filter(|&y| c.contains(y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Graph on the non-mode nodes joining two of them iff some mode is adjacent
/// to both.
///
/// An alternating path between non-modes in `W` alternates between `W` and
/// `N_C(W)`, so each mode-mediated step is a single edge here: `W` admits
/// alternating paths between all its pairs iff `W` induces a connected
/// subgraph of this graph.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraph {
    /// Non-mode nodes of the original graph, in canonical order.
    pub nodes: Vec<usize>,
    /// Adjacency over positions in `nodes`, sorted.
    pub adjacency: Vec<Vec<usize>>,
}

impl AuxiliaryGraph {
    pub fn new(g: &Graph, c: &ModeSet) -> Result<Self> {
        crate::membership::require_independent(g, c)?;
        let nodes = c.complement(g.len());
        let mut position = vec![usize::MAX; g.len()];
        for (i, &v) in nodes.iter().enumerate() {
            position[v] = i;
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for &z in c.members() {
            let nbrs = g.neighbors(z);
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    let (pa, pb) = (position[a], position[b]);
                    adjacency[pa].push(pb);
                    adjacency[pb].push(pa);
                }
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Ok(AuxiliaryGraph { nodes, adjacency })
    }

    /// The auxiliary graph as a labeled [`Graph`] on `V \ C`; empty when
    /// every node is a mode.
    pub fn to_graph(&self, g: &Graph) -> Graph {
        let labels = g.labels_of(&self.nodes);
        let mut out = Graph::with_nodes(labels).expect("labels are unique");
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.add_edge(i, j).expect("simple");
                }
            }
        }
        out.finish();
        out
    }

    /// Whether the original nodes `w` (all non-modes) induce a connected
    /// subgraph.
    pub fn is_connected(&self, w: &[usize]) -> bool {
        let Some(&start) = w.first() else {
            return false;
        };
        let pos = |v: usize| self.nodes.binary_search(&v).ok();
        let Some(start) = pos(start) else {
            return false;
        };
        let mut inside = vec![false; self.nodes.len()];
        for &v in w {
            match pos(v) {
                Some(p) => inside[p] = true,
                None => return false,
            }
        }
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == w.len()
    }

    /// Connected components of the subgraph induced by `w`, each sorted, in
    /// order of their smallest node.
    pub fn components_of(&self, w: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.nodes.len()];
        for &v in w {
            if let Ok(p) = self.nodes.binary_search(&v) {
                inside[p] = true;
            }
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if !inside[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            let mut comp: Vec<usize> = comp.into_iter().map(|p| self.nodes[p]).collect();
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Every nonempty connected induced node set, as sorted original node
    /// lists.
    ///
    /// Sets are grown from their smallest member, only ever adding nodes
    /// larger than it that are exclusive neighbors of the newest addition,
    /// so each set is produced exactly once. Fails once more than `limit`
    /// sets have been produced.
    pub fn connected_sets(&self, limit: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        let mut in_set = vec![false; n];
        // nodes that are in the set or adjacent to it
        let mut touched = vec![0u32; n];
        for root in 0..n {
            let mut set = vec![root];
            in_set[root] = true;
            bump(&mut touched, root, &self.adjacency[root], 1);
            let ext: Vec<usize> = self.adjacency[root]
                .iter()
                .copied()
                .filter(|&u| u > root)
                .collect();
            self.extend(
                root,
                &mut set,
                ext,
                &mut in_set,
                &mut touched,
                &mut out,
                limit,
            )?;
            bump(&mut touched, root, &self.adjacency[root], -1);
            in_set[root] = false;
        }
        let mut sets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|s| {
                let mut s: Vec<usize> = s.into_iter().map(|p| self.nodes[p]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(sets)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        root: usize,
        set: &mut Vec<usize>,
        mut ext: Vec<usize>,
        in_set: &mut [bool],
        touched: &mut [u32],
        out: &mut Vec<Vec<usize>>,
        limit: u64,
    ) -> Result<()> {
        out.push(set.clone());
        if out.len() as u64 > limit {
            return Err(Error::BudgetExceeded {
                what: "vertex",
                limit,
                reached: out.len() as u64,
            });
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(
                self.adjacency[w]
                    .iter()
                    .copied()
                    .filter(|&u| u > root && touched[u] == 0),
            );
            set.push(w);
            in_set[w] = true;
            bump(touched, w, &self.adjacency[w], 1);
            self.extend(root, set, next, in_set, touched, out, limit)?;
            bump(touched, w, &self.adjacency[w], -1);
            in_set[w] = false;
            set.pop();
        }
        Ok(())
    }
}

fn bump(touched: &mut [u32], v: usize, nbrs: &[usize], delta: i32) {
    for &u in std::iter::once(&v).chain(nbrs) {
        touched[u] = touched[u].wrapping_add_signed(delta);
    }
}

pub fn auxiliary_graph(g: &Graph, c: &ModeSet) -> Result<Graph> {
    Ok(AuxiliaryGraph::new(g, c)?.to_graph(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Graph {
        Graph::hypercube(2).unwrap()
    }

    #[test]
    fn parse_minimal() {
        let g = Graph::from_json(r#"{"nodes":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_errors() {
        let loop_edge = Graph::from_json(r#"{"nodes":["a"],"edges":[["a","a"]]}"#);
        assert!(matches!(loop_edge, Err(Error::LoopEdge(_))));
        let dup = Graph::from_json(r#"{"nodes":["a","a"],"edges":[]}"#);
        assert!(matches!(dup, Err(Error::DuplicateNode(_))));
        let unknown = Graph::from_json(r#"{"nodes":["a"],"edges":[["a","b"]]}"#);
        assert!(matches!(unknown, Err(Error::UnknownNode(_))));
        let dup_edge = Graph::from_json(r#"{"nodes":["a","b"],"edges":[["a","b"],["b","a"]]}"#);
        assert!(matches!(dup_edge, Err(Error::DuplicateEdge(..))));
        assert!(matches!(Graph::from_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn square_from_json() {
        let text = r#"{"nodes":["00","01","10","11"],
            "edges":[["00","01"],["00","10"],["01","11"],["10","11"]]}"#;
        let g = Graph::from_json(text).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g, square());
    }

    #[test]
    fn hypercube_sizes() {
        let g1 = Graph::hypercube(1).unwrap();
        assert_eq!((g1.len(), g1.edge_count()), (2, 1));
        let g3 = Graph::hypercube(3).unwrap();
        assert_eq!((g3.len(), g3.edge_count()), (8, 12));
        assert_eq!(g3.labels()[5], "101");
        assert!(Graph::hypercube(0).is_err());
        assert!(Graph::hypercube(21).is_err());
        assert!(Graph::hypercube_with_cap(3, 2).is_err());
    }

    #[test]
    fn hypercube_edges_are_hamming_one() {
        let g = Graph::hypercube(4).unwrap();
        for (a, b) in g.edges() {
            let diff = g
                .label(a)
                .bytes()
                .zip(g.label(b).bytes())
                .filter(|(x, y)| x != y)
                .count();
            assert_eq!(diff, 1);
        }
        assert_eq!(g.edge_count(), 4 * 8);
    }

    #[test]
    fn small_generators() {
        let p = Graph::path(3).unwrap();
        assert_eq!(p.edge_labels(), vec![("0", "1"), ("1", "2")]);
        assert!(Graph::path(0).is_err());
        assert!(Graph::cycle(2).is_err());
        let c = Graph::cycle(4).unwrap();
        assert_eq!(c.edge_count(), 4);
        assert!((0..4).all(|v| c.degree(v) == 2));
        let grid = Graph::grid(2, 2).unwrap();
        assert_eq!(grid.edge_count(), 4);
        assert!((0..4).all(|v| grid.degree(v) == 2));
        let p12 = Graph::path(12).unwrap();
        assert_eq!(p12.label(2), "02");
        assert!(p12.labels().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parity_sets() {
        let g2 = square();
        assert_eq!(g2.labels_of(even_parity_set(&g2).members()), ["00", "11"]);
        let g3 = Graph::hypercube(3).unwrap();
        let even = even_parity_set(&g3);
        assert_eq!(g3.labels_of(even.members()), ["000", "011", "101", "110"]);
        assert!(is_independent(&g3, &even));
        assert!(is_independent(&g3, &odd_parity_set(&g3)));
    }

    #[test]
    fn independence() {
        let g = square();
        assert!(is_independent(
            &g,
            &ModeSet::from_labels(&g, &["01", "10"]).unwrap()
        ));
        assert!(!is_independent(
            &g,
            &ModeSet::from_labels(&g, &["00", "01"]).unwrap()
        ));
        assert!(is_independent(&g, &ModeSet::empty()));
    }

    #[test]
    fn mode_neighbor_sets() {
        let g = square();
        let c = ModeSet::from_labels(&g, &["01", "10"]).unwrap();
        let n = |w: &[&str]| {
            let w: Vec<usize> = w.iter().map(|l| g.node(l).unwrap()).collect();
            g.labels_of(&mode_neighbors(&g, &c, &w))
        };
        assert_eq!(n(&["00"]), ["01", "10"]);
        assert_eq!(n(&["00", "11"]), ["01", "10"]);
        let g3 = Graph::hypercube(3).unwrap();
        let c3 = ModeSet::from_labels(&g3, &["000"]).unwrap();
        assert!(mode_neighbors(&g3, &c3, &[g3.node("111").unwrap()]).is_empty());
    }

    #[test]
    fn auxiliary_graph_examples() {
        let g = square();
        let c = ModeSet::from_labels(&g, &["01", "10"]).unwrap();
        let h = auxiliary_graph(&g, &c).unwrap();
        assert_eq!(h.labels(), ["00", "11"]);
        assert_eq!(h.edge_labels(), vec![("00", "11")]);

        let g3 = Graph::hypercube(3).unwrap();
        let c3 = ModeSet::from_labels(&g3, &["000"]).unwrap();
        let h3 = auxiliary_graph(&g3, &c3).unwrap();
        assert_eq!(h3.len(), 7);
        assert_eq!(
            h3.edge_labels(),
            vec![("001", "010"), ("001", "100"), ("010", "100")]
        );
        for l in ["011", "101", "110", "111"] {
            assert_eq!(h3.degree(h3.node(l).unwrap()), 0);
        }

        let lone = Graph::new(&["a"], &[]).unwrap();
        let all = ModeSet::from_labels(&lone, &["a"]).unwrap();
        assert!(auxiliary_graph(&lone, &all).unwrap().is_empty());
        let empty = auxiliary_graph(&g3, &ModeSet::empty()).unwrap();
        assert_eq!((empty.len(), empty.edge_count()), (8, 0));

        let bad = ModeSet::from_labels(&g, &["00", "01"]).unwrap();
        assert!(matches!(
            auxiliary_graph(&g, &bad),
            Err(Error::NotIndependent(_))
        ));
    }

    #[test]
    fn connected_sets_of_triangle_plus_isolated() {
        let g3 = Graph::hypercube(3).unwrap();
        let c3 = ModeSet::from_labels(&g3, &["000"]).unwrap();
        let h = AuxiliaryGraph::new(&g3, &c3).unwrap();
        let sets = h.connected_sets(u64::MAX).unwrap();
        assert_eq!(sets.len(), 7 + 4);
        assert!(matches!(
            h.connected_sets(5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn components_split() {
        let g3 = Graph::hypercube(3).unwrap();
        let c3 = ModeSet::from_labels(&g3, &["000"]).unwrap();
        let h = AuxiliaryGraph::new(&g3, &c3).unwrap();
        let w: Vec<usize> = ["001", "010", "111"]
            .iter()
            .map(|l| g3.node(l).unwrap())
            .collect();
        let comps = h.components_of(&w);
        assert_eq!(comps.len(), 2);
        assert!(!h.is_connected(&w));
        assert!(h.is_connected(&w[..2]));
    }
}
