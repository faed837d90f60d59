//! Finite simple graphs: stars, books, apices, paths, and random trees,
//! plus the small structural helpers the density computations need.

use crate::error::{Error, Result};
use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// A finite simple labeled graph. Vertices are `0..vertex_count`; edges are
/// stored as ordered pairs `(u, v)` with `u < v`, sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count, self.edges)
    }
}

impl Graph {
    /// Build a graph from a vertex count and an edge list. Rejects
    /// self-loops, duplicate edges, and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph {
                    reason: format!("self-loop at vertex {u}"),
                });
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph {
                    reason: format!(
                        "edge ({u},{v}) has an endpoint >= vertex count {vertex_count}"
                    ),
                });
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::InvalidGraph {
                    reason: format!("duplicate edge ({},{})", e.0, e.1),
                });
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// The star `S_k`: vertex 0 adjacent to `k` leaves. `S_0` is a single vertex.
    pub fn star(k: usize) -> Self {
        Graph {
            vertex_count: k + 1,
            edges: (1..=k).map(|leaf| (0, leaf)).collect(),
        }
    }

    /// The triangular book `T_k = K_{1,1,k}`: spine edge (0,1) plus `k` page
    /// vertices adjacent to both spine endpoints. `T_0` is a single edge.
    pub fn book(k: usize) -> Self {
        let mut edges = vec![(0, 1)];
        for page in 0..k {
            edges.push((0, page + 2));
            edges.push((1, page + 2));
        }
        edges.sort_unstable();
        Graph {
            vertex_count: k + 2,
            edges,
        }
    }

    /// The `k`-apex of `self`: `k` new vertices (indices `v..v+k`), each
    /// adjacent to every original vertex; the new vertices stay independent.
    pub fn apex(&self, k: usize) -> Self {
        let n = self.vertex_count;
        let mut edges = self.edges.clone();
        for j in 0..k {
            for u in 0..n {
                edges.push((u, n + j));
            }
        }
        edges.sort_unstable();
        Graph {
            vertex_count: n + k,
            edges,
        }
    }

    /// The path on `n >= 1` vertices.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph {
                reason: "path needs at least one vertex".to_string(),
            });
        }
        Ok(Graph {
            vertex_count: n,
            edges: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        })
    }

    /// Every tree on exactly `n <= 5` vertices, one per isomorphism class:
    /// the path, plus the star from n = 4 on and the chair at n = 5.
    pub fn small_trees(n: usize) -> Result<Vec<Self>> {
        match n {
            1..=3 => Ok(vec![Graph::path(n)?]),
            4 => Ok(vec![Graph::path(4)?, Graph::star(3)]),
            5 => Ok(vec![
                Graph::path(5)?,
                Graph::star(4),
                Graph::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)])?,
            ]),
            _ => Err(Error::InvalidGraph {
                reason: format!("tree catalogue covers 1..=5 vertices, not {n}"),
            }),
        }
    }

    /// Uniformly random labeled tree on `n >= 1` vertices via a random
    /// Prüfer sequence. Deterministic for a fixed seed.
    pub fn random_tree(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph {
                reason: "tree needs at least one vertex".to_string(),
            });
        }
        if n == 1 {
            return Graph::new(1, []);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        Ok(Self::from_prufer(n, &seq))
    }

    /// Decode a Prüfer sequence of length `n-2` into the tree it encodes.
    fn from_prufer(n: usize, seq: &[usize]) -> Self {
        debug_assert_eq!(seq.len(), n - 2);
        let mut degree = vec![1usize; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut leaves: BTreeSet<usize> =
            (0..n).filter(|&v| degree[v] == 1).collect();
        for &s in seq {
            let leaf = *leaves.iter().next().expect("leaf available");
            leaves.remove(&leaf);
            edges.push((leaf.min(s), leaf.max(s)));
            degree[s] -= 1;
            if degree[s] == 1 {
                leaves.insert(s);
            }
        }
        let mut it = leaves.iter();
        let (u, v) = (*it.next().unwrap(), *it.next().unwrap());
        edges.push((u.min(v), u.max(v)));
        edges.sort_unstable();
        Graph {
            vertex_count: n,
            edges,
        }
    }

    /// Connected components as sorted vertex lists, with a BFS parent array
    /// usable for tree traversals (`parent[root] == root`).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut queue = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        // a graph is a forest iff every component has |E| = |V| - 1,
        // equivalently |E| = |V| - #components overall
        self.edges.len() + self.components().len() == self.vertex_count
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.components().len() == 1
    }

    /// If the graph is a star with the center at any vertex, return its leaf
    /// count. `K_1` counts as `S_0` and `K_2` as `S_1`.
    pub fn as_star(&self) -> Option<usize> {
        let n = self.vertex_count;
        if n == 0 || self.edges.len() + 1 != n {
            return None;
        }
        if n <= 2 {
            return if self.is_tree() { Some(n - 1) } else { None };
        }
        let center = (0..n).find(|&v| self.degree(v) == n - 1)?;
        let all_leaves = (0..n)
            .filter(|&v| v != center)
            .all(|v| self.degree(v) == 1);
        all_leaves.then_some(n - 1)
    }

    /// If the graph is a triangular book `K_{1,1,k}` (spine edge plus `k`
    /// pages), return `k`. `K_2` counts as `T_0` and `K_3` as `T_1`.
    pub fn as_book(&self) -> Option<usize> {
        let n = self.vertex_count;
        if n < 2 {
            return None;
        }
        let k = n - 2;
        if self.edges.len() != 2 * k + 1 {
            return None;
        }
        // find an adjacent pair of degree-(k+1) vertices; all others must be
        // degree-2 pages adjacent to both
        let spine: Vec<usize> = (0..n).filter(|&v| self.degree(v) == k + 1).collect();
        let (s0, s1) = match spine.as_slice() {
            [a, b] => (*a, *b),
            // K_3 = T_1 has three degree-2 vertices; any edge works as spine
            [a, b, _] if n == 3 => (*a, *b),
            _ => return None,
        };
        if !self.has_edge(s0, s1) {
            return None;
        }
        let pages_ok = (0..n).filter(|&v| v != s0 && v != s1).all(|v| {
            self.degree(v) == 2 && self.has_edge(v, s0) && self.has_edge(v, s1)
        });
        pages_ok.then_some(k)
    }

    /// Brute-force isomorphism test for graphs with at most 8 vertices.
    /// Intended for structural assertions in tests, nothing bigger.
    pub fn is_isomorphic_to(&self, other: &Graph) -> Result<bool> {
        const MAX: usize = 8;
        if self.vertex_count > MAX || other.vertex_count > MAX {
            return Err(Error::InvalidGraph {
                reason: format!("isomorphism search is limited to {MAX} vertices"),
            });
        }
        if self.vertex_count != other.vertex_count
            || self.edges.len() != other.edges.len()
        {
            return Ok(false);
        }
        let mut deg_a: Vec<usize> = (0..self.vertex_count).map(|v| self.degree(v)).collect();
        let mut deg_b: Vec<usize> = (0..other.vertex_count).map(|v| other.degree(v)).collect();
        deg_a.sort_unstable();
        deg_b.sort_unstable();
        if deg_a != deg_b {
            return Ok(false);
        }
        let n = self.vertex_count;
        for perm in (0..n).permutations(n) {
            let matches = self
                .edges
                .iter()
                .all(|&(u, v)| other.has_edge(perm[u], perm[v]));
            if matches {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Serialize as a plain-text edge list: first line `n m`, then `m` lines
    /// `u v` in lexicographic order. Parsing this output reproduces the graph
    /// and re-serializing reproduces the bytes.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.vertex_count, self.edges.len()));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parse the edge-list format produced by [`Graph::to_edge_list`].
    /// Errors carry 1-based line numbers.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected 'n m' header"))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::parse(1, "missing vertex count"))?
            .parse()
            .map_err(|e| Error::parse(1, format!("bad vertex count: {e}")))?;
        let m: usize = parts
            .next()
            .ok_or_else(|| Error::parse(1, "missing edge count"))?
            .parse()
            .map_err(|e| Error::parse(1, format!("bad edge count: {e}")))?;
        if parts.next().is_some() {
            return Err(Error::parse(1, "trailing tokens after 'n m' header"));
        }
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let u: usize = parts
                .next()
                .ok_or_else(|| Error::parse(lineno, "missing endpoint"))?
                .parse()
                .map_err(|e| Error::parse(lineno, format!("bad endpoint: {e}")))?;
            let v: usize = parts
                .next()
                .ok_or_else(|| Error::parse(lineno, "missing second endpoint"))?
                .parse()
                .map_err(|e| Error::parse(lineno, format!("bad endpoint: {e}")))?;
            if parts.next().is_some() {
                return Err(Error::parse(lineno, "trailing tokens after edge"));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                1,
                format!("header promised {m} edges but {} were given", edges.len()),
            ));
        }
        Graph::new(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_shapes() {
        let s1 = Graph::star(1);
        assert_eq!((s1.vertex_count(), s1.edge_count()), (2, 1));
        let s4 = Graph::star(4);
        assert_eq!((s4.vertex_count(), s4.edge_count()), (5, 4));
        assert_eq!(s4.degree(0), 4);
        let s0 = Graph::star(0);
        assert_eq!((s0.vertex_count(), s0.edge_count()), (1, 0));
    }

    #[test]
    fn book_shapes() {
        let t1 = Graph::book(1);
        assert_eq!((t1.vertex_count(), t1.edge_count()), (3, 3));
        let t4 = Graph::book(4);
        assert_eq!((t4.vertex_count(), t4.edge_count()), (6, 9));
        // pages mutually non-adjacent
        for p in 2..6 {
            for q in (p + 1)..6 {
                assert!(!t4.has_edge(p, q));
            }
        }
        let t0 = Graph::book(0);
        assert_eq!((t0.vertex_count(), t0.edge_count()), (2, 1));
    }

    #[test]
    fn small_tree_catalogue_is_complete_and_distinct() {
        // 1, 1, 1, 2, 3 isomorphism classes of trees on 1..=5 vertices
        for (n, count) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3)] {
            let trees = Graph::small_trees(n).unwrap();
            assert_eq!(trees.len(), count, "n={n}");
            for t in &trees {
                assert_eq!(t.vertex_count(), n);
                assert!(t.is_tree());
            }
            for i in 0..trees.len() {
                for j in (i + 1)..trees.len() {
                    assert!(!trees[i].is_isomorphic_to(&trees[j]).unwrap());
                }
            }
        }
        assert!(Graph::small_trees(6).is_err());
    }

    #[test]
    fn apex_counts_and_isomorphisms() {
        let k1 = Graph::new(1, []).unwrap();
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        for k in 0..=5 {
            assert!(k1.apex(k).is_isomorphic_to(&Graph::star(k)).unwrap());
            assert!(k2.apex(k).is_isomorphic_to(&Graph::book(k)).unwrap());
        }
        let g = Graph::path(3).unwrap();
        assert_eq!(g.apex(0), g);
        let (a, b) = (2, 3);
        let gg = g.apex(a).apex(b);
        assert_eq!(gg.vertex_count(), 3 + a + b);
        assert_eq!(gg.edge_count(), 2 + a * 3 + b * (3 + a));
    }

    #[test]
    fn apex_edge_count_formula() {
        for k in 0..=6 {
            assert_eq!(Graph::star(k).edge_count(), k);
            assert_eq!(Graph::book(k).edge_count(), 2 * k + 1);
        }
    }

    #[test]
    fn random_trees_are_trees() {
        for n in 1..=12 {
            for seed in 0..100 {
                let t = Graph::random_tree(n, seed).unwrap();
                assert_eq!(t.vertex_count(), n);
                assert_eq!(t.edge_count(), n.saturating_sub(1));
                assert!(t.is_tree(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn random_tree_deterministic_per_seed() {
        assert_eq!(
            Graph::random_tree(9, 7).unwrap(),
            Graph::random_tree(9, 7).unwrap()
        );
    }

    #[test]
    fn path_and_degenerate_cases() {
        assert_eq!(Graph::path(2).unwrap(), Graph::star(1));
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
        assert!(Graph::path(0).is_err());
        assert_eq!(Graph::random_tree(1, 42).unwrap().vertex_count(), 1);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn forest_detection() {
        assert!(Graph::path(5).unwrap().is_forest());
        assert!(Graph::star(4).is_forest());
        assert!(!Graph::book(1).is_forest());
        assert!(!Graph::book(2).is_forest());
        // disjoint forest: two paths
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(g.is_forest());
        assert!(!g.is_tree());
    }

    #[test]
    fn shape_detection() {
        assert_eq!(Graph::star(4).as_star(), Some(4));
        assert_eq!(Graph::star(0).as_star(), Some(0));
        assert_eq!(Graph::star(1).as_star(), Some(1));
        assert_eq!(Graph::book(2).as_star(), None);
        assert_eq!(Graph::book(4).as_book(), Some(4));
        assert_eq!(Graph::book(1).as_book(), Some(1));
        assert_eq!(Graph::book(0).as_book(), Some(0));
        assert_eq!(Graph::star(3).as_book(), None);
        // star with relabeled center is still a star
        let g = Graph::new(4, [(2, 0), (2, 1), (2, 3)]).unwrap();
        assert_eq!(g.as_star(), Some(3));
        // path(4) is a tree but not a star
        assert_eq!(Graph::path(4).unwrap().as_star(), None);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::book(3);
        let text = g.to_edge_list();
        let parsed = Graph::from_edge_list(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(parsed.to_edge_list(), text);
    }

    #[test]
    fn edge_list_parse_errors_carry_line_numbers() {
        let err = Graph::from_edge_list("2 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::from_edge_list("2 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn non_isomorphic_same_degrees() {
        // C6 vs two triangles: same degree sequence, not isomorphic
        let c6 = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let two_k3 = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!c6.is_isomorphic_to(&two_k3).unwrap());
    }
}
