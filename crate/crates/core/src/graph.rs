//! Simple undirected graphs on at most 64 vertices.
//!
//! Every vertex owns one `u64` row holding its open neighbourhood, so vertex
//! subsets are plain bitmasks and most set operations compile down to a few
//! instructions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[inline]
fn range_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertex range `0..n`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full range `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(range_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// An undirected simple graph with vertices `0..n`.
///
/// Graphs are immutable values. Row `v` of the adjacency holds `N(v)`; rows
/// are symmetric, irreflexive and carry no bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let full = range_mask(n);
        let adj = (0..n).map(|v| full & !(1u64 << v)).collect();
        Ok(Graph { n, adj })
    }

    /// Cycle `0-1-..-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Complete multipartite graph with the given part sizes. Parts occupy
    /// consecutive vertex ranges in the order given. A single part yields the
    /// edgeless graph on that many vertices.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Self> {
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::Domain(format!("part {i} has size 0")));
        }
        let n: usize = part_sizes.iter().sum();
        check_capacity(n)?;
        let full = range_mask(n);
        let mut adj = vec![0u64; n];
        let mut start = 0;
        for &size in part_sizes {
            let part = range_mask(start + size) & !range_mask(start);
            for row in &mut adj[start..start + size] {
                *row = full & !part;
            }
            start += size;
        }
        let g = Graph { n, adj };
        g.debug_check();
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_capacity(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from raw neighbourhood rows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_capacity(n)?;
        let mask = range_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::Contract(format!("row {v} has bits outside 0..{n}")));
            }
            if (row >> v) & 1 == 1 {
                return Err(Error::Contract(format!("self-loop at {v}")));
            }
            for u in Bits(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(Error::Contract(format!("edge {v}->{u} is not symmetric")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows are trusted; used by internal constructors that preserve the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        let g = Graph { n: rows.len(), adj: rows };
        g.debug_check();
        g
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let mask = range_mask(self.n);
            for (v, &row) in self.adj.iter().enumerate() {
                debug_assert_eq!(row & !mask, 0, "row {v} out of range");
                debug_assert_eq!((row >> v) & 1, 0, "self-loop at {v}");
                for u in Bits(row) {
                    debug_assert_eq!((self.adj[u] >> v) & 1, 1, "asymmetric edge {v}-{u}");
                }
            }
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1 << v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !range_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n)
            .map(|v| self.degree(v))
            .min()
            .ok_or_else(|| Error::Domain("minimum degree of the graph on 0 vertices".into()))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    /// Vertex set of the component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in Bits(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    /// Connected components, each listed once, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// The graph on 0 vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Vertices of `other` are shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_capacity(n)?;
        let shift = self.n;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|&r| r << shift))
            .collect();
        Ok(Graph::from_rows_unchecked(adj))
    }

    pub fn complement(&self) -> Graph {
        let full = range_mask(self.n);
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1u64 << v)).collect();
        Graph::from_rows_unchecked(adj)
    }

    /// Subgraph induced by `keep`, with surviving vertices renumbered in increasing order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        let keep = keep.intersection(self.vertices());
        let old: Vec<usize> = keep.to_vec();
        let adj = old
            .iter()
            .map(|&v| {
                old.iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        Graph::from_rows_unchecked(adj)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in Bits(self.adj[v]) {
                row |= 1 << perm[u];
            }
            adj[perm[v]] = row;
        }
        Graph::from_rows_unchecked(adj)
    }

    /// Adds a new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        check_capacity(self.n + 1)?;
        let nbrs = nbrs.intersection(self.vertices());
        let v = self.n;
        let mut adj = self.adj.clone();
        for u in nbrs {
            adj[u] |= 1 << v;
        }
        adj.push(nbrs.0);
        Ok(Graph::from_rows_unchecked(adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            needed: n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Restricts an extremal search to a graph family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyFilter {
    All,
    Connected,
    TriangleFree,
    Tree,
}

impl FamilyFilter {
    pub fn admits(self, g: &Graph) -> bool {
        match self {
            FamilyFilter::All => true,
            FamilyFilter::Connected => g.is_connected(),
            FamilyFilter::TriangleFree => g.is_triangle_free(),
            FamilyFilter::Tree => g.is_tree(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyFilter::All => "all",
            FamilyFilter::Connected => "connected",
            FamilyFilter::TriangleFree => "triangle-free",
            FamilyFilter::Tree => "tree",
        }
    }
}

impl fmt::Display for FamilyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(FamilyFilter::All),
            "connected" => Ok(FamilyFilter::Connected),
            "triangle-free" => Ok(FamilyFilter::TriangleFree),
            "tree" => Ok(FamilyFilter::Tree),
            other => Err(Error::Domain(format!("unknown family `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_examples() {
        let k3 = Graph::complete_multipartite(&[1, 1, 1]).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(Graph::complete_multipartite(&[2, 2]).unwrap().edge_count(), 4);
        let e3 = Graph::complete_multipartite(&[3]).unwrap();
        assert_eq!(e3, Graph::empty(3).unwrap());
        assert!(matches!(
            Graph::complete_multipartite(&[40, 30]),
            Err(Error::Capacity { needed: 70, .. })
        ));
    }

    #[test]
    fn multipartite_kk_is_regular_bipartite() {
        for k in 1..=10 {
            let g = Graph::complete_multipartite(&[k, k]).unwrap();
            assert!((0..2 * k).all(|v| g.degree(v) == k));
            assert!(g.is_triangle_free());
            let left = VertexSet::full(k);
            assert!(left.iter().all(|v| g.neighborhood(v).intersection(left).is_empty()));
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(Graph::complete_multipartite(&[2, 2]).unwrap().min_degree(), Ok(2));
        assert_eq!(Graph::empty(3).unwrap().min_degree(), Ok(0));
        assert_eq!(Graph::cycle(5).unwrap().min_degree(), Ok(2));
        assert!(matches!(Graph::empty(0).unwrap().min_degree(), Err(Error::Domain(_))));
    }

    #[test]
    fn family_predicates() {
        let c5 = Graph::cycle(5).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert!(c5.is_triangle_free());
        assert!(!k3.is_triangle_free());
        let two = k3.disjoint_union(&k3).unwrap();
        assert_eq!((two.n(), two.edge_count(), two.components().len()), (6, 6, 2));
        assert!(Graph::path(5).unwrap().is_tree());
        assert!(!c5.is_tree());
        assert!(Graph::empty(1).unwrap().is_tree());
        assert!(!Graph::empty(0).unwrap().is_tree());
    }

    #[test]
    fn union_capacity() {
        let a = Graph::empty(40).unwrap();
        assert!(matches!(a.disjoint_union(&a), Err(Error::Capacity { .. })));
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn tree_iff_connected_with_n_minus_one_edges() {
        // every labelled graph on up to 7 vertices
        for n in 1..=7usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                // acyclic + connected via union-find
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut Vec<usize>, x: usize) -> usize {
                    if p[x] != x {
                        let r = find(p, p[x]);
                        p[x] = r;
                    }
                    p[x]
                }
                let mut acyclic = true;
                for &(u, v) in &edges {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a == b {
                        acyclic = false;
                    } else {
                        parent[a] = b;
                    }
                }
                let roots = (0..n).filter(|&x| find(&mut parent, x) == x).count();
                assert_eq!(g.is_tree(), acyclic && roots == 1, "{g:?}");
            }
        }
    }

    #[test]
    fn family_parse() {
        for f in [
            FamilyFilter::All,
            FamilyFilter::Connected,
            FamilyFilter::TriangleFree,
            FamilyFilter::Tree,
        ] {
            assert_eq!(f.name().parse::<FamilyFilter>().unwrap(), f);
        }
        assert!("forest".parse::<FamilyFilter>().is_err());
    }
}
