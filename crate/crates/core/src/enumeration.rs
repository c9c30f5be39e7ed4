//! Exact enumeration and counting of k-dominating independent sets.
//!
//! A set `D` is a k-DIS of `G` when no edge lies inside `D` and every vertex
//! outside `D` has at least `k` neighbours in `D`. For `k = 1` these are the
//! maximal independent sets. Every k-DIS with `k >= 1` is in particular a
//! maximal independent set, and every `(k+1)`-DIS is a k-DIS.

use serde::Serialize;

use crate::graph::{Bits, Graph, VertexSet};

/// Largest order handled by the exhaustive subset scan under [`Strategy::Auto`].
pub const SCAN_LIMIT: usize = 20;

#[inline]
pub fn is_independent(g: &Graph, s: VertexSet) -> bool {
    let rows = g.rows();
    s.iter().all(|v| rows[v] & s.bits() == 0)
}

/// True iff `s` is independent and k-dominates every vertex outside it.
/// On the graph with no vertices the empty set qualifies.
#[inline]
pub fn is_k_dominating_independent(g: &Graph, s: VertexSet, k: u32) -> bool {
    if !s.is_subset(g.vertices()) {
        return false;
    }
    let rows = g.rows();
    let bits = s.bits();
    for (v, &row) in rows.iter().enumerate() {
        if (bits >> v) & 1 == 1 {
            if row & bits != 0 {
                return false;
            }
        } else if (row & bits).count_ones() < k {
            return false;
        }
    }
    true
}

/// The k-DISes of one graph, sorted by bitmask value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KDisList {
    pub k: u32,
    pub sets: Vec<VertexSet>,
}

impl KDisList {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }
}

/// How [`enumerate_kdis_with`] walks the search space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Scan for `n <= SCAN_LIMIT`, branch and bound above.
    Auto,
    /// Test all `2^n` subsets.
    Scan,
    /// Branch over vertices in degeneracy order.
    Branch,
}

pub fn enumerate_kdis(g: &Graph, k: u32) -> KDisList {
    enumerate_kdis_with(g, k, Strategy::Auto)
}

pub fn enumerate_kdis_with(g: &Graph, k: u32, strategy: Strategy) -> KDisList {
    let mut sets = Vec::new();
    match resolve(g, strategy) {
        Strategy::Scan => scan(g, k, |s| sets.push(s)),
        _ => {
            Brancher::new(g, k).run(&mut |s| sets.push(s));
            sets.sort_unstable();
        }
    }
    KDisList { k, sets }
}

/// `mi_k(G)`: the number of k-DISes, without materialising them.
pub fn count_mi(g: &Graph, k: u32) -> u64 {
    count_mi_with(g, k, Strategy::Auto)
}

pub fn count_mi_with(g: &Graph, k: u32, strategy: Strategy) -> u64 {
    let mut count = 0u64;
    match resolve(g, strategy) {
        Strategy::Scan => scan(g, k, |_| count += 1),
        _ => Brancher::new(g, k).run(&mut |_| count += 1),
    }
    count
}

fn resolve(g: &Graph, strategy: Strategy) -> Strategy {
    match strategy {
        Strategy::Auto if g.n() <= SCAN_LIMIT => Strategy::Scan,
        Strategy::Auto => Strategy::Branch,
        s => s,
    }
}

fn scan(g: &Graph, k: u32, mut emit: impl FnMut(VertexSet)) {
    assert!(g.n() < 64, "subset scan needs n < 64");
    let rows = g.rows();
    'subsets: for bits in 0..(1u64 << g.n()) {
        for (v, &row) in rows.iter().enumerate() {
            let inside = (bits >> v) & 1 == 1;
            if inside {
                if row & bits != 0 {
                    continue 'subsets;
                }
            } else if (row & bits).count_ones() < k {
                continue 'subsets;
            }
        }
        emit(VertexSet(bits));
    }
}

/// Vertices in the order they are removed when repeatedly deleting a vertex
/// of minimum remaining degree (ties to the smaller index).
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let mut alive = g.vertices().bits();
    let mut order = Vec::with_capacity(g.n());
    while alive != 0 {
        let v = Bits(alive)
            .min_by_key(|&v| ((g.rows()[v] & alive).count_ones(), v))
            .expect("alive is nonempty");
        order.push(v);
        alive &= !(1 << v);
    }
    order
}

/// Branch and bound over include/exclude decisions.
///
/// Invariant: `chosen` is independent and `out` holds every decided-out
/// vertex plus every neighbour of `chosen`. A node survives only while each
/// vertex of `out` can still collect `k` neighbours from `chosen ∪ avail`.
struct Brancher<'a> {
    rows: &'a [u64],
    order: Vec<usize>,
    k: u32,
}

impl<'a> Brancher<'a> {
    fn new(g: &'a Graph, k: u32) -> Self {
        Brancher {
            rows: g.rows(),
            order: degeneracy_order(g),
            k,
        }
    }

    fn run(&self, emit: &mut impl FnMut(VertexSet)) {
        let all = self.order.iter().fold(0u64, |acc, &v| acc | (1 << v));
        self.descend(0, 0, 0, all, emit);
    }

    fn feasible(&self, chosen: u64, out: u64, avail: u64) -> bool {
        let reach = chosen | avail;
        Bits(out).all(|x| (self.rows[x] & reach).count_ones() >= self.k)
    }

    fn descend(&self, mut depth: usize, chosen: u64, out: u64, avail: u64, emit: &mut impl FnMut(VertexSet)) {
        while depth < self.order.len() && (avail >> self.order[depth]) & 1 == 0 {
            depth += 1;
        }
        if depth == self.order.len() {
            debug_assert_eq!(avail, 0);
            emit(VertexSet(chosen));
            return;
        }
        let v = self.order[depth];
        let bit = 1u64 << v;

        let blocked = self.rows[v] & avail;
        let (c, o, a) = (chosen | bit, out | blocked, avail & !bit & !blocked);
        if self.feasible(c, o, a) {
            self.descend(depth + 1, c, o, a, emit);
        }

        let (o, a) = (out | bit, avail & !bit);
        if self.feasible(chosen, o, a) {
            self.descend(depth + 1, chosen, o, a, emit);
        }
    }
}

/// All maximal independent sets, sorted by bitmask value.
///
/// Bron–Kerbosch with Tomita pivoting run on the complement, so it shares no
/// code path with the k-DIS enumerators.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let co = g.complement();
    let mut out = Vec::new();
    bron_kerbosch(co.rows(), 0, g.vertices().bits(), 0, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(rows: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
    if p == 0 {
        if x == 0 {
            out.push(VertexSet(r));
        }
        return;
    }
    let pivot = Bits(p | x)
        .max_by_key(|&u| (rows[u] & p).count_ones())
        .expect("p is nonempty");
    for v in Bits(p & !rows[pivot]) {
        bron_kerbosch(rows, r | (1 << v), p & rows[v], x & rows[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}
