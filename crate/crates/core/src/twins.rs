//! Almost twins and the recurrence bound on the number of k-DISes.
//!
//! Two non-adjacent vertices `x`, `y` are almost twins (for a given `k`) when
//! `|N(x) \ N(y)| < k` and `|N(y) \ N(x)| < k`. For a fixed vertex `v`, the
//! twin graph `T` has vertex set `N(v)` and joins almost-twin pairs. Vertices
//! in one component of `T` lie in exactly the same k-DISes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::enumeration::{count_mi, enumerate_kdis};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub fn are_almost_twins(g: &Graph, x: usize, y: usize, k: u32) -> Result<bool> {
    if x == y {
        return Err(Error::Domain(format!("almost-twin test needs distinct vertices, got {x} twice")));
    }
    if x >= g.n() || y >= g.n() {
        return Err(Error::Domain(format!("vertex out of range 0..{}", g.n())));
    }
    Ok(almost_twins(g, x, y, k))
}

#[inline]
fn almost_twins(g: &Graph, x: usize, y: usize, k: u32) -> bool {
    let (nx, ny) = (g.rows()[x], g.rows()[y]);
    !g.has_edge(x, y) && (nx & !ny).count_ones() < k && (ny & !nx).count_ones() < k
}

/// The twin graph on `N(v)`. Local vertex `i` stands for `members[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinGraph {
    pub members: Vec<usize>,
    pub graph: Graph,
}

impl TwinGraph {
    /// Components as vertex sets of the host graph, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.graph
            .components()
            .into_iter()
            .map(|c| c.iter().map(|i| self.members[i]).collect())
            .collect()
    }
}

pub fn twin_graph(g: &Graph, v: usize, k: u32) -> TwinGraph {
    let members = g.neighborhood(v).to_vec();
    let mut edges = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate().skip(i + 1) {
            if almost_twins(g, x, y, k) {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(members.len(), &edges).expect("neighbourhood fits");
    TwinGraph { members, graph }
}

/// Component structure of the twin graph around one vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwinProfile {
    pub v: usize,
    /// `|N(v)|`.
    pub delta: usize,
    pub component_sizes: Vec<usize>,
    /// Size threshold `B = beta * k` separating small from large components.
    pub threshold: f64,
}

impl TwinProfile {
    /// Total size of the components of size at most the threshold.
    pub fn small_total(&self) -> usize {
        self.component_sizes
            .iter()
            .filter(|&&s| s as f64 <= self.threshold)
            .sum()
    }

    /// Pairs of `N(v)` inside a common component.
    pub fn within_pairs(&self) -> u64 {
        self.component_sizes.iter().map(|&s| choose2(s as u64)).sum()
    }

    /// Pairs of `N(v)` split across two components, counted directly.
    pub fn cross_pairs(&self) -> u64 {
        let mut total = 0u64;
        for (i, &a) in self.component_sizes.iter().enumerate() {
            for &b in &self.component_sizes[i + 1..] {
                total += (a * b) as u64;
            }
        }
        total
    }
}

pub fn twin_profile(g: &Graph, v: usize, k: u32, beta: f64) -> TwinProfile {
    let t = twin_graph(g, v, k);
    TwinProfile {
        v,
        delta: t.members.len(),
        component_sizes: t.components().iter().map(|c| c.len()).collect(),
        threshold: beta * k as f64,
    }
}

/// Outcome of checking the twin-graph components around one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCheck {
    /// Every component lies inside or outside every k-DIS.
    pub all_or_nothing: bool,
    /// No component contains an edge of `g`.
    pub independent: bool,
    /// Every component that contains an edge of `g` misses every k-DIS.
    pub edged_components_unused: bool,
}

/// Checks the twin-graph components around `v` against a full enumeration.
///
/// Components need not be independent: with `k = 2`, a vertex `v` adjacent
/// to `x`, `y`, `z` with `x ~ z` puts all three in one component. Such a
/// component meets no k-DIS, which is what the recurrence relies on.
pub fn twin_component_check(g: &Graph, v: usize, k: u32) -> ComponentCheck {
    let comps = twin_graph(g, v, k).components();
    let has_edge = |c: VertexSet| c.iter().any(|x| !g.neighborhood(x).intersection(c).is_empty());
    let list = enumerate_kdis(g, k);
    ComponentCheck {
        all_or_nothing: list
            .sets
            .iter()
            .all(|&set| comps.iter().all(|&c| c.is_subset(set) || c.intersection(set).is_empty())),
        independent: !comps.iter().any(|&c| has_edge(c)),
        edged_components_unused: comps
            .iter()
            .filter(|&&c| has_edge(c))
            .all(|&c| list.sets.iter().all(|s| s.intersection(c).is_empty())),
    }
}

/// Both clauses at once: all-or-nothing membership and independent
/// components. The second clause fails on some graphs; see
/// [`twin_component_check`].
pub fn same_component_same_kdis_check(g: &Graph, v: usize, k: u32) -> bool {
    let c = twin_component_check(g, v, k);
    c.all_or_nothing && c.independent
}

#[inline]
fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Both sides of the recurrence bound for one graph and vertex. The right
/// side is `rhs_numerator / rhs_denominator`, kept as an exact fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BndEvaluation {
    pub lhs: u64,
    pub rhs_numerator: u128,
    pub rhs_denominator: u128,
}

impl BndEvaluation {
    pub fn holds(&self) -> bool {
        self.lhs as u128 * self.rhs_denominator <= self.rhs_numerator
    }

    pub fn rhs(&self) -> f64 {
        self.rhs_numerator as f64 / self.rhs_denominator as f64
    }
}

/// Evaluates
///
/// ```text
/// mi(n-δ-1) + [ Σ C(s_i,2)·mi(n-δ-s_i) + (C(δ,2) - Σ C(s_i,2))·mi(n-δ-k) ] / C(k,2)
/// ```
///
/// where `δ = deg(v)`, `s_i` are the twin-graph component sizes and `mi` is
/// the table of `mi_k(m)` (maximum over all `m`-vertex graphs). Orders below
/// zero contribute 0: no k-DIS can be counted there.
pub fn recurrence_bnd(g: &Graph, v: usize, k: u32, mi_table: &BTreeMap<usize, u64>) -> Result<BndEvaluation> {
    if k < 2 {
        return Err(Error::Domain(format!("the recurrence needs k >= 2, got {k}")));
    }
    if v >= g.n() {
        return Err(Error::Domain(format!("vertex {v} out of range 0..{}", g.n())));
    }
    let delta = g.degree(v);
    if delta != g.min_degree()? {
        return Err(Error::Contract(format!("vertex {v} does not have minimum degree")));
    }
    if delta < k as usize {
        return Err(Error::Contract(format!("minimum degree {delta} is below k = {k}")));
    }
    let n = g.n() as i64;
    let mi = |order: i64| -> Result<u128> {
        if order < 0 {
            return Ok(0);
        }
        mi_table
            .get(&(order as usize))
            .map(|&c| c as u128)
            .ok_or(Error::MissingEntry { order: order as usize })
    };
    let d = delta as i64;
    let profile = twin_profile(g, v, k, 1.0);
    let within = profile.within_pairs() as u128;
    let mut bracket = 0u128;
    for &s in &profile.component_sizes {
        bracket += choose2(s as u64) as u128 * mi(n - d - s as i64)?;
    }
    bracket += (choose2(delta as u64) as u128 - within) * mi(n - d - k as i64)?;
    let denom = choose2(k as u64) as u128;
    Ok(BndEvaluation {
        lhs: count_mi(g, k),
        rhs_numerator: denom * mi(n - d - 1)? + bracket,
        rhs_denominator: denom,
    })
}

/// `count_mi(g, k) <= RHS` of the recurrence bound at `v`.
pub fn check_recurrence_bnd(g: &Graph, v: usize, k: u32, mi_table: &BTreeMap<usize, u64>) -> Result<bool> {
    recurrence_bnd(g, v, k, mi_table).map(|e| e.holds())
}
