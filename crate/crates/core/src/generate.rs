//! Isomorph-free generation of small graphs.
//!
//! Graphs on `n` vertices are grown from the representatives on `n - 1`
//! vertices by adding one vertex with every possible neighbourhood. A child
//! is kept only when the new vertex lies in the orbit of the child's
//! canonical deletion vertex, so its parent class is recovered from the child
//! alone. Children of one parent that are isomorphic are merged by
//! certificate. Every class therefore appears exactly once, and the output
//! order depends only on the parent order and the neighbourhood bitmask.
//!
//! Triangle-free graphs are closed under vertex deletion, so that family is
//! grown from triangle-free parents only.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_graph, same_orbit};
use crate::error::{Error, Result};
use crate::graph::{Bits, FamilyFilter, Graph, VertexSet};

/// Largest order [`generate_graphs`] accepts for each family.
pub fn generation_limit(family: FamilyFilter) -> usize {
    match family {
        FamilyFilter::All | FamilyFilter::Connected | FamilyFilter::TriangleFree => 10,
        FamilyFilter::Tree => 12,
    }
}

fn check_budget(n: usize, family: FamilyFilter) -> Result<()> {
    let limit = generation_limit(family);
    if n > limit {
        return Err(Error::Budget {
            n,
            limit,
            family: family.name().into(),
        });
    }
    Ok(())
}

/// One representative per isomorphism class of `n`-vertex graphs in `family`,
/// each in canonical labelling.
pub fn generate_graphs(n: usize, family: FamilyFilter) -> Result<Vec<Graph>> {
    if family == FamilyFilter::Tree {
        return generate_trees(n);
    }
    check_budget(n, family)?;
    fold_graphs(n, family, Vec::new, |mut acc, g| {
        acc.push(g.clone());
        acc
    }, |mut a, b| {
        a.extend(b);
        a
    })
}

/// Folds over the generated classes without materialising them.
///
/// Each parent's children are folded in parallel starting from `identity()`;
/// the per-parent results are then combined left to right in parent order,
/// so an associative `combine` gives a result independent of the thread count.
pub fn fold_graphs<A, I, F, C>(n: usize, family: FamilyFilter, identity: I, fold: F, combine: C) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(A, &Graph) -> A + Sync,
    C: Fn(A, A) -> A,
{
    if family == FamilyFilter::Tree {
        return Ok(generate_trees(n)?.iter().fold(identity(), &fold));
    }
    check_budget(n, family)?;
    if n == 0 {
        return Ok(fold(identity(), &Graph::empty(0)?));
    }
    let grow = GrowFamily::of(family);
    let parents = level(n - 1, grow);
    let parts: Vec<A> = parents
        .par_iter()
        .map(|p| {
            let mut acc = Some(identity());
            extend(p, grow, |child| {
                if family.admits(child) {
                    acc = Some(fold(acc.take().expect("accumulator"), child));
                }
            });
            acc.expect("accumulator")
        })
        .collect();
    Ok(parts.into_iter().fold(identity(), combine))
}

/// Which hereditary family parents are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum GrowFamily {
    All,
    TriangleFree,
}

impl GrowFamily {
    fn of(family: FamilyFilter) -> Self {
        match family {
            FamilyFilter::TriangleFree => GrowFamily::TriangleFree,
            _ => GrowFamily::All,
        }
    }
}

type LevelCache = Mutex<HashMap<(usize, GrowFamily), Arc<Vec<Graph>>>>;

fn level_cache() -> &'static LevelCache {
    static CACHE: OnceLock<LevelCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All classes of order `n` in the hereditary family, cached per process.
fn level(n: usize, grow: GrowFamily) -> Arc<Vec<Graph>> {
    if let Some(hit) = level_cache().lock().expect("cache lock").get(&(n, grow)) {
        return hit.clone();
    }
    let graphs = if n == 0 {
        vec![Graph::empty(0).expect("empty graph")]
    } else {
        let parents = level(n - 1, grow);
        let parts: Vec<Vec<Graph>> = parents
            .par_iter()
            .map(|p| {
                let mut out = Vec::new();
                extend(p, grow, |c| out.push(c.clone()));
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    };
    let graphs = Arc::new(graphs);
    level_cache()
        .lock()
        .expect("cache lock")
        .insert((n, grow), graphs.clone());
    graphs
}

/// Emits the accepted children of `parent`, in increasing neighbourhood order.
fn extend(parent: &Graph, grow: GrowFamily, mut emit: impl FnMut(&Graph)) {
    let m = parent.n();
    let new = m;
    let prows = parent.rows();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut rows = vec![0u64; m + 1];
    let mut score = vec![0u32; m + 1];
    for mask in 0..(1u64 << m) {
        if grow == GrowFamily::TriangleFree && Bits(mask).any(|v| prows[v] & mask != 0) {
            continue;
        }
        for v in 0..m {
            rows[v] = prows[v] | (((mask >> v) & 1) << new);
        }
        rows[new] = mask;

        // Cheap invariant: deletion candidates maximise (degree, neighbour degree sum).
        for v in 0..=m {
            let d = rows[v].count_ones();
            let s: u32 = Bits(rows[v]).map(|u| rows[u].count_ones()).sum();
            score[v] = d * 64 * 64 + s;
        }
        let top = *score.iter().max().expect("nonempty");
        if score[new] != top {
            continue;
        }
        let child = Graph::from_rows_unchecked(rows.clone());
        let canon = canonical_form(&child);
        let pos = canon.positions();
        let w = (0..=m)
            .filter(|&v| score[v] == top)
            .max_by_key(|&v| pos[v])
            .expect("new vertex is a candidate");
        if w != new && !same_orbit(&child, new, w) {
            continue;
        }
        if seen.insert(canon.certificate.clone()) {
            emit(&canon.graph());
        }
    }
}

/// One representative per isomorphism class of trees on `n` vertices,
/// grown by attaching a leaf and merged by canonical form.
pub fn generate_trees(n: usize) -> Result<Vec<Graph>> {
    check_budget(n, FamilyFilter::Tree)?;
    if n == 0 {
        return Err(Error::Domain("trees need at least one vertex".into()));
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let c = canonical_graph(&t.with_vertex(VertexSet::singleton(v))?);
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
