//! Reference implementations written straight from the definitions, used as
//! oracles. They share nothing with the library beyond `Graph`.
#![allow(dead_code)]

use kdis_core::Graph;
use rand::Rng;

/// All pairs `(i, j)` with `i < j < n`, in a fixed order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Every labelled graph on `n` vertices, one per edge subset.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let ps = pairs(n);
    (0u64..1 << ps.len()).map(move |mask| {
        let edges: Vec<_> = ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// k-DISes as sorted vertex lists, by testing every subset against the definition.
pub fn naive_kdis(g: &Graph, k: u32) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let independent = set.iter().all(|&a| set.iter().all(|&b| !g.has_edge(a, b)));
        let dominated = (0..n)
            .filter(|v| !set.contains(v))
            .all(|v| set.iter().filter(|&&u| g.has_edge(u, v)).count() >= k as usize);
        if independent && dominated {
            out.push(set);
        }
    }
    out
}

/// Lexicographically largest upper-triangle bit string over all relabellings.
pub fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = pairs(n).iter().map(|&(i, j)| g.has_edge(perm[i], perm[j])).collect();
        if best.as_ref().is_none_or(|b| code > *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
