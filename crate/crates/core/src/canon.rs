//! Canonical labelling by equitable refinement and backtracking.
//!
//! The search tree is the usual individualise-and-refine tree over ordered
//! partitions. Each leaf is a discrete partition, read as a labelling; the
//! canonical labelling is the leaf whose relabelled adjacency rows are
//! lexicographically largest. Subtrees are skipped only when an automorphism
//! already found maps them onto an explored subtree, so the maximum is taken
//! over a set of certificates that depends on the isomorphism class alone.

use crate::graph::{Bits, Graph, VertexSet};

/// A canonical labelling: `labeling[i]` is the vertex placed at position `i`,
/// and `certificate[i]` is the neighbourhood of position `i` in the relabelled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Canon {
    pub labeling: Vec<usize>,
    pub certificate: Vec<u64>,
}

impl Canon {
    /// The relabelled graph.
    pub fn graph(&self) -> Graph {
        Graph::from_rows_unchecked(self.certificate.clone())
    }

    /// Inverse of `labeling`: vertex to canonical position.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.labeling.len()];
        for (i, &v) in self.labeling.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_form(g: &Graph) -> Canon {
    let cells = if g.n() == 0 { vec![] } else { vec![g.vertices()] };
    canonical_form_colored(g, &cells)
}

/// Canonical form of `g` with an ordered vertex colouring. `cells` must
/// partition the vertex range; isomorphisms are required to map cell `i` to
/// cell `i`.
pub fn canonical_form_colored(g: &Graph, cells: &[VertexSet]) -> Canon {
    debug_assert_eq!(
        cells.iter().fold(0u64, |a, c| {
            debug_assert_eq!(a & c.bits(), 0, "cells overlap");
            a | c.bits()
        }),
        g.vertices().bits()
    );
    let mut cells: Vec<u64> = cells.iter().map(|c| c.bits()).filter(|&c| c != 0).collect();
    let rows = g.rows();
    refine(rows, &mut cells);
    let mut search = Search {
        rows,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    Canon {
        labeling: best.labeling,
        certificate: best.certificate,
    }
}

pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).graph()
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && canonical_form(g).certificate == canonical_form(h).certificate
}

/// True iff some automorphism of `g` maps `a` to `b`.
pub fn same_orbit(g: &Graph, a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    if g.degree(a) != g.degree(b) {
        return false;
    }
    let with = |v: usize| {
        let s = VertexSet::singleton(v);
        canonical_form_colored(g, &[s, g.vertices().difference(s)]).certificate
    };
    with(a) == with(b)
}

/// Splits cells until every cell is equitable with respect to every other:
/// all members of a cell have the same number of neighbours in each cell.
/// Sub-cells are ordered by that count, which keeps the result invariant.
pub(crate) fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    let mut scratch: Vec<(u32, usize)> = Vec::with_capacity(64);
    let mut split: Vec<u64> = Vec::with_capacity(64);
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            if cells.len() == rows.len() {
                return;
            }
            let splitter = cells[si];
            split.clear();
            let mut any = false;
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    split.push(cell);
                    continue;
                }
                scratch.clear();
                scratch.extend(Bits(cell).map(|v| ((rows[v] & splitter).count_ones(), v)));
                let lo = scratch.iter().map(|p| p.0).min().unwrap();
                let hi = scratch.iter().map(|p| p.0).max().unwrap();
                if lo == hi {
                    split.push(cell);
                    continue;
                }
                any = true;
                scratch.sort_unstable();
                let mut current = scratch[0].0;
                let mut part = 0u64;
                for &(c, v) in scratch.iter() {
                    if c != current {
                        split.push(part);
                        part = 0;
                        current = c;
                    }
                    part |= 1 << v;
                }
                split.push(part);
            }
            if any {
                std::mem::swap(cells, &mut split);
                changed = true;
            }
            si += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Leaf {
    path: Vec<usize>,
    labeling: Vec<usize>,
    certificate: Vec<u64>,
}

struct Search<'a> {
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Stored as `perm[v] = image of v`.
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(d)` when the caller chain should unwind to the node at depth `d`.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c & (c - 1) != 0) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for u in Bits(cells[target]) {
            if !explored.is_empty() && self.equivalent_to_explored(path, u, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << u);
            child.push(cells[target] & !(1 << u));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.rows, &mut child);

            path.push(u);
            let jump = self.descend(child, path);
            path.pop();
            explored.push(u);
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Whether `u` shares an orbit with an explored sibling under the stored
    /// automorphisms that fix `path` pointwise.
    fn equivalent_to_explored(&self, path: &[usize], u: usize, explored: &[usize]) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            any = true;
            for (v, &image) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let ru = find(&mut parent, u);
        explored.iter().any(|&e| find(&mut parent, e) == ru)
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.rows.len();
        let labeling: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in labeling.iter().enumerate() {
            pos[v] = i;
        }
        let certificate: Vec<u64> = labeling
            .iter()
            .map(|&v| Bits(self.rows[v]).fold(0u64, |acc, u| acc | (1 << pos[u])))
            .collect();

        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: path.to_vec(),
                labeling,
                certificate,
            };
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                labeling: leaf.labeling.clone(),
                certificate: leaf.certificate.clone(),
            });
            self.first = Some(leaf);
            return None;
        };

        if certificate == first.certificate {
            let gamma = compose(&first.labeling, &labeling, n);
            let d = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            let maps_prefix = first.path.len() > d
                && path.len() > d
                && (0..=d).all(|i| gamma[first.path[i]] == path[i]);
            self.automorphisms.push(gamma);
            return maps_prefix.then_some(d);
        }

        let best = self.best.as_ref().expect("best set with first");
        match certificate.cmp(&best.certificate) {
            std::cmp::Ordering::Equal => {
                let gamma = compose(&best.labeling, &labeling, n);
                self.automorphisms.push(gamma);
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf {
                    path: path.to_vec(),
                    labeling,
                    certificate,
                });
            }
            std::cmp::Ordering::Less => {}
        }
        None
    }
}

/// The map sending `from[i]` to `to[i]`.
fn compose(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut gamma = vec![0; n];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::tensor_product;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(0..=14);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            let (cg, ch) = (canonical_form(&g), canonical_form(&h));
            assert_eq!(cg.certificate, ch.certificate, "{g:?}");
            assert_eq!(g.permuted(&cg.positions()), cg.graph());
        }
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for g in [
            Graph::empty(16).unwrap(),
            Graph::complete(16).unwrap(),
            Graph::complete_multipartite(&[4, 4, 4, 4]).unwrap(),
            Graph::cycle(20).unwrap(),
            tensor_product(&Graph::complete(4).unwrap(), &Graph::complete(4).unwrap()).unwrap(),
            Graph::from_edges(12, &(1..12).map(|v| (0, v)).collect::<Vec<_>>()).unwrap(),
        ] {
            let c = canonical_form(&g);
            assert_eq!(c.graph().edge_count(), g.edge_count());
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c6 = Graph::cycle(6).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert!(!are_isomorphic(&c6, &two_k3));
        // K3×K3 is the Paley graph on 9 vertices, which is self-complementary
        let t = tensor_product(&k3, &k3).unwrap();
        assert!(are_isomorphic(&t, &t.permuted(&[8, 7, 6, 5, 4, 3, 2, 1, 0])));
        assert!(are_isomorphic(&t, &t.complement()));
        assert!(!are_isomorphic(&Graph::path(4).unwrap(), &Graph::complete_multipartite(&[1, 3]).unwrap()));
    }

    #[test]
    fn orbits() {
        let p4 = Graph::path(4).unwrap();
        assert!(same_orbit(&p4, 0, 3));
        assert!(same_orbit(&p4, 1, 2));
        assert!(!same_orbit(&p4, 0, 1));
        let star_plus = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert!(same_orbit(&star_plus, 1, 2));
        assert!(!same_orbit(&star_plus, 1, 4));
    }

    #[test]
    fn refinement_is_equitable() {
        let g = Graph::path(7).unwrap();
        let mut cells = vec![g.vertices().bits()];
        refine(g.rows(), &mut cells);
        for &a in &cells {
            for &b in &cells {
                let counts: Vec<u32> = Bits(a).map(|v| (g.rows()[v] & b).count_ones()).collect();
                assert!(counts.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}
