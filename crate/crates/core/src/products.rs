//! Graph products and the independent blow-up of a k-DIS.
//!
//! Both products place vertex `(u, v)` at index `u * |V(H)| + v`.

use crate::enumeration::is_independent;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

fn product_order(g: &Graph, h: &Graph) -> Result<usize> {
    let n = g.n() * h.n();
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            needed: n,
            max: MAX_VERTICES,
        });
    }
    Ok(n)
}

fn build(g: &Graph, h: &Graph, adjacent: impl Fn(usize, usize, usize, usize) -> bool) -> Result<Graph> {
    let n = product_order(g, h)?;
    let m = h.n();
    let mut rows = vec![0u64; n];
    for (a, row) in rows.iter_mut().enumerate() {
        let (u, v) = (a / m, a % m);
        for b in 0..n {
            let (x, y) = (b / m, b % m);
            if a != b && adjacent(u, v, x, y) {
                *row |= 1 << b;
            }
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// `G·H`: `(u,v) ~ (x,y)` iff `u ~ x` in G, or `u = x` and `v ~ y` in H.
///
/// `G·E_l` replaces every vertex of G by an independent set of size `l`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Graph> {
    build(g, h, |u, v, x, y| g.has_edge(u, x) || (u == x && h.has_edge(v, y)))
}

/// `G×H` with `(u,v) ~ (x,y)` iff `u ~ x` in G and `v ~ y` in H.
///
/// This is the tensor (categorical) product; `K3×K3` is the 4-regular graph
/// on 9 vertices whose rows and columns are its six 2-DISes.
pub fn tensor_product(g: &Graph, h: &Graph) -> Result<Graph> {
    build(g, h, |u, v, x, y| g.has_edge(u, x) && h.has_edge(v, y))
}

/// Blows `set` up inside `G·E_l`: returns `{(u, i) : u ∈ set, 0 <= i < l}`.
///
/// If `set` is a k-DIS of `g` the result is a `(k·l)`-DIS of
/// `lexicographic_product(g, E_l)`. Only independence is checked here.
pub fn lift_kdis(g: &Graph, set: VertexSet, l: usize) -> Result<VertexSet> {
    if l == 0 {
        return Err(Error::Domain("blow-up factor must be positive".into()));
    }
    if g.n() * l > MAX_VERTICES {
        return Err(Error::Capacity {
            needed: g.n() * l,
            max: MAX_VERTICES,
        });
    }
    if !set.is_subset(g.vertices()) {
        return Err(Error::Contract(format!("{set} is not a vertex subset of the graph")));
    }
    if !is_independent(g, set) {
        return Err(Error::Contract(format!("{set} is not independent")));
    }
    let block = VertexSet::full(l).bits();
    Ok(set
        .iter()
        .fold(VertexSet::EMPTY, |acc, u| VertexSet(acc.bits() | (block << (u * l)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }
    fn e(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    #[test]
    fn lexicographic_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(lexicographic_product(&c5, &e(1)).unwrap(), c5);

        let two_triangles = lexicographic_product(&e(2), &k(3)).unwrap();
        assert_eq!(two_triangles, k(3).disjoint_union(&k(3)).unwrap());

        let k222 = lexicographic_product(&k(3), &e(2)).unwrap();
        assert_eq!((k222.n(), k222.edge_count()), (6, 12));
        // row-major labelling puts each part on consecutive indices
        assert_eq!(k222, Graph::complete_multipartite(&[2, 2, 2]).unwrap());
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_product(&k(3), &k(3)).unwrap();
        assert_eq!((t.n(), t.edge_count()), (9, 18));
        assert!((0..9).all(|v| t.degree(v) == 4));

        let m = tensor_product(&k(2), &k(2)).unwrap();
        assert_eq!(m, Graph::from_edges(4, &[(0, 3), (1, 2)]).unwrap());

        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(tensor_product(&c5, &e(3)).unwrap(), e(15));
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            tensor_product(&k(9), &k(8)),
            Err(Error::Capacity { needed: 72, .. })
        ));
        assert!(matches!(
            lift_kdis(&k(9), VertexSet::singleton(0), 8),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let row = VertexSet::from_iter([0, 1, 2]);
        let t = tensor_product(&k(3), &k(3)).unwrap();
        let lifted = lift_kdis(&t, row, 2).unwrap();
        assert_eq!(lifted, VertexSet::from_iter(0..6));

        let k22 = Graph::complete_multipartite(&[2, 2]).unwrap();
        assert_eq!(lift_kdis(&k22, VertexSet::from_iter([0, 1]), 3).unwrap().len(), 6);
        assert_eq!(lift_kdis(&k22, VertexSet::from_iter([2, 3]), 1).unwrap(), VertexSet::from_iter([2, 3]));

        assert!(matches!(
            lift_kdis(&k22, VertexSet::from_iter([0, 2]), 2),
            Err(Error::Contract(_))
        ));
        assert!(matches!(lift_kdis(&k22, VertexSet::from_iter([0]), 0), Err(Error::Domain(_))));
    }
}
