//! Named graph families with fixed vertex numbering.
//!
//! Numbering puts the star block first (its center is vertex 0), then the
//! bridge vertices, then the triangle block. Role maps name the vertex
//! classes used by the reduced eigen-systems in [`crate::charpoly`].
//!
//! `U(p, q)` joins a pendant of `K_{1,p}` to a pendant of `S_{q+1}^3`:
//!
//! ```text
//!   v1 (p-1 pendants)                      v6 ── v6
//!        \                                   \  /
//!         v2 ── v3 ── v4 ── v5 ── v7 (q-3 pendants)
//! ```
//!
//! `U'(p)` joins a pendant of `K_{1,p}` to a vertex of a triangle; its classes
//! are `u1` (other pendants), `u2` (center), `u3` (bridge pendant), `u4` (the
//! triangle vertex met by the bridge) and `u5` (the other two triangle
//! vertices).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{family}: parameter {param} must be at least {min}, got {got}")]
pub struct FamilyError {
    pub family: &'static str,
    pub param: &'static str,
    pub min: usize,
    pub got: usize,
}

fn need(family: &'static str, param: &'static str, min: usize, got: usize) -> Result<(), FamilyError> {
    if got < min {
        Err(FamilyError { family, param, min, got })
    } else {
        Ok(())
    }
}

/// A graph together with named vertex classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledFamilyGraph {
    pub graph: Graph,
    pub roles: BTreeMap<&'static str, Vec<usize>>,
}

impl LabeledFamilyGraph {
    /// Vertices carrying `role`; empty if the class is empty for these
    /// parameters or the role is unknown.
    pub fn role(&self, role: &str) -> &[usize] {
        self.roles.get(role).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Result<Graph, FamilyError> {
    need("star", "n", 2, n)?;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Ok(Graph::new(n, &edges).expect("star edges in range"))
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    need("cycle", "n", 3, n)?;
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Ok(Graph::new(n, &edges).expect("cycle edges in range"))
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    need("complete", "n", 1, n)?;
    Ok(Graph::empty(n).expect("order checked").complement())
}

/// `S_n^3`: a star on `n` vertices plus an edge between two pendants.
/// Center 0, triangle pendants 1 and 2.
pub fn s3(n: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    need("s3", "n", 3, n)?;
    let mut edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    edges.push((1, 2));
    let mut roles = BTreeMap::new();
    roles.insert("center", vec![0]);
    roles.insert("triangle", vec![1, 2]);
    roles.insert("pendants", (3..n).collect());
    Ok(LabeledFamilyGraph { graph: Graph::new(n, &edges).expect("s3 edges in range"), roles })
}

/// `C_4` with `n − 4` pendant vertices on one cycle vertex.
pub fn s4(n: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    need("s4", "n", 4, n)?;
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    edges.extend((4..n).map(|v| (0, v)));
    let mut roles = BTreeMap::new();
    roles.insert("center", vec![0]);
    roles.insert("cycle", vec![1, 2, 3]);
    roles.insert("pendants", (4..n).collect());
    Ok(LabeledFamilyGraph { graph: Graph::new(n, &edges).expect("s4 edges in range"), roles })
}

/// `U(p, q)` of order `p + q + 2`, `p ≥ 1`, `q ≥ 3`.
pub fn u_pq(p: usize, q: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    need("u", "p", 1, p)?;
    need("u", "q", 3, q)?;
    let n = p + q + 2;
    let (v2, v3, v4, v5, v6a, v6b) = (0, p, p + 1, p + 2, p + 3, p + 4);
    let mut edges: Vec<_> = (1..=p).map(|v| (v2, v)).collect();
    edges.extend([(v3, v4), (v4, v5), (v5, v6a), (v5, v6b), (v6a, v6b)]);
    edges.extend((p + 5..n).map(|v| (v5, v)));
    let mut roles = BTreeMap::new();
    roles.insert("v1", (1..p).collect());
    roles.insert("v2", vec![v2]);
    roles.insert("v3", vec![v3]);
    roles.insert("v4", vec![v4]);
    roles.insert("v5", vec![v5]);
    roles.insert("v6", vec![v6a, v6b]);
    roles.insert("v7", (p + 5..n).collect());
    Ok(LabeledFamilyGraph { graph: Graph::new(n, &edges).expect("u edges in range"), roles })
}

/// `U'(p)` of order `p + 4`, `p ≥ 1`.
pub fn u_prime(p: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    need("uprime", "p", 1, p)?;
    let n = p + 4;
    let (u2, u3, u4, u5a, u5b) = (0, p, p + 1, p + 2, p + 3);
    let mut edges: Vec<_> = (1..=p).map(|v| (u2, v)).collect();
    edges.extend([(u3, u4), (u4, u5a), (u4, u5b), (u5a, u5b)]);
    let mut roles = BTreeMap::new();
    roles.insert("u1", (1..p).collect());
    roles.insert("u2", vec![u2]);
    roles.insert("u3", vec![u3]);
    roles.insert("u4", vec![u4]);
    roles.insert("u5", vec![u5a, u5b]);
    Ok(LabeledFamilyGraph { graph: Graph::new(n, &edges).expect("uprime edges in range"), roles })
}

/// The split `(⌈(n−2)/2⌉, ⌊(n−2)/2⌋)` of the extremal `U(p, q)` of order `n`.
pub fn balanced_split(n: usize) -> (usize, usize) {
    let m = n - 2;
    (m.div_ceil(2), m / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn basic_families() {
        let s = star(5).unwrap();
        assert_eq!(s.degree(0), 4);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        assert_eq!(complete(1).unwrap().order(), 1);
        assert!(star(1).is_err());
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
    }

    #[test]
    fn s3_shape() {
        assert_eq!(s3(3).unwrap().graph, complete(3).unwrap());
        let g = s3(4).unwrap().graph;
        assert_eq!(g.degree_sequence(), vec![3, 2, 2, 1]);
        for n in 3..=10 {
            let f = s3(n).unwrap();
            assert!(f.graph.is_unicyclic());
            assert_eq!(f.graph.degree(f.role("center")[0]), n - 1);
        }
        assert_eq!(s3(2), Err(FamilyError { family: "s3", param: "n", min: 3, got: 2 }));
    }

    #[test]
    fn s3_complement_has_one_isolated_vertex() {
        for n in 4..=12 {
            let c = s3(n).unwrap().graph.complement();
            let comps = c.components();
            assert_eq!(comps.len(), 2);
            assert!(comps.iter().any(|c| c.len() == 1));
            let big = comps.iter().find(|c| c.len() == n - 1).unwrap();
            let sub = c.induced(big).unwrap();
            assert!(sub.edge_count() < (n - 1) * (n - 2) / 2, "component is not complete");
        }
    }

    #[test]
    fn u_pq_shape() {
        let f = u_pq(1, 3).unwrap();
        assert_eq!(f.graph.order(), 6);
        assert_eq!(f.graph.degree_sequence(), vec![3, 2, 2, 2, 2, 1]);
        for p in 1..=12 {
            for q in 3..=12 {
                let f = u_pq(p, q).unwrap();
                let g = &f.graph;
                assert_eq!(g.order(), p + q + 2);
                assert!(g.is_unicyclic());
                assert_eq!(g.degree(f.role("v2")[0]), p);
                assert_eq!(g.degree(f.role("v5")[0]), q);
                assert_eq!(f.role("v1").len(), p - 1);
                assert_eq!(f.role("v7").len(), q - 3);
                assert!(g.has_edge(f.role("v3")[0], f.role("v4")[0]));
                let v6 = f.role("v6");
                assert!(g.has_edge(v6[0], v6[1]));
            }
        }
        assert!(u_pq(0, 3).is_err());
        assert!(u_pq(1, 2).is_err());
    }

    #[test]
    fn u_prime_shape() {
        let g = u_prime(1).unwrap().graph;
        assert_eq!(g.order(), 5);
        // triangle with a path of length 2 hanging off one corner
        assert_eq!(g.degree_sequence(), vec![3, 2, 2, 2, 1]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]);
        for p in 1..=12 {
            let f = u_prime(p).unwrap();
            assert_eq!(f.graph.order(), p + 4);
            assert!(f.graph.is_unicyclic());
            assert_eq!(f.graph.degree(f.role("u4")[0]), 3);
        }
        assert!(u_prime(0).is_err());
    }

    #[test]
    fn keys_survive_relabelling() {
        for (p, q) in [(1, 3), (4, 7), (9, 9)] {
            let g = u_pq(p, q).unwrap().graph;
            let n = g.order();
            let rev: Vec<usize> = (0..n).rev().collect();
            let rot: Vec<usize> = (0..n).map(|v| (v + 3) % n).collect();
            let k = canonical_form(&g).unwrap();
            assert_eq!(k, canonical_form(&g.relabel(&rev)).unwrap());
            assert_eq!(k, canonical_form(&g.relabel(&rot)).unwrap());
        }
    }

    #[test]
    fn balanced() {
        assert_eq!(balanced_split(20), (9, 9));
        assert_eq!(balanced_split(21), (10, 9));
    }
}
