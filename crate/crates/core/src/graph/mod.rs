//! Simple undirected graphs on at most 64 vertices, stored as one neighbour
//! bitset per vertex.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_form_exhaustive, CanonicalForm, CANON_MAX_ORDER, EXHAUSTIVE_MAX_ORDER};
pub use graph6::{decode_graph6, encode_graph6};

use std::fmt;

use thiserror::Error;

/// Largest supported order: one `u64` neighbour mask per vertex.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order must be between 1 and {MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vector has length {got}, graph has order {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("canonical form supports order at most {max}, got {got}")]
    CanonBound { max: usize, got: usize },
    #[error("malformed graph6: {0}")]
    Graph6(String),
}

/// An undirected simple graph on vertices `0..n`.
///
/// Immutable once built; every constructor symmetrizes and rejects loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

#[inline]
const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges are absorbed.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.rows[u] |= bit(v);
            g.rows[v] |= bit(u);
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::BadOrder(n));
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    /// Builds from neighbour masks; the caller guarantees symmetry and an
    /// empty diagonal (checked in debug builds).
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        debug_assert!(n >= 1 && n <= MAX_ORDER);
        debug_assert!((0..n).all(|v| rows[v] & bit(v) == 0));
        debug_assert!((0..n).all(|u| (0..n).all(|v| (rows[u] >> v & 1) == (rows[v] >> u & 1))));
        Self { n, rows }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.rows[v])
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.rows[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Pairs `(u, v)`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy with one extra edge. Panics on a loop or out-of-range vertex.
    pub fn with_edge(&self, u: usize, v: usize) -> Self {
        assert!(u < self.n && v < self.n && u != v);
        let mut rows = self.rows.clone();
        rows[u] |= bit(v);
        rows[v] |= bit(u);
        Self { n: self.n, rows }
    }

    /// `A(Gᶜ) = J − I − A(G)`.
    pub fn complement(&self) -> Self {
        let all = full_mask(self.n);
        let rows = (0..self.n).map(|v| !self.rows[v] & all & !bit(v)).collect();
        Self { n: self.n, rows }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                rows[perm[u]] |= bit(perm[v]);
            }
        }
        Self { n: self.n, rows }
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    g.rows[i] |= bit(j);
                }
            }
        }
        Ok(g)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let mut next = 0u64;
                for v in BitIter(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(BitIter(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected with exactly as many edges as vertices.
    pub fn is_unicyclic(&self) -> bool {
        self.edge_count() == self.n && self.is_connected()
    }

    /// Connected with `n − 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// Dense 0/1 adjacency matrix as `f64`, row-major.
    pub fn adjacency_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| if self.has_edge(u, v) { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    /// `Xᵀ A X = 2 Σ_{uv ∈ E} X_u X_v`.
    pub fn quadratic_form(&self, x: &VertexVector) -> Result<f64, GraphError> {
        self.check_dim(x)?;
        let x = x.as_slice();
        Ok(2.0 * self.edges().iter().map(|&(u, v)| x[u] * x[v]).sum::<f64>())
    }

    /// Largest violation of the eigenequation `λ x_v = Σ_{u ~ v} x_u`.
    pub fn eigen_residual(&self, lambda: f64, x: &VertexVector) -> Result<f64, GraphError> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Err(GraphError::ZeroVector);
        }
        let x = x.as_slice();
        Ok((0..self.n)
            .map(|v| {
                let s: f64 = self.neighbors(v).map(|u| x[u]).sum();
                (lambda * x[v] - s).abs()
            })
            .fold(0.0, f64::max))
    }

    /// `A x` for the adjacency matrix.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|v| self.neighbors(v).map(|u| x[u]).sum()).collect()
    }

    fn check_dim(&self, x: &VertexVector) -> Result<(), GraphError> {
        if x.len() != self.n {
            return Err(GraphError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges())
    }
}

/// Iterates the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// One real value per vertex.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct VertexVector(Vec<f64>);

impl VertexVector {
    pub fn new(entries: Vec<f64>) -> Self {
        Self(entries)
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<f64>> for VertexVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for VertexVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn construction() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, complete(3));
        let e2 = Graph::new(2, &[]).unwrap();
        assert_eq!(e2.edge_count(), 0);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.degree_sequence(), vec![2, 2, 2, 2]);
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange(0, 3, 3)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(Graph::new(0, &[]), Err(GraphError::BadOrder(0)));
        assert_eq!(Graph::new(65, &[]), Err(GraphError::BadOrder(65)));
        let dup = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn complements() {
        for n in 1..7 {
            assert_eq!(complete(n).complement().edge_count(), 0);
        }
        let c5c = cycle(5).complement();
        assert_eq!(canonical_form(&c5c).unwrap(), canonical_form(&cycle(5)).unwrap());
        let c4c = cycle(4).complement();
        assert_eq!(c4c.edge_count(), 2);
        assert!(c4c.degree_sequence().iter().all(|&d| d == 1));
        let full = Graph::empty(64).unwrap().complement();
        assert_eq!(full.edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn unicyclic_predicate() {
        assert!(cycle(4).is_unicyclic());
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!star.is_unicyclic());
        assert!(star.is_tree());
        assert!(!complete(4).is_unicyclic());
        // triangle plus a disjoint edge: m = n but disconnected
        let split = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert!(!split.is_unicyclic());
    }

    #[test]
    fn quadratic_form_examples() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.quadratic_form(&VertexVector::ones(5)).unwrap(), 8.0);
        assert_eq!(cycle(6).quadratic_form(&VertexVector::zeros(6)).unwrap(), 0.0);
        let x = VertexVector::new(vec![1.0, 1.0, -1.0]);
        assert_eq!(cycle(3).quadratic_form(&x).unwrap(), -2.0);
        assert_eq!(
            cycle(3).quadratic_form(&VertexVector::ones(2)),
            Err(GraphError::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn eigen_residual_examples() {
        let k2 = complete(2);
        assert_eq!(k2.eigen_residual(-1.0, &vec![1.0, -1.0].into()).unwrap(), 0.0);
        assert_eq!(cycle(4).eigen_residual(-2.0, &vec![1.0, -1.0, 1.0, -1.0].into()).unwrap(), 0.0);
        assert_eq!(complete(3).eigen_residual(-1.0, &vec![1.0, -1.0, 0.0].into()).unwrap(), 0.0);
        assert_eq!(k2.eigen_residual(1.0, &VertexVector::zeros(2)), Err(GraphError::ZeroVector));
        assert_eq!(k2.eigen_residual(1.0, &VertexVector::ones(2)).unwrap(), 0.0);
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::new(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
        let h = g.induced(&[4, 3, 2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    /// Every graph on n vertices, by edge subset.
    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u32..(1 << pairs.len())).map(move |mask| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, &e).unwrap()
        })
    }

    #[test]
    fn double_complement_exhaustive() {
        for n in 1..=5 {
            for g in all_graphs(n) {
                assert_eq!(g.complement().complement(), g);
            }
        }
    }

    #[test]
    fn complement_quadratic_identity_exhaustive_small() {
        let x = VertexVector::new(vec![0.5, -1.25, 2.0, 0.75, -0.5]);
        let s = x.sum();
        let s2 = x.dot(&x);
        for g in all_graphs(5) {
            let lhs = g.quadratic_form(&x).unwrap() + g.complement().quadratic_form(&x).unwrap();
            assert!((lhs - (s * s - s2)).abs() < 1e-12);
        }
    }
}
