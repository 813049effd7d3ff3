//! Canonical labelling by partition refinement and individualization, with
//! automorphism pruning in the style of nauty.
//!
//! The search tree is explored depth first. Every leaf is a discrete ordered
//! partition, i.e. a labelling, and the certificate of a leaf is the row list
//! of the relabelled adjacency matrix. The canonical labelling is the leaf with
//! the largest certificate. Leaves with equal certificates give automorphisms,
//! which are used to skip equivalent branches.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{encode_graph6, Graph, GraphError};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 32;

/// Largest order accepted by [`canonical_form_exhaustive`].
pub const EXHAUSTIVE_MAX_ORDER: usize = 9;

/// Isomorphism-invariant key: the graph6 string of the canonical relabelling.
///
/// Two graphs have equal keys iff they are isomorphic. Ordering is plain
/// string order, which is total and deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.order();
    if n > CANON_MAX_ORDER {
        return Err(GraphError::CanonBound { max: CANON_MAX_ORDER, got: n });
    }
    let mut search = Search { g, first: None, best: None, autos: Vec::new() };
    let mut cells = vec![0usize; n];
    refine(g, &mut cells);
    search.visit(cells, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    Ok(CanonicalForm(encode_graph6(&g.relabel(&best.labels))))
}

/// Brute-force canonical form: maximum certificate over all `n!` labellings.
///
/// Only meant as a cross-check for [`canonical_form`]. The two functions pick
/// different representatives, so compare the equivalence classes they induce,
/// never the keys themselves.
pub fn canonical_form_exhaustive(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.order();
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(GraphError::CanonBound { max: EXHAUSTIVE_MAX_ORDER, got: n });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = certificate(g, &perm);
    let mut best_perm = perm.clone();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cert = certificate(g, &perm);
            if cert > best {
                best = cert;
                best_perm.clone_from(&perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm(encode_graph6(&g.relabel(&best_perm))))
}

/// Rows of the graph relabelled by `labels` (vertex `v` becomes `labels[v]`).
fn certificate(g: &Graph, labels: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; g.order()];
    for (v, &lv) in labels.iter().enumerate() {
        let mut r = 0u64;
        for u in g.neighbors(v) {
            r |= 1 << labels[u];
        }
        rows[lv] = r;
    }
    rows
}

/// Refines an ordered partition (`cells[v]` = index of the cell holding `v`)
/// to the coarsest equitable partition below it. Cell indices stay ordered by
/// the parent cell, so the result is invariant under relabelling.
fn refine(g: &Graph, cells: &mut [usize]) {
    let n = g.order();
    let mut count = 1 + cells.iter().copied().max().unwrap_or(0);
    loop {
        let mut sig: Vec<(Vec<u8>, usize)> = (0..n)
            .map(|v| {
                let mut s = vec![0u8; count + 1];
                s[0] = cells[v] as u8;
                for u in g.neighbors(v) {
                    s[1 + cells[u]] += 1;
                }
                (s, v)
            })
            .collect();
        sig.sort_unstable();
        let mut next = 0usize;
        for i in 0..n {
            if i > 0 && sig[i].0 != sig[i - 1].0 {
                next += 1;
            }
            cells[sig[i].1] = next;
        }
        let new_count = next + 1;
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

struct Leaf {
    cert: Vec<u64>,
    labels: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as vertex maps.
    autos: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn visit(&mut self, cells: Vec<usize>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.g.order();
        let mut sizes = vec![0usize; n];
        for &c in &cells {
            sizes[c] += 1;
        }
        let target = match (0..n).find(|&c| sizes[c] > 1) {
            Some(c) => c,
            None => return self.leaf(cells, path),
        };
        let depth = path.len();
        let candidates: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if !tried.is_empty() {
                let orbit_rep = self.stabilizer_orbits(path);
                if tried.iter().any(|&t| orbit_rep[t] == orbit_rep[v]) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = cells.clone();
            for c in child.iter_mut() {
                if *c > target {
                    *c += 1;
                }
            }
            for (u, c) in child.iter_mut().enumerate() {
                if *c == target && u != v {
                    *c = target + 1;
                }
            }
            refine(self.g, &mut child);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, labels: Vec<usize>, path: &[usize]) -> Option<usize> {
        let cert = certificate(self.g, &labels);
        let leaf = Leaf { cert, labels, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.first = Some(Leaf { cert: leaf.cert.clone(), labels: leaf.labels.clone(), path: leaf.path.clone() });
            self.best = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let level = common_prefix(&first.path, &leaf.path);
            self.autos.push(automorphism(&first.labels, &leaf.labels));
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let level = common_prefix(&best.path, &leaf.path);
                self.autos.push(automorphism(&best.labels, &leaf.labels));
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Orbit representatives under the known automorphisms that fix `path`
    /// pointwise.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in self.autos.iter().filter(|a| path.iter().all(|&v| a[v] == v)) {
            for (v, &w) in a.iter().enumerate() {
                let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
                if rv != rw {
                    parent[rv.max(rw)] = rv.min(rw);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

/// The vertex map sending the leaf labelled `from` onto the leaf labelled `to`
/// (both give the same certificate, so this is an automorphism).
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let n = from.len();
    let mut at_label = vec![0usize; n];
    for (v, &l) in to.iter().enumerate() {
        at_label[l] = v;
    }
    from.iter().map(|&l| at_label[l]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeSet, HashMap};

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn triangle_pendant() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut e = vec![];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn distinguishes_four_vertex_unicyclic() {
        let a = canonical_form(&c4()).unwrap();
        let b = canonical_form(&triangle_pendant()).unwrap();
        assert_ne!(a, b);
        let perm = [2, 0, 3, 1];
        assert_eq!(a, canonical_form(&c4().relabel(&perm)).unwrap());
        assert_eq!(b, canonical_form(&triangle_pendant().relabel(&perm)).unwrap());
    }

    #[test]
    fn four_vertex_unicyclic_classes() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut keys = BTreeSet::new();
        for mask in 0u32..64 {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::new(4, &e).unwrap();
            if g.is_unicyclic() {
                keys.insert(canonical_form(&g).unwrap());
            }
        }
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn permutation_invariance_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=14);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.relabel(&perm)).unwrap());
        }
    }

    #[test]
    fn agrees_with_exhaustive_on_classes() {
        // Both functions must induce the same partition of a random sample.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=7 {
            let mut fast: HashMap<CanonicalForm, usize> = HashMap::new();
            let mut slow: HashMap<CanonicalForm, usize> = HashMap::new();
            let mut ids = Vec::new();
            for _ in 0..150 {
                let g = random_graph(&mut rng, n, 0.5);
                let nf = fast.len();
                let a = *fast.entry(canonical_form(&g).unwrap()).or_insert(nf);
                let ns = slow.len();
                let b = *slow.entry(canonical_form_exhaustive(&g).unwrap()).or_insert(ns);
                ids.push((a, b));
            }
            for &(a1, b1) in &ids {
                for &(a2, b2) in &ids {
                    assert_eq!(a1 == a2, b1 == b2, "n = {n}");
                }
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_are_fast() {
        let star = Graph::new(32, &(1..32).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
        canonical_form(&star).unwrap();
        let empty = Graph::empty(32).unwrap();
        canonical_form(&empty).unwrap();
        canonical_form(&empty.complement()).unwrap();
        // Petersen graph
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = Graph::new(10, &e).unwrap();
        let mut perm: Vec<usize> = (0..10).collect();
        perm.reverse();
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&p.relabel(&perm)).unwrap());
    }

    #[test]
    fn order_bound() {
        let g = Graph::empty(33).unwrap();
        assert_eq!(canonical_form(&g), Err(GraphError::CanonBound { max: 32, got: 33 }));
        assert!(canonical_form_exhaustive(&Graph::empty(10).unwrap()).is_err());
    }
}
