//! Unicyclic graphs up to isomorphism, and extremal search over them.
//!
//! Free trees come from the Wright-Richmond-Odlyzko-McKay successor rule on
//! level sequences. Every unicyclic graph is a tree plus one edge, so adding
//! each missing edge to each tree and deduplicating by canonical form yields
//! every class exactly once.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charpoly::{char_poly, compare_least_roots, PolyError};
use crate::eigen::{least_eigenvalue, EigenError, DEFAULT_GAP_TOL, DEFAULT_TOL};
use crate::graph::{canonical_form, encode_graph6, CanonicalForm, Graph, GraphError};
use crate::util::{ser_f64, ser_opt_f64};

/// Largest order accepted by [`free_trees`].
pub const MAX_TREE_ORDER: usize = 32;
/// Largest order accepted by [`unicyclic_graphs`].
pub const MAX_UNICYCLIC_ORDER: usize = 14;
/// Default largest order for exhaustive searches.
pub const DESK_BOUND: usize = 11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("order {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Free trees with `n` vertices (OEIS A000055), `n = 1..=14`.
pub fn known_tree_count(n: usize) -> Option<u64> {
    const T: [u64; 15] = [1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];
    T.get(n).copied().filter(|_| n >= 1)
}

/// Connected unicyclic graphs with `n` vertices (OEIS A001429), `n = 3..=14`.
pub fn known_unicyclic_count(n: usize) -> Option<u64> {
    const U: [u64; 15] = [0, 0, 0, 1, 2, 5, 13, 33, 89, 240, 657, 1806, 5026, 13999, 39260];
    U.get(n).copied().filter(|_| n >= 3)
}

/// Streams every free tree on `n` vertices exactly once.
pub fn free_trees(n: usize) -> Result<FreeTrees, EnumError> {
    if n == 0 {
        return Err(EnumError::TooSmall { n, min: 1 });
    }
    if n > MAX_TREE_ORDER {
        return Err(EnumError::BoundExceeded { n, max: MAX_TREE_ORDER });
    }
    let state = match n {
        1 | 2 => State::Small(n),
        _ => {
            // path rooted at its center
            let mut layout: Vec<usize> = (0..=n / 2).collect();
            layout.extend(1..n.div_ceil(2));
            State::Layout(layout)
        }
    };
    Ok(FreeTrees { state })
}

enum State {
    Small(usize),
    Layout(Vec<usize>),
    Done,
}

pub struct FreeTrees {
    state: State,
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        match std::mem::replace(&mut self.state, State::Done) {
            State::Done => None,
            State::Small(n) => {
                let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
                Some(Graph::new(n, edges).expect("valid small tree"))
            }
            State::Layout(layout) => {
                let layout = next_free(layout)?;
                let g = layout_to_graph(&layout);
                if let Some(next) = next_rooted(&layout, None) {
                    self.state = State::Layout(next);
                }
                Some(g)
            }
        }
    }
}

/// Next rooted tree in level-sequence order (Beyer-Hedetniemi), optionally
/// starting the search at position `p`.
fn next_rooted(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a layout into the left subtree of the root and the rest.
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().filter(|(_, &l)| l == 1).nth(1).map(|(i, _)| i).unwrap_or(layout.len());
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Advances to the next layout that is the canonical rooting of a free tree.
fn next_free(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split(&candidate);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rh >= lh;
    if valid && rh == lh {
        if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
            valid = false;
        }
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = k + 1;
        }
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(layout.len() - 1);
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&j) = stack.last() {
            edges.push((j, i));
        }
        stack.push(i);
    }
    Graph::new(layout.len(), &edges).expect("layout edges in range")
}

/// Every unicyclic graph of order `n` up to isomorphism, ordered by
/// canonical form. Each entry keeps the labelling it was generated with.
pub fn unicyclic_graphs(n: usize) -> Result<Vec<(CanonicalForm, Graph)>, EnumError> {
    if n < 3 {
        return Err(EnumError::TooSmall { n, min: 3 });
    }
    if n > MAX_UNICYCLIC_ORDER {
        return Err(EnumError::BoundExceeded { n, max: MAX_UNICYCLIC_ORDER });
    }
    let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for tree in free_trees(n)? {
        for (u, v) in tree.non_edges() {
            let g = tree.with_edge(u, v);
            seen.entry(canonical_form(&g)?).or_insert(g);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Uniform random labelled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!((1..=crate::graph::MAX_ORDER).contains(&n));
    if n <= 2 {
        return Graph::new(n, if n == 2 { &[(0, 1)] } else { &[] }).expect("small tree");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("Prüfer edges in range")
}

/// Random tree plus one uniformly chosen missing edge.
pub fn random_unicyclic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let t = random_tree(n, rng);
    let missing = t.non_edges();
    let (u, v) = missing[rng.gen_range(0..missing.len())];
    t.with_edge(u, v)
}

/// What [`minimize`] minimizes over the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    /// `λ_min(Uᶜ)`
    #[serde(rename = "lamin-complement")]
    LaminComplement,
    /// `λ_min(U)`
    #[serde(rename = "lamin-direct")]
    LaminDirect,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::LaminComplement => "lamin-complement",
            Objective::LaminDirect => "lamin-direct",
        }
    }

    /// The graph whose least eigenvalue is the objective value.
    pub fn target(self, g: &Graph) -> Graph {
        match self {
            Objective::LaminComplement => g.complement(),
            Objective::LaminDirect => g.clone(),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lamin-complement" => Ok(Objective::LaminComplement),
            "lamin-direct" => Ok(Objective::LaminDirect),
            _ => Err(format!("unknown objective '{s}' (expected lamin-complement or lamin-direct)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub tol: f64,
    pub gap_tol: f64,
    /// Worker count; `None` uses the machine's parallelism.
    pub threads: Option<usize>,
    pub max_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, gap_tol: DEFAULT_GAP_TOL, threads: None, max_n: DESK_BOUND }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimizer {
    pub graph6: String,
    pub canonical_form: CanonicalForm,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    pub degree_sequence: Vec<usize>,
}

/// How a set of numerically tied minimizers was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieResolution {
    /// One graph within the gap tolerance of the minimum.
    Unique,
    /// Exact root comparison left a single minimizer.
    ExactUnique,
    /// Exact root comparison confirmed equal least eigenvalues.
    ExactTie,
    /// More co-minimizers than the exact pass handles; all are listed.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub class_size: usize,
    pub expected_class_size: Option<u64>,
    pub objective: Objective,
    #[serde(serialize_with = "ser_f64")]
    pub min_value: f64,
    /// Least value among graphs outside the minimizer set.
    #[serde(serialize_with = "ser_opt_f64")]
    pub runner_up_value: Option<f64>,
    pub minimizers: Vec<Minimizer>,
    pub tie_resolution: TieResolution,
    #[serde(serialize_with = "ser_f64")]
    pub solver_tol: f64,
    #[serde(serialize_with = "ser_f64")]
    pub gap_tol: f64,
    pub wall_time_secs: f64,
}

impl SearchReport {
    /// The report as JSON with `wall_time_secs` zeroed, for reproducibility
    /// comparisons.
    pub fn timeless_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_secs = 0.0;
        serde_json::to_string(&r).expect("report serializes")
    }

    pub fn unique_minimizer(&self) -> Option<&Minimizer> {
        match self.minimizers.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }
}

/// Runs `f` on a rayon pool of the requested size.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, EnumError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t.max(1));
    }
    let pool = b.build().map_err(|e| EnumError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Exhaustive minimization of `objective` over the unicyclic graphs of
/// order `n`.
///
/// Graphs within `gap_tol` of the minimum are co-minimizers. When there are
/// two or three of them, their least eigenvalues are compared exactly via
/// characteristic polynomials and only exact minimizers are kept.
pub fn minimize(n: usize, objective: Objective, cfg: &SearchConfig) -> Result<SearchReport, EnumError> {
    if n > cfg.max_n {
        return Err(EnumError::BoundExceeded { n, max: cfg.max_n });
    }
    let start = Instant::now();
    let class = unicyclic_graphs(n)?;
    let values: Vec<f64> = with_threads(cfg.threads, || {
        class
            .par_iter()
            .map(|(_, g)| least_eigenvalue(&objective.target(g)))
            .collect::<Result<Vec<f64>, EigenError>>()
    })??;
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut tied: Vec<usize> = (0..class.len()).filter(|&i| values[i] <= min_value + cfg.gap_tol).collect();
    let mut tie_resolution = if tied.len() == 1 { TieResolution::Unique } else { TieResolution::Unresolved };
    if (2..=3).contains(&tied.len()) {
        let polys: Vec<_> = tied.iter().map(|&i| char_poly(&objective.target(&class[i].1))).collect();
        let mut best = vec![0usize];
        for k in 1..polys.len() {
            match compare_least_roots(&polys[k], &polys[best[0]])? {
                std::cmp::Ordering::Less => best = vec![k],
                std::cmp::Ordering::Equal => best.push(k),
                std::cmp::Ordering::Greater => {}
            }
        }
        tie_resolution = if best.len() == 1 { TieResolution::ExactUnique } else { TieResolution::ExactTie };
        best.sort_unstable();
        tied = best.into_iter().map(|k| tied[k]).collect();
    }
    let runner_up_value =
        (0..class.len()).filter(|i| !tied.contains(i)).map(|i| values[i]).fold(None, |m: Option<f64>, v| {
            Some(m.map_or(v, |m| m.min(v)))
        });
    let minimizers = tied
        .iter()
        .map(|&i| {
            let (cf, g) = &class[i];
            Minimizer {
                graph6: encode_graph6(g),
                canonical_form: cf.clone(),
                value: values[i],
                degree_sequence: g.degree_sequence(),
            }
        })
        .collect();
    Ok(SearchReport {
        n,
        class_size: class.len(),
        expected_class_size: known_unicyclic_count(n),
        objective,
        min_value,
        runner_up_value,
        minimizers,
        tie_resolution,
        solver_tol: cfg.tol,
        gap_tol: cfg.gap_tol,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{s3, s4};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn tree_counts() {
        for n in 1..=14 {
            let trees: Vec<Graph> = free_trees(n).unwrap().collect();
            assert_eq!(trees.len() as u64, known_tree_count(n).unwrap(), "n = {n}");
            assert!(trees.iter().all(Graph::is_tree));
        }
        assert!(free_trees(0).is_err());
        assert!(free_trees(33).is_err());
    }

    #[test]
    fn trees_are_pairwise_non_isomorphic() {
        for n in 1..=12 {
            let keys: BTreeSet<_> = free_trees(n).unwrap().map(|t| canonical_form(&t).unwrap()).collect();
            assert_eq!(keys.len() as u64, known_tree_count(n).unwrap());
        }
    }

    #[test]
    fn unicyclic_counts() {
        for n in 3..=10 {
            let class = unicyclic_graphs(n).unwrap();
            assert_eq!(class.len() as u64, known_unicyclic_count(n).unwrap(), "n = {n}");
            assert!(class.iter().all(|(_, g)| g.is_unicyclic()));
            let keys: BTreeSet<_> = class.iter().map(|(k, _)| k).collect();
            assert_eq!(keys.len(), class.len());
        }
        assert!(unicyclic_graphs(2).is_err());
        assert!(unicyclic_graphs(15).is_err());
    }

    #[test]
    fn random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=12 {
            for _ in 0..20 {
                assert!(random_tree(n, &mut rng).is_tree());
                if n >= 3 {
                    assert!(random_unicyclic(n, &mut rng).is_unicyclic());
                }
            }
        }
    }

    #[test]
    fn minimize_small() {
        let cfg = SearchConfig::default();
        let r = minimize(4, Objective::LaminComplement, &cfg).unwrap();
        assert_eq!(r.class_size, 2);
        // 2K_2 has λ_min = −1; (S_4^3)ᶜ = K_1 ∪ P_3 has −√2
        assert!((r.min_value + 2f64.sqrt()).abs() < 1e-12);
        let s = canonical_form(&s3(4).unwrap().graph).unwrap();
        assert_eq!(r.unique_minimizer().unwrap().canonical_form, s);
        assert!((r.runner_up_value.unwrap() + 1.0).abs() < 1e-12);

        // the direct minimizer is C_4 with pendants, not S_6^3
        let r = minimize(6, Objective::LaminDirect, &cfg).unwrap();
        assert_eq!(r.unique_minimizer().unwrap().canonical_form, canonical_form(&s4(6).unwrap().graph).unwrap());
        assert_eq!(r.tie_resolution, TieResolution::Unique);
        assert!(minimize(12, Objective::LaminDirect, &cfg).is_err());
    }

    #[test]
    fn objective_names() {
        assert_eq!("lamin-direct".parse::<Objective>().unwrap(), Objective::LaminDirect);
        assert!("bogus".parse::<Objective>().is_err());
        assert_eq!(serde_json::to_string(&Objective::LaminComplement).unwrap(), "\"lamin-complement\"");
    }
}
