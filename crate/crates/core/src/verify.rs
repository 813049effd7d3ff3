//! One check per extremal claim, each producing a [`Verdict`].
//!
//! Checks never panic on a false claim: they return `holds = false` together
//! with witnesses that [`Verdict::replay`] can re-run. Runs outside a claim's
//! hypothesis still compute and report everything, hold vacuously, and say so
//! in the notes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::charpoly::{
    char_poly, compare_least_roots, least_real_root, u_pq_poly, u_prime_poly, IntPoly, PolyError, RootBracket,
    DEFAULT_ROOT_TOL,
};
use crate::eigen::{full_spectrum_with, least_eigenvalue, EigenConfig, EigenError, DEFAULT_GAP_TOL, DEFAULT_TOL};
use crate::enumerate::{
    minimize, random_tree, random_unicyclic, unicyclic_graphs, with_threads, EnumError, Objective, SearchConfig,
    SearchReport, TieResolution, DESK_BOUND, MAX_UNICYCLIC_ORDER,
};
use crate::families::{balanced_split, s3, s4, star, u_pq, u_prime, FamilyError};
use crate::graph::{canonical_form, decode_graph6, encode_graph6, Graph, GraphError, VertexVector};
use crate::util::round15;

/// Entries with modulus below this count as zero in sign counts.
pub const DEFAULT_SIGN_TOL: f64 = 1e-9;
/// Default number of random instances per order for the rearrangement bounds.
pub const DEFAULT_TRIALS: usize = 10_000;

/// Claim identifiers, as used by the CLI.
pub const CLAIMS: [&str; 7] = ["lemma2.1", "lemma2.2", "lemma3.1", "lemma3.2", "lemma3.3", "theorem3.4", "remark-un"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{claim} needs n ≥ {min}, got {n}")]
    Order { claim: &'static str, n: usize, min: usize },
    #[error("unknown claim '{0}'")]
    UnknownClaim(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub tol: f64,
    pub gap_tol: f64,
    pub threads: Option<usize>,
    pub max_n: usize,
    pub seed: u64,
    pub trials: usize,
    pub sign_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            gap_tol: DEFAULT_GAP_TOL,
            threads: None,
            max_n: DESK_BOUND,
            seed: 0,
            trials: DEFAULT_TRIALS,
            sign_tol: DEFAULT_SIGN_TOL,
        }
    }
}

impl VerifyConfig {
    pub fn search(&self) -> SearchConfig {
        SearchConfig { tol: self.tol, gap_tol: self.gap_tol, threads: self.threads, max_n: self.max_n }
    }

    fn eigen(&self) -> EigenConfig {
        EigenConfig { tol: self.tol, gap_tol: self.gap_tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// The claimed inequality or sign pattern fails on this instance.
    Counterexample,
    /// Equality was attained on a graph the claim says cannot attain it.
    EqualityOffFamily,
    /// An expected equality case, recorded for reference.
    Equality,
    /// A search result recorded as an observation.
    Minimizer,
    /// A failure seen outside the claim's hypothesis.
    Observation,
}

impl WitnessKind {
    pub fn is_failure(self) -> bool {
        matches!(self, WitnessKind::Counterexample | WitnessKind::EqualityOffFamily)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub graph6: String,
    /// For ordering claims: the graph that should have had the strictly
    /// larger least eigenvalue but did not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rival_graph6: Option<String>,
    /// Whose least eigenvalue the ordering compares.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
    /// Full precision, so replays see the same numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
    #[serde(default)]
    pub values: BTreeMap<String, f64>,
    #[serde(default)]
    pub detail: String,
}

impl Witness {
    fn new(kind: WitnessKind, g: &Graph) -> Self {
        Self {
            kind,
            graph6: encode_graph6(g),
            rival_graph6: None,
            objective: None,
            vector: None,
            values: BTreeMap::new(),
            detail: String::new(),
        }
    }

    fn value(mut self, key: &str, x: f64) -> Self {
        self.values.insert(key.to_string(), round15(x));
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    /// A failed strict ordering `λ(target(g)) < λ(target(rival))`.
    fn ordering(g: &Graph, rival: &Graph, objective: Objective) -> Self {
        let mut w = Self::new(WitnessKind::Counterexample, g);
        w.rival_graph6 = Some(encode_graph6(rival));
        w.objective = Some(objective);
        w
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(claim_id: &str, n: usize) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("n".to_string(), json!(n));
        Self { claim_id: claim_id.to_string(), parameters, holds: true, witnesses: Vec::new(), notes: Vec::new() }
    }

    fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.parameters.insert(key.to_string(), v.into());
    }

    fn num(&mut self, key: &str, x: f64) {
        self.param(key, json!(round15(x)));
    }

    fn fail(&mut self, w: Witness) {
        self.holds = false;
        self.witnesses.push(w);
    }

    /// Marks a run below the claim's hypothesis: the claim holds vacuously
    /// and the observed outcome is kept under `observed_holds`.
    fn out_of_hypothesis(&mut self, min: usize) {
        let n = self.parameters["n"].as_u64().unwrap_or(0);
        self.notes.push(format!("hypothesis not met: the claim needs n ≥ {min}, got n = {n}; outcome reported as an observation"));
        self.param("observed_holds", self.holds);
        for w in &mut self.witnesses {
            if w.kind.is_failure() {
                w.kind = WitnessKind::Observation;
            }
        }
        self.holds = true;
    }

    /// Re-runs every failure witness; `true` iff all of them still fail.
    pub fn replay(&self) -> Result<bool, VerifyError> {
        let mut all = true;
        for w in self.witnesses.iter().filter(|w| w.kind.is_failure()) {
            all &= replay_witness(&self.claim_id, w)?;
        }
        Ok(all)
    }
}

fn replay_witness(claim: &str, w: &Witness) -> Result<bool, VerifyError> {
    let g = decode_graph6(&w.graph6)?;
    if let (Some(r), Some(obj)) = (&w.rival_graph6, w.objective) {
        let (a, b) = (obj.target(&g), obj.target(&decode_graph6(r)?));
        let exact = compare_least_roots(&char_poly(&a), &char_poly(&b))?;
        let numeric = least_eigenvalue(&a)? < least_eigenvalue(&b)?;
        return Ok(exact != Ordering::Less || !numeric);
    }
    match claim {
        "lemma3.1" | "lemma3.2" => {
            let x = VertexVector::new(w.vector.clone().unwrap_or_default());
            let with_triangle = claim == "lemma3.2";
            let (form, bound) = (edge_sum(&g, &x)?, rearrangement_bound(&x, with_triangle));
            Ok(match w.kind {
                WitnessKind::EqualityOffFamily => {
                    near(form, bound) && !if with_triangle { is_s3(&g) } else { is_star(&g) }
                }
                _ => form > bound + slack(bound),
            })
        }
        "lemma3.3" => {
            let s = full_spectrum_with(&g.complement(), &EigenConfig::default())?;
            Ok(!s.least_basis.iter().any(|x| sign_counts(x, DEFAULT_SIGN_TOL).passes()))
        }
        other => Err(VerifyError::UnknownClaim(other.to_string())),
    }
}

/// Runs the named claim at order `n`.
pub fn check(claim: &str, n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    match claim {
        "lemma2.1" => check_lemma_2_1(n, cfg),
        "lemma2.2" => check_lemma_2_2(n, cfg),
        "lemma3.1" => check_lemma_3_1(n, cfg),
        "lemma3.2" => check_lemma_3_2(n, cfg),
        "lemma3.3" => check_lemma_3_3(n, cfg),
        "theorem3.4" => check_theorem_3_4(n, cfg),
        "remark-un" => check_remark_minimizer_un(n, cfg),
        other => Err(VerifyError::UnknownClaim(other.to_string())),
    }
}

fn bracket_value(b: &RootBracket) -> Value {
    serde_json::to_value(b).expect("bracket serializes")
}

/// `λ_min(U(n−5, 3)ᶜ) < λ_min(U'(n−4)ᶜ)`, for `n ≥ 13`.
///
/// Decided twice: exactly on the quotient polynomials, and numerically on
/// the full complements.
pub fn check_lemma_2_1(n: usize, _cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 8 {
        return Err(VerifyError::Order { claim: "lemma2.1", n, min: 8 });
    }
    let mut v = Verdict::new("lemma2.1", n);
    let (f, g) = (u_pq_poly(n - 5, 3)?, u_prime_poly(n - 4)?);
    let exact = compare_least_roots(&f, &g)?;
    v.param("root_u", bracket_value(&least_real_root(&f, DEFAULT_ROOT_TOL)?));
    v.param("root_u_prime", bracket_value(&least_real_root(&g, DEFAULT_ROOT_TOL)?));
    v.param("exact_order", format!("{exact:?}"));

    let (u, up) = (u_pq(n - 5, 3)?.graph, u_prime(n - 4)?.graph);
    let (lu, lup) = (least_eigenvalue(&u.complement())?, least_eigenvalue(&up.complement())?);
    v.num("lamin_u", lu);
    v.num("lamin_u_prime", lup);
    if exact != Ordering::Less || lu >= lup {
        v.fail(
            Witness::ordering(&u, &up, Objective::LaminComplement)
                .value("lamin", lu)
                .value("rival_lamin", lup)
                .detail(format!("exact order {exact:?}, numeric {lu} vs {lup}")),
        );
    }
    if n < 13 {
        v.out_of_hypothesis(13);
    }
    Ok(v)
}

/// Over all splits `p + q = n − 2` (`p ≥ 1`, `q ≥ 3`) the least root of the
/// `U(p, q)ᶜ` polynomial is uniquely minimized at the balanced split.
pub fn check_lemma_2_2(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 6 {
        return Err(VerifyError::Order { claim: "lemma2.2", n, min: 6 });
    }
    let mut v = Verdict::new("lemma2.2", n);
    let (bp, bq) = balanced_split(n);
    v.param("balanced_split", json!([bp, bq]));
    let splits: Vec<(usize, usize)> = (3..=n - 3).map(|q| (n - 2 - q, q)).collect();
    if bq < 3 {
        v.notes.push(format!("balanced split ({bp}, {bq}) has q < 3 and is not a member of the family"));
        v.holds = false;
        v.out_of_hypothesis(20);
        return Ok(v);
    }
    let best = u_pq_poly(bp, bq)?;
    let best_graph = u_pq(bp, bq)?.graph;
    let best_numeric = least_eigenvalue(&best_graph.complement())?;
    let others: Vec<(usize, usize)> = splits.iter().copied().filter(|&s| s != (bp, bq)).collect();
    let rows: Vec<(usize, usize, Ordering, f64)> = with_threads(cfg.threads, || {
        others
            .par_iter()
            .map(|&(p, q)| -> Result<_, VerifyError> {
                let exact = compare_least_roots(&best, &u_pq_poly(p, q)?)?;
                let numeric = least_eigenvalue(&u_pq(p, q)?.graph.complement())?;
                Ok((p, q, exact, numeric))
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    v.param("splits_checked", splits.len());
    v.num("lamin_balanced", best_numeric);
    v.param("root_balanced", bracket_value(&least_real_root(&best, DEFAULT_ROOT_TOL)?));
    for &(p, q, exact, numeric) in &rows {
        if exact != Ordering::Less || numeric <= best_numeric {
            v.fail(
                Witness::ordering(&best_graph, &u_pq(p, q)?.graph, Objective::LaminComplement)
                    .value("lamin", best_numeric)
                    .value("rival_lamin", numeric)
                    .detail(format!("split ({p}, {q}): exact order {exact:?}")),
            );
        }
    }
    if let Some(&(p, q, _, numeric)) = rows.iter().min_by(|a, b| a.3.total_cmp(&b.3)) {
        v.param("runner_up_split", json!([p, q]));
        v.num("lamin_runner_up", numeric);
        let runner = least_real_root(&u_pq_poly(p, q)?, DEFAULT_ROOT_TOL)?;
        v.param("root_runner_up", bracket_value(&runner));
    }
    if n < 20 {
        v.out_of_hypothesis(20);
    }
    Ok(v)
}

/// `Σ_{i≥2} X₁Xᵢ`, plus `X₂X₃` when `with_triangle`, over `x` sorted by
/// modulus.
pub fn rearrangement_bound(x: &VertexVector, with_triangle: bool) -> f64 {
    let mut s: Vec<f64> = x.as_slice().to_vec();
    s.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    if s.is_empty() {
        return 0.0;
    }
    let mut b: f64 = s[1..].iter().map(|xi| s[0] * xi).sum();
    if with_triangle && s.len() >= 3 {
        b += s[1] * s[2];
    }
    b
}

/// `Σ_{uv∈E} X_uX_v`.
pub fn edge_sum(g: &Graph, x: &VertexVector) -> Result<f64, GraphError> {
    Ok(g.quadratic_form(x)? / 2.0)
}

fn slack(bound: f64) -> f64 {
    1e-12 * bound.abs().max(1.0)
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= slack(b)
}

fn is_star(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|v| g.degree(v) == n - 1) && g.edge_count() == n - 1
}

fn is_s3(g: &Graph) -> bool {
    let n = g.order();
    g.is_unicyclic() && (0..n).any(|v| g.degree(v) == n - 1)
}

/// Sorted moduli in `(0, 1]` placed on a random vertex order, with a random
/// global sign.
fn random_sorted_vector(n: usize, rng: &mut ChaCha8Rng) -> VertexVector {
    let mut vals: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let sign = if rng.gen::<bool>() { -1.0 } else { 1.0 };
    let mut x = vec![0.0; n];
    for (rank, &v) in order.iter().enumerate() {
        x[v] = sign * vals[rank];
    }
    VertexVector::new(x)
}

/// The same vector with its largest entry on `first`, the next two on
/// `second` and `third`, and the rest in vertex order.
fn placed_vector(n: usize, slots: &[usize], rng: &mut ChaCha8Rng) -> VertexVector {
    let mut vals: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    let mut x = vec![f64::NAN; n];
    for (&v, &val) in slots.iter().zip(&vals) {
        x[v] = val;
    }
    let mut rest = vals[slots.len()..].iter();
    for xi in x.iter_mut().filter(|xi| xi.is_nan()) {
        *xi = *rest.next().expect("enough values");
    }
    VertexVector::new(x)
}

fn rearrangement_check(claim: &str, n: usize, cfg: &VerifyConfig, with_triangle: bool) -> Verdict {
    let mut v = Verdict::new(claim, n);
    v.param("trials", cfg.trials);
    v.param("seed", cfg.seed);
    // seed per (claim, n) so single orders can be rerun in isolation
    let salt = if with_triangle { 0x3_2000 } else { 0x3_1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (salt + n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let on_family = |g: &Graph| if with_triangle { is_s3(g) } else { is_star(g) };
    let (mut equalities, mut strict_equalities) = (0usize, 0usize);
    for _ in 0..cfg.trials {
        let g = if with_triangle { random_unicyclic(n, &mut rng) } else { random_tree(n, &mut rng) };
        let x = random_sorted_vector(n, &mut rng);
        let form = edge_sum(&g, &x).expect("vector matches order");
        let bound = rearrangement_bound(&x, with_triangle);
        if form > bound + slack(bound) {
            let mut w = Witness::new(WitnessKind::Counterexample, &g).value("form", form).value("bound", bound);
            w.vector = Some(x.as_slice().to_vec());
            v.fail(w.detail("quadratic form exceeds the rearrangement bound"));
            continue;
        }
        if near(form, bound) {
            equalities += 1;
            let mut mods: Vec<f64> = x.as_slice().iter().map(|t| t.abs()).collect();
            mods.sort_by(|a, b| b.total_cmp(a));
            let strict = mods[n - 1] > 0.0 && mods[0] > mods[1];
            if strict {
                strict_equalities += 1;
                if !on_family(&g) {
                    let mut w = Witness::new(WitnessKind::EqualityOffFamily, &g).value("form", form).value("bound", bound);
                    w.vector = Some(x.as_slice().to_vec());
                    v.fail(w.detail("equality attained off the extremal graph"));
                }
            }
        }
    }
    v.param("random_equalities", equalities);
    v.param("random_strict_equalities", strict_equalities);

    // the bound is attained by the extremal graph with the natural placement
    let (g, slots): (Graph, Vec<usize>) = if with_triangle {
        (s3(n).expect("n ≥ 3").graph, vec![0, 1, 2])
    } else {
        (star(n).expect("n ≥ 2"), vec![0])
    };
    let x = placed_vector(n, &slots, &mut rng);
    let (form, bound) = (edge_sum(&g, &x).expect("order"), rearrangement_bound(&x, with_triangle));
    let mut w = Witness::new(WitnessKind::Equality, &g).value("form", form).value("bound", bound);
    w.vector = Some(x.as_slice().to_vec());
    if near(form, bound) {
        v.witnesses.push(w.detail("bound attained by the extremal graph"));
    } else {
        w.kind = WitnessKind::Counterexample;
        v.fail(w.detail("extremal graph misses the bound"));
    }
    v
}

/// Trees: `Σ_{uv∈E} X_uX_v ≤ Σ_{i≥2} X₁Xᵢ` for moduli-sorted sign-constant
/// `X`, with equality under strict hypotheses only on the star.
pub fn check_lemma_3_1(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 2 {
        return Err(VerifyError::Order { claim: "lemma3.1", n, min: 2 });
    }
    Ok(rearrangement_check("lemma3.1", n, cfg, false))
}

/// Unicyclic graphs: the same bound plus `X₂X₃`, equality only on `S_n^3`.
pub fn check_lemma_3_2(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 3 {
        return Err(VerifyError::Order { claim: "lemma3.2", n, min: 3 });
    }
    Ok(rearrangement_check("lemma3.2", n, cfg, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCounts {
    pub positive: usize,
    pub negative: usize,
    /// Entries in the dead zone `(−sign_tol, sign_tol)`.
    pub dead: usize,
}

impl SignCounts {
    pub fn passes(&self) -> bool {
        self.positive >= 2 && self.negative >= 2
    }
}

pub fn sign_counts(x: &VertexVector, sign_tol: f64) -> SignCounts {
    let s = x.as_slice();
    SignCounts {
        positive: s.iter().filter(|&&t| t > sign_tol).count(),
        negative: s.iter().filter(|&&t| t < -sign_tol).count(),
        dead: s.iter().filter(|&&t| t.abs() < sign_tol).count(),
    }
}

/// The complement's first eigenvector has at least two positive and two
/// negative entries, for every unicyclic graph of order `n ≥ 5`.
pub fn check_lemma_3_3(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 3 {
        return Err(VerifyError::Order { claim: "lemma3.3", n, min: 3 });
    }
    let mut v = Verdict::new("lemma3.3", n);
    v.num("sign_tol", cfg.sign_tol);
    let class = unicyclic_graphs(n)?;
    let ecfg = cfg.eigen();
    let spectra = with_threads(cfg.threads, || {
        class
            .par_iter()
            .map(|(_, g)| full_spectrum_with(&g.complement(), &ecfg))
            .collect::<Result<Vec<_>, _>>()
    })??;
    v.param("class_size", class.len());
    let (mut dead_graphs, mut multiple) = (Vec::new(), 0usize);
    for ((_, g), s) in class.iter().zip(&spectra) {
        let counts = sign_counts(&s.least_vector, cfg.sign_tol);
        if counts.dead > 0 {
            dead_graphs.push(format!("{} ({} zero)", encode_graph6(g), counts.dead));
        }
        let ok = if s.least_multiplicity == 1 {
            counts.passes()
        } else {
            multiple += 1;
            let hit = s.least_basis.iter().position(|x| sign_counts(x, cfg.sign_tol).passes());
            v.notes.push(format!(
                "{}: least eigenvalue has multiplicity {}; basis vector {} passes",
                encode_graph6(g),
                s.least_multiplicity,
                hit.map_or("none".to_string(), |i| i.to_string())
            ));
            hit.is_some()
        };
        if !ok {
            let mut w = Witness::new(WitnessKind::Counterexample, g)
                .value("lamin", s.least_value)
                .value("positive", counts.positive as f64)
                .value("negative", counts.negative as f64);
            w.vector = Some(s.least_vector.as_slice().to_vec());
            v.fail(w.detail("first eigenvector of the complement has fewer than two entries of some sign"));
        }
    }
    v.param("multiplicity_above_one", multiple);
    if !dead_graphs.is_empty() {
        v.notes.push(format!("dead-zone entries counted as non-positive in: {}", dead_graphs.join(", ")));
    }
    if n < 5 {
        v.out_of_hypothesis(5);
    }
    Ok(v)
}

/// Positive part, non-positive part, and the edges of `g` between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub crossing_edges: Vec<(usize, usize)>,
}

/// Splits the vertices of `g` by the sign of `x`; zeros go to the minus side.
pub fn sign_partition(g: &Graph, x: &VertexVector) -> Result<SignPartition, GraphError> {
    sign_partition_tol(g, x, 0.0)
}

/// As [`sign_partition`], with entries at most `sign_tol` counted as zero.
pub fn sign_partition_tol(g: &Graph, x: &VertexVector, sign_tol: f64) -> Result<SignPartition, GraphError> {
    if x.len() != g.order() {
        return Err(GraphError::DimensionMismatch { expected: g.order(), got: x.len() });
    }
    let (plus, minus): (Vec<usize>, Vec<usize>) = (0..g.order()).partition(|&v| x[v] > sign_tol);
    let crossing_edges = g.edges().into_iter().filter(|&(u, w)| (x[u] > sign_tol) != (x[w] > sign_tol)).collect();
    Ok(SignPartition { plus, minus, crossing_edges })
}

/// Least eigenvalue of `U(p, q)ᶜ` is strictly below every other split and
/// below `U'(n − 4)ᶜ`, decided exactly and numerically.
fn family_ordering(v: &mut Verdict, n: usize, cfg: &VerifyConfig) -> Result<(), VerifyError> {
    let (bp, bq) = balanced_split(n);
    let best = u_pq_poly(bp, bq)?;
    let best_graph = u_pq(bp, bq)?.graph;
    let best_numeric = least_eigenvalue(&best_graph.complement())?;
    let mut rivals: Vec<(String, IntPoly, Graph)> = Vec::new();
    for q in 3..=n - 3 {
        let p = n - 2 - q;
        if (p, q) != (bp, bq) {
            rivals.push((format!("U({p},{q})"), u_pq_poly(p, q)?, u_pq(p, q)?.graph));
        }
    }
    rivals.push((format!("U'({})", n - 4), u_prime_poly(n - 4)?, u_prime(n - 4)?.graph));
    let results = with_threads(cfg.threads, || {
        rivals
            .par_iter()
            .map(|(_, poly, g)| -> Result<_, VerifyError> {
                Ok((compare_least_roots(&best, poly)?, least_eigenvalue(&g.complement())?))
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    v.param("balanced_split", json!([bp, bq]));
    v.param("family_size", rivals.len() + 1);
    v.num("lamin_balanced", best_numeric);
    for ((name, _, g), (exact, numeric)) in rivals.iter().zip(results) {
        if exact != Ordering::Less || numeric <= best_numeric {
            v.fail(
                Witness::ordering(&best_graph, g, Objective::LaminComplement)
                    .value("lamin", best_numeric)
                    .value("rival_lamin", numeric)
                    .detail(format!("{name}: exact order {exact:?}")),
            );
        }
    }
    Ok(())
}

/// Among unicyclic graphs of order `n ≥ 20`, `U(⌈(n−2)/2⌉, ⌊(n−2)/2⌋)` has
/// the complement with the least eigenvalue.
///
/// Orders within the exhaustive bound are searched completely and the
/// minimizer is recorded as an observation. Larger orders compare the
/// balanced graph against the structured family only.
pub fn check_theorem_3_4(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 5 {
        return Err(VerifyError::Order { claim: "theorem3.4", n, min: 5 });
    }
    let mut v = Verdict::new("theorem3.4", n);
    v.notes.push(
        "the equality case is read as U itself being the balanced U(p, q), not its complement".to_string(),
    );
    if n <= cfg.max_n.min(MAX_UNICYCLIC_ORDER) {
        v.param("mode", "exhaustive");
        let report = minimize(n, Objective::LaminComplement, &cfg.search())?;
        let (bp, bq) = balanced_split(n);
        let pattern = if bq >= 3 { Some(canonical_form(&u_pq(bp, bq)?.graph)?) } else { None };
        let matches = report.unique_minimizer().is_some_and(|m| Some(&m.canonical_form) == pattern.as_ref());
        record_search(&mut v, &report);
        v.param("matches_balanced_pattern", matches);
        if n >= 20 && !matches {
            v.holds = false;
        }
        if n < 20 {
            v.notes.push(format!(
                "n < 20: exhaustive minimizer recorded as an observation; it {} the balanced U(p, q)",
                if matches { "is" } else { "is not" }
            ));
        }
    } else {
        v.param("mode", "family");
        family_ordering(&mut v, n, cfg)?;
        v.notes.push("family mode: only the structured family is compared; the full class is out of reach".to_string());
        if n < 20 {
            v.out_of_hypothesis(20);
        }
    }
    Ok(v)
}

fn record_search(v: &mut Verdict, report: &SearchReport) {
    v.param("class_size", report.class_size);
    v.num("min_value", report.min_value);
    v.param("tie_resolution", serde_json::to_value(report.tie_resolution).expect("serializes"));
    if let Some(r) = report.runner_up_value {
        v.num("runner_up_value", r);
    }
    for m in &report.minimizers {
        let g = decode_graph6(&m.graph6).expect("report graph6 is valid");
        v.witnesses.push(
            Witness::new(WitnessKind::Minimizer, &g)
                .value("value", m.value)
                .detail(format!("canonical form {}", m.canonical_form)),
        );
    }
}

/// `S_n^3` is the unique unicyclic graph of order `n ≥ 6` with the least
/// adjacency eigenvalue.
pub fn check_remark_minimizer_un(n: usize, cfg: &VerifyConfig) -> Result<Verdict, VerifyError> {
    if n < 4 {
        return Err(VerifyError::Order { claim: "remark-un", n, min: 4 });
    }
    let mut v = Verdict::new("remark-un", n);
    let report = minimize(n, Objective::LaminDirect, &cfg.search())?;
    let expected = s3(n)?.graph;
    let key = canonical_form(&expected)?;
    record_search(&mut v, &report);
    let unique = matches!(report.tie_resolution, TieResolution::Unique | TieResolution::ExactUnique);
    let is_expected = unique && report.unique_minimizer().is_some_and(|m| m.canonical_form == key);
    if !is_expected {
        let lamin_expected = least_eigenvalue(&expected)?;
        v.num("lamin_s3", lamin_expected);
        for m in &report.minimizers {
            if m.canonical_form == key {
                continue;
            }
            let rival = decode_graph6(&m.graph6)?;
            v.fail(
                Witness::ordering(&expected, &rival, Objective::LaminDirect)
                    .value("lamin", lamin_expected)
                    .value("rival_lamin", m.value)
                    .detail("a different unicyclic graph has a least eigenvalue at or below S_n^3's"),
            );
        }
        if n >= 4 && report.minimizers.iter().any(|m| canonical_form(&s4(n).expect("n ≥ 4").graph).ok() == Some(m.canonical_form.clone())) {
            v.notes.push("the minimizer is C_4 with n − 4 pendants on one cycle vertex".to_string());
        }
    }
    if n < 6 {
        v.out_of_hypothesis(6);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::least_eigenpair;

    fn quick() -> VerifyConfig {
        VerifyConfig { trials: 500, ..VerifyConfig::default() }
    }

    #[test]
    fn lemma_2_1_examples() {
        for n in [13, 14, 40] {
            let v = check_lemma_2_1(n, &quick()).unwrap();
            assert!(v.holds, "{v:?}");
            assert!(v.witnesses.is_empty());
        }
        let v = check_lemma_2_1(10, &quick()).unwrap();
        assert!(v.holds && v.notes[0].contains("hypothesis"));
        assert!(check_lemma_2_1(7, &quick()).is_err());
    }

    #[test]
    fn lemma_2_2_examples() {
        let v = check_lemma_2_2(20, &quick()).unwrap();
        assert!(v.holds);
        assert_eq!(v.parameters["balanced_split"], json!([9, 9]));
        let v = check_lemma_2_2(21, &quick()).unwrap();
        assert!(v.holds);
        assert_eq!(v.parameters["balanced_split"], json!([10, 9]));
    }

    #[test]
    fn rearrangement_examples() {
        let v = check_lemma_3_1(6, &quick()).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.witnesses.iter().filter(|w| w.kind == WitnessKind::Equality).count(), 1);
        let v = check_lemma_3_2(6, &quick()).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(check_lemma_3_2(6, &quick()).unwrap(), v);
    }

    #[test]
    fn bound_values() {
        let x = VertexVector::new(vec![0.5, -0.0, 3.0, 1.0]);
        assert_eq!(rearrangement_bound(&x, false), 3.0 * 1.5);
        assert_eq!(rearrangement_bound(&x, true), 3.0 * 1.5 + 0.5);
    }

    #[test]
    fn lemma_3_3_small() {
        let v = check_lemma_3_3(5, &quick()).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.parameters["class_size"], json!(5));
        // S_5^3's complement has an isolated vertex, logged in the dead zone
        assert!(v.notes.iter().any(|s| s.contains("dead-zone")));
    }

    #[test]
    fn partition_examples() {
        let g = u_pq(9, 9).unwrap().graph;
        let pos = VertexVector::ones(20);
        let p = sign_partition(&g, &pos).unwrap();
        assert!(p.minus.is_empty() && p.crossing_edges.is_empty());
        let x = least_eigenpair(&g.complement(), DEFAULT_TOL).unwrap().vector;
        assert_eq!(sign_partition(&g, &x).unwrap().crossing_edges.len(), 1);
        let z = VertexVector::new(vec![1.0, 0.0]);
        let p = sign_partition(&Graph::new(2, &[(0, 1)]).unwrap(), &z).unwrap();
        assert_eq!((p.plus, p.minus, p.crossing_edges), (vec![0], vec![1], vec![(0, 1)]));
    }

    #[test]
    fn theorem_modes() {
        let v = check_theorem_3_4(8, &quick()).unwrap();
        assert!(v.holds);
        assert_eq!(v.parameters["mode"], json!("exhaustive"));
        assert!(v.witnesses.iter().any(|w| w.kind == WitnessKind::Minimizer));
        let v = check_theorem_3_4(20, &quick()).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.parameters["mode"], json!("family"));
    }

    #[test]
    fn remark_is_refuted_reproducibly() {
        let v = check_remark_minimizer_un(6, &quick()).unwrap();
        assert!(!v.holds);
        assert!(!v.witnesses.is_empty());
        assert!(v.replay().unwrap());
        let v = check_remark_minimizer_un(5, &quick()).unwrap();
        assert!(v.holds && v.notes.iter().any(|s| s.contains("hypothesis")));
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(check("bogus", 6, &quick()), Err(VerifyError::UnknownClaim(_))));
    }
}
