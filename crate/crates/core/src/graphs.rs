//! Graphs, subgraph density, and spectral certification of excess bounds.
//!
//! A `k`-vertex subgraph has *excess* `ε` when its edge density is `1/2 + ε`.
//! The signed adjacency matrix `A` (entries `±1` off the diagonal) turns
//! density questions into spectral ones: the unit vector spread uniformly
//! over a `k`-subset `S` with excess `ε` satisfies `xᵀAx = 2ε(k−1)`, so
//! `λ₁(A) < 2ε(k−1)` certifies that no such subset exists. The skewed variant
//! adds a rank-one shift, `Â = A/2 + (a/√n)J`, which trades a weaker norm
//! bound for a `ka/√n` boost on the witness side; it certifies `(k, ε)`
//! whenever `ε(k−1) + ka/√n > λ₁(Â)`.
//!
//! A brute-force densest-`k`-subgraph oracle (budgeted exhaustive search) is
//! included so certifier soundness can be cross-checked on small graphs.

use crate::linalg::{self, LinalgError, SymMatrix};
use crate::subsets::{binomial, ColexSubsets};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default cap on the number of subsets the densest-subgraph oracle visits.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

// ============================================================================
// Errors
// ============================================================================

/// Errors reported by graph construction and certification.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    /// Malformed input: loops, out-of-range vertices, duplicate edges,
    /// undersized subsets, parameters outside their domain.
    InvalidInput(String),
    /// Exhaustive search would visit more subsets than the budget allows.
    BudgetExceeded { required: u128, budget: u64 },
    /// An eigensolver failure bubbled up from the linear algebra kernels.
    Linalg(LinalgError),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            GraphError::BudgetExceeded { required, budget } => {
                write!(f, "search needs {required} subsets, budget is {budget}")
            }
            GraphError::Linalg(e) => write!(f, "linear algebra failure: {e}"),
        }
    }
}

impl std::error::Error for GraphError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            GraphError::Linalg(e) => Some(e),
            _ => None,
        }
    }
}

impl From<LinalgError> for GraphError {
    fn from(e: LinalgError) -> Self {
        GraphError::Linalg(e)
    }
}

// ============================================================================
// Graph
// ============================================================================

/// A simple undirected graph on vertices `{0, …, n−1}`, stored as a bitset
/// adjacency matrix (no loops, no multi-edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The graph with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// The complete graph.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// Builds a graph from an explicit edge list. Loops, out-of-range
    /// endpoints, and repeated pairs (in either orientation) are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::InvalidInput(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(GraphError::InvalidInput(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::InvalidInput(format!("duplicate edge ({u},{v})")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `{u, v}` is an edge. Panics if either vertex is out of range.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Adds or removes the edge `{u, v}`. Panics on loops or out-of-range
    /// vertices.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        for (a, b) in [(u, v), (v, u)] {
            let word = a * self.words + b / 64;
            let bit = 1u64 << (b % 64);
            if present {
                self.adj[word] |= bit;
            } else {
                self.adj[word] &= !bit;
            }
        }
    }

    /// Number of edges.
    pub fn edge_count(&self) -> u64 {
        let twice: u64 = self.adj.iter().map(|w| w.count_ones() as u64).sum();
        twice / 2
    }

    /// All edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges with both endpoints in `subset` (validated).
    pub fn subset_edge_count(&self, subset: &[usize]) -> Result<u64, GraphError> {
        validate_vertex_subset(self, subset, 1)?;
        Ok(self.count_subset_edges(subset))
    }

    /// Unvalidated edge count within a subset (callers guarantee distinct,
    /// in-range vertices).
    fn count_subset_edges(&self, subset: &[usize]) -> u64 {
        let mut e = 0;
        for (i, &u) in subset.iter().enumerate() {
            for &v in &subset[i + 1..] {
                if self.has_edge(u, v) {
                    e += 1;
                }
            }
        }
        e
    }
}

fn validate_vertex_subset(g: &Graph, subset: &[usize], min_size: usize) -> Result<(), GraphError> {
    if subset.len() < min_size {
        return Err(GraphError::InvalidInput(format!(
            "subset has {} vertices, need at least {min_size}",
            subset.len()
        )));
    }
    for &v in subset {
        if v >= g.n() {
            return Err(GraphError::InvalidInput(format!(
                "vertex {v} out of range for {} vertices",
                g.n()
            )));
        }
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::InvalidInput(format!("duplicate vertex {}", w[0])));
        }
    }
    Ok(())
}

// ============================================================================
// Adjacency matrices
// ============================================================================

/// The signed adjacency matrix: zero diagonal, `+1` for edges, `−1` for
/// non-edges.
pub fn signed_adjacency(g: &Graph) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            0.0
        } else if g.has_edge(i, j) {
            1.0
        } else {
            -1.0
        }
    })
}

/// The skewed adjacency matrix `Â = A/2 + (a/√n)·J`, where `A` is the signed
/// adjacency matrix and `J` is all-ones including the diagonal (so the
/// diagonal of `Â` is exactly `a/√n`).
pub fn skewed_adjacency(g: &Graph, a: f64) -> Result<SymMatrix, GraphError> {
    if !a.is_finite() || a < 0.0 {
        return Err(GraphError::InvalidInput(format!(
            "skew parameter must be finite and non-negative, got {a}"
        )));
    }
    let shift = a / (g.n() as f64).sqrt();
    Ok(SymMatrix::from_fn(g.n(), |i, j| {
        let signed = if i == j {
            0.0
        } else if g.has_edge(i, j) {
            1.0
        } else {
            -1.0
        };
        signed / 2.0 + shift
    }))
}

// ============================================================================
// Excess and the exhaustive oracle
// ============================================================================

fn excess_from_count(edges: u64, k: usize) -> f64 {
    let pairs = (k as u64) * (k as u64 - 1) / 2;
    edges as f64 / pairs as f64 - 0.5
}

/// Excess of the subgraph induced by `subset`: its edge density minus `1/2`
/// (negative for sparse subsets). Requires at least 2 distinct vertices.
pub fn excess(g: &Graph, subset: &[usize]) -> Result<f64, GraphError> {
    validate_vertex_subset(g, subset, 2)?;
    Ok(excess_from_count(g.count_subset_edges(subset), subset.len()))
}

/// The result of an exhaustive densest-`k`-subgraph search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensestSubgraph {
    pub subset: Vec<usize>,
    pub edge_count: u64,
    pub excess: f64,
}

/// Exhaustive densest-`k`-subgraph search with the default budget.
pub fn densest_k_oracle(g: &Graph, k: usize) -> Result<DensestSubgraph, GraphError> {
    densest_k_oracle_with_budget(g, k, DEFAULT_ORACLE_BUDGET)
}

/// Exhaustive densest-`k`-subgraph search: visits every `k`-subset in colex
/// order and returns the one with the most edges. Ties are broken by keeping
/// the first (colexicographically smallest) maximum, so the output is
/// deterministic.
pub fn densest_k_oracle_with_budget(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<DensestSubgraph, GraphError> {
    if k < 2 || k > g.n() {
        return Err(GraphError::InvalidInput(format!(
            "subset size {k} out of range for {} vertices (need 2 <= k <= n)",
            g.n()
        )));
    }
    let required = binomial(g.n() as u64, k as u64);
    if required > budget as u128 {
        return Err(GraphError::BudgetExceeded { required, budget });
    }
    let mut it = ColexSubsets::new(g.n(), k);
    let mut best: Option<(u64, Vec<usize>)> = None;
    while let Some(s) = it.next_subset() {
        let e = g.count_subset_edges(s);
        match &best {
            Some((be, _)) if e <= *be => {}
            _ => best = Some((e, s.to_vec())),
        }
    }
    let (edge_count, subset) = best.expect("k <= n guarantees at least one subset");
    Ok(DensestSubgraph {
        subset,
        edge_count,
        excess: excess_from_count(edge_count, k),
    })
}

// ============================================================================
// Certificates
// ============================================================================

/// Which certifier produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertMethod {
    Spectral,
    Skewed,
}

/// A certified half-plane of `(k, ε)` pairs: for every pair in the region,
/// the graph has no `k`-vertex subgraph with excess at least `ε`.
///
/// The region is stored as its defining threshold — `(method, λ₁, a, n)` —
/// and membership is evaluated on demand by [`SubgraphCertificate::certifies`]
/// with a strict inequality:
///
/// - spectral: `2ε(k−1) > λ₁(A)`
/// - skewed:   `ε(k−1) + ka/√n > λ₁(Â)`
///
/// The comparison inflates `λ₁` by a small spectrum-scaled numerical guard
/// (see [`SubgraphCertificate::certifies`]) so that solver error can never
/// round a mathematical tie into a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgraphCertificate {
    pub method: CertMethod,
    pub lambda1: f64,
    #[serde(rename = "a")]
    pub skew_a: f64,
    pub n: usize,
}

impl SubgraphCertificate {
    /// Numerical guard added to `lambda1` in the region comparison. The
    /// eigensolver behind a certificate converges to the default threshold
    /// (`1e-12` relative to the Frobenius norm, which is at most `n^{3/2}·λ₁`
    /// for the trace-nonnegative matrices both certifiers build) and carries
    /// accumulated rotation roundoff of order `n²·ε_machine·‖M‖₂ ≤
    /// n³·ε_machine·λ₁`. Inflating `λ₁` by the sum keeps certificates sound:
    /// a mathematical tie — e.g. the whole-vertex-set subset of a regular
    /// graph, whose uniform witness is exactly the top eigenvector — cannot
    /// round into a certificate. The guard depends only on `n` and scales
    /// linearly in `λ₁`, so halving `λ₁` halves the guarded threshold
    /// bit-exactly (which keeps the `a = 0` skewed region identical to the
    /// spectral region).
    fn lambda1_guard(&self) -> f64 {
        let n = self.n as f64;
        let rel = 32.0 * f64::EPSILON * n * n + linalg::DEFAULT_EIGEN_TOL * n * n.sqrt();
        self.lambda1.abs() * rel
    }

    /// Whether `(k, ε)` lies in the certified region: a strict comparison
    /// against `λ₁` inflated by [a small numerical guard](Self::lambda1_guard).
    /// Sound by construction — nothing is certified that exact arithmetic
    /// would reject — at the price of declining points within roughly
    /// `10⁻¹¹·λ₁` of the boundary. For `k > n` the claim is vacuous — there
    /// are no `k`-subgraphs — but the predicate is still just the threshold
    /// comparison. Certificates produced with a looser eigensolver tolerance
    /// than the default are not covered by the guard.
    pub fn certifies(&self, k: usize, eps: f64) -> bool {
        if k == 0 {
            return false;
        }
        let km1 = (k - 1) as f64;
        let bar = self.lambda1 + self.lambda1_guard();
        match self.method {
            CertMethod::Spectral => 2.0 * eps * km1 > bar,
            CertMethod::Skewed => {
                eps * km1 + (k as f64) * self.skew_a / (self.n as f64).sqrt() > bar
            }
        }
    }

    /// The excess value at which the ideal (unguarded) region boundary sits
    /// for a given `k` (infinite for `k < 2`). Reporting aid only: region
    /// membership must go through [`SubgraphCertificate::certifies`], whose
    /// guarded strict comparison is the definition and differs from this
    /// value in a narrow band at the boundary.
    pub fn threshold_excess(&self, k: usize) -> f64 {
        if k < 2 {
            return f64::INFINITY;
        }
        let km1 = (k - 1) as f64;
        match self.method {
            CertMethod::Spectral => self.lambda1 / (2.0 * km1),
            CertMethod::Skewed => {
                (self.lambda1 - (k as f64) * self.skew_a / (self.n as f64).sqrt()) / km1
            }
        }
    }
}

fn require_certifiable(g: &Graph) -> Result<(), GraphError> {
    if g.n() < 2 {
        return Err(GraphError::InvalidInput(format!(
            "certification needs at least 2 vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Spectral certifier: computes `λ₁` of the signed adjacency matrix and
/// certifies every `(k, ε)` with `2ε(k−1) > λ₁`.
pub fn spectral_certify(g: &Graph) -> Result<SubgraphCertificate, GraphError> {
    spectral_certify_with_tol(g, linalg::DEFAULT_EIGEN_TOL)
}

pub fn spectral_certify_with_tol(g: &Graph, tol: f64) -> Result<SubgraphCertificate, GraphError> {
    require_certifiable(g)?;
    let eigs = linalg::sym_eigenvalues_with_tol(&signed_adjacency(g), tol)?;
    Ok(SubgraphCertificate {
        method: CertMethod::Spectral,
        lambda1: eigs[0],
        skew_a: 0.0,
        n: g.n(),
    })
}

/// Skewed certifier: computes `λ₁` of `Â = A/2 + (a/√n)J` and certifies every
/// `(k, ε)` with `ε(k−1) + ka/√n > λ₁`. With `a = 0` this is exactly the
/// spectral certifier (the threshold is consistently halved).
pub fn skewed_certify(g: &Graph, a: f64) -> Result<SubgraphCertificate, GraphError> {
    skewed_certify_with_tol(g, a, linalg::DEFAULT_EIGEN_TOL)
}

pub fn skewed_certify_with_tol(
    g: &Graph,
    a: f64,
    tol: f64,
) -> Result<SubgraphCertificate, GraphError> {
    require_certifiable(g)?;
    let eigs = linalg::sym_eigenvalues_with_tol(&skewed_adjacency(g, a)?, tol)?;
    Ok(SubgraphCertificate {
        method: CertMethod::Skewed,
        lambda1: eigs[0],
        skew_a: a,
        n: g.n(),
    })
}

/// Both certifiers on the same graph; certifies the union of their regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinedCertificate {
    pub spectral: SubgraphCertificate,
    pub skewed: SubgraphCertificate,
}

impl CombinedCertificate {
    pub fn certifies(&self, k: usize, eps: f64) -> bool {
        self.spectral.certifies(k, eps) || self.skewed.certifies(k, eps)
    }
}

/// Runs the spectral and skewed certifiers and returns both; the combined
/// region is their union (the skewed analysis is not uniformly stronger).
pub fn combined_certify(g: &Graph, a: f64) -> Result<CombinedCertificate, GraphError> {
    Ok(CombinedCertificate {
        spectral: spectral_certify(g)?,
        skewed: skewed_certify(g, a)?,
    })
}

// ============================================================================
// Skew parameter tuning
// ============================================================================

/// A feasible skew parameter for the regime `k = αn`, `ε = cexc/√n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkewTuning {
    /// The tuned skew parameter `a* = α²·cexc/(1−α²)`.
    pub a: f64,
    /// `f(a*) = a*² + 5/4 − (α·cexc + α·a*)²`; negative means the expected
    /// top eigenvalue is beaten asymptotically.
    pub margin: f64,
}

/// Decides whether the skewed certifier can work asymptotically in the regime
/// `k = αn`, `ε = cexc/√n`: feasible iff `4α²·cexc² + 5α² > 5`, in which case
/// the optimal skew parameter `a* = α²·cexc/(1−α²)` (the vertex of
/// `f(a) = a² + 5/4 − (α·cexc + α·a)²`) is returned along with `f(a*) < 0`.
pub fn skew_feasible(alpha: f64, cexc: f64) -> Result<Option<SkewTuning>, GraphError> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(GraphError::InvalidInput(format!(
            "alpha must lie in ]0,1[, got {alpha}"
        )));
    }
    if !cexc.is_finite() || cexc <= 0.0 {
        return Err(GraphError::InvalidInput(format!(
            "cexc must be positive, got {cexc}"
        )));
    }
    let a2 = alpha * alpha;
    let discriminant = 4.0 * a2 * cexc * cexc + 5.0 * a2 - 5.0;
    if discriminant <= 0.0 {
        return Ok(None);
    }
    let a_star = a2 * cexc / (1.0 - a2);
    let reach = alpha * cexc + alpha * a_star;
    let margin = a_star * a_star + 1.25 - reach * reach;
    Ok(Some(SkewTuning { a: a_star, margin }))
}

// ============================================================================
// Tests
// ============================================================================
