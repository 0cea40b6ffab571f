//! From graphs to sensing matrices: the Cholesky reduction, violation
//! witnesses from dense subgraphs, block-diagonal composition, the
//! rectangular embedding, and hardness-regime parameter bundles.
//!
//! The reduction sends a graph `G` with signed adjacency matrix `A` to
//! `B = Id + cA/√n` and returns the Cholesky factor `C` with `CᵀC = B` (or
//! the zero matrix when `B` is not positive semidefinite — the reduction's
//! defined output, not an error). Restricted-isometry questions about `C`
//! then mirror subgraph-density questions about `G`: a `k`-subset with
//! excess `ε ≥ 0` yields a uniform witness `x` with
//! `‖Cx‖² = 1 + 2cε(k−1)/√n`, so `C` violates any RIP parameter below that
//! bound, while graphs without dense subgraphs reduce to matrices whose RIP
//! constants are genuinely small.

use crate::graphs::{self, Graph, GraphError};
use crate::linalg::{self, DenseMatrix, LinalgError, SymMatrix};
use crate::random::{self, Seed};
use crate::sensing::{SensingMatrix, SparseVector};
use serde::{Deserialize, Serialize};
use std::fmt;

// ============================================================================
// Errors
// ============================================================================

/// Errors reported by the reduction layer.
#[derive(Debug, Clone, PartialEq)]
pub enum ReductionError {
    /// Malformed input: parameters outside their domain.
    InvalidInput(String),
    /// The requested subset has negative excess, so it witnesses nothing.
    NotAViolation { excess: f64 },
    /// A hardness-regime inequality is violated; names the constraint.
    InfeasibleParameters { constraint: String },
    /// A graph-layer failure bubbled up.
    Graph(GraphError),
    /// An unexpected linear algebra failure (anything other than the PSD
    /// failure the reduction is defined to absorb).
    Linalg(LinalgError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            ReductionError::NotAViolation { excess } => {
                write!(f, "subset excess {excess} is negative, not a violation witness")
            }
            ReductionError::InfeasibleParameters { constraint } => {
                write!(f, "infeasible parameters: violated {constraint}")
            }
            ReductionError::Graph(e) => write!(f, "graph failure: {e}"),
            ReductionError::Linalg(e) => write!(f, "linear algebra failure: {e}"),
        }
    }
}

impl std::error::Error for ReductionError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ReductionError::Graph(e) => Some(e),
            ReductionError::Linalg(e) => Some(e),
            _ => None,
        }
    }
}

impl From<GraphError> for ReductionError {
    fn from(e: GraphError) -> Self {
        ReductionError::Graph(e)
    }
}

impl From<LinalgError> for ReductionError {
    fn from(e: LinalgError) -> Self {
        ReductionError::Linalg(e)
    }
}

// ============================================================================
// Cholesky reduction
// ============================================================================

/// Configuration of the reduction `G ↦ C(G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CholeskyReductionConfig {
    /// The scaling constant of `B = Id + cA/√n`. Experiments honoring the
    /// model analysis keep `3c < 1`.
    pub c: f64,
    /// Pivot tolerance for the PSD test; `None` uses the data-scaled default
    /// of the Cholesky kernel.
    pub psd_tol: Option<f64>,
}

impl CholeskyReductionConfig {
    pub fn new(c: f64) -> Self {
        CholeskyReductionConfig { c, psd_tol: None }
    }

    pub fn with_psd_tol(mut self, psd_tol: f64) -> Self {
        self.psd_tol = Some(psd_tol);
        self
    }

    fn validate(&self) -> Result<(), ReductionError> {
        if !self.c.is_finite() || self.c < 0.0 {
            return Err(ReductionError::InvalidInput(format!(
                "scale must be finite and non-negative, got {}",
                self.c
            )));
        }
        if let Some(t) = self.psd_tol {
            if !t.is_finite() || t < 0.0 {
                return Err(ReductionError::InvalidInput(format!(
                    "psd tolerance must be finite and non-negative, got {t}"
                )));
            }
        }
        Ok(())
    }
}

/// The shifted matrix `B = Id + cA/√n` for the signed adjacency matrix `A`.
pub fn model_b_matrix(g: &Graph, c: f64) -> SymMatrix {
    let n = g.n();
    let scale = c / (n as f64).sqrt();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else if g.has_edge(i, j) {
            scale
        } else {
            -scale
        }
    })
}

/// The reduction's output: the factor, plus a flag distinguishing a PSD
/// failure (zero matrix by definition) from a genuinely zero factor.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyReduction {
    /// `C` with `CᵀC = Id + cA/√n`, or the zero matrix on PSD failure.
    pub matrix: SensingMatrix,
    pub psd_failure: bool,
}

/// Computes `C(G)`: the upper-triangular Cholesky factor of `Id + cA/√n`,
/// or the `n×n` zero matrix (flagged) when that matrix is not positive
/// semidefinite.
pub fn cholesky_reduce(
    g: &Graph,
    cfg: &CholeskyReductionConfig,
) -> Result<CholeskyReduction, ReductionError> {
    cfg.validate()?;
    let b = model_b_matrix(g, cfg.c);
    let tol = cfg.psd_tol.unwrap_or_else(|| linalg::default_psd_tol(&b));
    match linalg::cholesky(&b, tol) {
        Ok(factor) => Ok(CholeskyReduction {
            matrix: SensingMatrix::new(factor),
            psd_failure: false,
        }),
        Err(LinalgError::NotPsd { .. }) => Ok(CholeskyReduction {
            matrix: SensingMatrix::new(DenseMatrix::zeros(g.n(), g.n())),
            psd_failure: true,
        }),
        Err(other) => Err(ReductionError::Linalg(other)),
    }
}

// ============================================================================
// Violation witnesses
// ============================================================================

/// Builds the restricted-isometry violation witness carried by a dense
/// subgraph: the unit vector `x` uniform on `subset`, together with the
/// guaranteed lower bound `2cε(k−1)/√n` on `‖C(G)x‖² − 1` (valid whenever
/// the reduction did not hit a PSD failure).
///
/// A subset with negative excess witnesses nothing and is rejected; `ε = 0`
/// is accepted as a vacuous witness with lower bound 0.
pub fn violation_witness(
    g: &Graph,
    subset: &[usize],
    cfg: &CholeskyReductionConfig,
) -> Result<(SparseVector, f64), ReductionError> {
    cfg.validate()?;
    let eps = graphs::excess(g, subset)?;
    if eps < 0.0 {
        return Err(ReductionError::NotAViolation { excess: eps });
    }
    let x = SparseVector::uniform(subset).map_err(|e| {
        // Subset validation already passed, so this cannot happen.
        ReductionError::InvalidInput(format!("witness construction failed: {e}"))
    })?;
    let k = subset.len();
    let lower_bound = 2.0 * cfg.c * eps * ((k - 1) as f64) / (g.n() as f64).sqrt();
    Ok((x, lower_bound))
}

// ============================================================================
// Block-diagonal composition
// ============================================================================

/// An ordered list of sensing matrices assembled block-diagonally. The
/// restricted-isometry constant of the assembly at any order is the maximum
/// of the blocks' constants at that order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    blocks: Vec<SensingMatrix>,
    assembled: SensingMatrix,
}

impl BlockMatrix {
    pub fn blocks(&self) -> &[SensingMatrix] {
        &self.blocks
    }

    pub fn assembled(&self) -> &SensingMatrix {
        &self.assembled
    }

    pub fn into_assembled(self) -> SensingMatrix {
        self.assembled
    }

    /// The (row, column) offset where each block starts.
    pub fn boundaries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let (mut r, mut c) = (0, 0);
        for b in &self.blocks {
            out.push((r, c));
            r += b.rows();
            c += b.cols();
        }
        out
    }
}

/// Assembles matrices into one block-diagonal sensing matrix (off-block
/// entries exactly zero). At least one block is required.
pub fn block_diag(blocks: Vec<SensingMatrix>) -> Result<BlockMatrix, ReductionError> {
    if blocks.is_empty() {
        return Err(ReductionError::InvalidInput(
            "block-diagonal assembly needs at least one block".to_string(),
        ));
    }
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut m = DenseMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in &blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                m.set(r0 + r, c0 + c, b.matrix().get(r, c));
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    Ok(BlockMatrix {
        assembled: SensingMatrix::new(m),
        blocks,
    })
}

/// The rectangular embedding `C′(G) = diag(C(G), B)`, where `B` is a seeded
/// `n × bn_cols` Bernoulli sensing matrix (`bn_cols ≥ n`); the assembly is
/// `2n × (n + bn_cols)`.
pub fn rectangular_embed(
    g: &Graph,
    cfg: &CholeskyReductionConfig,
    bn_cols: usize,
    seed: Seed,
) -> Result<BlockMatrix, ReductionError> {
    let n = g.n();
    if bn_cols < n {
        return Err(ReductionError::InvalidInput(format!(
            "rectangular embedding needs at least {n} random columns, got {bn_cols}"
        )));
    }
    let upper = cholesky_reduce(g, cfg)?;
    let lower = random::gen_bernoulli_sensing(n, bn_cols, seed);
    block_diag(vec![upper.matrix, lower])
}

// ============================================================================
// Planted instances
// ============================================================================

/// Rounds a fractional edge target up, except that values within a hair of
/// an integer round to it (the product `(1/2+ε)·pairs` is often an exact
/// integer computed inexactly).
fn edge_target(eps: f64, pairs: u64) -> u64 {
    let x = (0.5 + eps) * pairs as f64;
    let r = x.round();
    if (x - r).abs() <= 1e-9 * (pairs as f64).max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

/// Returns a copy of `g` where the subgraph induced by `subset` has been
/// densified to excess at least `target_excess`, by flipping the minimum
/// number of internal non-edges (chosen uniformly under the seed). Edges
/// outside the subset are untouched; if the subset is already dense enough,
/// the graph is returned unchanged.
pub fn plant_dense_subset(
    g: &Graph,
    subset: &[usize],
    target_excess: f64,
    seed: Seed,
) -> Result<Graph, ReductionError> {
    if !target_excess.is_finite() || !(-0.5..=0.5).contains(&target_excess) {
        return Err(ReductionError::InvalidInput(format!(
            "target excess must lie in [−1/2, 1/2], got {target_excess}"
        )));
    }
    let current = g.subset_edge_count(subset)?;
    let k = subset.len();
    if k < 2 {
        return Err(ReductionError::InvalidInput(
            "planting needs at least 2 vertices".to_string(),
        ));
    }
    let pairs = (k as u64) * (k as u64 - 1) / 2;
    let target = edge_target(target_excess, pairs).min(pairs);
    if current >= target {
        return Ok(g.clone());
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut missing = Vec::new();
    for (i, &u) in sorted.iter().enumerate() {
        for &v in &sorted[i + 1..] {
            if !g.has_edge(u, v) {
                missing.push((u, v));
            }
        }
    }
    let flips = (target - current) as usize;
    let mut rng = random::rng(seed);
    let chosen = random::sample_subset(&mut rng, missing.len(), flips);
    let mut out = g.clone();
    for idx in chosen {
        let (u, v) = missing[idx];
        out.set_edge(u, v, true);
    }
    Ok(out)
}

/// A G(n,1/2) graph with a densified subset planted into it.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub subset: Vec<usize>,
}

/// Draws a G(n,1/2) graph, a uniformly random `k`-subset, and plants excess
/// at least `eps` on it. The three random choices use disjoint channels of
/// the seed, so instances are reproducible component by component.
pub fn gen_planted_instance(
    n: usize,
    k: usize,
    eps: f64,
    seed: Seed,
) -> Result<PlantedInstance, ReductionError> {
    if k < 2 || k > n {
        return Err(ReductionError::InvalidInput(format!(
            "subset size {k} out of range for {n} vertices (need 2 <= k <= n)"
        )));
    }
    let graph = random::gen_gnp_half(n, seed);
    let subset = random::sample_subset(&mut random::rng(seed.aux(1)), n, k);
    let graph = plant_dense_subset(&graph, &subset, eps, seed.aux(2))?;
    Ok(PlantedInstance { graph, subset })
}

// ============================================================================
// Hardness parameter bundles
// ============================================================================

/// The two asymptotic regimes in which dense-subgraph hardness transfers to
/// restricted-isometry hardness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardnessRegime {
    /// `k = n^α`, `ε = n^{−β}` (vanishing RIP parameter).
    Hyp1,
    /// `k = αn`, `ε = cexc/√n` (constant RIP parameter).
    Hyp2,
}

/// Optional overrides for [`hardness_params`]; `None` fields take the
/// regime's documented defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HardnessOverrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub c: Option<f64>,
    pub cprime: Option<f64>,
    pub lambda: Option<f64>,
    pub kappa: Option<f64>,
    pub delta0: Option<f64>,
    pub cexc: Option<f64>,
}

/// A validated hardness-regime parameter bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardnessParams {
    pub regime: HardnessRegime,
    pub n: usize,
    /// Subgraph order (`round(n^α)` or `round(αn)`).
    pub k: usize,
    /// Excess threshold.
    pub epsilon: f64,
    /// RIP parameter `c′·ε·k/√n`.
    pub delta: f64,
    pub c: f64,
    pub cprime: f64,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cexc: Option<f64>,
}

fn infeasible(constraint: &str) -> ReductionError {
    ReductionError::InfeasibleParameters {
        constraint: constraint.to_string(),
    }
}

fn check(ok: bool, constraint: &str) -> Result<(), ReductionError> {
    if ok {
        Ok(())
    } else {
        Err(infeasible(constraint))
    }
}

/// Instantiates a hardness regime at a concrete `n`, validating every
/// inequality the regime's analysis relies on and naming the first violated
/// one. Defaults (overridable):
///
/// - hyp1: `α = 3/4`, `β = 1/3`, `c = 0.3`, gap `λ = 2`,
///   `c′ = 0.9·2c/λ` (the analysis needs `λc′ < 2c`; 0.9 keeps a margin)
/// - hyp2: `κ = 0.7`, `δ₀ = 0.45κ`, `c′ = 0.9·δ₀/κ`, `c = 0.3`,
///   `α = 0.002`, `cexc = κ/α`
pub fn hardness_params(
    regime: HardnessRegime,
    n: usize,
    overrides: &HardnessOverrides,
) -> Result<HardnessParams, ReductionError> {
    if n < 2 {
        return Err(ReductionError::InvalidInput(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    for (name, v) in [
        ("alpha", overrides.alpha),
        ("beta", overrides.beta),
        ("c", overrides.c),
        ("cprime", overrides.cprime),
        ("lambda", overrides.lambda),
        ("kappa", overrides.kappa),
        ("delta0", overrides.delta0),
        ("cexc", overrides.cexc),
    ] {
        if let Some(x) = v {
            if !x.is_finite() {
                return Err(ReductionError::InvalidInput(format!(
                    "override {name} must be finite, got {x}"
                )));
            }
        }
    }
    let nf = n as f64;
    match regime {
        HardnessRegime::Hyp1 => {
            let c = overrides.c.unwrap_or(0.3);
            let lambda = overrides.lambda.unwrap_or(2.0);
            let cprime = overrides.cprime.unwrap_or(0.9 * 2.0 * c / lambda);
            let alpha = overrides.alpha.unwrap_or(0.75);
            let beta = overrides.beta.unwrap_or(1.0 / 3.0);
            check(beta > 0.0 && beta < 0.5, "beta in ]0, 1/2[")?;
            check(
                alpha > 2.0 * beta && alpha < beta + 0.5,
                "alpha in ]2·beta, beta + 1/2[",
            )?;
            check(c > 0.0 && 3.0 * c < 1.0, "0 < c and 3c < 1")?;
            check(lambda > 1.0, "lambda > 1")?;
            check(cprime > 0.0, "cprime > 0")?;
            check(lambda * cprime < 2.0 * c, "lambda·cprime < 2c")?;
            let k = nf.powf(alpha).round() as usize;
            check(k >= 2 && k <= n, "2 <= k = round(n^alpha) <= n")?;
            let epsilon = nf.powf(-beta);
            check(epsilon <= 0.5, "epsilon = n^(−beta) <= 1/2")?;
            let delta = cprime * epsilon * (k as f64) / nf.sqrt();
            Ok(HardnessParams {
                regime,
                n,
                k,
                epsilon,
                delta,
                c,
                cprime,
                alpha,
                beta: Some(beta),
                lambda: Some(lambda),
                kappa: None,
                delta0: None,
                cexc: None,
            })
        }
        HardnessRegime::Hyp2 => {
            let kappa = overrides.kappa.unwrap_or(0.7);
            check(kappa > 0.0 && kappa < 1.0, "kappa in ]0, 1[")?;
            let alpha = overrides.alpha.unwrap_or(0.002);
            check(alpha > 0.0 && alpha < 1.0, "alpha in ]0, 1[")?;
            let cexc = overrides.cexc.unwrap_or(kappa / alpha);
            check(cexc > 0.0, "cexc > 0")?;
            check(alpha <= kappa, "alpha <= kappa")?;
            check(alpha * cexc <= kappa, "alpha·cexc <= kappa")?;
            let delta0 = overrides.delta0.unwrap_or(0.45 * kappa);
            check(
                delta0 > 0.0 && delta0 < kappa / 2.0,
                "0 < delta0 < kappa/2",
            )?;
            let c = overrides.c.unwrap_or(0.3);
            check(c > 0.0 && 3.0 * c < 1.0, "0 < c and 3c < 1")?;
            check(4.0 * c > 1.0, "4c > 1 (violation bound 2cκ must clear κ/2)")?;
            let cprime = overrides.cprime.unwrap_or(0.9 * delta0 / kappa);
            check(cprime > 0.0, "cprime > 0")?;
            let delta = cprime * alpha * cexc;
            check(delta < delta0, "delta = cprime·alpha·cexc < delta0")?;
            let reach = cprime * cexc * alpha.sqrt();
            check(3.0 * c < reach, "3c < cprime·cexc·sqrt(alpha)")?;
            check(
                (std::f64::consts::E / alpha).ln() < (reach / c - 3.0).powi(2) / 32.0,
                "ln(e/alpha) < (cprime·cexc·sqrt(alpha)/c − 3)²/32",
            )?;
            let k = (alpha * nf).round() as usize;
            check(k >= 2 && k <= n, "2 <= k = round(alpha·n) <= n")?;
            let epsilon = cexc / nf.sqrt();
            check(epsilon <= 0.5, "epsilon = cexc/sqrt(n) <= 1/2")?;
            Ok(HardnessParams {
                regime,
                n,
                k,
                epsilon,
                delta,
                c,
                cprime,
                alpha,
                beta: None,
                lambda: None,
                kappa: Some(kappa),
                delta0: Some(delta0),
                cexc: Some(cexc),
            })
        }
    }
}

// ============================================================================
// Tests
// ============================================================================
