//! Restricted-isometry analysis of sensing matrices.
//!
//! For an `n x N` matrix `Φ` and an index set `T` of size `k`, the subset
//! constant `δ_T` is the spectral radius of `Φ_TᵀΦ_T − Id_k`; the order-`k`
//! constant `δ_k` is the maximum of `δ_T` over all size-`k` subsets. A matrix
//! satisfies the restricted isometry property of order `k` with parameter `δ`
//! when `δ_k ≤ δ`, i.e. `(1−δ)‖x‖² ≤ ‖Φx‖² ≤ (1+δ)‖x‖²` for every `k`-sparse
//! `x`.
//!
//! Exact computation enumerates subsets (colex order, budgeted), which is only
//! viable for small orders. The point of this module is that small orders are
//! enough: for a unit-column matrix, an exact order-`m` constant `ε`
//! extrapolates to every higher order `k` as `ε(k−1)/(m−1)`, and
//! [`lazy_certify`] packages that into a certified order range.

use crate::linalg::{self, DenseMatrix, LinalgError};
use crate::subsets::{binomial, ColexSubsets};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Column norms within this distance of 1 count as unit columns.
pub const UNIT_COLUMN_TOL: f64 = 1e-9;

/// Default cap on the number of enumerated subsets.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// Relative slack used when cutting an extrapolated order range at a
/// requested `δ`. Extrapolation happens in floating point; without the slack,
/// a one-ulp overshoot (e.g. `0.1 * 3.0 > 0.3`) would drop the last exactly
/// admissible order. The certificate remains sound because its recorded
/// `delta` is the extrapolated value actually attained at `k_max`, not the
/// requested cut.
const EXTRAPOLATION_SLACK: f64 = 1e-12;

// ============================================================================
// Errors
// ============================================================================

/// Errors reported by restricted-isometry operations.
#[derive(Debug, Clone, PartialEq)]
pub enum SensingError {
    /// Malformed input: out-of-range or duplicate indices, zero witness
    /// vectors, parameters outside their domain.
    InvalidInput(String),
    /// The requested order exceeds the number of rows, so no subset of that
    /// size can be an approximate isometry.
    OrderTooLarge { order: usize, rows: usize },
    /// The operation requires unit columns and the matrix does not have them.
    NotNormalized,
    /// Exact enumeration would visit more subsets than the configured budget.
    BudgetExceeded { required: u128, budget: u64 },
    /// A base/target order pair outside the extrapolation domain
    /// (`2 <= base <= target`).
    InvalidOrder { base_order: usize, target_order: usize },
    /// An eigensolver failure bubbled up from the linear algebra kernels.
    Linalg(LinalgError),
}

impl fmt::Display for SensingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SensingError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            SensingError::OrderTooLarge { order, rows } => {
                write!(f, "order {order} exceeds row count {rows}")
            }
            SensingError::NotNormalized => {
                write!(f, "operation requires unit columns (within {UNIT_COLUMN_TOL})")
            }
            SensingError::BudgetExceeded { required, budget } => {
                write!(f, "enumeration needs {required} subsets, budget is {budget}")
            }
            SensingError::InvalidOrder {
                base_order,
                target_order,
            } => write!(
                f,
                "invalid order pair: base {base_order}, target {target_order} (need 2 <= base <= target)"
            ),
            SensingError::Linalg(e) => write!(f, "linear algebra failure: {e}"),
        }
    }
}

impl std::error::Error for SensingError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SensingError::Linalg(e) => Some(e),
            _ => None,
        }
    }
}

impl From<LinalgError> for SensingError {
    fn from(e: LinalgError) -> Self {
        SensingError::Linalg(e)
    }
}

// ============================================================================
// Sensing matrices
// ============================================================================

/// Tuning knobs for subset enumeration.
#[derive(Debug, Clone, Copy)]
pub struct RipOptions {
    /// Maximum number of subsets an exact computation may enumerate. Exceeding
    /// it is an error up front — never a silently partial maximum.
    pub budget: u64,
    /// Convergence threshold handed to the eigensolver.
    pub eigen_tol: f64,
}

impl Default for RipOptions {
    fn default() -> Self {
        RipOptions {
            budget: DEFAULT_SUBSET_BUDGET,
            eigen_tol: linalg::DEFAULT_EIGEN_TOL,
        }
    }
}

/// An `n x N` measurement matrix plus a measured unit-column flag.
///
/// The flag is honest: it is (re)measured from the data at construction, never
/// asserted. Operations whose guarantees need unit columns (coherence, the
/// extrapolating certifier) refuse to run when it is false; use
/// [`SensingMatrix::normalize_columns`] to rescale explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingMatrix {
    mat: DenseMatrix,
    unit_columns: bool,
}

impl SensingMatrix {
    /// Wraps a dense matrix, measuring whether every column norm is within
    /// [`UNIT_COLUMN_TOL`] of 1.
    pub fn new(mat: DenseMatrix) -> Self {
        let unit = (0..mat.cols()).all(|c| (mat.col_norm_sq(c).sqrt() - 1.0).abs() <= UNIT_COLUMN_TOL);
        SensingMatrix {
            mat,
            unit_columns: unit,
        }
    }

    /// Rescales every column to unit norm. A zero column cannot be normalized
    /// and is an error.
    pub fn normalize_columns(mat: DenseMatrix) -> Result<Self, SensingError> {
        let mut out = mat;
        for c in 0..out.cols() {
            let norm = out.col_norm_sq(c).sqrt();
            if norm == 0.0 {
                return Err(SensingError::InvalidInput(format!(
                    "column {c} is zero and cannot be normalized"
                )));
            }
            for r in 0..out.rows() {
                out.set(r, c, out.get(r, c) / norm);
            }
        }
        Ok(SensingMatrix::new(out))
    }

    /// Number of rows (measurements), usually written `n`.
    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    /// Number of columns (ambient dimension), usually written `N`.
    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn unit_columns(&self) -> bool {
        self.unit_columns
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.mat
    }

    /// True when every entry is exactly zero (the failure convention of the
    /// graph reduction).
    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

// ============================================================================
// Sparse witness vectors
// ============================================================================

/// A sparse vector given by (index, value) pairs with distinct indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// Builds a sparse vector; entries are sorted by index, duplicates and
    /// non-finite values are rejected.
    pub fn new(mut entries: Vec<(usize, f64)>) -> Result<Self, SensingError> {
        entries.sort_by_key(|&(i, _)| i);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SensingError::InvalidInput(format!(
                    "duplicate index {} in sparse vector",
                    w[0].0
                )));
            }
        }
        for &(i, v) in &entries {
            if !v.is_finite() {
                return Err(SensingError::InvalidInput(format!(
                    "non-finite value at index {i}"
                )));
            }
        }
        Ok(SparseVector { entries })
    }

    /// The unit vector spread uniformly over `support`: value `1/√k` at each
    /// of the `k` support indices.
    pub fn uniform(support: &[usize]) -> Result<Self, SensingError> {
        if support.is_empty() {
            return Err(SensingError::InvalidInput(
                "uniform witness needs a nonempty support".to_string(),
            ));
        }
        let v = 1.0 / (support.len() as f64).sqrt();
        SparseVector::new(support.iter().map(|&i| (i, v)).collect())
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v * v).sum()
    }
}

// ============================================================================
// Subset constants
// ============================================================================

/// Validates a subset of column indices: nonempty, in range, distinct, and no
/// larger than the row count.
fn validate_subset(phi: &SensingMatrix, t: &[usize]) -> Result<(), SensingError> {
    if t.is_empty() {
        return Err(SensingError::InvalidInput("empty index set".to_string()));
    }
    if t.len() > phi.rows() {
        return Err(SensingError::OrderTooLarge {
            order: t.len(),
            rows: phi.rows(),
        });
    }
    for &i in t {
        if i >= phi.cols() {
            return Err(SensingError::InvalidInput(format!(
                "column index {i} out of range (matrix has {} columns)",
                phi.cols()
            )));
        }
    }
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(SensingError::InvalidInput(format!(
                "duplicate column index {}",
                w[0]
            )));
        }
    }
    Ok(())
}

/// Scratch buffers for repeated small-subset eigenvalue problems.
struct SubsetScratch {
    gram: Vec<f64>,
    d: Vec<f64>,
    b: Vec<f64>,
    z: Vec<f64>,
}

impl SubsetScratch {
    fn new(k: usize) -> Self {
        SubsetScratch {
            gram: vec![0.0; k * k],
            d: vec![0.0; k],
            b: vec![0.0; k],
            z: vec![0.0; k],
        }
    }
}

/// Spectral radius of `Φ_TᵀΦ_T − Id` where the columns of `Φ` are supplied
/// transposed (`cols.row(j)` is column `j`), using caller-owned scratch.
fn delta_for_subset(
    cols: &DenseMatrix,
    t: &[usize],
    tol: f64,
    scratch: &mut SubsetScratch,
) -> Result<f64, SensingError> {
    let k = t.len();
    debug_assert!(scratch.d.len() >= k);
    let gram = &mut scratch.gram;
    for a in 0..k {
        let ca = cols.row(t[a]);
        for b in a..k {
            let cb = cols.row(t[b]);
            let mut s = 0.0;
            for r in 0..ca.len() {
                s += ca[r] * cb[r];
            }
            gram[a * k + b] = if a == b { s - 1.0 } else { s };
        }
    }
    linalg::jacobi_inplace(
        &mut gram[..k * k],
        k,
        &mut scratch.d[..k],
        &mut scratch.b[..k],
        &mut scratch.z[..k],
        tol,
    )?;
    let mut radius = 0.0_f64;
    for &v in &scratch.d[..k] {
        radius = radius.max(v.abs());
    }
    Ok(radius)
}

/// Subset restricted-isometry constant `δ_T`: the spectral radius of
/// `Φ_TᵀΦ_T − Id_{|T|}`. `T` is a set of column indices (order irrelevant).
pub fn delta_subset(phi: &SensingMatrix, t: &[usize]) -> Result<f64, SensingError> {
    validate_subset(phi, t)?;
    let cols = phi.matrix().transpose();
    let mut scratch = SubsetScratch::new(t.len());
    delta_for_subset(&cols, t, linalg::DEFAULT_EIGEN_TOL, &mut scratch)
}

/// Exact order-`k` restricted-isometry constant `δ_k`: the maximum of `δ_T`
/// over all `C(N, k)` subsets, enumerated in colex order.
///
/// The result does not depend on enumeration order (it is a max of
/// per-subset values, each computed identically). If `C(N, k)` exceeds
/// `opts.budget` the call fails up front with the exact required count.
pub fn rip_delta_exact(phi: &SensingMatrix, k: usize, opts: &RipOptions) -> Result<f64, SensingError> {
    if k == 0 {
        return Err(SensingError::InvalidInput(
            "order must be at least 1".to_string(),
        ));
    }
    if k > phi.rows() {
        return Err(SensingError::OrderTooLarge {
            order: k,
            rows: phi.rows(),
        });
    }
    if k > phi.cols() {
        return Err(SensingError::InvalidInput(format!(
            "order {k} exceeds the number of columns {}",
            phi.cols()
        )));
    }
    let required = binomial(phi.cols() as u64, k as u64);
    if required > opts.budget as u128 {
        return Err(SensingError::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let cols = phi.matrix().transpose();
    let mut scratch = SubsetScratch::new(k);
    let mut it = ColexSubsets::new(phi.cols(), k);
    let mut max_delta = 0.0_f64;
    while let Some(t) = it.next_subset() {
        let d = delta_for_subset(&cols, t, opts.eigen_tol, &mut scratch)?;
        if d > max_delta {
            max_delta = d;
        }
    }
    Ok(max_delta)
}

/// Coherence `μ`: the largest absolute inner product between two distinct
/// columns. Requires unit columns (then `μ` equals the order-2 constant
/// `δ_2`). A single-column matrix has coherence 0.
pub fn coherence(phi: &SensingMatrix) -> Result<f64, SensingError> {
    if !phi.unit_columns() {
        return Err(SensingError::NotNormalized);
    }
    let cols = phi.matrix().transpose();
    let mut mu = 0.0_f64;
    for i in 0..phi.cols() {
        let ci = cols.row(i);
        for j in (i + 1)..phi.cols() {
            let cj = cols.row(j);
            let mut s = 0.0;
            for r in 0..ci.len() {
                s += ci[r] * cj[r];
            }
            mu = mu.max(s.abs());
        }
    }
    Ok(mu)
}

/// Extrapolates an exact order-`m` constant `ε` of a unit-column matrix up to
/// order `k >= m`: the order-`k` constant is at most `ε(k−1)/(m−1)`.
pub fn extrapolate_order(m: usize, epsilon: f64, k: usize) -> Result<f64, SensingError> {
    if m < 2 || k < m {
        return Err(SensingError::InvalidOrder {
            base_order: m,
            target_order: k,
        });
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(SensingError::InvalidInput(format!(
            "base constant must be finite and non-negative, got {epsilon}"
        )));
    }
    if k == m {
        // Extrapolating to the base order itself is the identity.
        return Ok(epsilon);
    }
    Ok(epsilon * ((k - 1) as f64) / ((m - 1) as f64))
}

// ============================================================================
// Certificates
// ============================================================================

/// How a restricted-isometry certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RipMethod {
    /// Exhaustive subset enumeration at a single order.
    Exact,
    /// Extrapolated from the coherence (order-2 constant).
    Coherence,
    /// Extrapolated from a supplied base constant.
    Extrapolated,
    /// Exact base constant plus extrapolation, end to end.
    Lazy,
}

/// A certified claim: for every order `k` in `[k_min, k_max]`, the matrix's
/// order-`k` constant is at most `delta`.
///
/// For the extrapolation-family methods, `delta` is the extrapolated value at
/// `k_max` — i.e. `base_epsilon * (k_max − 1) / (base_order − 1)` — which is
/// the tightest uniform bound the base constant supports on the range. An
/// empty range (`k_max < k_min`) means nothing was certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RipCertificate {
    pub method: RipMethod,
    pub k_min: usize,
    pub k_max: usize,
    pub delta: f64,
    pub base_order: usize,
    pub base_epsilon: f64,
}

impl RipCertificate {
    /// A single-order certificate from an exact computation.
    pub fn exact(k: usize, delta: f64) -> Self {
        RipCertificate {
            method: RipMethod::Exact,
            k_min: k,
            k_max: k,
            delta,
            base_order: k,
            base_epsilon: delta,
        }
    }

    /// Whether the certificate claims anything at all.
    pub fn is_certified(&self) -> bool {
        self.k_max >= self.k_min
    }

    /// Whether order `k` is inside the certified range.
    pub fn covers(&self, k: usize) -> bool {
        self.k_min <= k && k <= self.k_max
    }
}

/// Builds an extrapolation-family certificate from an exact base constant:
/// the certified range is `[m, k_max]` where `k_max` is the largest order
/// (capped at `cap`) whose extrapolated constant stays within `delta`.
pub(crate) fn certificate_from_base(
    method: RipMethod,
    m: usize,
    base_epsilon: f64,
    delta: f64,
    cap: usize,
) -> RipCertificate {
    debug_assert!(m >= 2 && cap >= m);
    let extrapolated = |k: usize| base_epsilon * ((k - 1) as f64) / ((m - 1) as f64);
    let k_max = if base_epsilon == 0.0 {
        // A perfect base isometry extrapolates to every order.
        cap
    } else {
        let fits = |k: usize| extrapolated(k) <= delta * (1.0 + EXTRAPOLATION_SLACK);
        if !fits(m) {
            m - 1
        } else {
            // Start from the algebraic estimate, then settle the boundary by
            // direct evaluation so the result is bit-exact.
            let est = 1.0 + delta * ((m - 1) as f64) / base_epsilon;
            let mut k = if est >= cap as f64 { cap } else { est as usize };
            k = k.clamp(m, cap);
            while k < cap && fits(k + 1) {
                k += 1;
            }
            while k > m && !fits(k) {
                k -= 1;
            }
            k
        }
    };
    let delta_attained = if k_max >= 1 {
        extrapolated(k_max.max(1))
    } else {
        0.0
    };
    RipCertificate {
        method,
        k_min: m,
        k_max,
        delta: delta_attained,
        base_order: m,
        base_epsilon,
    }
}

/// The lazy certifier: computes the exact order-`m` constant `ε`, then
/// certifies every order `k` with `ε(k−1)/(m−1) ≤ delta`, capped at the row
/// count. Requires unit columns, `2 ≤ m ≤ n`, and `delta ∈ ]0,1[`.
///
/// If even order `m` misses the target (`ε > delta`), the returned
/// certificate has the empty range `[m, m−1]` — check
/// [`RipCertificate::is_certified`].
pub fn lazy_certify(
    phi: &SensingMatrix,
    m: usize,
    delta: f64,
    opts: &RipOptions,
) -> Result<RipCertificate, SensingError> {
    if !phi.unit_columns() {
        return Err(SensingError::NotNormalized);
    }
    if m < 2 || m > phi.rows() {
        return Err(SensingError::InvalidOrder {
            base_order: m,
            target_order: m,
        });
    }
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(SensingError::InvalidInput(format!(
            "target delta must lie in ]0,1[, got {delta}"
        )));
    }
    let eps = rip_delta_exact(phi, m, opts)?;
    Ok(certificate_from_base(
        RipMethod::Lazy,
        m,
        eps,
        delta,
        phi.rows(),
    ))
}

/// Checks whether the sparse vector `x` witnesses a violation of the
/// restricted isometry property with parameter `delta`:
/// returns `true` iff `| ‖Φx‖²/‖x‖² − 1 | > delta`.
pub fn check_rip_witness(
    phi: &SensingMatrix,
    x: &SparseVector,
    delta: f64,
) -> Result<bool, SensingError> {
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(SensingError::InvalidInput(format!(
            "delta must lie in ]0,1[, got {delta}"
        )));
    }
    for &(i, _) in x.entries() {
        if i >= phi.cols() {
            return Err(SensingError::InvalidInput(format!(
                "witness index {i} out of range (matrix has {} columns)",
                phi.cols()
            )));
        }
    }
    let norm_sq = x.norm_sq();
    if norm_sq == 0.0 {
        return Err(SensingError::InvalidInput(
            "witness vector is zero".to_string(),
        ));
    }
    let m = phi.matrix();
    let mut y = vec![0.0; m.rows()];
    for &(c, v) in x.entries() {
        for (r, yr) in y.iter_mut().enumerate() {
            *yr += v * m.get(r, c);
        }
    }
    let image_sq: f64 = y.iter().map(|v| v * v).sum();
    Ok((image_sq / norm_sq - 1.0).abs() > delta)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    /// The running 2x3 example: two unit coordinate columns plus their
    /// normalized sum.
    fn phi_2x3() -> SensingMatrix {
        SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![1.0, 0.0, FRAC_1_SQRT_2],
            vec![0.0, 1.0, FRAC_1_SQRT_2],
        ]))
    }

    fn default_opts() -> RipOptions {
        RipOptions::default()
    }

    // --- SensingMatrix ---

    #[test]
    fn unit_column_flag_is_measured() {
        assert!(phi_2x3().unit_columns());
        let skewed = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![2.0, 0.0],
            vec![0.0, 1.0],
        ]));
        assert!(!skewed.unit_columns());
    }

    #[test]
    fn normalize_columns_rescales() {
        let m = DenseMatrix::from_rows(vec![vec![3.0, 0.0], vec![4.0, 2.0]]);
        let phi = SensingMatrix::normalize_columns(m).unwrap();
        assert!(phi.unit_columns());
        assert!((phi.matrix().get(0, 0) - 0.6).abs() <= 1e-15);
        assert!((phi.matrix().get(1, 0) - 0.8).abs() <= 1e-15);
    }

    #[test]
    fn normalize_rejects_zero_column() {
        let m = DenseMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        assert!(matches!(
            SensingMatrix::normalize_columns(m),
            Err(SensingError::InvalidInput(_))
        ));
    }

    // --- delta_subset ---

    #[test]
    fn delta_subset_orthonormal_pair_is_zero() {
        let d = delta_subset(&phi_2x3(), &[0, 1]).unwrap();
        assert!(d.abs() <= 1e-12);
    }

    #[test]
    fn delta_subset_correlated_pairs() {
        let phi = phi_2x3();
        for t in [[0usize, 2], [1, 2]] {
            let d = delta_subset(&phi, &t).unwrap();
            assert!((d - FRAC_1_SQRT_2).abs() <= 1e-12, "delta {d}");
        }
    }

    #[test]
    fn delta_subset_order_irrelevant() {
        let phi = phi_2x3();
        assert_eq!(
            delta_subset(&phi, &[0, 2]).unwrap(),
            delta_subset(&phi, &[2, 0]).unwrap()
        );
    }

    #[test]
    fn delta_subset_validation() {
        let phi = phi_2x3();
        assert!(matches!(
            delta_subset(&phi, &[0, 1, 2]),
            Err(SensingError::OrderTooLarge { order: 3, rows: 2 })
        ));
        assert!(matches!(
            delta_subset(&phi, &[0, 7]),
            Err(SensingError::InvalidInput(_))
        ));
        assert!(matches!(
            delta_subset(&phi, &[1, 1]),
            Err(SensingError::InvalidInput(_))
        ));
        assert!(matches!(
            delta_subset(&phi, &[]),
            Err(SensingError::InvalidInput(_))
        ));
    }

    // --- rip_delta_exact ---

    #[test]
    fn rip_delta_exact_small_example() {
        let phi = phi_2x3();
        let d2 = rip_delta_exact(&phi, 2, &default_opts()).unwrap();
        assert!((d2 - FRAC_1_SQRT_2).abs() <= 1e-12);
        let d1 = rip_delta_exact(&phi, 1, &default_opts()).unwrap();
        assert!(d1.abs() <= 1e-12);
    }

    #[test]
    fn rip_delta_exact_duplicate_columns() {
        let phi = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![1.0, 1.0],
            vec![0.0, 0.0],
        ]));
        let d = rip_delta_exact(&phi, 2, &default_opts()).unwrap();
        assert!((d - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rip_delta_exact_budget() {
        // C(30, 10) = 30_045_015 exceeds the default budget.
        let mut rows = Vec::new();
        for r in 0..12 {
            rows.push((0..30).map(|c| ((r * 31 + c * 7) % 5) as f64 - 2.0).collect());
        }
        let phi = SensingMatrix::normalize_columns(DenseMatrix::from_rows(rows)).unwrap();
        match rip_delta_exact(&phi, 10, &default_opts()) {
            Err(SensingError::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 30_045_015);
                assert_eq!(budget, DEFAULT_SUBSET_BUDGET);
            }
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn rip_delta_exact_order_validation() {
        let phi = phi_2x3();
        assert!(matches!(
            rip_delta_exact(&phi, 3, &default_opts()),
            Err(SensingError::OrderTooLarge { .. })
        ));
        assert!(matches!(
            rip_delta_exact(&phi, 0, &default_opts()),
            Err(SensingError::InvalidInput(_))
        ));
    }

    #[test]
    fn rip_delta_exact_is_enumeration_order_independent() {
        // Folding per-subset constants in reverse must give bit-identical
        // results to the colex sweep.
        let phi = phi_2x3();
        let forward = rip_delta_exact(&phi, 2, &default_opts()).unwrap();
        let mut subsets = ColexSubsets::new(3, 2).collect_all();
        subsets.reverse();
        let mut max = 0.0_f64;
        for t in &subsets {
            let d = delta_subset(&phi, t).unwrap();
            if d > max {
                max = d;
            }
        }
        assert_eq!(forward, max);
    }

    // --- coherence ---

    #[test]
    fn coherence_of_running_example() {
        let mu = coherence(&phi_2x3()).unwrap();
        assert!((mu - FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn coherence_requires_unit_columns() {
        let phi = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![2.0, 0.0],
            vec![0.0, 1.0],
        ]));
        assert!(matches!(coherence(&phi), Err(SensingError::NotNormalized)));
    }

    #[test]
    fn coherence_single_column_is_zero() {
        let phi = SensingMatrix::new(DenseMatrix::from_rows(vec![vec![1.0], vec![0.0]]));
        assert_eq!(coherence(&phi).unwrap(), 0.0);
    }

    #[test]
    fn coherence_equals_order_two_constant() {
        let phi = phi_2x3();
        let mu = coherence(&phi).unwrap();
        let d2 = rip_delta_exact(&phi, 2, &default_opts()).unwrap();
        assert!((mu - d2).abs() <= 1e-10);
    }

    // --- extrapolate_order ---

    #[test]
    fn extrapolation_values() {
        let v = extrapolate_order(2, 0.05, 4).unwrap();
        assert!((v - 0.15).abs() <= 1e-12);
        let same = extrapolate_order(4, 0.2, 4).unwrap();
        assert_eq!(same, 0.2);
    }

    #[test]
    fn extrapolation_rejects_bad_orders() {
        assert!(matches!(
            extrapolate_order(1, 0.1, 3),
            Err(SensingError::InvalidOrder { .. })
        ));
        assert!(matches!(
            extrapolate_order(3, 0.1, 2),
            Err(SensingError::InvalidOrder { .. })
        ));
        assert!(matches!(
            extrapolate_order(2, -0.1, 3),
            Err(SensingError::InvalidInput(_))
        ));
    }

    // --- lazy_certify ---

    #[test]
    fn lazy_certify_identity_covers_everything() {
        let phi = SensingMatrix::new(DenseMatrix::identity(5));
        let cert = lazy_certify(&phi, 2, 0.1, &default_opts()).unwrap();
        assert_eq!(cert.method, RipMethod::Lazy);
        assert_eq!((cert.k_min, cert.k_max), (2, 5));
        assert_eq!(cert.base_epsilon, 0.0);
        assert_eq!(cert.delta, 0.0);
        assert!(cert.is_certified());
        assert!(cert.covers(5));
        assert!(!cert.covers(6));
    }

    #[test]
    fn lazy_certify_boundary_order_is_kept() {
        // Base constant exactly 0.1, target 0.3: order 4 sits exactly on the
        // boundary (0.1 * 3 = 0.3) and must be certified despite the rounding
        // of 0.1 * 3 one ulp above 0.3.
        let phi = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![1.0, 0.1],
            vec![0.0, (1.0_f64 - 0.01).sqrt()],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
        ]));
        assert!(phi.unit_columns());
        let cert = lazy_certify(&phi, 2, 0.3, &default_opts()).unwrap();
        assert_eq!(cert.k_max, 4, "boundary order dropped");
        assert!((cert.base_epsilon - 0.1).abs() <= 1e-12);
        // The recorded delta is the extrapolated value attained at k_max.
        let expected = extrapolate_order(2, cert.base_epsilon, cert.k_max).unwrap();
        assert!((cert.delta - expected).abs() <= 1e-12);
    }

    #[test]
    fn lazy_certify_not_certified_when_base_misses() {
        let phi = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![1.0, 1.0],
            vec![0.0, 0.0],
        ]));
        let cert = lazy_certify(&phi, 2, 0.3, &default_opts()).unwrap();
        assert!(!cert.is_certified());
        assert_eq!(cert.k_max, 1);
        assert_eq!(cert.k_min, 2);
    }

    #[test]
    fn lazy_certify_validation() {
        let phi = phi_2x3();
        assert!(matches!(
            lazy_certify(&phi, 1, 0.3, &default_opts()),
            Err(SensingError::InvalidOrder { .. })
        ));
        assert!(matches!(
            lazy_certify(&phi, 2, 1.5, &default_opts()),
            Err(SensingError::InvalidInput(_))
        ));
        let unnormalized = SensingMatrix::new(DenseMatrix::from_rows(vec![
            vec![2.0, 0.0],
            vec![0.0, 1.0],
        ]));
        assert!(matches!(
            lazy_certify(&unnormalized, 2, 0.3, &default_opts()),
            Err(SensingError::NotNormalized)
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = RipCertificate::exact(3, 0.25);
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"method\":\"exact\""));
        for key in ["k_min", "k_max", "delta", "base_order", "base_epsilon"] {
            assert!(json.contains(&format!("\"{key}\"")), "missing key {key}");
        }
        let back: RipCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    // --- check_rip_witness ---

    #[test]
    fn witness_detects_violation() {
        let phi = phi_2x3();
        let x = SparseVector::new(vec![(0, 1.0), (2, 1.0)]).unwrap();
        // ‖Φx‖²/‖x‖² = 1 + 1/√2.
        assert!(check_rip_witness(&phi, &x, 0.5).unwrap());
        assert!(!check_rip_witness(&phi, &x, 0.75).unwrap());
    }

    #[test]
    fn witness_validation() {
        let phi = phi_2x3();
        let zero = SparseVector::new(vec![(0, 0.0)]).unwrap();
        assert!(matches!(
            check_rip_witness(&phi, &zero, 0.5),
            Err(SensingError::InvalidInput(_))
        ));
        let oob = SparseVector::new(vec![(9, 1.0)]).unwrap();
        assert!(matches!(
            check_rip_witness(&phi, &oob, 0.5),
            Err(SensingError::InvalidInput(_))
        ));
        let x = SparseVector::new(vec![(0, 1.0)]).unwrap();
        assert!(matches!(
            check_rip_witness(&phi, &x, 0.0),
            Err(SensingError::InvalidInput(_))
        ));
    }

    #[test]
    fn sparse_vector_construction() {
        assert!(matches!(
            SparseVector::new(vec![(1, 1.0), (1, 2.0)]),
            Err(SensingError::InvalidInput(_))
        ));
        assert!(matches!(
            SparseVector::new(vec![(0, f64::NAN)]),
            Err(SensingError::InvalidInput(_))
        ));
        let u = SparseVector::uniform(&[3, 1, 5]).unwrap();
        assert_eq!(u.support_size(), 3);
        assert!((u.norm_sq() - 1.0).abs() <= 1e-12);
        let expect = 1.0 / 3.0_f64.sqrt();
        assert!(u.entries().iter().all(|&(_, v)| (v - expect).abs() <= 1e-15));
    }

    // --- certificate_from_base boundary behaviour ---

    mod proptests {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            #[test]
            fn certificate_range_is_maximal(
                eps in 1e-3..1.0_f64,
                delta in 1e-3..1.0_f64,
                m in 2usize..6,
                cap_extra in 0usize..40,
            ) {
                let cap = m + cap_extra;
                let cert = certificate_from_base(RipMethod::Lazy, m, eps, delta, cap);
                let fits = |k: usize| {
                    extrapolate_order(m, eps, k).unwrap() <= delta * (1.0 + 1e-12)
                };
                if cert.is_certified() {
                    prop_assert!(fits(cert.k_max));
                    if cert.k_max < cap {
                        prop_assert!(!fits(cert.k_max + 1));
                    }
                    // Recorded delta is the attained extrapolation at k_max.
                    let attained = extrapolate_order(m, eps, cert.k_max).unwrap();
                    prop_assert!((cert.delta - attained).abs() <= 1e-12 * attained.max(1.0));
                } else {
                    prop_assert_eq!(cert.k_max, m - 1);
                    prop_assert!(!fits(m));
                }
            }

            #[test]
            fn extrapolation_monotone_in_order(
                eps in 0.0..1.0_f64,
                m in 2usize..6,
                k in 0usize..30,
            ) {
                let k1 = m + k;
                let v1 = extrapolate_order(m, eps, k1).unwrap();
                let v2 = extrapolate_order(m, eps, k1 + 1).unwrap();
                prop_assert!(v2 >= v1);
            }
        }
    }
}
