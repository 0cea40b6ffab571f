//! Dense linear algebra kernels: symmetric eigenvalues via cyclic Jacobi
//! rotations, Cholesky factorization with an explicit PSD tolerance, and
//! operator norms.
//!
//! Everything is real `f64`. The Jacobi solver is simple and provably
//! convergent; it is intended for dimensions up to a couple thousand, which
//! covers every consumer in this workspace. All routines are deterministic:
//! identical inputs produce bit-identical outputs.

use std::fmt;

/// Default convergence threshold for the Jacobi sweep, relative to the
/// Frobenius norm of the input.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Relative factor for the default Cholesky pivot tolerance; see
/// [`default_psd_tol`].
pub const PSD_TOL_REL: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 50;

/// One plane rotation applied to the entry pair `(a[i], a[j])`.
#[inline(always)]
fn rotate(a: &mut [f64], s: f64, tau: f64, i: usize, j: usize) {
    let g = a[i];
    let h = a[j];
    a[i] = g - s * (h + g * tau);
    a[j] = h + s * (g - h * tau);
}

// ============================================================================
// Errors
// ============================================================================

/// Errors reported by the kernels in this module.
#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// An input entry was NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// A tolerance argument was not a finite positive number (or, for the
    /// Cholesky pivot tolerance, not finite and non-negative).
    InvalidTolerance(f64),
    /// Cholesky hit a pivot below `-psd_tol`: the matrix is not positive
    /// semidefinite within the requested tolerance.
    NotPsd { pivot_index: usize, pivot: f64 },
    /// The Jacobi sweep failed to reach the requested threshold. This is not
    /// expected on any finite input; it exists so the solver can fail loudly
    /// instead of spinning.
    NoConvergence { sweeps: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            LinalgError::InvalidTolerance(t) => write!(f, "invalid tolerance {t}"),
            LinalgError::NotPsd { pivot_index, pivot } => write!(
                f,
                "matrix is not positive semidefinite: pivot {pivot} at index {pivot_index}"
            ),
            LinalgError::NoConvergence { sweeps } => {
                write!(f, "Jacobi sweep did not converge after {sweeps} sweeps")
            }
        }
    }
}

impl std::error::Error for LinalgError {}

// ============================================================================
// Symmetric matrices (one stored triangle)
// ============================================================================

/// A real symmetric matrix. Symmetry is enforced structurally: only the lower
/// triangle (including the diagonal) is stored, packed row-major, so the two
/// mirror entries cannot disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    // Packed lower triangle: entry (i, j) with j <= i lives at i*(i+1)/2 + j.
    tri: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of dimension `dim` (`dim >= 1`).
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "SymMatrix dimension must be at least 1");
        SymMatrix {
            dim,
            tri: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from a function evaluated on the lower triangle:
    /// `f(i, j)` is called once per pair with `j <= i`.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(dim: usize, mut f: F) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.tri[i * (i + 1) / 2 + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim);
        if i >= j {
            i * (i + 1) / 2 + j
        } else {
            j * (j + 1) / 2 + i
        }
    }

    /// Entry `(i, j)`; the mirror entry is the same storage slot.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.tri[self.idx(i, j)]
    }

    /// Sets entry `(i, j)` (and thereby `(j, i)`).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.tri[k] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm, accumulated in a fixed order (diagonal term plus twice
    /// each strict lower-triangle term, row by row).
    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                let a = self.get(i, j);
                s += if i == j { a * a } else { 2.0 * (a * a) };
            }
        }
        s.sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.tri.iter().fold(0.0_f64, |m, &a| m.max(a.abs()))
    }

    /// First non-finite entry, if any, as `(row, col)` with `col <= row`.
    pub fn find_non_finite(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..=i {
                if !self.get(i, j).is_finite() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Expands to a full row-major square buffer.
    pub fn to_full(&self) -> Vec<f64> {
        let n = self.dim;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.get(i, j);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    /// Expands to a [`DenseMatrix`].
    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix {
            rows: self.dim,
            cols: self.dim,
            data: self.to_full(),
        }
    }

    /// Applies the matrix to a vector.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        let mut y = vec![0.0; self.dim];
        for i in 0..self.dim {
            let mut s = 0.0;
            for j in 0..self.dim {
                s += self.get(i, j) * x[j];
            }
            y[i] = s;
        }
        y
    }
}

// ============================================================================
// Dense rectangular matrices
// ============================================================================

/// A dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Zero matrix of shape `rows x cols` (both at least 1).
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be at least 1");
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = DenseMatrix::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from whole rows; panics if the rows are ragged or empty.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(cols >= 1, "matrix must have at least one column");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        DenseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from a row-major buffer; panics on a length mismatch.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be at least 1");
        assert_eq!(data.len(), rows * cols, "buffer length mismatch");
        DenseMatrix { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Row `r` as a contiguous slice.
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        let mut y = vec![0.0; self.rows];
        for r in 0..self.rows {
            let row = self.row(r);
            let mut s = 0.0;
            for c in 0..self.cols {
                s += row[c] * x[c];
            }
            y[r] = s;
        }
        y
    }

    /// Squared Euclidean norm of column `c`.
    pub fn col_norm_sq(&self, c: usize) -> f64 {
        let mut s = 0.0;
        for r in 0..self.rows {
            let v = self.get(r, c);
            s += v * v;
        }
        s
    }

    /// Gram matrix of the columns, `AᵀA`.
    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.cols, |i, j| {
            let mut s = 0.0;
            for r in 0..self.rows {
                s += self.get(r, i) * self.get(r, j);
            }
            s
        })
    }

    /// Gram matrix of the rows, `AAᵀ`.
    pub fn gram_rows(&self) -> SymMatrix {
        SymMatrix::from_fn(self.rows, |i, j| {
            let (ri, rj) = (self.row(i), self.row(j));
            let mut s = 0.0;
            for c in 0..self.cols {
                s += ri[c] * rj[c];
            }
            s
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &a| m.max(a.abs()))
    }

    /// First non-finite entry, if any.
    pub fn find_non_finite(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_finite() {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }
}

// ============================================================================
// Jacobi eigenvalues
// ============================================================================

/// Cyclic Jacobi sweep over the upper triangle of the full row-major buffer
/// `a` (`n x n`, only the upper triangle is read/written). On success `d`
/// holds the eigenvalues, unsorted. `b` and `z` are scratch of length `n`.
///
/// Converges when the sum of absolute off-diagonal entries drops below
/// `tol * fro` (or to exactly zero), where `fro` is the Frobenius norm of the
/// input. Every operation is either scale-free or linear in the matrix, so
/// scaling the input by a power of two scales the output eigenvalues exactly.
pub(crate) fn jacobi_inplace(
    a: &mut [f64],
    n: usize,
    d: &mut [f64],
    b: &mut [f64],
    z: &mut [f64],
    tol: f64,
) -> Result<(), LinalgError> {
    debug_assert_eq!(a.len(), n * n);
    let mut fro_sq = 0.0;
    for p in 0..n {
        let app = a[p * n + p];
        fro_sq += app * app;
        for q in (p + 1)..n {
            let apq = a[p * n + q];
            fro_sq += 2.0 * (apq * apq);
        }
    }
    let stop = tol * fro_sq.sqrt();

    for i in 0..n {
        d[i] = a[i * n + i];
        b[i] = d[i];
        z[i] = 0.0;
    }

    for sweep in 1..=MAX_JACOBI_SWEEPS {
        let mut sm = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sm += a[p * n + q].abs();
            }
        }
        if sm == 0.0 || sm < stop {
            return Ok(());
        }
        let tresh = if sweep < 4 {
            0.2 * sm / ((n * n) as f64)
        } else {
            0.0
        };
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                // After a few sweeps, an off-diagonal entry that no longer
                // affects its diagonal neighbours at working precision is
                // flushed to zero instead of rotated.
                if sweep > 4 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = 0.0;
                } else if apq.abs() > tresh {
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            -t
                        } else {
                            t
                        }
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p * n + q] = 0.0;
                    for j in 0..p {
                        rotate(a, s, tau, j * n + p, j * n + q);
                    }
                    for j in (p + 1)..q {
                        rotate(a, s, tau, p * n + j, j * n + q);
                    }
                    for j in (q + 1)..n {
                        rotate(a, s, tau, p * n + j, q * n + j);
                    }
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    Err(LinalgError::NoConvergence {
        sweeps: MAX_JACOBI_SWEEPS,
    })
}

fn validate_eigen_tol(tol: f64) -> Result<(), LinalgError> {
    if !tol.is_finite() || tol <= 0.0 || tol >= 1.0 {
        return Err(LinalgError::InvalidTolerance(tol));
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix, sorted in descending order
/// (threshold [`DEFAULT_EIGEN_TOL`]).
pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>, LinalgError> {
    sym_eigenvalues_with_tol(m, DEFAULT_EIGEN_TOL)
}

/// Eigenvalues of a symmetric matrix, sorted in descending order.
///
/// `tol` is the relative convergence threshold (use [`DEFAULT_EIGEN_TOL`]
/// unless there is a reason not to): the sweep stops once the off-diagonal
/// residual of the implicitly diagonalized matrix is below `tol` times the
/// Frobenius norm of the input. The returned values sum to the trace up to
/// `dim * tol * ‖m‖_F`.
pub fn sym_eigenvalues_with_tol(m: &SymMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    validate_eigen_tol(tol)?;
    if let Some((row, col)) = m.find_non_finite() {
        return Err(LinalgError::NonFinite { row, col });
    }
    let n = m.dim();
    let mut a = m.to_full();
    let mut d = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut z = vec![0.0; n];
    jacobi_inplace(&mut a, n, &mut d, &mut b, &mut z, tol)?;
    d.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    Ok(d)
}

/// Largest absolute eigenvalue of a symmetric matrix, with an explicit
/// convergence threshold.
pub fn spectral_radius_with_tol(m: &SymMatrix, tol: f64) -> Result<f64, LinalgError> {
    let eig = sym_eigenvalues_with_tol(m, tol)?;
    Ok(eig[0].abs().max(eig[eig.len() - 1].abs()))
}

/// Largest absolute eigenvalue of a symmetric matrix
/// (threshold [`DEFAULT_EIGEN_TOL`]).
pub fn spectral_radius(m: &SymMatrix) -> Result<f64, LinalgError> {
    spectral_radius_with_tol(m, DEFAULT_EIGEN_TOL)
}

// ============================================================================
// Cholesky
// ============================================================================

/// Default pivot tolerance for [`cholesky`]: `1e-10` times the largest
/// absolute entry of the matrix.
pub fn default_psd_tol(m: &SymMatrix) -> f64 {
    PSD_TOL_REL * m.max_abs()
}

/// Cholesky factorization `b = CᵀC` with `C` upper triangular.
///
/// Pivot handling: a pivot below `-psd_tol` aborts with
/// [`LinalgError::NotPsd`]; a pivot in `[-psd_tol, 0]` is clamped to zero and
/// the remainder of its row is set to zero (the semidefinite convention).
/// When a factor is returned, `CᵀC` reproduces `b` entrywise within
/// `10 * psd_tol * dim` on positive semidefinite inputs.
pub fn cholesky(b: &SymMatrix, psd_tol: f64) -> Result<DenseMatrix, LinalgError> {
    if !psd_tol.is_finite() || psd_tol < 0.0 {
        return Err(LinalgError::InvalidTolerance(psd_tol));
    }
    if let Some((row, col)) = b.find_non_finite() {
        return Err(LinalgError::NonFinite { row, col });
    }
    let n = b.dim();
    let mut r = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let mut s = b.get(i, i);
        for k in 0..i {
            let rki = r.get(k, i);
            s -= rki * rki;
        }
        if s < -psd_tol {
            return Err(LinalgError::NotPsd {
                pivot_index: i,
                pivot: s,
            });
        }
        let rii = if s <= 0.0 { 0.0 } else { s.sqrt() };
        r.set(i, i, rii);
        for j in (i + 1)..n {
            let mut t = b.get(i, j);
            for k in 0..i {
                t -= r.get(k, i) * r.get(k, j);
            }
            r.set(i, j, if rii == 0.0 { 0.0 } else { t / rii });
        }
    }
    Ok(r)
}

// ============================================================================
// Operator norm
// ============================================================================

/// Operator (spectral) norm of a rectangular matrix, with an explicit
/// eigensolver threshold: the square root of the largest eigenvalue of the
/// Gram matrix of the smaller side.
pub fn operator_norm_with_tol(m: &DenseMatrix, tol: f64) -> Result<f64, LinalgError> {
    if let Some((row, col)) = m.find_non_finite() {
        return Err(LinalgError::NonFinite { row, col });
    }
    let gram = if m.rows() <= m.cols() {
        m.gram_rows()
    } else {
        m.gram()
    };
    let eig = sym_eigenvalues_with_tol(&gram, tol)?;
    Ok(eig[0].max(0.0).sqrt())
}

/// Operator (spectral) norm of a rectangular matrix
/// (threshold [`DEFAULT_EIGEN_TOL`]).
pub fn operator_norm(m: &DenseMatrix) -> Result<f64, LinalgError> {
    operator_norm_with_tol(m, DEFAULT_EIGEN_TOL)
}

// ============================================================================
// Tests
// ============================================================================
