//! Seeded generators for the random models: G(n,1/2) graphs, symmetric ±1
//! matrices, Bernoulli sensing matrices, and the Cholesky-factor model.
//!
//! Everything here is a pure function of (parameters, seed). A [`Seed`] pairs
//! a base value with a stream index on a counter-based PRNG (ChaCha8), so
//! stream `i` is independent of evaluation order: parallel Monte Carlo runs
//! give each sample its own stream and produce bit-identical results at any
//! thread count. Random bits for matrix/graph entries are consumed at fixed
//! positions derived from the entry's canonical pair index — never from
//! insertion order.

use crate::graphs::Graph;
use crate::linalg::{self, DenseMatrix, LinalgError, SymMatrix};
use crate::sensing::SensingMatrix;
pub use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::fmt;

// ============================================================================
// Errors
// ============================================================================

/// Errors reported by the generators.
#[derive(Debug, Clone, PartialEq)]
pub enum RandomError {
    /// Parameter outside its domain.
    InvalidInput(String),
    /// An unexpected linear algebra failure (anything other than the PSD
    /// failure the Cholesky model is defined to absorb).
    Linalg(LinalgError),
}

impl fmt::Display for RandomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            RandomError::Linalg(e) => write!(f, "linear algebra failure: {e}"),
        }
    }
}

impl std::error::Error for RandomError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            RandomError::Linalg(e) => Some(e),
            _ => None,
        }
    }
}

impl From<LinalgError> for RandomError {
    fn from(e: LinalgError) -> Self {
        RandomError::Linalg(e)
    }
}

// ============================================================================
// Seeds
// ============================================================================

/// A (base, stream) pair that fully determines every generated object.
///
/// Convention used throughout the toolkit: sample `i` of a Monte Carlo run
/// draws from stream `i`; when one sample needs several independent sources
/// (say a graph plus a planted subset), the extras use [`Seed::aux`] channels,
/// which offset the stream index into a disjoint high range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub base: u64,
    pub stream: u64,
}

impl Seed {
    /// Seed with stream 0.
    pub fn new(base: u64) -> Self {
        Seed { base, stream: 0 }
    }

    /// Same base, explicit stream index.
    pub fn with_stream(self, stream: u64) -> Self {
        Seed {
            base: self.base,
            stream,
        }
    }

    /// An auxiliary channel for the same logical sample: shifts the channel
    /// number into the top bits of the stream index, so channels stay
    /// disjoint for any realistic number of samples.
    pub fn aux(self, channel: u64) -> Self {
        Seed {
            base: self.base,
            stream: self.stream.wrapping_add(channel << 48),
        }
    }
}

/// The PRNG behind every generator.
pub fn rng(seed: Seed) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed.base);
    r.set_stream(seed.stream);
    r
}

// ============================================================================
// Primitive draws
// ============================================================================

/// Unbiased uniform draw from `{0, …, bound−1}` by rejection. Panics if
/// `bound` is zero.
pub fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    assert!(bound > 0, "bound must be positive");
    let zone = (u64::MAX / bound) * bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// A uniformly random `k`-subset of `{0, …, n−1}`, returned sorted
/// (partial Fisher–Yates). Panics if `k > n`.
pub fn sample_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n, "subset size exceeds ground set");
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + uniform_below(rng, (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    let mut out = pool[..k].to_vec();
    out.sort_unstable();
    out
}

/// Draws `count` whole words from the stream.
fn draw_words(rng: &mut ChaCha8Rng, count: usize) -> Vec<u64> {
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Bit `p` of a pre-drawn word buffer.
#[inline]
fn bit_at(words: &[u64], p: usize) -> bool {
    (words[p / 64] >> (p % 64)) & 1 == 1
}

/// Canonical index of the unordered pair `{i, j}` with `i < j`.
#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

// ============================================================================
// Generators
// ============================================================================

/// A G(n, 1/2) graph: each of the `n(n−1)/2` pairs is an edge independently
/// with probability 1/2. Pair `{i, j}` consumes the bit at its canonical pair
/// index, so the sample depends only on the seed.
pub fn gen_gnp_half(n: usize, seed: Seed) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let words = draw_words(&mut rng(seed), pairs.div_ceil(64));
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if bit_at(&words, pair_index(i, j)) {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}

/// A symmetric matrix with zero diagonal and iid ±1 entries above it (the
/// graph-free analogue of a signed adjacency matrix). Shares the pair-index
/// bit mapping of [`gen_gnp_half`].
pub fn gen_model_a(k: usize, seed: Seed) -> SymMatrix {
    let pairs = k * k.saturating_sub(1) / 2;
    let words = draw_words(&mut rng(seed), pairs.div_ceil(64));
    SymMatrix::from_fn(k, |i, j| {
        if i == j {
            0.0
        } else if bit_at(&words, pair_index(j, i)) {
            1.0
        } else {
            -1.0
        }
    })
}

/// An `n x N` matrix with iid entries `±1/√n`; every column has unit norm, so
/// the unit-column flag of the result is always set.
pub fn gen_bernoulli_sensing(n: usize, cols: usize, seed: Seed) -> SensingMatrix {
    let total = n * cols;
    let words = draw_words(&mut rng(seed), total.div_ceil(64));
    let v = 1.0 / (n as f64).sqrt();
    let mut m = DenseMatrix::zeros(n, cols);
    for r in 0..n {
        for c in 0..cols {
            let sign = if bit_at(&words, r * cols + c) { v } else { -v };
            m.set(r, c, sign);
        }
    }
    SensingMatrix::new(m)
}

/// A draw from the Cholesky-factor model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelC {
    /// `C` with `CᵀC = Id + cA/√n`, or the zero matrix on PSD failure.
    pub matrix: SensingMatrix,
    /// Whether `Id + cA/√n` failed to be positive semidefinite.
    pub psd_failure: bool,
}

/// Draws `A` (as [`gen_model_a`] would from the same seed), forms
/// `B = Id + cA/√n`, and returns its Cholesky factor — or the zero matrix
/// with the failure flag set when `B` is not positive semidefinite, which is
/// the model's defined behaviour, not an error.
pub fn gen_model_c(n: usize, c: f64, seed: Seed) -> Result<ModelC, RandomError> {
    if n == 0 {
        return Err(RandomError::InvalidInput(
            "dimension must be at least 1".to_string(),
        ));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(RandomError::InvalidInput(format!(
            "scale must be finite and non-negative, got {c}"
        )));
    }
    let a = gen_model_a(n, seed);
    let scale = c / (n as f64).sqrt();
    let b = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            a.get(i, j) * scale
        }
    });
    match linalg::cholesky(&b, linalg::default_psd_tol(&b)) {
        Ok(factor) => Ok(ModelC {
            matrix: SensingMatrix::new(factor),
            psd_failure: false,
        }),
        Err(LinalgError::NotPsd { .. }) => Ok(ModelC {
            matrix: SensingMatrix::new(DenseMatrix::zeros(n, n)),
            psd_failure: true,
        }),
        Err(other) => Err(RandomError::Linalg(other)),
    }
}

// ============================================================================
// Tests
// ============================================================================
