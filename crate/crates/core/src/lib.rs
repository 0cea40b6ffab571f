//! Core library for the `ripcert` toolkit.
//!
//! The crate is organized around three pillars and the glue between them:
//!
//! * [`linalg`] — dense symmetric eigenvalues (cyclic Jacobi), Cholesky with
//!   explicit PSD tolerance handling, and operator norms. Everything downstream
//!   is built on these kernels.
//! * [`sensing`] — restricted-isometry constants: exact per-order computation by
//!   subset enumeration, coherence, order extrapolation, and the lazy certifier
//!   that turns one exact low-order constant into a certified order range.
//! * [`graphs`] — signed/skewed adjacency matrices of simple graphs, exact
//!   densest-k-subgraph search, and the two spectral certifiers of subgraph
//!   sparsity.
//! * [`reduction`] — the Cholesky map from graphs to sensing matrices, RIP
//!   violation witnesses carried along it, block-diagonal assembly, and
//!   parameter bundles for the two hardness regimes.
//! * [`random`] — seeded, stream-splittable generators for every random model
//!   used by the experiments (graphs, sign matrices, sensing ensembles).
//! * [`io`] — file formats: matrix CSV, the `RIPM1` binary matrix format,
//!   edge lists, and adjacency CSV.
//!
//! All numeric work is in `f64`. Determinism is a contract: the same inputs
//! (including seeds) produce bit-identical outputs regardless of iteration or
//! thread order.

pub mod graphs;
pub mod io;
pub mod linalg;
pub mod random;
pub mod reduction;
pub mod sensing;
pub mod subsets;
