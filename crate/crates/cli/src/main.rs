//! `ripcert`: generate random instances, compute and certify restricted
//! isometry constants, search for dense subgraphs, run the graph-to-matrix
//! reductions, and drive the Monte Carlo experiment suite.
//!
//! Experiment subcommands exit 0 exactly when every asserted bound check in
//! the report passes; all other subcommands exit 0 on success.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ripcert_cli::experiments::{self, RunConfig};
use ripcert_cli::report::ExperimentReport;
use ripcert_core::graphs;
use ripcert_core::io;
use ripcert_core::linalg::{self, DenseMatrix};
use ripcert_core::random::{self, Seed};
use ripcert_core::reduction::{
    self, CholeskyReductionConfig, HardnessOverrides, HardnessRegime,
};
use ripcert_core::sensing::{self, RipCertificate, RipOptions, SensingMatrix, SparseVector};
use serde::Serialize;
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};

// ============================================================================
// Command surface
// ============================================================================

#[derive(Parser)]
#[command(
    name = "ripcert",
    version,
    about = "Restricted-isometry certification toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random graphs and sensing matrices
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compute and certify restricted isometry constants
    #[command(subcommand)]
    Rip(RipCommand),
    /// Dense-subgraph search and certification
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Graph-to-matrix reductions and hardness-regime parameters
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Monte Carlo experiments (exit 0 iff all asserted bounds pass)
    #[command(subcommand)]
    Exp(ExpCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    /// Comma-separated decimal values, one row per line
    Csv,
    /// Compact binary with a magic header
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    /// "n m" header followed by one "u v" pair per line
    Edges,
    /// Symmetric 0/1 matrix, comma-separated
    Adjacency,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    /// Full report: params, stats, bound checks
    Json,
    /// One row per sample
    Csv,
}

// ----------------------------------------------------------------------------
// gen
// ----------------------------------------------------------------------------

#[derive(Subcommand)]
enum GenCommand {
    /// Sample G(n,1/2): each edge present independently with probability 1/2
    Graph {
        /// Number of vertices
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Destination file
        #[arg(long)]
        out_file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Sample a Bernoulli sensing matrix with entries ±1/√rows
    Matrix {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Destination file
        #[arg(long)]
        out_file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Sample the factor model: the Cholesky factor of Id + cA/√n for a
    /// random ±1 symmetric A (zero matrix, flagged, when not PSD)
    ModelC {
        /// Dimension (the factor is n×n)
        #[arg(long)]
        n: usize,
        /// Off-diagonal scale of Id + cA/√n
        #[arg(long)]
        c: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Destination file
        #[arg(long)]
        out_file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
}

// ----------------------------------------------------------------------------
// rip
// ----------------------------------------------------------------------------

#[derive(Args)]
struct MatrixInput {
    /// Matrix file (CSV or binary, auto-detected)
    #[arg(long)]
    matrix: PathBuf,
    /// Rescale columns to unit norm before computing
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum RipCommand {
    /// Exact restricted isometry constant of order k (exhaustive over subsets)
    Exact {
        #[command(flatten)]
        input: MatrixInput,
        /// Sparsity order
        #[arg(long)]
        k: usize,
        /// Maximum number of subsets to enumerate
        #[arg(long)]
        budget: Option<u64>,
        /// Eigensolver convergence threshold
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Certify a range of orders from an exact base order plus extrapolation
    Lazy {
        #[command(flatten)]
        input: MatrixInput,
        /// Base order computed exactly
        #[arg(long)]
        m: usize,
        /// Target restricted isometry constant in ]0,1[
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Coherence: maximum |inner product| between distinct unit columns
    Coherence {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Check whether a sparse vector witnesses a restricted isometry failure
    Witness {
        #[command(flatten)]
        input: MatrixInput,
        /// Vector file: a single row or single column matrix
        #[arg(long)]
        witness: PathBuf,
        /// Claimed restricted isometry constant in ]0,1[
        #[arg(long)]
        delta: f64,
    },
}

// ----------------------------------------------------------------------------
// graph
// ----------------------------------------------------------------------------

#[derive(Args)]
struct GraphInput {
    /// Graph file (edge list or adjacency CSV, auto-detected)
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Exhaustive densest-k-subgraph search
    Oracle {
        #[command(flatten)]
        input: GraphInput,
        /// Subgraph order
        #[arg(long)]
        k: usize,
        /// Maximum number of subsets to enumerate
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Certificate from the signed adjacency spectrum: excludes every
    /// (k, eps) with 2·eps·(k−1) > λ₁
    Spectral {
        #[command(flatten)]
        input: GraphInput,
        /// Query order (with --eps: also report whether (k, eps) is certified)
        #[arg(long, requires = "eps")]
        k: Option<usize>,
        /// Query excess
        #[arg(long, requires = "k")]
        eps: Option<f64>,
        /// Eigensolver convergence threshold
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Certificate from the skewed adjacency spectrum (skew weight a)
    Skewed {
        #[command(flatten)]
        input: GraphInput,
        /// Skew weight (the matrix is A/2 + (a/√n)·J)
        #[arg(long)]
        a: f64,
        #[arg(long, requires = "eps")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        eps: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Closed-form skew weight for the regime k = αn, eps = cexc/√n,
    /// reporting whether it beats the expected top eigenvalue
    TuneSkew {
        /// Subgraph proportion in ]0,1[
        #[arg(long)]
        alpha: f64,
        /// Excess scale (eps·√n)
        #[arg(long)]
        cexc: f64,
    },
}

// ----------------------------------------------------------------------------
// reduce
// ----------------------------------------------------------------------------

#[derive(Subcommand)]
enum ReduceCommand {
    /// Map a graph to the Cholesky factor of Id + cA/√n (zero matrix,
    /// flagged, when not PSD)
    Cholesky {
        #[command(flatten)]
        input: GraphInput,
        /// Off-diagonal scale
        #[arg(long)]
        c: f64,
        /// Pivot tolerance for the PSD test (default: data-scaled)
        #[arg(long)]
        psd_tol: Option<f64>,
        /// Destination file
        #[arg(long)]
        out_file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Embed the Cholesky factor as a block of a rectangular sensing matrix,
    /// padded with an independent Bernoulli block
    Rect {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        c: f64,
        /// Column count of the Bernoulli padding block (≥ the graph order);
        /// the assembly is 2n × (n + cols)
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        psd_tol: Option<f64>,
        /// Seed for the Bernoulli padding block
        #[arg(long)]
        seed: Option<u64>,
        /// Destination file
        #[arg(long)]
        out_file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Resolve and validate hardness-regime parameters for a given n
    Params {
        /// Parameter regime
        #[arg(long, value_enum)]
        regime: RegimeArg,
        /// Number of vertices
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        cprime: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        delta0: Option<f64>,
        #[arg(long)]
        cexc: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    /// Polynomial subgraph order: k = round(n^alpha), eps = n^(-beta)
    Hyp1,
    /// Linear subgraph order: k = round(alpha·n), eps = cexc/√n
    Hyp2,
}

impl From<RegimeArg> for HardnessRegime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Hyp1 => HardnessRegime::Hyp1,
            RegimeArg::Hyp2 => HardnessRegime::Hyp2,
        }
    }
}

// ----------------------------------------------------------------------------
// exp
// ----------------------------------------------------------------------------

#[derive(Args)]
struct ExpCommon {
    /// Base seed (falls back to $RIPCERT_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Number of Monte Carlo samples
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Worker threads (0 = one per core); results are identical for every value
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Subset-enumeration budget override
    #[arg(long)]
    budget: Option<u64>,
    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    out: ReportFormat,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExpCommand {
    /// Median largest eigenvalue of the ±1 symmetric model vs 2√n and 3√n
    Fk {
        /// Matrix dimension
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: ExpCommon,
    },
    /// Spectral tail of the ±1 symmetric model vs 4·exp(−t²/32)
    Tail {
        #[arg(long)]
        n: usize,
        /// Tail offsets t (thresholds are 3√n + t)
        #[arg(long, value_delimiter = ',', default_value = "0,2,4,8")]
        t_grid: Vec<f64>,
        #[command(flatten)]
        common: ExpCommon,
    },
    /// Skewed adjacency norm vs √(a²+5/4)·√n, with concentration tail
    Norm {
        #[arg(long)]
        n: usize,
        /// Skew weight
        #[arg(long)]
        a: f64,
        /// Concentration offsets
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        eps_grid: Vec<f64>,
        #[command(flatten)]
        common: ExpCommon,
    },
    /// Certification rates of the spectral and skewed certifiers at
    /// k = ⌊αn⌋, eps = cexc/√n
    Duel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        #[arg(long, default_value_t = 1.25)]
        cexc: f64,
        /// Skew weight for the skewed certifier
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        common: ExpCommon,
    },
    /// Frequency of a k-subgraph with excess ≥ eps vs the union bound
    /// exp[k·ln(ne/k) − eps²k(k−1)]
    Hoeffding {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.4,0.45")]
        eps_grid: Vec<f64>,
        #[command(flatten)]
        common: ExpCommon,
    },
    /// Certified order reach of the lazy certifier per base order, with
    /// soundness re-verification
    Lazy {
        /// Sensing matrix rows
        #[arg(long)]
        n: usize,
        /// Sensing matrix columns
        #[arg(long)]
        cols: usize,
        /// Base orders to sweep
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        m_grid: Vec<usize>,
        /// Target restricted isometry constant
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[command(flatten)]
        common: ExpCommon,
    },
}

// ============================================================================
// Helpers
// ============================================================================

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("RIPCERT_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing output")?;
    text.push('\n');
    print!("{text}");
    Ok(())
}

fn load_matrix(input: &MatrixInput) -> Result<SensingMatrix> {
    let m = io::read_matrix_any(&input.matrix)
        .with_context(|| format!("reading matrix from {}", input.matrix.display()))?;
    if input.normalize {
        Ok(SensingMatrix::normalize_columns(m)?)
    } else {
        Ok(SensingMatrix::new(m))
    }
}

fn load_graph(input: &GraphInput) -> Result<graphs::Graph> {
    io::read_graph_any(&input.graph)
        .with_context(|| format!("reading graph from {}", input.graph.display()))
}

fn load_vector(path: &Path) -> Result<SparseVector> {
    let m = io::read_matrix_any(path)
        .with_context(|| format!("reading vector from {}", path.display()))?;
    if m.rows() != 1 && m.cols() != 1 {
        bail!(
            "witness file must hold a single row or column, got {}x{}",
            m.rows(),
            m.cols()
        );
    }
    let entries: Vec<(usize, f64)> = m
        .data()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != 0.0)
        .map(|(i, &v)| (i, v))
        .collect();
    Ok(SparseVector::new(entries)?)
}

fn write_matrix(path: &Path, m: &DenseMatrix, format: MatrixFormat) -> Result<()> {
    match format {
        MatrixFormat::Csv => io::write_matrix_csv(path, m),
        MatrixFormat::Binary => io::write_matrix_binary(path, m),
    }
    .with_context(|| format!("writing matrix to {}", path.display()))
}

fn rip_options(budget: Option<u64>, tol: Option<f64>) -> RipOptions {
    let defaults = RipOptions::default();
    RipOptions {
        budget: budget.unwrap_or(defaults.budget),
        eigen_tol: tol.unwrap_or(defaults.eigen_tol),
    }
}

/// Prints (or writes) the report and returns whether all asserted bounds
/// passed.
fn emit_report(report: &ExperimentReport, common: &ExpCommon) -> Result<bool> {
    let text = match common.out {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    };
    match &common.out_file {
        Some(path) => fs::write(path, &text)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report.all_pass())
}

fn run_config(common: &ExpCommon) -> RunConfig {
    RunConfig {
        seed: resolve_seed(common.seed),
        workers: common.workers,
        budget: common.budget,
    }
}

// ============================================================================
// Dispatch
// ============================================================================

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(cmd) => run_gen(cmd),
        Command::Rip(cmd) => run_rip(cmd),
        Command::Graph(cmd) => run_graph(cmd),
        Command::Reduce(cmd) => run_reduce(cmd),
        Command::Exp(cmd) => {
            let pass = run_exp(cmd)?;
            if !pass {
                eprintln!("one or more asserted bound checks failed");
                std::process::exit(1);
            }
            Ok(())
        }
    }
}

fn run_gen(cmd: GenCommand) -> Result<()> {
    match cmd {
        GenCommand::Graph {
            n,
            seed,
            out_file,
            format,
        } => {
            let g = random::gen_gnp_half(n, Seed::new(resolve_seed(seed)));
            match format {
                GraphFormat::Edges => io::write_edge_list(&out_file, &g),
                GraphFormat::Adjacency => io::write_adjacency_csv(&out_file, &g),
            }
            .with_context(|| format!("writing graph to {}", out_file.display()))?;
            print_json(&json!({ "n": n, "edges": g.edge_count() }))
        }
        GenCommand::Matrix {
            rows,
            cols,
            seed,
            out_file,
            format,
        } => {
            let phi = random::gen_bernoulli_sensing(rows, cols, Seed::new(resolve_seed(seed)));
            write_matrix(&out_file, phi.matrix(), format)?;
            print_json(&json!({
                "rows": rows,
                "cols": cols,
                "unit_columns": phi.unit_columns(),
            }))
        }
        GenCommand::ModelC {
            n,
            c,
            seed,
            out_file,
            format,
        } => {
            let model = random::gen_model_c(n, c, Seed::new(resolve_seed(seed)))?;
            write_matrix(&out_file, model.matrix.matrix(), format)?;
            print_json(&json!({
                "rows": n,
                "cols": n,
                "psd_failure": model.psd_failure,
            }))
        }
    }
}

fn run_rip(cmd: RipCommand) -> Result<()> {
    match cmd {
        RipCommand::Exact {
            input,
            k,
            budget,
            tol,
        } => {
            let phi = load_matrix(&input)?;
            let opts = rip_options(budget, tol);
            let delta = sensing::rip_delta_exact(&phi, k, &opts)?;
            print_json(&RipCertificate::exact(k, delta))
        }
        RipCommand::Lazy {
            input,
            m,
            delta,
            budget,
            tol,
        } => {
            let phi = load_matrix(&input)?;
            let opts = rip_options(budget, tol);
            let cert = sensing::lazy_certify(&phi, m, delta, &opts)?;
            print_json(&json!({
                "certificate": cert,
                "certified": cert.is_certified(),
            }))
        }
        RipCommand::Coherence { input } => {
            let phi = load_matrix(&input)?;
            let mu = sensing::coherence(&phi)?;
            print_json(&json!({ "coherence": mu }))
        }
        RipCommand::Witness {
            input,
            witness,
            delta,
        } => {
            let phi = load_matrix(&input)?;
            let x = load_vector(&witness)?;
            let violates = sensing::check_rip_witness(&phi, &x, delta)?;
            print_json(&json!({
                "delta": delta,
                "support": x.support_size(),
                "violates": violates,
            }))
        }
    }
}

fn run_graph(cmd: GraphCommand) -> Result<()> {
    match cmd {
        GraphCommand::Oracle { input, k, budget } => {
            let g = load_graph(&input)?;
            let best = graphs::densest_k_oracle_with_budget(
                &g,
                k,
                budget.unwrap_or(graphs::DEFAULT_ORACLE_BUDGET),
            )?;
            print_json(&best)
        }
        GraphCommand::Spectral { input, k, eps, tol } => {
            let g = load_graph(&input)?;
            let cert =
                graphs::spectral_certify_with_tol(&g, tol.unwrap_or(linalg::DEFAULT_EIGEN_TOL))?;
            print_certificate(cert, k, eps)
        }
        GraphCommand::Skewed {
            input,
            a,
            k,
            eps,
            tol,
        } => {
            let g = load_graph(&input)?;
            let cert =
                graphs::skewed_certify_with_tol(&g, a, tol.unwrap_or(linalg::DEFAULT_EIGEN_TOL))?;
            print_certificate(cert, k, eps)
        }
        GraphCommand::TuneSkew { alpha, cexc } => {
            let tuning = graphs::skew_feasible(alpha, cexc)?;
            print_json(&json!({
                "feasible": tuning.is_some(),
                "tuning": tuning,
            }))
        }
    }
}

fn print_certificate(
    cert: graphs::SubgraphCertificate,
    k: Option<usize>,
    eps: Option<f64>,
) -> Result<()> {
    match (k, eps) {
        (Some(k), Some(eps)) => print_json(&json!({
            "certificate": cert,
            "k": k,
            "eps": eps,
            "certifies": cert.certifies(k, eps),
        })),
        _ => print_json(&cert),
    }
}

fn run_reduce(cmd: ReduceCommand) -> Result<()> {
    match cmd {
        ReduceCommand::Cholesky {
            input,
            c,
            psd_tol,
            out_file,
            format,
        } => {
            let g = load_graph(&input)?;
            let mut cfg = CholeskyReductionConfig::new(c);
            if let Some(t) = psd_tol {
                cfg = cfg.with_psd_tol(t);
            }
            let red = reduction::cholesky_reduce(&g, &cfg)?;
            write_matrix(&out_file, red.matrix.matrix(), format)?;
            print_json(&json!({
                "rows": g.n(),
                "cols": g.n(),
                "psd_failure": red.psd_failure,
            }))
        }
        ReduceCommand::Rect {
            input,
            c,
            cols,
            psd_tol,
            seed,
            out_file,
            format,
        } => {
            let g = load_graph(&input)?;
            let mut cfg = CholeskyReductionConfig::new(c);
            if let Some(t) = psd_tol {
                cfg = cfg.with_psd_tol(t);
            }
            let block =
                reduction::rectangular_embed(&g, &cfg, cols, Seed::new(resolve_seed(seed)))?;
            let boundaries = block.boundaries();
            let assembled = block.into_assembled();
            write_matrix(&out_file, assembled.matrix(), format)?;
            print_json(&json!({
                "rows": assembled.rows(),
                "cols": assembled.cols(),
                "block_offsets": boundaries,
            }))
        }
        ReduceCommand::Params {
            regime,
            n,
            alpha,
            beta,
            c,
            cprime,
            lambda,
            kappa,
            delta0,
            cexc,
        } => {
            let overrides = HardnessOverrides {
                alpha,
                beta,
                c,
                cprime,
                lambda,
                kappa,
                delta0,
                cexc,
            };
            let params = reduction::hardness_params(regime.into(), n, &overrides)?;
            print_json(&params)
        }
    }
}

fn run_exp(cmd: ExpCommand) -> Result<bool> {
    match cmd {
        ExpCommand::Fk { n, common } => {
            let report = experiments::exp_fk_median(n, common.samples, &run_config(&common))?;
            emit_report(&report, &common)
        }
        ExpCommand::Tail { n, t_grid, common } => {
            let report =
                experiments::exp_model_a_tail(n, &t_grid, common.samples, &run_config(&common))?;
            emit_report(&report, &common)
        }
        ExpCommand::Norm {
            n,
            a,
            eps_grid,
            common,
        } => {
            let report = experiments::exp_skew_norm(
                n,
                a,
                &eps_grid,
                common.samples,
                &run_config(&common),
            )?;
            emit_report(&report, &common)
        }
        ExpCommand::Duel {
            n,
            alpha,
            cexc,
            a,
            common,
        } => {
            let report = experiments::exp_certifier_duel(
                n,
                alpha,
                cexc,
                a,
                common.samples,
                &run_config(&common),
            )?;
            emit_report(&report, &common)
        }
        ExpCommand::Hoeffding {
            n,
            k,
            eps_grid,
            common,
        } => {
            let report = experiments::exp_hoeffding_subgraph(
                n,
                k,
                &eps_grid,
                common.samples,
                &run_config(&common),
            )?;
            emit_report(&report, &common)
        }
        ExpCommand::Lazy {
            n,
            cols,
            m_grid,
            delta,
            common,
        } => {
            let report = experiments::exp_lazy_sweep(
                n,
                cols,
                &m_grid,
                delta,
                common.samples,
                &run_config(&common),
            )?;
            emit_report(&report, &common)
        }
    }
}
