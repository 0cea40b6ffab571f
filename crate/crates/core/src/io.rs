//! File formats: matrices as CSV or the `RIPM1` binary format, graphs as
//! edge lists or dense 0/1 adjacency CSV, and JSON helpers for certificates
//! and reports.
//!
//! CSV matrices are one row per line with comma-separated decimal floats
//! (written with enough digits to round-trip exactly). `RIPM1` files start
//! with the 5-byte magic `RIPM1`, then the row and column counts as 64-bit
//! little-endian integers, then the entries as row-major 64-bit
//! little-endian floats. Edge lists start with a line `n m` followed by `m`
//! lines `u v` with 0-based endpoints.

use crate::graphs::{Graph, GraphError};
use crate::linalg::DenseMatrix;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

const MATRIX_MAGIC: &[u8; 5] = b"RIPM1";

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug)]
pub enum IoError {
    /// Underlying filesystem failure.
    Io(std::io::Error),
    /// A token on a specific (1-based) line failed to parse.
    Parse { line: usize, msg: String },
    /// The file's overall structure is wrong (bad magic, ragged rows,
    /// truncation, asymmetric adjacency, ...).
    Format(String),
    /// The parsed edge data does not form a simple graph.
    Graph(GraphError),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "io failure: {e}"),
            IoError::Parse { line, msg } => write!(f, "parse failure on line {line}: {msg}"),
            IoError::Format(msg) => write!(f, "bad file format: {msg}"),
            IoError::Graph(e) => write!(f, "bad graph data: {e}"),
        }
    }
}

impl std::error::Error for IoError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            IoError::Io(e) => Some(e),
            IoError::Graph(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

impl From<GraphError> for IoError {
    fn from(e: GraphError) -> Self {
        IoError::Graph(e)
    }
}

// ============================================================================
// Matrices
// ============================================================================

/// Writes a matrix as CSV, one row per line. Entries use the shortest
/// decimal form that parses back to the identical float.
pub fn write_matrix_csv(path: &Path, m: &DenseMatrix) -> Result<(), IoError> {
    let mut out = String::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", m.get(r, c)));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a CSV matrix; every row must have the same number of entries.
pub fn read_matrix_csv(path: &Path) -> Result<DenseMatrix, IoError> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split(',') {
            let tok = tok.trim();
            let v: f64 = tok.parse().map_err(|_| IoError::Parse {
                line: line_no,
                msg: format!("expected a float, got {tok:?}"),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(IoError::Format(format!(
                    "row on line {line_no} has {} entries, expected {}",
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(IoError::Format("matrix file has no rows".to_string()));
    }
    Ok(DenseMatrix::from_rows(rows))
}

/// Writes a matrix in the `RIPM1` binary format.
pub fn write_matrix_binary(path: &Path, m: &DenseMatrix) -> Result<(), IoError> {
    let mut f = fs::File::create(path)?;
    f.write_all(MATRIX_MAGIC)?;
    f.write_all(&(m.rows() as u64).to_le_bytes())?;
    f.write_all(&(m.cols() as u64).to_le_bytes())?;
    for &v in m.data() {
        f.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads an `RIPM1` binary matrix, validating magic and exact length.
pub fn read_matrix_binary(path: &Path) -> Result<DenseMatrix, IoError> {
    let bytes = fs::read(path)?;
    if bytes.len() < MATRIX_MAGIC.len() + 16 {
        return Err(IoError::Format("file too short for a matrix header".to_string()));
    }
    let (magic, rest) = bytes.split_at(MATRIX_MAGIC.len());
    if magic != MATRIX_MAGIC {
        return Err(IoError::Format(format!(
            "bad magic {:?}, expected {:?}",
            &magic,
            &MATRIX_MAGIC[..]
        )));
    }
    let rows = u64::from_le_bytes(rest[0..8].try_into().unwrap());
    let cols = u64::from_le_bytes(rest[8..16].try_into().unwrap());
    let entries = rows
        .checked_mul(cols)
        .ok_or_else(|| IoError::Format("dimension product overflows".to_string()))?;
    let body = &rest[16..];
    let expect_bytes = entries
        .checked_mul(8)
        .ok_or_else(|| IoError::Format("dimension product overflows".to_string()))?;
    if expect_bytes != body.len() as u64 {
        return Err(IoError::Format(format!(
            "body holds {} bytes, expected {rows}x{cols} entries",
            body.len()
        )));
    }
    if rows == 0 || cols == 0 {
        return Err(IoError::Format("matrix dimensions must be positive".to_string()));
    }
    let data: Vec<f64> = body
        .chunks_exact(8)
        .map(|ch| f64::from_le_bytes(ch.try_into().unwrap()))
        .collect();
    Ok(DenseMatrix::from_row_major(rows as usize, cols as usize, data))
}

// ============================================================================
// Graphs
// ============================================================================

/// Writes a graph as an edge list: `n m` then one `u v` line per edge.
pub fn write_edge_list(path: &Path, g: &Graph) -> Result<(), IoError> {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

fn parse_two(line: &str, line_no: usize, what: &str) -> Result<(usize, usize), IoError> {
    let mut it = line.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize, IoError> {
        let tok = tok.ok_or_else(|| IoError::Parse {
            line: line_no,
            msg: format!("expected two integers ({what})"),
        })?;
        tok.parse().map_err(|_| IoError::Parse {
            line: line_no,
            msg: format!("expected an integer, got {tok:?}"),
        })
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(IoError::Parse {
            line: line_no,
            msg: format!("trailing tokens after two integers ({what})"),
        });
    }
    Ok((a, b))
}

/// Reads an edge-list graph; the declared edge count must match.
pub fn read_edge_list(path: &Path) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| IoError::Format("empty edge-list file".to_string()))?;
    let (n, m) = parse_two(header, line_no, "vertex and edge counts")?;
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        edges.push(parse_two(line, line_no, "edge endpoints")?);
    }
    if edges.len() != m {
        return Err(IoError::Format(format!(
            "header declares {m} edges but file has {}",
            edges.len()
        )));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Writes a graph as a dense 0/1 adjacency CSV.
pub fn write_adjacency_csv(path: &Path, g: &Graph) -> Result<(), IoError> {
    let n = g.n();
    let mut out = String::with_capacity(2 * n * n);
    for u in 0..n {
        for v in 0..n {
            if v > 0 {
                out.push(',');
            }
            out.push(if u != v && g.has_edge(u, v) { '1' } else { '0' });
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a dense 0/1 adjacency CSV, validating that it is square,
/// symmetric, and zero on the diagonal.
pub fn read_adjacency_csv(path: &Path) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split(',') {
            match tok.trim() {
                "0" => row.push(0),
                "1" => row.push(1),
                other => {
                    return Err(IoError::Parse {
                        line: line_no,
                        msg: format!("adjacency entries must be 0 or 1, got {other:?}"),
                    })
                }
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(IoError::Format("adjacency file has no rows".to_string()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::Format(format!(
                "adjacency matrix is not square: row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(IoError::Format(format!(
                "adjacency diagonal must be zero (vertex {i})"
            )));
        }
        for j in (i + 1)..n {
            if rows[i][j] != rows[j][i] {
                return Err(IoError::Format(format!(
                    "adjacency matrix is not symmetric at ({i},{j})"
                )));
            }
            if rows[i][j] == 1 {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Reads a matrix from either supported format, deciding by content: files
/// starting with the binary magic are parsed as binary, anything else as
/// CSV.
pub fn read_matrix_any(path: &Path) -> Result<DenseMatrix, IoError> {
    let mut head = [0u8; 5];
    {
        use std::io::Read as _;
        let mut f = fs::File::open(path)?;
        let got = f.read(&mut head)?;
        if got == 5 && &head == MATRIX_MAGIC {
            return read_matrix_binary(path);
        }
    }
    read_matrix_csv(path)
}

/// Reads a graph from either supported format, deciding by content: a
/// first non-empty line containing a comma is treated as adjacency CSV,
/// anything else as an edge list.
pub fn read_graph_any(path: &Path) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path)?;
    let first = text.lines().find(|l| !l.trim().is_empty());
    match first {
        Some(line) if line.contains(',') => read_adjacency_csv(path),
        Some(_) => read_edge_list(path),
        None => Err(IoError::Format("empty graph file".to_string())),
    }
}

// ============================================================================
// JSON
// ============================================================================

/// Writes any serializable value as pretty-printed JSON with a trailing
/// newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| IoError::Format(format!("json encoding failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Reads a JSON value of the expected shape.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| IoError::Format(format!("json decoding failed: {e}")))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{self, Seed};
    use crate::sensing::RipCertificate;

    fn tmp(name: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(name);
        (dir, path)
    }

    // --- matrix CSV ---

    #[test]
    fn matrix_csv_round_trips_exactly() {
        let m = DenseMatrix::from_rows(vec![
            vec![1.0, -0.5, 1.0 / 3.0],
            vec![1e-300, 2.0_f64.sqrt(), -0.0],
        ]);
        let (_d, path) = tmp("m.csv");
        write_matrix_csv(&path, &m).unwrap();
        let back = read_matrix_csv(&path).unwrap();
        assert_eq!(back.rows(), 2);
        assert_eq!(back.cols(), 3);
        for r in 0..2 {
            for c in 0..3 {
                assert_eq!(back.get(r, c).to_bits(), m.get(r, c).to_bits(), "({r},{c})");
            }
        }
    }

    #[test]
    fn matrix_csv_rejects_bad_tokens_and_ragged_rows() {
        let (_d, path) = tmp("bad.csv");
        std::fs::write(&path, "1.0,2.0\n3.0,x\n").unwrap();
        match read_matrix_csv(&path) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse failure, got {other:?}"),
        }
        std::fs::write(&path, "1.0,2.0\n3.0\n").unwrap();
        assert!(matches!(read_matrix_csv(&path), Err(IoError::Format(_))));
        std::fs::write(&path, "\n\n").unwrap();
        assert!(matches!(read_matrix_csv(&path), Err(IoError::Format(_))));
    }

    // --- matrix binary ---

    #[test]
    fn matrix_binary_round_trips_bit_for_bit() {
        let phi = random::gen_bernoulli_sensing(6, 9, Seed::new(7));
        let m = phi.matrix();
        let (_d, path) = tmp("m.bin");
        write_matrix_binary(&path, m).unwrap();
        let back = read_matrix_binary(&path).unwrap();
        assert_eq!(back.rows(), 6);
        assert_eq!(back.cols(), 9);
        for r in 0..6 {
            for c in 0..9 {
                assert_eq!(back.get(r, c).to_bits(), m.get(r, c).to_bits());
            }
        }
    }

    #[test]
    fn matrix_binary_rejects_corruption() {
        let (_d, path) = tmp("m.bin");
        let m = DenseMatrix::identity(2);
        write_matrix_binary(&path, &m).unwrap();

        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_matrix_binary(&path), Err(IoError::Format(_))));

        write_matrix_binary(&path, &m).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 3);
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_matrix_binary(&path), Err(IoError::Format(_))));

        std::fs::write(&path, b"RIP").unwrap();
        assert!(matches!(read_matrix_binary(&path), Err(IoError::Format(_))));
    }

    // --- edge lists ---

    #[test]
    fn edge_list_round_trips() {
        let g = random::gen_gnp_half(12, Seed::new(11));
        let (_d, path) = tmp("g.txt");
        write_edge_list(&path, &g).unwrap();
        let back = read_edge_list(&path).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_parses_the_documented_shape() {
        let (_d, path) = tmp("g.txt");
        std::fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
        let g = read_edge_list(&path).unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn edge_list_rejects_malformed_files() {
        let (_d, path) = tmp("g.txt");
        std::fs::write(&path, "3 2\n0 1\n").unwrap();
        assert!(matches!(read_edge_list(&path), Err(IoError::Format(_))));
        std::fs::write(&path, "3 1\n0 zebra\n").unwrap();
        assert!(matches!(
            read_edge_list(&path),
            Err(IoError::Parse { line: 2, .. })
        ));
        std::fs::write(&path, "3 1\n0 0\n").unwrap();
        assert!(matches!(read_edge_list(&path), Err(IoError::Graph(_))));
        std::fs::write(&path, "3 1\n0 7\n").unwrap();
        assert!(matches!(read_edge_list(&path), Err(IoError::Graph(_))));
    }

    // --- adjacency CSV ---

    #[test]
    fn adjacency_round_trips() {
        let g = random::gen_gnp_half(9, Seed::new(13));
        let (_d, path) = tmp("adj.csv");
        write_adjacency_csv(&path, &g).unwrap();
        let back = read_adjacency_csv(&path).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn adjacency_validates_structure() {
        let (_d, path) = tmp("adj.csv");
        std::fs::write(&path, "0,1\n1,0,0\n").unwrap();
        assert!(matches!(read_adjacency_csv(&path), Err(IoError::Format(_))));
        std::fs::write(&path, "0,1\n0,0\n").unwrap();
        assert!(matches!(read_adjacency_csv(&path), Err(IoError::Format(_))));
        std::fs::write(&path, "1,1\n1,0\n").unwrap();
        assert!(matches!(read_adjacency_csv(&path), Err(IoError::Format(_))));
        std::fs::write(&path, "0,2\n2,0\n").unwrap();
        assert!(matches!(
            read_adjacency_csv(&path),
            Err(IoError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn matrix_any_sniffs_both_formats() {
        let m = DenseMatrix::from_rows(vec![vec![1.5, -2.0], vec![0.0, 3.25]]);
        let (_d, path) = tmp("m.any");
        write_matrix_binary(&path, &m).unwrap();
        assert_eq!(read_matrix_any(&path).unwrap(), m);
        write_matrix_csv(&path, &m).unwrap();
        assert_eq!(read_matrix_any(&path).unwrap(), m);
    }

    #[test]
    fn graph_any_sniffs_both_formats() {
        let g = random::gen_gnp_half(8, Seed::new(17));
        let (_d, dir) = tmp("unused");
        let edge_path = dir.with_file_name("g.txt");
        let adj_path = dir.with_file_name("g.csv");
        write_edge_list(&edge_path, &g).unwrap();
        write_adjacency_csv(&adj_path, &g).unwrap();
        assert_eq!(read_graph_any(&edge_path).unwrap(), g);
        assert_eq!(read_graph_any(&adj_path).unwrap(), g);
    }

    // --- JSON ---

    #[test]
    fn json_round_trips_certificates() {
        let cert = RipCertificate {
            method: crate::sensing::RipMethod::Extrapolated,
            k_min: 2,
            k_max: 17,
            delta: 0.25,
            base_order: 3,
            base_epsilon: 0.05,
        };
        let (_d, path) = tmp("cert.json");
        write_json(&path, &cert).unwrap();
        let back: RipCertificate = read_json(&path).unwrap();
        assert_eq!(back, cert);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"method\""));
        assert!(text.ends_with('\n'));
    }
}
