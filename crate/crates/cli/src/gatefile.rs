//! Gate files: `{"n": 2, "matrix": [[[re, im], ...], ...]}`, row-major.
//!
//! Values are written with 17 significant digits so a file read back gives
//! the same `f64` bits.

use std::fmt::Write as _;
use std::path::Path;

use locinv_core::{ComplexMatrix, GateMatrix, TolerancePolicy};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
struct GateFile {
    n: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Parses gate-file text. `path` is only used in error messages.
pub fn parse_gate(text: &str, path: &Path, tol: &TolerancePolicy) -> Result<GateMatrix, CliError> {
    let bad = |message: String| CliError::Format { path: path.to_path_buf(), message };
    let file: GateFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if !(1..=3).contains(&file.n) {
        return Err(bad(format!("n = {} is not supported (1 to 3 qubits)", file.n)));
    }
    let dim = 1usize << file.n;
    if file.matrix.len() != dim || file.matrix.iter().any(|row| row.len() != dim) {
        return Err(bad(format!("matrix must be {dim}x{dim} for n = {}", file.n)));
    }
    let entries: Vec<Complex64> =
        file.matrix.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
    if entries.iter().any(|z| !z.is_finite()) {
        return Err(bad("matrix has non-finite entries".into()));
    }
    let matrix = ComplexMatrix::from_row_major(dim, entries);
    let label = path.display().to_string();
    Ok(GateMatrix::new(matrix, tol)?.with_label(label))
}

pub fn read_gate(path: &Path, tol: &TolerancePolicy) -> Result<GateMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_gate(&text, path, tol)
}

/// Serializes a gate in the gate-file format, one matrix row per line.
pub fn render_gate(gate: &GateMatrix) -> String {
    let m = gate.matrix();
    let dim = m.dim();
    let mut out = format!("{{\n  \"n\": {},\n  \"matrix\": [\n", gate.n());
    for i in 0..dim {
        let row: Vec<String> =
            (0..dim).map(|j| format!("[{:.16e}, {:.16e}]", m[(i, j)].re, m[(i, j)].im)).collect();
        let sep = if i + 1 < dim { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_gate(gate: &GateMatrix, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, render_gate(gate)).map_err(|e| CliError::io(path, e))
}
