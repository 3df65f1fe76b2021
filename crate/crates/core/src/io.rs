//! JSON files for designs, POVM groupings and bipartite states.
//!
//! Complex numbers are `[re, im]` pairs. Design files look like
//! `{"dimension": 2, "strength": 3, "vectors": [[[1, 0], [0, 0]], ...]}`,
//! grouping files like `{"groups": [[0, 1], [2, 3]]}` with zero-based vector
//! indices, and bipartite state files like
//! `{"dimensions": [2, 2], "entries": [[[re, im], ...], ...]}` (row-major).

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::designs::{Grouping, QuantumDesign};
use crate::error::{Error, Result};
use crate::quantum::{CMatrix, StateVector};
use crate::steering::BipartiteDensityMatrix;

#[derive(Serialize, Deserialize)]
struct DesignFile {
    dimension: usize,
    strength: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct GroupingFile {
    groups: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct BipartiteFile {
    dimensions: [usize; 2],
    entries: Vec<Vec<[f64; 2]>>,
}

fn load_err(what: &str, reason: impl ToString) -> Error {
    Error::Load { what: what.to_string(), reason: reason.to_string() }
}

fn to_complex(pairs: &[[f64; 2]]) -> Option<Vec<Complex64>> {
    pairs.iter().map(|[re, im]| (re.is_finite() && im.is_finite()).then(|| Complex64::new(*re, *im))).collect()
}

fn to_pairs<'a>(values: impl Iterator<Item = &'a Complex64>) -> Vec<[f64; 2]> {
    values.map(|c| [c.re, c.im]).collect()
}

fn read(path: &Path, what: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| load_err(what, format!("{}: {e}", path.display())))
}

/// Parses a design from its JSON text.
pub fn parse_design(text: &str) -> Result<QuantumDesign> {
    let file: DesignFile = serde_json::from_str(text).map_err(|e| load_err("design", e))?;
    let mut vectors = Vec::with_capacity(file.vectors.len());
    for (k, v) in file.vectors.iter().enumerate() {
        if v.len() != file.dimension {
            return Err(load_err(
                "design",
                format!("vector {k} has {} components, expected {}", v.len(), file.dimension),
            ));
        }
        let amps = to_complex(v).ok_or_else(|| load_err("design", format!("vector {k} has a non-finite component")))?;
        let psi = StateVector::new(amps).map_err(|e| load_err("design", format!("vector {k}: {e}")))?;
        vectors.push(psi);
    }
    if vectors.len() < file.dimension {
        return Err(load_err("design", format!("{} vectors cannot span dimension {}", vectors.len(), file.dimension)));
    }
    QuantumDesign::new(file.dimension, file.strength, vectors).map_err(|e| load_err("design", e))
}

pub fn load_design(path: impl AsRef<Path>) -> Result<QuantumDesign> {
    parse_design(&read(path.as_ref(), "design")?)
}

pub fn design_to_json(design: &QuantumDesign) -> Result<String> {
    let file = DesignFile {
        dimension: design.dimension(),
        strength: design.strength(),
        vectors: design.vectors().iter().map(|v| to_pairs(v.amplitudes().iter())).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn save_design(design: &QuantumDesign, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, design_to_json(design)?)?;
    Ok(())
}

pub fn parse_grouping(text: &str) -> Result<Grouping> {
    let file: GroupingFile = serde_json::from_str(text).map_err(|e| load_err("grouping", e))?;
    Ok(Grouping::Partition(file.groups))
}

pub fn load_grouping(path: impl AsRef<Path>) -> Result<Grouping> {
    parse_grouping(&read(path.as_ref(), "grouping")?)
}

pub fn save_grouping(groups: &[Vec<usize>], path: impl AsRef<Path>) -> Result<()> {
    let file = GroupingFile { groups: groups.to_vec() };
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteDensityMatrix> {
    let file: BipartiteFile = serde_json::from_str(text).map_err(|e| load_err("state", e))?;
    let [da, db] = file.dimensions;
    let size = da * db;
    if file.entries.len() != size {
        return Err(load_err("state", format!("expected {size} rows, found {}", file.entries.len())));
    }
    let mut m = CMatrix::zeros(size, size);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != size {
            return Err(load_err("state", format!("row {i} has {} entries, expected {size}", row.len())));
        }
        let row = to_complex(row).ok_or_else(|| load_err("state", format!("row {i} has a non-finite entry")))?;
        for (j, c) in row.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    BipartiteDensityMatrix::new((da, db), m).map_err(|e| load_err("state", e))
}

pub fn load_bipartite(path: impl AsRef<Path>) -> Result<BipartiteDensityMatrix> {
    parse_bipartite(&read(path.as_ref(), "state")?)
}

pub fn bipartite_to_json(state: &BipartiteDensityMatrix) -> Result<String> {
    let (da, db) = state.dims();
    let m = state.matrix();
    let entries = m.row_iter().map(|r| to_pairs(r.iter())).collect();
    Ok(serde_json::to_string_pretty(&BipartiteFile { dimensions: [da, db], entries })?)
}

pub fn save_bipartite(state: &BipartiteDensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, bipartite_to_json(state)?)?;
    Ok(())
}
