//! Loading JSON descriptions and small textual arguments.

use std::path::Path;

use courantlab::exactlin::{parse_q, strings_to_vec, QMatrix, Subspace, Q};
use courantlab::quadlie::AlgebraJson;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An algebra, optionally with two subspaces to be checked as a Manin triple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleJson>,
}

/// Basis vectors of `g1` and `g2`, entries as rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleJson {
    pub g1: Vec<Vec<String>>,
    pub g2: Vec<Vec<String>>,
}

pub fn read_algebra_file(path: &Path) -> Result<AlgebraFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| {
        let line = e.line();
        let context = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim();
        CliError::Parse(format!(
            "{}:{}:{}: {e}\n  | {context}",
            path.display(),
            line,
            e.column()
        ))
    })
}

pub fn subspace_from_strings(ambient: usize, rows: &[Vec<String>]) -> Result<Subspace, CliError> {
    let vs = rows
        .iter()
        .map(|r| strings_to_vec(r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if let Some(v) = vs.iter().find(|v| v.len() != ambient) {
        return Err(CliError::Parse(format!(
            "vector of length {} in a {ambient}-dimensional algebra",
            v.len()
        )));
    }
    Subspace::span(ambient, &vs).map_err(|e| CliError::Parse(e.to_string()))
}

/// `"1,0;1/2,-3"` as rows of rationals.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<Q>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| parse_q(x).map_err(|e| CliError::Usage(format!("bad entry in {s:?}: {e}"))))
                .collect()
        })
        .collect()
}

pub fn parse_matrix(s: &str) -> Result<QMatrix, CliError> {
    let rows = parse_rows(s)?;
    let cols = rows.first().map_or(0, |r| r.len());
    QMatrix::from_rows(cols, &rows).map_err(|e| CliError::Usage(format!("bad matrix {s:?}: {e}")))
}
