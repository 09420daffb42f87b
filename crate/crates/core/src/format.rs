//! JSON documents: algebras, modules and filtration chains. Indices in files
//! are 1-based.

use crate::cohomology::{CohomologyError, LieModule};
use crate::lie::{FiltrationChain, LieAlgebra, LieError, Submodule};
use crate::modarith::{ModArithError, ModMatrix, PrimeContext};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;
use thiserror::Error;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("bracket record {record}: {reason}")]
    Record { record: usize, reason: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Ring(#[from] ModArithError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn default_schema() -> u32 {
    SCHEMA
}

fn default_k() -> u32 {
    1
}

fn check_schema(s: u32) -> Result<(), FormatError> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(FormatError::Schema(s))
    }
}

/// `[e_i, e_j] ∋ c·e_m`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub c: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u64,
    #[serde(default = "default_k")]
    pub k: u32,
    pub rank: usize,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn from_algebra(g: &LieAlgebra, name: Option<&str>) -> Self {
        Self {
            schema: SCHEMA,
            name: name.map(str::to_string),
            p: g.ctx().p(),
            k: g.ctx().k(),
            rank: g.rank(),
            brackets: g
                .structure_constants()
                .iter()
                .map(|&(i, j, m, c)| BracketRecord {
                    i: i + 1,
                    j: j + 1,
                    m: m + 1,
                    c,
                })
                .collect(),
        }
    }

    /// Checks every record, then builds and validates the algebra.
    pub fn to_algebra(&self) -> Result<LieAlgebra, FormatError> {
        check_schema(self.schema)?;
        let ctx = PrimeContext::new(self.p, self.k)?;
        if self.rank == 0 {
            return Err(LieError::ZeroAlgebra.into());
        }
        let mut seen = BTreeSet::new();
        let mut constants = Vec::with_capacity(self.brackets.len());
        for (n, b) in self.brackets.iter().enumerate() {
            let record = n + 1;
            let fail = |reason: String| FormatError::Record { record, reason };
            for (label, v) in [("i", b.i), ("j", b.j), ("m", b.m)] {
                if v == 0 || v > self.rank {
                    return Err(fail(format!("{label} = {v} outside 1..={}", self.rank)));
                }
            }
            if b.i >= b.j {
                return Err(fail(format!("requires i < j, got i = {}, j = {}", b.i, b.j)));
            }
            if b.c >= ctx.modulus() {
                return Err(fail(format!("c = {} not below p^k = {}", b.c, ctx.modulus())));
            }
            if !seen.insert((b.i, b.j, b.m)) {
                return Err(fail(format!("duplicate entry for ({}, {}, {})", b.i, b.j, b.m)));
            }
            constants.push((b.i - 1, b.j - 1, b.m - 1, b.c));
        }
        Ok(LieAlgebra::new(ctx, self.rank, constants)?)
    }
}

pub fn parse_algebra_str(text: &str) -> Result<LieAlgebra, FormatError> {
    serde_json::from_str::<AlgebraFile>(text)?.to_algebra()
}

pub fn parse_algebra(path: &Path) -> Result<LieAlgebra, FormatError> {
    parse_algebra_str(&read(path)?)
}

pub fn emit_algebra(g: &LieAlgebra, name: Option<&str>) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(g, name)).expect("serializable")
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A finite module over `GF(p)`: one dense `dim × dim` matrix (list of rows)
/// per basis element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub dim: usize,
    pub action: Vec<Vec<Vec<u64>>>,
}

impl ModuleFile {
    /// The module over the residue field of `g`.
    pub fn to_module(&self, g: &LieAlgebra) -> Result<LieModule, FormatError> {
        check_schema(self.schema)?;
        let gp = g.reduce_mod_p();
        let field = *gp.ctx();
        let mut mats = Vec::with_capacity(self.action.len());
        for (n, rows) in self.action.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(FormatError::Invalid(format!(
                    "action matrix {} is not {d}x{d}",
                    n + 1,
                    d = self.dim
                )));
            }
            mats.push(ModMatrix::from_dense(field, self.dim, rows));
        }
        Ok(LieModule::new(&gp, self.dim, mats)?)
    }
}

pub fn parse_module(path: &Path, g: &LieAlgebra) -> Result<LieModule, FormatError> {
    serde_json::from_str::<ModuleFile>(&read(path)?)?.to_module(g)
}

/// A descending chain of submodules, each given by spanning vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub ideals: Vec<Vec<Vec<u64>>>,
}

impl ChainFile {
    pub fn to_chain(&self, g: &LieAlgebra) -> Result<FiltrationChain, FormatError> {
        check_schema(self.schema)?;
        let mut ideals = Vec::with_capacity(self.ideals.len());
        for (n, gens) in self.ideals.iter().enumerate() {
            if let Some(v) = gens.iter().find(|v| v.len() != g.rank()) {
                return Err(FormatError::Invalid(format!(
                    "chain member {} has a vector of length {}, expected {}",
                    n + 1,
                    v.len(),
                    g.rank()
                )));
            }
            let gens: Vec<Vec<u64>> = gens
                .iter()
                .map(|v| v.iter().map(|&x| g.ctx().reduce(x)).collect())
                .collect();
            ideals.push(Submodule::span(*g.ctx(), g.rank(), &gens));
        }
        Ok(FiltrationChain { ideals })
    }
}

pub fn parse_chain(path: &Path, g: &LieAlgebra) -> Result<FiltrationChain, FormatError> {
    serde_json::from_str::<ChainFile>(&read(path)?)?.to_chain(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = r#"{"p": 5, "k": 1, "rank": 3, "brackets": [{"i": 1, "j": 2, "m": 3, "c": 1}]}"#;

    #[test]
    fn heisenberg_parses() {
        let g = parse_algebra_str(HEIS).unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(g.structure_constants(), &[(0, 1, 2, 1)]);
        assert_eq!(parse_algebra_str(&emit_algebra(&g, Some("h"))).unwrap(), g);
    }

    #[test]
    fn rejects_bad_records() {
        let eq = r#"{"p": 5, "rank": 3, "brackets": [{"i": 2, "j": 2, "m": 3, "c": 1}]}"#;
        assert!(matches!(parse_algebra_str(eq), Err(FormatError::Record { record: 1, .. })));
        let dup = r#"{"p": 5, "rank": 3, "brackets": [
            {"i": 1, "j": 2, "m": 3, "c": 1}, {"i": 1, "j": 2, "m": 3, "c": 2}]}"#;
        assert!(matches!(parse_algebra_str(dup), Err(FormatError::Record { record: 2, .. })));
        let big = r#"{"p": 5, "k": 2, "rank": 3, "brackets": [{"i": 1, "j": 2, "m": 3, "c": 25}]}"#;
        assert!(matches!(parse_algebra_str(big), Err(FormatError::Record { record: 1, .. })));
        let range = r#"{"p": 5, "rank": 3, "brackets": [{"i": 1, "j": 4, "m": 3, "c": 1}]}"#;
        assert!(matches!(parse_algebra_str(range), Err(FormatError::Record { .. })));
    }

    #[test]
    fn syntax_error_has_locus() {
        match parse_algebra_str("{\n  \"p\": 5,\n  \"rank\": }") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_algebra_str(r#"{"schema": 2, "p": 5, "rank": 1}"#),
            Err(FormatError::Schema(2))
        ));
    }

    #[test]
    fn jacobi_failure_propagates() {
        let bad = r#"{"p": 5, "rank": 3, "brackets": [
            {"i": 1, "j": 2, "m": 2, "c": 1}, {"i": 2, "j": 3, "m": 1, "c": 1}]}"#;
        assert!(matches!(parse_algebra_str(bad), Err(FormatError::Lie(LieError::Jacobi(_)))));
    }
}
