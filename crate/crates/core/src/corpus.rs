//! Named families of algebras: `abelian(n)`, `heisenberg_gen(n)`,
//! `filiform(n)`, `solvable_px` and `ut(n)`.

use crate::lie::{LieAlgebra, LieError};
use crate::modarith::PrimeContext;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus entry `{0}`")]
    Unknown(String),
    #[error("`{name}`: {reason}")]
    Parameter { name: String, reason: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub parameter: Option<&'static str>,
    pub description: &'static str,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "abelian",
        parameter: Some("n >= 1"),
        description: "rank n, all brackets zero",
    },
    CorpusEntry {
        name: "heisenberg_gen",
        parameter: Some("n >= 1"),
        description: "rank 2n+1, basis x_1..x_n, y_1..y_n, z with [x_i, y_i] = z",
    },
    CorpusEntry {
        name: "filiform",
        parameter: Some("n >= 1"),
        description: "rank n, [e_1, e_i] = e_{i+1} for 2 <= i < n",
    },
    CorpusEntry {
        name: "solvable_px",
        parameter: None,
        description: "rank 2, [t, x] = p x; requires k >= 2",
    },
    CorpusEntry {
        name: "ut",
        parameter: Some("2 <= n, n - 1 < p"),
        description: "strictly upper triangular n x n matrices, ordered by superdiagonal",
    },
];

pub fn abelian(ctx: PrimeContext, n: usize) -> Result<LieAlgebra, CorpusError> {
    if n == 0 {
        return Err(param("abelian", "n must be at least 1"));
    }
    Ok(LieAlgebra::abelian(ctx, n))
}

/// Basis order `x_1 .. x_n, y_1 .. y_n, z`.
pub fn heisenberg_gen(ctx: PrimeContext, n: usize) -> Result<LieAlgebra, CorpusError> {
    if n == 0 {
        return Err(param("heisenberg_gen", "n must be at least 1"));
    }
    let z = 2 * n;
    Ok(LieAlgebra::new(ctx, 2 * n + 1, (0..n).map(|i| (i, n + i, z, 1)))?)
}

pub fn filiform(ctx: PrimeContext, n: usize) -> Result<LieAlgebra, CorpusError> {
    if n == 0 {
        return Err(param("filiform", "n must be at least 1"));
    }
    Ok(LieAlgebra::new(ctx, n, (1..n.saturating_sub(1)).map(|i| (0, i, i + 1, 1)))?)
}

pub fn solvable_px(ctx: PrimeContext) -> Result<LieAlgebra, CorpusError> {
    if ctx.k() < 2 {
        return Err(param("solvable_px", "requires k >= 2"));
    }
    Ok(LieAlgebra::new(ctx, 2, [(0, 1, 1, ctx.p())])?)
}

/// Index of the matrix unit `E_{a,b}` (`a < b`, 0-based) in `ut(n)`: units are
/// grouped by superdiagonal `b − a`, then ordered by row.
pub fn ut_index(n: usize, a: usize, b: usize) -> usize {
    let d = b - a;
    // superdiagonals 1 .. d−1 hold (n−1) + … + (n−d+1) units
    (1..d).map(|s| n - s).sum::<usize>() + a
}

pub fn ut(ctx: PrimeContext, n: usize) -> Result<LieAlgebra, CorpusError> {
    if n < 2 {
        return Err(param("ut", "n must be at least 2"));
    }
    if (n - 1) as u64 >= ctx.p() {
        return Err(param("ut", &format!("class {} is not below p = {}", n - 1, ctx.p())));
    }
    let units: Vec<(usize, usize)> = (1..n).flat_map(|d| (0..n - d).map(move |a| (a, a + d))).collect();
    let mut consts = Vec::new();
    for (x, &(a, b)) in units.iter().enumerate() {
        for (y, &(c, d)) in units.iter().enumerate().skip(x + 1) {
            // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
            if b == c {
                consts.push((x, y, ut_index(n, a, d), 1));
            }
            if d == a {
                consts.push((x, y, ut_index(n, c, b), ctx.neg(1)));
            }
        }
    }
    Ok(LieAlgebra::new(ctx, units.len(), consts)?)
}

fn param(name: &str, reason: &str) -> CorpusError {
    CorpusError::Parameter {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

/// Parses `name` or `name(n)` and builds the algebra.
pub fn corpus(spec: &str, ctx: PrimeContext) -> Result<LieAlgebra, CorpusError> {
    let spec = spec.trim();
    let (name, arg) = match spec.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| CorpusError::Unknown(spec.to_string()))?;
            let n = inner
                .trim()
                .parse::<usize>()
                .map_err(|_| param(name.trim(), &format!("`{inner}` is not a non-negative integer")))?;
            (name.trim(), Some(n))
        }
        None => (spec, None),
    };
    let need = |n: Option<usize>| n.ok_or_else(|| param(name, "missing parameter"));
    match name {
        "abelian" => abelian(ctx, need(arg)?),
        "heisenberg_gen" => heisenberg_gen(ctx, need(arg)?),
        "filiform" => filiform(ctx, need(arg)?),
        "ut" => ut(ctx, need(arg)?),
        "solvable_px" if arg.is_none() => solvable_px(ctx),
        "solvable_px" => Err(param(name, "takes no parameter")),
        _ => Err(CorpusError::Unknown(spec.to_string())),
    }
}

/// The fixed list of named algebras exercised by the verification suites,
/// at precision `k` (at least 2, as `solvable_px` requires).
pub fn standard_corpus(k: u32) -> Vec<(String, LieAlgebra)> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<(String, LieAlgebra)>, p: u64, spec: &str| {
        let ctx = PrimeContext::new(p, k).expect("valid prime");
        let g = corpus(spec, ctx).expect("corpus entry builds");
        out.push((format!("{spec} p={p} k={k}"), g));
    };
    for p in [5, 7] {
        for n in 1..=6 {
            push(&mut out, p, &format!("abelian({n})"));
        }
        for n in 1..=2 {
            push(&mut out, p, &format!("heisenberg_gen({n})"));
        }
        for n in 2..=5 {
            push(&mut out, p, &format!("filiform({n})"));
        }
        push(&mut out, p, "solvable_px");
    }
    push(&mut out, 5, "ut(4)");
    push(&mut out, 7, "ut(4)");
    push(&mut out, 7, "ut(5)");
    out
}
