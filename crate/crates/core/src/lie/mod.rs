//! Finite-rank Lie algebras over `Z/p^k` given by structure constants.

mod pf;
mod series;
mod submodule;

pub use pf::{FiltrationChain, PfCondition, PfVerdict, PfViolation};
pub use series::{ChainLink, SolvableChain};
pub use submodule::{FreeBasis, Submodule};

use crate::modarith::{vec as mvec, ModArithError, ModMatrix, PrimeContext};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// First basis triple on which the Jacobi identity fails. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<u64>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, m) = self.triple;
        write!(
            f,
            "Jacobi identity fails on (e{}, e{}, e{}), residual {:?}",
            i + 1,
            j + 1,
            m + 1,
            self.residual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Ring(#[from] ModArithError),
    #[error("structure constant index out of range: [e{}, e{}] -> e{} with rank {rank}", .i + 1, .j + 1, .m + 1)]
    IndexOutOfRange {
        i: usize,
        j: usize,
        m: usize,
        rank: usize,
    },
    #[error("structure constants must be given for i < j, got ({}, {})", .i + 1, .j + 1)]
    UnorderedPair { i: usize, j: usize },
    #[error("{0}")]
    Jacobi(JacobiViolation),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra has rank zero")]
    ZeroAlgebra,
    #[error("abelianization torsion at this precision: the derived subalgebra has full isolator")]
    AbelianizationTorsion,
    #[error("submodule is not saturated")]
    NotSaturated,
    #[error("submodule is not closed under the bracket")]
    NotSubalgebra,
    #[error("chain member {index} is not an ideal (witness {witness:?})")]
    NotAnIdeal { index: usize, witness: Vec<u64> },
}

/// A Lie algebra of rank `r` over `Z/p^k` with basis `e_0 .. e_{r-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    ctx: PrimeContext,
    rank: usize,
    /// `(i, j, m, c)` with `i < j`, sorted, nonzero `c`: `[e_i, e_j] ∋ c·e_m`.
    constants: Vec<(usize, usize, usize, u64)>,
    /// `table[i * rank + j]` is `[e_i, e_j]` as a sparse vector, for all `i, j`.
    table: Vec<Vec<(usize, u64)>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("p", &self.ctx.p())
            .field("k", &self.ctx.k())
            .field("rank", &self.rank)
            .field("constants", &self.constants)
            .finish()
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra. Duplicate `(i, j, m)` entries are summed.
    pub fn new(
        ctx: PrimeContext,
        rank: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, u64)>,
    ) -> Result<Self, LieError> {
        let g = Self::new_unchecked(ctx, rank, constants)?;
        g.validate().map_err(LieError::Jacobi)?;
        Ok(g)
    }

    /// Builds the table without checking the Jacobi identity. Index ranges are
    /// still checked.
    pub fn new_unchecked(
        ctx: PrimeContext,
        rank: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, u64)>,
    ) -> Result<Self, LieError> {
        let mut merged: std::collections::BTreeMap<(usize, usize, usize), u64> =
            std::collections::BTreeMap::new();
        for (i, j, m, c) in constants {
            if i >= rank || j >= rank || m >= rank {
                return Err(LieError::IndexOutOfRange { i, j, m, rank });
            }
            if i >= j {
                return Err(LieError::UnorderedPair { i, j });
            }
            let e = merged.entry((i, j, m)).or_insert(0);
            *e = ctx.add(*e, ctx.reduce(c));
        }
        let constants: Vec<(usize, usize, usize, u64)> = merged
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((i, j, m), c)| (i, j, m, c))
            .collect();
        let mut table = vec![Vec::new(); rank * rank];
        for &(i, j, m, c) in &constants {
            table[i * rank + j].push((m, c));
            table[j * rank + i].push((m, ctx.neg(c)));
        }
        Ok(Self {
            ctx,
            rank,
            constants,
            table,
        })
    }

    pub fn abelian(ctx: PrimeContext, rank: usize) -> Self {
        Self::new_unchecked(ctx, rank, []).expect("no constants")
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero structure constants `(i, j, m, c)` with `i < j`, sorted.
    pub fn structure_constants(&self) -> &[(usize, usize, usize, u64)] {
        &self.constants
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.table[i * self.rank + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    fn check_len(&self, x: &[u64]) -> Result<(), LieError> {
        if x.len() != self.rank {
            return Err(LieError::DimensionMismatch {
                expected: self.rank,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let ctx = &self.ctx;
        let mut out = vec![0u64; self.rank];
        for &(i, j, m, c) in &self.constants {
            let coeff = ctx.sub(ctx.mul(x[i], y[j]), ctx.mul(x[j], y[i]));
            if coeff != 0 {
                out[m] = ctx.add(out[m], ctx.mul(coeff, c));
            }
        }
        out
    }

    /// `[e_i, y]`
    fn bracket_basis_vec(&self, i: usize, y: &[u64]) -> Vec<u64> {
        let ctx = &self.ctx;
        let mut out = vec![0u64; self.rank];
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            for &(m, c) in self.basis_bracket(i, j) {
                out[m] = ctx.add(out[m], ctx.mul(yj, c));
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple `i < j < m`.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        let r = self.rank;
        let ctx = &self.ctx;
        let unit = |i| mvec::unit(r, i);
        for i in 0..r {
            for j in i + 1..r {
                for m in j + 1..r {
                    let mut acc = vec![0u64; r];
                    for (a, b, c) in [(i, j, m), (j, m, i), (m, i, j)] {
                        let ab = self.bracket_basis_vec(a, &unit(b));
                        let t = self.bracket_unchecked(&ab, &unit(c));
                        mvec::axpy(ctx, &mut acc, 1, &t);
                    }
                    if !mvec::is_zero(&acc) {
                        return Err(JacobiViolation {
                            triple: (i, j, m),
                            residual: acc,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `y ↦ [x, y]` acting on column vectors.
    pub fn adjoint(&self, x: &[u64]) -> Result<ModMatrix, LieError> {
        self.check_len(x)?;
        let r = self.rank;
        let mut trip = Vec::new();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..r {
                for &(m, c) in self.basis_bracket(i, j) {
                    trip.push((m, j, self.ctx.mul(xi, c)));
                }
            }
        }
        Ok(ModMatrix::from_triplets(self.ctx, r, r, trip))
    }

    pub fn reduce_mod_p(&self) -> LieAlgebra {
        self.with_context(self.ctx.residue_field())
    }

    /// Reinterprets the constants in a coarser ring `Z/p^j`, `j ≤ k`.
    pub fn with_context(&self, ctx: PrimeContext) -> LieAlgebra {
        Self::new_unchecked(ctx, self.rank, self.constants.iter().copied())
            .expect("indices already checked")
    }

    /// Whether the span of `h` is closed under brackets with all of `g`.
    pub fn is_ideal(&self, h: &Submodule) -> bool {
        self.ideal_witness(h).is_none()
    }

    /// A bracket `[e_i, b]` leaving `h`, if any.
    pub fn ideal_witness(&self, h: &Submodule) -> Option<Vec<u64>> {
        for b in h.basis() {
            for i in 0..self.rank {
                let v = self.bracket_basis_vec(i, b);
                if !h.contains(&v) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`
    pub fn bracket_submodules(&self, a: &Submodule, b: &Submodule) -> Submodule {
        let mut gens = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_unchecked(x, y);
                if !mvec::is_zero(&v) {
                    gens.push(v);
                }
            }
        }
        Submodule::span(self.ctx, self.rank, &gens)
    }

    /// `[S, g]`, computed against the standard basis of `g`.
    pub(crate) fn bracket_with_all(&self, s: &Submodule) -> Submodule {
        let mut gens = Vec::new();
        for x in s.basis() {
            for i in 0..self.rank {
                let v = self.bracket_basis_vec(i, x);
                if !mvec::is_zero(&v) {
                    gens.push(v);
                }
            }
        }
        Submodule::span(self.ctx, self.rank, &gens)
    }

    pub fn full(&self) -> Submodule {
        Submodule::full(self.ctx, self.rank)
    }

    /// Structure constants of a saturated subalgebra in its canonical free basis.
    pub fn subalgebra(&self, h: &Submodule) -> Result<(LieAlgebra, FreeBasis), LieError> {
        let fb = h.free_basis().ok_or(LieError::NotSaturated)?;
        let d = fb.rank();
        let mut consts = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let v = self.bracket_unchecked(&fb.vectors[a], &fb.vectors[b]);
                if !h.contains(&v) {
                    return Err(LieError::NotSubalgebra);
                }
                for (m, c) in fb.coordinates(&v).into_iter().enumerate() {
                    if c != 0 {
                        consts.push((a, b, m, c));
                    }
                }
            }
        }
        let sub = Self::new_unchecked(self.ctx, d, consts)?;
        Ok((sub, fb))
    }
}
