//! Chevalley–Eilenberg cohomology of finite-rank Lie algebras.
//!
//! `C^n = Hom(Λ^n g, V)` has basis `e_S^* ⊗ v_a` for `n`-subsets `S` of the
//! algebra basis, listed as bitmasks in increasing numeric order, with the
//! coefficient index varying fastest. The differential is
//!
//! ```text
//! (dφ)(x_0, …, x_n) = Σ_i (−1)^i ρ(x_i) φ(…, x̂_i, …)
//!                   + Σ_{i<j} (−1)^{i+j} φ([x_i, x_j], …, x̂_i, …, x̂_j, …)
//! ```

mod complex;
mod integral;
mod maps;
pub mod subsets;

pub use complex::{CochainComplex, CohomologySpace};
pub use integral::{eckmann_shapiro_check, integral_cohomology, EckmannShapiroReport, IntegralCohomology};
pub use maps::{proportional, AlgebraOperator};

use crate::lie::{LieAlgebra, LieError};
use crate::modarith::{ModArithError, ModMatrix, PrimeContext};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Ring(#[from] ModArithError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("module axiom fails for (e{}, e{})", .i + 1, .j + 1)]
    ModuleAxiom { i: usize, j: usize },
    #[error("module has {got} action matrices, algebra has rank {expected}")]
    ActionCount { expected: usize, got: usize },
    #[error("action matrix {index} is not {dim}x{dim}")]
    ActionShape { index: usize, dim: usize },
    #[error("module and algebra use different rings")]
    RingMismatch,
    #[error("d∘d is nonzero in degree {degree}")]
    DSquaredNonzero { degree: usize },
    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("operation requires trivial coefficients")]
    RequiresTrivialCoefficients,
    #[error("operator does not preserve cocycles in degree {degree} (representative {witness})")]
    DoesNotPreserveCocycles { degree: usize, witness: usize },
    #[error("operator does not preserve coboundaries in degree {degree}")]
    DoesNotPreserveCoboundaries { degree: usize },
    #[error("universal coefficients predict b_{degree} = {predicted}, direct computation gives {betti}")]
    UniversalCoefficients {
        degree: usize,
        predicted: usize,
        betti: usize,
    },
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("class vector has length {got}, expected {expected}")]
    ClassLength { expected: usize, got: usize },
}

/// A finite module over a Lie algebra: one `dim × dim` matrix per basis
/// element, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    ctx: PrimeContext,
    dim: usize,
    action: Vec<ModMatrix>,
}

impl LieModule {
    pub fn trivial(ctx: PrimeContext, rank: usize, dim: usize) -> Self {
        Self {
            ctx,
            dim,
            action: vec![ModMatrix::zeros(ctx, dim, dim); rank],
        }
    }

    /// Checks `ρ([e_i, e_j]) = ρ(e_i)ρ(e_j) − ρ(e_j)ρ(e_i)` for all `i < j`.
    pub fn new(g: &LieAlgebra, dim: usize, action: Vec<ModMatrix>) -> Result<Self, CohomologyError> {
        let ctx = *g.ctx();
        if action.len() != g.rank() {
            return Err(CohomologyError::ActionCount {
                expected: g.rank(),
                got: action.len(),
            });
        }
        for (index, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(CohomologyError::ActionShape { index, dim });
            }
            if a.ctx() != &ctx {
                return Err(CohomologyError::RingMismatch);
            }
        }
        let m = Self { ctx, dim, action };
        if let Some((i, j)) = m.axiom_violation(g) {
            return Err(CohomologyError::ModuleAxiom { i, j });
        }
        Ok(m)
    }

    fn axiom_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        let r = g.rank();
        for i in 0..r {
            for j in i + 1..r {
                let comm = self.action[i]
                    .mul(&self.action[j])
                    .sub(&self.action[j].mul(&self.action[i]));
                let mut lhs = ModMatrix::zeros(self.ctx, self.dim, self.dim);
                for &(m, c) in g.basis_bracket(i, j) {
                    lhs = lhs.add(&self.action[m].scale(c));
                }
                if lhs != comm {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[ModMatrix] {
        &self.action
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(ModMatrix::is_zero)
    }

    /// Entries reduced into `Z/p^j`.
    pub fn with_context(&self, ctx: PrimeContext) -> Self {
        Self {
            ctx,
            dim: self.dim,
            action: self.action.iter().map(|a| a.with_context(ctx)).collect(),
        }
    }
}

/// `b_n` of `g` with trivial one-dimensional coefficients over `GF(p)`.
/// The algebra is reduced mod `p` first.
pub fn betti_trivial(g: &LieAlgebra) -> Result<Vec<usize>, CohomologyError> {
    let gp = g.reduce_mod_p();
    let v = LieModule::trivial(*gp.ctx(), gp.rank(), 1);
    Ok(CochainComplex::new(&gp, &v)?.betti())
}
