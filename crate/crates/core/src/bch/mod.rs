//! Baker–Campbell–Hausdorff series and the group structure it puts on a
//! nilpotent Lie algebra, plus truncated exponentials and logarithms of
//! operators.

mod hall;
mod table;

pub use hall::{is_lyndon, witt_dimension, HallBasis, HallElement, Shape};
pub use table::{both_routes, BchTable, BchTerm, BchTermRecord};

use crate::lie::{LieAlgebra, LieError, Submodule};
use crate::modarith::{ModArithError, ModMatrix, PrimeContext};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BchError {
    #[error("degree {degree} exceeds p - 1 = {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("coefficient denominator {denominator} is divisible by p")]
    NotPIntegral { denominator: String },
    #[error("Dynkin expansion disagrees with direct expansion in degree {degree}")]
    OracleMismatch { degree: usize },
    #[error("nilpotency class must be below p = {p} (found {})", .class.map_or("not nilpotent".to_string(), |c| c.to_string()))]
    ClassTooLarge { class: Option<usize>, p: u64 },
    #[error("operator does not preserve the submodule")]
    NotPreserved,
    #[error("exponential not exact at this precision: ad^p is nonzero")]
    ExponentialNotExact,
    #[error("not unipotent of class at most p: (U - I)^p is nonzero")]
    NotUnipotent,
    #[error("not nilpotent of class below p: N^p is nonzero")]
    NotNilpotent,
    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] ModArithError),
}

/// The group law `x·y = Φ(x, y)` on a nilpotent algebra of class below `p`.
#[derive(Debug, Clone)]
pub struct NilpotentGroup {
    algebra: LieAlgebra,
    table: BchTable,
}

impl NilpotentGroup {
    pub fn new(algebra: &LieAlgebra) -> Result<Self, BchError> {
        let p = algebra.ctx().p();
        let class = algebra.nilpotency_class();
        match class {
            Some(c) if (c as u64) < p => {
                let table = BchTable::new(*algebra.ctx(), c.max(1))?;
                Ok(Self {
                    algebra: algebra.clone(),
                    table,
                })
            }
            _ => Err(BchError::ClassTooLarge { class, p }),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn table(&self) -> &BchTable {
        &self.table
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, BchError> {
        // validates lengths
        self.algebra.bracket(x, y)?;
        Ok(self
            .table
            .evaluate(x, y, |a, b| self.algebra.bracket_unchecked(a, b)))
    }

    /// `x^λ = λ·x`
    pub fn pow(&self, x: &[u64], lambda: u64) -> Vec<u64> {
        let ctx = self.algebra.ctx();
        x.iter().map(|&c| ctx.mul(c, ctx.reduce(lambda))).collect()
    }

    pub fn inverse(&self, x: &[u64]) -> Vec<u64> {
        let ctx = self.algebra.ctx();
        x.iter().map(|&c| ctx.neg(c)).collect()
    }
}

pub fn group_mul(g: &LieAlgebra, x: &[u64], y: &[u64]) -> Result<Vec<u64>, BchError> {
    NilpotentGroup::new(g)?.mul(x, y)
}

pub fn group_pow(g: &LieAlgebra, x: &[u64], lambda: u64) -> Result<Vec<u64>, BchError> {
    Ok(NilpotentGroup::new(g)?.pow(x, lambda))
}

fn check_square(m: &ModMatrix) -> Result<(), BchError> {
    if !m.is_square() {
        return Err(BchError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// `1/j mod p^k` for `1 ≤ j < p`.
fn small_inverse(ctx: &PrimeContext, j: u64) -> u64 {
    ctx.unit_inverse(j).expect("j < p is a unit")
}

/// `Σ_{j<p} N^j / j!`, defined when `N^p = 0`.
pub fn truncated_exp(n: &ModMatrix) -> Result<ModMatrix, BchError> {
    check_square(n)?;
    let ctx = *n.ctx();
    let p = ctx.p();
    let dim = n.rows();
    let mut term = ModMatrix::identity(ctx, dim);
    let mut sum = term.clone();
    for j in 1..p {
        term = term.mul(n).scale(small_inverse(&ctx, j));
        sum = sum.add(&term);
    }
    if !term.mul(n).is_zero() {
        return Err(BchError::NotNilpotent);
    }
    Ok(sum)
}

/// `Σ_{j<p} (−1)^{j+1} (U − I)^j / j`, defined when `(U − I)^p = 0`.
pub fn truncated_log(u: &ModMatrix) -> Result<ModMatrix, BchError> {
    check_square(u)?;
    let ctx = *u.ctx();
    let p = ctx.p();
    let dim = u.rows();
    let e = u.sub(&ModMatrix::identity(ctx, dim));
    let mut power = e.clone();
    let mut sum = ModMatrix::zeros(ctx, dim, dim);
    for j in 1..p {
        let c = small_inverse(&ctx, j);
        let c = if j % 2 == 1 { c } else { ctx.neg(c) };
        sum = sum.add(&power.scale(c));
        power = power.mul(&e);
    }
    if !power.is_zero() {
        return Err(BchError::NotUnipotent);
    }
    Ok(sum)
}

/// `exp(ad σ)` restricted to a saturated submodule `h`, as a matrix acting
/// on column vectors of coordinates in the canonical free basis of `h`.
pub fn conjugation_operator(g: &LieAlgebra, sigma: &[u64], h: &Submodule) -> Result<ModMatrix, BchError> {
    let ad = g.adjoint(sigma)?;
    let fb = h.free_basis().ok_or(LieError::NotSaturated)?;
    let ctx = *g.ctx();
    let d = fb.rank();
    let mut trip = Vec::new();
    for (col, b) in fb.vectors.iter().enumerate() {
        let v = ad.mul_vec(b);
        if !h.contains(&v) {
            return Err(BchError::NotPreserved);
        }
        for (row, c) in fb.coordinates(&v).into_iter().enumerate() {
            trip.push((row, col, c));
        }
    }
    let restricted = ModMatrix::from_triplets(ctx, d, d, trip);
    truncated_exp(&restricted).map_err(|e| match e {
        BchError::NotNilpotent => BchError::ExponentialNotExact,
        e => e,
    })
}
