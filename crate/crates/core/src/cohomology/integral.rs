use super::subsets::{elements, shuffle_sign, subsets, Binomials};
use super::{CochainComplex, CohomologyError, LieModule};
use crate::lie::LieAlgebra;
use crate::modarith::ModMatrix;
use rayon::prelude::*;
use serde::Serialize;

/// `H^n(g; Z/p^k) ≅ (Z/p^k)^free_rank ⊕ ⊕_a Z/p^a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralCohomology {
    pub degree: usize,
    pub free_rank: usize,
    /// Exponents `a` with `0 < a < k`, from the kernel of `d^n` and the
    /// cokernel of `d^{n−1}`, sorted.
    pub torsion: Vec<u32>,
    /// Betti number over `GF(p)` predicted by universal coefficients:
    /// free rank plus torsion summands of `d^n` and `d^{n−1}`.
    pub predicted_betti: usize,
}

/// Cohomology of `g` over `Z/p^k` with trivial coefficients in every
/// degree, read off the Smith forms of the differentials. Fails with a
/// mismatch error if universal coefficients disagree with the `GF(p)`
/// Betti numbers of the reduction.
pub fn integral_cohomology(g: &LieAlgebra) -> Result<Vec<IntegralCohomology>, CohomologyError> {
    let ctx = *g.ctx();
    let k = ctx.k();
    let r = g.rank();
    let cx = CochainComplex::new(g, &LieModule::trivial(ctx, r, 1))?;
    let exps: Vec<Vec<u32>> = cx
        .differentials()
        .par_iter()
        .map(|d| {
            if d.nnz() == 0 {
                Vec::new()
            } else {
                d.smith_normal_form().exponents().to_vec()
            }
        })
        .collect();
    let rank_k = |n: usize| exps.get(n).map_or(0, |e| e.iter().filter(|&&a| a < k).count());
    let tors = |n: usize| -> Vec<u32> {
        exps.get(n)
            .map(|e| e.iter().copied().filter(|&a| a > 0 && a < k).collect())
            .unwrap_or_default()
    };
    let out: Vec<IntegralCohomology> = (0..=r)
        .map(|n| {
            let inc = if n == 0 { 0 } else { rank_k(n - 1) };
            let free_rank = cx.cochain_dim(n) - rank_k(n) - inc;
            let mut torsion = tors(n);
            let from_below = if n == 0 { Vec::new() } else { tors(n - 1) };
            let predicted_betti = free_rank + torsion.len() + from_below.len();
            torsion.extend(from_below);
            torsion.sort_unstable();
            IntegralCohomology {
                degree: n,
                free_rank,
                torsion,
                predicted_betti,
            }
        })
        .collect();
    let mod_p = super::betti_trivial(g)?;
    for (h, b) in out.iter().zip(&mod_p) {
        if h.predicted_betti != *b {
            return Err(CohomologyError::UniversalCoefficients {
                degree: h.degree,
                predicted: h.predicted_betti,
                betti: *b,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EckmannShapiroReport {
    /// Betti numbers of `g/pg` with coefficients `V`.
    pub reduced: Vec<usize>,
    /// Betti numbers from the complex of `g` over `Z/p^k`, paired with `V`.
    pub lifted: Vec<usize>,
    pub agree: bool,
}

/// Boundary `∂ : Λ^{n+1} g → Λ^n g` over `Z/p^k`,
/// `∂(x_0 ∧ … ∧ x_n) = Σ_{i<j} (−1)^{i+j} [x_i, x_j] ∧ x_0 ∧ … x̂_i … x̂_j …`.
fn boundary(g: &LieAlgebra, binom: &Binomials, n: usize) -> ModMatrix {
    let ctx = *g.ctx();
    let r = g.rank();
    let src = subsets(r, n + 1);
    let mut trip = Vec::new();
    for (col, &t) in src.iter().enumerate() {
        let el = elements(t);
        for i in 0..el.len() {
            for j in i + 1..el.len() {
                let rest = t & !(1 << el[i]) & !(1 << el[j]);
                for &(m, c) in g.basis_bracket(el[i], el[j]) {
                    if rest & (1 << m) != 0 {
                        continue;
                    }
                    let flip = ((i + j) % 2 == 1) ^ shuffle_sign(1 << m, rest);
                    let c = if flip { ctx.neg(c) } else { c };
                    trip.push((binom.rank(rest | (1 << m)), col, c));
                }
            }
        }
    }
    ModMatrix::from_triplets(ctx, binom.get(r, n), src.len(), trip)
}

/// Compares `H^*(g/pg; V)` with the cohomology of `Hom_{Ug}(Ug ⊗ Λ g, V)`
/// assembled from the boundary of `g` over `Z/p^k` and reduced only when
/// paired with `V`.
pub fn eckmann_shapiro_check(g: &LieAlgebra, v: &LieModule) -> Result<EckmannShapiroReport, CohomologyError> {
    let field = g.ctx().residue_field();
    if v.ctx() != &field {
        return Err(CohomologyError::RingMismatch);
    }
    let gp = g.reduce_mod_p();
    let reduced = CochainComplex::new(&gp, v)?.betti();

    let r = g.rank();
    let d = v.dim();
    let binom = Binomials::new(r);
    let diffs: Vec<ModMatrix> = (0..r)
        .into_par_iter()
        .map(|n| {
            let del = boundary(g, &binom, n).with_context(field);
            let src = subsets(r, n + 1);
            let mut trip = Vec::new();
            for (ti, &t) in src.iter().enumerate() {
                // Ug part: Σ_i (−1)^i x_i ⊗ (… x̂_i …)
                for (i, x) in elements(t).into_iter().enumerate() {
                    let si = binom.rank(t & !(1 << x));
                    for a in 0..d {
                        for &(b, c) in v.action()[x].row(a) {
                            let c = if i % 2 == 1 { field.neg(c) } else { c };
                            trip.push((ti * d + a, si * d + b, c));
                        }
                    }
                }
            }
            let del_t = del.transpose();
            for ti in 0..del_t.rows() {
                for &(si, c) in del_t.row(ti) {
                    for a in 0..d {
                        trip.push((ti * d + a, si * d + a, c));
                    }
                }
            }
            ModMatrix::from_triplets(field, src.len() * d, binom.get(r, n) * d, trip)
        })
        .collect();
    let ranks: Vec<usize> = diffs.par_iter().map(|m| m.rank().unwrap_or(0)).collect();
    let lifted: Vec<usize> = (0..=r)
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n == 0 { 0 } else { ranks[n - 1] };
            binom.get(r, n) * d - out - inc
        })
        .collect();
    Ok(EckmannShapiroReport {
        agree: reduced == lifted,
        reduced,
        lifted,
    })
}
