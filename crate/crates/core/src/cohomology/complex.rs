use super::subsets::{below, elements, subsets, Binomials};
use super::{CohomologyError, LieModule};
use crate::lie::LieAlgebra;
use crate::modarith::{ModMatrix, PrimeContext, RowEchelon};
use rayon::prelude::*;

/// Cochains `C^0 → C^1 → … → C^r` with coefficients in a finite module.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    algebra: LieAlgebra,
    module: LieModule,
    subsets: Vec<Vec<u32>>,
    binom: std::sync::Arc<Binomials>,
    /// `differentials[n] = d^n : C^n → C^{n+1}`
    differentials: Vec<ModMatrix>,
}

impl CochainComplex {
    /// Assembles every differential and checks `d ∘ d = 0`.
    pub fn new(g: &LieAlgebra, v: &LieModule) -> Result<Self, CohomologyError> {
        if g.ctx() != v.ctx() {
            return Err(CohomologyError::RingMismatch);
        }
        if v.action().len() != g.rank() {
            return Err(CohomologyError::ActionCount {
                expected: g.rank(),
                got: v.action().len(),
            });
        }
        let r = g.rank();
        let subsets: Vec<Vec<u32>> = (0..=r).map(|n| subsets(r, n)).collect();
        let binom = std::sync::Arc::new(Binomials::new(r));
        let mut cx = Self {
            algebra: g.clone(),
            module: v.clone(),
            subsets,
            binom,
            differentials: Vec::new(),
        };
        cx.differentials = (0..r).into_par_iter().map(|n| cx.assemble(n)).collect();
        for n in 0..r.saturating_sub(1) {
            if !cx.differentials[n + 1].mul(&cx.differentials[n]).is_zero() {
                return Err(CohomologyError::DSquaredNonzero { degree: n });
            }
        }
        Ok(cx)
    }

    /// Position of an `n`-subset within the basis of `C^n`.
    pub fn subset_rank(&self, mask: u32) -> usize {
        self.binom.rank(mask)
    }

    fn assemble(&self, n: usize) -> ModMatrix {
        let ctx = *self.algebra.ctx();
        let d = self.module.dim();
        let rows_t = &self.subsets[n + 1];
        let triplets: Vec<(usize, usize, u64)> = rows_t
            .par_iter()
            .enumerate()
            .flat_map_iter(|(ti, &t)| {
                let mut out = Vec::new();
                let elems = elements(t);
                for (i, &x) in elems.iter().enumerate() {
                    let s = t & !(1u32 << x);
                    let si = self.subset_rank(s);
                    let neg = i % 2 == 1;
                    for a in 0..d {
                        for &(b, c) in self.module.action()[x].row(a) {
                            let c = if neg { ctx.neg(c) } else { c };
                            out.push((ti * d + a, si * d + b, c));
                        }
                    }
                }
                for i in 0..elems.len() {
                    for j in i + 1..elems.len() {
                        let rest = t & !(1u32 << elems[i]) & !(1u32 << elems[j]);
                        let base_neg = (i + j) % 2 == 1;
                        for &(m, c) in self.algebra.basis_bracket(elems[i], elems[j]) {
                            if rest & (1u32 << m) != 0 {
                                continue;
                            }
                            let s = rest | (1u32 << m);
                            let neg = base_neg ^ (below(rest, m) % 2 == 1);
                            let c = if neg { ctx.neg(c) } else { c };
                            let si = self.subset_rank(s);
                            for a in 0..d {
                                out.push((ti * d + a, si * d + a, c));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        ModMatrix::from_triplets(ctx, rows_t.len() * d, self.subsets[n].len() * d, triplets)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &LieModule {
        &self.module
    }

    pub fn ctx(&self) -> &PrimeContext {
        self.algebra.ctx()
    }

    pub fn top_degree(&self) -> usize {
        self.algebra.rank()
    }

    pub fn subsets(&self, n: usize) -> &[u32] {
        &self.subsets[n]
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.subsets.get(n).map_or(0, |s| s.len() * self.module.dim())
    }

    /// `d^n : C^n → C^{n+1}`; the zero map out of the top degree.
    pub fn differential(&self, n: usize) -> ModMatrix {
        match self.differentials.get(n) {
            Some(m) => m.clone(),
            None => ModMatrix::zeros(*self.ctx(), self.cochain_dim(n + 1), self.cochain_dim(n)),
        }
    }

    pub fn differentials(&self) -> &[ModMatrix] {
        &self.differentials
    }

    fn check_degree(&self, n: usize) -> Result<(), CohomologyError> {
        if n > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange {
                degree: n,
                max: self.top_degree(),
            });
        }
        Ok(())
    }

    fn rank_of(m: &ModMatrix) -> usize {
        if m.rows() == 0 || m.cols() == 0 || m.nnz() == 0 {
            return 0;
        }
        let mut ech = RowEchelon::new(*m.ctx(), m.cols());
        for r in 0..m.rows() {
            ech.insert_sparse(m.row(r));
            if ech.rank() == m.cols() {
                break;
            }
        }
        ech.rank()
    }

    /// Ranks of `d^0, …, d^{r−1}` over `GF(p)`, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        assert!(self.ctx().is_field(), "ranks are taken over GF(p)");
        self.differentials.par_iter().map(Self::rank_of).collect()
    }

    /// `b_n = dim C^n − rank d^n − rank d^{n−1}` for `n = 0..=r`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..=self.top_degree())
            .map(|n| {
                let out = ranks.get(n).copied().unwrap_or(0);
                let inc = if n == 0 { 0 } else { ranks[n - 1] };
                self.cochain_dim(n) - out - inc
            })
            .collect()
    }

    /// `Σ (−1)^n dim C^n`
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_degree())
            .map(|n| {
                let d = self.cochain_dim(n) as i64;
                if n % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    /// Representative cocycles for `H^n` and the data to read off the class
    /// of any cocycle.
    pub fn cohomology(&self, n: usize) -> Result<CohomologySpace, CohomologyError> {
        self.check_degree(n)?;
        let ctx = *self.ctx();
        if !ctx.is_field() {
            return Err(crate::modarith::ModArithError::RequiresField(ctx.k()).into());
        }
        let dim = self.cochain_dim(n);
        let kernel = self.differential(n).rank_kernel()?.kernel;
        // coboundaries first, then kernel vectors not yet spanned
        let mut plain = RowEchelon::new(ctx, dim);
        let incoming = if n == 0 {
            None
        } else {
            Some(self.differential(n - 1).transpose())
        };
        let mut coboundaries: Vec<Vec<(usize, u64)>> = Vec::new();
        if let Some(t) = &incoming {
            for r in 0..t.rows() {
                if plain.insert_sparse(t.row(r)).is_some() {
                    coboundaries.push(t.row(r).to_vec());
                }
            }
        }
        let mut reps: Vec<Vec<u64>> = Vec::new();
        for z in kernel {
            if plain.insert(&z).is_some() {
                reps.push(z);
            }
        }
        let b = reps.len();
        let mut tagged = RowEchelon::new(ctx, dim + b);
        for row in &coboundaries {
            tagged.insert_sparse(row);
        }
        for (i, z) in reps.iter().enumerate() {
            let mut row = z.clone();
            row.extend(std::iter::repeat(0).take(b));
            row[dim + i] = 1;
            tagged.insert(&row);
        }
        Ok(CohomologySpace {
            degree: n,
            cochain_dim: dim,
            representatives: reps,
            outgoing: self.differential(n),
            reducer: tagged,
        })
    }
}

/// `H^n` with chosen cocycle representatives.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    degree: usize,
    cochain_dim: usize,
    representatives: Vec<Vec<u64>>,
    outgoing: ModMatrix,
    reducer: RowEchelon,
}

impl CohomologySpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn cochain_dim(&self) -> usize {
        self.cochain_dim
    }

    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.representatives
    }

    pub fn is_cocycle(&self, z: &[u64]) -> bool {
        z.len() == self.cochain_dim && self.outgoing.mul_vec(z).iter().all(|&x| x == 0)
    }

    /// Coordinates of the class of `z` in the representative basis.
    pub fn coordinates(&self, z: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        if !self.is_cocycle(z) {
            return Err(CohomologyError::NotACocycle);
        }
        let ctx = *self.outgoing.ctx();
        let mut acc = z.to_vec();
        acc.extend(std::iter::repeat(0).take(self.dim()));
        self.reducer.reduce(&mut acc);
        debug_assert!(acc[..self.cochain_dim].iter().all(|&x| x == 0));
        Ok(acc[self.cochain_dim..].iter().map(|&t| ctx.neg(t)).collect())
    }

    /// Whether `z` is a coboundary.
    pub fn is_coboundary(&self, z: &[u64]) -> bool {
        self.coordinates(z).is_ok_and(|c| c.iter().all(|&x| x == 0))
    }

    /// `Σ coords[i] · rep_i`
    pub fn cocycle(&self, coords: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        if coords.len() != self.dim() {
            return Err(CohomologyError::ClassLength {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        let ctx = *self.outgoing.ctx();
        let mut out = vec![0; self.cochain_dim];
        for (c, r) in coords.iter().zip(&self.representatives) {
            crate::modarith::vec::axpy(&ctx, &mut out, *c, r);
        }
        Ok(out)
    }
}
