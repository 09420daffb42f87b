use crate::modarith::{howell_form, in_span, ModMatrix, PrimeContext};

/// A submodule of `(Z/p^k)^n`, stored by its Howell form.
///
/// Two submodules are equal exactly when their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ctx: PrimeContext,
    dim: usize,
    basis: Vec<Vec<u64>>,
}

/// A basis of a saturated submodule normalised so that its restriction to
/// `pivots` is the identity. The coordinates of a member are its entries at
/// those columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeBasis {
    pub pivots: Vec<usize>,
    pub vectors: Vec<Vec<u64>>,
}

impl FreeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn coordinates(&self, x: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&c| x[c]).collect()
    }

    /// `Σ coords[i] · vectors[i]`
    pub fn combine(&self, ctx: &PrimeContext, coords: &[u64]) -> Vec<u64> {
        let n = self.vectors.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (c, v) in coords.iter().zip(&self.vectors) {
            crate::modarith::vec::axpy(ctx, &mut out, *c, v);
        }
        out
    }
}

impl Submodule {
    pub fn span(ctx: PrimeContext, dim: usize, generators: &[Vec<u64>]) -> Self {
        Self {
            ctx,
            dim,
            basis: howell_form(&ctx, generators, dim),
        }
    }

    pub fn zero(ctx: PrimeContext, dim: usize) -> Self {
        Self {
            ctx,
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ctx: PrimeContext, dim: usize) -> Self {
        let gens: Vec<Vec<u64>> = (0..dim).map(|i| crate::modarith::vec::unit(dim, i)).collect();
        Self::span(ctx, dim, &gens)
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    /// Rank of the ambient free module.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Howell-form generators.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        in_span(&self.ctx, &self.basis, x)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// First generator of `self` not contained in `other`.
    pub fn first_outside(&self, other: &Submodule) -> Option<Vec<u64>> {
        self.basis.iter().find(|b| !other.contains(b)).cloned()
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let gens: Vec<Vec<u64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ctx, self.dim, &gens)
    }

    /// `p^e · self`
    pub fn scale_p(&self, e: u32) -> Submodule {
        let f = self.ctx.p_power(e);
        let gens: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| b.iter().map(|&x| self.ctx.mul(f, x)).collect())
            .collect();
        Self::span(self.ctx, self.dim, &gens)
    }

    fn generator_matrix(&self) -> ModMatrix {
        ModMatrix::from_dense(self.ctx, self.dim, &self.basis)
    }

    /// Smith exponents of the generator matrix, padded with `k` for the
    /// ambient directions the module misses entirely.
    pub fn elementary_exponents(&self) -> Vec<u32> {
        let mut ex = if self.basis.is_empty() {
            Vec::new()
        } else {
            self.generator_matrix().smith_normal_form().exponents().to_vec()
        };
        ex.resize(self.dim, self.ctx.k());
        ex
    }

    /// Number of directions in which the module is nonzero mod `p^k`.
    pub fn rank(&self) -> usize {
        let k = self.ctx.k();
        self.elementary_exponents().iter().filter(|&&a| a < k).count()
    }

    /// A direct summand of the ambient module: every elementary exponent is
    /// either 0 or `k`.
    pub fn is_saturated(&self) -> bool {
        let k = self.ctx.k();
        self.elementary_exponents().iter().all(|&a| a == 0 || a == k)
    }

    /// The saturation `{x : p^m x ∈ self, m < k}` of the p-adic lift, read at
    /// precision `k`: spanned by the Smith basis vectors whose diagonal entry
    /// is nonzero mod `p^k`.
    pub fn isolator(&self) -> Submodule {
        if self.basis.is_empty() {
            return self.clone();
        }
        let snf = self.generator_matrix().smith_normal_form();
        let k = self.ctx.k();
        let v = snf.v();
        let gens: Vec<Vec<u64>> = snf
            .exponents()
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a < k)
            .map(|(i, _)| v.dense_row(i))
            .collect();
        Self::span(self.ctx, self.dim, &gens)
    }

    /// Canonical free basis of a saturated submodule; `None` otherwise.
    pub fn free_basis(&self) -> Option<FreeBasis> {
        if !self.is_saturated() {
            return None;
        }
        let ctx = self.ctx;
        if self.basis.is_empty() {
            return Some(FreeBasis {
                pivots: Vec::new(),
                vectors: Vec::new(),
            });
        }
        let field = ctx.residue_field();
        let reduced = howell_form(
            &field,
            &self
                .basis
                .iter()
                .map(|b| b.iter().map(|&x| x % ctx.p()).collect())
                .collect::<Vec<Vec<u64>>>(),
            self.dim,
        );
        let pivots: Vec<usize> = reduced
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        // Any basis of the summand, then normalise on the pivot columns.
        let snf = self.generator_matrix().smith_normal_form();
        let raw: Vec<Vec<u64>> = snf
            .exponents()
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a == 0)
            .map(|(i, _)| snf.v().dense_row(i))
            .collect();
        debug_assert_eq!(raw.len(), pivots.len());
        let d = pivots.len();
        let block: Vec<Vec<u64>> = raw
            .iter()
            .map(|r| pivots.iter().map(|&c| r[c]).collect())
            .collect();
        // raw = B, block = B[:, pivots]; vectors = block^{-1} B
        let block_m = ModMatrix::from_dense(ctx, d, &block);
        let inv = block_m
            .inverse()
            .expect("pivot block of a saturated module is invertible");
        let raw_m = ModMatrix::from_dense(ctx, self.dim, &raw);
        let vectors = inv.mul(&raw_m).to_dense();
        Some(FreeBasis { pivots, vectors })
    }

    /// Quotient-free check used by chain verification: `self / sub` is free
    /// of rank one when `sub ⊆ self`, both are saturated and the ranks differ
    /// by one.
    pub fn quotient_is_free_rank_one(&self, sub: &Submodule) -> bool {
        sub.is_subset_of(self)
            && self.is_saturated()
            && sub.is_saturated()
            && self.rank() == sub.rank() + 1
    }

    pub fn reduce_mod_p(&self) -> Submodule {
        let field = self.ctx.residue_field();
        let gens: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| b.iter().map(|&x| x % self.ctx.p()).collect())
            .collect();
        Self::span(field, self.dim, &gens)
    }
}
