use std::fmt;

use super::{ModArithError, PrimeContext, RankKernel, SmithDecomposition};

/// A sparse matrix over `Z/p^k`.
///
/// Rows are stored as column-sorted `(col, value)` lists; zero values are
/// never stored and every `(row, col)` key appears at most once.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    ctx: PrimeContext,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, u64)>>,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix {}x{} mod {}", self.rows, self.cols, self.ctx.modulus())?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                writeln!(f, "  {row:?}")?;
            }
        } else {
            writeln!(f, "  nnz = {}", self.nnz())?;
        }
        Ok(())
    }
}

impl ModMatrix {
    pub fn zeros(ctx: PrimeContext, rows: usize, cols: usize) -> Self {
        Self {
            ctx,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(ctx: PrimeContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i].push((i, 1 % ctx.modulus()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated keys are
    /// summed, values are reduced, and zeros are dropped.
    pub fn from_triplets<I>(ctx: PrimeContext, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut data: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) out of bounds");
            data[r].push((c, ctx.reduce(v)));
        }
        for row in &mut data {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, u64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = ctx.add(*lv, v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *row = merged;
        }
        Self {
            ctx,
            rows,
            cols,
            data,
        }
    }

    pub fn from_dense(ctx: PrimeContext, cols: usize, dense: &[Vec<u64>]) -> Self {
        let data = dense
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, ctx.reduce(v)))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        Self {
            ctx,
            rows: dense.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: PrimeContext, rows: usize, columns: &[Vec<u64>]) -> Self {
        Self::from_triplets(
            ctx,
            rows,
            columns.len(),
            columns.iter().enumerate().flat_map(|(c, col)| {
                assert_eq!(col.len(), rows);
                col.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0)
                    .map(move |(r, &v)| (r, c, v))
            }),
        )
    }

    #[inline]
    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r]
            .binary_search_by_key(&c, |&(cc, _)| cc)
            .map(|i| self.data[r][i].1)
            .unwrap_or(0)
    }

    pub fn row(&self, r: usize) -> &[(usize, u64)] {
        &self.data[r]
    }

    pub fn dense_row(&self, r: usize) -> Vec<u64> {
        let mut out = vec![0; self.cols];
        for &(c, v) in &self.data[r] {
            out[c] = v;
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.dense_row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.ctx,
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v)),
        )
    }

    /// Same integer entries read in another ring of the same prime.
    pub fn with_context(&self, ctx: PrimeContext) -> Self {
        Self::from_triplets(ctx, self.rows, self.cols, self.triplets())
    }

    /// Entrywise reduction to `GF(p)`.
    pub fn reduce_mod_p(&self) -> Self {
        self.with_context(self.ctx.residue_field())
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(0, |acc, &(c, x)| self.ctx.add(acc, self.ctx.mul(x, v[c])))
            })
            .collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let ctx = self.ctx;
        let mut acc = vec![0u64; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for &(k, a) in row {
                for &(c, b) in &other.data[k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] = ctx.add(acc[c], ctx.mul(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: Vec<(usize, u64)> = touched
                .iter()
                .filter(|&&c| acc[c] != 0)
                .map(|&c| (c, acc[c]))
                .collect();
            for &c in &touched {
                acc[c] = 0;
            }
            touched.clear();
            data.push(out);
        }
        ModMatrix {
            ctx,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_triplets(
            self.ctx,
            self.rows,
            self.cols,
            self.triplets().chain(other.triplets()),
        )
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        self.add(&other.scale(self.ctx.neg(1)))
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let ctx = self.ctx;
        Self::from_triplets(
            ctx,
            self.rows,
            self.cols,
            self.triplets().map(|(r, cc, v)| (r, cc, ctx.mul(c, v))),
        )
    }

    pub fn pow(&self, e: u32) -> ModMatrix {
        assert!(self.is_square());
        let mut acc = ModMatrix::identity(self.ctx, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Restricts to a selection of rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ModMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (i, &c) in cols.iter().enumerate() {
            col_pos[c] = i;
        }
        Self::from_triplets(
            self.ctx,
            rows.len(),
            cols.len(),
            rows.iter().enumerate().flat_map(|(i, &r)| {
                let col_pos = &col_pos;
                self.data[r]
                    .iter()
                    .filter(move |&&(c, _)| col_pos[c] != usize::MAX)
                    .map(move |&(c, v)| (i, col_pos[c], v))
            }),
        )
    }

    /// Rank over `GF(p)`.
    pub fn rank(&self) -> Result<usize, ModArithError> {
        if !self.ctx.is_field() {
            return Err(ModArithError::RequiresField(self.ctx.k()));
        }
        let mut ech = super::RowEchelon::new(self.ctx, self.cols);
        for row in &self.data {
            ech.insert_sparse(row);
        }
        Ok(ech.rank())
    }

    /// Rank together with a reduced-echelon kernel basis, over `GF(p)`.
    pub fn rank_kernel(&self) -> Result<RankKernel, ModArithError> {
        super::rank_kernel(self)
    }

    /// Deterministic solution of `M x = b`.
    ///
    /// Over `GF(p)` pivots come from the reduced row echelon form and free
    /// variables are set to zero. Over `Z/p^k` the Smith decomposition is
    /// used and free coordinates are likewise zero.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>, ModArithError> {
        if b.len() != self.rows {
            return Err(ModArithError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        if self.ctx.is_field() {
            return super::echelon::solve_field(self, b);
        }
        let snf = self.smith_normal_form();
        snf.solve(b)
    }

    pub fn smith_normal_form(&self) -> SmithDecomposition {
        SmithDecomposition::compute(self)
    }

    /// Inverse of a square matrix invertible over `Z/p^k`.
    pub fn inverse(&self) -> Result<ModMatrix, ModArithError> {
        if !self.is_square() {
            return Err(ModArithError::Singular);
        }
        let n = self.rows;
        let snf = self.smith_normal_form();
        if snf.exponents().iter().any(|&a| a != 0) {
            return Err(ModArithError::Singular);
        }
        // M = U D V with D = I, so M^{-1} = V^{-1} U^{-1}.
        let inv = snf.v_inverse().mul(snf.u_inverse());
        debug_assert!(inv.mul(self) == ModMatrix::identity(self.ctx, n));
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(r, row)| row.len() == 1 && row[0] == (r, 1))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.rows, other.rows);
        let shift = self.cols;
        Self::from_triplets(
            self.ctx,
            self.rows,
            self.cols + other.cols,
            self.triplets()
                .chain(other.triplets().map(|(r, c, v)| (r, c + shift, v))),
        )
    }
}
