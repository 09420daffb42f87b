use super::{ModArithError, ModMatrix, PrimeContext};

/// `M = U · D · V` over `Z/p^k` with `D` diagonal of entries `p^{a_i}`.
///
/// Exponents are nondecreasing; an exponent equal to `k` stands for a zero
/// diagonal entry. `U` and `V` are invertible and their inverses are kept
/// alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    ctx: PrimeContext,
    rows: usize,
    cols: usize,
    exponents: Vec<u32>,
    u: ModMatrix,
    v: ModMatrix,
    u_inv: ModMatrix,
    v_inv: ModMatrix,
}

struct Dense {
    ctx: PrimeContext,
    a: Vec<Vec<u64>>,
}

impl Dense {
    fn identity(ctx: PrimeContext, n: usize) -> Self {
        let a = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self { ctx, a }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
    }

    fn scale_row(&mut self, i: usize, s: u64) {
        let ctx = self.ctx;
        for x in &mut self.a[i] {
            *x = ctx.mul(*x, s);
        }
    }

    fn scale_col(&mut self, j: usize, s: u64) {
        let ctx = self.ctx;
        for row in &mut self.a {
            row[j] = ctx.mul(row[j], s);
        }
    }

    /// row_i += c * row_t
    fn add_row(&mut self, i: usize, t: usize, c: u64) {
        if c == 0 {
            return;
        }
        let ctx = self.ctx;
        let src = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(src) {
            *x = ctx.add(*x, ctx.mul(c, y));
        }
    }

    /// col_j += c * col_t
    fn add_col(&mut self, j: usize, t: usize, c: u64) {
        if c == 0 {
            return;
        }
        let ctx = self.ctx;
        for row in &mut self.a {
            row[j] = ctx.add(row[j], ctx.mul(c, row[t]));
        }
    }

    fn into_matrix(self, cols: usize) -> ModMatrix {
        ModMatrix::from_dense(self.ctx, cols, &self.a)
    }
}

impl SmithDecomposition {
    pub(super) fn compute(m: &ModMatrix) -> Self {
        let ctx = *m.ctx();
        let (rows, cols) = (m.rows(), m.cols());
        let mut a = Dense {
            ctx,
            a: m.to_dense(),
        };
        let mut u = Dense::identity(ctx, rows);
        let mut u_inv = Dense::identity(ctx, rows);
        let mut v = Dense::identity(ctx, cols);
        let mut v_inv = Dense::identity(ctx, cols);
        let n = rows.min(cols);
        let mut exponents = vec![ctx.k(); n];

        for t in 0..n {
            // Minimal valuation pivot, lowest (row, col) breaking ties.
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.a[i][j];
                    if x == 0 {
                        continue;
                    }
                    let val = ctx.valuation(x);
                    if best.map_or(true, |(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                    }
                }
            }
            let Some((val, pi, pj)) = best else { break };

            if pi != t {
                a.swap_rows(t, pi);
                u.swap_cols(t, pi);
                u_inv.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                v.swap_rows(t, pj);
                v_inv.swap_cols(t, pj);
            }

            let unit = ctx.divide_p_power(a.a[t][t], val);
            let s = ctx.unit_inverse(unit).expect("pivot cofactor is a unit");
            a.scale_row(t, s);
            u.scale_col(t, unit);
            u_inv.scale_row(t, s);
            debug_assert_eq!(a.a[t][t], ctx.p_power(val));

            for i in t + 1..rows {
                let x = a.a[i][t];
                if x == 0 {
                    continue;
                }
                let f = ctx.divide_p_power(x, val);
                let c = ctx.neg(f);
                a.add_row(i, t, c);
                // U <- U E^{-1}: col_t(U) -= c * col_i(U)
                let ctx2 = ctx;
                for row in &mut u.a {
                    row[t] = ctx2.sub(row[t], ctx2.mul(c, row[i]));
                }
                u_inv.add_row(i, t, c);
            }
            for j in t + 1..cols {
                let x = a.a[t][j];
                if x == 0 {
                    continue;
                }
                let f = ctx.divide_p_power(x, val);
                let c = ctx.neg(f);
                a.add_col(j, t, c);
                // V <- F^{-1} V: row_t(V) -= c * row_j(V)
                let src = v.a[j].clone();
                for (y, z) in v.a[t].iter_mut().zip(src) {
                    *y = ctx.sub(*y, ctx.mul(c, z));
                }
                v_inv.add_col(j, t, c);
            }
            exponents[t] = val;
        }

        Self {
            ctx,
            rows,
            cols,
            exponents,
            u: u.into_matrix(rows),
            v: v.into_matrix(cols),
            u_inv: u_inv.into_matrix(rows),
            v_inv: v_inv.into_matrix(cols),
        }
    }

    /// Diagonal exponents `a_i` (length `min(rows, cols)`), with `k` meaning zero.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn u(&self) -> &ModMatrix {
        &self.u
    }

    pub fn v(&self) -> &ModMatrix {
        &self.v
    }

    pub fn u_inverse(&self) -> &ModMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &ModMatrix {
        &self.v_inv
    }

    /// Number of diagonal entries that are nonzero mod `p^k`.
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|&&a| a < self.ctx.k()).count()
    }

    /// Exponents strictly between 0 and `k`: the torsion part of the cokernel.
    pub fn torsion_exponents(&self) -> Vec<u32> {
        self.exponents
            .iter()
            .copied()
            .filter(|&a| a > 0 && a < self.ctx.k())
            .collect()
    }

    pub fn diagonal(&self) -> ModMatrix {
        ModMatrix::from_triplets(
            self.ctx,
            self.rows,
            self.cols,
            self.exponents
                .iter()
                .enumerate()
                .map(|(i, &a)| (i, i, self.ctx.p_power(a))),
        )
    }

    /// `U · D · V`, which reproduces the decomposed matrix.
    pub fn recompose(&self) -> ModMatrix {
        self.u.mul(&self.diagonal()).mul(&self.v)
    }

    pub(super) fn solve(&self, b: &[u64]) -> Result<Vec<u64>, ModArithError> {
        let ctx = self.ctx;
        let c = self.u_inv.mul_vec(b);
        let mut y = vec![0u64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            match self.exponents.get(i) {
                Some(&a) if a < ctx.k() => {
                    if ctx.valuation(ci) < a {
                        return Err(ModArithError::Inconsistent);
                    }
                    y[i] = ctx.divide_p_power(ci, a);
                }
                _ => {
                    if ci != 0 {
                        return Err(ModArithError::Inconsistent);
                    }
                }
            }
        }
        Ok(self.v_inv.mul_vec(&y))
    }
}
