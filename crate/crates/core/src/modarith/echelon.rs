//! Row echelon elimination over `GF(p)`.
//!
//! Incoming rows are scattered into a dense accumulator and reduced against
//! the stored pivot rows in increasing column order. Pivot rows are kept
//! sparse and switch to a dense representation once more than half of their
//! tail is filled in.

use super::{ModArithError, ModMatrix, PrimeContext};

#[derive(Debug, Clone)]
enum PivotRow {
    Sparse(Vec<(usize, u64)>),
    Dense { start: usize, values: Vec<u64> },
}

impl PivotRow {
    fn from_dense_tail(acc: &[u64], lead: usize) -> Self {
        let tail = &acc[lead..];
        let nnz = tail.iter().filter(|&&v| v != 0).count();
        if 2 * nnz > tail.len() {
            PivotRow::Dense {
                start: lead,
                values: tail.to_vec(),
            }
        } else {
            PivotRow::Sparse(
                tail.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0)
                    .map(|(i, &v)| (lead + i, v))
                    .collect(),
            )
        }
    }

    /// `acc -= f * row`
    #[inline]
    fn eliminate(&self, ctx: &PrimeContext, acc: &mut [u64], f: u64) {
        let q = ctx.modulus();
        let negf = q - f;
        match self {
            PivotRow::Sparse(entries) => {
                for &(c, v) in entries {
                    acc[c] = (acc[c] + negf * v) % q;
                }
            }
            PivotRow::Dense { start, values } => {
                for (a, &v) in acc[*start..].iter_mut().zip(values) {
                    if v != 0 {
                        *a = (*a + negf * v) % q;
                    }
                }
            }
        }
    }

    fn scatter(&self, out: &mut [u64]) {
        match self {
            PivotRow::Sparse(entries) => {
                for &(c, v) in entries {
                    out[c] = v;
                }
            }
            PivotRow::Dense { start, values } => out[*start..].copy_from_slice(values),
        }
    }
}

/// Incrementally built row echelon basis of a subspace of `GF(p)^cols`.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ctx: PrimeContext,
    cols: usize,
    pivot_of_col: Vec<usize>,
    rows: Vec<PivotRow>,
    leads: Vec<usize>,
    scratch: Vec<u64>,
}

const NONE: usize = usize::MAX;

impl RowEchelon {
    pub fn new(ctx: PrimeContext, cols: usize) -> Self {
        assert!(ctx.is_field(), "row echelon requires GF(p)");
        Self {
            ctx,
            cols,
            pivot_of_col: vec![NONE; cols],
            rows: Vec::new(),
            leads: Vec::new(),
            scratch: vec![0; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in insertion order.
    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    /// Reduces `acc` in place against every stored pivot; afterwards `acc`
    /// vanishes on all pivot columns. Returns the coefficients used, keyed
    /// by pivot index, when `track` is set.
    fn reduce_from(&self, acc: &mut [u64], from: usize, mut track: Option<&mut Vec<(usize, u64)>>) {
        for c in from..self.cols {
            let v = acc[c];
            if v == 0 {
                continue;
            }
            let idx = self.pivot_of_col[c];
            if idx == NONE {
                continue;
            }
            self.rows[idx].eliminate(&self.ctx, acc, v);
            if let Some(t) = track.as_deref_mut() {
                t.push((idx, v));
            }
        }
    }

    pub fn reduce(&self, acc: &mut [u64]) {
        assert_eq!(acc.len(), self.cols);
        self.reduce_from(acc, 0, None);
    }

    /// Reduces and records `(pivot index, multiplier)` for every step.
    pub fn reduce_tracked(&self, acc: &mut [u64]) -> Vec<(usize, u64)> {
        let mut steps = Vec::new();
        self.reduce_from(acc, 0, Some(&mut steps));
        steps
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut acc = v.to_vec();
        self.reduce(&mut acc);
        acc.iter().all(|&x| x == 0)
    }

    fn push_reduced(&mut self, acc: &[u64]) -> Option<usize> {
        let lead = acc.iter().position(|&x| x != 0)?;
        let inv = self
            .ctx
            .unit_inverse(acc[lead])
            .expect("nonzero element of GF(p) is a unit");
        let normalized: Vec<u64> = acc.iter().map(|&x| self.ctx.mul(x, inv)).collect();
        self.pivot_of_col[lead] = self.rows.len();
        self.rows.push(PivotRow::from_dense_tail(&normalized, lead));
        self.leads.push(lead);
        Some(lead)
    }

    /// Inserts a row; returns its new pivot column when it enlarges the span.
    pub fn insert_sparse(&mut self, row: &[(usize, u64)]) -> Option<usize> {
        let first = row.first()?.0;
        let mut acc = std::mem::take(&mut self.scratch);
        acc.iter_mut().for_each(|x| *x = 0);
        for &(c, v) in row {
            acc[c] = self.ctx.reduce(v);
        }
        self.reduce_from(&mut acc, first, None);
        let res = self.push_reduced(&acc);
        self.scratch = acc;
        res
    }

    pub fn insert(&mut self, row: &[u64]) -> Option<usize> {
        assert_eq!(row.len(), self.cols);
        let mut acc: Vec<u64> = row.iter().map(|&v| self.ctx.reduce(v)).collect();
        self.reduce(&mut acc);
        self.push_reduced(&acc)
    }

    /// Fully reduced rows sorted by pivot column (the reduced row echelon
    /// form of the span).
    pub fn rref(&self) -> Vec<(usize, Vec<u64>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(self.leads[i]));
        let mut reduced: Vec<Option<Vec<u64>>> = vec![None; self.rows.len()];
        for &i in &order {
            let mut row = vec![0; self.cols];
            self.rows[i].scatter(&mut row);
            let lead = self.leads[i];
            for c in lead + 1..self.cols {
                let v = row[c];
                if v == 0 {
                    continue;
                }
                let j = self.pivot_of_col[c];
                if j == NONE {
                    continue;
                }
                let other = reduced[j].as_ref().expect("later pivots reduced first");
                let negv = self.ctx.neg(v);
                for (x, &y) in row[c..].iter_mut().zip(&other[c..]) {
                    if y != 0 {
                        *x = self.ctx.add(*x, self.ctx.mul(negv, y));
                    }
                }
            }
            reduced[i] = Some(row);
        }
        let mut out: Vec<(usize, Vec<u64>)> = reduced
            .into_iter()
            .enumerate()
            .map(|(i, r)| (self.leads[i], r.unwrap()))
            .collect();
        out.sort_unstable_by_key(|(l, _)| *l);
        out
    }

    /// Stored (semi-reduced) pivot row `i` as a dense vector.
    pub fn pivot_row(&self, i: usize) -> Vec<u64> {
        let mut row = vec![0; self.cols];
        self.rows[i].scatter(&mut row);
        row
    }
}

/// Rank and kernel basis of a matrix over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// One vector per free column `f`, with a 1 at `f`, zeros on every other
    /// free column, and the negated reduced entries on pivot columns.
    pub kernel: Vec<Vec<u64>>,
}

pub fn rank_kernel(m: &ModMatrix) -> Result<RankKernel, ModArithError> {
    let ctx = *m.ctx();
    if !ctx.is_field() {
        return Err(ModArithError::RequiresField(ctx.k()));
    }
    let mut ech = RowEchelon::new(ctx, m.cols());
    for r in 0..m.rows() {
        ech.insert_sparse(m.row(r));
    }
    let rref = ech.rref();
    let mut is_pivot = vec![false; m.cols()];
    for (lead, _) in &rref {
        is_pivot[*lead] = true;
    }
    let kernel = (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0; m.cols()];
            v[f] = 1;
            for (lead, row) in &rref {
                v[*lead] = ctx.neg(row[f]);
            }
            v
        })
        .collect();
    Ok(RankKernel {
        rank: rref.len(),
        kernel,
    })
}

pub(super) fn solve_field(m: &ModMatrix, b: &[u64]) -> Result<Vec<u64>, ModArithError> {
    let ctx = *m.ctx();
    let n = m.cols();
    let mut ech = RowEchelon::new(ctx, n + 1);
    for r in 0..m.rows() {
        let mut row: Vec<(usize, u64)> = m.row(r).to_vec();
        if b[r] != 0 {
            row.push((n, ctx.reduce(b[r])));
        }
        ech.insert_sparse(&row);
    }
    let rref = ech.rref();
    if rref.iter().any(|(lead, _)| *lead == n) {
        return Err(ModArithError::Inconsistent);
    }
    let mut x = vec![0; n];
    for (lead, row) in &rref {
        x[*lead] = row[n];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeContext {
        PrimeContext::new(5, 1).unwrap()
    }

    #[test]
    fn zero_and_identity() {
        let ctx = f5();
        let z = ModMatrix::zeros(ctx, 3, 3);
        let rk = z.rank_kernel().unwrap();
        assert_eq!((rk.rank, rk.kernel.len()), (0, 3));
        let id = ModMatrix::identity(ctx, 4);
        let rk = id.rank_kernel().unwrap();
        assert_eq!((rk.rank, rk.kernel.len()), (4, 0));
    }

    #[test]
    fn dependent_rows_mod_5() {
        let m = ModMatrix::from_dense(f5(), 2, &[vec![1, 2], vec![2, 4]]);
        let rk = m.rank_kernel().unwrap();
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, vec![vec![3, 1]]);
    }

    #[test]
    fn empty_matrix() {
        let m = ModMatrix::zeros(f5(), 0, 0);
        let rk = m.rank_kernel().unwrap();
        assert_eq!(rk.rank, 0);
        assert!(rk.kernel.is_empty());
    }

    #[test]
    fn requires_field() {
        let ctx = PrimeContext::new(5, 2).unwrap();
        assert_eq!(
            ModMatrix::identity(ctx, 2).rank_kernel(),
            Err(ModArithError::RequiresField(2))
        );
    }

    #[test]
    fn rref_is_reduced() {
        let ctx = PrimeContext::new(7, 1).unwrap();
        let mut ech = RowEchelon::new(ctx, 4);
        ech.insert(&[0, 0, 1, 2]);
        ech.insert(&[1, 3, 5, 0]);
        ech.insert(&[2, 6, 6, 6]);
        let rref = ech.rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0].1, vec![1, 3, 0, 4]);
        assert_eq!(rref[1].1, vec![0, 0, 1, 2]);
    }

    #[test]
    fn dense_fallback_rows_behave_like_sparse() {
        let ctx = PrimeContext::new(11, 1).unwrap();
        let mut ech = RowEchelon::new(ctx, 5);
        ech.insert(&[1, 1, 1, 1, 1]);
        ech.insert(&[0, 1, 2, 3, 4]);
        assert!(ech.contains(&[1, 2, 3, 4, 5]));
        assert!(!ech.contains(&[0, 0, 0, 0, 1]));
    }
}
