//! Howell normal form of submodules of `(Z/p^k)^n`.
//!
//! Over the chain ring `Z/p^k` an ordinary echelon form does not decide span
//! membership; the Howell form does. Rows are sorted by pivot column, each
//! pivot entry is `p^v`, entries above a pivot lie in `[0, p^v)`, and the
//! span of rows with pivot column `≥ c` contains every element of the module
//! that vanishes before column `c`. The form is unique, so equal submodules
//! have equal Howell forms.

use super::PrimeContext;

fn sub_scaled(ctx: &PrimeContext, target: &mut [u64], f: u64, src: &[u64]) {
    if f == 0 {
        return;
    }
    for (x, &y) in target.iter_mut().zip(src) {
        if y != 0 {
            *x = ctx.sub(*x, ctx.mul(f, y));
        }
    }
}

/// Canonical generators of the span of `rows`.
pub fn howell_form(ctx: &PrimeContext, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            r.iter().map(|&x| ctx.reduce(x)).collect::<Vec<u64>>()
        })
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivots: Vec<(usize, u32, Vec<u64>)> = Vec::new();

    for c in 0..ncols {
        let mut best: Option<(u32, usize)> = None;
        for (i, r) in work.iter().enumerate() {
            if r[c] != 0 {
                let v = ctx.valuation(r[c]);
                if best.map_or(true, |(bv, _)| v < bv) {
                    best = Some((v, i));
                }
            }
        }
        let Some((v, idx)) = best else { continue };
        let mut pivot = work.remove(idx);
        let unit = ctx.divide_p_power(pivot[c], v);
        let s = ctx.unit_inverse(unit).expect("cofactor is a unit");
        for x in &mut pivot {
            *x = ctx.mul(*x, s);
        }
        for r in &mut work {
            if r[c] != 0 {
                let f = ctx.divide_p_power(r[c], v);
                sub_scaled(ctx, r, f, &pivot);
            }
        }
        if v > 0 {
            let ann = ctx.p_power(ctx.k() - v);
            let extra: Vec<u64> = pivot.iter().map(|&x| ctx.mul(ann, x)).collect();
            work.push(extra);
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
        pivots.push((c, v, pivot));
    }

    for i in 0..pivots.len() {
        let (c, v) = (pivots[i].0, pivots[i].1);
        let lead = ctx.p_power(v);
        let (head, tail) = pivots.split_at_mut(i);
        let src = &tail[0].2;
        for (_, _, row) in head.iter_mut() {
            let q = row[c] / lead;
            sub_scaled(ctx, row, q, src);
        }
    }
    pivots.into_iter().map(|(_, _, r)| r).collect()
}

/// Reduces `x` against a Howell basis. The remainder is zero exactly when
/// `x` lies in the span.
pub fn howell_reduce(ctx: &PrimeContext, basis: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    let mut x: Vec<u64> = x.iter().map(|&v| ctx.reduce(v)).collect();
    for row in basis {
        let Some(c) = row.iter().position(|&y| y != 0) else {
            continue;
        };
        if x[c] == 0 {
            continue;
        }
        let v = ctx.valuation(row[c]);
        if ctx.valuation(x[c]) < v {
            continue;
        }
        let f = ctx.divide_p_power(x[c], v);
        sub_scaled(ctx, &mut x, f, row);
    }
    x
}

pub fn in_span(ctx: &PrimeContext, basis: &[Vec<u64>], x: &[u64]) -> bool {
    howell_reduce(ctx, basis, x).iter().all(|&v| v == 0)
}
