//! Test-only oracles, written independently of the library's complex.
#![allow(dead_code)]

use lazard::corpus::ut;
use lazard::lie::{LieAlgebra, Submodule};
use lazard::modarith::{ModMatrix, PrimeContext};
use rand::Rng;

/// Dense Gaussian elimination over `GF(p)`.
pub fn dense_rank(p: u64, mut a: Vec<Vec<u64>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] % p != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Sorted index tuples of size `n` from `0..r`, lexicographic.
fn tuples(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, n, &mut Vec::new(), &mut out);
    out
}

/// Dense differential `C^n → C^{n+1}` over `GF(p)` for trivial
/// coefficients, from the alternating-sum formula on sorted tuples.
pub fn dense_differential(g: &LieAlgebra, n: usize) -> Vec<Vec<u64>> {
    let p = g.ctx().p();
    let r = g.rank();
    let src = tuples(r, n);
    let dst = tuples(r, n + 1);
    let mut m = vec![vec![0u64; src.len()]; dst.len()];
    for (row, t) in dst.iter().enumerate() {
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(q, _)| q != i && q != j).map(|(_, &x)| x).collect();
                for &(mm, c) in g.basis_bracket(t[i], t[j]) {
                    if rest.contains(&mm) {
                        continue;
                    }
                    let mut s = rest.clone();
                    s.push(mm);
                    s.sort_unstable();
                    // moving e_m from the front into sorted position
                    let pos = s.iter().position(|&x| x == mm).unwrap();
                    let neg = (i + j + pos) % 2 == 1;
                    let col = src.iter().position(|x| *x == s).unwrap();
                    let c = c % p;
                    let v = if neg { (p - c) % p } else { c };
                    m[row][col] = (m[row][col] + v) % p;
                }
            }
        }
    }
    m
}

/// Betti numbers of `g/pg` from dense differentials.
pub fn oracle_betti(g: &LieAlgebra) -> Vec<usize> {
    let p = g.ctx().p();
    let r = g.rank();
    let ranks: Vec<usize> = (0..r).map(|n| dense_rank(p, dense_differential(g, n))).collect();
    (0..=r)
        .map(|n| {
            let dim = tuples(r, n).len();
            dim - ranks.get(n).copied().unwrap_or(0) - if n == 0 { 0 } else { ranks[n - 1] }
        })
        .collect()
}

/// Subalgebra of `ut(n)` over `GF(p)` generated by `gens` random elements,
/// in its own basis.
pub fn random_ut_subalgebra(rng: &mut impl Rng, p: u64, n: usize, gens: usize) -> LieAlgebra {
    let ctx = PrimeContext::new(p, 1).unwrap();
    let u = ut(ctx, n).unwrap();
    let r = u.rank();
    let mut span: Vec<Vec<u64>> = (0..gens).map(|_| (0..r).map(|_| rng.gen_range(0..p)).collect()).collect();
    loop {
        let h = Submodule::span(ctx, r, &span);
        let basis = h.basis().to_vec();
        let mut grew = false;
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let v = u.bracket(&basis[a], &basis[b]).unwrap();
                if !h.contains(&v) {
                    span.push(v);
                    grew = true;
                }
            }
        }
        if !grew {
            let (sub, _) = u.subalgebra(&h).unwrap();
            return sub;
        }
    }
}

/// `|{v : A v = v}|` and `|V / (A − I)V|` by enumerating `GF(p)^dim`, as
/// powers of `p`.
pub fn brute_force_fixed_and_cofixed(a: &ModMatrix, shift: bool) -> (usize, usize) {
    let ctx = *a.ctx();
    let p = ctx.p();
    let dim = a.rows();
    let total = p.pow(dim as u32);
    let mut fixed = 0u64;
    let mut image = std::collections::HashSet::new();
    for idx in 0..total {
        let v: Vec<u64> = (0..dim).map(|i| (idx / p.pow(i as u32)) % p).collect();
        let av = a.mul_vec(&v);
        let w: Vec<u64> = if shift { av.iter().zip(&v).map(|(&x, &y)| ctx.sub(x, y)).collect() } else { av };
        if w.iter().all(|&x| x == 0) {
            fixed += 1;
        }
        image.insert(w);
    }
    let log_p = |mut x: u64| {
        let mut e = 0;
        while x > 1 {
            x /= p;
            e += 1;
        }
        e
    };
    (log_p(fixed), dim - log_p(image.len() as u64))
}
