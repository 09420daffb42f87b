//! `n`-subsets of `{0, …, r−1}` as bitmasks. Increasing numeric order is
//! colexicographic order, so a subset's position is `Σ_i C(b_i, i + 1)` over
//! its elements `b_0 < b_1 < …`.

#[derive(Debug, Clone)]
pub struct Binomials {
    table: Vec<Vec<usize>>,
}

impl Binomials {
    pub fn new(r: usize) -> Self {
        let mut table = vec![vec![0usize; r + 2]; r + 2];
        for n in 0..=r + 1 {
            table[n][0] = 1;
            for k in 1..=n {
                table[n][k] = table[n - 1][k - 1] + if k <= n - 1 { table[n - 1][k] } else { 0 };
            }
        }
        Self { table }
    }

    pub fn get(&self, n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }

    /// Position of `mask` among subsets of the same size.
    pub fn rank(&self, mut mask: u32) -> usize {
        let mut pos = 0;
        let mut i = 1;
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            pos += self.get(b, i);
            i += 1;
            mask &= mask - 1;
        }
        pos
    }
}

/// All `n`-subsets of an `r`-set in increasing numeric order.
pub fn subsets(r: usize, n: usize) -> Vec<u32> {
    assert!(r < 32);
    if n > r {
        return Vec::new();
    }
    if n == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u32 = (1u32 << n) - 1;
    let limit: u64 = 1u64 << r;
    while (s as u64) < limit {
        out.push(s);
        // next mask with the same popcount
        let c = s & s.wrapping_neg();
        let rr = s.wrapping_add(c);
        if rr == 0 {
            break;
        }
        s = (((rr ^ s) >> 2) / c) | rr;
    }
    out
}

/// Elements of `mask` in increasing order.
pub fn elements(mut mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Number of elements of `mask` below `m`.
#[inline]
pub fn below(mask: u32, m: usize) -> u32 {
    (mask & ((1u32 << m) - 1)).count_ones()
}

/// Sign of the permutation sorting the concatenation `a ++ b` of two disjoint
/// sorted sets: `(−1)^{#{(s, t) ∈ a × b : s > t}}`.
pub fn shuffle_sign(a: u32, b: u32) -> bool {
    let mut inv = 0;
    for t in elements(b) {
        inv += (a >> t).count_ones() - ((a >> t) & 1);
    }
    inv % 2 == 1
}
