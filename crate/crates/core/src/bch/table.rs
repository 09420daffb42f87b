//! Homogeneous components of `log(exp X · exp Y)` in the Lyndon basis.
//!
//! Words in `X, Y` of length `d` are encoded as `d`-bit integers, most
//! significant letter first, `X = 0` and `Y = 1`; numeric order on a fixed
//! length is lexicographic order.

use super::hall::{HallBasis, Shape};
use super::BchError;
use crate::modarith::PrimeContext;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

type Poly = Vec<BigRational>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// Integer expansion of a Lyndon bracket as `(word, coefficient)` pairs.
fn expand(basis: &HallBasis, idx: usize, memo: &mut Vec<Option<Vec<(usize, i64)>>>) -> Vec<(usize, i64)> {
    if let Some(v) = &memo[idx] {
        return v.clone();
    }
    let out = match basis.elements()[idx].shape {
        Shape::Generator(g) => vec![(g as usize, 1)],
        Shape::Bracket(a, b) => {
            let da = basis.elements()[a].degree();
            let db = basis.elements()[b].degree();
            let ea = expand(basis, a, memo);
            let eb = expand(basis, b, memo);
            let mut acc = std::collections::BTreeMap::<usize, i64>::new();
            for &(wa, ca) in &ea {
                for &(wb, cb) in &eb {
                    *acc.entry((wa << db) | wb).or_default() += ca * cb;
                    *acc.entry((wb << da) | wa).or_default() -= ca * cb;
                }
            }
            acc.into_iter().filter(|&(_, c)| c != 0).collect()
        }
    };
    memo[idx] = Some(out.clone());
    out
}

/// Oracle: expand `exp X · exp Y − 1`, then the truncated logarithm series,
/// directly in the word algebra. Returns one dense vector per degree.
fn log_exp_oracle(max_degree: usize) -> Vec<Poly> {
    let zero_poly = |d: usize| vec![BigRational::zero(); 1 << d];
    // Z = exp X exp Y − 1: degree d holds X^a Y^b / (a! b!) for a + b = d.
    let mut z: Vec<Poly> = (0..=max_degree).map(zero_poly).collect();
    for d in 1..=max_degree {
        for a in 0..=d {
            let b = d - a;
            let idx = (1usize << b) - 1;
            z[d][idx] = BigRational::new(BigInt::one(), factorial(a) * factorial(b));
        }
    }
    let mul = |lhs: &[Poly], rhs: &[Poly]| -> Vec<Poly> {
        let mut out: Vec<Poly> = (0..=max_degree).map(zero_poly).collect();
        for i in 1..=max_degree {
            for j in 1..=max_degree - i {
                for (wa, ca) in lhs[i].iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (wb, cb) in rhs[j].iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        out[i + j][(wa << j) | wb] += ca * cb;
                    }
                }
            }
        }
        out
    };
    let mut result: Vec<Poly> = (0..=max_degree).map(zero_poly).collect();
    let mut power = z.clone();
    for n in 1..=max_degree {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let c = BigRational::new(BigInt::from(sign), BigInt::from(n));
        for d in 0..=max_degree {
            for (r, x) in result[d].iter_mut().zip(&power[d]) {
                if !x.is_zero() {
                    *r += &c * x;
                }
            }
        }
        power = mul(&power, &z);
    }
    result
}

/// Coefficient of every word in `log(exp X exp Y)` from the Dynkin sum over
/// block decompositions `X^{r_1} Y^{s_1} ⋯ X^{r_n} Y^{s_n}`.
fn dynkin_word_coefficient(word: usize, d: usize) -> BigRational {
    let letter = |i: usize| (word >> (d - 1 - i)) & 1;
    // ways[pos][n]: Σ Π 1/(r! s!) over decompositions of word[pos..] into n blocks
    let mut ways: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d + 1];
    ways[d][0] = BigRational::one();
    for pos in (0..d).rev() {
        let mut run_x = 0;
        while pos + run_x < d && letter(pos + run_x) == 0 {
            run_x += 1;
        }
        for r in 0..=run_x {
            let after_x = pos + r;
            let max_s = if r == run_x {
                let mut s = 0;
                while after_x + s < d && letter(after_x + s) == 1 {
                    s += 1;
                }
                s
            } else {
                0
            };
            for s in 0..=max_s {
                if r + s == 0 {
                    continue;
                }
                let w = BigRational::new(BigInt::one(), factorial(r) * factorial(s));
                let next = after_x + s;
                for n in 0..d {
                    if ways[next][n].is_zero() {
                        continue;
                    }
                    let add = &ways[next][n] * &w;
                    ways[pos][n + 1] += add;
                }
            }
        }
    }
    (1..=d).fold(BigRational::zero(), |acc, n| {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc + BigRational::new(BigInt::from(sign), BigInt::from(n)) * &ways[0][n]
    })
}

/// Right-nested bracket `[w_1, [w_2, [… , w_d]]]` expanded into words.
fn right_nested(word: usize, d: usize) -> Vec<(usize, i64)> {
    let letter = |i: usize| (word >> (d - 1 - i)) & 1;
    let mut cur: Vec<(usize, i64)> = vec![(letter(d - 1), 1)];
    for i in (0..d - 1).rev() {
        let x = letter(i);
        let len = d - 1 - i;
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &(w, c) in &cur {
            next.push(((x << len) | w, c));
            next.push(((w << 1) | x, -c));
        }
        cur = next;
    }
    cur
}

/// Dynkin route: word coefficients folded through the Dynkin–Specht–Wever
/// projection `P = (1/d) Σ_w c_w [w]`, expanded back to words.
fn dynkin_expansion(max_degree: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = (0..=max_degree).map(|d| vec![BigRational::zero(); 1 << d]).collect();
    for d in 1..=max_degree {
        let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
        let mut acc = vec![BigRational::zero(); 1 << d];
        for w in 0..(1usize << d) {
            let c = dynkin_word_coefficient(w, d);
            if c.is_zero() {
                continue;
            }
            for (u, s) in right_nested(w, d) {
                acc[u] += &c * BigInt::from(s);
            }
        }
        out[d] = acc.into_iter().map(|x| x * &inv_d).collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BchTerm {
    /// Index into the Hall basis.
    pub element: usize,
    pub degree: usize,
    #[serde(skip)]
    pub coefficient: BigRational,
    /// `numerator · denominator⁻¹ mod p^k`
    pub residue: u64,
}

/// Nonzero Lyndon-basis coefficients of the BCH series through `max_degree`,
/// with residues in `Z/p^k`.
#[derive(Debug, Clone)]
pub struct BchTable {
    ctx: PrimeContext,
    basis: HallBasis,
    terms: Vec<BchTerm>,
}

/// Extracts Lyndon coordinates from a homogeneous Lie polynomial: the least
/// word present is always the Lyndon word of a basis element.
fn lyndon_coordinates(
    basis: &HallBasis,
    degree: usize,
    mut poly: Poly,
    memo: &mut Vec<Option<Vec<(usize, i64)>>>,
) -> Result<Vec<(usize, BigRational)>, BchError> {
    let to_idx = |w: &[u8]| w.iter().fold(0usize, |a, &b| (a << 1) | b as usize);
    let by_word: std::collections::HashMap<usize, usize> = basis
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.degree() == degree)
        .map(|(i, e)| (to_idx(&e.word), i))
        .collect();
    let mut out = Vec::new();
    while let Some(w) = poly.iter().position(|c| !c.is_zero()) {
        let &elem = by_word.get(&w).ok_or(BchError::OracleMismatch { degree })?;
        let c = poly[w].clone();
        for (u, s) in expand(basis, elem, memo) {
            poly[u] -= &c * BigInt::from(s);
        }
        out.push((elem, c));
    }
    Ok(out)
}

fn residue(ctx: &PrimeContext, q: &BigRational) -> Result<u64, BchError> {
    let m = BigInt::from(ctx.modulus());
    let den = q.denom().mod_floor_pos(&m);
    let num = q.numer().mod_floor_pos(&m);
    let den = den.to_u64().unwrap();
    let inv = ctx.unit_inverse(den).map_err(|_| BchError::NotPIntegral {
        denominator: q.denom().to_string(),
    })?;
    Ok(ctx.mul(num.to_u64().unwrap(), inv))
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl BchTable {
    /// Builds the table through degree `max_degree ≤ p − 1`. The Dynkin route
    /// is checked against a direct expansion of `log(exp X exp Y)`.
    pub fn new(ctx: PrimeContext, max_degree: usize) -> Result<Self, BchError> {
        if max_degree == 0 {
            return Err(BchError::ZeroDegree);
        }
        let max = ctx.p() as usize - 1;
        if max_degree > max {
            return Err(BchError::DegreeTooLarge {
                degree: max_degree,
                max,
            });
        }
        let basis = HallBasis::new(2, max_degree);
        let dynkin = dynkin_expansion(max_degree);
        let oracle = log_exp_oracle(max_degree);
        let mut memo = vec![None; basis.len()];
        let mut terms = Vec::new();
        for d in 1..=max_degree {
            if dynkin[d] != oracle[d] {
                return Err(BchError::OracleMismatch { degree: d });
            }
            let mut coords = lyndon_coordinates(&basis, d, dynkin[d].clone(), &mut memo)?;
            coords.sort_by_key(|(e, _)| *e);
            for (element, coefficient) in coords {
                if (coefficient.denom() % BigInt::from(ctx.p())).is_zero() {
                    return Err(BchError::NotPIntegral {
                        denominator: coefficient.denom().to_string(),
                    });
                }
                let residue = residue(&ctx, &coefficient)?;
                terms.push(BchTerm {
                    element,
                    degree: d,
                    coefficient,
                    residue,
                });
            }
        }
        Ok(Self { ctx, basis, terms })
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn terms(&self) -> &[BchTerm] {
        &self.terms
    }

    /// Coefficient of the element with Lyndon word `word` (0 = X, 1 = Y).
    pub fn coefficient(&self, word: &[u8]) -> BigRational {
        self.basis
            .index_of(word)
            .and_then(|i| self.terms.iter().find(|t| t.element == i))
            .map_or_else(BigRational::zero, |t| t.coefficient.clone())
    }

    /// The degree `d` component as a dense vector over words of length `d`.
    pub fn homogeneous_component(&self, d: usize) -> Vec<BigRational> {
        let mut memo = vec![None; self.basis.len()];
        let mut out = vec![BigRational::zero(); 1 << d];
        for t in self.terms.iter().filter(|t| t.degree == d) {
            for (u, s) in expand(&self.basis, t.element, &mut memo) {
                out[u] += &t.coefficient * BigInt::from(s);
            }
        }
        out
    }

    /// Evaluates the truncated series with `X = x`, `Y = y` using `bracket`.
    pub fn evaluate<F>(&self, x: &[u64], y: &[u64], mut bracket: F) -> Vec<u64>
    where
        F: FnMut(&[u64], &[u64]) -> Vec<u64>,
    {
        let ctx = &self.ctx;
        let mut values: Vec<Option<Vec<u64>>> = vec![None; self.basis.len()];
        let mut out = vec![0u64; x.len()];
        for t in &self.terms {
            let v = self.eval_element(t.element, x, y, &mut bracket, &mut values);
            crate::modarith::vec::axpy(ctx, &mut out, t.residue, &v);
        }
        out
    }

    fn eval_element<F>(
        &self,
        idx: usize,
        x: &[u64],
        y: &[u64],
        bracket: &mut F,
        values: &mut Vec<Option<Vec<u64>>>,
    ) -> Vec<u64>
    where
        F: FnMut(&[u64], &[u64]) -> Vec<u64>,
    {
        if let Some(v) = &values[idx] {
            return v.clone();
        }
        let v = match self.basis.elements()[idx].shape {
            Shape::Generator(0) => x.to_vec(),
            Shape::Generator(_) => y.to_vec(),
            Shape::Bracket(a, b) => {
                let va = self.eval_element(a, x, y, bracket, values);
                let vb = self.eval_element(b, x, y, bracket, values);
                if va.iter().all(|&c| c == 0) || vb.iter().all(|&c| c == 0) {
                    vec![0; x.len()]
                } else {
                    bracket(&va, &vb)
                }
            }
        };
        values[idx] = Some(v.clone());
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BchTermRecord {
    pub hall_word: String,
    pub degree: usize,
    pub numerator: String,
    pub denominator: String,
    pub residue_mod_pk: u64,
}

impl BchTable {
    pub fn records(&self) -> Vec<BchTermRecord> {
        self.terms
            .iter()
            .map(|t| BchTermRecord {
                hall_word: self.basis.display(t.element),
                degree: t.degree,
                numerator: t.coefficient.numer().to_string(),
                denominator: t.coefficient.denom().to_string(),
                residue_mod_pk: t.residue,
            })
            .collect()
    }
}

/// Exposed for cross-checks: `(dynkin, oracle)` per degree.
pub fn both_routes(max_degree: usize) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    (dynkin_expansion(max_degree), log_exp_oracle(max_degree))
}
