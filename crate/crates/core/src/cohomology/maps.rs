use super::subsets::{below, elements, shuffle_sign};
use super::{CochainComplex, CohomologyError};
use crate::modarith::{vec as mvec, ModMatrix};
use std::collections::HashMap;

/// An operator on the algebra, acting on column vectors of coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraOperator {
    /// Acts on cochains by precomposition with the inverse on every slot.
    Automorphism(ModMatrix),
    /// Acts on cochains by `φ ↦ −Σ_i φ(…, D x_i, …)`.
    Derivation(ModMatrix),
}

impl CochainComplex {
    fn require_trivial(&self) -> Result<(), CohomologyError> {
        if !self.module().is_trivial() || self.module().dim() != 1 {
            return Err(CohomologyError::RequiresTrivialCoefficients);
        }
        Ok(())
    }

    /// `Λ^n B` as a sparse map from `n`-subsets `T` to `Σ_S det(B_{S,T}) e_S`.
    fn exterior_column(&self, b: &ModMatrix, t: u32) -> HashMap<u32, u64> {
        let ctx = *self.ctx();
        let mut cur: HashMap<u32, u64> = HashMap::from([(0u32, 1u64)]);
        for col in elements(t) {
            let mut next: HashMap<u32, u64> = HashMap::new();
            let image: Vec<(usize, u64)> = (0..b.rows())
                .filter_map(|r| {
                    let v = b.get(r, col);
                    (v != 0).then_some((r, v))
                })
                .collect();
            for (&s, &c) in &cur {
                for &(m, v) in &image {
                    if s & (1u32 << m) != 0 {
                        continue;
                    }
                    // append e_m at the end, then move it past larger elements
                    let larger = (s >> m).count_ones();
                    let mut x = ctx.mul(c, v);
                    if larger % 2 == 1 {
                        x = ctx.neg(x);
                    }
                    let e = next.entry(s | (1u32 << m)).or_insert(0);
                    *e = ctx.add(*e, x);
                }
            }
            next.retain(|_, v| *v != 0);
            cur = next;
        }
        cur
    }

    /// The operator induced on `C^n` (trivial coefficients).
    pub fn cochain_operator(&self, op: &AlgebraOperator, n: usize) -> Result<ModMatrix, CohomologyError> {
        self.require_trivial()?;
        let ctx = *self.ctx();
        let r = self.top_degree();
        let dim = self.cochain_dim(n);
        let mut trip = Vec::new();
        match op {
            AlgebraOperator::Automorphism(a) => {
                let b = a.inverse()?;
                // ψ_T = Σ_S det(B_{S,T}) φ_S
                for (ti, &t) in self.subsets(n).iter().enumerate() {
                    for (s, c) in self.exterior_column(&b, t) {
                        trip.push((ti, self.subset_rank(s), c));
                    }
                }
            }
            AlgebraOperator::Derivation(d) => {
                assert_eq!(d.rows(), r);
                for (ti, &t) in self.subsets(n).iter().enumerate() {
                    for (i, x) in elements(t).into_iter().enumerate() {
                        let rest = t & !(1u32 << x);
                        for m in 0..r {
                            let v = d.get(m, x);
                            if v == 0 || rest & (1u32 << m) != 0 {
                                continue;
                            }
                            let s = rest | (1u32 << m);
                            let neg = (i as u32 + below(rest, m)) % 2 == 0;
                            let v = if neg { ctx.neg(v) } else { v };
                            trip.push((ti, self.subset_rank(s), v));
                        }
                    }
                }
            }
        }
        Ok(ModMatrix::from_triplets(ctx, dim, dim, trip))
    }

    /// Matrix of the operator on `H^n` in the representative basis, after
    /// checking that cocycles and coboundaries are preserved.
    pub fn induced_map(&self, op: &AlgebraOperator, n: usize) -> Result<ModMatrix, CohomologyError> {
        let h = self.cohomology(n)?;
        let m = self.cochain_operator(op, n)?;
        let b = h.dim();
        let mut trip = Vec::new();
        for (i, z) in h.representatives().iter().enumerate() {
            let w = m.mul_vec(z);
            if !h.is_cocycle(&w) {
                return Err(CohomologyError::DoesNotPreserveCocycles { degree: n, witness: i });
            }
            for (row, c) in h.coordinates(&w)?.into_iter().enumerate() {
                trip.push((row, i, c));
            }
        }
        if n > 0 {
            let inc = self.differential(n - 1).transpose();
            for r in 0..inc.rows() {
                let mut v = vec![0u64; inc.cols()];
                for &(c, x) in inc.row(r) {
                    v[c] = x;
                }
                if !h.is_coboundary(&m.mul_vec(&v)) {
                    return Err(CohomologyError::DoesNotPreserveCoboundaries { degree: n });
                }
            }
        }
        Ok(ModMatrix::from_triplets(*self.ctx(), b, b, trip))
    }

    /// Wedge product of cochains of degrees `m` and `n` (trivial coefficients).
    pub fn cup_cochains(&self, m: usize, alpha: &[u64], n: usize, beta: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.require_trivial()?;
        let ctx = *self.ctx();
        if m + n > self.top_degree() {
            return Ok(Vec::new());
        }
        let mut out = vec![0u64; self.cochain_dim(m + n)];
        let sa = self.subsets(m);
        let sb = self.subsets(n);
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.iter().enumerate() {
                if b == 0 || sa[i] & sb[j] != 0 {
                    continue;
                }
                let u = sa[i] | sb[j];
                let mut c = ctx.mul(a, b);
                if shuffle_sign(sa[i], sb[j]) {
                    c = ctx.neg(c);
                }
                let k = self.subset_rank(u);
                out[k] = ctx.add(out[k], c);
            }
        }
        Ok(out)
    }

    /// Cup product of classes given by coordinates in the representative
    /// bases of `H^m` and `H^n`. Past the top degree the result is the empty
    /// (zero) class.
    pub fn cup_product(&self, m: usize, a: &[u64], n: usize, b: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.require_trivial()?;
        if m + n > self.top_degree() {
            return Ok(Vec::new());
        }
        let ha = self.cohomology(m)?;
        let hb = self.cohomology(n)?;
        let alpha = ha.cocycle(a)?;
        let beta = hb.cocycle(b)?;
        let prod = self.cup_cochains(m, &alpha, n, &beta)?;
        self.cohomology(m + n)?.coordinates(&prod)
    }
}

/// Whether two class vectors are nonzero multiples of each other.
pub fn proportional(ctx: &crate::modarith::PrimeContext, a: &[u64], b: &[u64]) -> bool {
    if mvec::is_zero(a) || mvec::is_zero(b) || a.len() != b.len() {
        return false;
    }
    let i = a.iter().position(|&x| x != 0).unwrap();
    let Ok(inv) = ctx.unit_inverse(a[i]) else {
        return false;
    };
    let f = ctx.mul(b[i], inv);
    a.iter().zip(b).all(|(&x, &y)| ctx.mul(x, f) == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::LieModule;
    use crate::lie::LieAlgebra;
    use crate::modarith::PrimeContext;

    fn f5() -> PrimeContext {
        PrimeContext::new(5, 1).unwrap()
    }

    fn heis_complex() -> CochainComplex {
        let g = LieAlgebra::new(f5(), 3, [(0, 1, 2, 1)]).unwrap();
        CochainComplex::new(&g, &LieModule::trivial(f5(), 3, 1)).unwrap()
    }

    #[test]
    fn heisenberg_cup_pattern() {
        let cx = heis_complex();
        let (x, y) = (vec![1, 0], vec![0, 1]);
        let (xx, yy) = (vec![1, 0], vec![0, 1]);
        assert_eq!(cx.cup_product(1, &x, 1, &y).unwrap(), vec![0, 0]);
        assert_eq!(cx.cup_product(1, &x, 2, &xx).unwrap(), vec![0]);
        assert_eq!(cx.cup_product(1, &y, 2, &yy).unwrap(), vec![0]);
        assert!(cx.cup_product(2, &xx, 2, &yy).unwrap().is_empty());
        let xy = cx.cup_product(1, &x, 2, &yy).unwrap();
        let yx = cx.cup_product(1, &y, 2, &xx).unwrap();
        assert_eq!(xy, vec![1]);
        assert_eq!(yx, vec![4]);
        assert!(proportional(&f5(), &xy, &yx));
    }

    #[test]
    fn inner_automorphism_acts_trivially() {
        let cx = heis_complex();
        // exp(ad e1): e2 ↦ e2 + e3
        let a = ModMatrix::from_dense(f5(), 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 1]]);
        for n in 0..=3 {
            let m = cx.induced_map(&AlgebraOperator::Automorphism(a.clone()), n).unwrap();
            assert!(m.is_identity(), "degree {n}");
        }
        let d = cx.algebra().adjoint(&[1, 0, 0]).unwrap();
        for n in 0..=3 {
            let m = cx.induced_map(&AlgebraOperator::Derivation(d.clone()), n).unwrap();
            assert!(m.is_zero(), "degree {n}");
        }
    }

    #[test]
    fn non_automorphism_is_caught() {
        let cx = heis_complex();
        // swaps e1 and e3: not a Lie map
        let a = ModMatrix::from_dense(f5(), 3, &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(cx.induced_map(&AlgebraOperator::Automorphism(a), 1).is_err());
    }

    #[test]
    fn scaling_automorphism() {
        // e1 ↦ 2e1, e2 ↦ e2, e3 ↦ 2e3; on H^1 the class x scales by 1/2 = 3
        let cx = heis_complex();
        let a = ModMatrix::from_dense(f5(), 3, &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        let m = cx.induced_map(&AlgebraOperator::Automorphism(a), 1).unwrap();
        assert_eq!(m.to_dense(), vec![vec![3, 0], vec![0, 1]]);
    }
}
