use super::{FreeBasis, LieAlgebra, LieError, Submodule};
use crate::modarith::{vec as mvec, ModMatrix};

/// One step `k_i ⊃ k_{i+1}` of a solvable chain.
#[derive(Debug, Clone)]
pub struct ChainLink {
    /// `k_i` as a submodule of `g`.
    pub ideal: Submodule,
    /// `k_i` with its own structure constants, in the coordinates of `basis`.
    pub algebra: LieAlgebra,
    /// Canonical basis of `k_i`, written in `g` coordinates.
    pub basis: Vec<Vec<u64>>,
    /// Splitting generator `t_i` in `g` coordinates.
    pub generator: Vec<u64>,
    /// `t_i` in `k_i` coordinates.
    pub generator_local: Vec<u64>,
    /// Free basis of `k_{i+1}` inside `k_i`, in `k_i` coordinates.
    pub next: FreeBasis,
}

impl ChainLink {
    /// Matrix of `ad(t_i)` restricted to `k_{i+1}`, in the basis `next`.
    pub fn generator_action(&self) -> ModMatrix {
        let k = &self.algebra;
        let ctx = *k.ctx();
        let d = self.next.rank();
        let mut trip = Vec::new();
        for (col, b) in self.next.vectors.iter().enumerate() {
            let v = k.bracket_unchecked(&self.generator_local, b);
            for (row, c) in self.next.coordinates(&v).into_iter().enumerate() {
                trip.push((row, col, c));
            }
        }
        ModMatrix::from_triplets(ctx, d, d, trip)
    }

    /// `k_{i+1}` with its own structure constants, in the basis `next`.
    pub fn next_algebra(&self) -> LieAlgebra {
        let h = Submodule::span(*self.algebra.ctx(), self.algebra.rank(), &self.next.vectors);
        self.algebra.subalgebra(&h).expect("chain member is a saturated ideal").0
    }
}

/// `g = k_0 ⊃ k_1 ⊃ … ⊃ k_n = 0` with rank-one free quotients.
#[derive(Debug, Clone)]
pub struct SolvableChain {
    pub links: Vec<ChainLink>,
}

impl SolvableChain {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.links.iter().map(|l| l.generator.clone()).collect()
    }

    pub fn ideals(&self) -> Vec<Submodule> {
        self.links.iter().map(|l| l.ideal.clone()).collect()
    }
}

impl LieAlgebra {
    pub fn derived_subalgebra(&self) -> Submodule {
        let gens: Vec<Vec<u64>> = (0..self.rank())
            .flat_map(|i| (i + 1..self.rank()).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let b = self.basis_bracket(i, j);
                (!b.is_empty()).then(|| {
                    let mut v = vec![0; self.rank()];
                    for &(m, c) in b {
                        v[m] = c;
                    }
                    v
                })
            })
            .collect();
        Submodule::span(*self.ctx(), self.rank(), &gens)
    }

    /// `g = g^(0) ⊋ g^(1) ⊋ …` until it reaches zero or stabilises.
    pub fn derived_series(&self) -> Vec<Submodule> {
        let mut out = vec![self.full()];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_submodules(last, last);
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Derived length when solvable. The zero algebra has length 0.
    pub fn derived_length(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_length().is_some()
    }

    /// `γ_1 = g, γ_{i+1} = [γ_i, g]` until zero or stable.
    pub fn lower_central_series(&self) -> Vec<Submodule> {
        let mut out = vec![self.full()];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_with_all(last);
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Smallest `c` with `γ_{c+1} = 0`, if nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn isolator(&self, h: &Submodule) -> Submodule {
        h.isolator()
    }

    /// Builds `g = k_0 ⊃ k_1 ⊃ … ⊃ 0`. At each level `k_{i+1}` is the
    /// isolator of `k_i'` plus all but the first of the unit vectors on the
    /// non-pivot columns of that isolator; `t_i` is the first one.
    pub fn solvable_chain(&self) -> Result<SolvableChain, LieError> {
        if self.rank() == 0 {
            return Err(LieError::ZeroAlgebra);
        }
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let ctx = *self.ctx();
        let mut links = Vec::new();
        let mut level = self.clone();
        let mut embed: Vec<Vec<u64>> = (0..self.rank()).map(|i| mvec::unit(self.rank(), i)).collect();
        while level.rank() > 0 {
            let d = level.rank();
            let iso = level.derived_subalgebra().isolator();
            let fb = iso.free_basis().expect("isolators are saturated");
            let complement: Vec<usize> = (0..d).filter(|c| !fb.pivots.contains(c)).collect();
            let Some((&first, rest)) = complement.split_first() else {
                return Err(LieError::AbelianizationTorsion);
            };
            let mut gens = fb.vectors.clone();
            gens.extend(rest.iter().map(|&c| mvec::unit(d, c)));
            let next_mod = Submodule::span(ctx, d, &gens);
            let (next_alg, next_fb) = level.subalgebra(&next_mod)?;
            let t_local = mvec::unit(d, first);
            let to_global = |v: &[u64]| -> Vec<u64> {
                let mut out = vec![0; self.rank()];
                for (c, row) in v.iter().zip(&embed) {
                    mvec::axpy(&ctx, &mut out, *c, row);
                }
                out
            };
            let generator = to_global(&t_local);
            let ideal = Submodule::span(ctx, self.rank(), &embed);
            let next_embed: Vec<Vec<u64>> = next_fb.vectors.iter().map(|v| to_global(v)).collect();
            links.push(ChainLink {
                ideal,
                algebra: level.clone(),
                basis: embed.clone(),
                generator,
                generator_local: t_local,
                next: next_fb,
            });
            level = next_alg;
            embed = next_embed;
        }
        Ok(SolvableChain { links })
    }
}
