use super::{LieAlgebra, LieError, Submodule};
use serde::Serialize;
use std::fmt;

/// A descending family of ideals `n_1 ⊇ n_2 ⊇ … ⊇ n_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationChain {
    pub ideals: Vec<Submodule>,
}

impl FiltrationChain {
    pub fn horizon(&self) -> usize {
        self.ideals.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PfCondition {
    /// `n_{i+1} ⊆ n_i`
    Descending,
    /// `n_N ⊆ p^k g`, the finite-horizon shadow of `∩ n_i = 0`
    Intersection,
    /// `[n_i, g] ⊆ n_{i+1}`
    Commutator,
    /// `[n_i, g, …, g] ⊆ p·n_{i+1}` with `p − 1` brackets
    PowerCommutator,
}

impl fmt::Display for PfCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PfCondition::Descending => "descending",
            PfCondition::Intersection => "intersection",
            PfCondition::Commutator => "commutator",
            PfCondition::PowerCommutator => "power commutator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfViolation {
    pub condition: PfCondition,
    /// 1-based chain index `i` at which the condition fails.
    pub index: usize,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PfVerdict {
    Holds,
    Violated(PfViolation),
}

impl PfVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PfVerdict::Holds)
    }
}

impl LieAlgebra {
    /// `n_i = γ_i + p·γ_{i−1} + p²·γ_{i−2} + …` with `γ_m = g` for `m ≤ 1`,
    /// up to the horizon `class + k` where it vanishes. `None` unless the
    /// algebra is nilpotent of class `< p`.
    pub fn canonical_pf_chain(&self) -> Option<FiltrationChain> {
        let c = self.nilpotency_class()?;
        if c as u64 >= self.ctx().p() {
            return None;
        }
        let lcs = self.lower_central_series();
        let gamma = |m: isize| -> Submodule {
            if m <= 1 {
                lcs[0].clone()
            } else {
                lcs.get(m as usize - 1)
                    .cloned()
                    .unwrap_or_else(|| Submodule::zero(*self.ctx(), self.rank()))
            }
        };
        let k = self.ctx().k();
        let horizon = c + k as usize;
        let ideals = (1..=horizon)
            .map(|i| {
                (0..k).fold(Submodule::zero(*self.ctx(), self.rank()), |acc, j| {
                    acc.sum(&gamma(i as isize - j as isize).scale_p(j))
                })
            })
            .collect();
        Some(FiltrationChain { ideals })
    }

    /// Checks the filtration conditions in order of the index `i`, reporting
    /// the first failure. Every member must be an ideal.
    pub fn verify_pf_chain(&self, chain: &FiltrationChain) -> Result<PfVerdict, LieError> {
        for (i, n) in chain.ideals.iter().enumerate() {
            if let Some(w) = self.ideal_witness(n) {
                return Err(LieError::NotAnIdeal {
                    index: i + 1,
                    witness: w,
                });
            }
        }
        let p = self.ctx().p() as usize;
        let violated = |condition, index, witness| {
            Ok(PfVerdict::Violated(PfViolation {
                condition,
                index,
                witness,
            }))
        };
        for (i, pair) in chain.ideals.windows(2).enumerate() {
            let (n, next) = (&pair[0], &pair[1]);
            if let Some(w) = next.first_outside(n) {
                return violated(PfCondition::Descending, i + 1, w);
            }
            let mut s = self.bracket_with_all(n);
            if let Some(w) = s.first_outside(next) {
                return violated(PfCondition::Commutator, i + 1, w);
            }
            for _ in 1..p - 1 {
                if s.is_zero() {
                    break;
                }
                s = self.bracket_with_all(&s);
            }
            if let Some(w) = s.first_outside(&next.scale_p(1)) {
                return violated(PfCondition::PowerCommutator, i + 1, w);
            }
        }
        if let Some(last) = chain.ideals.last() {
            if let Some(w) = last.basis().first() {
                return violated(PfCondition::Intersection, chain.horizon(), w.clone());
            }
        }
        Ok(PfVerdict::Holds)
    }
}
