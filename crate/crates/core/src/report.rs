//! Report documents emitted by the command-line tool. Every document carries
//! a `"schema": 1` field.

use crate::bch::{BchError, BchTable, BchTermRecord};
use crate::cohomology::{integral_cohomology, CochainComplex, CohomologyError, LieModule};
use crate::lhs::ComparisonReport;
use crate::lie::{FiltrationChain, LieAlgebra, LieError, PfVerdict, Submodule};
use crate::modarith::PrimeContext;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct Versioned<T> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Versioned<T> {
    pub fn new(body: T) -> Self {
        Self {
            schema: crate::format::SCHEMA,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiReport {
    pub algebra: String,
    pub p: u64,
    pub k: u32,
    pub coefficients: String,
    pub betti: Vec<usize>,
    /// Torsion exponents of `H^n` over `Z/p^k` per degree; empty unless the
    /// integral computation was requested.
    pub torsion: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<Vec<usize>>,
    pub euler: i64,
}

/// Betti numbers of `g/pg` with trivial or supplied coefficients, optionally
/// with the cohomology over `Z/p^k` (trivial coefficients only).
pub fn betti_report(
    g: &LieAlgebra,
    name: &str,
    module: Option<&LieModule>,
    integral: bool,
) -> Result<BettiReport, CohomologyError> {
    let gp = g.reduce_mod_p();
    let trivial = LieModule::trivial(*gp.ctx(), gp.rank(), 1);
    let v = module.unwrap_or(&trivial);
    let cx = CochainComplex::new(&gp, v)?;
    let (torsion, free_rank) = if integral {
        if module.is_some() {
            return Err(CohomologyError::RequiresTrivialCoefficients);
        }
        let h = integral_cohomology(g)?;
        (
            h.iter().map(|x| x.torsion.clone()).collect(),
            Some(h.iter().map(|x| x.free_rank).collect()),
        )
    } else {
        (Vec::new(), None)
    };
    Ok(BettiReport {
        algebra: name.to_string(),
        p: g.ctx().p(),
        k: g.ctx().k(),
        coefficients: if module.is_some() {
            format!("module of dimension {}", v.dim())
        } else {
            "trivial".to_string()
        },
        betti: cx.betti(),
        torsion,
        free_rank,
        euler: cx.euler_characteristic(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubmoduleSummary {
    pub rank: usize,
    /// Elementary exponents: `Z/p^k`-module `⊕ p^{a_i} Z/p^k`.
    pub exponents: Vec<u32>,
}

impl SubmoduleSummary {
    fn of(s: &Submodule) -> Self {
        Self {
            rank: s.rank(),
            exponents: s.elementary_exponents(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub generator: Vec<u64>,
    pub ideal_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PfReport {
    /// `supplied`, `canonical` or `none`
    pub source: String,
    pub horizon: usize,
    #[serde(flatten)]
    pub verdict: Option<PfVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub algebra: String,
    pub p: u64,
    pub k: u32,
    pub derived_series: Vec<SubmoduleSummary>,
    pub lower_central_series: Vec<SubmoduleSummary>,
    pub nilpotency_class: Option<usize>,
    pub solvable_chain: Vec<ChainStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_error: Option<String>,
    pub pf: PfReport,
}

impl SeriesReport {
    pub fn pass(&self) -> bool {
        !matches!(self.pf.verdict, Some(PfVerdict::Violated(_)))
    }
}

/// Derived and lower central series, the solvable chain, and the verdict of
/// the filtration checker on a supplied chain or on the canonical one.
pub fn series_report(g: &LieAlgebra, name: &str, chain: Option<&FiltrationChain>) -> Result<SeriesReport, LieError> {
    let (solvable_chain, chain_error) = match g.solvable_chain() {
        Ok(c) => (
            c.links
                .iter()
                .map(|l| ChainStep {
                    generator: l.generator.clone(),
                    ideal_rank: l.ideal.rank(),
                })
                .collect(),
            None,
        ),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let (source, pf_chain) = match chain {
        Some(c) => ("supplied", Some(c.clone())),
        None => match g.canonical_pf_chain() {
            Some(c) => ("canonical", Some(c)),
            None => ("none", None),
        },
    };
    let verdict = pf_chain.as_ref().map(|c| g.verify_pf_chain(c)).transpose()?;
    Ok(SeriesReport {
        algebra: name.to_string(),
        p: g.ctx().p(),
        k: g.ctx().k(),
        derived_series: g.derived_series().iter().map(SubmoduleSummary::of).collect(),
        lower_central_series: g.lower_central_series().iter().map(SubmoduleSummary::of).collect(),
        nilpotency_class: g.nilpotency_class(),
        solvable_chain,
        chain_error,
        pf: PfReport {
            source: source.to_string(),
            horizon: pf_chain.map_or(0, |c| c.horizon()),
            verdict,
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BchReport {
    pub p: u64,
    pub k: u32,
    pub max_degree: usize,
    pub terms: Vec<BchTermRecord>,
}

pub fn bch_report(ctx: PrimeContext, degree: usize) -> Result<BchReport, BchError> {
    let table = BchTable::new(ctx, degree)?;
    Ok(BchReport {
        p: ctx.p(),
        k: ctx.k(),
        max_degree: degree,
        terms: table.records(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CupEntry {
    /// 1-based indices into the representative bases of the two factors.
    pub left: usize,
    pub right: usize,
    pub product: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CupReport {
    pub algebra: String,
    pub p: u64,
    pub deg1: usize,
    pub deg2: usize,
    pub dims: [usize; 3],
    /// Representative cocycles of each factor, in the subset basis.
    pub left_basis: Vec<Vec<u64>>,
    pub right_basis: Vec<Vec<u64>>,
    pub products: Vec<CupEntry>,
}

/// Products of all pairs of basis classes of `H^m` and `H^n` of `g/pg`.
pub fn cup_report(g: &LieAlgebra, name: &str, m: usize, n: usize) -> Result<CupReport, CohomologyError> {
    let gp = g.reduce_mod_p();
    let r = gp.rank();
    let cx = CochainComplex::new(&gp, &LieModule::trivial(*gp.ctx(), r, 1))?;
    for d in [m, n] {
        if d > r {
            return Err(CohomologyError::DegreeOutOfRange { degree: d, max: r });
        }
    }
    let (ha, hb) = (cx.cohomology(m)?, cx.cohomology(n)?);
    let target = if m + n <= r { cx.cohomology(m + n)?.dim() } else { 0 };
    let mut products = Vec::new();
    for a in 0..ha.dim() {
        for b in 0..hb.dim() {
            let ea = crate::modarith::vec::unit(ha.dim(), a);
            let eb = crate::modarith::vec::unit(hb.dim(), b);
            products.push(CupEntry {
                left: a + 1,
                right: b + 1,
                product: cx.cup_product(m, &ea, n, &eb)?,
            });
        }
    }
    Ok(CupReport {
        algebra: name.to_string(),
        p: gp.ctx().p(),
        deg1: m,
        deg2: n,
        dims: [ha.dim(), hb.dim(), target],
        left_basis: ha.representatives().to_vec(),
        right_basis: hb.representatives().to_vec(),
        products,
    })
}

/// Plain-text table of a comparison report.
pub fn comparison_table(rep: &ComparisonReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  (p = {}, k = {})", rep.algebra, rep.p, rep.k);
    let _ = writeln!(s, "{:>3}  {:>6}  {:>6}  {:>6}", "n", "group", "lie", "direct");
    for r in &rep.rows {
        let mark = if r.group == r.lie && r.lie == r.direct { "" } else { "  *" };
        let _ = writeln!(s, "{:>3}  {:>6}  {:>6}  {:>6}{mark}", r.degree, r.group, r.lie, r.direct);
    }
    let _ = writeln!(s, "verdict: {}", if rep.pass { "pass" } else { "FAIL" });
    s
}
