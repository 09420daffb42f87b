//! One line per acceptance criterion. Runs without the libtest harness and
//! exits nonzero if any criterion fails.

mod common;

use common::{brute_force_fixed_and_cofixed, dense_rank, oracle_betti, random_ut_subalgebra};
use lazard::bch::{both_routes, truncated_exp, truncated_log, BchTable, NilpotentGroup};
use lazard::cohomology::{
    betti_trivial, eckmann_shapiro_check, integral_cohomology, proportional, CochainComplex, LieModule,
};
use lazard::corpus::{corpus, standard_corpus};
use lazard::lhs::{coinvariants_dim, invariants_dim, lemma_abelian_check, main_theorem_check, Side};
use lazard::lie::LieAlgebra;
use lazard::modarith::{ModMatrix, PrimeContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ctx(p: u64, k: u32) -> PrimeContext {
    PrimeContext::new(p, k).expect("valid prime")
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn trivial_complex(g: &LieAlgebra) -> CochainComplex {
    let gp = g.reduce_mod_p();
    CochainComplex::new(&gp, &LieModule::trivial(*gp.ctx(), gp.rank(), 1)).expect("trivial module")
}

/// Block upper triangular with blocks of size at most `max_block`,
/// conjugated by a random invertible matrix. The diagonal is `diag`.
fn random_block_triangular(rng: &mut ChaCha8Rng, c: PrimeContext, dim: usize, max_block: usize, diag: u64) -> ModMatrix {
    let mut trip: Vec<(usize, usize, u64)> = (0..dim).map(|i| (i, i, diag)).collect();
    let mut start = 0;
    while start < dim {
        let size = rng.gen_range(1..=max_block).min(dim - start);
        for a in 0..size {
            for b in a + 1..size {
                trip.push((start + a, start + b, rng.gen_range(0..c.p())));
            }
        }
        start += size;
    }
    let t = ModMatrix::from_triplets(c, dim, dim, trip);
    loop {
        let dense: Vec<Vec<u64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(0..c.p())).collect()).collect();
        let s = ModMatrix::from_dense(c, dim, &dense);
        if let Ok(si) = s.inverse() {
            return s.mul(&t).mul(&si);
        }
    }
}

fn heisenberg_reproduction() -> Outcome {
    let mut slowest = Duration::ZERO;
    for p in [5, 7, 11] {
        let start = Instant::now();
        let g = corpus("heisenberg_gen(1)", ctx(p, 2)).map_err(|e| e.to_string())?;
        let rep = main_theorem_check(&g, "heisenberg_gen(1)").map_err(|e| e.to_string())?;
        ensure!(rep.pass, "p = {p}: comparison failed");
        for side in [Some(Side::Group), Some(Side::Lie), None] {
            ensure!(rep.column(side) == [1, 2, 2, 1], "p = {p}: {side:?} column {:?}", rep.column(side));
        }

        // basis x, y, z with [x, y] = z; cochain masks x=1, y=2, z=4
        let cx = trivial_complex(&g);
        let c = *cx.ctx();
        let class = |n: usize, mask: u32| -> Result<Vec<u64>, String> {
            let idx = cx.subsets(n).iter().position(|&s| s == mask).unwrap();
            cx.cohomology(n)
                .and_then(|h| h.coordinates(&unit(cx.cochain_dim(n), idx)))
                .map_err(|e| e.to_string())
        };
        let (x, y) = (class(1, 0b001)?, class(1, 0b010)?);
        let (xx, yy) = (class(2, 0b101)?, class(2, 0b110)?);
        ensure!(
            !proportional(&c, &xx, &yy) && xx.iter().any(|&v| v != 0) && yy.iter().any(|&v| v != 0),
            "p = {p}: X and Y do not span H^2"
        );
        let cup = |m: usize, a: &[u64], n: usize, b: &[u64]| cx.cup_product(m, a, n, b).map_err(|e| e.to_string());
        let zero = |v: &[u64]| v.iter().all(|&e| e == 0);
        ensure!(zero(&cup(1, &x, 1, &y)?), "p = {p}: x⌣y ≠ 0");
        ensure!(zero(&cup(1, &x, 2, &xx)?), "p = {p}: x⌣X ≠ 0");
        ensure!(zero(&cup(1, &y, 2, &yy)?), "p = {p}: y⌣Y ≠ 0");
        ensure!(zero(&cup(2, &xx, 2, &yy)?), "p = {p}: X⌣Y ≠ 0");
        let (xy, yx) = (cup(1, &x, 2, &yy)?, cup(1, &y, 2, &xx)?);
        ensure!(proportional(&c, &xy, &yx), "p = {p}: x⌣Y and y⌣X not proportional nonzero classes");
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(1), "p = {p}: took {t:?}");
        slowest = slowest.max(t);
    }
    Ok(format!("p ∈ {{5, 7, 11}}, columns (1,2,2,1), cup relations hold, slowest {slowest:.2?}"))
}

fn main_theorem_suite() -> Outcome {
    let start = Instant::now();
    let entries = standard_corpus(2);
    for (name, g) in &entries {
        let rep = main_theorem_check(g, name).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rep.pass, "{name}: columns differ");
        ensure!(rep.recursion_consistent && rep.lemma_abelian, "{name}: recursion checks failed");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(30), "took {t:?}");
    Ok(format!("{} algebras, three columns equal, {t:.2?}", entries.len()))
}

fn lemma_abelian_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e55);
    let mut count = 0;
    for p in [5, 7] {
        let c = ctx(p, 1);
        for dim in 2..=12 {
            for _ in 0..200 {
                let u = random_block_triangular(&mut rng, c, dim, p as usize, 1);
                let ok = lemma_abelian_check(&u).map_err(|e| e.to_string())?;
                ensure!(ok, "p = {p}, dim = {dim}: invariant dimensions differ");
                let n = truncated_log(&u).map_err(|e| e.to_string())?;
                let rows = |m: &ModMatrix| (0..dim).map(|r| m.dense_row(r)).collect::<Vec<_>>();
                let shifted = u.sub(&ModMatrix::identity(c, dim));
                ensure!(
                    dense_rank(p, rows(&shifted)) == dense_rank(p, rows(&n)),
                    "p = {p}, dim = {dim}: rank(U − I) ≠ rank Ψ(U)"
                );
                ensure!(truncated_exp(&n).map_err(|e| e.to_string())? == u, "p = {p}, dim = {dim}: exp∘log ≠ id");
                count += 1;
            }
        }
    }
    Ok(format!("{count} unipotent operators"))
}

fn ce_correctness() -> Outcome {
    let check = |name: &str, g: &LieAlgebra, direct: Vec<usize>| -> Result<(), String> {
        let cx = trivial_complex(g);
        for n in 0..cx.top_degree().saturating_sub(1) {
            ensure!(cx.differential(n + 1).mul(&cx.differential(n)).is_zero(), "{name}: d∘d ≠ 0 in degree {n}");
        }
        ensure!(cx.euler_characteristic() == 0, "{name}: Euler characteristic {}", cx.euler_characteristic());
        let b = cx.betti();
        if g.reduce_mod_p().nilpotency_class().is_some() {
            ensure!(b.iter().eq(b.iter().rev()), "{name}: duality fails {b:?}");
        }
        ensure!(b == direct, "{name}: {b:?} vs oracle {direct:?}");
        Ok(())
    };
    let entries = standard_corpus(2);
    for (name, g) in &entries {
        check(name, g, oracle_betti(&g.reduce_mod_p()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xce);
    for i in 0..50 {
        let (p, n) = if i % 2 == 0 { (5, 4) } else { (7, 5) };
        let gens = rng.gen_range(1..=3);
        let g = random_ut_subalgebra(&mut rng, p, n, gens);
        check(&format!("ut({n}) subalgebra #{i}"), &g, oracle_betti(&g))?;
    }
    Ok(format!("{} corpus algebras and 50 random subalgebras of ut(n)", entries.len()))
}

fn bch_certification() -> Outcome {
    for p in [5u64, 7] {
        let (dynkin, oracle) = both_routes(p as usize - 1);
        ensure!(dynkin == oracle, "p = {p}: routes differ");
        let table = BchTable::new(ctx(p, 1), p as usize - 1).map_err(|e| e.to_string())?;
        ensure!(
            table.coefficient(&[0, 1]) == BigRational::new(One::one(), BigInt::from(2)),
            "p = {p}: degree-2 coefficient is not 1/2"
        );
        for t in table.terms() {
            ensure!(!(t.coefficient.denom() % BigInt::from(p)).is_zero(), "p = {p}: denominator {}", t.coefficient.denom());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xbc4);
    let mut algebras = 0;
    for (name, g) in standard_corpus(2) {
        let Some(class) = g.nilpotency_class() else { continue };
        ensure!((class as u64) < g.ctx().p(), "{name}: class {class} not below p");
        let grp = NilpotentGroup::new(&g).map_err(|e| format!("{name}: {e}"))?;
        let m = g.ctx().modulus();
        for _ in 0..50 {
            let mut v = || (0..g.rank()).map(|_| rng.gen_range(0..m)).collect::<Vec<u64>>();
            let (x, y, z) = (v(), v(), v());
            let mul = |a: &[u64], b: &[u64]| grp.mul(a, b).map_err(|e| e.to_string());
            ensure!(mul(&mul(&x, &y)?, &z)? == mul(&x, &mul(&y, &z)?)?, "{name}: product not associative");
        }
        algebras += 1;
    }
    Ok(format!("routes agree for p ∈ {{5, 7}}, associativity on {algebras} nilpotent algebras"))
}

fn rank_one_base_cases() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    for i in 0..20 {
        let p = if i % 2 == 0 { 5 } else { 7 };
        let c = ctx(p, 1);
        let dim = rng.gen_range(1..=3);

        // Lie side: arbitrary S on V
        let dense: Vec<Vec<u64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(0..p)).collect()).collect();
        let s = ModMatrix::from_dense(c, dim, &dense);
        let g = LieAlgebra::abelian(c, 1);
        let v = LieModule::new(&g, dim, vec![s.clone()]).map_err(|e| e.to_string())?;
        let b = CochainComplex::new(&g, &v).map_err(|e| e.to_string())?.betti();
        let (ker, coker) = brute_force_fixed_and_cofixed(&s, false);
        ensure!(b == [ker, coker], "module #{i}: Lie side {b:?} vs ({ker}, {coker})");

        // group side: σ = exp(N) for nilpotent N
        let n = random_block_triangular(&mut rng, c, dim, dim, 0);
        let sigma = truncated_exp(&n).map_err(|e| e.to_string())?;
        let h0 = invariants_dim(&sigma, Side::Group).map_err(|e| e.to_string())?;
        let h1 = coinvariants_dim(&sigma, Side::Group).map_err(|e| e.to_string())?;
        let (fixed, cofixed) = brute_force_fixed_and_cofixed(&sigma, true);
        ensure!((h0, h1) == (fixed, cofixed), "module #{i}: group side ({h0}, {h1}) vs ({fixed}, {cofixed})");
    }
    Ok("20 modules on each side, H^0 and H^1 match enumeration, H^{≥2} = 0".to_string())
}

fn eckmann_shapiro() -> Outcome {
    let mut count = 0;
    for k in [2, 3] {
        for (name, g) in standard_corpus(k) {
            let v = LieModule::trivial(g.ctx().residue_field(), g.rank(), 1);
            let rep = eckmann_shapiro_check(&g, &v).map_err(|e| format!("{name}: {e}"))?;
            ensure!(rep.agree, "{name}: {rep:?}");
            let h = integral_cohomology(&g).map_err(|e| format!("{name}: {e}"))?;
            let predicted: Vec<usize> = h.iter().map(|x| x.predicted_betti).collect();
            let betti = betti_trivial(&g).map_err(|e| e.to_string())?;
            ensure!(predicted == betti, "{name}: universal coefficients {predicted:?} vs {betti:?}");
            count += 1;
        }
    }
    Ok(format!("{count} algebra/precision pairs"))
}

fn scale() -> Outcome {
    let mut parts = Vec::new();
    for (spec, p, limit) in [("ut(5)", 7, 5), ("filiform(14)", 17, 120)] {
        let g = corpus(spec, ctx(p, 1)).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let b = betti_trivial(&g).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        ensure!(b.iter().sum::<usize>() > 0, "{spec}: empty result");
        ensure!(t < Duration::from_secs(limit), "{spec}: took {t:?}, limit {limit} s");
        parts.push(format!("rank {} in {t:.2?}", g.rank()));
    }
    Ok(parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Heisenberg reproduction", heisenberg_reproduction),
        ("main-theorem suite", main_theorem_suite),
        ("lemma-abelian property suite", lemma_abelian_suite),
        ("CE correctness", ce_correctness),
        ("BCH certification", bch_certification),
        ("rank-one base cases", rank_one_base_cases),
        ("Eckmann-Shapiro cross-check", eckmann_shapiro),
        ("scale and runtime", scale),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
