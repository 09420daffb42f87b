mod common;

use common::{brute_force_fixed_and_cofixed, oracle_betti};
use lazard::bch::{truncated_exp, truncated_log};
use lazard::corpus::standard_corpus;
use lazard::lhs::{
    coinvariants_dim, induced_actions, invariants_dim, lemma_abelian_check, solvable_betti, two_column_page, Side,
};
use lazard::lie::Submodule;
use lazard::modarith::{ModMatrix, PrimeContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn lifts_give_identical_pages() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for (name, g) in standard_corpus(2) {
        let chain = g.solvable_chain().unwrap();
        for link in &chain.links {
            let k = Submodule::span(*link.algebra.ctx(), link.algebra.rank(), &link.next.vectors);
            let ctx = *link.algebra.ctx();
            let coeffs: Vec<u64> = (0..link.next.rank()).map(|_| rng.gen_range(0..ctx.modulus())).collect();
            let shift = link.next.combine(&ctx, &coeffs);
            let t2: Vec<u64> = link
                .generator_local
                .iter()
                .zip(shift.iter().chain(std::iter::repeat(&0)))
                .map(|(&a, &b)| ctx.add(a, b))
                .collect();
            for side in [Side::Group, Side::Lie] {
                let a = two_column_page(&link.algebra, &link.generator_local, &k, side).unwrap();
                let b = two_column_page(&link.algebra, &t2, &k, side).unwrap();
                assert_eq!(a, b, "{name} {side}");
                assert!((0..=k.rank()).all(|s| a.entry(2, s) == 0));
            }
        }
    }
}

#[test]
fn group_operator_is_exponential_of_lie_operator() {
    let mut compared = 0;
    for (name, g) in standard_corpus(2) {
        let chain = g.solvable_chain().unwrap();
        for link in &chain.links {
            let k = Submodule::span(*link.algebra.ctx(), link.algebra.rank(), &link.next.vectors);
            let grp = induced_actions(&link.algebra, &link.generator_local, &k, Side::Group).unwrap();
            let lie = induced_actions(&link.algebra, &link.generator_local, &k, Side::Lie).unwrap();
            for (s, (u, d)) in grp.operators.iter().zip(&lie.operators).enumerate() {
                assert!(lemma_abelian_check(u).unwrap(), "{name} H^{s}");
                if let Ok(e) = truncated_exp(d) {
                    assert_eq!(&e, u, "{name} H^{s}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 100, "{compared}");
}

#[test]
fn recursion_matches_direct_computation() {
    for (name, g) in standard_corpus(2).into_iter().filter(|(_, g)| g.rank() <= 6) {
        let direct = oracle_betti(&g.reduce_mod_p());
        for side in [Side::Group, Side::Lie] {
            let run = solvable_betti(&g, side).unwrap();
            assert!(run.consistent, "{name} {side}");
            assert_eq!(run.betti, direct, "{name} {side}");
            for level in &run.levels {
                let totals = level.page.totals();
                for (n, &b) in totals.iter().enumerate() {
                    let expect = level.page.entry(0, n) + if n > 0 { level.page.entry(1, n - 1) } else { 0 };
                    assert_eq!(b, expect);
                }
            }
        }
    }
}

/// Random `U` with `(U − I)^p = 0` over `GF(p)`: block unipotent with blocks
/// of size at most `p`, conjugated by a random invertible matrix.
fn random_unipotent(rng: &mut ChaCha8Rng, ctx: PrimeContext, dim: usize) -> ModMatrix {
    let p = ctx.p() as usize;
    let mut trip: Vec<(usize, usize, u64)> = (0..dim).map(|i| (i, i, 1)).collect();
    let mut start = 0;
    while start < dim {
        let size = rng.gen_range(1..=p).min(dim - start);
        for a in 0..size {
            for b in a + 1..size {
                trip.push((start + a, start + b, rng.gen_range(0..ctx.p())));
            }
        }
        start += size;
    }
    let u = ModMatrix::from_triplets(ctx, dim, dim, trip);
    loop {
        let dense: Vec<Vec<u64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(0..ctx.p())).collect()).collect();
        let s = ModMatrix::from_dense(ctx, dim, &dense);
        if let Ok(si) = s.inverse() {
            return s.mul(&u).mul(&si);
        }
    }
}

#[test]
fn lemma_holds_on_random_unipotents() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for p in [5, 7] {
        let ctx = PrimeContext::new(p, 1).unwrap();
        for dim in [2, 5, 9] {
            for _ in 0..30 {
                let u = random_unipotent(&mut rng, ctx, dim);
                assert!(lemma_abelian_check(&u).unwrap());
                let n = truncated_log(&u).unwrap();
                assert_eq!(invariants_dim(&u, Side::Group).unwrap(), invariants_dim(&n, Side::Lie).unwrap());
                assert_eq!(truncated_exp(&n).unwrap(), u);
            }
        }
    }
}

#[test]
fn invariants_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for p in [5, 7] {
        let ctx = PrimeContext::new(p, 1).unwrap();
        for dim in 1..=3 {
            for _ in 0..5 {
                let u = random_unipotent(&mut rng, ctx, dim);
                let (fixed, cofixed) = brute_force_fixed_and_cofixed(&u, true);
                assert_eq!(invariants_dim(&u, Side::Group).unwrap(), fixed);
                assert_eq!(coinvariants_dim(&u, Side::Group).unwrap(), cofixed);
            }
        }
    }
}

#[test]
fn non_unipotent_action_is_rejected() {
    let ctx = PrimeContext::new(5, 1).unwrap();
    let u = ModMatrix::from_dense(ctx, 2, &[vec![2, 0], vec![0, 1]]);
    assert!(lemma_abelian_check(&u).is_err());
}
