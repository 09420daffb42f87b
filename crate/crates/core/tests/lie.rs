use lazard::corpus::standard_corpus;
use lazard::format::{emit_algebra, parse_algebra_str};
use lazard::lie::{LieAlgebra, LieError, PfVerdict, Submodule};
use lazard::modarith::PrimeContext;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense antisymmetric structure tensor `c[i][j][m]`.
fn tensor(g: &LieAlgebra) -> Vec<Vec<Vec<u64>>> {
    let ctx = g.ctx();
    let r = g.rank();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for &(i, j, m, v) in g.structure_constants() {
        c[i][j][m] = ctx.add(c[i][j][m], v);
        c[j][i][m] = ctx.sub(c[j][i][m], v);
    }
    c
}

/// Jacobi identity checked directly on the tensor, independent of the
/// library's validator.
fn jacobi_holds(ctx: &PrimeContext, c: &[Vec<Vec<u64>>]) -> bool {
    let r = c.len();
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                for m in 0..r {
                    let mut s = 0u64;
                    for n in 0..r {
                        s = ctx.add(s, ctx.mul(c[j][l][n], c[i][n][m]));
                        s = ctx.add(s, ctx.mul(c[l][i][n], c[j][n][m]));
                        s = ctx.add(s, ctx.mul(c[i][j][n], c[l][n][m]));
                    }
                    if s != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn corpus_validates_and_round_trips() {
    for (name, g) in standard_corpus(2) {
        assert!(g.validate().is_ok(), "{name}");
        assert!(jacobi_holds(g.ctx(), &tensor(&g)), "{name}");
        let back = parse_algebra_str(&emit_algebra(&g, Some(&name))).unwrap();
        assert_eq!(back, g, "{name}");
    }
}

#[test]
fn perturbed_tables_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let corpus: Vec<LieAlgebra> = standard_corpus(2)
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.rank() >= 3)
        .collect();
    let mut rejected = 0;
    let mut attempts = 0;
    while rejected < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "could not generate enough genuine perturbations");
        let g = &corpus[rng.gen_range(0..corpus.len())];
        let ctx = *g.ctx();
        let r = g.rank();
        let i = rng.gen_range(0..r - 1);
        let j = rng.gen_range(i + 1..r);
        let m = rng.gen_range(0..r);
        let c = rng.gen_range(1..ctx.modulus());
        let mut consts = g.structure_constants().to_vec();
        consts.push((i, j, m, c));
        let h = LieAlgebra::new_unchecked(ctx, r, consts.clone()).unwrap();
        if jacobi_holds(&ctx, &tensor(&h)) {
            assert!(LieAlgebra::new(ctx, r, consts).is_ok());
            continue;
        }
        assert!(matches!(LieAlgebra::new(ctx, r, consts), Err(LieError::Jacobi(_))));
        rejected += 1;
    }
}

#[test]
fn adjoint_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, g) in standard_corpus(2) {
        let ctx = *g.ctx();
        for _ in 0..10 {
            let x: Vec<u64> = (0..g.rank()).map(|_| rng.gen_range(0..ctx.modulus())).collect();
            let y: Vec<u64> = (0..g.rank()).map(|_| rng.gen_range(0..ctx.modulus())).collect();
            let (ax, ay) = (g.adjoint(&x).unwrap(), g.adjoint(&y).unwrap());
            let lhs = g.adjoint(&g.bracket(&x, &y).unwrap()).unwrap();
            assert_eq!(lhs, ax.mul(&ay).sub(&ay.mul(&ax)), "{name}");
        }
    }
}

#[test]
fn solvable_chain_has_unit_quotients() {
    for (name, g) in standard_corpus(2) {
        let chain = g.solvable_chain().unwrap();
        assert_eq!(chain.len(), g.rank(), "{name}");
        for link in &chain.links {
            let ambient = &link.algebra;
            let next = Submodule::span(*ambient.ctx(), ambient.rank(), &link.next.vectors);
            assert!(ambient.is_ideal(&next), "{name}");
            assert!(ambient.full().quotient_is_free_rank_one(&next), "{name}");
            assert!(!next.contains(&link.generator_local), "{name}");
        }
    }
}

#[test]
fn canonical_chain_passes_for_small_class() {
    for (name, g) in standard_corpus(2) {
        match g.nilpotency_class() {
            Some(c) if (c as u64) < g.ctx().p() => {
                let chain = g.canonical_pf_chain().expect("class below p");
                assert_eq!(g.verify_pf_chain(&chain).unwrap(), PfVerdict::Holds, "{name}");
            }
            _ => assert!(g.canonical_pf_chain().is_none(), "{name}"),
        }
    }
}

fn submodule(p: u64, k: u32, dim: usize) -> impl Strategy<Value = Submodule> {
    let ctx = PrimeContext::new(p, k).unwrap();
    let m = ctx.modulus();
    proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(0u64), 0..m], dim), 0..=dim)
        .prop_map(move |gens| Submodule::span(ctx, dim, &gens))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn isolator_idempotent_and_monotone(h in submodule(5, 3, 5), extra in submodule(5, 3, 5)) {
        let iso = h.isolator();
        prop_assert!(h.is_subset_of(&iso));
        prop_assert!(iso.is_saturated());
        prop_assert_eq!(iso.isolator(), iso.clone());
        let bigger = h.sum(&extra);
        prop_assert!(iso.is_subset_of(&bigger.isolator()));
    }

    #[test]
    fn isolator_rank_is_preserved(h in submodule(7, 2, 4)) {
        prop_assert_eq!(h.isolator().rank(), h.rank());
    }
}
