use cosetmaps::algebra::{canon2, AutElem, GroupCtx, Matrix};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<GroupCtx> {
    vec![
        GroupCtx::psl2(2, 3, 1).unwrap(),
        GroupCtx::psl2(3, 4, 2).unwrap(),
        GroupCtx::psl2(5, 2, 3).unwrap(),
        GroupCtx::psl2(19, 4, 4).unwrap(),
        GroupCtx::suzuki(2, 5).unwrap(),
        GroupCtx::suzuki(3, 6).unwrap(),
    ]
}

fn random_aut(ctx: &GroupCtx, rng: &mut ChaCha8Rng) -> AutElem {
    use rand::Rng;
    let rep = &ctx.cosets()[rng.gen_range(0..ctx.cosets().len())];
    ctx.mul(&ctx.from_s(ctx.random_s(rng)), rep)
}

#[test]
fn projective_canonical_form_ignores_scalars() {
    let ctx = GroupCtx::psl2(7, 3, 9).unwrap();
    let f = ctx.field();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let m = ctx.random_s(&mut rng);
        let lam = f.random_nonzero(&mut rng);
        let scaled = Matrix::new(2, m.entries().iter().map(|x| f.mul(x, &lam)).collect());
        assert_eq!(canon2(f, &scaled), canon2(f, &m));
    }
}

#[test]
fn automorphism_group_axioms() {
    for ctx in groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (a, b, c) = (random_aut(&ctx, &mut rng), random_aut(&ctx, &mut rng), random_aut(&ctx, &mut rng));
            assert!(ctx.eq(&ctx.mul(&ctx.mul(&a, &b), &c), &ctx.mul(&a, &ctx.mul(&b, &c))), "{}", ctx.name());
            assert!(ctx.is_identity(&ctx.mul(&a, &ctx.inv(&a))));
            assert!(ctx.is_identity(&ctx.mul(&ctx.inv(&a), &a)));
            assert!(ctx.eq(&ctx.mul(&a, &ctx.identity()), &a));
        }
    }
}

#[test]
fn coset_representatives_are_pairwise_inequivalent() {
    for ctx in groups() {
        let reps = ctx.cosets();
        for (i, r) in reps.iter().enumerate() {
            for s in &reps[i + 1..] {
                let q = ctx.mul(r, &ctx.inv(s));
                let inner = q.frob == 0 && (ctx.family() == cosetmaps::algebra::Family::Suzuki || ctx.in_psl2(&q.part));
                assert!(!inner, "{}: {:?} and {:?} share a coset", ctx.name(), r, s);
            }
        }
    }
}

#[test]
fn suzuki_orders_by_closure() {
    for (l, order) in [(1u32, 20usize), (2, 29120)] {
        let ctx = GroupCtx::suzuki(l, 0).unwrap();
        let gens: Vec<AutElem> = ctx.generators().into_iter().map(|g| ctx.from_s(g)).collect();
        let all = ctx.closure(&gens, 100_000).unwrap();
        assert_eq!(all.len(), order);
        assert_eq!(ctx.s_order(), BigUint::from(order));
    }
}

#[test]
fn suzuki_torus_is_a_homomorphism() {
    let ctx = GroupCtx::suzuki(3, 2).unwrap();
    let f = ctx.field();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (k, l) = (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng));
        let lhs = ctx.sz_torus(&k).mul(f, &ctx.sz_torus(&l));
        assert_eq!(lhs, ctx.sz_torus(&f.mul(&k, &l)));
    }
}

#[test]
fn sampled_elements_lie_in_s() {
    for ctx in groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let m = ctx.random_s(&mut rng);
            if ctx.family() == cosetmaps::algebra::Family::Psl2 {
                assert!(ctx.in_psl2(&m));
            }
            assert!(!m.det(ctx.field()).is_zero());
        }
    }
}
