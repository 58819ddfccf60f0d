use cosetmaps::ff::{is_irreducible, is_primitive, make_field, random_irreducible, Fe, Field};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        make_field(2, 5, None, 1).unwrap(),
        make_field(3, 4, None, 2).unwrap(),
        make_field(19, 3, None, 3).unwrap(),
        make_field(7, 1, None, 4).unwrap(),
        make_field(2, 13, None, 5).unwrap(),
    ]
}

fn triple(f: &Field, seed: u64) -> (Fe, Fe, Fe) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng))
}

#[test]
fn ring_axioms_on_random_triples() {
    for f in fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(f.p() as u64);
        for _ in 0..1000 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            assert_eq!(f.add(&a, &b), f.add(&b, &a));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert!(f.add(&a, &f.neg(&a)).is_zero());
            if !a.is_zero() {
                assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            }
        }
    }
}

#[test]
fn frobenius_is_a_field_automorphism_of_order_k() {
    for f in fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            for kk in 0..f.k() {
                let fa = f.frobenius(&a, kk);
                let fb = f.frobenius(&b, kk);
                assert_eq!(f.frobenius(&f.add(&a, &b), kk), f.add(&fa, &fb));
                assert_eq!(f.frobenius(&f.mul(&a, &b), kk), f.mul(&fa, &fb));
            }
            let mut x = a.clone();
            for _ in 0..f.k() {
                x = f.frobenius(&x, 1);
            }
            assert_eq!(x, a);
        }
    }
}

#[test]
fn euler_square_classes() {
    for f in fields().into_iter().filter(|f| f.p() != 2) {
        let ns = f.nonsquare().expect("odd characteristic has a cached non-square").clone();
        assert!(!f.is_square(&ns).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let a = f.random_nonzero(&mut rng);
            assert!(f.is_square(&f.sqr(&a)).unwrap());
            assert_eq!(f.is_square(&a).unwrap(), f.is_square_euler(&a).unwrap());
            let b = f.mul(&ns, &f.sqr(&f.random_nonzero(&mut rng)));
            assert!(!f.is_square(&b).unwrap());
            assert!(f.is_square(&f.mul(&ns, &b)).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn power_laws(m in 0u64..u64::MAX / 4, n in 0u64..u64::MAX / 4, seed in any::<u64>()) {
        for f in fields() {
            let (a, _, _) = triple(&f, seed);
            let lhs = f.pow(&a, &(BigUint::from(m) + BigUint::from(n)));
            let rhs = f.mul(&f.pow_u64(&a, m), &f.pow_u64(&a, n));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn seeded_irreducibles_are_irreducible(p in prop::sample::select(vec![2u32, 3, 5, 19, 251]), k in 1usize..9, seed in any::<u64>()) {
        let f = random_irreducible(p, k, seed);
        prop_assert_eq!(f.len(), k + 1);
        prop_assert_eq!(f[k], 1);
        prop_assert!(is_irreducible(p as u64, &f).unwrap());
        prop_assert_eq!(random_irreducible(p, k, seed), f);
    }
}

#[test]
fn small_polynomials() {
    assert!(is_irreducible(2, &[1, 1, 1]).unwrap());
    assert!(is_primitive(2, &[1, 1, 1]).unwrap());
    assert!(!is_irreducible(2, &[1, 0, 1]).unwrap());
    // x^2 + 1 over GF(3) is irreducible, but x has order 4 < 8.
    assert!(is_irreducible(3, &[1, 0, 1]).unwrap());
    assert!(!is_primitive(3, &[1, 0, 1]).unwrap());
    assert!(is_primitive(3, &[2, 1, 1]).unwrap());
}

#[test]
fn degree_one_fields_use_modulus_x() {
    let f = make_field(13, 1, None, 0).unwrap();
    assert_eq!(f.modulus(), &[0, 1]);
    let a = f.from_u64(5);
    assert_eq!(f.frobenius(&a, 0), a);
}
