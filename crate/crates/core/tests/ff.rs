use g2core::arith::{factor as int_factor, is_probable_prime, primes_below};
use g2core::ff::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn fp(p: u64) -> std::sync::Arc<PrimeField> {
    PrimeField::from_u64(p)
}

fn poly(p: u64, c: &[i64]) -> Polynomial<Fp> {
    Polynomial::from_i64s(&fp(p), c)
}

#[test]
fn sqrt_mod_examples() {
    assert_eq!(sqrt_mod(&BigUint::from(2u32), &BigUint::from(7u32)), Some(BigUint::from(3u32)));
    assert_eq!(sqrt_mod(&BigUint::from(3u32), &BigUint::from(7u32)), None);
}

#[test]
fn sqrt_mod_matches_brute_force() {
    for p in primes_below(400).into_iter().skip(1) {
        for a in 0..p {
            let brute = (0..p).filter(|r| r * r % p == a).min();
            let got = sqrt_mod(&BigUint::from(a), &BigUint::from(p)).map(|r| r.try_into().unwrap());
            assert_eq!(got, brute, "a={a} p={p}");
        }
    }
}

#[test]
fn primality_agrees_with_sieve() {
    let primes = primes_below(20_000);
    let set: std::collections::HashSet<u64> = primes.iter().copied().collect();
    for n in 0..20_000u64 {
        assert_eq!(is_probable_prime(&BigUint::from(n)), set.contains(&n), "n={n}");
    }
    // Strong pseudoprimes to base 2 and Carmichael numbers.
    for n in [2047u64, 3277, 4033, 4681, 8321, 561, 1105, 1729, 3215031751, 3825123056546413051] {
        assert!(!is_probable_prime(&BigUint::from(n)), "n={n}");
    }
    let m127 = (BigUint::from(1u32) << 127) - 1u32;
    assert!(is_probable_prime(&m127));
    assert!(!is_probable_prime(&(&m127 * &m127)));
}

#[test]
fn integer_factorization() {
    let n = BigUint::from(600851475143u64);
    let f = int_factor(&n, 1 << 20).unwrap();
    let got: Vec<(u64, u32)> = f.iter().map(|(q, e)| (q.try_into().unwrap(), *e)).collect();
    assert_eq!(got, vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]);
    let n: BigUint = "1000000016000000063".parse().unwrap(); // 1000000007 * 1000000009
    let f = int_factor(&n, 1 << 24).unwrap();
    assert_eq!(f.len(), 2);
    let pow: BigUint = BigUint::from(10u32).pow(30);
    let f = int_factor(&pow, 1 << 20).unwrap();
    assert_eq!(f, vec![(BigUint::from(2u32), 30), (BigUint::from(5u32), 30)]);
}

#[test]
fn factor_examples() {
    let f = factor(&poly(5, &[1, 0, 1]), 1);
    assert_eq!(f, vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]);
    let f = factor(&poly(5, &[1, 0, 0, 1]), 7);
    assert_eq!(f, vec![(poly(5, &[1, 1]), 1), (poly(5, &[1, 4, 1]), 1)]);
    let f = factor(&poly(2, &[1, 1, 0, 1]), 3);
    assert_eq!(f, vec![(poly(2, &[1, 1, 0, 1]), 1)]);
    // Repeated factors, including a p-th power.
    let g = &(&poly(3, &[1, 1]).pow(3) * &poly(3, &[2, 1])) * &poly(3, &[1, 0, 1]).pow(2);
    let f = factor(&g, 9);
    assert_eq!(
        f,
        vec![(poly(3, &[1, 1]), 3), (poly(3, &[2, 1]), 1), (poly(3, &[1, 0, 1]), 2)]
    );
}

#[test]
fn resultant_examples() {
    let q = |c: &[i64]| Polynomial::<Q>::from_i64s(&(), c);
    assert_eq!(resultant(&q(&[-1, 0, 1]), &q(&[-2, 1])), Q::int(3));
    let f = poly(7, &[-1, 0, 1]);
    let g = poly(7, &[-2, 1]);
    assert_eq!(resultant(&f, &g), Fp::from_i64(&fp(7), 3));
    assert_eq!(sylvester_resultant(f.coeffs(), 2, g.coeffs(), 1, &fp(7)), Fp::from_i64(&fp(7), 3));
}

#[test]
fn splitting_field_examples() {
    let s = splitting_field(&poly(5, &[0, 3, 0, 1])).unwrap();
    assert_eq!(s.degree(), 2);
    assert_eq!(s.roots.len(), 3);
    let s = splitting_field(&poly(7, &[1, 1, 0, 1])).unwrap();
    for r in &s.roots {
        let f = poly(7, &[1, 1, 0, 1]).map(&s.field, |c| s.field.embed(c));
        assert!(f.eval(r).is_zero());
    }
    assert!(matches!(splitting_field(&poly(5, &[1, 2, 1])), Err(g2core::Error::NonSeparable)));
}

#[test]
fn extension_field_axioms() {
    for (p, k) in [(5u64, 2usize), (3, 3), (7, 2), (2, 4), (11, 3)] {
        let e = ExtField::new(&fp(p), k).unwrap();
        let q = p.pow(k as u32);
        let elems: Vec<Fq> = (0..q).map(|i| Fq::nth(&e, &BigUint::from(i))).collect();
        let mut squares = std::collections::HashSet::new();
        for a in &elems {
            if !a.is_zero() {
                let inv = a.inv().unwrap();
                assert!((a.clone() * &inv).is_one());
                assert_eq!(a.pow(&BigUint::from(q - 1)), Fq::one(&e));
            }
            squares.insert(a.square());
            assert_eq!(a.pow(&BigUint::from(q)), *a);
        }
        if p % 2 == 1 {
            assert_eq!(squares.len() as u64, (q + 1) / 2);
        }
        let g = e.generator();
        assert!(e.modulus().map(&e, |c| e.embed(c)).eval(&g).is_zero());
    }
}

#[test]
fn canonical_modulus_is_first_in_graded_order() {
    let e = ExtField::new(&fp(5), 2).unwrap();
    // x^2 + 1 and x^2 + x split mod 5; x^2 + x + 1 is the first irreducible.
    assert_eq!(e.modulus(), poly(5, &[1, 1, 1]));
    let e = ExtField::new(&fp(7), 3).unwrap();
    assert_eq!(e.modulus(), poly(7, &[1, 1, 0, 1]));
    let e = ExtField::new(&fp(7), 2).unwrap();
    assert_eq!(e.modulus(), poly(7, &[1, 0, 1]));
}

fn brute_roots(f: &Polynomial<Fp>, p: u64) -> Vec<Fp> {
    (0..p).map(|x| Fp::from_i64(&fp(p), x as i64)).filter(|x| f.eval(x).is_zero()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_reconstructs(pi in 0usize..8, coeffs in prop::collection::vec(0i64..1000, 2..9), seed in 0u64..1000) {
        let p = [2u64, 3, 5, 7, 11, 13, 101, 1009][pi];
        let f = poly(p, &coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor(&f, seed);
        let mut prod = Polynomial::constant(f.lc());
        for (g, e) in &fac {
            prop_assert!(g.lc().is_one());
            prop_assert_eq!(distinct_degree(g).len(), 1);
            prop_assert_eq!(distinct_degree(g)[0].1, g.degree().unwrap());
            prod = &prod * &g.pow(*e);
        }
        prop_assert_eq!(&prod, &f);
        prop_assert_eq!(factor(&f, seed + 1), fac);
        prop_assert_eq!(roots(&f), brute_roots(&f, p));
    }

    #[test]
    fn resultant_matches_sylvester(pi in 0usize..4, a in prop::collection::vec(0i64..100, 1..7), b in prop::collection::vec(0i64..100, 1..6)) {
        let p = [5u64, 7, 13, 97][pi];
        let f = poly(p, &a);
        let g = poly(p, &b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
        let s = sylvester_resultant(f.coeffs(), n, g.coeffs(), m, &fp(p));
        prop_assert_eq!(resultant(&f, &g), s.clone());
        // Res = 0 exactly when a common factor exists.
        prop_assert_eq!(s.is_zero(), f.gcd(&g).degree().unwrap() > 0);
    }

    #[test]
    fn resultant_product_formula(a in prop::collection::vec(-20i64..20, 2..5), b in prop::collection::vec(-20i64..20, 2..5)) {
        // Over F_p: Res(f, g) = lc(f)^m prod g(alpha) over roots of f in a splitting field.
        let p = 101u64;
        let f = poly(p, &a);
        let g = poly(p, &b);
        prop_assume!(f.degree().unwrap_or(0) >= 1 && !g.is_zero());
        prop_assume!(f.gcd(&f.derivative()).is_one());
        let s = splitting_field(&f).unwrap();
        let ge = g.map(&s.field, |c| s.field.embed(c));
        let mut prod = s.field.embed(&f.lc()).pow_u(g.degree().unwrap() as u64);
        for r in &s.roots {
            prod = prod * &ge.eval(r);
        }
        prop_assert_eq!(prod.project().unwrap(), resultant(&f, &g));
    }

    #[test]
    fn rational_resultant_is_integer_for_integer_polys(a in prop::collection::vec(-9i64..9, 2..5), b in prop::collection::vec(-9i64..9, 2..5)) {
        let f = Polynomial::<Q>::from_i64s(&(), &a);
        let g = Polynomial::<Q>::from_i64s(&(), &b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let r = resultant(&f, &g);
        prop_assert_eq!(r.denom(), &BigInt::from(1));
        let n = f.degree().unwrap();
        let m = g.degree().unwrap();
        prop_assert_eq!(sylvester_resultant(f.coeffs(), n, g.coeffs(), m, &()), r);
    }
}
