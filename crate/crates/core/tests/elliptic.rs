mod common;

use common::volcano::*;
use g2core::arith::{is_prime_u64, primes_below};
use g2core::elliptic::*;
use g2core::ff::{Field, FiniteField, Fp, PrimeField};
use g2core::quadratic_cm::class_polynomial;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn curve(p: u64, a: i64, b: i64) -> EllipticCurve {
    EllipticCurve::from_i64(p, a, b).unwrap()
}


fn order_u64(e: &EllipticCurve) -> u64 {
    ec_order(e).unwrap().to_u64().unwrap()
}

fn coeffs(e: &EllipticCurve) -> (u64, u64) {
    (e.a().value().to_u64().unwrap(), e.b().value().to_u64().unwrap())
}

#[test]
fn order_examples() {
    assert_eq!(order_u64(&curve(5, 3, 0)), 10);
    assert_eq!(order_u64(&curve(5, 1, 0)), 4);
    assert_eq!(order_u64(&curve(5, 0, 1)), 6);
}

#[test]
fn order_matches_enumeration() {
    for p in [5u64, 7, 11, 13, 101, 211] {
        for a in 0..p.min(20) {
            for b in 0..p.min(20) {
                if let Ok(e) = EllipticCurve::from_i64(p, a as i64, b as i64) {
                    assert_eq!(order_u64(&e), brute_order(p, a, b));
                    assert_eq!(e.points().len() as u64, brute_order(p, a, b));
                }
            }
        }
    }
}

#[test]
fn bsgs_agrees_with_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 6 {
        let p = rng.gen_range((1u64 << 20) + 1..(1u64 << 21));
        if !is_prime_u64(p) {
            continue;
        }
        let f = PrimeField::from_u64(p);
        let e = EllipticCurve::new(Fp::random(&f, &mut rng), Fp::random(&f, &mut rng)).unwrap();
        assert_eq!(ec_order(&e).unwrap(), BigUint::from(naive_order(&e)));
        checked += 1;
    }
}

#[test]
fn bsgs_large_modulus() {
    // p near 2^40: twist sum identity and annihilation.
    let p = (1u64 << 40) - 87;
    assert!(is_prime_u64(p));
    let e = curve(p, 3, 7);
    let n = ec_order(&e).unwrap();
    let nt = ec_order(&e.quadratic_twist()).unwrap();
    assert_eq!(&n + &nt, BigUint::from(2 * p + 2));
    assert!(in_hasse_interval(e.p(), &n));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        assert!(e.mul(&n, &e.random_point(&mut rng)).is_infinity());
    }
    let big = EllipticCurve::from_ints(
        &PrimeField::new(BigUint::from(2u32).pow(61) - 1u32).unwrap(),
        &BigInt::from(1),
        &BigInt::from(1),
    )
    .unwrap();
    assert_eq!(ec_order(&big).unwrap_err().code(), "MODULUS_TOO_LARGE");
}

#[test]
fn group_law_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [101u64, 1009, 65537] {
        let f = PrimeField::from_u64(p);
        for _ in 0..3 {
            let e = loop {
                if let Ok(e) = EllipticCurve::new(Fp::random(&f, &mut rng), Fp::random(&f, &mut rng)) {
                    break e;
                }
            };
            let n = ec_order(&e).unwrap();
            for _ in 0..500 {
                let (a, b, c) = (e.random_point(&mut rng), e.random_point(&mut rng), e.random_point(&mut rng));
                assert_eq!(e.add(&a, &b), e.add(&b, &a));
                assert_eq!(e.add(&e.add(&a, &b), &c), e.add(&a, &e.add(&b, &c)));
                assert!(e.is_on_curve(&e.add(&a, &b)));
                assert!(e.add(&a, &e.neg(&a)).is_infinity());
            }
            for _ in 0..50 {
                let pt = e.random_point(&mut rng);
                assert!(e.mul(&n, &pt).is_infinity());
                let k = rng.gen_range(0u64..3000);
                let mut acc = Point::Infinity;
                for _ in 0..k % 40 {
                    acc = e.add(&acc, &pt);
                }
                assert_eq!(e.mul_u64(k % 40, &pt), acc);
            }
        }
    }
}

#[test]
fn twist_orders_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 200 {
        let p = rng.gen_range(5u64..(1 << 12));
        if !is_prime_u64(p) {
            continue;
        }
        let f = PrimeField::from_u64(p);
        let Ok(e) = EllipticCurve::new(Fp::random(&f, &mut rng), Fp::random(&f, &mut rng)) else {
            continue;
        };
        assert_eq!(order_u64(&e) + order_u64(&e.quadratic_twist()), 2 * p + 2);
        done += 1;
    }
}

#[test]
fn certificates() {
    let e = curve(5, 3, 0);
    let n = BigUint::from(10u32);
    let fac = vec![(BigUint::from(2u32), 1), (BigUint::from(5u32), 1)];
    let Certification::Certified(cert) = certify_order(&e, &n, &fac, 1).unwrap() else {
        panic!("cyclic group of order 10 must certify")
    };
    assert_eq!(cert.lcm, n);
    verify_order_certificate(&e, &cert).unwrap();

    // Wrong order in the Hasse interval: some point is not annihilated.
    let wrong = BigUint::from(8u32);
    let res = certify_order(&e, &wrong, &[(BigUint::from(2u32), 3)], 1).unwrap();
    assert!(matches!(res, Certification::Disproved(_)));

    let mut tampered = cert.clone();
    tampered.witnesses[0].2 = BigUint::from(5u32);
    tampered.lcm = BigUint::from(5u32);
    assert!(verify_order_certificate(&e, &tampered).is_err());

    assert_eq!(
        certify_order(&e, &BigUint::from(30u32), &[(2u32.into(), 1), (3u32.into(), 1), (5u32.into(), 1)], 1)
            .unwrap_err()
            .code(),
        "OUT_OF_INTERVAL"
    );
}

#[test]
fn certificates_random_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut certified = 0;
    while done < 50 {
        let p = rng.gen_range(1000u64..(1 << 20));
        if !is_prime_u64(p) {
            continue;
        }
        let f = PrimeField::from_u64(p);
        let Ok(e) = EllipticCurve::new(Fp::random(&f, &mut rng), Fp::random(&f, &mut rng)) else {
            continue;
        };
        let n = ec_order(&e).unwrap();
        let fac = g2core::arith::factor(&n, 1 << 20).unwrap();
        match certify_order(&e, &n, &fac, rng.gen()).unwrap() {
            Certification::Certified(c) => {
                verify_order_certificate(&e, &c).unwrap();
                assert_eq!(c.order, n);
                certified += 1;
            }
            Certification::Inconclusive => {}
            Certification::Disproved(_) => panic!("true order disproved"),
        }
        done += 1;
    }
    // Failures need exponent <= 4 sqrt(p), which is rare.
    assert!(certified >= 45, "{certified}");
}

#[test]
fn curve_with_order_examples() {
    let h4 = class_polynomial(-4, None).unwrap();
    let e = curve_with_order(-4, &5u32.into(), &10u32.into(), &h4).unwrap();
    assert!(is_isomorphic(&e, &curve(5, 3, 0)));
    let e = curve_with_order(-4, &5u32.into(), &4u32.into(), &h4).unwrap();
    assert!(is_isomorphic(&e, &curve(5, 1, 0)));
    assert_eq!(curve_with_order(-4, &5u32.into(), &7u32.into(), &h4).unwrap_err().code(), "NO_TWIST");
    // Inconsistent input: x^2 + 1 has no root mod 7.
    let h = vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)];
    assert_eq!(curve_with_order(-4, &7u32.into(), &8u32.into(), &h).unwrap_err().code(), "NO_ROOT");
}

#[test]
fn curve_with_order_d19() {
    let h = class_polynomial(-19, None).unwrap();
    let mut seen = 0;
    for p in primes_below(400).into_iter().filter(|&p| p > 3) {
        // 4p = t^2 + 19 f^2 with f = 1.
        for t in 0..(2 * (p as f64).sqrt() as i64 + 2) {
            if t * t + 19 != 4 * p as i64 {
                continue;
            }
            for n in [p as i64 + 1 - t, p as i64 + 1 + t] {
                let e = curve_with_order(-19, &(p as u32).into(), &(n as u32).into(), &h).unwrap();
                assert_eq!(brute_order(p, coeffs(&e).0, coeffs(&e).1), n as u64);
                let j = e.j_invariant();
                assert_eq!(j, Fp::from_int(e.field(), &BigInt::from(-884736)));
                seen += 1;
            }
        }
    }
    assert!(seen >= 4);
}

#[test]
fn two_torsion_quotients() {
    let e = curve(101, 1, 0);
    let q = quotient_by_2_torsion(&e, &Fp::from_i64(e.field(), 0)).unwrap();
    assert_eq!(coeffs(&q), (97, 0));
    // The formula at A = -1, B = 0, r = 1 over F_11.
    let e = curve(11, -1, 0);
    let q = quotient_by_2_torsion(&e, &Fp::from_i64(e.field(), 1)).unwrap();
    assert_eq!(coeffs(&q), (0, 8));
    assert_eq!(order_u64(&q), order_u64(&e));
    assert_eq!(
        quotient_by_2_torsion(&e, &Fp::from_i64(e.field(), 2)).unwrap_err().code(),
        "NOT_A_ROOT"
    );
}

#[test]
fn three_torsion_quotients() {
    let e = curve(101, 0, 1);
    let q = quotient_by_3_torsion(&e, &Fp::from_i64(e.field(), 0)).unwrap();
    assert_eq!(coeffs(&q), (0, 101 - 27));
    assert_eq!(order_u64(&q), order_u64(&e));
    assert_eq!(
        quotient_by_3_torsion(&e, &Fp::from_i64(e.field(), 5)).unwrap_err().code(),
        "NOT_A_ROOT"
    );
    let mut found = 0;
    for a in 0..101 {
        for b in 0..101 {
            let Ok(e) = EllipticCurve::from_i64(101, a, b) else { continue };
            for r in kernel_roots(&e, 3).unwrap() {
                assert_eq!(order_u64(&quotient_by_3_torsion(&e, &r).unwrap()), order_u64(&e));
                found += 1;
            }
        }
    }
    assert!(found > 100);
}

#[test]
fn subgroup_counts() {
    assert_eq!(count_rank_ell_subgroups(&curve(5, 1, 0), 2).unwrap(), 3);
    assert_eq!(count_rank_ell_subgroups(&curve(5, 3, 0), 2).unwrap(), 1);
    // 3x(x^3 + 4) over F_7: x^3 = 3 has no solution, so only x = 0.
    assert_eq!(count_rank_ell_subgroups(&curve(7, 0, 1), 3).unwrap(), 1);
    assert!(is_minimal(&curve(5, 3, 0), 2).unwrap());
    assert!(!is_minimal(&curve(5, 1, 0), 2).unwrap());
    assert_eq!(is_minimal(&curve(5, 0, 1), 2).unwrap_err().code(), "NOT_ORDINARY");
}

#[test]
fn quotients_are_modular_neighbours() {
    for p in [101u64, 103, 163] {
        for a in 1..15 {
            for b in 1..15 {
                let Ok(e) = EllipticCurve::from_i64(p, a, b) else { continue };
                let j = e.j_invariant().value().to_u64().unwrap();
                for ell in [2u32, 3] {
                    let nb: HashSet<u64> = phi_neighbours(j, ell, p).into_iter().map(|x| x.0).collect();
                    for q in quotients_by_j(&e, ell).unwrap() {
                        assert!(nb.contains(&q.j_invariant().value().to_u64().unwrap()));
                    }
                }
            }
        }
    }
}

#[test]
fn subgroup_count_detects_index() {
    common::volcano::check_subgroup_equivalence(98);
}

#[test]
fn make_minimal_examples() {
    let h = class_polynomial(-4, None).unwrap();
    let e = curve(5, 3, 0);
    assert_eq!(make_minimal(&e, &h, 2).unwrap(), e);
    let m = make_minimal(&curve(5, 1, 0), &h, 2).unwrap();
    assert_eq!(count_rank_ell_subgroups(&m, 2).unwrap(), 1);
    assert_eq!(order_u64(&m), 4);
    assert_eq!(coeffs(&m), (1, 3));

    let e17 = curve(17, 1, 0);
    let d = make_minimal_traced(&e17, &h, 2).unwrap();
    assert!(d.steps() <= 2);
    assert!(is_minimal(&d.curve, 2).unwrap());
    assert_eq!(order_u64(&d.curve), order_u64(&e17));
}

/// Surface curves for every ordinary trace at small `p`, then descent.
#[test]
fn make_minimal_invariants() {
    common::volcano::check_make_minimal(500);
}

#[test]
fn supersingular_examples() {
    let e7 = supersingular_curve(&7u32.into()).unwrap();
    assert_eq!(coeffs(&e7), (1, 0));
    assert_eq!(order_u64(&e7), 8);
    let e5 = supersingular_curve(&5u32.into()).unwrap();
    assert_eq!(coeffs(&e5), (0, 1));
    assert_eq!(order_u64(&e5), 6);
    assert_eq!(auxiliary_prime(&13u32.into()), 7);
    let e13 = supersingular_curve(&13u32.into()).unwrap();
    assert_eq!(order_u64(&e13), 14);
    for p in primes_below(3000).into_iter().filter(|&p| p > 3) {
        let e = supersingular_curve(&(p as u32).into()).unwrap();
        assert_eq!(brute_order(p, coeffs(&e).0, coeffs(&e).1), p + 1);
    }
}

#[test]
fn trace_zero_examples() {
    assert!(trace_zero_check(&curve(5, 0, 1), 1));
    assert!(!trace_zero_check(&curve(5, 3, 0), 1));
    let p = BigUint::from(2u32).pow(127) - 1u32;
    let e = supersingular_curve(&p).unwrap();
    assert!(trace_zero_check(&e, 4));
    let f = PrimeField::new(p).unwrap();
    let ord = EllipticCurve::from_ints(&f, &BigInt::from(2), &BigInt::from(3)).unwrap();
    assert!(!trace_zero_check(&ord, 4));
}

#[test]
fn isomorphism_classes_by_enumeration() {
    // Brute force: (A, B) ~ (u^4 A, u^6 B) for u in F_p^*.
    for p in [7u64, 13, 37] {
        let all: Vec<(u64, u64)> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .filter(|&(a, b)| EllipticCurve::from_i64(p, a as i64, b as i64).is_ok())
            .collect();
        for &(a1, b1) in all.iter().step_by(3) {
            let orbit: HashSet<(u64, u64)> =
                (1..p).map(|u| (a1 * pw(u, 4, p) % p, b1 * pw(u, 6, p) % p)).collect();
            let e1 = curve(p, a1 as i64, b1 as i64);
            for &(a2, b2) in &all {
                let e2 = curve(p, a2 as i64, b2 as i64);
                assert_eq!(is_isomorphic(&e1, &e2), orbit.contains(&(a2, b2)), "p={p} {a1},{b1} {a2},{b2}");
            }
        }
    }
}

#[test]
fn cubic_to_short_form() {
    let f = PrimeField::from_u64(101);
    let c = |v: i64| Fp::from_i64(&f, v);
    // y^2 = 2x^3 + 3x^2 + 5x + 7: count against the short model.
    let e = EllipticCurve::from_cubic(&c(2), &c(3), &c(5), &c(7)).unwrap();
    let direct = 1 + (0..101u64)
        .map(|x| {
            let v = (2 * x * x * x + 3 * x * x + 5 * x + 7) % 101;
            (0..101u64).filter(|y| y * y % 101 == v).count() as u64
        })
        .sum::<u64>();
    assert_eq!(order_u64(&e), direct);
}

proptest! {
    #[test]
    fn quotient_preserves_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = loop {
            let p = rng.gen_range(5u64..(1 << 16));
            if is_prime_u64(p) { break p; }
        };
        let f = PrimeField::from_u64(p);
        // Build a curve with a known rational 2-torsion root r.
        let r = Fp::random(&f, &mut rng);
        let a = Fp::random(&f, &mut rng);
        let b = -(r.square() * &r + &(a.clone() * &r));
        if let Ok(e) = EllipticCurve::new(a, b) {
            let q = quotient_by_2_torsion(&e, &r).unwrap();
            prop_assert_eq!(ec_order(&q).unwrap(), ec_order(&e).unwrap());
        }
    }
}
