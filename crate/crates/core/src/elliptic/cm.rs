use super::curve::{is_isomorphic, EllipticCurve};
use super::order::{ec_order, trace_zero_check, BSGS_BOUND};
use crate::arith::{is_prime_u64, jacobi, to_u64};
use crate::error::{invariant, Error, Result};
use crate::ff::{roots, Field, Fp, Polynomial, PrimeField};
use crate::quadratic_cm::{class_polynomial, ClassPolyCache};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Smallest root of `H` modulo `p`, as an integer in `[0, p)`.
pub fn smallest_root(h: &[BigInt], field: &Arc<PrimeField>) -> Option<Fp> {
    let hp: Polynomial<Fp> = Polynomial::from_bigints(field, h);
    if hp.is_zero() {
        return None;
    }
    roots(&hp).into_iter().min_by(|a, b| a.value().cmp(b.value()))
}

/// Curve with the given `j` (generic `j`): `A = 3j(1728 - j)`, `B = 2j(1728 - j)^2`.
pub fn curve_from_j(j: &Fp) -> Result<EllipticCurve> {
    let f = j.field();
    let k = Fp::from_i64(f, 1728) - j;
    if j.is_zero() {
        return EllipticCurve::new(Fp::zero(f), Fp::one(f));
    }
    if k.is_zero() {
        return EllipticCurve::new(Fp::one(f), Fp::zero(f));
    }
    let a = Fp::from_i64(f, 3) * j * &k;
    let b = Fp::from_i64(f, 2) * j * &k.square();
    EllipticCurve::new(a, b)
}

fn has_order(e: &EllipticCurve, n: &BigUint) -> Result<bool> {
    match to_u64(e.p()) {
        Some(p) if p <= BSGS_BOUND => Ok(ec_order(e)? == *n),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7477_6973_74);
            Ok((0..20).all(|_| e.mul(n, &e.random_point(&mut rng)).is_infinity()))
        }
    }
}

/// Twists of `y^2 = x^3 + c` (`k = 6`) or `y^2 = x^3 + cx` (`k = 4`) for
/// `c = 1, 2, ...`, one per isomorphism class.
fn special_twists(f: &Arc<PrimeField>, k: u64) -> Result<Vec<EllipticCurve>> {
    let classes = (f.p() - 1u32).gcd(&BigUint::from(k));
    let classes = to_u64(&classes).unwrap() as usize;
    let mut out: Vec<EllipticCurve> = Vec::new();
    let mut c = 1i64;
    while out.len() < classes {
        let cf = Fp::from_i64(f, c);
        let e = if k == 6 {
            EllipticCurve::new(Fp::zero(f), cf)?
        } else {
            EllipticCurve::new(cf, Fp::zero(f))?
        };
        if !out.iter().any(|o| is_isomorphic(o, &e)) {
            out.push(e);
        }
        c += 1;
    }
    Ok(out)
}

/// Curve of order `N` from the smallest root of the class polynomial `H`.
pub fn curve_with_order(disc: i64, p: &BigUint, n: &BigUint, h: &[BigInt]) -> Result<EllipticCurve> {
    let _ = disc;
    let f = PrimeField::new(p.clone())?;
    let j = smallest_root(h, &f).ok_or(Error::NoRoot)?;
    let candidates = if j.is_zero() {
        special_twists(&f, 6)?
    } else if *j.value() == BigUint::from(1728u32) % p {
        special_twists(&f, 4)?
    } else {
        let e = curve_from_j(&j)?;
        let t = e.quadratic_twist();
        vec![e, t]
    };
    for e in candidates {
        if has_order(&e, n)? {
            return Ok(e);
        }
    }
    Err(Error::NoTwist)
}

/// Smallest prime `q = 3 mod 4` with `(-q | p) = -1`.
pub fn auxiliary_prime(p: &BigUint) -> u64 {
    (3u64..)
        .step_by(4)
        .find(|&q| is_prime_u64(q) && jacobi(&BigInt::from(-(q as i64)), p) == -1)
        .unwrap()
}

/// A curve of trace zero over `F_p`, `p > 3`.
pub fn supersingular_curve(p: &BigUint) -> Result<EllipticCurve> {
    supersingular_curve_cached(p, None)
}

pub fn supersingular_curve_cached(p: &BigUint, cache: Option<&ClassPolyCache>) -> Result<EllipticCurve> {
    let f = PrimeField::new(p.clone())?;
    if *p <= BigUint::from(3u32) {
        return Err(invariant("supersingular_curve needs p > 3"));
    }
    let r4 = (p % 4u32).to_u32_digits().first().copied().unwrap_or(0);
    let r3 = (p % 3u32).to_u32_digits().first().copied().unwrap_or(0);
    let e = if r4 == 3 {
        EllipticCurve::new(Fp::one(&f), Fp::zero(&f))?
    } else if r3 == 2 {
        EllipticCurve::new(Fp::zero(&f), Fp::one(&f))?
    } else {
        let q = auxiliary_prime(p);
        let h = class_polynomial(-(q as i64), cache)?;
        let j = smallest_root(&h, &f).ok_or(Error::NoRoot)?;
        curve_from_j(&j)?
    };
    let ok = match to_u64(p) {
        Some(pp) if pp <= BSGS_BOUND => ec_order(&e)? == p + 1u32,
        _ => trace_zero_check(&e, 1),
    };
    if !ok {
        return Err(invariant("supersingular construction produced an ordinary curve"));
    }
    Ok(e)
}
