//! Integer number theory on arbitrary-size integers: primality, factoring,
//! Jacobi symbols, CRT, and a few `u64` fast paths used by point counting.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Miller-Rabin rounds performed after the BPSW pair.
pub const MR_ROUNDS: usize = 64;
const PRIMALITY_SEED: u64 = 0x6732_5f70_7269_6d65;

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ubig(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Non-negative residue of `a` modulo `m`.
pub fn modp(a: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from(m.clone());
    a.mod_floor(&mi).to_biguint().expect("mod_floor is non-negative")
}

pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn is_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

pub fn isqrt_i(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Primes below `n` by the sieve of Eratosthenes.
pub fn primes_below(n: usize) -> Vec<u64> {
    if n < 3 {
        return vec![];
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_below(10_000))
}

/// Jacobi symbol (a | n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    assert!(n.is_odd(), "jacobi symbol needs an odd modulus");
    let mut a = modp(a, n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let r = (&n % 8u32).to_u32().unwrap();
            if tz % 2 == 1 && (r == 3 || r == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

pub fn jacobi_i64(a: i64, n: u64) -> i32 {
    jacobi(&BigInt::from(a), &BigUint::from(n))
}

fn miller_rabin(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    let h: BigInt = x >> 1;
    h.mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    if is_square(n) {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d.unsigned_abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let ni = BigInt::from(n.clone());
    let dd = BigInt::from(d);
    let p = BigInt::one();
    let q = BigInt::from((1 - d) / 4);
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for i in (0..k.bits()).rev() {
        u = (&u * &v).mod_floor(&ni);
        v = (&v * &v - &qk - &qk).mod_floor(&ni);
        qk = (&qk * &qk).mod_floor(&ni);
        if k.bit(i) {
            let nu = half_mod(&p * &u + &v, &ni);
            let nv = half_mod(&dd * &u + &p * &v, &ni);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&ni);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(&ni);
        qk = (&qk * &qk).mod_floor(&ni);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Baillie-PSW followed by [`MR_ROUNDS`] Miller-Rabin rounds with bases drawn
/// from a fixed-seed generator. Composites are never reported prime in
/// practice; primes are always reported prime.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &q in small_primes().iter().take(200) {
        let qb = BigUint::from(q);
        if *n == qb {
            return true;
        }
        if (n % &qb).is_zero() {
            return false;
        }
    }
    if !miller_rabin(n, &BigUint::from(2u32)) {
        return false;
    }
    if !strong_lucas(n) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PRIMALITY_SEED);
    let lo = BigUint::from(2u32);
    let hi = n - 1u32;
    for _ in 0..MR_ROUNDS {
        let a = rng.gen_biguint_range(&lo, &hi);
        if !miller_rabin(n, &a) {
            return false;
        }
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigUint::from(n))
}

/// True when `n` is a power of a prime; returns the prime and exponent.
pub fn prime_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n < BigUint::from(2u32) {
        return None;
    }
    let f = factor(n, 1 << 20).ok()?;
    if f.len() == 1 {
        Some(f[0].clone())
    } else {
        None
    }
}

fn pollard_brent(n: &BigUint, seed: u64, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_below(n);
        let mut y = rng.gen_biguint_below(n);
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                if *budget < m {
                    return None;
                }
                *budget -= m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
}

/// Prime factorization by trial division and Pollard rho. `budget` bounds the
/// number of rho iterations; exceeding it yields `FactorBudgetExceeded`.
pub fn factor(n: &BigUint, budget: u64) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::BadFactorization("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &q in small_primes() {
        let qb = BigUint::from(q);
        if &qb * &qb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &qb).is_zero() {
            rest /= &qb;
            e += 1;
        }
        if e > 0 {
            out.push((qb, e));
        }
    }
    let mut budget = budget;
    let mut stack = vec![rest];
    let mut seed = 1u64;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some(entry) => entry.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m, seed, &mut budget)
            .ok_or_else(|| Error::FactorBudgetExceeded(format!("could not split {m}")))?;
        seed += 1;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Ok(out)
}

/// Parses `p1^e1,p2^e2,...` and checks that the primes are probable primes and
/// the product equals `n`.
pub fn parse_factors(text: &str, n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (b, e) = match part.split_once('^') {
            Some((b, e)) => (b, e),
            None => (part, "1"),
        };
        let b: BigUint = b
            .trim()
            .parse()
            .map_err(|_| Error::BadFactorization(format!("bad prime {b:?}")))?;
        let e: u32 = e
            .trim()
            .parse()
            .map_err(|_| Error::BadFactorization(format!("bad exponent {e:?}")))?;
        out.push((b, e));
    }
    check_factorization(n, &out)?;
    out.sort();
    Ok(out)
}

pub fn check_factorization(n: &BigUint, factors: &[(BigUint, u32)]) -> Result<()> {
    let mut prod = BigUint::one();
    for (q, e) in factors {
        if !is_probable_prime(q) {
            return Err(Error::BadFactorization(format!("{q} is not prime")));
        }
        prod *= q.pow(*e);
    }
    if prod != *n {
        return Err(Error::BadFactorization(format!("product {prod} differs from {n}")));
    }
    Ok(())
}

/// Combines residues `r_i mod m_i` with pairwise coprime moduli.
pub fn crt(residues: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues {
        let e = m.extended_gcd(mi);
        debug_assert!(e.gcd.is_one());
        let t = ((r - &x) * e.x).mod_floor(mi);
        x += &m * t;
        m *= mi;
        x = x.mod_floor(&m);
    }
    (x, m)
}

/// Modular inverse of `a` modulo `m` if it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Floor division for signed integers.
pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u64(r, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    r
}

/// Table of quadratic characters modulo an odd prime `p`: entry `x` is
/// `1`, `-1` or `0`.
pub fn chi_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[mulmod_u64(x, x, p) as usize] = 1;
    }
    t
}

pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

pub fn bigint_of(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// Ceiling of the square root.
pub fn isqrt_ceil(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

pub fn abs_u(n: &BigInt) -> BigUint {
    n.abs().to_biguint().unwrap()
}
