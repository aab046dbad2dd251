use super::{fundamental_discriminants, Discriminant, QuadraticInteger};
use crate::arith::{check_factorization, crt, is_probable_prime};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// All square roots of `d` modulo `q^e`.
fn sqrt_mod_prime_power(d: &BigInt, q: &BigUint, e: u32) -> Vec<BigInt> {
    let qi = BigInt::from(q.clone());
    let dq = d.mod_floor(&qi);
    let mut roots: Vec<BigInt> = if dq.is_zero() {
        vec![BigInt::zero()]
    } else if *q == BigUint::from(2u32) {
        vec![BigInt::one()]
    } else {
        match crate::ff::sqrt_mod(&dq.to_biguint().unwrap(), q) {
            Some(r) => {
                let r = BigInt::from(r);
                let s = &qi - &r;
                if r == s {
                    vec![r]
                } else {
                    vec![r, s]
                }
            }
            None => vec![],
        }
    };
    let mut modulus = qi.clone();
    for _ in 1..e {
        let next_mod = &modulus * &qi;
        let mut next = BTreeSet::new();
        for r in &roots {
            let two_r: BigInt = (r * BigInt::from(2)).mod_floor(&qi);
            if !two_r.is_zero() {
                // Hensel: unique lift.
                let fr = (r * r - d).mod_floor(&next_mod) / &modulus;
                let inv = crate::arith::inv_mod(&two_r, &qi).unwrap();
                let t = (-(fr * inv)).mod_floor(&qi);
                next.insert((r + t * &modulus).mod_floor(&next_mod));
            } else {
                let qs = q.to_u64().expect("ramified prime is small");
                for t in 0..qs {
                    let c = r + BigInt::from(t) * &modulus;
                    if (&c * &c - d).mod_floor(&next_mod).is_zero() {
                        next.insert(c);
                    }
                }
            }
        }
        roots = next.into_iter().collect();
        modulus = next_mod;
    }
    roots
}

/// All `b in [0, 2m)` with `b^2 = d (mod 4m)`.
fn sqrt_disc_mod_4m(d: i64, m_factors: &[(BigUint, u32)]) -> Vec<BigInt> {
    let d = BigInt::from(d);
    let mut comps: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    let mut two_exp = 2u32;
    for (q, e) in m_factors {
        if *q == BigUint::from(2u32) {
            two_exp += e;
        } else {
            let r = sqrt_mod_prime_power(&d, q, *e);
            comps.push((r, BigInt::from(q.pow(*e))));
        }
    }
    comps.push((sqrt_mod_prime_power(&d, &BigUint::from(2u32), two_exp), BigInt::one() << two_exp));
    let mut acc: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::one())];
    for (rs, m) in comps {
        let mut next = Vec::new();
        for (x, mx) in &acc {
            for r in &rs {
                next.push(crt(&[(x.clone(), mx.clone()), (r.clone(), m.clone())]));
            }
        }
        acc = next;
    }
    let four_m: BigInt = acc.first().map(|(_, m)| m.clone()).unwrap_or_else(BigInt::one);
    let two_m = four_m / 2;
    let set: BTreeSet<BigInt> = acc.into_iter().map(|(x, _)| x.mod_floor(&two_m)).collect();
    set.into_iter().collect()
}

/// Lagrange-Gauss reduction of the lattice spanned by `u, v` (as `(x, y)` pairs
/// meaning `(x + y sqrt(d))/2`) under the norm form; returns a shortest vector.
fn shortest_vector(u: (BigInt, BigInt), v: (BigInt, BigInt), d: i64) -> (BigInt, BigInt) {
    let ad = BigInt::from(d.unsigned_abs());
    let dot = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| &a.0 * &b.0 + &ad * &a.1 * &b.1;
    let (mut a, mut b) = (u, v);
    loop {
        if dot(&a, &a) > dot(&b, &b) {
            std::mem::swap(&mut a, &mut b);
        }
        let num = dot(&a, &b);
        let den = dot(&a, &a);
        let two = BigInt::from(2);
        let mu: BigInt = (&num * &two + &den).div_floor(&(&den * &two));
        if mu.is_zero() {
            return a;
        }
        b = (&b.0 - &mu * &a.0, &b.1 - &mu * &a.1);
    }
}

fn divisor_exponents(factors: &[(BigUint, u32)]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for (_, e) in factors {
        let mut next = Vec::new();
        for v in &out {
            for k in 0..=e / 2 {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// All elements of norm `n` in the maximal order of fundamental discriminant
/// `d`, one per orbit under negation and conjugation, each normalized to
/// `x, y >= 0` and sorted by `(x, y)`. `factors` is the factorization of `n`.
pub fn norm_solutions(
    d: i64,
    n: &BigUint,
    factors: &[(BigUint, u32)],
) -> Result<Vec<QuadraticInteger>> {
    let disc = Discriminant::new(d)?;
    if !disc.is_fundamental() {
        return Err(Error::InvariantViolation(format!("{d} is not fundamental")));
    }
    if n.is_zero() {
        return Err(Error::InvariantViolation("norm must be positive".into()));
    }
    check_factorization(n, factors)?;
    let mut found: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for gexp in divisor_exponents(factors) {
        let mut g = BigUint::one();
        let mut m_factors = Vec::new();
        for ((q, e), k) in factors.iter().zip(&gexp) {
            g *= q.pow(*k);
            if e - 2 * k > 0 {
                m_factors.push((q.clone(), e - 2 * k));
            }
        }
        let m: BigUint = m_factors.iter().map(|(q, e)| q.pow(*e)).product();
        let mi = BigInt::from(m.clone());
        for b in sqrt_disc_mod_4m(d, &m_factors) {
            let (x, y) = shortest_vector((2 * &mi, BigInt::zero()), (-b, BigInt::one()), d);
            let alpha = QuadraticInteger { x, y, disc: d };
            if alpha.norm() != mi {
                continue;
            }
            let gq = QuadraticInteger::from_int(&BigInt::from(g.clone()), d);
            for u in QuadraticInteger::units(d) {
                let nu = alpha.mul(&u).mul(&gq);
                found.insert((nu.x.abs(), nu.y.abs()));
            }
        }
    }
    Ok(found.into_iter().map(|(x, y)| QuadraticInteger { x, y, disc: d }).collect())
}

/// Result of the discriminant search: `nu` has norm `N` and `p = Norm(1 - nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsHit {
    pub disc: i64,
    pub nu: QuadraticInteger,
    pub p: BigUint,
}

impl BsHit {
    /// Trace of Frobenius `t = Tr(1 - nu)` of the CM curves of order `N`.
    pub fn trace(&self) -> BigInt {
        BigInt::from(2) - &self.nu.x
    }
}

/// Walks fundamental discriminants `-4, -7, -8, ...` (the order of
/// discriminant `-3` is skipped) by increasing `|D|` up to `budget` and
/// returns the first `(D, nu, p)` with `Norm(nu) = n`, `p = Norm(1 - nu)`
/// prime, `p > 3`, `p != n - 1` and `p = n - 1 (mod ell)`. Within one
/// discriminant, candidates are tried in order of increasing `p`, then by
/// `(|y|, |x|)`.
pub fn bs_search(
    n: &BigUint,
    ell: u32,
    budget: u64,
    factors: &[(BigUint, u32)],
) -> Result<Option<BsHit>> {
    check_factorization(n, factors)?;
    let ni = BigInt::from(n.clone());
    let target: BigInt = (&ni - 1u32).mod_floor(&BigInt::from(ell));
    for d in fundamental_discriminants(budget).filter(|&d| d != -3) {
        let sols = norm_solutions(d, n, factors)?;
        let mut cands: Vec<(BigInt, QuadraticInteger)> = Vec::new();
        for s in sols {
            for sign in [1i32, -1] {
                if sign == -1 && s.x.is_zero() {
                    continue;
                }
                let nu = if sign == 1 { s.clone() } else { s.neg() };
                let p = &ni + 1 - &nu.x;
                cands.push((p, nu));
            }
        }
        cands.sort_by(|(p1, a), (p2, b)| {
            (p1, a.y.abs(), a.x.abs()).cmp(&(p2, b.y.abs(), b.x.abs()))
        });
        for (p, nu) in cands {
            if p <= BigInt::from(3) || p == &ni - 1 {
                continue;
            }
            if (&p).mod_floor(&BigInt::from(ell)) != target {
                continue;
            }
            let pu = p.to_biguint().unwrap();
            if !is_probable_prime(&pu) {
                continue;
            }
            return Ok(Some(BsHit { disc: d, nu, p: pu }));
        }
    }
    Ok(None)
}
