use super::curve::{EllipticCurve, Point};
use crate::arith::{self, chi_table, isqrt, to_u64};
use crate::error::{Error, Result};
use crate::ff::{Field, Fp};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const NAIVE_COUNT_BOUND: u64 = 1 << 20;
pub const BSGS_BOUND: u64 = 1 << 50;
pub const CERTIFY_POINTS: usize = 40;
const BSGS_POINTS: usize = 40;

/// `#E(F_p)` by counting (small `p`) or baby-step giant-step on `E` and its
/// twist.
pub fn ec_order(e: &EllipticCurve) -> Result<BigUint> {
    let p = match to_u64(e.p()) {
        Some(p) if p <= BSGS_BOUND => p,
        _ => return Err(Error::ModulusTooLarge(format!("ec_order with p = {}", e.p()))),
    };
    if p <= NAIVE_COUNT_BOUND {
        return Ok(BigUint::from(naive_order(e)));
    }
    bsgs_order(e, p).map(BigUint::from)
}

/// `p + 1 + sum_x chi(x^3 + Ax + B)`.
pub fn naive_order(e: &EllipticCurve) -> u64 {
    let p = to_u64(e.p()).expect("naive count needs p < 2^64");
    let chi = chi_table(p);
    let a = to_u64(e.a().value()).unwrap();
    let b = to_u64(e.b().value()).unwrap();
    let mut sum: i64 = 0;
    for x in 0..p {
        let x2 = x * x % p;
        let v = ((x2 + a) % p * x + b) % p;
        sum += chi[v as usize] as i64;
    }
    (p as i64 + 1 + sum) as u64
}

/// A positive multiple `p + 1 - t` of the order of `P` with `|t|` in the
/// Hasse range.
fn bsgs_annihilator(e: &EllipticCurve, pt: &Point, p: u64) -> Option<u64> {
    let bound = 2 * (isqrt(&BigUint::from(p)).to_u64().unwrap() + 1);
    let s = ((2 * bound + 1) as f64).sqrt().ceil() as u64 + 1;
    let mut table: HashMap<BigUint, u64> = HashMap::new();
    let mut cur = Point::Infinity;
    let mut baby = Vec::with_capacity(s as usize + 1);
    for j in 0..=s {
        if let Point::Affine(x, _) = &cur {
            table.entry(x.value().clone()).or_insert(j);
        }
        baby.push(cur.clone());
        cur = e.add(&cur, pt);
    }
    let step = e.mul_u64(s, pt);
    let g = bound / s + 1;
    // R_i = (p + 1) P - i s P for i = -g..=g.
    let q = e.mul_u64(p + 1, pt);
    let mut r = e.add(&q, &e.mul_u64(g * s, pt));
    let neg_step = e.neg(&step);
    let p1 = p as i128 + 1;
    for i in -(g as i64)..=(g as i64) {
        let base = i as i128 * s as i128;
        match &r {
            Point::Infinity => {
                if p1 - base > 0 {
                    return Some((p1 - base) as u64);
                }
            }
            Point::Affine(x, _) => {
                if let Some(&j) = table.get(x.value()) {
                    for t in [base + j as i128, base - j as i128] {
                        let m = p1 - t;
                        if m > 0 && e.mul_u64(m as u64, pt).is_infinity() {
                            return Some(m as u64);
                        }
                    }
                }
            }
        }
        r = e.add(&r, &neg_step);
    }
    None
}

/// Exact order of `pt` given any positive multiple `m` of it.
pub fn point_order_from_multiple(e: &EllipticCurve, pt: &Point, m: &BigUint) -> Result<BigUint> {
    let fac = arith::factor(m, 1 << 24)?;
    Ok(point_order_with_factors(e, pt, m, &fac))
}

/// Order of `pt` dividing `m = prod q^e`: for each `q`, `Q = (m / q^e) P`
/// is multiplied by `q` until it vanishes.
pub fn point_order_with_factors(e: &EllipticCurve, pt: &Point, m: &BigUint, fac: &[(BigUint, u32)]) -> BigUint {
    let mut order = BigUint::one();
    for (q, k) in fac {
        let qk = q.pow(*k);
        let mut cur = e.mul(&(m / &qk), pt);
        while !cur.is_infinity() {
            cur = e.mul(q, &cur);
            order *= q;
        }
    }
    order
}

fn hasse_multiples(p: u64, l: u64) -> Vec<u64> {
    let r = isqrt(&BigUint::from(4 * p)).to_u64().unwrap();
    let lo = p + 1 - r;
    let hi = p + 1 + r;
    let first = lo.div_ceil(l) * l;
    (0..).map(|k| first + k * l).take_while(|&n| n <= hi).collect()
}

fn bsgs_order(e: &EllipticCurve, p: u64) -> Result<u64> {
    let twist = e.quadratic_twist();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6563_5f6f_7264);
    let mut le = 1u64;
    let mut lt = 1u64;
    for _ in 0..BSGS_POINTS {
        for (curve, l) in [(e, &mut le), (&twist, &mut lt)] {
            let pt = curve.random_point(&mut rng);
            let m = bsgs_annihilator(curve, &pt, p)
                .ok_or_else(|| crate::error::invariant("no annihilator in the Hasse interval"))?;
            let ord = point_order_from_multiple(curve, &pt, &BigUint::from(m))?.to_u64().unwrap();
            *l = l.lcm(&ord);
        }
        let cands: Vec<u64> = hasse_multiples(p, le)
            .into_iter()
            .filter(|n| (2 * p + 2 - n) % lt == 0)
            .collect();
        if cands.len() == 1 {
            return Ok(cands[0]);
        }
        if cands.is_empty() {
            return Err(crate::error::invariant("inconsistent point orders"));
        }
    }
    Err(Error::ModulusTooLarge(format!("BSGS ambiguous for p = {p}")))
}

/// Order proof: witness points whose certified orders have lcm `m` with
/// `m > 4 sqrt(p)` and `m | N`, so `N` is the only multiple of `m` in the
/// Hasse interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub order: BigUint,
    pub factors: Vec<(BigUint, u32)>,
    /// `(x, y, certified order)`.
    pub witnesses: Vec<(BigUint, BigUint, BigUint)>,
    pub lcm: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified(OrderCertificate),
    /// Sampling did not reach the bound; says nothing about `N`.
    Inconclusive,
    /// A sampled point with `N P != O`.
    Disproved(Point),
}

impl Certification {
    pub fn certificate(&self) -> Option<&OrderCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// `lo <= N <= hi` with `[lo, hi] = [p + 1 - floor(2 sqrt p), p + 1 + floor(2 sqrt p)]`.
pub fn in_hasse_interval(p: &BigUint, n: &BigUint) -> bool {
    let r = isqrt(&(p * 4u32));
    let c = p + 1u32;
    n + &r >= c && *n <= &c + &r
}

fn bound_ok(m: &BigUint, p: &BigUint) -> bool {
    m * m > p * 16u32
}

fn witness_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn certify_order(e: &EllipticCurve, n: &BigUint, factors: &[(BigUint, u32)], seed: u64) -> Result<Certification> {
    certify_order_with_budget(e, n, factors, seed, CERTIFY_POINTS)
}

pub fn certify_order_with_budget(
    e: &EllipticCurve,
    n: &BigUint,
    factors: &[(BigUint, u32)],
    seed: u64,
    budget: usize,
) -> Result<Certification> {
    arith::check_factorization(n, factors)?;
    if !in_hasse_interval(e.p(), n) {
        return Err(Error::OutOfInterval(format!("{n} is not in the Hasse interval of p = {}", e.p())));
    }
    let mut witnesses = Vec::new();
    let mut m = BigUint::one();
    for i in 0..budget {
        let pt = e.random_point(&mut witness_rng(seed, i));
        if !e.mul(n, &pt).is_infinity() {
            return Ok(Certification::Disproved(pt));
        }
        let ord = point_order_with_factors(e, &pt, n, factors);
        let next = m.lcm(&ord);
        if next != m {
            m = next;
            if let Point::Affine(x, y) = &pt {
                witnesses.push((x.value().clone(), y.value().clone(), ord));
            }
        }
        if bound_ok(&m, e.p()) {
            return Ok(Certification::Certified(OrderCertificate {
                order: n.clone(),
                factors: factors.to_vec(),
                witnesses,
                lcm: m,
            }));
        }
    }
    Ok(Certification::Inconclusive)
}

/// Offline check of a certificate against `e`.
pub fn verify_order_certificate(e: &EllipticCurve, cert: &OrderCertificate) -> Result<()> {
    let bad = |m: &str| Err(crate::error::invariant(m));
    arith::check_factorization(&cert.order, &cert.factors)?;
    if !in_hasse_interval(e.p(), &cert.order) {
        return bad("claimed order outside the Hasse interval");
    }
    let mut m = BigUint::one();
    for (x, y, ord) in &cert.witnesses {
        let f = e.field();
        let pt = Point::Affine(Fp::new(f, x.clone()), Fp::new(f, y.clone()));
        if x >= e.p() || y >= e.p() || !e.is_on_curve(&pt) {
            return bad("witness not on the curve");
        }
        if ord.is_zero() || !(&cert.order % ord).is_zero() {
            return bad("witness order does not divide N");
        }
        if !e.mul(ord, &pt).is_infinity() {
            return bad("witness order does not annihilate the point");
        }
        for (q, _) in &cert.factors {
            if (ord % q).is_zero() && e.mul(&(ord / q), &pt).is_infinity() {
                return bad("witness order is not exact");
            }
        }
        m = m.lcm(ord);
    }
    if m != cert.lcm {
        return bad("lcm of witness orders mismatch");
    }
    if !bound_ok(&m, e.p()) {
        return bad("certified order does not exceed 4 sqrt(p)");
    }
    Ok(())
}

/// `pi^2(P) + p P = O` on 20 seeded affine points.
pub fn trace_zero_check(e: &EllipticCurve, seed: u64) -> bool {
    let p = e.p().clone();
    (0..20).all(|i| {
        let pt = e.random_point(&mut witness_rng(seed, i));
        let frob2 = match &pt {
            Point::Affine(x, y) => {
                let fx = x.pow(&p).pow(&p);
                let fy = y.pow(&p).pow(&p);
                Point::Affine(fx, fy)
            }
            Point::Infinity => Point::Infinity,
        };
        e.add(&frob2, &e.mul(&p, &pt)).is_infinity()
    })
}
