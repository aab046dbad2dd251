//! The certificate format and its offline verifier.
use crate::arith::is_probable_prime;
use crate::elliptic::{
    curve_from_j, ec_order, is_isomorphic, naive_order, quotients_by_j, trace_zero_check, verify_order_certificate, EllipticCurve,
    OrderCertificate, BSGS_BOUND,
};
use crate::ff::{Field, Fp, Polynomial, PrimeField};
use num_integer::Integer;
use crate::gluing::{count_points, Genus2Curve};
use crate::quadratic_cm::{class_polynomial, is_fundamental, QuadraticInteger};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

pub const CERTIFICATE_VERSION: u32 = 1;
/// Largest naive-count bound a certificate may claim.
pub const NAIVE_COUNT_CAP: u64 = 1 << 22;

/// Non-negative integer stored as a canonical decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dec(pub BigUint);

/// Signed integer stored as a canonical decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SDec(pub BigInt);

fn canonical_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if !canonical_digits(&s) {
            return Err(serde::de::Error::custom(format!("not a canonical decimal: {s:?}")));
        }
        Ok(Dec(s.parse().unwrap()))
    }
}

impl Serialize for SDec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for SDec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let digits = s.strip_prefix('-').unwrap_or(&s);
        if !canonical_digits(digits) || s == "-0" {
            return Err(serde::de::Error::custom(format!("not a canonical decimal: {s:?}")));
        }
        Ok(SDec(s.parse().unwrap()))
    }
}

impl From<BigUint> for Dec {
    fn from(v: BigUint) -> Self {
        Dec(v)
    }
}

impl From<&Fp> for Dec {
    fn from(v: &Fp) -> Self {
        Dec(v.value().clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlueMethod {
    #[serde(rename = "2-torsion")]
    TwoTorsion,
    #[serde(rename = "3-torsion")]
    ThreeTorsion,
    #[serde(rename = "3-torsion-after-2-isogeny")]
    ThreeTorsionAfter2Isogeny,
}

impl GlueMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            GlueMethod::TwoTorsion => "2-torsion",
            GlueMethod::ThreeTorsion => "3-torsion",
            GlueMethod::ThreeTorsionAfter2Isogeny => "3-torsion-after-2-isogeny",
        }
    }
}

/// `t y^2 = f`, coefficients lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub t: Dec,
    pub f_coeffs: Vec<Dec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassRecord {
    #[serde(rename = "A")]
    pub a: Dec,
    #[serde(rename = "B")]
    pub b: Dec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Exhaustive count.
    Count,
    /// Baby-step giant-step order computation.
    Bsgs,
    /// Point-order certificate; `witnesses` are `(x, y, order)`.
    Certificate { factors: Vec<(Dec, u32)>, witnesses: Vec<[Dec; 3]>, lcm: Dec },
    /// Seeded check of `pi^2 + p = 0`; the order is then `p + 1`.
    TraceZero { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticRecord {
    #[serde(rename = "A")]
    pub a: Dec,
    #[serde(rename = "B")]
    pub b: Dec,
    pub order: Dec,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub disc: i64,
    /// `nu = (x + y sqrt(disc)) / 2` as `[x, y]`.
    pub nu: [SDec; 2],
    pub ell: u32,
    /// j-invariants of the descent, starting at the CM curve.
    pub descent: Vec<Dec>,
    /// The trace-zero curve before any 2-isogeny step.
    pub e2_initial: WeierstrassRecord,
    /// Number of curves returned by the gluing step.
    pub glue_candidates: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationMethod {
    NaiveCount,
    Bsgs,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub method: VerificationMethod,
    pub naive_count_bound: u64,
    pub bsgs_bound: u64,
    /// `#C(F_p)` when counted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<Dec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCertificate {
    pub version: u32,
    #[serde(rename = "N")]
    pub n: Dec,
    pub p: Dec,
    pub curve: CurveRecord,
    pub e1: EllipticRecord,
    pub e2: EllipticRecord,
    pub glue_method: GlueMethod,
    pub construction_log: ConstructionLog,
    pub verification: Verification,
}

/// Rung of the verification ladder for `p`.
pub fn ladder(p: &BigUint, naive_count_bound: u64, bsgs_bound: u64) -> VerificationMethod {
    if *p <= BigUint::from(naive_count_bound) {
        VerificationMethod::NaiveCount
    } else if *p <= BigUint::from(bsgs_bound) {
        VerificationMethod::Bsgs
    } else {
        VerificationMethod::Certificate
    }
}

impl CurveCertificate {
    /// Compact JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string(&v).expect("value serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::MalformedModel(format!("certificate: {e}")))
    }

    pub fn curve(&self) -> crate::Result<Genus2Curve> {
        let f = PrimeField::new(self.p.0.clone())?;
        record_curve(&f, &self.curve)
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub stage: &'static str,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.reason)
    }
}

impl std::error::Error for Rejection {}

fn reject<T>(stage: &'static str, reason: impl Into<String>) -> Result<T, Rejection> {
    Err(Rejection { stage, reason: reason.into() })
}

fn ensure(cond: bool, stage: &'static str, reason: &str) -> Result<(), Rejection> {
    if cond {
        Ok(())
    } else {
        reject(stage, reason)
    }
}

fn element(f: &Arc<PrimeField>, v: &Dec, stage: &'static str) -> Result<Fp, Rejection> {
    if v.0 >= *f.p() {
        return reject(stage, format!("{} is not reduced mod p", v.0));
    }
    Ok(Fp::new(f, v.0.clone()))
}

fn record_curve(f: &Arc<PrimeField>, r: &CurveRecord) -> crate::Result<Genus2Curve> {
    let t = Fp::new(f, &r.t.0 % f.p());
    let cs = r.f_coeffs.iter().map(|c| Fp::new(f, &c.0 % f.p())).collect();
    Genus2Curve::new(t, Polynomial::new(f, cs))
}

fn weierstrass(f: &Arc<PrimeField>, a: &Dec, b: &Dec, stage: &'static str) -> Result<EllipticCurve, Rejection> {
    let (a, b) = (element(f, a, stage)?, element(f, b, stage)?);
    EllipticCurve::new(a, b).or_else(|e| reject(stage, e.to_string()))
}

fn same_curve(e: &EllipticCurve, o: &EllipticCurve) -> bool {
    e.a() == o.a() && e.b() == o.b()
}

fn check_evidence(
    e: &EllipticCurve,
    rec: &EllipticRecord,
    method: VerificationMethod,
    stage: &'static str,
) -> Result<(), Rejection> {
    let order = &rec.order.0;
    match (&rec.evidence, method) {
        (Evidence::Count, VerificationMethod::NaiveCount) => {
            ensure(BigUint::from(naive_order(e)) == *order, stage, "count differs from claimed order")
        }
        (Evidence::Bsgs, VerificationMethod::Bsgs) => match ec_order(e) {
            Ok(n) => ensure(n == *order, stage, "BSGS order differs from claimed order"),
            Err(err) => reject(stage, err.to_string()),
        },
        (Evidence::Certificate { factors, witnesses, lcm }, VerificationMethod::Certificate) => {
            let cert = OrderCertificate {
                order: order.clone(),
                factors: factors.iter().map(|(q, k)| (q.0.clone(), *k)).collect(),
                witnesses: witnesses.iter().map(|[x, y, o]| (x.0.clone(), y.0.clone(), o.0.clone())).collect(),
                lcm: lcm.0.clone(),
            };
            verify_order_certificate(e, &cert).or_else(|err| reject(stage, err.to_string()))
        }
        (Evidence::TraceZero { seed }, VerificationMethod::Certificate) => {
            ensure(*order == e.p() + 1u32, stage, "trace-zero evidence needs order p + 1")?;
            ensure(trace_zero_check(e, *seed), stage, "pi^2 + p does not vanish")
        }
        _ => reject(stage, "evidence kind does not match the verification method"),
    }
}

/// One curve per twist class with invariant `j`.
fn twists_with_j(j: &Fp) -> crate::Result<Vec<EllipticCurve>> {
    let f = j.field();
    let k = if j.is_zero() {
        6u32
    } else if *j.value() == BigUint::from(1728u32) % f.p() {
        4
    } else {
        return Ok(vec![curve_from_j(j)?]);
    };
    let classes = (f.p() - 1u32).gcd(&BigUint::from(k));
    let mut out: Vec<EllipticCurve> = Vec::new();
    let mut c = 1i64;
    while BigUint::from(out.len()) < classes {
        let cf = Fp::from_i64(f, c);
        let e = if k == 6 { EllipticCurve::new(Fp::zero(f), cf)? } else { EllipticCurve::new(cf, Fp::zero(f))? };
        if !out.iter().any(|o| is_isomorphic(o, &e)) {
            out.push(e);
        }
        c += 1;
    }
    Ok(out)
}

/// Re-derives everything checkable from the certificate alone.
pub fn verify_certificate(c: &CurveCertificate) -> Result<(), Rejection> {
    ensure(c.version == CERTIFICATE_VERSION, "version", "unsupported version")?;
    let n = &c.n.0;
    let p = &c.p.0;
    ensure(*n >= BigUint::from(2u32), "input", "N < 2")?;
    ensure((n % 6u32) != BigUint::one(), "input", "N = 1 (mod 6)")?;
    ensure(*p > BigUint::from(3u32) && is_probable_prime(p), "prime", "p is not a prime > 3")?;
    let f = PrimeField::new(p.clone()).or_else(|e| reject("prime", e.to_string()))?;

    // ladder
    let v = &c.verification;
    ensure(v.naive_count_bound <= NAIVE_COUNT_CAP, "ladder", "naive-count bound above cap")?;
    ensure(v.bsgs_bound <= BSGS_BOUND, "ladder", "BSGS bound above cap")?;
    let method = ladder(p, v.naive_count_bound, v.bsgs_bound);
    ensure(v.method == method, "ladder", "verification method is not the ladder rung for p")?;

    // construction log
    let log = &c.construction_log;
    let ell = if (n % 2u32).is_zero() { 2 } else { 3 };
    ensure(log.ell == ell, "log", "ell does not match the parity of N")?;
    let nm1 = BigInt::from(n.clone()) - 1;
    ensure(
        (BigInt::from(p.clone()) - &nm1) % BigInt::from(ell) == BigInt::zero(),
        "log",
        "p is not N - 1 mod ell",
    )?;
    ensure(is_fundamental(log.disc), "log", "disc is not a fundamental discriminant")?;
    let nu = QuadraticInteger::new(log.nu[0].0.clone(), log.nu[1].0.clone(), log.disc)
        .or_else(|e| reject("log", e.to_string()))?;
    ensure(nu.norm() == BigInt::from(n.clone()), "log", "Norm(nu) != N")?;
    let one_minus = QuadraticInteger::from_int(&BigInt::one(), log.disc).sub(&nu);
    ensure(one_minus.norm() == BigInt::from(p.clone()), "log", "Norm(1 - nu) != p")?;
    ensure(!log.descent.is_empty(), "log", "empty descent")?;
    for j in &log.descent {
        element(&f, j, "log")?;
    }
    let glue_ell = match c.glue_method {
        GlueMethod::TwoTorsion => 2,
        _ => 3,
    };
    ensure(glue_ell == ell, "log", "gluing method does not match ell")?;

    // curves
    let e1 = weierstrass(&f, &c.e1.a, &c.e1.b, "e1")?;
    let e2 = weierstrass(&f, &c.e2.a, &c.e2.b, "e2")?;
    let e2_init = weierstrass(&f, &log.e2_initial.a, &log.e2_initial.b, "log")?;
    ensure(Dec::from(&e1.j_invariant()) == *log.descent.last().unwrap(), "log", "descent does not end at j(E1)")?;
    let h = class_polynomial(log.disc, None).or_else(|e| reject("log", e.to_string()))?;
    let j0 = element(&f, &log.descent[0], "log")?;
    ensure(Polynomial::from_bigints(&f, &h).eval(&j0).is_zero(), "log", "descent does not start at a CM j-invariant")?;
    for w in log.descent.windows(2) {
        let j = element(&f, &w[0], "log")?;
        let mut adjacent = false;
        for from in twists_with_j(&j).or_else(|e| reject("log", e.to_string()))? {
            let next = quotients_by_j(&from, ell).or_else(|e| reject("log", e.to_string()))?;
            adjacent |= next.iter().any(|q| Dec::from(&q.j_invariant()) == w[1]);
        }
        ensure(adjacent, "log", "descent step is not an ell-isogeny")?;
    }
    element(&f, &c.curve.t, "curve")?;
    for x in &c.curve.f_coeffs {
        element(&f, x, "curve")?;
    }
    let curve = record_curve(&f, &c.curve).or_else(|e| reject("curve", e.to_string()))?;

    // orders and traces
    ensure(c.e1.order.0 == *n, "e1", "E1 order differs from N")?;
    ensure(c.e2.order.0 == p + 1u32, "e2", "E2 order is not p + 1")?;
    check_evidence(&e1, &c.e1, method, "e1")?;
    check_evidence(&e2, &c.e2, method, "e2")?;
    let (o1, o2) = (&c.e1.order.0, &c.e2.order.0);
    ensure(o1 + o2 == n + p + 1u32, "trace", "N != p + 1 - t1 - t2")?;

    // where E2 came from, and the gluing itself
    let gl = super::glue_partner(ell, &e1, &e2_init).or_else(|e| reject("glue", e.to_string()))?;
    ensure(gl.method == c.glue_method, "lineage", "gluing method differs from the recomputed one")?;
    ensure(same_curve(&gl.e2, &e2), "lineage", "E2 is not the partner chosen from the initial curve")?;
    ensure(gl.curves.len() == log.glue_candidates, "glue", "number of gluing candidates differs")?;
    ensure(gl.curves.first() == Some(&curve), "glue", "curve is not the canonical gluing output")?;

    // direct count
    match (method, &v.count) {
        (VerificationMethod::NaiveCount, Some(k)) => {
            ensure(k.0 == *n, "count", "recorded count differs from N")?;
            let counted = count_points(&curve).or_else(|e| reject("count", e.to_string()))?;
            ensure(counted == *n, "count", "#C(F_p) != N")
        }
        (VerificationMethod::NaiveCount, None) => reject("count", "naive count missing"),
        (_, None) => Ok(()),
        (_, Some(_)) => reject("count", "count recorded above the naive bound"),
    }?;
    Ok(())
}
