//! The 10^2013-point curve over a 2014-digit prime, with the exponents of
//! `nu` exposed so the same pipeline runs at small scale.
use crate::arith::is_probable_prime;
use crate::elliptic::{certify_order, trace_zero_check, Certification, EllipticCurve, OrderCertificate};
use crate::ff::{roots, Field, Fp, Polynomial, PrimeField};
use crate::gluing::{count_points, sextic_quotients, Genus2Curve};
use crate::quadratic_cm::QuadraticInteger;
use num_bigint::{BigInt, BigUint};
use std::fmt;

const DISC: i64 = -31;

/// `nu = 2 (w - 1) 5^five (4w + 1)^four (w + 1)^one`, `w = (-1 + sqrt(-31))/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureParams {
    pub five: u32,
    pub four: u32,
    pub one: u32,
}

impl FixtureParams {
    pub const FULL: FixtureParams = FixtureParams { five: 322, four: 456, one: 670 };

    /// `Norm(nu) = 2^(3 + 3 one) 5^(1 + 2 five + 3 four)`.
    pub fn factors(&self) -> Vec<(BigUint, u32)> {
        vec![
            (BigUint::from(2u32), 3 + 3 * self.one),
            (BigUint::from(5u32), 1 + 2 * self.five + 3 * self.four),
        ]
    }

    pub fn nu(&self) -> QuadraticInteger {
        let w = QuadraticInteger::omega(DISC);
        let int = |v: i64| QuadraticInteger::from_int(&BigInt::from(v), DISC);
        let two_w_minus_1 = int(2).mul(&w.sub(&int(1)));
        let a = int(4).mul(&w).add(&int(1));
        let b = w.add(&int(1));
        two_w_minus_1.mul(&int(5).pow(self.five)).mul(&a.pow(self.four)).mul(&b.pow(self.one))
    }
}

/// Stage at which the fixture check stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureFailure {
    pub stage: &'static str,
    pub reason: String,
}

impl fmt::Display for FixtureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.reason)
    }
}

impl std::error::Error for FixtureFailure {}

fn fail<T>(stage: &'static str, reason: impl Into<String>) -> Result<T, FixtureFailure> {
    Err(FixtureFailure { stage, reason: reason.into() })
}

fn lib<T>(stage: &'static str, r: crate::Result<T>) -> Result<T, FixtureFailure> {
    r.or_else(|e| fail(stage, e.to_string()))
}

/// `nu`, `N`, `p` and the roots of `u^3 + u + 1` for one exponent choice.
#[derive(Clone, Debug)]
pub struct FixtureInstance {
    pub params: FixtureParams,
    pub nu: QuadraticInteger,
    pub n: BigUint,
    pub p: BigUint,
    pub roots: Vec<Fp>,
}

impl FixtureInstance {
    /// `(u - 1)(x^2 + 8)(x^4 + 16 x^2 + u^24)`.
    pub fn curve(&self, u: &Fp) -> crate::Result<Genus2Curve> {
        let f = u.field();
        let c = |v: i64| Fp::from_i64(f, v);
        let q1 = Polynomial::new(f, vec![c(8), c(0), c(1)]);
        let q2 = Polynomial::new(f, vec![u.pow_u(24), c(0), c(16), c(0), c(1)]);
        let g = (&q1 * &q2).scale(&(u.clone() - c(1)));
        Genus2Curve::from_poly(g)
    }
}

pub fn fixture_instance(params: FixtureParams) -> Result<FixtureInstance, FixtureFailure> {
    let nu = params.nu();
    let norm = nu.norm();
    let expect: BigInt = params.factors().iter().map(|(q, k)| BigInt::from(q.pow(*k))).product();
    if norm != expect {
        return fail("nu", format!("Norm(nu) = {norm}, expected {expect}"));
    }
    let one = QuadraticInteger::from_int(&BigInt::from(1), DISC);
    let p = one.sub(&nu).norm();
    let p = match p.to_biguint() {
        Some(p) if p > BigUint::from(3u32) && is_probable_prime(&p) => p,
        _ => return fail("prime", format!("Norm(1 - nu) = {p} is not a prime > 3")),
    };
    let field = lib("prime", PrimeField::new(p.clone()))?;
    let c = |v: i64| Fp::from_i64(&field, v);
    let cubic = Polynomial::new(&field, vec![c(1), c(1), c(0), c(1)]);
    let mut rs = roots(&cubic);
    rs.sort_by(|a, b| a.value().cmp(b.value()));
    if rs.len() != 3 {
        return fail("cubic-roots", format!("u^3 + u + 1 has {} roots mod p", rs.len()));
    }
    Ok(FixtureInstance { params, nu, n: norm.to_biguint().unwrap(), p, roots: rs })
}

#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub n: BigUint,
    pub p: BigUint,
    pub digits: usize,
    pub u: Fp,
    pub curve: Genus2Curve,
    pub ordinary: EllipticCurve,
    pub supersingular: EllipticCurve,
    pub certificate: OrderCertificate,
    pub seed: u64,
    /// `#C(F_p)` by enumeration when `p` is small enough.
    pub count: Option<BigUint>,
}

impl FixtureReport {
    /// `p + 1 - t1 - t2` with `t1 = p + 1 - #E_ord` and `t2 = 0`.
    pub fn point_count(&self) -> BigUint {
        self.certificate.order.clone()
    }
}

/// The full-size check: exponents `(322, 456, 670)`, smallest root `u`.
pub fn verify_fixture_10_2013() -> Result<FixtureReport, FixtureFailure> {
    verify_fixture_with(FixtureParams::FULL, 0, 1)
}

/// Runs the check with the root of index `root` (in increasing order).
pub fn verify_fixture_with(params: FixtureParams, root: usize, seed: u64) -> Result<FixtureReport, FixtureFailure> {
    let inst = fixture_instance(params)?;
    let u = match inst.roots.get(root) {
        Some(u) => u.clone(),
        None => return fail("cubic-roots", format!("no root with index {root}")),
    };
    let curve = lib("curve", inst.curve(&u))?;
    let (even, odd) = lib("quotients", sextic_quotients(&curve))?;
    let (ordinary, supersingular) = match (trace_zero_check(&even, seed), trace_zero_check(&odd, seed)) {
        (true, false) => (odd, even),
        (false, true) => (even, odd),
        (a, b) => return fail("trace-zero", format!("trace-zero checks on (even, odd) quotients: ({a}, {b})")),
    };
    let certificate = match lib("certify", certify_order(&ordinary, &inst.n, &params.factors(), seed))? {
        Certification::Certified(c) => c,
        Certification::Inconclusive => return fail("certify", "sampling did not reach the bound"),
        Certification::Disproved(_) => return fail("certify", format!("a point of the ordinary quotient is not killed by {}", inst.n)),
    };
    let count = if inst.p <= BigUint::from(1u64 << 26) { Some(lib("count", count_points(&curve))?) } else { None };
    if let Some(k) = &count {
        if *k != inst.n {
            return fail("count", format!("#C(F_p) = {k}, expected {}", inst.n));
        }
    }
    Ok(FixtureReport {
        digits: inst.p.to_string().len(),
        n: inst.n,
        p: inst.p,
        u,
        curve,
        ordinary,
        supersingular,
        certificate,
        seed,
        count,
    })
}
