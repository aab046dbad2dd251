//! End-to-end construction of a genus-2 curve with a prescribed number of
//! points, with a self-contained certificate.
mod cert;
mod fixture;

pub use cert::{
    ladder, verify_certificate, ConstructionLog, CurveCertificate, CurveRecord, Dec, EllipticRecord, Evidence,
    GlueMethod, Rejection, SDec, Verification, VerificationMethod, WeierstrassRecord, CERTIFICATE_VERSION,
    NAIVE_COUNT_CAP,
};
pub use fixture::{
    fixture_instance, verify_fixture_10_2013, verify_fixture_with, FixtureFailure, FixtureInstance, FixtureParams,
    FixtureReport,
};

use crate::arith::check_factorization;
use crate::config::Config;
use crate::elliptic::{
    certify_order, curve_with_order, ec_order, make_minimal_traced, naive_order, quotient_by_2_torsion, supersingular_curve_cached,
    trace_zero_check, Certification, EllipticCurve,
};
use crate::error::{Error, Result};
use crate::ff::{roots, Fp};
use crate::gluing::{count_points, count_points_ext2, glue2, glue3, Genus2Curve};
use crate::quadratic_cm::{bs_search, class_polynomial, ClassPolyCache};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

/// Largest `p^k` accepted by [`count_genus2_points`].
pub const GENUS2_COUNT_BOUND: u64 = 1 << 22;

/// `#C(F_{p^k})` by enumeration, `k` in `{1, 2}`.
pub fn count_genus2_points(c: &Genus2Curve, k: u32) -> Result<BigUint> {
    let q = c.p().pow(k);
    if q > BigUint::from(GENUS2_COUNT_BOUND) {
        return Err(Error::ModulusTooLarge(format!("counting over F_{}^{k}", c.p())));
    }
    match k {
        1 => count_points(c),
        2 => count_points_ext2(c),
        _ => Err(Error::InvariantViolation("extension degree must be 1 or 2".into())),
    }
}

/// Why a construction stopped. The reason strings are stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructFailure {
    /// `N < 2` or `N = 1 (mod 6)`.
    InputRejected(String),
    BadFactorization(String),
    NoDiscriminantInBudget,
    GluingEmpty,
    VerificationFailed(String),
    Library(Error),
}

impl ConstructFailure {
    pub fn reason(&self) -> &'static str {
        match self {
            ConstructFailure::InputRejected(_) => "input-rejected",
            ConstructFailure::BadFactorization(_) => "bad-factorization",
            ConstructFailure::NoDiscriminantInBudget => "no-discriminant-in-budget",
            ConstructFailure::GluingEmpty => "gluing-empty",
            ConstructFailure::VerificationFailed(_) => "verification-failed",
            ConstructFailure::Library(_) => "library-error",
        }
    }
}

impl fmt::Display for ConstructFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructFailure::InputRejected(m)
            | ConstructFailure::BadFactorization(m)
            | ConstructFailure::VerificationFailed(m) => write!(f, "{}: {m}", self.reason()),
            ConstructFailure::Library(e) => write!(f, "{}: {} ({e})", self.reason(), e.code()),
            _ => f.write_str(self.reason()),
        }
    }
}

impl std::error::Error for ConstructFailure {}

impl From<Error> for ConstructFailure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadFactorization(m) => ConstructFailure::BadFactorization(m),
            e => ConstructFailure::Library(e),
        }
    }
}

/// Rejects `N < 2` and `N = 1 (mod 6)`.
pub fn check_input(n: &BigUint) -> std::result::Result<(), ConstructFailure> {
    if *n < BigUint::from(2u32) {
        return Err(ConstructFailure::InputRejected(format!("N = {n} is below 2")));
    }
    if n % 6u32 == BigUint::one() {
        return Err(ConstructFailure::InputRejected(format!(
            "N = {n} is 1 mod 6; the construction needs N != 1 (mod 6)"
        )));
    }
    Ok(())
}

pub fn ell_for(n: &BigUint) -> u32 {
    if (n % 2u32).is_zero() {
        2
    } else {
        3
    }
}

fn sorted_roots(e: &EllipticCurve) -> Vec<Fp> {
    let mut rs = roots(&e.cubic());
    rs.sort_by(|a, b| a.value().cmp(b.value()));
    rs
}

/// The partner curve and gluing outputs chosen for `(E1, E2)`.
#[derive(Clone, Debug)]
pub(crate) struct Gluing {
    pub method: GlueMethod,
    pub e2: EllipticCurve,
    pub curves: Vec<Genus2Curve>,
}

/// Steps 5 and 6: pick the partner of `E1` in the isogeny class of `e2` and glue.
pub(crate) fn glue_partner(ell: u32, e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Gluing> {
    if ell == 2 {
        let rs = sorted_roots(e2);
        let partner = if rs.len() == 3 {
            let mut found = None;
            for r in &rs {
                let q = quotient_by_2_torsion(e2, r)?;
                if sorted_roots(&q).len() == 1 {
                    found = Some(q);
                    break;
                }
            }
            found.ok_or_else(|| Error::InvariantViolation("no 2-isogenous curve with one 2-torsion point".into()))?
        } else {
            e2.clone()
        };
        let curves = glue2(e1, &partner)?;
        return Ok(Gluing { method: GlueMethod::TwoTorsion, e2: partner, curves });
    }
    let curves = glue3(e1, e2)?;
    if !curves.is_empty() {
        return Ok(Gluing { method: GlueMethod::ThreeTorsion, e2: e2.clone(), curves });
    }
    let r = sorted_roots(e2)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvariantViolation("curve of even order without rational 2-torsion".into()))?;
    let partner = quotient_by_2_torsion(e2, &r)?;
    let curves = glue3(e1, &partner)?;
    Ok(Gluing { method: GlueMethod::ThreeTorsionAfter2Isogeny, e2: partner, curves })
}

fn weierstrass_record(e: &EllipticCurve) -> WeierstrassRecord {
    WeierstrassRecord { a: e.a().into(), b: e.b().into() }
}

fn curve_record(c: &Genus2Curve) -> CurveRecord {
    CurveRecord { t: c.t().into(), f_coeffs: c.coeff_values().into_iter().map(Dec).collect() }
}

fn evidence_for(
    e: &EllipticCurve,
    order: &BigUint,
    factors: Option<&[(BigUint, u32)]>,
    method: VerificationMethod,
    seed: u64,
) -> std::result::Result<Evidence, ConstructFailure> {
    let fail = |m: String| Err(ConstructFailure::VerificationFailed(m));
    match method {
        VerificationMethod::NaiveCount => {
            let k = naive_order(e);
            if BigUint::from(k) != *order {
                return fail(format!("counted {k} points, expected {order}"));
            }
            Ok(Evidence::Count)
        }
        VerificationMethod::Bsgs => {
            let k = ec_order(e)?;
            if k != *order {
                return fail(format!("BSGS order {k}, expected {order}"));
            }
            Ok(Evidence::Bsgs)
        }
        VerificationMethod::Certificate => match factors {
            Some(fac) => match certify_order(e, order, fac, seed)? {
                Certification::Certified(c) => Ok(Evidence::Certificate {
                    factors: c.factors.into_iter().map(|(q, k)| (Dec(q), k)).collect(),
                    witnesses: c.witnesses.into_iter().map(|(x, y, o)| [Dec(x), Dec(y), Dec(o)]).collect(),
                    lcm: Dec(c.lcm),
                }),
                Certification::Inconclusive => fail("order certificate inconclusive".into()),
                Certification::Disproved(_) => fail(format!("a point is not killed by {order}")),
            },
            None => {
                if *order != e.p() + 1u32 || !trace_zero_check(e, seed) {
                    return fail("trace-zero check failed".into());
                }
                Ok(Evidence::TraceZero { seed })
            }
        },
    }
}

/// Runs the whole construction for `N` with its factorization.
pub fn construct_genus2(
    n: &BigUint,
    factors: &[(BigUint, u32)],
    config: &Config,
    seed: u64,
) -> std::result::Result<CurveCertificate, ConstructFailure> {
    check_input(n)?;
    check_factorization(n, factors)?;
    let ell = ell_for(n);
    assert!(!((n - 1u32) % ell).is_zero(), "ell divides N - 1");

    let cache = config.cache_dir.as_deref().map(ClassPolyCache::open);
    let hit = bs_search(n, ell, config.discriminant_budget, factors)?.ok_or(ConstructFailure::NoDiscriminantInBudget)?;
    let p = hit.p.clone();
    log::info!("N = {n}: D = {}, p = {p}", hit.disc);
    let h = class_polynomial(hit.disc, cache.as_ref())?;
    let e_cm = curve_with_order(hit.disc, &p, n, &h)?;
    let descent = make_minimal_traced(&e_cm, &h, ell)?;
    let e1 = descent.curve.clone();
    let e2_initial = supersingular_curve_cached(&p, cache.as_ref())?;
    let gl = glue_partner(ell, &e1, &e2_initial)?;
    let Some(curve) = gl.curves.first().cloned() else {
        log::error!("ANOMALY: gluing returned nothing for N = {n}, p = {p}, method {}", gl.method.as_str());
        return Err(ConstructFailure::GluingEmpty);
    };

    let method = ladder(&p, config.naive_count_bound, config.bsgs_bound);
    let p1 = &p + 1u32;
    let ev1 = evidence_for(&e1, n, Some(factors), method, seed)?;
    let ev2 = evidence_for(&gl.e2, &p1, None, method, seed)?;
    let count = match method {
        VerificationMethod::NaiveCount => {
            let k = count_points(&curve)?;
            if k != *n {
                return Err(ConstructFailure::VerificationFailed(format!("#C(F_p) = {k}, expected {n}")));
            }
            Some(Dec(k))
        }
        _ => None,
    };

    let cert = CurveCertificate {
        version: CERTIFICATE_VERSION,
        n: Dec(n.clone()),
        p: Dec(p.clone()),
        curve: curve_record(&curve),
        e1: EllipticRecord { a: e1.a().into(), b: e1.b().into(), order: Dec(n.clone()), evidence: ev1 },
        e2: EllipticRecord { a: gl.e2.a().into(), b: gl.e2.b().into(), order: Dec(p1), evidence: ev2 },
        glue_method: gl.method,
        construction_log: ConstructionLog {
            disc: hit.disc,
            nu: [SDec(hit.nu.x.clone()), SDec(hit.nu.y.clone())],
            ell,
            descent: descent.path.iter().map(Dec::from).collect(),
            e2_initial: weierstrass_record(&e2_initial),
            glue_candidates: gl.curves.len(),
            seed,
        },
        verification: Verification {
            method,
            naive_count_bound: config.naive_count_bound,
            bsgs_bound: config.bsgs_bound,
            count,
        },
    };
    if let Err(r) = verify_certificate(&cert) {
        return Err(ConstructFailure::VerificationFailed(format!("self-check rejected the certificate: {r}")));
    }
    Ok(cert)
}
