//! Weil polynomials of abelian surfaces:
//! `f = (T^2 + q)^2 - a T (T^2 + q) + b T^2`.
mod field_disc;

pub use field_disc::{dedekind_maximal, field_discriminant, FieldDiscriminant};

use crate::arith::{prime_power, ubig};
use crate::error::{invariant, Error, Result};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeilCoefficients {
    pub q: i128,
    pub a: i128,
    pub b: i128,
}

impl WeilCoefficients {
    pub fn new(q: i128, a: i128, b: i128) -> Self {
        WeilCoefficients { q, a, b }
    }

    /// Coefficients of `T^4, T^3, T^2, T, 1`: `(1, -a, b + 2q, -aq, q^2)`.
    pub fn expanded(&self) -> [i128; 5] {
        let WeilCoefficients { q, a, b } = *self;
        [1, -a, b + 2 * q, -a * q, q * q]
    }

    /// Low-degree-first coefficients.
    pub fn coeffs_low_first(&self) -> Vec<BigInt> {
        self.expanded().iter().rev().map(|&c| BigInt::from(c)).collect()
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.expanded().iter().fold(0, |acc, &c| acc * t + c)
    }

    pub fn is_ordinary(&self) -> bool {
        self.b.gcd(&self.q) == 1
    }
}

/// `2|a| sqrt(q) - 4q <= b <= a^2/4 <= 4q`, exactly.
pub fn wedge_valid(w: &WeilCoefficients) -> bool {
    let WeilCoefficients { q, a, b } = *w;
    if q <= 0 {
        return false;
    }
    let s = b + 4 * q;
    s >= 0 && 4 * a * a * q <= s * s && 4 * b <= a * a && a * a <= 16 * q
}

/// `(#C(F_q), #J(F_q)) = (q + 1 - a, (q + 1)^2 - a(q + 1) + b)`.
pub fn orders_from_weil(w: &WeilCoefficients) -> (i128, i128) {
    let WeilCoefficients { q, a, b } = *w;
    (q + 1 - a, (q + 1) * (q + 1) - a * (q + 1) + b)
}

/// `#J = (N1^2 + N2)/2 - q` from the point counts over `F_q` and `F_{q^2}`.
pub fn jacobian_order_from_counts(q: i128, n1: i128, n2: i128) -> i128 {
    (n1 * n1 + n2) / 2 - q
}

/// Inclusive integer intervals attached to `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseIntervals {
    pub q: i128,
    pub elliptic: (i128, i128),
    pub genus2: (i128, i128),
    pub central: (i128, i128),
}

fn isqrt(n: i128) -> i128 {
    assert!(n >= 0);
    n.sqrt()
}

impl HasseIntervals {
    pub fn new(q: i128) -> Self {
        let r1 = isqrt(4 * q);
        let c2 = q * q + 6 * q + 1;
        let r2 = isqrt(16 * (q + 1) * (q + 1) * q);
        let r3 = isqrt(q * q * q);
        let c3 = (q + 1) * (q + 1);
        HasseIntervals {
            q,
            elliptic: (q + 1 - r1, q + 1 + r1),
            genus2: (c2 - r2, c2 + r2),
            central: (c3 - r3, c3 + r3),
        }
    }

    pub fn in_central(&self, n: i128) -> bool {
        self.central.0 <= n && n <= self.central.1
    }
}

/// The five `(q, N)` not covered by the three-candidate recipe, with their
/// explicit Weil polynomials.
pub const EXCEPTIONAL: [(i128, i128, i128, i128); 5] =
    [(2, 10, -1, -2), (3, 17, -1, -3), (3, 21, -2, -3), (5, 43, -2, -5), (7, 73, -2, -7)];

/// `(a, b)` with `f(1) = N` for `N` in the central part of the genus-2 Hasse
/// interval of a prime `q`.
pub fn central_weil(q: i128, n: i128) -> Result<WeilCoefficients> {
    if q < 2 || !crate::arith::is_prime_u64(q as u64) {
        return Err(invariant("central_weil needs a prime q"));
    }
    let m = n - (q + 1) * (q + 1);
    if m * m > q * q * q {
        return Err(Error::OutOfInterval(format!("N = {n} is outside the central interval for q = {q}")));
    }
    if let Some(&(_, _, a, b)) = EXCEPTIONAL.iter().find(|e| e.0 == q && e.1 == n) {
        return Ok(WeilCoefficients::new(q, a, b));
    }
    let a0 = -Integer::div_floor(&m, &(q + 1));
    for i in 0..3 {
        let a = a0 - i;
        let w = WeilCoefficients::new(q, a, m + a * (q + 1));
        if wedge_valid(&w) && w.is_ordinary() {
            return Ok(w);
        }
    }
    Err(invariant(format!("no candidate pair for q = {q}, N = {n}")))
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Irreducibility over `Q` of the quartic: no root dividing `q^2` and no
/// monic quadratic factor `(T^2 + uT + v)(T^2 + u'T + v')`.
pub fn is_irreducible(w: &WeilCoefficients) -> bool {
    let [_, c3, c2, c1, c0] = w.expanded();
    for d in divisors(c0) {
        for r in [d, -d] {
            if w.eval(r) == 0 {
                return false;
            }
        }
    }
    // Matching T^3, T^2, T: u + u' = c3, v + v' + uu' = c2, uv' + u'v = c1.
    for d in divisors(c0) {
        for v in [d, -d] {
            let v2 = c0 / v;
            if v2 != v {
                // u (v' - v) = c1 - c3 v
                let num = c1 - c3 * v;
                let den = v2 - v;
                if num % den == 0 {
                    let u = num / den;
                    let u2 = c3 - u;
                    if v + v2 + u * u2 == c2 {
                        return false;
                    }
                }
            } else if c1 == c3 * v {
                // u + u' = c3, uu' = c2 - 2v
                let disc = c3 * c3 - 4 * (c2 - 2 * v);
                if disc >= 0 {
                    let s = isqrt(disc);
                    if s * s == disc && (c3 + s) % 2 == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub weil: WeilCoefficients,
    pub ordinary: bool,
    pub irreducible: bool,
}

fn is_prime_power_i(q: i128) -> bool {
    q >= 2 && prime_power(&ubig(q as u64)).is_some()
}

/// `(ceil(N^{1/4}) + 1)^2`.
pub fn q_search_bound(n: i128) -> i128 {
    let mut r = n.nth_root(4);
    if r.pow(4) < n {
        r += 1;
    }
    (r + 1) * (r + 1)
}

/// Realizations over one field: `b` is forced by `f(1) = N`.
fn realizations_for_q(n: i128, q: i128) -> Vec<Realization> {
    let amax = isqrt(16 * q);
    (-amax..=amax)
        .map(|a| WeilCoefficients::new(q, a, n - (q + 1) * (q + 1) + a * (q + 1)))
        .filter(wedge_valid)
        .map(|w| Realization { weil: w, ordinary: w.is_ordinary(), irreducible: is_irreducible(&w) })
        .collect()
}

/// All wedge-valid `(q, a, b)` with `f(1) = N`, sorted by `(q, a, b)`.
pub fn enumerate_realizations(n: i128, q_limit: Option<i128>) -> Vec<Realization> {
    let bound = q_limit.map_or(q_search_bound(n), |l| l.min(q_search_bound(n)));
    let qs: Vec<i128> = (2..=bound).filter(|&q| is_prime_power_i(q)).collect();
    let mut out: Vec<Realization> = qs.par_iter().flat_map_iter(|&q| realizations_for_q(n, q)).collect();
    out.sort_by_key(|r| r.weil);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub weil: WeilCoefficients,
    pub ordinary: bool,
    pub irreducible: bool,
    pub poly_discriminant: BigInt,
    /// `None` for reducible `f`.
    pub field_discriminant: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaNRecord {
    pub n: i128,
    pub realizations: Vec<RealizationRecord>,
    /// Smallest field discriminant over irreducible realizations, 0 if none.
    pub delta: BigInt,
    /// Some realization has reducible `f`.
    pub has_reducible: bool,
}

/// Discriminant of the monic quartic `f`.
pub fn poly_discriminant(w: &WeilCoefficients) -> BigInt {
    use crate::ff::{discriminant, Polynomial, Q};
    let f: Polynomial<Q> = Polynomial::from_bigints(&(), &w.coeffs_low_first());
    discriminant(&f).0.to_integer()
}

pub fn minimal_delta(n: i128, factor_budget: u64) -> Result<DeltaNRecord> {
    let reals = enumerate_realizations(n, None);
    let records = reals
        .par_iter()
        .map(|r| {
            let pd = poly_discriminant(&r.weil);
            let fd = if r.irreducible {
                Some(field_discriminant(&r.weil.coeffs_low_first(), factor_budget)?.value)
            } else {
                None
            };
            Ok(RealizationRecord {
                weil: r.weil,
                ordinary: r.ordinary,
                irreducible: r.irreducible,
                poly_discriminant: pd,
                field_discriminant: fd,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = records
        .iter()
        .filter_map(|r| r.field_discriminant.clone())
        .min_by(|x, y| x.magnitude().cmp(y.magnitude()))
        .unwrap_or_default();
    let has_reducible = records.iter().any(|r| !r.irreducible);
    Ok(DeltaNRecord { n, realizations: records, delta, has_reducible })
}

/// Whether every `N` in the central interval of `q` is `f(1)` for a
/// wedge-valid `(a, b)` with `gcd(b, q) = 1`; returns the uncovered `N`.
pub fn central_interval_gaps(q: i128) -> Vec<i128> {
    let iv = HasseIntervals::new(q);
    (iv.central.0..=iv.central.1)
        .filter(|&n| !realizations_for_q(n, q).iter().any(|r| r.ordinary))
        .collect()
}
