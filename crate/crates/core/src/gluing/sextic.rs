use super::count::count_points;
use super::Genus2Curve;
use crate::elliptic::{is_isomorphic, naive_order, EllipticCurve, NAIVE_COUNT_BOUND};
use crate::error::{Error, Result};
use crate::ff::Field;
use num_bigint::BigUint;

/// The two degree-2 quotients of `t y^2 = c6 x^6 + c4 x^4 + c2 x^2 + c0`:
/// `t y^2 = c6 X^3 + c4 X^2 + c2 X + c0` via `X = x^2`, and the reversed cubic
/// via `X = 1/x^2`, `Y = y/x^3`. Returned as `(even, odd)`.
pub fn sextic_quotients(c: &Genus2Curve) -> Result<(EllipticCurve, EllipticCurve)> {
    let f = c.f();
    if c.degree() != 6 || (0..=6).any(|i| i % 2 == 1 && !f.coeff(i).is_zero()) {
        return Err(Error::MalformedModel("expected a sextic in x^2".into()));
    }
    let t = c.t();
    let g = |i: usize| f.coeff(i) * t;
    let even = EllipticCurve::from_cubic(&g(6), &g(4), &g(2), &g(0))?;
    let odd = EllipticCurve::from_cubic(&g(0), &g(2), &g(4), &g(6))?;
    Ok((even, odd))
}

/// True when the quotients of `C` are isomorphic to `e_odd`, `e_even` and,
/// for `p` small enough to count, `#C = #E_even + #E_odd - (p + 1)`.
/// Above the counting bound only the isomorphisms are checked.
pub fn membership_test_6torsion_sextic(c: &Genus2Curve, e_odd: &EllipticCurve, e_even: &EllipticCurve) -> Result<bool> {
    let (even, odd) = sextic_quotients(c)?;
    if !is_isomorphic(&even, e_even) || !is_isomorphic(&odd, e_odd) {
        return Ok(false);
    }
    if *c.p() <= BigUint::from(NAIVE_COUNT_BOUND) {
        let nc = count_points(c)?;
        let sum = BigUint::from(naive_order(e_even)) + naive_order(e_odd);
        return Ok(nc + c.p() + 1u32 == sum);
    }
    Ok(true)
}
