use super::curve::EllipticCurve;
use super::order::{ec_order, trace_zero_check};
use crate::arith::to_u64;
use crate::error::{invariant, Error, Result};
use crate::ff::{roots, Field, Fp, Polynomial};
use num_bigint::BigUint;

/// `y^2 = x^3 - (4A + 15r^2) x + (14Ar + 22B)` for a root `r` of the cubic.
pub fn quotient_by_2_torsion(e: &EllipticCurve, r: &Fp) -> Result<EllipticCurve> {
    if !e.rhs(r).is_zero() {
        return Err(Error::NotARoot(format!("{r} is not a root of x^3 + Ax + B")));
    }
    let f = e.field();
    let c = |v: i64| Fp::from_i64(f, v);
    let a = -(c(4) * e.a() + &(c(15) * &r.square()));
    let b = c(14) * e.a() * r + &(c(22) * e.b());
    EllipticCurve::new(a, b)
}

/// `y^2 = x^3 - (9A + 30r^2) x - (42Ar + 27B + 70r^3)` for a root `r` of the
/// 3-division polynomial.
pub fn quotient_by_3_torsion(e: &EllipticCurve, r: &Fp) -> Result<EllipticCurve> {
    if !e.division_polynomial_3().eval(r).is_zero() {
        return Err(Error::NotARoot(format!("{r} is not a root of 3x^4 + 6Ax^2 + 12Bx - A^2")));
    }
    let f = e.field();
    let c = |v: i64| Fp::from_i64(f, v);
    let r2 = r.square();
    let a = -(c(9) * e.a() + &(c(30) * &r2));
    let b = -(c(42) * e.a() * r + &(c(27) * e.b()) + &(c(70) * &r2 * r));
    EllipticCurve::new(a, b)
}

fn check_ell(ell: u32) -> Result<()> {
    if ell == 2 || ell == 3 {
        Ok(())
    } else {
        Err(invariant("ell must be 2 or 3"))
    }
}

/// Rational roots parametrizing the rational subgroups of order `ell`.
pub fn kernel_roots(e: &EllipticCurve, ell: u32) -> Result<Vec<Fp>> {
    check_ell(ell)?;
    let poly: Polynomial<Fp> = if ell == 2 { e.cubic() } else { e.division_polynomial_3() };
    Ok(roots(&poly))
}

pub fn count_rank_ell_subgroups(e: &EllipticCurve, ell: u32) -> Result<usize> {
    Ok(kernel_roots(e, ell)?.len())
}

pub fn quotient(e: &EllipticCurve, r: &Fp, ell: u32) -> Result<EllipticCurve> {
    match ell {
        2 => quotient_by_2_torsion(e, r),
        3 => quotient_by_3_torsion(e, r),
        _ => Err(invariant("ell must be 2 or 3")),
    }
}

/// All rational `ell`-isogenous quotients, ordered by `j` as an integer.
pub fn quotients_by_j(e: &EllipticCurve, ell: u32) -> Result<Vec<EllipticCurve>> {
    let mut out = kernel_roots(e, ell)?
        .iter()
        .map(|r| quotient(e, r, ell))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|x, y| x.j_invariant().value().cmp(y.j_invariant().value()));
    Ok(out)
}

/// Ordinary means the trace is nonzero (`p > 3`).
pub fn is_ordinary(e: &EllipticCurve) -> Result<bool> {
    match to_u64(e.p()) {
        Some(p) if p <= super::order::BSGS_BOUND => Ok(ec_order(e)? != BigUint::from(p + 1)),
        _ => Ok(!trace_zero_check(e, 1)),
    }
}

pub fn is_minimal(e: &EllipticCurve, ell: u32) -> Result<bool> {
    check_ell(ell)?;
    if !is_ordinary(e)? {
        return Err(Error::NotOrdinary);
    }
    Ok(count_rank_ell_subgroups(e, ell)? < ell as usize + 1)
}

/// Outcome of the volcano descent.
#[derive(Clone, Debug)]
pub struct Descent {
    pub curve: EllipticCurve,
    /// j-invariants visited, starting with the input.
    pub path: Vec<Fp>,
}

impl Descent {
    pub fn steps(&self) -> usize {
        self.path.len() - 1
    }
}

pub fn make_minimal(e: &EllipticCurve, h: &[num_bigint::BigInt], ell: u32) -> Result<EllipticCurve> {
    Ok(make_minimal_traced(e, h, ell)?.curve)
}

/// Leaves the surface through a quotient whose `j` is not a root of `H`,
/// then keeps descending without returning to the previous `j` until the
/// curve has fewer than `ell + 1` rational subgroups of order `ell`.
pub fn make_minimal_traced(e: &EllipticCurve, h: &[num_bigint::BigInt], ell: u32) -> Result<Descent> {
    let mut path = vec![e.j_invariant()];
    if is_minimal(e, ell)? {
        return Ok(Descent { curve: e.clone(), path });
    }
    let f = e.field();
    let hp = Polynomial::from_bigints(f, h);
    let order = small_order(e)?;
    let qs = quotients_by_j(e, ell)?;
    let mut cur = qs
        .iter()
        .find(|q| !hp.eval(&q.j_invariant()).is_zero())
        .cloned()
        .ok_or_else(|| invariant("every quotient lies on the surface"))?;
    let mut prev = e.j_invariant();
    path.push(cur.j_invariant());
    let limit = 2 * e.p().bits() as usize + 4;
    while count_rank_ell_subgroups(&cur, ell)? == ell as usize + 1 {
        if path.len() > limit {
            return Err(invariant("volcano descent did not terminate"));
        }
        let qs = quotients_by_j(&cur, ell)?;
        let next = qs
            .iter()
            .find(|q| q.j_invariant() != prev)
            .or_else(|| qs.first())
            .cloned()
            .ok_or_else(|| invariant("no quotient to descend to"))?;
        prev = cur.j_invariant();
        cur = next;
        path.push(cur.j_invariant());
    }
    if let (Some(a), Some(b)) = (&order, small_order(&cur)?) {
        if *a != b {
            return Err(invariant("isogenous curve has a different order"));
        }
    }
    Ok(Descent { curve: cur, path })
}

fn small_order(e: &EllipticCurve) -> Result<Option<BigUint>> {
    match to_u64(e.p()) {
        Some(p) if p <= super::order::BSGS_BOUND => ec_order(e).map(Some),
        _ => Ok(None),
    }
}
