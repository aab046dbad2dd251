//! The family `C: t y^2 = (x^3 + 3ax + 2b)(2dx^3 + 3cx^2 + 1)` of genus-2
//! curves with degree-3 maps to `t y^2 = f_1` and `t y^2 = f_2`.
use super::Genus2Curve;
use crate::elliptic::EllipticCurve;
use crate::error::{invariant, Result};
use crate::ff::{Field, Fp, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixQuintuple<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub t: F,
}

impl<F: Field> AppendixQuintuple<F> {
    /// Requires `12ac + 16bd = 1`, `a^3 + b^2 != 0`, `c^3 + d^2 != 0`, `t != 0`.
    pub fn new(a: F, b: F, c: F, d: F, t: F) -> Result<Self> {
        let ctx = a.ctx();
        let k = |v: i64| F::from_i64(&ctx, v);
        let q = AppendixQuintuple { a, b, c, d, t };
        if k(12) * &q.a * &q.c + &(k(16) * &q.b * &q.d) != F::one(&ctx) {
            return Err(invariant("12ac + 16bd != 1"));
        }
        if q.delta1().is_zero() || q.delta2().is_zero() || q.t.is_zero() {
            return Err(invariant("degenerate quintuple"));
        }
        Ok(q)
    }

    pub fn delta1(&self) -> F {
        self.a.square() * &self.a + &self.b.square()
    }

    pub fn delta2(&self) -> F {
        self.c.square() * &self.c + &self.d.square()
    }

    /// `(l^2 a, l^3 b, l^-2 c, l^-3 d, l m^2 t)`, i.e. `x -> l x`, `y -> m y`.
    pub fn act(&self, l: &F, m: &F) -> Self {
        let l2 = l.square();
        let l3 = l2.clone() * l;
        AppendixQuintuple {
            a: l2.clone() * &self.a,
            b: l3.clone() * &self.b,
            c: self.c.div(&l2),
            d: self.d.div(&l3),
            t: l.clone() * &m.square() * &self.t,
        }
    }

    /// `1728 (a^2 c + 4abd - 4b^2c^2)^3 / (D1^2 D2)`.
    pub fn j1(&self) -> F {
        let ctx = self.a.ctx();
        let k = |v: i64| F::from_i64(&ctx, v);
        let s = self.a.square() * &self.c + &(k(4) * &self.a * &self.b * &self.d)
            - &(k(4) * &self.b.square() * &self.c.square());
        (k(1728) * &s.square() * &s).div(&(self.delta1().square() * &self.delta2()))
    }

    /// `1728 (a c^2 + 4bcd - 4a^2d^2)^3 / (D1 D2^2)`.
    pub fn j2(&self) -> F {
        let ctx = self.a.ctx();
        let k = |v: i64| F::from_i64(&ctx, v);
        let s = self.a.clone() * &self.c.square() + &(k(4) * &self.b * &self.c * &self.d)
            - &(k(4) * &self.a.square() * &self.d.square());
        (k(1728) * &s.square() * &s).div(&(self.delta1() * &self.delta2().square()))
    }
}

/// Canonical representative of `[a : b : c : d]` under
/// `l (a, b, c, d) = (l^2 a, l^3 b, l^-2 c, l^-3 d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkOrbit<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    /// Neither `ab` nor `cd` is nonzero, so no scaling was applied.
    pub degenerate: bool,
}

impl<F: Field> PkOrbit<F> {
    /// Also returns the scaling `l` used (1 when degenerate).
    pub fn canonical(a: &F, b: &F, c: &F, d: &F) -> (Self, F) {
        let ctx = a.ctx();
        let l = if !a.is_zero() && !b.is_zero() {
            Some(a.div(b))
        } else if !c.is_zero() && !d.is_zero() {
            Some(d.div(c))
        } else {
            None
        };
        match l {
            Some(l) => {
                let l2 = l.square();
                let l3 = l2.clone() * &l;
                let orbit = PkOrbit {
                    a: l2.clone() * a,
                    b: l3.clone() * b,
                    c: c.div(&l2),
                    d: d.div(&l3),
                    degenerate: false,
                };
                (orbit, l)
            }
            None => (
                PkOrbit { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), degenerate: true },
                F::one(&ctx),
            ),
        }
    }
}

/// A rational function `num / den`.
pub type Rational<F> = (Polynomial<F>, Polynomial<F>);

#[derive(Clone, Debug)]
pub struct AppendixCover<F: Field> {
    pub quintuple: AppendixQuintuple<F>,
    /// `x^3 + 3ax + 2b`.
    pub p1: Polynomial<F>,
    /// `2dx^3 + 3cx^2 + 1`.
    pub p2: Polynomial<F>,
    pub f: Polynomial<F>,
    pub f1: Polynomial<F>,
    pub f2: Polynomial<F>,
    pub u1: Rational<F>,
    pub v1: Rational<F>,
    pub u2: Rational<F>,
    pub v2: Rational<F>,
}

/// `num^3 + e2 num^2 den + e1 num den^2 + e0 den^3` for monic cubic `e`.
fn homogenized_cubic<F: Field>(e: &Polynomial<F>, num: &Polynomial<F>, den: &Polynomial<F>) -> Polynomial<F> {
    let n2 = num * num;
    let d2 = den * den;
    &(&(&(&n2 * num) + &(&(&n2 * den).scale(&e.coeff(2)))) + &(&(num * &d2).scale(&e.coeff(1))))
        + &(&(&d2 * den).scale(&e.coeff(0)))
}

impl<F: Field> AppendixCover<F> {
    /// `f v_i^2 = f_i(u_i)` after clearing denominators.
    pub fn check_maps(&self) -> bool {
        let lhs1 = &self.p2 * &(&self.v1.0 * &self.v1.0);
        let rhs1 = homogenized_cubic(&self.f1, &self.u1.0, &self.u1.1);
        let lhs2 = &self.p1 * &(&self.v2.0 * &self.v2.0);
        let rhs2 = homogenized_cubic(&self.f2, &self.u2.0, &self.u2.1);
        lhs1 == rhs1 && lhs2 == rhs2
    }

    /// `phi_1^* (dx/2y) = 3 dx/2y` and `phi_2^* (dx/2y) = 3x dx/2y`, i.e.
    /// `u_1' = 3 v_1` and `u_2' = 3x v_2`.
    pub fn check_differentials(&self) -> bool {
        let ctx = self.f.ctx().clone();
        let three = F::from_i64(&ctx, 3);
        let quot_deriv = |r: &Rational<F>| &(&r.0.derivative() * &r.1) - &(&r.0 * &r.1.derivative());
        let x = Polynomial::x(&ctx);
        // u = N/P, v = M/P^2: (N'P - NP') / P^2 = 3 M / P^2
        quot_deriv(&self.u1) == self.v1.0.scale(&three)
            && quot_deriv(&self.u2) == (&x * &self.v2.0).scale(&three)
            && self.v1.1 == &self.u1.1 * &self.u1.1
            && self.v2.1 == &self.u2.1 * &self.u2.1
    }
}

pub fn appendix_family<F: Field>(q: &AppendixQuintuple<F>) -> Result<AppendixCover<F>> {
    let q = AppendixQuintuple::new(q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone(), q.t.clone())?;
    let ctx = q.a.ctx();
    let k = |v: i64| F::from_i64(&ctx, v);
    let poly = |c: Vec<F>| Polynomial::new(&ctx, c);
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let (d1, d2) = (q.delta1(), q.delta2());
    let p1 = poly(vec![k(2) * b, k(3) * a, F::zero(&ctx), F::one(&ctx)]);
    let p2 = poly(vec![F::one(&ctx), F::zero(&ctx), k(3) * c, k(2) * d]);
    let f = &p1 * &p2;
    let f1 = poly(vec![
        k(512) * &d1.square() * &d.square() * d,
        k(12) * &(k(16) * a * &d.square() + &(k(3) * &c.square())) * &d1,
        k(12) * &(k(2) * &a.square() * d - &(b.clone() * c)),
        F::one(&ctx),
    ]);
    let f2 = poly(vec![
        k(512) * &d2.square() * &b.square() * b,
        k(12) * &(k(16) * &b.square() * c + &(k(3) * &a.square())) * &d2,
        k(12) * &(k(2) * b * &c.square() - &(a.clone() * d)),
        F::one(&ctx),
    ]);
    let u1 = (poly(vec![k(12) * &d1 * c, -(k(24) * &d1 * d)]), p1.clone());
    let v1 = (
        poly(vec![-d1.clone(), F::zero(&ctx), -(k(12) * &d1 * c), k(16) * &d1 * d]),
        &p1 * &p1,
    );
    let u2 = (
        poly(vec![F::zero(&ctx), F::zero(&ctx), -(k(24) * &d2 * b), k(12) * &d2 * a]),
        p2.clone(),
    );
    let v2 = (
        poly(vec![-(k(16) * &d2 * b), k(12) * &d2 * a, F::zero(&ctx), d2.clone()]),
        &p2 * &p2,
    );
    let cover = AppendixCover { quintuple: q, p1, p2, f, f1, f2, u1, v1, u2, v2 };
    if !cover.check_maps() {
        return Err(invariant("appendix map identity failed"));
    }
    Ok(cover)
}

impl AppendixCover<Fp> {
    /// `t y^2 = f`, normalized.
    pub fn curve(&self) -> Result<Genus2Curve> {
        Ok(Genus2Curve::new(self.quintuple.t.clone(), self.f.clone())?.normalized())
    }

    /// Short model of `t y^2 = f_i`: `Y^2 = X^3 + e2 t X^2 + e1 t^2 X + e0 t^3`.
    pub fn elliptic(&self, i: usize) -> Result<EllipticCurve> {
        let fi = if i == 1 { &self.f1 } else { &self.f2 };
        let t = &self.quintuple.t;
        let one = Fp::one(t.field());
        EllipticCurve::from_cubic(&one, &(fi.coeff(2) * t), &(fi.coeff(1) * &t.square()), &(fi.coeff(0) * &t.square() * t))
    }
}
