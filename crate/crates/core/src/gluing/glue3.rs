use super::appendix::{appendix_family, AppendixQuintuple, PkOrbit};
use super::{dedupe_curves, Genus2Curve};
use crate::elliptic::{is_isomorphic, is_kth_power, EllipticCurve};
use crate::error::{invariant, Result};
use crate::ff::{roots, sylvester_resultant, Field, FiniteField, Fp, Polynomial, PrimeField};
use num_bigint::BigUint;
use std::sync::Arc;

/// Below this size `a` is found by enumerating `F_p` rather than through the
/// resultant (which needs more evaluation points than `F_p` has).
const ENUMERATE_BELOW: u64 = 1 << 12;
/// Degree bound of the resultant in `a`: `6 * 10 + 6 * 8`.
const RESULTANT_DEGREE: usize = 108;

/// How Step 3 finds the `a`-coordinates on the chart `a = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// Resultant for `p >= 4096`, enumeration below.
    Auto,
    /// Resultant in `c`, interpolated at 109 points (needs `p > 109`).
    Resultant,
    /// Every `a` in `F_p^*`.
    Enumerate,
}

#[derive(Clone, Debug)]
pub struct Glue3Output {
    pub quintuple: AppendixQuintuple<Fp>,
    pub curve: Genus2Curve,
}

fn k(f: &Arc<PrimeField>, v: i64) -> Fp {
    Fp::from_i64(f, v)
}

/// `g1` and `g2` with `b = a`, `d = (1 - 12ac) / 16a`, scaled by `256 a^2`
/// and `(256 a^2)^2`, as polynomials in `c`.
fn g_polys(a: &Fp, j1: &Fp, j2: &Fp) -> (Polynomial<Fp>, Polynomial<Fp>) {
    let f = a.field();
    let p = |c: Vec<Fp>| Polynomial::new(f, c);
    let a2 = a.square();
    let e = p(vec![Fp::one(f), -(k(f, 12) * a)]); // 1 - 12ac
    let t1 = &(&p(vec![Fp::zero(f), a2.clone(), -(k(f, 4) * &a2)]) + &e.scale(&a.div(&k(f, 4))));
    let t2 = &(&p(vec![Fp::zero(f), Fp::zero(f), a.clone()]) + &(&e * &p(vec![Fp::zero(f), k(f, 4).inv().unwrap()])))
        - &(&e * &e).scale(&k(f, 64).inv().unwrap());
    let w = &Polynomial::monomial(k(f, 256) * &a2, 3) + &(&e * &e); // 256 a^2 (c^3 + d^2)
    let delta1 = a2.clone() * a + &a2;
    let g1 = &(&(t1 * t1) * t1).scale(&(k(f, 1728 * 256) * &a2)) - &w.scale(&(j1.clone() * &delta1.square()));
    let g2 = &(&(&t2 * &t2) * &t2).scale(&(k(f, 1728 * 65536) * &a2.square()))
        - &(&w * &w).scale(&(j2.clone() * &delta1));
    (g1, g2)
}

fn padded(f: &Polynomial<Fp>, n: usize) -> Vec<Fp> {
    (0..=n).map(|i| f.coeff(i)).collect()
}

fn interpolate(xs: &[Fp], ys: &[Fp]) -> Polynomial<Fp> {
    let f = xs[0].field();
    let mut out = Polynomial::zero(f);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = Polynomial::one(f);
        let mut den = Fp::one(f);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                num = &num * &Polynomial::linear_root(xj);
                den = den * &(xi.clone() - xj);
            }
        }
        out = &out + &num.scale(&yi.div(&den));
    }
    out
}

/// Candidate values of `a` on the chart `a = b`.
fn candidate_a(f: &Arc<PrimeField>, j1: &Fp, j2: &Fp, elim: Elimination) -> Vec<Fp> {
    let p = f.p();
    let use_resultant = match elim {
        Elimination::Auto => *p >= BigUint::from(ENUMERATE_BELOW),
        Elimination::Resultant => *p > BigUint::from(RESULTANT_DEGREE as u64 + 1),
        Elimination::Enumerate => false,
    };
    if use_resultant {
        let xs: Vec<Fp> = (1..=RESULTANT_DEGREE as i64 + 1).map(|i| k(f, i)).collect();
        let ys: Vec<Fp> = xs
            .iter()
            .map(|x| {
                let (g1, g2) = g_polys(x, j1, j2);
                sylvester_resultant(&padded(&g1, 6), 6, &padded(&g2, 6), 6, f)
            })
            .collect();
        let r = interpolate(&xs, &ys);
        if !r.is_zero() {
            return roots(&r);
        }
        log::warn!("glue3: resultant vanishes identically over F_{p}, enumerating a");
    }
    let n: u64 = p.try_into().unwrap_or(u64::MAX);
    if n > 1 << 24 {
        log::warn!("glue3: resultant vanishes identically and F_{p} is too large to enumerate");
        return vec![];
    }
    (1..n).map(|i| Fp::new(f, BigUint::from(i))).collect()
}

fn on_variety(q: &[Fp; 4], j1: &Fp, j2: &Fp) -> bool {
    let [a, b, c, d] = q;
    let f = a.field();
    let d1 = a.square() * a + &b.square();
    let d2 = c.square() * c + &d.square();
    let s1 = a.square() * c + &(k(f, 4) * a * b * d) - &(k(f, 4) * &b.square() * &c.square());
    let s2 = a.clone() * &c.square() + &(k(f, 4) * b * c * d) - &(k(f, 4) * &a.square() * &d.square());
    let g1 = k(f, 1728) * &s1.square() * &s1 - &(j1.clone() * &d1.square() * &d2);
    let g2 = k(f, 1728) * &s2.square() * &s2 - &(j2.clone() * &d1 * &d2.square());
    let g3 = k(f, 12) * a * c + &(k(f, 16) * b * d) - &Fp::one(f);
    g1.is_zero() && g2.is_zero() && g3.is_zero()
}

/// Points of `g1 = g2 = g3 = 0` with `a = b != 0` and `(a^3 + b^2)(c^3 + d^2) != 0`.
fn solve_chart(f: &Arc<PrimeField>, j1: &Fp, j2: &Fp, elim: Elimination) -> Vec<[Fp; 4]> {
    let mut out = Vec::new();
    for a in candidate_a(f, j1, j2, elim) {
        if a.is_zero() || (a.clone() + &Fp::one(f)).is_zero() {
            continue;
        }
        let (g1, g2) = g_polys(&a, j1, j2);
        let g = g1.gcd(&g2);
        let cs = if g.is_zero() {
            log::debug!("glue3: both equations vanish at a = {a}");
            vec![]
        } else {
            roots(&g)
        };
        for c in cs {
            let d = (Fp::one(f) - &(k(f, 12) * &a * &c)).div(&(k(f, 16) * &a));
            let q = [a.clone(), a.clone(), c, d];
            let d2 = q[2].square() * &q[2] + &q[3].square();
            if on_variety(&q, j1, j2) && !d2.is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// The orbits of Step 3: chart `a = b`, then chart `c = d` through the
/// symmetry `(a, b, c, d) -> (c, d, a, b)`, which swaps `j1` and `j2`.
fn pk_points(f: &Arc<PrimeField>, j1: &Fp, j2: &Fp, elim: Elimination) -> Vec<PkOrbit<Fp>> {
    let mut pts = solve_chart(f, j1, j2, elim);
    pts.extend(solve_chart(f, j2, j1, elim).into_iter().map(|[a, b, c, d]| [c, d, a, b]));
    let mut out: Vec<PkOrbit<Fp>> = Vec::new();
    for [a, b, c, d] in pts {
        let (o, _) = PkOrbit::canonical(&a, &b, &c, &d);
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

/// Class representative in `F_p^* / F_p^*2`: 1 or the smallest non-residue.
fn square_class(t: &Fp) -> Fp {
    let f = t.field();
    if t.is_square() {
        Fp::one(f)
    } else {
        Fp::new(f, f.nonresidue().clone())
    }
}

/// Classes of `t` with `(A', B') = (A t^2, B t^3)`.
fn twist_classes(base: &EllipticCurve, target: &EllipticCurve) -> Vec<Fp> {
    let (a, b) = (base.a(), base.b());
    let (a2, b2) = (target.a(), target.b());
    let f = a.field();
    let mut ts: Vec<Fp> = Vec::new();
    if a.is_zero() != a2.is_zero() || b.is_zero() != b2.is_zero() {
        return ts;
    }
    if a.is_zero() {
        // t^3 = B'/B; every cube root lies in one class
        let r = b2.div(b);
        ts.extend(roots(&Polynomial::new(f, vec![-r, Fp::zero(f), Fp::zero(f), Fp::one(f)])).into_iter().take(1));
    } else if b.is_zero() {
        if let Some(s) = a2.div(a).sqrt() {
            ts.push(s.clone());
            ts.push(-s);
        }
    } else {
        let t = b2.div(b).div(&a2.div(a));
        if t.square() * a == *a2 {
            ts.push(t);
        }
    }
    let mut classes: Vec<Fp> = Vec::new();
    for t in ts.iter().filter(|t| !t.is_zero()) {
        let c = square_class(t);
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    classes
}

fn roots_of_power(r: &Fp, e: usize) -> Vec<Fp> {
    let f = r.field();
    let mut c = vec![Fp::zero(f); e + 1];
    c[0] = -r.clone();
    c[e] = Fp::one(f);
    roots(&Polynomial::new(f, c))
}

/// Whether some `(l, m)` maps `q1` to `q2` under
/// `(l^2 a, l^3 b, l^-2 c, l^-3 d, l m^2 t)`.
pub fn quintuples_equivalent(q1: &AppendixQuintuple<Fp>, q2: &AppendixQuintuple<Fp>) -> bool {
    let mut ls: Vec<Fp> = Vec::new();
    if !q1.a.is_zero() && !q1.b.is_zero() && !q2.a.is_zero() {
        ls.push(q2.b.clone() * &q1.a * &(q1.b.clone() * &q2.a).inv().unwrap());
    } else if !q1.c.is_zero() && !q1.d.is_zero() && !q2.d.is_zero() {
        ls.push(q1.d.clone() * &q2.c * &(q2.d.clone() * &q1.c).inv().unwrap());
    } else if !q1.a.is_zero() {
        ls.extend(roots_of_power(&q2.a.div(&q1.a), 2));
    } else if !q1.b.is_zero() {
        ls.extend(roots_of_power(&q2.b.div(&q1.b), 3));
    }
    ls.iter().filter(|l| !l.is_zero()).any(|l| {
        let m = Fp::one(l.field());
        let img = q1.act(l, &m);
        img.a == q2.a
            && img.b == q2.b
            && img.c == q2.c
            && img.d == q2.d
            && (l.clone() * &q1.t * &q2.t).is_square()
    })
}

/// Every quintuple surviving Steps 1-7 together with its curve.
pub fn glue3_detailed(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Vec<Glue3Output>> {
    glue3_detailed_with(e1, e2, Elimination::Auto)
}

pub fn glue3_detailed_with(e1: &EllipticCurve, e2: &EllipticCurve, elim: Elimination) -> Result<Vec<Glue3Output>> {
    if e1.p() != e2.p() {
        return Err(invariant("curves over different fields"));
    }
    let f = e1.field().clone();
    let (j1, j2) = (e1.j_invariant(), e2.j_invariant());
    let mut list: Vec<AppendixQuintuple<Fp>> = Vec::new();
    for o in pk_points(&f, &j1, &j2, elim) {
        let one = Fp::one(&f);
        let Ok(q) = AppendixQuintuple::new(o.a, o.b, o.c, o.d, one) else { continue };
        let cover = appendix_family(&q)?;
        let s1 = twist_classes(&cover.elliptic(1)?, e1);
        let s2 = twist_classes(&cover.elliptic(2)?, e2);
        for t in s1.into_iter().filter(|t| s2.contains(t)) {
            list.push(AppendixQuintuple { t, ..q.clone() });
        }
    }
    let zero = Fp::zero(&f);
    let two = k(&f, 2);
    if j1.is_zero() && j2.is_zero() {
        let (u1, u2) = (e1.b(), e2.b());
        if is_kth_power(&(u1.clone() * u2).div(&k(&f, 4)), 6) {
            let d = (k(&f, 16) * u1).inv().unwrap();
            list.push(AppendixQuintuple::new(zero.clone(), u1.clone(), zero.clone(), d, two.clone())?);
        }
    }
    let j1728 = k(&f, 1728);
    if j1 == j1728 && j2 == j1728 {
        let (u1, u2) = (e1.a(), e2.a());
        if is_kth_power(&(u1.clone() * u2).div(&k(&f, 108)), 4) {
            let c = (k(&f, 12) * u1).inv().unwrap();
            list.push(AppendixQuintuple::new(u1.clone(), zero.clone(), c, zero.clone(), two.clone())?);
        }
    }
    let mut kept: Vec<AppendixQuintuple<Fp>> = Vec::new();
    for q in list {
        if !kept.iter().any(|r| quintuples_equivalent(r, &q)) {
            kept.push(q);
        }
    }
    let mut out = Vec::new();
    for q in kept {
        let cover = appendix_family(&q)?;
        if !is_isomorphic(&cover.elliptic(1)?, e1) || !is_isomorphic(&cover.elliptic(2)?, e2) {
            return Err(invariant("glue3 quotient does not match its target"));
        }
        match cover.curve() {
            Ok(curve) => out.push(Glue3Output { quintuple: q, curve }),
            Err(e) => log::debug!("glue3: quintuple {q:?} gives a singular model ({e})"),
        }
    }
    Ok(out)
}

/// Genus-2 curves with degree-3 maps to `E1` and `E2` whose Jacobians are
/// glued along the 3-torsion.
pub fn glue3(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Vec<Genus2Curve>> {
    Ok(dedupe_curves(glue3_detailed(e1, e2)?.into_iter().map(|o| o.curve).collect()))
}
