use crate::error::{invariant, Result};
use crate::ff::{Field, FiniteField, Fp, Polynomial, PrimeField};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// Short Weierstrass curve `y^2 = x^3 + A x + B` over `F_p`, `p > 3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    a: Fp,
    b: Fp,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(Fp, Fp),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&Fp> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }
}

impl fmt::Debug for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {} over F_{}", self.a, self.b, self.a.p())
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Jacobian projective point `(X : Y : Z)` with `x = X/Z^2`, `y = Y/Z^3`.
#[derive(Clone)]
struct Jac {
    x: Fp,
    y: Fp,
    z: Fp,
}

impl EllipticCurve {
    pub fn new(a: Fp, b: Fp) -> Result<Self> {
        if *a.p() <= BigUint::from(3u32) {
            return Err(invariant("characteristic must exceed 3"));
        }
        let e = EllipticCurve { a, b };
        if e.discriminant_core().is_zero() {
            return Err(invariant("singular curve: 4A^3 + 27B^2 = 0"));
        }
        Ok(e)
    }

    pub fn from_ints(field: &Arc<PrimeField>, a: &BigInt, b: &BigInt) -> Result<Self> {
        Self::new(Fp::from_int(field, a), Fp::from_int(field, b))
    }

    pub fn from_i64(p: u64, a: i64, b: i64) -> Result<Self> {
        let f = PrimeField::from_u64(p);
        Self::new(Fp::from_i64(&f, a), Fp::from_i64(&f, b))
    }

    /// Short model of `y^2 = c3 x^3 + c2 x^2 + c1 x + c0` (`c3 != 0`).
    pub fn from_cubic(c3: &Fp, c2: &Fp, c1: &Fp, c0: &Fp) -> Result<Self> {
        if c3.is_zero() {
            return Err(invariant("leading coefficient of the cubic vanishes"));
        }
        // (c3 y)^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2 with X = c3 x.
        let a2 = c2.clone();
        let a1 = c1.clone() * c3;
        let a0 = c0.clone() * c3 * c3;
        let f = c3.field();
        let three = Fp::from_i64(f, 3);
        let inv3 = three.inv().unwrap();
        let inv27 = Fp::from_i64(f, 27).inv().unwrap();
        let a = a1.clone() - &(a2.square() * &inv3);
        let b = a0 - &(a2.clone() * &a1 * &inv3) + &(a2.square() * &a2 * &Fp::from_i64(f, 2) * &inv27);
        Self::new(a, b)
    }

    pub fn a(&self) -> &Fp {
        &self.a
    }

    pub fn b(&self) -> &Fp {
        &self.b
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        self.a.field()
    }

    pub fn p(&self) -> &BigUint {
        self.a.p()
    }

    fn discriminant_core(&self) -> Fp {
        let f = self.a.field();
        Fp::from_i64(f, 4) * &self.a.square() * &self.a + &(Fp::from_i64(f, 27) * &self.b.square())
    }

    /// `-16 (4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> Fp {
        -(Fp::from_i64(self.field(), 16) * &self.discriminant_core())
    }

    pub fn j_invariant(&self) -> Fp {
        let f = self.field();
        let num = Fp::from_i64(f, 6912) * &self.a.square() * &self.a;
        num.div(&self.discriminant_core())
    }

    /// `x^3 + A x + B`.
    pub fn rhs(&self, x: &Fp) -> Fp {
        x.square() * x + &(self.a.clone() * x) + &self.b
    }

    pub fn cubic(&self) -> Polynomial<Fp> {
        let f = self.field();
        Polynomial::new(f, vec![self.b.clone(), self.a.clone(), Fp::zero(f), Fp::one(f)])
    }

    /// `3x^4 + 6A x^2 + 12B x - A^2`, whose roots are the x-coordinates of the
    /// nonzero 3-torsion points.
    pub fn division_polynomial_3(&self) -> Polynomial<Fp> {
        let f = self.field();
        let c = |v: i64| Fp::from_i64(f, v);
        Polynomial::new(
            f,
            vec![
                -self.a.square(),
                c(12) * &self.b,
                c(6) * &self.a,
                Fp::zero(f),
                c(3),
            ],
        )
    }

    /// `y^2 = x^3 + A d^2 x + B d^3`.
    pub fn twist(&self, d: &Fp) -> Result<Self> {
        let d2 = d.square();
        Self::new(self.a.clone() * &d2, self.b.clone() * &d2 * d)
    }

    /// Quadratic twist by the smallest non-residue.
    pub fn quadratic_twist(&self) -> Self {
        let n = Fp::new(self.field(), self.field().nonresidue().clone());
        self.twist(&n).expect("twist of a nonsingular curve is nonsingular")
    }

    pub fn is_on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y.clone()),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let lambda = if x1 == x2 {
                    if (y1.clone() + y2).is_zero() {
                        return Point::Infinity;
                    }
                    let f = self.field();
                    (Fp::from_i64(f, 3) * &x1.square() + &self.a).div(&(Fp::from_i64(f, 2) * y1))
                } else {
                    (y2.clone() - y1).div(&(x2.clone() - x1))
                };
                let x3 = lambda.square() - x1 - x2;
                let y3 = lambda * &(x1.clone() - &x3) - y1;
                Point::Affine(x3, y3)
            }
        }
    }

    fn to_affine(&self, j: &Jac) -> Point {
        if j.z.is_zero() {
            return Point::Infinity;
        }
        let zi = j.z.inv().unwrap();
        let zi2 = zi.square();
        Point::Affine(j.x.clone() * &zi2, j.y.clone() * &zi2 * &zi)
    }

    fn jac_double(&self, p: &Jac) -> Jac {
        if p.z.is_zero() || p.y.is_zero() {
            let f = self.field();
            return Jac { x: Fp::one(f), y: Fp::one(f), z: Fp::zero(f) };
        }
        let f = self.field();
        let y2 = p.y.square();
        let s = Fp::from_i64(f, 4) * &p.x * &y2;
        let z2 = p.z.square();
        let m = Fp::from_i64(f, 3) * &p.x.square() + &(self.a.clone() * &z2.square());
        let x3 = m.square() - &s - &s;
        let y3 = m * &(s - &x3) - &(Fp::from_i64(f, 8) * &y2.square());
        let z3 = Fp::from_i64(f, 2) * &p.y * &p.z;
        Jac { x: x3, y: y3, z: z3 }
    }

    /// Jacobian plus affine.
    fn jac_add_affine(&self, p: &Jac, qx: &Fp, qy: &Fp) -> Jac {
        if p.z.is_zero() {
            return Jac { x: qx.clone(), y: qy.clone(), z: Fp::one(self.field()) };
        }
        let z1z1 = p.z.square();
        let u2 = qx.clone() * &z1z1;
        let s2 = qy.clone() * &p.z * &z1z1;
        let h = u2 - &p.x;
        let r = s2 - &p.y;
        if h.is_zero() {
            if r.is_zero() {
                return self.jac_double(p);
            }
            let f = self.field();
            return Jac { x: Fp::one(f), y: Fp::one(f), z: Fp::zero(f) };
        }
        let hh = h.square();
        let hhh = h.clone() * &hh;
        let v = p.x.clone() * &hh;
        let x3 = r.square() - &hhh - &v - &v;
        let y3 = r * &(v - &x3) - &(p.y.clone() * &hhh);
        let z3 = p.z.clone() * &h;
        Jac { x: x3, y: y3, z: z3 }
    }

    pub fn mul(&self, k: &BigUint, p: &Point) -> Point {
        let (px, py) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let f = self.field();
        let mut acc = Jac { x: Fp::one(f), y: Fp::one(f), z: Fp::zero(f) };
        for i in (0..k.bits()).rev() {
            acc = self.jac_double(&acc);
            if k.bit(i) {
                acc = self.jac_add_affine(&acc, px, py);
            }
        }
        self.to_affine(&acc)
    }

    pub fn mul_u64(&self, k: u64, p: &Point) -> Point {
        self.mul(&BigUint::from(k), p)
    }

    /// Uniformly random affine point (x uniform among x with a rational y,
    /// sign of y uniform).
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let x = Fp::random(self.field(), rng);
            let r = self.rhs(&x);
            if let Some(y) = r.sqrt() {
                let y = if rng.gen::<bool>() { -y } else { y };
                return Point::Affine(x, y);
            }
        }
    }

    /// Small-`p` enumeration of all affine points.
    pub fn points(&self) -> Vec<Point> {
        let p = self.p().to_u64().expect("enumeration needs a small field");
        let f = self.field();
        let mut out = vec![Point::Infinity];
        for xi in 0..p {
            let x = Fp::from_i64(f, xi as i64);
            if let Some(y) = self.rhs(&x).sqrt() {
                if y.is_zero() {
                    out.push(Point::Affine(x, y));
                } else {
                    out.push(Point::Affine(x.clone(), y.clone()));
                    out.push(Point::Affine(x, -y));
                }
            }
        }
        out
    }

    /// `(A, B)` as integers in `[0, p)`.
    pub fn coefficients(&self) -> (BigUint, BigUint) {
        (self.a.value().clone(), self.b.value().clone())
    }
}

/// True when `x` is a `k`-th power in `F_p^*` (`x != 0`).
pub fn is_kth_power(x: &Fp, k: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    let pm1 = x.p() - 1u32;
    let g = num_integer::Integer::gcd(&pm1, &BigUint::from(k));
    x.pow(&(pm1 / g)).is_one()
}

/// `F_p`-isomorphism of short Weierstrass curves:
/// `(A', B') = (u^4 A, u^6 B)` for some `u` in `F_p^*`.
pub fn is_isomorphic(e1: &EllipticCurve, e2: &EllipticCurve) -> bool {
    if e1.p() != e2.p() || e1.j_invariant() != e2.j_invariant() {
        return false;
    }
    match (e1.a.is_zero(), e1.b.is_zero()) {
        (true, _) => is_kth_power(&e2.b.div(&e1.b), 6),
        (_, true) => is_kth_power(&e2.a.div(&e1.a), 4),
        _ => {
            let ra = e2.a.div(&e1.a);
            let rb = e2.b.div(&e1.b);
            let s = rb.div(&ra);
            s.square() == ra && s.is_square()
        }
    }
}
