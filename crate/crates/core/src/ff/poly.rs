use super::Field;
use num_bigint::{BigInt, BigUint};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn new(ctx: &F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs, ctx: ctx.clone() }
    }

    pub fn from_i64s(ctx: &F::Ctx, c: &[i64]) -> Self {
        Self::new(ctx, c.iter().map(|&v| F::from_i64(ctx, v)).collect())
    }

    pub fn from_bigints(ctx: &F::Ctx, c: &[BigInt]) -> Self {
        Self::new(ctx, c.iter().map(|v| F::from_bigint(ctx, v)).collect())
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Polynomial { coeffs: vec![], ctx: ctx.clone() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Polynomial { coeffs: vec![F::zero(ctx), F::one(ctx)], ctx: ctx.clone() }
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::new(&ctx, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: F, d: usize) -> Self {
        let ctx = c.ctx();
        let mut v = vec![F::zero(&ctx); d];
        v.push(c);
        Self::new(&ctx, v)
    }

    /// `x - r`.
    pub fn linear_root(r: &F) -> Self {
        let ctx = r.ctx();
        Self::new(&ctx, vec![-r.clone(), F::one(&ctx)])
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for zero.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * &F::from_i64(&self.ctx, i as i64))
            .collect();
        Self::new(&self.ctx, v)
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return (Self::zero(&self.ctx), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(&self.ctx); n - m + 1];
        for i in (0..=n - m).rev() {
            let c = r[i + m - 1].clone() * &inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..m {
                r[i + j] = r[i + j].clone() - &(c.clone() * &d.coeffs[j]);
            }
            q[i] = c;
        }
        r.truncate(m - 1);
        (Self::new(&self.ctx, q), Self::new(&self.ctx, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` not necessarily monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let ns = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, ns);
            let nt = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, nt);
        }
        (r0, s0, t0)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(&self.ctx).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul_mod(&r, m);
            if e.bit(i) {
                r = r.mul_mod(&base, m);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ctx);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(ctx, self.coeffs.iter().map(f).collect())
    }

    /// Reverses the coefficient list with respect to formal degree `n`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v: Vec<F> = (0..=n).map(|i| self.coeff(i)).collect();
        v.reverse();
        Self::new(&self.ctx, v)
    }
}

impl<'a, 'b, F: Field> Add<&'b Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: &'b Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + &o.coeff(i)).collect();
        Polynomial::new(&self.ctx, v)
    }
}

impl<'a, 'b, F: Field> Sub<&'b Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: &'b Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - &o.coeff(i)).collect();
        Polynomial::new(&self.ctx, v)
    }
}

impl<'a, 'b, F: Field> Mul<&'b Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: &'b Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let mut v = vec![F::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + &(a.clone() * b);
            }
        }
        Polynomial::new(&self.ctx, v)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(&self.ctx, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_poly_op {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: Polynomial<F>) -> Polynomial<F> {
                $tr::$m(&self, &o)
            }
        }
    };
}
owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

/// Resultant by the Euclidean algorithm; zero if either input is zero.
pub fn resultant<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> F {
    let ctx = f.ctx().clone();
    if f.is_zero() || g.is_zero() {
        return F::zero(&ctx);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = F::one(&ctx);
    loop {
        let n = a.degree().unwrap();
        let m = b.degree().unwrap();
        if m == 0 {
            return acc * &b.lc().pow_u(n as u64);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return F::zero(&ctx);
        }
        let k = r.degree().unwrap();
        let mut s = b.lc().pow_u((n - k) as u64);
        if (n * m) % 2 == 1 {
            s = -s;
        }
        acc = acc * &s;
        a = b;
        b = r;
    }
}

/// Determinant of the Sylvester matrix of `f` and `g` taken with formal degrees
/// `n` and `m` (leading coefficients may vanish).
pub fn sylvester_resultant<F: Field>(f: &[F], n: usize, g: &[F], m: usize, ctx: &F::Ctx) -> F {
    let size = n + m;
    if size == 0 {
        return F::one(ctx);
    }
    let get = |v: &[F], i: usize| v.get(i).cloned().unwrap_or_else(|| F::zero(ctx));
    let mut mat: Vec<Vec<F>> = Vec::with_capacity(size);
    for r in 0..m {
        let mut row = vec![F::zero(ctx); size];
        for i in 0..=n {
            row[r + i] = get(f, n - i);
        }
        mat.push(row);
    }
    for r in 0..n {
        let mut row = vec![F::zero(ctx); size];
        for i in 0..=m {
            row[r + i] = get(g, m - i);
        }
        mat.push(row);
    }
    determinant(mat, ctx)
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<F: Field>(mut mat: Vec<Vec<F>>, ctx: &F::Ctx) -> F {
    let n = mat.len();
    let mut det = F::one(ctx);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return F::zero(ctx);
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det = det * &pv;
        let inv = pv.inv().unwrap();
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() * &inv;
            for c in col..n {
                let t = factor.clone() * &mat[col][c];
                mat[r][c] = mat[r][c].clone() - &t;
            }
        }
    }
    det
}

/// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)` with `f'` taken at
/// formal degree `n - 1`.
pub fn discriminant<F: Field>(f: &Polynomial<F>) -> F {
    let ctx = f.ctx().clone();
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return F::zero(&ctx),
    };
    let d = f.derivative();
    let r = sylvester_resultant(f.coeffs(), n, d.coeffs(), n - 1, &ctx);
    let r = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
    r.div(&f.lc())
}
