use super::{Field, FiniteField, Fp, Polynomial, PrimeField};
use crate::error::{invariant, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// `F_{p^k} = F_p[x]/(m)` with `m` the first monic irreducible of degree `k`
/// in graded order: coefficient vectors ordered by their largest entry, then
/// lexicographically from the `x^{k-1}` coefficient down.
#[derive(Debug)]
pub struct ExtField {
    base: Arc<PrimeField>,
    k: usize,
    modulus: Vec<BigUint>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus && self.base.p() == other.base.p()
    }
}

fn is_irreducible(m: &Polynomial<Fp>) -> bool {
    let n = match m.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let ctx = m.ctx().clone();
    let p = ctx.p().clone();
    let x = Polynomial::x(&ctx);
    // x^{p^n} = x mod m and gcd(x^{p^{n/r}} - x, m) = 1 for primes r | n.
    let mut powers = vec![x.clone()];
    for _ in 0..n {
        let last = powers.last().unwrap().clone();
        powers.push(last.pow_mod(&p, m));
    }
    if powers[n] != x.rem(m) {
        return false;
    }
    for r in 2..=n {
        if n % r == 0 && (2..r).all(|s| r % s != 0) {
            let h = &powers[n / r] - &x;
            if m.gcd(&h).degree() != Some(0) {
                return false;
            }
        }
    }
    true
}

fn graded_vectors(k: usize, max: u64) -> Vec<Vec<u64>> {
    // All vectors in [0, max]^k with at least one entry equal to max, ordered
    // lexicographically with index k-1 most significant.
    let mut out = Vec::new();
    let total = (max + 1).pow(k as u32);
    for idx in 0..total {
        let mut v = vec![0u64; k];
        let mut t = idx;
        for slot in (0..k).rev() {
            v[slot] = t % (max + 1);
            t /= max + 1;
        }
        if v.iter().any(|&c| c == max) {
            out.push(v);
        }
    }
    out
}

impl ExtField {
    pub fn new(base: &Arc<PrimeField>, k: usize) -> Result<Arc<Self>> {
        if k == 0 {
            return Err(invariant("extension degree must be positive"));
        }
        if k == 1 {
            return Ok(Arc::new(ExtField {
                base: base.clone(),
                k,
                modulus: vec![BigUint::zero(), BigUint::one()],
            }));
        }
        let p = base.p().clone();
        let mut max = 0u64;
        loop {
            if BigUint::from(max) >= p {
                return Err(invariant("no irreducible polynomial found"));
            }
            for v in graded_vectors(k, max) {
                let mut coeffs: Vec<Fp> =
                    v.iter().rev().map(|&c| Fp::new(base, BigUint::from(c))).collect();
                coeffs.push(Fp::one(base));
                let m = Polynomial::new(base, coeffs);
                if is_irreducible(&m) {
                    return Self::with_modulus(&m);
                }
            }
            max += 1;
        }
    }

    /// Extension defined by an explicit monic irreducible modulus.
    pub fn with_modulus(m: &Polynomial<Fp>) -> Result<Arc<Self>> {
        if !m.lc().is_one() || !is_irreducible(m) {
            return Err(invariant("extension modulus must be monic irreducible"));
        }
        Ok(Arc::new(ExtField {
            base: m.ctx().clone(),
            k: m.degree().unwrap(),
            modulus: m.coeffs().iter().map(|c| c.value().clone()).collect(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &Arc<PrimeField> {
        &self.base
    }

    pub fn modulus(&self) -> Polynomial<Fp> {
        Polynomial::new(
            &self.base,
            self.modulus.iter().map(|c| Fp::new(&self.base, c.clone())).collect(),
        )
    }

    pub fn embed(self: &Arc<Self>, a: &Fp) -> Fq {
        let mut c = vec![BigUint::zero(); self.k];
        c[0] = a.value().clone();
        Fq { c, f: self.clone() }
    }

    /// Class of `x` in `F_p[x]/(m)`.
    pub fn generator(self: &Arc<Self>) -> Fq {
        let mut c = vec![BigUint::zero(); self.k];
        if self.k == 1 {
            c[0] = (self.base.p() - &self.modulus[0]) % self.base.p();
        } else {
            c[1] = BigUint::one();
        }
        Fq { c, f: self.clone() }
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[BigUint]) -> Fq {
        let p = self.base.p();
        let mut c: Vec<BigUint> = coeffs.iter().map(|v| v % p).collect();
        c.resize(self.k.max(c.len()), BigUint::zero());
        reduce(&mut c, &self.modulus, p);
        Fq { c, f: self.clone() }
    }
}

fn reduce(c: &mut Vec<BigUint>, m: &[BigUint], p: &BigUint) {
    let k = m.len() - 1;
    while c.len() > k {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - k;
        for j in 0..k {
            let sub = (&top * &m[j]) % p;
            let slot = &mut c[shift + j];
            *slot = if *slot >= sub { &*slot - &sub } else { &*slot + p - &sub };
        }
    }
    c.resize(k, BigUint::zero());
}

/// Element of an [`ExtField`]: coefficients of the reduced representative,
/// lowest degree first.
#[derive(Clone)]
pub struct Fq {
    c: Vec<BigUint>,
    f: Arc<ExtField>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl PartialEq for Fq {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.f, &o.f) || *self.f == *o.f)
    }
}
impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Fq {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.c
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.f
    }

    /// The element as a prime-field value, if it lies in `F_p`.
    pub fn project(&self) -> Option<Fp> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(Fp::new(&self.f.base, self.c[0].clone()))
        } else {
            None
        }
    }

    fn as_poly(&self) -> Polynomial<Fp> {
        Polynomial::new(
            &self.f.base,
            self.c.iter().map(|v| Fp::new(&self.f.base, v.clone())).collect(),
        )
    }
}

macro_rules! fq_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Fq> for Fq {
            type Output = Fq;
            fn $m(self, o: Fq) -> Fq {
                let f: fn(&Fq, &Fq) -> Fq = $body;
                f(&self, &o)
            }
        }
        impl<'a> $tr<&'a Fq> for Fq {
            type Output = Fq;
            fn $m(self, o: &'a Fq) -> Fq {
                let f: fn(&Fq, &Fq) -> Fq = $body;
                f(&self, o)
            }
        }
        impl<'a, 'b> $tr<&'b Fq> for &'a Fq {
            type Output = Fq;
            fn $m(self, o: &'b Fq) -> Fq {
                let f: fn(&Fq, &Fq) -> Fq = $body;
                f(self, o)
            }
        }
    };
}

fq_binop!(Add, add, |a, b| {
    let p = a.f.base.p();
    let c = a
        .c
        .iter()
        .zip(&b.c)
        .map(|(x, y)| {
            let s = x + y;
            if s >= *p {
                s - p
            } else {
                s
            }
        })
        .collect();
    Fq { c, f: a.f.clone() }
});
fq_binop!(Sub, sub, |a, b| {
    let p = a.f.base.p();
    let c = a.c.iter().zip(&b.c).map(|(x, y)| if x >= y { x - y } else { x + p - y }).collect();
    Fq { c, f: a.f.clone() }
});
fq_binop!(Mul, mul, |a, b| {
    let p = a.f.base.p();
    let k = a.f.k;
    let mut prod = vec![BigUint::zero(); 2 * k - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for v in prod.iter_mut() {
        *v %= p;
    }
    reduce(&mut prod, &a.f.modulus, p);
    Fq { c: prod, f: a.f.clone() }
});

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.f.base.p().clone();
        let c = self.c.iter().map(|x| if x.is_zero() { x.clone() } else { &p - x }).collect();
        Fq { c, f: self.f }
    }
}

impl Field for Fq {
    type Ctx = Arc<ExtField>;

    fn ctx(&self) -> Arc<ExtField> {
        self.f.clone()
    }
    fn zero(ctx: &Arc<ExtField>) -> Self {
        Fq { c: vec![BigUint::zero(); ctx.k], f: ctx.clone() }
    }
    fn one(ctx: &Arc<ExtField>) -> Self {
        let mut c = vec![BigUint::zero(); ctx.k];
        c[0] = BigUint::one();
        Fq { c, f: ctx.clone() }
    }
    fn from_bigint(ctx: &Arc<ExtField>, v: &BigInt) -> Self {
        ctx.embed(&Fp::from_int(&ctx.base, v))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.as_poly().ext_gcd(&self.f.modulus());
        let ginv = g.coeff(0).inv()?;
        let s = s.scale(&ginv);
        let mut c: Vec<BigUint> = s.coeffs().iter().map(|v| v.value().clone()).collect();
        c.resize(self.f.k, BigUint::zero());
        Some(Fq { c, f: self.f.clone() })
    }
}

impl FiniteField for Fq {
    fn order(ctx: &Arc<ExtField>) -> BigUint {
        ctx.base.p().pow(ctx.k as u32)
    }
    fn characteristic(ctx: &Arc<ExtField>) -> BigUint {
        ctx.base.p().clone()
    }
    fn random<R: Rng + ?Sized>(ctx: &Arc<ExtField>, rng: &mut R) -> Self {
        let c = (0..ctx.k).map(|_| rng.gen_biguint_below(ctx.base.p())).collect();
        Fq { c, f: ctx.clone() }
    }
    fn nth(ctx: &Arc<ExtField>, i: &BigUint) -> Self {
        let p = ctx.base.p();
        let mut t = i.clone();
        let mut c = Vec::with_capacity(ctx.k);
        for _ in 0..ctx.k {
            let (q, r) = t.div_rem(p);
            c.push(r);
            t = q;
        }
        Fq { c, f: ctx.clone() }
    }
    fn sort_key(&self) -> Vec<BigUint> {
        self.c.clone()
    }
}
