use super::{Field, FiniteField};
use crate::arith::{is_probable_prime, jacobi, modp};
use crate::error::{invariant, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

/// The prime field `F_p`.
#[derive(Debug)]
pub struct PrimeField {
    p: BigUint,
    nonresidue: OnceLock<BigUint>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl PrimeField {
    /// Builds `F_p` after a probable-prime check.
    pub fn new(p: BigUint) -> Result<Arc<Self>> {
        if !is_probable_prime(&p) {
            return Err(invariant(format!("{p} is not prime")));
        }
        Ok(Self::new_unchecked(p))
    }

    pub fn new_unchecked(p: BigUint) -> Arc<Self> {
        Arc::new(PrimeField { p, nonresidue: OnceLock::new() })
    }

    pub fn from_u64(p: u64) -> Arc<Self> {
        Self::new_unchecked(BigUint::from(p))
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    /// Smallest positive quadratic non-residue.
    pub fn nonresidue(&self) -> &BigUint {
        self.nonresidue.get_or_init(|| {
            let mut n = BigUint::from(2u32);
            while jacobi(&BigInt::from(n.clone()), &self.p) != -1 {
                n += 1u32;
            }
            n
        })
    }
}

#[derive(Clone)]
pub struct Fp {
    v: BigUint,
    f: Arc<PrimeField>,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && (Arc::ptr_eq(&self.f, &other.f) || self.f.p == other.f.p)
    }
}
impl Eq for Fp {}

impl std::hash::Hash for Fp {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl Fp {
    pub fn new(f: &Arc<PrimeField>, v: BigUint) -> Self {
        let v = if v < f.p { v } else { v % &f.p };
        Fp { v, f: f.clone() }
    }

    pub fn from_int(f: &Arc<PrimeField>, v: &BigInt) -> Self {
        Fp { v: modp(v, &f.p), f: f.clone() }
    }

    pub fn value(&self) -> &BigUint {
        &self.v
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.f
    }

    pub fn p(&self) -> &BigUint {
        &self.f.p
    }

    /// Smaller of the two square roots, if one exists.
    pub fn sqrt(&self) -> Option<Fp> {
        sqrt_mod(&self.v, &self.f.p).map(|r| Fp { v: r, f: self.f.clone() })
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn centered(&self) -> BigInt {
        let half = &self.f.p >> 1;
        if self.v > half {
            BigInt::from(self.v.clone()) - BigInt::from(self.f.p.clone())
        } else {
            BigInt::from(self.v.clone())
        }
    }

    pub fn legendre(&self) -> i32 {
        if self.v.is_zero() {
            0
        } else if self.is_square() {
            1
        } else {
            -1
        }
    }
}

macro_rules! fp_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Fp> for Fp {
            type Output = Fp;
            fn $m(self, o: Fp) -> Fp {
                let f: fn(&Fp, &Fp) -> Fp = $body;
                f(&self, &o)
            }
        }
        impl<'a> $tr<&'a Fp> for Fp {
            type Output = Fp;
            fn $m(self, o: &'a Fp) -> Fp {
                let f: fn(&Fp, &Fp) -> Fp = $body;
                f(&self, o)
            }
        }
        impl<'a, 'b> $tr<&'b Fp> for &'a Fp {
            type Output = Fp;
            fn $m(self, o: &'b Fp) -> Fp {
                let f: fn(&Fp, &Fp) -> Fp = $body;
                f(self, o)
            }
        }
    };
}

fp_binop!(Add, add, |a, b| {
    let mut v = &a.v + &b.v;
    if v >= a.f.p {
        v -= &a.f.p;
    }
    Fp { v, f: a.f.clone() }
});
fp_binop!(Sub, sub, |a, b| {
    let v = if a.v >= b.v { &a.v - &b.v } else { &a.v + &a.f.p - &b.v };
    Fp { v, f: a.f.clone() }
});
fp_binop!(Mul, mul, |a, b| Fp { v: (&a.v * &b.v) % &a.f.p, f: a.f.clone() });

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.v.is_zero() {
            self
        } else {
            Fp { v: &self.f.p - &self.v, f: self.f }
        }
    }
}

impl Field for Fp {
    type Ctx = Arc<PrimeField>;

    fn ctx(&self) -> Arc<PrimeField> {
        self.f.clone()
    }
    fn zero(ctx: &Arc<PrimeField>) -> Self {
        Fp { v: BigUint::zero(), f: ctx.clone() }
    }
    fn one(ctx: &Arc<PrimeField>) -> Self {
        Fp { v: BigUint::one() % &ctx.p, f: ctx.clone() }
    }
    fn from_bigint(ctx: &Arc<PrimeField>, v: &BigInt) -> Self {
        Fp::from_int(ctx, v)
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn is_one(&self) -> bool {
        self.v.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.v.is_zero() {
            return None;
        }
        let p = BigInt::from(self.f.p.clone());
        let e = BigInt::from(self.v.clone()).extended_gcd(&p);
        Some(Fp { v: modp(&e.x, &self.f.p), f: self.f.clone() })
    }
    fn pow(&self, e: &BigUint) -> Self {
        Fp { v: self.v.modpow(e, &self.f.p), f: self.f.clone() }
    }
}

impl FiniteField for Fp {
    fn order(ctx: &Arc<PrimeField>) -> BigUint {
        ctx.p.clone()
    }
    fn characteristic(ctx: &Arc<PrimeField>) -> BigUint {
        ctx.p.clone()
    }
    fn random<R: Rng + ?Sized>(ctx: &Arc<PrimeField>, rng: &mut R) -> Self {
        Fp { v: rng.gen_biguint_below(&ctx.p), f: ctx.clone() }
    }
    fn nth(ctx: &Arc<PrimeField>, i: &BigUint) -> Self {
        Fp::new(ctx, i.clone())
    }
    fn sort_key(&self) -> Vec<BigUint> {
        vec![self.v.clone()]
    }
    fn frobenius(&self) -> Self {
        self.clone()
    }
    fn is_square(&self) -> bool {
        if self.v.is_zero() || self.f.p == BigUint::from(2u32) {
            return true;
        }
        jacobi(&BigInt::from(self.v.clone()), &self.f.p) == 1
    }
}

/// Square root of `a` modulo the prime `p` (Tonelli-Shanks), returning the
/// smaller of the two roots, or `None` for a non-residue.
pub fn sqrt_mod(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    if *p == BigUint::from(2u32) {
        return Some(a);
    }
    if jacobi(&BigInt::from(a.clone()), p) != 1 {
        return None;
    }
    let one = BigUint::one();
    let pm1 = p - &one;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let r = if s == 1 {
        a.modpow(&((p + &one) >> 2), p)
    } else {
        let mut z = BigUint::from(2u32);
        while jacobi(&BigInt::from(z.clone()), p) != -1 {
            z += 1u32;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) >> 1), p);
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = (&t2 * &t2) % p;
                i += 1;
            }
            let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
            m = i;
            c = (&b * &b) % p;
            t = (&t * &c) % p;
            r = (&r * &b) % p;
        }
        r
    };
    let other = p - &r;
    Some(if other < r { other } else { r })
}
