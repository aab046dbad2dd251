//! Prime fields, small-degree extensions, the rationals, and polynomials over
//! them: factorization, resultants, splitting fields.

mod ext;
mod factor;
mod poly;
mod prime;
mod rational;

pub use ext::{ExtField, Fq};
pub use factor::{
    distinct_degree, equal_degree, factor, roots, DEFAULT_FACTOR_SEED, splitting_field, squarefree_decomposition,
    SplittingField,
};
pub use poly::{determinant, discriminant, resultant, sylvester_resultant, Polynomial};
pub use prime::{sqrt_mod, Fp, PrimeField};
pub use rational::Q;

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative field whose elements carry their own context (modulus, etc.).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Ctx: Clone + Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    /// `self / other`; panics on division by zero.
    fn div(&self, other: &Self) -> Self {
        self.clone() * &other.inv().expect("division by zero in field")
    }

    fn pow(&self, e: &BigUint) -> Self {
        let mut r = Self::one(&self.ctx());
        for i in (0..e.bits()).rev() {
            r = r.square();
            if e.bit(i) {
                r = r * self;
            }
        }
        r
    }

    fn pow_u(&self, e: u64) -> Self {
        self.pow(&BigUint::from(e))
    }
}

/// A finite field `F_q`, `q = p^k`.
pub trait FiniteField: Field {
    fn order(ctx: &Self::Ctx) -> BigUint;
    fn characteristic(ctx: &Self::Ctx) -> BigUint;
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;
    /// The `i`-th element in a fixed enumeration of the field, `0 <= i < q`.
    fn nth(ctx: &Self::Ctx, i: &BigUint) -> Self;
    /// Key giving a total order on elements (coefficient vector, lowest first).
    fn sort_key(&self) -> Vec<BigUint>;

    fn frobenius(&self) -> Self {
        self.pow(&Self::characteristic(&self.ctx()))
    }

    fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let q = Self::order(&self.ctx());
        if q.bit(0) {
            self.pow(&((q - 1u32) >> 1)).is_one()
        } else {
            true
        }
    }
}
