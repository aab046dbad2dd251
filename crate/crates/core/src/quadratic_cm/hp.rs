//! Fixed-point real and complex arithmetic on `BigInt` mantissas, enough to
//! evaluate the modular j-function at CM points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A real number `m / 2^prec`.
#[derive(Clone, Debug)]
pub struct Real {
    pub m: BigInt,
    pub prec: u64,
}

/// A complex number with shared fixed-point scale.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigInt,
    pub im: BigInt,
    pub prec: u64,
}

fn shr_round(x: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (k - 1);
    (x + half) >> k
}

impl Real {
    pub fn from_int(v: i64, prec: u64) -> Self {
        Real { m: BigInt::from(v) << prec, prec }
    }

    pub fn mul(&self, o: &Real) -> Real {
        Real { m: shr_round(&(&self.m * &o.m), self.prec), prec: self.prec }
    }

    pub fn div_int(&self, d: i64) -> Real {
        Real { m: self.m.div_floor(&BigInt::from(d)), prec: self.prec }
    }

    pub fn add(&self, o: &Real) -> Real {
        Real { m: &self.m + &o.m, prec: self.prec }
    }

    pub fn sub(&self, o: &Real) -> Real {
        Real { m: &self.m - &o.m, prec: self.prec }
    }

    pub fn neg(&self) -> Real {
        Real { m: -&self.m, prec: self.prec }
    }

    /// `sqrt(n)` for a non-negative integer `n`.
    pub fn sqrt_int(n: u64, prec: u64) -> Real {
        let v = BigInt::from(n) << (2 * prec);
        Real { m: v.sqrt(), prec }
    }
}

fn atan_inv(k: u64, prec: u64) -> BigInt {
    // arctan(1/k) = sum (-1)^n / ((2n+1) k^{2n+1})
    let one = BigInt::one() << prec;
    let k2 = BigInt::from(k * k);
    let mut term = one / BigInt::from(k);
    let mut sum = term.clone();
    let mut n = 1u64;
    while !term.is_zero() {
        term = term / &k2;
        let t = &term / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        n += 1;
    }
    sum
}

pub fn pi(prec: u64) -> Real {
    let g = prec + 16;
    let m = atan_inv(5, g) * 16 - atan_inv(239, g) * 4;
    Real { m: shr_round(&m, 16), prec }
}

pub fn ln2(prec: u64) -> Real {
    // ln 2 = 2 atanh(1/3) = 2 sum 1 / ((2n+1) 3^{2n+1})
    let g = prec + 16;
    let mut term = (BigInt::one() << g) / BigInt::from(3);
    let mut sum = term.clone();
    let mut n = 1u64;
    while !term.is_zero() {
        term = term / BigInt::from(9);
        sum += &term / BigInt::from(2 * n + 1);
        n += 1;
    }
    Real { m: shr_round(&(sum * 2), 16), prec }
}

/// `exp(x)` for a real `x` of moderate magnitude. Large positive results keep
/// full relative precision because the mantissa grows.
pub fn exp(x: &Real) -> Real {
    let prec = x.prec;
    let g = prec + 64;
    let xg = Real { m: &x.m << 64, prec: g };
    let l2 = ln2(g);
    let k = xg.m.div_floor(&l2.m);
    let r = xg.sub(&Real { m: &k * &l2.m, prec: g });
    // exp(r) with r in [0, ln 2): halve 16 times, Taylor, square back.
    let s = 16u64;
    let rs = Real { m: &r.m >> s, prec: g };
    let mut sum = Real::from_int(1, g);
    let mut term = Real::from_int(1, g);
    let mut n = 1i64;
    loop {
        term = term.mul(&rs).div_int(n);
        if term.m.is_zero() {
            break;
        }
        sum = sum.add(&term);
        n += 1;
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    let ki: i64 = k.try_into().expect("exponent fits in i64");
    let m = if ki >= 0 { sum.m << (ki as u64) } else { sum.m >> ((-ki) as u64) };
    Real { m: shr_round(&m, 64), prec }
}

/// `(cos x, sin x)`.
pub fn cos_sin(x: &Real) -> (Real, Real) {
    let prec = x.prec;
    let g = prec + 64;
    let xg = Real { m: &x.m << 64, prec: g };
    let s = 20u64;
    let xs = Real { m: &xg.m >> s, prec: g };
    // exp(i xs) by Taylor, then square s times.
    let mut z = Complex { re: BigInt::one() << g, im: BigInt::zero(), prec: g };
    let mut term = z.clone();
    let mut n = 1i64;
    loop {
        // term *= i xs / n
        let re = -shr_round(&(&term.im * &xs.m), g) / BigInt::from(n);
        let im = shr_round(&(&term.re * &xs.m), g) / BigInt::from(n);
        term = Complex { re, im, prec: g };
        if term.re.is_zero() && term.im.is_zero() {
            break;
        }
        z = z.add(&term);
        n += 1;
    }
    for _ in 0..s {
        z = z.mul(&z);
    }
    (Real { m: shr_round(&z.re, 64), prec }, Real { m: shr_round(&z.im, 64), prec })
}

impl Complex {
    pub fn one(prec: u64) -> Self {
        Complex { re: BigInt::one() << prec, im: BigInt::zero(), prec }
    }

    pub fn zero(prec: u64) -> Self {
        Complex { re: BigInt::zero(), im: BigInt::zero(), prec }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im, prec: self.prec }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im, prec: self.prec }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Complex { re: shr_round(&re, self.prec), im: shr_round(&im, self.prec), prec: self.prec }
    }

    pub fn scale_int(&self, k: &BigInt) -> Complex {
        Complex { re: &self.re * k, im: &self.im * k, prec: self.prec }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let den = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        Complex {
            re: (re << self.prec).div_floor(&den),
            im: (im << self.prec).div_floor(&den),
            prec: self.prec,
        }
    }

    /// Nearest Gaussian integer and the distance (in units of `2^-prec`)
    /// from it in each component.
    pub fn round(&self) -> (BigInt, BigInt, BigInt) {
        let r = shr_round(&self.re, self.prec);
        let i = shr_round(&self.im, self.prec);
        let er = (&self.re - (&r << self.prec)).abs();
        let ei = (&self.im - (&i << self.prec)).abs();
        (r, i, er.max(ei))
    }
}
