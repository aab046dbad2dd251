//! Imaginary quadratic orders: discriminants, reduced forms, Hilbert class
//! polynomials, elements of prescribed norm, and the discriminant search that
//! produces a CM prime.

mod hp;
mod norms;

pub use norms::{bs_search, norm_solutions, BsHit};


use crate::error::{invariant, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// A negative discriminant `D = 0, 1 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant {
    value: i64,
    fundamental: bool,
}

fn squarefree(n: u64) -> bool {
    let mut n = n;
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Fundamental discriminant test for a negative integer.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        if value >= 0 || !matches!(value.rem_euclid(4), 0 | 1) {
            return Err(invariant(format!("{value} is not a negative discriminant")));
        }
        Ok(Discriminant { value, fundamental: is_fundamental(value) })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn is_fundamental(&self) -> bool {
        self.fundamental
    }

    /// Size of the unit group of the order.
    pub fn unit_count(&self) -> usize {
        match self.value {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Fundamental discriminants `-3, -4, -7, -8, ...` with `|D| <= bound`.
pub fn fundamental_discriminants(bound: u64) -> impl Iterator<Item = i64> {
    (3..=bound as i64).map(|n| -n).filter(|&d| is_fundamental(d))
}

/// `(x + y sqrt(D)) / 2` with `x = y D (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticInteger {
    pub x: BigInt,
    pub y: BigInt,
    pub disc: i64,
}

impl QuadraticInteger {
    pub fn new(x: BigInt, y: BigInt, disc: i64) -> Result<Self> {
        if !(&x - &y * disc).is_even() {
            return Err(invariant("x and yD must have the same parity"));
        }
        Ok(QuadraticInteger { x, y, disc })
    }

    pub fn from_int(n: &BigInt, disc: i64) -> Self {
        QuadraticInteger { x: n * 2, y: BigInt::zero(), disc }
    }

    /// `(-1 + sqrt(D)) / 2`-style generator `(s + sqrt(D)) / 2` with `s = D mod 2`.
    pub fn omega(disc: i64) -> Self {
        let s = if disc.rem_euclid(2) == 1 { -1 } else { 0 };
        QuadraticInteger { x: BigInt::from(s), y: BigInt::from(1), disc }
    }

    pub fn norm(&self) -> BigInt {
        (&self.x * &self.x - &self.y * &self.y * self.disc) / 4
    }

    pub fn trace(&self) -> BigInt {
        self.x.clone()
    }

    pub fn conj(&self) -> Self {
        QuadraticInteger { x: self.x.clone(), y: -&self.y, disc: self.disc }
    }

    pub fn neg(&self) -> Self {
        QuadraticInteger { x: -&self.x, y: -&self.y, disc: self.disc }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticInteger { x: &self.x + &o.x, y: &self.y + &o.y, disc: self.disc }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadraticInteger { x: &self.x - &o.x, y: &self.y - &o.y, disc: self.disc }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let x = (&self.x * &o.x + &self.y * &o.y * self.disc) / 2;
        let y = (&self.x * &o.y + &o.x * &self.y) / 2;
        QuadraticInteger { x, y, disc: self.disc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = QuadraticInteger::from_int(&BigInt::from(1), self.disc);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// The units of the maximal order of discriminant `disc`.
    pub fn units(disc: i64) -> Vec<Self> {
        let q = |x: i64, y: i64| QuadraticInteger { x: x.into(), y: y.into(), disc };
        match disc {
            -4 => vec![q(2, 0), q(0, 1), q(-2, 0), q(0, -1)],
            -3 => vec![q(2, 0), q(1, 1), q(-1, 1), q(-2, 0), q(-1, -1), q(1, -1)],
            _ => vec![q(2, 0), q(-2, 0)],
        }
    }
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/2", self.x, self.y, self.disc)
    }
}

/// Primitive positive definite form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Reduced primitive forms of discriminant `d`, sorted by `(a, b)`.
pub fn reduced_forms(d: i64) -> Result<Vec<BinaryForm>> {
    Discriminant::new(d)?;
    let n = d.unsigned_abs();
    let mut out = Vec::new();
    let mut a = 1i64;
    while (3 * a * a) as u64 <= n {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(BinaryForm { a, b, c });
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b));
    Ok(out)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

/// On-disk cache of class polynomials, one `D:<disc> H:<c0>,...,<cn>` line per
/// discriminant. Malformed lines are skipped with a warning.
#[derive(Debug, Default)]
pub struct ClassPolyCache {
    path: Option<PathBuf>,
    map: Mutex<HashMap<i64, Vec<BigInt>>>,
}

fn parse_cache_line(line: &str) -> Option<(i64, Vec<BigInt>)> {
    let rest = line.trim().strip_prefix("D:")?;
    let (d, h) = rest.split_once(" H:")?;
    let d: i64 = d.trim().parse().ok()?;
    let coeffs: Option<Vec<BigInt>> = h.split(',').map(|c| c.trim().parse().ok()).collect();
    let coeffs = coeffs?;
    if coeffs.len() < 2 || coeffs.last() != Some(&BigInt::from(1)) {
        return None;
    }
    Some((d, coeffs))
}

impl ClassPolyCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or lazily creates) the cache file inside `dir`.
    pub fn open(dir: &Path) -> Self {
        let path = dir.join("hilbert.txt");
        let mut map = HashMap::new();
        if let Ok(text) = std::fs::read_to_string(&path) {
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match parse_cache_line(line) {
                    Some((d, h)) => {
                        map.insert(d, h);
                    }
                    None => log::warn!("ignoring corrupt cache line {} in {}", i + 1, path.display()),
                }
            }
        }
        ClassPolyCache { path: Some(path), map: Mutex::new(map) }
    }

    pub fn get(&self, d: i64) -> Option<Vec<BigInt>> {
        self.map.lock().unwrap().get(&d).cloned()
    }

    fn store(&self, d: i64, h: &[BigInt]) {
        let mut map = self.map.lock().unwrap();
        if map.contains_key(&d) {
            return;
        }
        map.insert(d, h.to_vec());
        if let Some(path) = &self.path {
            let line = format!(
                "D:{} H:{}\n",
                d,
                h.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            );
            let res = path
                .parent()
                .map_or(Ok(()), std::fs::create_dir_all)
                .and_then(|_| {
                    std::fs::OpenOptions::new().create(true).append(true).open(path)
                })
                .and_then(|mut f| f.write_all(line.as_bytes()));
            if let Err(e) = res {
                log::warn!("could not append to {}: {e}", path.display());
            }
        }
    }
}

fn j_at_form(form: &BinaryForm, d: i64, prec: u64) -> hp::Complex {
    let w = prec + 64;
    let pi = hp::pi(w);
    let sq = hp::Real::sqrt_int(d.unsigned_abs(), w);
    let y = pi.mul(&sq).div_int(form.a);
    let theta = pi.mul(&hp::Real::from_int(form.b, w)).div_int(form.a);
    let (c, s) = hp::cos_sin(&theta);
    let mq = hp::exp(&y.neg());
    let mqi = hp::exp(&y);
    let q = hp::Complex { re: mq.mul(&c).m, im: mq.mul(&s).neg().m, prec: w };
    let qinv = hp::Complex { re: mqi.mul(&c).m, im: mqi.mul(&s).m, prec: w };
    // Terms until |q|^n < 2^-w; log2 |q| = -y / ln 2.
    let yf = std::f64::consts::PI * (d.unsigned_abs() as f64).sqrt() / form.a as f64;
    let nmax = ((w as f64) * std::f64::consts::LN_2 / yf).ceil() as usize + 2;
    let mut powers = vec![hp::Complex::one(w), q.clone()];
    for n in 2..=nmax {
        let next = powers[n - 1].mul(&q);
        powers.push(next);
    }
    let mut e4 = hp::Complex::one(w);
    for (n, qn) in powers.iter().enumerate().skip(1) {
        let n = n as u64;
        let sigma3: u64 = (1..=n).filter(|k| n % k == 0).map(|k| k * k * k).sum();
        e4 = e4.add(&qn.scale_int(&BigInt::from(240 * sigma3)));
    }
    let mut eta = hp::Complex::one(w);
    let mut k = 1usize;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        if e1 > nmax {
            break;
        }
        let mut t = powers[e1].clone();
        let e2 = k * (3 * k + 1) / 2;
        if e2 <= nmax {
            t = t.add(&powers[e2]);
        }
        eta = if k % 2 == 1 { eta.sub(&t) } else { eta.add(&t) };
        k += 1;
    }
    let eta2 = eta.mul(&eta);
    let eta4 = eta2.mul(&eta2);
    let eta8 = eta4.mul(&eta4);
    let eta24 = eta8.mul(&eta8).mul(&eta8);
    let e4cube = e4.mul(&e4).mul(&e4);
    qinv.mul(&e4cube).div(&eta24)
}

/// Working precision in bits for discriminant `d`.
pub fn precision_bits(d: i64) -> Result<u64> {
    let forms = reduced_forms(d)?;
    let s: f64 = forms.iter().map(|f| 1.0 / f.a as f64).sum();
    Ok((std::f64::consts::PI * (d.unsigned_abs() as f64).sqrt() * s / std::f64::consts::LN_2)
        .ceil() as u64
        + 64)
}

fn class_polynomial_at(d: i64, prec: u64) -> Option<Vec<BigInt>> {
    let forms = reduced_forms(d).ok()?;
    let js: Vec<hp::Complex> = forms.par_iter().map(|f| j_at_form(f, d, prec)).collect();
    let w = js[0].prec;
    let mut poly = vec![hp::Complex::one(w)];
    for j in &js {
        let mut next = vec![hp::Complex::zero(w); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(j));
        }
        poly = next;
    }
    let tol = num_bigint::BigInt::from(1) << (w - 16);
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        let (re, im, err) = c.round();
        if !im.is_zero() || err >= tol {
            return None;
        }
        out.push(re);
    }
    Some(out)
}

/// Hilbert (ring) class polynomial of discriminant `d`, coefficients lowest
/// degree first, via complex evaluation of `j` at the reduced forms.
pub fn class_polynomial(d: i64, cache: Option<&ClassPolyCache>) -> Result<Vec<BigInt>> {
    if let Some(h) = cache.and_then(|c| c.get(d)) {
        return Ok(h);
    }
    let bits = precision_bits(d)?;
    let h = match class_polynomial_at(d, bits) {
        Some(h) => h,
        None => {
            log::warn!("class polynomial for D={d}: retrying at {} bits", 2 * bits);
            class_polynomial_at(d, 2 * bits)
                .ok_or_else(|| Error::PrecisionExhausted(format!("class polynomial D={d}")))?
        }
    };
    if let Some(c) = cache {
        c.store(d, &h);
    }
    Ok(h)
}

/// Human-readable form of an integer polynomial, highest degree first.
pub fn format_int_poly(c: &[BigInt], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let mag = v.abs();
        let sign = if v.is_negative() { "-" } else { "+" };
        let body = match i {
            0 => mag.to_string(),
            _ => {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if mag == BigInt::from(1) {
                    mono
                } else {
                    format!("{mag}*{mono}")
                }
            }
        };
        if parts.is_empty() {
            parts.push(if v.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

