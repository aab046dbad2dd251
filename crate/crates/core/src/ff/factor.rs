use super::{ExtField, FiniteField, Fp, Fq, Polynomial, PrimeField};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Seed used when callers do not supply one; results never depend on it.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

fn pth_root_poly<F: FiniteField>(f: &Polynomial<F>) -> Polynomial<F> {
    let ctx = f.ctx().clone();
    let p = F::characteristic(&ctx);
    let q = F::order(&ctx);
    let e = &q / &p;
    let pu = p.to_u64_digits().first().copied().unwrap_or(0) as usize;
    let coeffs = f.coeffs().iter().step_by(pu).map(|c| c.pow(&e)).collect();
    Polynomial::new(&ctx, coeffs)
}

/// Square-free decomposition of a nonzero polynomial: pairwise coprime monic
/// square-free factors with multiplicities, sorted by multiplicity.
pub fn squarefree_decomposition<F: FiniteField>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, e)| *e);
    out
}

fn sqf_rec<F: FiniteField>(f: &Polynomial<F>, mult: u32, out: &mut Vec<(Polynomial<F>, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = F::characteristic(f.ctx());
    let pu: u32 = p.try_into().unwrap_or(u32::MAX);
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * mult));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(&pth_root_poly(&c).monic(), mult * pu, out);
    }
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs
/// `(g_d, d)` where `g_d` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree<F: FiniteField>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, usize)> {
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let x = Polynomial::x(&ctx);
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn random_poly<F: FiniteField>(ctx: &F::Ctx, deg: usize, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    Polynomial::new(ctx, (0..deg).map(|_| F::random(ctx, rng)).collect())
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic square-free `f`
/// whose irreducible factors all have degree `d`.
pub fn equal_degree<F: FiniteField>(
    f: &Polynomial<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Polynomial<F>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![f.monic()];
    }
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let qd = q.pow(d as u32);
    loop {
        let a = random_poly::<F>(&ctx, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = if q.is_odd() {
            let b = a.pow_mod(&((&qd - 1u32) >> 1), f);
            f.gcd(&(&b - &Polynomial::one(&ctx)))
        } else {
            // Trace map for characteristic two.
            let bits = qd.bits() - 1;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.mul_mod(&t, f);
                acc = &acc + &t;
            }
            f.gcd(&acc)
        };
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

fn poly_key<F: FiniteField>(f: &Polynomial<F>) -> (usize, Vec<Vec<BigUint>>) {
    (f.degree().unwrap_or(0), f.coeffs().iter().map(|c| c.sort_key()).collect())
}

/// Complete factorization into monic irreducibles with multiplicity, sorted
/// by degree then coefficient encoding. The output does not depend on `seed`.
pub fn factor<F: FiniteField>(f: &Polynomial<F>, seed: u64) -> Vec<(Polynomial<F>, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (s, e) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&s) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, e));
            }
        }
    }
    out.sort_by_key(|(g, _)| poly_key(g));
    out
}

/// Distinct roots in the coefficient field, sorted by their encoding.
pub fn roots<F: FiniteField>(f: &Polynomial<F>) -> Vec<F> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let fm = f.monic();
    let x = Polynomial::x(&ctx);
    let xq = x.pow_mod(&q, &fm);
    let g = fm.gcd(&(&xq - &x));
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
    let mut out: Vec<F> =
        equal_degree(&g, 1, &mut rng).into_iter().map(|h| -h.coeff(0)).collect();
    out.sort_by_key(|r| r.sort_key());
    out
}

/// The smallest extension of `F_p` containing every root of `f`, with the roots.
#[derive(Debug, Clone)]
pub struct SplittingField {
    pub field: Arc<ExtField>,
    pub roots: Vec<Fq>,
}

impl SplittingField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

/// Splitting field of a separable polynomial over `F_p`.
pub fn splitting_field(f: &Polynomial<Fp>) -> Result<SplittingField> {
    let base: Arc<PrimeField> = f.ctx().clone();
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::InvariantViolation("constant polynomial".into()));
    }
    if !f.gcd(&f.derivative()).is_one() {
        return Err(Error::NonSeparable);
    }
    let k = factor(f, DEFAULT_FACTOR_SEED)
        .iter()
        .map(|(g, _)| g.degree().unwrap())
        .fold(1usize, |acc, d| acc.lcm(&d));
    let field = ExtField::new(&base, k)?;
    let emb = f.map(&field, |c| field.embed(c));
    let rts = roots(&emb);
    debug_assert_eq!(rts.len(), f.degree().unwrap());
    Ok(SplittingField { field, roots: rts })
}
