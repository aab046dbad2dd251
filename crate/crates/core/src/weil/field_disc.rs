//! Discriminant of `Q[T]/(f)` for monic integral `f`: Dedekind's criterion
//! at each prime whose square divides `disc(f)`, and where it fails, growth
//! of the order by integral elements of `(1/p) O` until `p`-maximal.
use crate::arith::{factor, modp};
use crate::error::{Error, Result};
use crate::ff::{discriminant, factor as factor_poly, Fp, Polynomial, PrimeField, Q};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest number of candidates examined in one enlargement step.
const ENLARGE_CAP: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDiscriminant {
    pub value: BigInt,
    /// `[O_K : Z[x]/(f)]`.
    pub index: BigInt,
}

fn to_fp(c: &[BigInt], f: &std::sync::Arc<PrimeField>) -> Polynomial<Fp> {
    Polynomial::from_bigints(f, c)
}

fn lift(g: &Polynomial<Fp>) -> Vec<BigInt> {
    g.coeffs().iter().map(|c| BigInt::from(c.value().clone())).collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dedekind: with `f = prod g_i^e_i mod p`, `g = prod g_i`, `h = f / g`
/// (lifted), `F = (f - g h)/p`, the order `Z[x]/(f)` is `p`-maximal iff
/// `gcd(F, g, h) = 1` mod `p`.
pub fn dedekind_maximal(f: &[BigInt], p: &BigUint) -> bool {
    let field = PrimeField::new_unchecked(p.clone());
    let fbar = to_fp(f, &field);
    let facs = factor_poly(&fbar, crate::ff::DEFAULT_FACTOR_SEED);
    let mut g = Polynomial::one(&field);
    let mut h = Polynomial::one(&field);
    for (gi, e) in &facs {
        g = &g * gi;
        h = &h * &gi.pow(e - 1);
    }
    let lc = fbar.lc();
    h = h.scale(&lc);
    let gh = int_mul(&lift(&g), &lift(&h));
    let pi = BigInt::from(p.clone());
    let mut big_f: Vec<BigInt> = (0..f.len().max(gh.len()))
        .map(|i| {
            let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
            debug_assert!((&d % &pi).is_zero());
            d / &pi
        })
        .collect();
    while big_f.last().is_some_and(|c| c.is_zero()) {
        big_f.pop();
    }
    let fb = to_fp(&big_f, &field);
    fb.gcd(&g).gcd(&h).degree() == Some(0)
}

type Vec4 = Vec<BigRational>;

/// Arithmetic in `Q[x]/(f)` on coefficient vectors.
struct Algebra {
    f: Vec<BigInt>,
    n: usize,
}

impl Algebra {
    fn mul(&self, a: &Vec4, b: &Vec4) -> Vec4 {
        let n = self.n;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] += &a[i] * &b[j];
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                prod[k - n + i] -= &c * BigRational::from_integer(self.f[i].clone());
            }
        }
        prod.truncate(n);
        prod
    }

    fn basis(&self, i: usize) -> Vec4 {
        let mut v = vec![BigRational::zero(); self.n];
        v[i] = BigRational::one();
        v
    }

    /// Matrix of multiplication by `a` (columns are `a x^i`).
    fn mult_matrix(&self, a: &Vec4) -> Vec<Vec4> {
        let cols: Vec<Vec4> = (0..self.n).map(|i| self.mul(a, &self.basis(i))).collect();
        (0..self.n).map(|r| (0..self.n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    fn trace(&self, a: &Vec4) -> BigRational {
        let m = self.mult_matrix(a);
        (0..self.n).map(|i| m[i][i].clone()).sum()
    }

    /// Characteristic polynomial by Faddeev-LeVerrier, leading coefficient first.
    fn charpoly(&self, a: &Vec4) -> Vec<BigRational> {
        let n = self.n;
        let m = self.mult_matrix(a);
        let mut c = vec![BigRational::one()];
        let mut mk = m.clone();
        for k in 1..=n {
            let tr: BigRational = (0..n).map(|i| mk[i][i].clone()).sum();
            let ck = -tr / BigRational::from_integer(BigInt::from(k));
            c.push(ck.clone());
            // mk = m (mk + ck I)
            let mut t = mk.clone();
            for (i, row) in t.iter_mut().enumerate() {
                row[i] += &ck;
            }
            mk = (0..n)
                .map(|r| (0..n).map(|s| (0..n).map(|j| &m[r][j] * &t[j][s]).sum()).collect())
                .collect();
        }
        c
    }

    fn is_integral(&self, a: &Vec4) -> bool {
        self.charpoly(a).iter().all(|c| c.is_integer())
    }
}

/// Row-style Hermite basis of the lattice spanned by integer rows.
fn hnf(mut rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].magnitude().clone()).unwrap();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[piv][col]);
                let prow = rows[piv].clone();
                for (x, y) in rows[i].iter_mut().zip(prow.iter()) {
                    *x -= &q * y;
                }
            }
        }
        let Some(idx) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut r = rows.remove(idx);
        if r[col].is_negative() {
            r.iter_mut().for_each(|x| *x = -x.clone());
        }
        out.push(r);
    }
    out
}

fn common_denominator(vs: &[Vec4]) -> BigInt {
    vs.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `Z`-basis of the module spanned by `gens`.
fn module_basis(gens: &[Vec4], n: usize) -> Vec<Vec4> {
    let d = common_denominator(gens);
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    hnf(rows, n)
        .into_iter()
        .map(|r| r.into_iter().map(|c| BigRational::new(c, d.clone())).collect())
        .collect()
}

/// Basis of `{c : c T = 0 mod p}` for the Gram matrix `T`.
fn kernel_mod_p(t: &[Vec<BigInt>], p: &BigUint) -> Vec<Vec<u64>> {
    let pu = p.to_u64().expect("small prime");
    let n = t.len();
    // Solve sum_i c_i T[i][j] = 0 for all j; columns of the system are T^T.
    let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| modp(&t[i][j], p).to_u64().unwrap()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let inv = crate::arith::powmod_u64(m[row][col], pu - 2, pu);
        for x in m[row].iter_mut() {
            *x = crate::arith::mulmod_u64(*x, inv, pu);
        }
        for r2 in 0..n {
            if r2 != row && m[r2][col] != 0 {
                let fct = m[r2][col];
                let src = m[row].clone();
                for (x, y) in m[r2].iter_mut().zip(src.iter()) {
                    *x = (*x + pu - crate::arith::mulmod_u64(fct, *y, pu)) % pu;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (pu - m[r][fc]) % pu;
            }
            v
        })
        .collect()
}

/// An integral element of `(1/p) O` outside `O`, if any.
fn integral_overelement(alg: &Algebra, basis: &[Vec4], p: &BigUint) -> Result<Option<Vec4>> {
    let n = alg.n;
    let gram: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| alg.trace(&alg.mul(&basis[i], &basis[j])).to_integer()).collect())
        .collect();
    let ker = kernel_mod_p(&gram, p);
    if ker.is_empty() {
        return Ok(None);
    }
    let pu = p.to_u64().unwrap();
    let total = (pu as u128).checked_pow(ker.len() as u32).unwrap_or(u128::MAX);
    if total > ENLARGE_CAP as u128 {
        return Err(Error::FactorBudgetExceeded(format!(
            "order enlargement at p = {p} needs {total} candidates"
        )));
    }
    let pr = BigRational::from_integer(BigInt::from(pu));
    for idx in 1..total as u64 {
        let mut coeff = vec![0u64; n];
        let mut k = idx;
        for v in &ker {
            let c = k % pu;
            k /= pu;
            for i in 0..n {
                coeff[i] = (coeff[i] + c * v[i]) % pu;
            }
        }
        let mut x = vec![BigRational::zero(); n];
        for i in 0..n {
            if coeff[i] != 0 {
                let c = BigRational::from_integer(BigInt::from(coeff[i]));
                for (xe, be) in x.iter_mut().zip(basis[i].iter()) {
                    *xe += &c * be;
                }
            }
        }
        let x: Vec4 = x.into_iter().map(|c| c / &pr).collect();
        if alg.is_integral(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn det(basis: &[Vec4]) -> BigRational {
    crate::ff::determinant(
        basis.iter().map(|r| r.iter().map(|c| Q(c.clone())).collect()).collect(),
        &(),
    )
    .0
}

/// Discriminant of `Q[T]/(f)` for a monic irreducible `f` given lowest
/// degree first.
pub fn field_discriminant(f: &[BigInt], factor_budget: u64) -> Result<FieldDiscriminant> {
    let n = f.len() - 1;
    if !f[n].is_one() {
        return Err(crate::error::invariant("field_discriminant needs a monic polynomial"));
    }
    let fq: Polynomial<Q> = Polynomial::from_bigints(&(), f);
    let d = discriminant(&fq).0.to_integer();
    if d.is_zero() {
        return Err(Error::NonSeparable);
    }
    let facs = factor(d.magnitude(), factor_budget)?;
    let alg = Algebra { f: f[..n].to_vec(), n };
    let mut basis: Vec<Vec4> = (0..n).map(|i| alg.basis(i)).collect();
    for (p, e) in facs {
        if e < 2 || dedekind_maximal(f, &p) {
            continue;
        }
        while let Some(x) = integral_overelement(&alg, &basis, &p)? {
            let mut gens = basis.clone();
            let mut pw = x.clone();
            for _ in 1..n {
                gens.extend(basis.iter().map(|b| alg.mul(&pw, b)));
                pw = alg.mul(&pw, &x);
            }
            basis = module_basis(&gens, n);
        }
    }
    let dt = det(&basis);
    let index = (BigRational::one() / dt.abs()).to_integer();
    let value = (BigRational::from_integer(d) * &dt * &dt).to_integer();
    Ok(FieldDiscriminant { value, index })
}

