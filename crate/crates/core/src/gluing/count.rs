use super::Genus2Curve;
use crate::arith::{chi_table, mulmod_u64, powmod_u64, to_u64};
use crate::error::{Error, Result};
use num_bigint::BigUint;

const COUNT_BOUND: u64 = 1 << 26;
const COUNT_EXT2_BOUND: u64 = 1 << 13;

/// `t f` as residues, lowest degree first.
fn folded(c: &Genus2Curve, bound: u64) -> Result<(u64, Vec<u64>)> {
    let p = match to_u64(c.p()) {
        Some(p) if p <= bound => p,
        _ => return Err(Error::ModulusTooLarge(format!("point counting over F_{}", c.p()))),
    };
    let t = to_u64(c.t().value()).unwrap();
    let f = c.coeff_values().iter().map(|v| mulmod_u64(to_u64(v).unwrap(), t, p)).collect();
    Ok((p, f))
}

struct Chi {
    p: u64,
    table: Option<Vec<i8>>,
}

impl Chi {
    fn new(p: u64) -> Self {
        Chi { p, table: (p <= 1 << 20).then(|| chi_table(p)) }
    }

    fn at(&self, v: u64) -> i64 {
        match &self.table {
            Some(t) => t[v as usize] as i64,
            None => match powmod_u64(v, (self.p - 1) / 2, self.p) {
                0 => 0,
                1 => 1,
                _ => -1,
            },
        }
    }
}

/// `#C(F_p)` for `t y^2 = f`, including the points at infinity.
pub fn count_points(c: &Genus2Curve) -> Result<BigUint> {
    let (p, g) = folded(c, COUNT_BOUND)?;
    let chi = Chi::new(p);
    let mut total: i64 = 0;
    for x in 0..p {
        let v = g.iter().rev().fold(0u64, |acc, &k| (mulmod_u64(acc, x, p) + k) % p);
        total += 1 + chi.at(v);
    }
    total += if g.len() == 7 { 1 + chi.at(g[6]) } else { 1 };
    Ok(BigUint::from(total as u64))
}

/// `#C(F_{p^2})`, with `F_{p^2} = F_p(s)`, `s^2 = n` a non-residue, and the
/// quadratic character taken through the norm.
pub fn count_points_ext2(c: &Genus2Curve) -> Result<BigUint> {
    let (p, g) = folded(c, COUNT_EXT2_BOUND)?;
    let n = to_u64(c.field().nonresidue()).unwrap();
    let chi = Chi::new(p);
    let mut total: i64 = 0;
    for x0 in 0..p {
        for x1 in 0..p {
            // Horner in F_p(s)
            let (mut r0, mut r1) = (0u64, 0u64);
            for &k in g.iter().rev() {
                let a = (r0 * x0 + r1 * x1 % p * n) % p;
                let b = (r0 * x1 + r1 * x0) % p;
                r0 = (a + k) % p;
                r1 = b;
            }
            let norm = (r0 * r0 % p + p - r1 * r1 % p * n % p) % p;
            total += 1 + chi.at(norm);
        }
    }
    total += if g.len() == 7 { 2 } else { 1 };
    Ok(BigUint::from(total as u64))
}

/// `#J(F_p) = (N1^2 + N2)/2 - p`.
pub fn jacobian_order(c: &Genus2Curve) -> Result<BigUint> {
    let n1 = count_points(c)?;
    let n2 = count_points_ext2(c)?;
    Ok((&n1 * &n1 + n2) / 2u32 - c.p())
}
