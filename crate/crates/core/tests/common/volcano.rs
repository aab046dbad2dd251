use g2core::arith::primes_below;
use g2core::elliptic::*;
use g2core::quadratic_cm::{class_polynomial, is_fundamental};
use num_traits::ToPrimitive;
use std::collections::{HashMap, VecDeque};

fn order_u64(e: &EllipticCurve) -> u64 {
    ec_order(e).unwrap().to_u64().unwrap()
}

/// Counts pairs `(x, y)` directly.
pub fn brute_order(p: u64, a: u64, b: u64) -> u64 {
    let mut sq = vec![0u64; p as usize];
    for y in 0..p {
        sq[(y * y % p) as usize] += 1;
    }
    1 + (0..p).map(|x| sq[((x * x % p * x + a * x + b) % p) as usize]).sum::<u64>()
}

pub fn modp(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

/// Classical modular polynomials reduced mod `p`, as `(i, j, c)` terms of
/// `sum c X^i Y^j`.
pub fn modular_polynomial(ell: u32) -> Vec<(u32, u32, i128)> {
    if ell == 2 {
        vec![
            (3, 0, 1),
            (0, 3, 1),
            (2, 2, -1),
            (2, 1, 1488),
            (1, 2, 1488),
            (2, 0, -162000),
            (0, 2, -162000),
            (1, 1, 40773375),
            (1, 0, 8748000000),
            (0, 1, 8748000000),
            (0, 0, -157464000000000),
        ]
    } else {
        vec![
            (4, 0, 1),
            (0, 4, 1),
            (3, 3, -1),
            (3, 2, 2232),
            (2, 3, 2232),
            (3, 1, -1069956),
            (1, 3, -1069956),
            (3, 0, 36864000),
            (0, 3, 36864000),
            (2, 2, 2587918086),
            (2, 1, 8900222976000),
            (1, 2, 8900222976000),
            (2, 0, 452984832000000),
            (0, 2, 452984832000000),
            (1, 1, -770845966336000000),
            (1, 0, 1855425871872000000000),
            (0, 1, 1855425871872000000000),
        ]
    }
}

pub fn pw(x: u64, e: u32, p: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * x % p)
}

/// Neighbours of `j` in the `ell`-isogeny graph: roots of `Phi(j, Y)` with
/// multiplicity, by brute force over `Y`.
pub fn phi_neighbours(j: u64, ell: u32, p: u64) -> Vec<(u64, usize)> {
    let terms = modular_polynomial(ell);
    let deg = ell as usize + 1;
    let mut coeffs = vec![0u64; deg + 1];
    for (i, k, c) in &terms {
        coeffs[*k as usize] = (coeffs[*k as usize] + modp(*c, p) * pw(j, *i, p)) % p;
    }
    let mut out = Vec::new();
    for y in 0..p {
        // multiplicity by repeated synthetic division
        let mut c = coeffs.clone();
        let mut mult = 0;
        loop {
            let n = c.len() - 1;
            if n == 0 {
                break;
            }
            let mut q = vec![0u64; n];
            let mut acc = 0u64;
            for i in (0..=n).rev() {
                acc = (acc * y + c[i]) % p;
                if i > 0 {
                    q[i - 1] = acc;
                }
            }
            if acc != 0 {
                break;
            }
            mult += 1;
            c = q;
        }
        if mult > 0 {
            out.push((y, mult));
        }
    }
    out
}

pub fn val(mut n: u64, l: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

/// `f` with `t^2 - 4p = f^2 D_K`.
pub fn conductor(t: i64, p: u64) -> (u64, i64) {
    let d = t * t - 4 * p as i64;
    let mut f = 1u64;
    let mut k = 1u64;
    while k * k <= d.unsigned_abs() {
        if d % (k * k) as i64 == 0 && is_fundamental(d / (k * k) as i64) {
            f = k;
        }
        k += 1;
    }
    (f, d / (f * f) as i64)
}

/// Distance from `j` to the floor of its volcano (vertices with one
/// neighbour counted with multiplicity), or 0 for height 0.
pub fn floor_distance(j: u64, ell: u32, p: u64, height: u32) -> u32 {
    if height == 0 {
        return 0;
    }
    let mut dist = HashMap::from([(j, 0u32)]);
    let mut queue = VecDeque::from([j]);
    while let Some(v) = queue.pop_front() {
        let nb = phi_neighbours(v, ell, p);
        if nb.iter().map(|x| x.1).sum::<usize>() == 1 {
            return dist[&v];
        }
        for (w, _) in nb {
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&v] + 1);
                queue.push_back(w);
            }
        }
    }
    panic!("no floor vertex reachable")
}

/// Subgroup count `ell + 1` against the index of `Z[pi]` read off the modular graph,
/// for every ordinary curve with `j != 0, 1728` over `F_p`, `5 <= p < bound`.
pub fn check_subgroup_equivalence(bound: usize) {
    for p in primes_below(bound).into_iter().filter(|&p| p >= 5) {
        for a in 0..p {
            for b in 0..p {
                let Ok(e) = EllipticCurve::from_i64(p, a as i64, b as i64) else { continue };
                let t = p as i64 + 1 - brute_order(p, a, b) as i64;
                if t == 0 {
                    continue;
                }
                let j = e.j_invariant().value().to_u64().unwrap();
                if j == 0 || j == 1728 % p {
                    continue;
                }
                let (f, _) = conductor(t, p);
                for ell in [2u32, 3] {
                    let h = val(f, ell as u64);
                    let divisible = floor_distance(j, ell, p, h) > 0;
                    let full = count_rank_ell_subgroups(&e, ell).unwrap() == ell as usize + 1;
                    assert_eq!(full, divisible, "p={p} A={a} B={b} ell={ell}");
                }
            }
        }
    }
}

/// Descent from surface curves for every ordinary trace at `5 <= p < bound`:
/// minimal, same order, at most the ell-valuation of the conductor steps,
/// every step an edge of the modular graph.
pub fn check_make_minimal(bound: usize) {
    for p in primes_below(bound).into_iter().filter(|&p| p >= 5) {
        let r = 2 * (p as f64).sqrt() as i64;
        for t in 1..=r {
            if t * t > 4 * p as i64 || t as u64 % p == 0 {
                continue;
            }
            let (f, dk) = conductor(t, p);
            let h = class_polynomial(dk, None).unwrap();
            let n = p as u64 + 1 - t as u64;
            let e = curve_with_order(dk, &(p as u32).into(), &(n as u32).into(), &h).unwrap();
            for ell in [2u32, 3] {
                let d = make_minimal_traced(&e, &h, ell).unwrap();
                assert!(is_minimal(&d.curve, ell).unwrap());
                assert_eq!(order_u64(&d.curve), n);
                assert!(d.steps() as u32 <= val(f, ell as u64));
                // Each step is an edge of the modular graph.
                for w in d.path.windows(2) {
                    let (a, b) = (w[0].value().to_u64().unwrap(), w[1].value().to_u64().unwrap());
                    assert!(phi_neighbours(a, ell, p).iter().any(|x| x.0 == b));
                }
            }
        }
    }
}
