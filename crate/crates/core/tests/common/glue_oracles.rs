use g2core::arith::is_probable_prime;
use g2core::elliptic::{naive_order, EllipticCurve};
use g2core::ff::{discriminant, ExtField, Field, FiniteField, Fp, Fq, Polynomial, PrimeField, Q};
use g2core::gluing::*;
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Arc;

/// Square-root multiplicities over a finite field, by enumeration.
pub fn square_counts<F: FiniteField>(ctx: &F::Ctx) -> (Vec<F>, HashMap<Vec<BigUint>, usize>) {
    let q = F::order(ctx);
    let q: u64 = (&q).try_into().unwrap();
    let elems: Vec<F> = (0..q).map(|i| F::nth(ctx, &BigUint::from(i))).collect();
    let mut sq = HashMap::new();
    for y in &elems {
        *sq.entry(y.square().sort_key()).or_insert(0) += 1;
    }
    (elems, sq)
}

/// `#C(F)` for `t y^2 = f`, from affine pairs plus the points at infinity of the
/// model `t y^2 = x^6 f(1/x)`.
pub fn brute_count<F: FiniteField>(ctx: &F::Ctx, t: &F, f: &[F]) -> usize {
    let (elems, sq) = square_counts::<F>(ctx);
    let ti = t.inv().unwrap();
    let eval = |x: &F| f.iter().rev().fold(F::zero(ctx), |acc, c| acc * x + c);
    let affine: usize = elems.iter().map(|x| sq.get(&(eval(x) * &ti).sort_key()).copied().unwrap_or(0)).sum();
    let at_inf = if f.len() == 7 {
        sq.get(&(f[6].clone() * &ti).sort_key()).copied().unwrap_or(0)
    } else {
        1
    };
    affine + at_inf
}

pub fn count_c(c: &Genus2Curve) -> (usize, usize) {
    let base = c.field().clone();
    let f: Vec<Fp> = c.f().coeffs().to_vec();
    let n1 = brute_count::<Fp>(&base, c.t(), &f);
    let ext = ExtField::new(&base, 2).unwrap();
    let fe: Vec<Fq> = f.iter().map(|x| ext.embed(x)).collect();
    let n2 = brute_count::<Fq>(&ext, &ext.embed(c.t()), &fe);
    (n1, n2)
}

pub fn curves(p: u64) -> Vec<EllipticCurve> {
    let mut out = vec![];
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            if let Ok(e) = EllipticCurve::from_i64(p, a, b) {
                out.push(e);
            }
        }
    }
    out
}

pub fn trace(e: &EllipticCurve) -> i64 {
    let p: u64 = e.p().try_into().unwrap();
    p as i64 + 1 - naive_order(e) as i64
}

/// `#C = p + 1 - t1 - t2` and `(N1^2 + N2)/2 - p = #E1 #E2`.
pub fn assert_split(c: &Genus2Curve, e1: &EllipticCurve, e2: &EllipticCurve) {
    let p: u64 = c.p().try_into().unwrap();
    let (n1, n2) = count_c(c);
    assert_eq!(n1 as i64, p as i64 + 1 - trace(e1) - trace(e2), "{c}");
    assert_eq!((n1 * n1 + n2) / 2 - p as usize, (naive_order(e1) * naive_order(e2)) as usize, "{c}");
}


/// Number of rational roots of the cubic, by evaluation.
pub fn rational_roots(e: &EllipticCurve) -> usize {
    let p: u64 = e.p().try_into().unwrap();
    (0..p).filter(|&x| e.rhs(&Fp::from_i64(e.field(), x as i64)).is_zero()).count()
}

/// Whether some bijection of roots commutes with Frobenius and has nonzero
/// determinant, searched by enumerating the splitting field.
pub fn pairing_exists(e1: &EllipticCurve, e2: &EllipticCurve) -> bool {
    let k = |e: &EllipticCurve| match rational_roots(e) {
        3 => 1,
        1 => 2,
        _ => 3,
    };
    if k(e1) != k(e2) {
        return false;
    }
    let ext = ExtField::new(e1.field(), k(e1)).unwrap();
    let (elems, _) = square_counts::<Fq>(&ext);
    let root_list = |e: &EllipticCurve| -> Vec<Fq> {
        let (a, b) = (ext.embed(e.a()), ext.embed(e.b()));
        elems.iter().filter(|x| (x.square() * *x + &(a.clone() * *x) + &b).is_zero()).cloned().collect()
    };
    let (al, ga) = (root_list(e1), root_list(e2));
    assert_eq!((al.len(), ga.len()), (3, 3));
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms.iter().any(|s| {
        let be: Vec<Fq> = s.iter().map(|&i| ga[i].clone()).collect();
        let equivariant = (0..3).all(|i| {
            let fi = al.iter().position(|x| *x == al[i].frobenius()).unwrap();
            be[i].frobenius() == be[fi]
        });
        let det = al[0].clone() * &(be[1].clone() - &be[2]) - &(al[1].clone() * &(be[0].clone() - &be[2]))
            + &(al[2].clone() * &(be[0].clone() - &be[1]));
        equivariant && !det.is_zero()
    })
}

pub fn glue2_sweep(p: u64) {
    let cs = curves(p);
    let mut nonempty = 0;
    for e1 in &cs {
        for e2 in &cs {
            if rational_roots(e1) != rational_roots(e2) || e1.j_invariant() == e2.j_invariant() {
                continue;
            }
            let out = glue2(e1, e2).unwrap();
            assert_eq!(!out.is_empty(), pairing_exists(e1, e2), "{e1:?} {e2:?}");
            for c in &out {
                assert_split(c, e1, e2);
            }
            nonempty += !out.is_empty() as usize;
        }
    }
    assert!(nonempty > 0);
}

pub fn random_quintuple_fp(rng: &mut ChaCha8Rng, f: &Arc<PrimeField>) -> AppendixQuintuple<Fp> {
    let p: u64 = f.p().try_into().unwrap();
    let mut r = |lo: u64| Fp::new(f, BigUint::from(rng.gen_range(lo..p)));
    loop {
        let (a, b, c, t) = (r(0), r(1), r(0), r(1));
        // 12ac + 16bd = 1
        let d = (Fp::one(f) - &(Fp::from_i64(f, 12) * &a * &c)).div(&(Fp::from_i64(f, 16) * &b));
        if let Ok(q) = AppendixQuintuple::new(a, b, c, d, t) {
            return q;
        }
    }
}

pub fn random_quintuple_q(rng: &mut ChaCha8Rng) -> AppendixQuintuple<Q> {
    let mut r = |nonzero: bool| loop {
        let v = Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        if !nonzero || !v.is_zero() {
            return v;
        }
    };
    loop {
        let (a, b, c, t) = (r(false), r(true), r(false), r(true));
        let d = (Q::int(1) - &(Q::int(12) * &a * &c)).div(&(Q::int(16) * &b));
        if let Ok(q) = AppendixQuintuple::new(a, b, c, d, t) {
            return q;
        }
    }
}

/// `j` of `y^2 = x^3 + e2 x^2 + e1 x + e0` through the depressed cubic.
pub fn j_of_cubic<F: Field>(f: &Polynomial<F>) -> F {
    let ctx = f.ctx().clone();
    let k = |v: i64| F::from_i64(&ctx, v);
    let (e0, e1, e2) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let a = e1.clone() - &e2.square().div(&k(3));
    let b = k(2) * &e2.square() * &e2 .div(&k(27)) - &(e2.clone() * &e1).div(&k(3)) + &e0;
    let a3 = k(4) * &a.square() * &a;
    (k(1728) * &a3).div(&(a3 + &(k(27) * &b.square())))
}

pub fn eval_rational<F: Field>(r: &(Polynomial<F>, Polynomial<F>), x: &F) -> Option<F> {
    let d = r.1.eval(x);
    (!d.is_zero()).then(|| r.0.eval(x).div(&d))
}

pub fn check_identities<F: Field>(q: &AppendixQuintuple<F>, xs: &[F]) {
    let ctx = q.a.ctx();
    let k = |v: i64| F::from_i64(&ctx, v);
    let cov = appendix_family(q).unwrap();
    assert!(cov.check_maps() && cov.check_differentials());
    // pointwise: f(x) v_i(x)^2 = f_i(u_i(x))
    for x in xs {
        for (u, v, fi) in [(&cov.u1, &cov.v1, &cov.f1), (&cov.u2, &cov.v2, &cov.f2)] {
            if let (Some(uu), Some(vv)) = (eval_rational(u, x), eval_rational(v, x)) {
                assert_eq!(cov.f.eval(x) * &vv.square(), fi.eval(&uu));
            }
        }
    }
    let (d1, d2) = (q.delta1(), q.delta2());
    let pw = |v: i64, e: u32| (0..e).fold(k(1), |acc, _| acc * &k(v));
    let cube = |x: &F| x.square() * x;
    assert_eq!(discriminant(&cov.f), pw(2, 8) * &pw(3, 12) * &cube(&d1) * &cube(&d2));
    assert_eq!(discriminant(&cov.f1), -(k(4) * &k(27) * &d1.square() * &d2));
    assert_eq!(discriminant(&cov.f2), -(k(4) * &k(27) * &d1 * &d2.square()));
    assert_eq!(j_of_cubic(&cov.f1), q.j1());
    assert_eq!(j_of_cubic(&cov.f2), q.j2());
}


pub fn random_prime(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    loop {
        let p = rng.gen_range(lo..hi);
        if is_probable_prime(&BigUint::from(p)) {
            return p;
        }
    }
}
