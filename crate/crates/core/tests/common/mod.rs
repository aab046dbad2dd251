#![allow(dead_code)]
pub mod glue_oracles;
pub mod volcano;

use g2core::construct::CurveCertificate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// `#{(x, y) : t y^2 = f(x)}` plus the points at infinity, counting `y` for
/// every `x` directly (no character tables).
pub fn brute_count_u64(p: u64, t: u64, f: &[u64]) -> u64 {
    let mut sq = vec![0u64; p as usize];
    for y in 0..p {
        sq[(y * y % p) as usize] += 1;
    }
    let mut total = 0;
    for x in 0..p {
        let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
        // t y^2 = v  <=>  y^2 = v / t
        let tinv = (1..p).find(|k| k * t % p == 1).unwrap();
        total += sq[(v * tinv % p) as usize];
    }
    let inf = if f.len() == 7 {
        let tinv = (1..p).find(|k| k * t % p == 1).unwrap();
        sq[(f[6] * tinv % p) as usize]
    } else {
        1
    };
    total + inf
}

pub fn cert_count(c: &CurveCertificate) -> u64 {
    let p: u64 = (&c.p.0).try_into().unwrap();
    let t: u64 = (&c.curve.t.0).try_into().unwrap();
    let f: Vec<u64> = c.curve.f_coeffs.iter().map(|x| (&x.0).try_into().unwrap()).collect();
    brute_count_u64(p, t, &f)
}

fn is_skipped(path: &[String]) -> bool {
    // Free parameters that any value satisfies: sampling seeds and ladder
    // bounds that leave the rung unchanged.
    matches!(path.last().map(String::as_str), Some("seed" | "naive_count_bound" | "bsgs_bound"))
}

fn leaves(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                path.push(k.clone());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(i.to_string());
                leaves(x, path, out);
                path.pop();
            }
        }
        _ => {
            if !is_skipped(path) {
                out.push(path.clone())
            }
        }
    }
}

fn get_mut<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match v {
        Value::Object(m) => m.get_mut(k).unwrap(),
        Value::Array(a) => a.get_mut(k.parse::<usize>().unwrap()).unwrap(),
        _ => unreachable!(),
    })
}

const ENUMS: &[&[&str]] = &[
    &["2-torsion", "3-torsion", "3-torsion-after-2-isogeny"],
    &["count", "bsgs", "certificate", "trace-zero"],
    &["naive-count", "bsgs", "certificate"],
];

fn mutate_leaf(v: &mut Value, rng: &mut ChaCha8Rng) {
    match v {
        Value::String(s) => {
            if let Some(group) = ENUMS.iter().find(|g| g.contains(&s.as_str())) {
                let others: Vec<&&str> = group.iter().filter(|x| **x != s.as_str()).collect();
                *s = others[rng.gen_range(0..others.len())].to_string();
            } else if let Ok(n) = s.parse::<num_bigint::BigInt>() {
                let d: i64 = [1, -1, 2, 7][rng.gen_range(0..4)];
                let m = n + d;
                *s = if m.sign() == num_bigint::Sign::Minus && !s.starts_with('-') { (m + 2 * d.abs()).to_string() } else { m.to_string() };
            } else {
                s.push('x');
            }
        }
        Value::Number(n) => {
            let k = n.as_i64().unwrap();
            let d: i64 = [1, -1, 3][rng.gen_range(0..3)];
            let m = if k + d < 0 { k + 1 } else { k + d };
            *v = Value::from(m);
        }
        Value::Bool(b) => *b = !*b,
        Value::Null => *v = Value::from(1),
        _ => unreachable!(),
    }
}

/// `count` single-field mutations of the given certificates, as JSON text.
pub fn mutation_corpus(certs: &[CurveCertificate], count: usize, seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<(Value, Vec<Vec<String>>)> = certs
        .iter()
        .map(|c| {
            let v = serde_json::to_value(c).unwrap();
            let mut out = vec![];
            leaves(&v, &mut vec![], &mut out);
            (v, out)
        })
        .collect();
    let mut corpus = Vec::with_capacity(count);
    while corpus.len() < count {
        let (base, paths) = &bases[rng.gen_range(0..bases.len())];
        let path = &paths[rng.gen_range(0..paths.len())];
        let mut v = base.clone();
        mutate_leaf(get_mut(&mut v, path), &mut rng);
        if v == *base {
            continue;
        }
        corpus.push((path.join("."), serde_json::to_string(&v).unwrap()));
    }
    corpus
}

/// Primitive reduced forms `(a, b, c)` of discriminant `d`, by scanning
/// `a, b, c` directly.
pub fn brute_class_number(d: i64) -> usize {
    let n = -d;
    let mut count = 0;
    for a in 1..=n {
        for b in -a..=a {
            for c in a..=n {
                if b * b - 4 * a * c != d {
                    continue;
                }
                let g = num_integer::gcd(num_integer::gcd(a, b), c);
                if g != 1 || ((b.abs() == a || a == c) && b < 0) {
                    continue;
                }
                count += 1;
            }
        }
    }
    count
}
