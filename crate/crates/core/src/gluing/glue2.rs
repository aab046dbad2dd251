use super::{dedupe_curves, Genus2Curve};
use crate::elliptic::EllipticCurve;
use crate::error::{invariant, Result};
use crate::ff::{roots, splitting_field, Field, FiniteField, Fp, Fq, Polynomial};

/// Quantities attached to one root pairing `alpha_i -> beta_i`.
#[derive(Clone, Debug)]
pub struct TwoGluingData {
    pub alpha: [Fq; 3],
    pub beta: [Fq; 3],
    pub a1: Fq,
    pub a2: Fq,
    pub b1: Fq,
    pub b2: Fq,
    pub big_a: Fq,
    pub big_b: Fq,
    pub disc_f: Fq,
    pub disc_g: Fq,
}

#[derive(Clone, Debug)]
pub struct Glue2Output {
    /// `beta_i = gamma_{sigma(i)}`.
    pub sigma: [usize; 3],
    pub data: TwoGluingData,
    pub curve: Genus2Curve,
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn frobenius_permutation(rs: &[Fq]) -> Result<Vec<usize>> {
    rs.iter()
        .map(|r| {
            let fr = r.frobenius();
            rs.iter().position(|s| *s == fr).ok_or_else(|| invariant("root set not Frobenius-stable"))
        })
        .collect()
}

/// `det [[alpha_i, beta_i, 1]]`.
fn pairing_determinant(al: &[Fq; 3], be: &[Fq; 3]) -> Fq {
    al[0].clone() * &(be[2].clone() - &be[1])
        + &(al[1].clone() * &(be[0].clone() - &be[2]))
        + &(al[2].clone() * &(be[1].clone() - &be[0]))
}

fn diff(v: &[Fq; 3], i: usize, j: usize) -> Fq {
    v[i].clone() - &v[j]
}

/// Builds the data of one pairing; `None` when `b2 = 0`.
fn gluing_data(al: [Fq; 3], be: [Fq; 3]) -> Option<TwoGluingData> {
    let (a21, a32, a13) = (diff(&al, 1, 0), diff(&al, 2, 1), diff(&al, 0, 2));
    let (b21, b32, b13) = (diff(&be, 1, 0), diff(&be, 2, 1), diff(&be, 0, 2));
    let b2 = be[0].clone() * &a32 + &(be[1].clone() * &a13) + &(be[2].clone() * &a21);
    if b2.is_zero() {
        return None;
    }
    let a1 = a32.square().div(&b32) + &a21.square().div(&b21) + &a13.square().div(&b13);
    let a2 = al[0].clone() * &b32 + &(al[1].clone() * &b13) + &(al[2].clone() * &b21);
    let b1 = b32.square().div(&a32) + &b21.square().div(&a21) + &b13.square().div(&a13);
    let disc_f = (a21.clone() * &a32 * &a13).square();
    let disc_g = (b21.clone() * &b32 * &b13).square();
    let big_a = disc_g.clone() * &a1.div(&a2);
    let big_b = disc_f.clone() * &b1.div(&b2);
    Some(TwoGluingData { alpha: al, beta: be, a1, a2, b1, b2, big_a, big_b, disc_f, disc_g })
}

/// `-(A a21 a13 x^2 + B b21 b13)(A a32 a21 x^2 + B b32 b21)(A a13 a32 x^2 + B b13 b32)`.
fn h_poly(d: &TwoGluingData) -> Polynomial<Fq> {
    let ctx = d.alpha[0].field().clone();
    let (a21, a32, a13) = (diff(&d.alpha, 1, 0), diff(&d.alpha, 2, 1), diff(&d.alpha, 0, 2));
    let (b21, b32, b13) = (diff(&d.beta, 1, 0), diff(&d.beta, 2, 1), diff(&d.beta, 0, 2));
    let zero = Fq::zero(&ctx);
    let quad = |ax: Fq, bx: Fq| Polynomial::new(&ctx, vec![d.big_b.clone() * &bx, zero.clone(), d.big_a.clone() * &ax]);
    let h = &(&quad(a21.clone() * &a13, b21.clone() * &b13) * &quad(a32.clone() * &a21, b32.clone() * &b21))
        * &quad(a13 * &a32, b13 * &b32);
    -&h
}

/// Every pairing that survives the determinant and equivariance tests, with
/// its curve `y^2 = h`.
pub fn glue2_detailed(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Vec<Glue2Output>> {
    if e1.p() != e2.p() {
        return Err(invariant("curves over different fields"));
    }
    let sf = splitting_field(&e1.cubic())?;
    let sg = splitting_field(&e2.cubic())?;
    if sf.degree() != sg.degree() {
        return Ok(vec![]);
    }
    let field = sf.field.clone();
    let alphas = sf.roots.clone();
    let gammas = roots(&e2.cubic().map(&field, |c| field.embed(c)));
    if alphas.len() != 3 || gammas.len() != 3 {
        return Err(invariant("cubic roots missing from the splitting field"));
    }
    let fa = frobenius_permutation(&alphas)?;
    let fg = frobenius_permutation(&gammas)?;
    let al: [Fq; 3] = [alphas[0].clone(), alphas[1].clone(), alphas[2].clone()];
    let mut out = Vec::new();
    for sigma in PERMUTATIONS {
        // Frob(beta_i) = beta_{Frob(i)}
        if (0..3).any(|i| fg[sigma[i]] != sigma[fa[i]]) {
            continue;
        }
        let be: [Fq; 3] = [gammas[sigma[0]].clone(), gammas[sigma[1]].clone(), gammas[sigma[2]].clone()];
        if pairing_determinant(&al, &be).is_zero() {
            continue;
        }
        let Some(data) = gluing_data(al.clone(), be) else {
            log::debug!("glue2: b2 = 0 for sigma {sigma:?}, pairing skipped");
            continue;
        };
        let h = h_poly(&data);
        let coeffs = h
            .coeffs()
            .iter()
            .map(|c| c.project().ok_or_else(|| invariant("h is not defined over F_p")))
            .collect::<Result<Vec<Fp>>>()?;
        match Genus2Curve::from_poly(Polynomial::new(e1.field(), coeffs)) {
            Ok(c) => out.push(Glue2Output { sigma, data, curve: c.normalized() }),
            Err(e) => log::debug!("glue2: sigma {sigma:?} gives a singular model ({e})"),
        }
    }
    Ok(out)
}

/// Genus-2 curves glued from `E1` and `E2` along their 2-torsion.
pub fn glue2(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Vec<Genus2Curve>> {
    Ok(dedupe_curves(glue2_detailed(e1, e2)?.into_iter().map(|o| o.curve).collect()))
}
