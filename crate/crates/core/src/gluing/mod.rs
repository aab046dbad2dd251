//! Genus-2 curves whose Jacobians are glued from two elliptic curves along
//! their 2- or 3-torsion.
mod appendix;
mod count;
mod glue2;
mod glue3;
mod sextic;

pub use appendix::{appendix_family, AppendixCover, AppendixQuintuple, PkOrbit};
pub use count::{count_points, count_points_ext2, jacobian_order};
pub use glue2::{glue2, glue2_detailed, Glue2Output, TwoGluingData};
pub use glue3::{glue3, glue3_detailed, glue3_detailed_with, quintuples_equivalent, Elimination, Glue3Output};
pub use sextic::{membership_test_6torsion_sextic, sextic_quotients};

use crate::error::{Error, Result};
use crate::ff::{discriminant, Field, FiniteField, Fp, Polynomial, PrimeField};
use num_bigint::BigUint;
use std::fmt;
use std::sync::Arc;

/// `t y^2 = f(x)` with `f` separable of degree 5 or 6.
#[derive(Clone, PartialEq)]
pub struct Genus2Curve {
    t: Fp,
    f: Polynomial<Fp>,
}

impl Genus2Curve {
    pub fn new(t: Fp, f: Polynomial<Fp>) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::MalformedModel("twist scalar is zero".into()));
        }
        if *t.p() <= BigUint::from(3u32) {
            return Err(Error::MalformedModel("characteristic must exceed 3".into()));
        }
        match f.degree() {
            Some(5) | Some(6) => {}
            _ => return Err(Error::MalformedModel("f must have degree 5 or 6".into())),
        }
        if discriminant(&f).is_zero() {
            return Err(Error::MalformedModel("f is not separable".into()));
        }
        Ok(Genus2Curve { t, f })
    }

    /// `y^2 = f(x)`.
    pub fn from_poly(f: Polynomial<Fp>) -> Result<Self> {
        let one = Fp::one(f.ctx());
        Self::new(one, f)
    }

    /// Model `y^2 = g` with `g = t f` rescaled by a square so that its leading
    /// coefficient is 1 or the smallest non-residue.
    pub fn normalized(&self) -> Self {
        let field = self.field().clone();
        let g = self.f.scale(&self.t);
        let lc = g.lc();
        let target = if lc.is_square() { Fp::one(&field) } else { Fp::new(&field, field.nonresidue().clone()) };
        let g = g.scale(&target.div(&lc));
        Genus2Curve { t: Fp::one(&field), f: g }
    }

    pub fn t(&self) -> &Fp {
        &self.t
    }

    pub fn f(&self) -> &Polynomial<Fp> {
        &self.f
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        self.t.field()
    }

    pub fn p(&self) -> &BigUint {
        self.t.p()
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// Coefficients of `f` (lowest first) as integers in `[0, p)`.
    pub fn coeff_values(&self) -> Vec<BigUint> {
        (0..=self.degree()).map(|i| self.f.coeff(i).value().clone()).collect()
    }

    /// Ordering key: twist, then coefficients from the top.
    pub fn sort_key(&self) -> Vec<BigUint> {
        let mut k = vec![self.t.value().clone()];
        k.extend(self.coeff_values().into_iter().rev());
        k
    }
}

impl fmt::Debug for Genus2Curve {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..=self.degree())
            .rev()
            .filter(|&i| !self.f.coeff(i).is_zero())
            .map(|i| match i {
                0 => format!("{}", self.f.coeff(i)),
                1 => format!("{}*x", self.f.coeff(i)),
                _ => format!("{}*x^{}", self.f.coeff(i), i),
            })
            .collect();
        if self.t.is_one() {
            write!(fm, "y^2 = {} over F_{}", terms.join(" + "), self.p())
        } else {
            write!(fm, "{}*y^2 = {} over F_{}", self.t, terms.join(" + "), self.p())
        }
    }
}

impl fmt::Display for Genus2Curve {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, fm)
    }
}

/// Sort by encoding and drop repeats.
pub(crate) fn dedupe_curves(mut cs: Vec<Genus2Curve>) -> Vec<Genus2Curve> {
    cs.sort_by_key(|c| c.sort_key());
    cs.dedup();
    cs
}
