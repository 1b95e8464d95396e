//! Divisor classes on hyperelliptic curves in Mumford representation.
//!
//! Arithmetic runs on an odd-degree model `Y² = F(u)` obtained from an
//! even-degree model by sending a rational branch point `r` to infinity:
//! `x = r + 1/u`, `y = Y/u^(g+1)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct OddModel<F: Field> {
    /// The even-degree `f` this model came from.
    pub source: UPoly<F>,
    /// The branch point sent to infinity.
    pub r: F,
    /// `F(u) = u^(2g+2)·f(r + 1/u)`, of degree `2g + 1`.
    pub f: UPoly<F>,
    pub genus: usize,
}

/// A point of the odd model; `Inf` is its unique point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pt<F> {
    Inf,
    Aff(F, F),
}

impl<F: Field> OddModel<F> {
    pub fn from_even(f: &UPoly<F>, r: &F) -> Result<Arc<Self>> {
        let d = f.degree().unwrap_or(0);
        if d < 4 || !d.is_multiple_of(2) {
            return Err(Error::InvalidDegree(d));
        }
        if !f.eval(r).is_zero() {
            return Err(Error::NotARoot);
        }
        let odd = f.shift(r).reverse(d);
        if odd.degree() != Some(d - 1) || !odd.is_squarefree() {
            return Err(Error::SingularResult);
        }
        Ok(Arc::new(OddModel { source: f.clone(), r: r.clone(), f: odd, genus: d / 2 - 1 }))
    }

    /// A model whose defining polynomial already has odd degree.
    pub fn from_odd(f: &UPoly<F>) -> Result<Arc<Self>> {
        let d = f.degree().unwrap_or(0);
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::InvalidDegree(d));
        }
        if !f.is_squarefree() {
            return Err(Error::SingularResult);
        }
        Ok(Arc::new(OddModel { source: f.clone(), r: F::zero_in(f.ctx()), f: f.clone(), genus: (d - 1) / 2 }))
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.f.ctx()
    }

    pub fn contains(&self, p: &Pt<F>) -> bool {
        match p {
            Pt::Inf => true,
            Pt::Aff(u, y) => y.square() == self.f.eval(u),
        }
    }

    /// Even-model `(x, y)` to the odd model. `x = r` goes to infinity.
    pub fn to_odd(&self, x: &F, y: &F) -> Result<Pt<F>> {
        if !(y.square() == self.source.eval(x)) {
            return Err(Error::NotOnCurve);
        }
        let d = x.clone() - self.r.clone();
        if d.is_zero() {
            return Ok(Pt::Inf);
        }
        let u = d.inv()?;
        Ok(Pt::Aff(u.clone(), y.clone() * u.pow(self.genus as u64 + 1)))
    }

    /// Odd-model `(u, Y)` with `u ≠ 0` back to the even model.
    pub fn to_even(&self, u: &F, yy: &F) -> Result<(F, F)> {
        let ui = u.inv()?;
        Ok((self.r.clone() + ui.clone(), yy.clone() * ui.pow(self.genus as u64 + 1)))
    }

    /// Transport an even-model Mumford pair `(u, v)` (support away from
    /// `x = r` and infinity) to this model.
    pub fn class_from_even(self: &Arc<Self>, u: &UPoly<F>, v: &UPoly<F>) -> Result<DivClass<F>> {
        let d = u.degree().ok_or(Error::DivisionByZero)?;
        if d == 0 {
            return Ok(DivClass::identity(self));
        }
        let ctx = self.ctx();
        // u(r + 1/w)·w^d and v(r + 1/w)·w^(g+1), both reduced mod the new u
        let uw = u.shift(&self.r).reverse(d);
        if uw.degree() != Some(d) {
            return Err(Error::BadFiber);
        }
        let uw = uw.monic()?;
        let n = (self.genus + 1).max(v.degree().unwrap_or(0));
        let vw = v.shift(&self.r).reverse(n);
        let w = UPoly::x(ctx);
        let vw = if n > self.genus + 1 {
            // divide by w^(n − g − 1) modulo uw
            let winv = w.inv_mod(&uw)?;
            let mut acc = vw.rem(&uw)?;
            for _ in 0..n - self.genus - 1 {
                acc = acc.mulmod(&winv, &uw)?;
            }
            acc
        } else {
            vw.rem(&uw)?
        };
        DivClass::from_mumford(self, uw, vw)
    }

    /// Map into another field (typically an extension).
    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G + Copy) -> OddModel<G> {
        OddModel { source: self.source.map(ctx, f), r: f(&self.r), f: self.f.map(ctx, f), genus: self.genus }
    }
}

/// A reduced divisor class `(u, v)`: `u` monic, `deg v < deg u ≤ g`,
/// `u | v² − F`.
#[derive(Clone)]
pub struct DivClass<F: Field> {
    model: Arc<OddModel<F>>,
    u: UPoly<F>,
    v: UPoly<F>,
}

impl<F: Field> PartialEq for DivClass<F> {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.model, &o.model) || self.model == o.model) && self.u == o.u && self.v == o.v
    }
}

impl<F: Field> Eq for DivClass<F> {}

impl<F: Field> fmt::Debug for DivClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u = {}, v = {})", self.u, self.v)
    }
}

impl<F: Field> DivClass<F> {
    pub fn identity(model: &Arc<OddModel<F>>) -> Self {
        let ctx = model.ctx();
        DivClass { model: model.clone(), u: UPoly::one(ctx), v: UPoly::zero(ctx) }
    }

    /// Any semi-reduced pair; the result is reduced.
    pub fn from_mumford(model: &Arc<OddModel<F>>, u: UPoly<F>, v: UPoly<F>) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let u = u.monic()?;
        let v = v.rem(&u)?;
        if !(&(&v * &v) - &model.f).rem(&u)?.is_zero() {
            return Err(Error::NotOnCurve);
        }
        Ok(Self::reduce(model, u, v))
    }

    /// Class of `[P] − [∞]`.
    pub fn from_point(model: &Arc<OddModel<F>>, p: &Pt<F>) -> Result<Self> {
        if !model.contains(p) {
            return Err(Error::NotOnCurve);
        }
        match p {
            Pt::Inf => Ok(Self::identity(model)),
            Pt::Aff(x, y) => {
                Ok(DivClass { model: model.clone(), u: UPoly::linear_root(x), v: UPoly::constant(y.clone()) })
            }
        }
    }

    pub fn model(&self) -> &Arc<OddModel<F>> {
        &self.model
    }

    pub fn u(&self) -> &UPoly<F> {
        &self.u
    }

    pub fn v(&self) -> &UPoly<F> {
        &self.v
    }

    /// Number of points in the support (counted over the closure).
    pub fn weight(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    fn reduce(model: &Arc<OddModel<F>>, mut u: UPoly<F>, mut v: UPoly<F>) -> Self {
        let g = model.genus;
        while u.deg() > g as isize {
            let num = &model.f - &(&v * &v);
            u = num.div_exact(&u).expect("u divides F − v²").monic().expect("nonzero");
            v = (-&v).rem(&u).expect("nonzero");
        }
        DivClass { model: model.clone(), u, v }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.model, &o.model) || self.model == o.model {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    /// Cantor composition followed by reduction.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let (u1, v1, u2, v2) = (&self.u, &self.v, &o.u, &o.v);
        let (d1, e1, e2) = u1.xgcd(u2);
        let (d, c1, s3) = d1.xgcd(&(v1 + v2));
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let u = (u1 * u2).div_exact(&(&d * &d))?;
        let num = &(&(&s1 * &(u1 * v2)) + &(&s2 * &(u2 * v1))) + &(&s3 * &(&(v1 * v2) + &self.model.f));
        let v = num.div_exact(&d)?.rem(&u)?;
        Ok(Self::reduce(&self.model, u, v))
    }

    pub fn neg(&self) -> Self {
        DivClass { model: self.model.clone(), u: self.u.clone(), v: (-&self.v).rem(&self.u).expect("monic") }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn double(&self) -> Self {
        self.add(self).expect("same curve")
    }

    /// `n·D` by double-and-add.
    pub fn scalar_mul(&self, n: i64) -> Self {
        let base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::identity(&self.model);
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&pow).expect("same curve");
            }
            pow = pow.double();
            k >>= 1;
        }
        acc
    }

    /// Satisfies the Mumford conditions.
    pub fn is_valid(&self) -> bool {
        let g = self.model.genus as isize;
        self.u.is_monic()
            && self.u.deg() <= g
            && self.v.deg() < self.u.deg()
            && (&(&self.v * &self.v) - &self.model.f).rem(&self.u).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Same class on another (typically lifted) model.
    pub fn map_to<G: Field>(&self, model: &Arc<OddModel<G>>, f: impl Fn(&F) -> G + Copy) -> DivClass<G> {
        let ctx = model.ctx();
        DivClass { model: model.clone(), u: self.u.map(ctx, f), v: self.v.map(ctx, f) }
    }

    pub fn to_json(&self) -> Value
    where
        F: Serialize,
    {
        json!({ "u": self.u, "v": self.v })
    }
}

/// `[P] − [Q]`.
pub fn point_class<F: Field>(model: &Arc<OddModel<F>>, p: &Pt<F>, q: &Pt<F>) -> Result<DivClass<F>> {
    let dp = DivClass::from_point(model, p)?;
    let dq = DivClass::from_point(model, q)?;
    dp.sub(&dq)
}

/// A uniformly drawn affine point of the odd model.
pub fn random_point<F: FiniteField, R: Rng + ?Sized>(model: &OddModel<F>, rng: &mut R) -> Pt<F> {
    loop {
        let u = F::random(model.ctx(), rng);
        let rhs = model.f.eval(&u);
        if let Some(roots) = rhs.sqrt_pair() {
            let y = roots[rng.gen_range(0..roots.len())].clone();
            return Pt::Aff(u, y);
        }
    }
}

/// Sum of `g` random points minus `g·∞`; deterministic per seed.
pub fn random_class<F: FiniteField>(model: &Arc<OddModel<F>>, seed: u64) -> DivClass<F> {
    let mut rng = crate::seed::rng(seed);
    random_class_with(model, &mut rng)
}

pub fn random_class_with<F: FiniteField, R: Rng + ?Sized>(model: &Arc<OddModel<F>>, rng: &mut R) -> DivClass<F> {
    let mut acc = DivClass::identity(model);
    for _ in 0..model.genus {
        let p = random_point(model, rng);
        acc = acc.add(&DivClass::from_point(model, &p).expect("on curve")).expect("same curve");
    }
    acc
}
