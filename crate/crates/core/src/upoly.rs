//! Dense univariate polynomials over any [`Field`], plus root finding over
//! finite fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{ext_build, Field, FiniteField, Fp, Fq};

/// Coefficients low-to-high; the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly<F: Field> {
    ctx: F::Ctx,
    c: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn from_coeffs(ctx: &F::Ctx, c: Vec<F>) -> Self {
        let mut p = UPoly { ctx: ctx.clone(), c };
        p.trim();
        p
    }

    pub fn from_ints(ctx: &F::Ctx, c: &[i64]) -> Self {
        Self::from_coeffs(ctx, c.iter().map(|&n| F::from_int(ctx, n)).collect())
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly { ctx: ctx.clone(), c: Vec::new() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one_in(ctx))
    }

    pub fn constant(a: F) -> Self {
        let ctx = a.ctx();
        Self::from_coeffs(&ctx, vec![a])
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Self::from_coeffs(ctx, vec![F::zero_in(ctx), F::one_in(ctx)])
    }

    /// `x - r`
    pub fn linear_root(r: &F) -> Self {
        let ctx = r.ctx();
        Self::from_coeffs(&ctx, vec![-r.clone(), F::one_in(&ctx)])
    }

    pub fn monomial(a: F, deg: usize) -> Self {
        let ctx = a.ctx();
        let mut c = vec![F::zero_in(&ctx); deg];
        c.push(a);
        Self::from_coeffs(&ctx, c)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`, convenient for comparisons.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::from_coeffs(&self.ctx, self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        let l = self.lc().inv()?;
        Ok(self.scale(&l))
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::zero_in(&self.ctx), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, a)| a.clone() * F::from_int(&self.ctx, i as i64)).collect();
        Self::from_coeffs(&self.ctx, c)
    }

    /// `f(x + r)`
    pub fn shift(&self, r: &F) -> Self {
        let lin = Self::from_coeffs(&self.ctx, vec![r.clone(), F::one_in(&self.ctx)]);
        self.compose(&lin)
    }

    /// `f(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(a.clone());
        }
        acc
    }

    /// `x^n f(1/x)`; requires `n ≥ deg f`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.deg() <= n as isize);
        let mut c = vec![F::zero_in(&self.ctx); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::from_coeffs(&self.ctx, c)
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::from_coeffs(ctx, self.c.iter().map(f).collect())
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let inv = d.lc().inv()?;
        let mut r = self.c.clone();
        let mut q = vec![F::zero_in(&self.ctx); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = r[i + dd].clone() * inv.clone();
            if t.is_zero() {
                continue;
            }
            for j in 0..=dd {
                r[i + j] = r[i + j].clone() - t.clone() * d.c[j].clone();
            }
            q[i] = t;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(&self.ctx, q), Self::from_coeffs(&self.ctx, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors if there is a remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc().inv().expect("nonzero");
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Result<Self> {
        let (g, s, _) = self.rem(m)?.xgcd(m);
        if !g.is_one() {
            return Err(Error::ZeroInverse);
        }
        s.rem(m)
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        (self * other).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Self::one(&self.ctx).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Product of `x - r` over the given roots.
    pub fn from_roots(ctx: &F::Ctx, roots: &[F]) -> Self {
        roots.iter().fold(Self::one(ctx), |acc, r| &acc * &Self::linear_root(r))
    }
}

impl<F: FiniteField> UPoly<F> {
    /// `x^(q^n) mod self` where `q` is the field order.
    fn frobenius_power(&self, n: usize) -> Result<Self> {
        let q = F::order(&self.ctx);
        let mut t = Self::x(&self.ctx).rem(self)?;
        for _ in 0..n {
            t = t.powmod(&q, self)?;
        }
        Ok(t)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = Self::x(&self.ctx);
        let Ok(full) = self.frobenius_power(n) else { return false };
        if full != x.rem(self).unwrap() {
            return false;
        }
        for r in prime_divisors(n) {
            let t = self.frobenius_power(n / r).unwrap();
            if self.gcd(&(&t - &x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self) -> Result<Vec<(usize, Self)>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let x = Self::x(&self.ctx);
        let q = F::order(&self.ctx);
        let mut rest = self.monic()?;
        let mut out = Vec::new();
        let mut h = x.rem(&rest)?;
        let mut d = 0;
        while rest.deg() >= 2 * (d as isize + 1) {
            d += 1;
            h = h.powmod(&q, &rest)?;
            let g = rest.gcd(&(&h - &x));
            if g.deg() > 0 {
                rest = rest.div_exact(&g)?;
                h = h.rem(&rest)?;
                out.push((d, g));
            }
        }
        if rest.deg() > 0 {
            out.push((rest.degree().unwrap(), rest));
        }
        Ok(out)
    }

    /// All roots lying in the coefficient field (without multiplicity).
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<F>> {
        if self.is_zero() {
            return Err(Error::Invalid("roots of the zero polynomial".into()));
        }
        let x = Self::x(&self.ctx);
        let q = F::order(&self.ctx);
        let f = self.monic()?;
        let xq = x.powmod(&q, &f)?;
        let split = f.gcd(&(&xq - &x));
        let mut out = Vec::new();
        split_linear(split, rng, &mut out)?;
        Ok(out)
    }
}

/// Equal-degree splitting of a product of distinct linear factors.
fn split_linear<F: FiniteField, R: Rng + ?Sized>(f: UPoly<F>, rng: &mut R, out: &mut Vec<F>) -> Result<()> {
    match f.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let r = -(f.coeff(0) * f.lc().inv()?);
            out.push(r);
            return Ok(());
        }
        _ => {}
    }
    let ctx = f.ctx().clone();
    let e = (F::order(&ctx) - 1u32) >> 1;
    loop {
        let delta = F::random(&ctx, rng);
        let lin = UPoly::from_coeffs(&ctx, vec![delta, F::one_in(&ctx)]);
        let t = &lin.powmod(&e, &f)? - &UPoly::one(&ctx);
        let g = f.gcd(&t);
        if g.deg() > 0 && g.deg() < f.deg() {
            let other = f.div_exact(&g)?;
            split_linear(g, rng, out)?;
            split_linear(other, rng, out)?;
            return Ok(());
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A root of a prime-field polynomial, living in its minimal extension.
#[derive(Clone, Debug)]
pub struct ExtRoot {
    pub root: Fq,
    pub degree: usize,
}

/// All roots of a squarefree `u` over 𝔽_p that lie in extensions of degree
/// at most `max_degree`, each tagged with its minimal field.
pub fn roots_in_ext(u: &UPoly<Fp>, max_degree: usize, seed: u64) -> Result<Vec<ExtRoot>> {
    let p = u.ctx().p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (d, factor) in u.distinct_degree()? {
        if d > max_degree {
            continue;
        }
        let ext = ext_build(p, d, seed)?;
        let lifted = factor.map(&ext, |a| Fq::from_base(&ext, *a));
        for root in lifted.roots(&mut rng)? {
            out.push(ExtRoot { root, degree: d });
        }
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})*x")?,
                _ => write!(f, "({a})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field + Serialize> Serialize for UPoly<F> {
    /// Coefficient array, low to high.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.c.serialize(s)
    }
}

impl<'a, F: Field> Add<&'a UPoly<F>> for &'a UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        UPoly::from_coeffs(&self.ctx, c)
    }
}

impl<'a, F: Field> Sub<&'a UPoly<F>> for &'a UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        UPoly::from_coeffs(&self.ctx, c)
    }
}

impl<'a, F: Field> Mul<&'a UPoly<F>> for &'a UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut c = vec![F::zero_in(&self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::from_coeffs(&self.ctx, c)
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly::from_coeffs(&self.ctx, self.c.iter().map(|a| -a.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for UPoly<F> {
            type Output = UPoly<F>;
            fn $m(self, o: UPoly<F>) -> UPoly<F> {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        -&self
    }
}

/// Dense bivariate polynomial `Σ c[i][j] x^i z^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly<F: Field> {
    ctx: F::Ctx,
    c: Vec<Vec<F>>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        BiPoly { ctx: ctx.clone(), c: Vec::new() }
    }

    pub fn constant(a: F) -> Self {
        BiPoly { ctx: a.ctx(), c: vec![vec![a]] }
    }

    /// `f(x)` viewed as a bivariate polynomial.
    pub fn from_x(f: &UPoly<F>) -> Self {
        BiPoly { ctx: f.ctx().clone(), c: f.coeffs().iter().map(|a| vec![a.clone()]).collect() }
    }

    /// `f(z)` viewed as a bivariate polynomial.
    pub fn from_z(f: &UPoly<F>) -> Self {
        BiPoly { ctx: f.ctx().clone(), c: vec![f.coeffs().to_vec()] }
    }

    pub fn from_terms(ctx: &F::Ctx, terms: &[(usize, usize, F)]) -> Self {
        let mut b = Self::zero(ctx);
        for (i, j, a) in terms {
            let cur = b.coeff(*i, *j);
            b.set(*i, *j, cur + a.clone());
        }
        b
    }

    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.c.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn set(&mut self, i: usize, j: usize, a: F) {
        if self.c.len() <= i {
            self.c.resize(i + 1, Vec::new());
        }
        let row = &mut self.c[i];
        if row.len() <= j {
            row.resize(j + 1, F::zero_in(&self.ctx));
        }
        row[j] = a;
    }

    pub fn degree_x(&self) -> Option<usize> {
        (0..self.c.len()).rev().find(|&i| self.c[i].iter().any(|a| !a.is_zero()))
    }

    pub fn degree_z(&self) -> Option<usize> {
        self.c.iter().filter_map(|row| (0..row.len()).rev().find(|&j| !row[j].is_zero())).max()
    }

    pub fn eval(&self, x: &F, z: &F) -> F {
        self.eval_x(x).eval(z)
    }

    /// Specialize `x`, leaving a polynomial in `z`.
    pub fn eval_x(&self, x: &F) -> UPoly<F> {
        let width = self.c.iter().map(Vec::len).max().unwrap_or(0);
        let c = (0..width)
            .map(|j| (0..self.c.len()).rev().fold(F::zero_in(&self.ctx), |acc, i| acc * x.clone() + self.coeff(i, j)))
            .collect();
        UPoly::from_coeffs(&self.ctx, c)
    }

    /// Specialize `z`, leaving a polynomial in `x`.
    pub fn eval_z(&self, z: &F) -> UPoly<F> {
        let c = self
            .c
            .iter()
            .map(|row| row.iter().rev().fold(F::zero_in(&self.ctx), |acc, a| acc * z.clone() + a.clone()))
            .collect();
        UPoly::from_coeffs(&self.ctx, c)
    }

    /// `f(z, x)`
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (i, row) in self.c.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    out.set(j, i, a.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &F) -> Self {
        BiPoly {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|row| row.iter().map(|b| b.clone() * a.clone()).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (i1, r1) in self.c.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in o.c.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        let cur = out.coeff(i1 + i2, j1 + j2);
                        out.set(i1 + i2, j1 + j2, cur + a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, row) in o.c.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                let cur = out.coeff(i, j);
                out.set(i, j, cur + b.clone());
            }
        }
        out
    }

    /// Nonzero terms `(i, j, c)`, in increasing `(i, j)` order.
    pub fn terms(&self) -> Vec<(usize, usize, F)> {
        let mut out = Vec::new();
        for (i, row) in self.c.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    out.push((i, j, a.clone()));
                }
            }
        }
        out
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly { ctx: ctx.clone(), c: self.c.iter().map(|row| row.iter().map(&f).collect()).collect() }
    }
}

impl<F: Field + Serialize> Serialize for BiPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, T> {
            e: [usize; 2],
            c: &'a T,
        }
        let terms = self.terms();
        let out: Vec<Term<'_, F>> = terms.iter().map(|(i, j, c)| Term { e: [*i, *j], c }).collect();
        out.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> UPoly<Fp> {
        UPoly::from_ints(&fp(p), c)
    }

    #[test]
    fn divrem_roundtrip() {
        let a = poly(101, &[3, 0, 5, 7, 1]);
        let b = poly(101, &[1, 2, 3]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
        assert_eq!(a.divrem(&UPoly::zero(&fp(101))).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn xgcd_bezout() {
        let a = poly(13, &[1, 0, 1, 1]);
        let b = poly(13, &[5, 1, 0, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let common = poly(13, &[2, 1]);
        assert!((&a * &common).gcd(&(&b * &common)).deg() >= 1);
    }

    #[test]
    fn shift_and_reverse() {
        let f = poly(101, &[1, 2, 3]);
        let r = fp(101).elem(5);
        assert_eq!(f.shift(&r).eval(&fp(101).elem(0)), f.eval(&r));
        assert_eq!(f.reverse(3), poly(101, &[0, 3, 2, 1]));
    }

    #[test]
    fn roots_in_prime_field() {
        let f = poly(13, &[-4, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut r: Vec<u64> = f.roots(&mut rng).unwrap().into_iter().map(|e| e.value()).collect();
        r.sort();
        assert_eq!(r, vec![2, 11]);
    }

    #[test]
    fn roots_in_extensions() {
        let got = roots_in_ext(&poly(13, &[-4, 0, 1]), 1, 0).unwrap();
        let mut r: Vec<u64> = got.iter().map(|e| e.root.to_base().unwrap().value()).collect();
        r.sort();
        assert_eq!(r, vec![2, 11]);

        let got = roots_in_ext(&poly(5, &[-2, 0, 1]), 2, 0).unwrap();
        assert_eq!(got.len(), 2);
        assert!(got.iter().all(|e| e.degree == 2));
        assert_ne!(got[0].root, got[1].root);
        let u = poly(5, &[-2, 0, 1]);
        for e in &got {
            let lifted = u.map(e.root.field(), |a| Fq::from_base(e.root.field(), *a));
            assert!(lifted.eval(&e.root).is_zero());
        }
        // exhaustive scan of 𝔽_25 finds exactly the same two roots
        let ext = got[0].root.field().clone();
        let lifted = u.map(&ext, |a| Fq::from_base(&ext, *a));
        let scan: Vec<Fq> =
            (0..25).map(|i| Fq::from_raw(&ext, ext.from_index(i))).filter(|x| lifted.eval(x).is_zero()).collect();
        assert_eq!(scan.len(), 2);
        assert!(scan.contains(&got[0].root) && scan.contains(&got[1].root));

        assert_eq!(roots_in_ext(&poly(7, &[1, -2, 1]), 1, 0).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn root_count_matches_degree_when_bound_allows() {
        // (x^2 - 2)(x^3 + x + 1)(x - 3) over 𝔽_5
        let u = &(&poly(5, &[-2, 0, 1]) * &poly(5, &[1, 1, 0, 1])) * &poly(5, &[-3, 1]);
        assert!(u.is_squarefree());
        let r = roots_in_ext(&u, 6, 3).unwrap();
        assert_eq!(r.len(), 6);
        let mut degs: Vec<usize> = r.iter().map(|e| e.degree).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 2, 3, 3, 3]);
        assert_eq!(roots_in_ext(&u, 2, 3).unwrap().len(), 3);
    }

    #[test]
    fn rational_polys() {
        let ctx = ();
        let f: UPoly<Rational> = UPoly::from_ints(&ctx, &[-1, 0, 1]);
        let g: UPoly<Rational> = UPoly::from_ints(&ctx, &[1, 1]);
        assert_eq!(f.gcd(&g), g);
        assert!(f.is_squarefree());
        assert!(!(&f * &g).is_squarefree());
    }

    #[test]
    fn bipoly_slices() {
        let k = fp(101);
        let e = |n: i64| k.from_i64(n);
        // x^2 z + 3 x + 5 z^2
        let b = BiPoly::from_terms(&k, &[(2, 1, e(1)), (1, 0, e(3)), (0, 2, e(5))]);
        let (x, z) = (e(7), e(11));
        let direct = e(49 * 11 + 21 + 5 * 121);
        assert_eq!(b.eval(&x, &z), direct);
        assert_eq!(b.eval_x(&x).eval(&z), direct);
        assert_eq!(b.eval_z(&z).eval(&x), direct);
        assert_eq!(b.swap().eval(&z, &x), direct);
        assert_eq!(b.degree_x(), Some(2));
        assert_eq!(b.degree_z(), Some(2));
    }
}
