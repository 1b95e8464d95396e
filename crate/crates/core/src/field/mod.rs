//! Scalar fields: the rationals, prime fields and small extensions of prime
//! fields.
//!
//! All algorithms in this crate are written against [`Field`]. Unlike
//! `num_traits::Zero`/`One`, constants are built from an explicit context,
//! because the modulus of a finite field is only known at runtime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::Result;

mod ext;
mod prime;
mod rational;

pub use ext::{ext_build, ExtField, Fq, MAX_EXT_DEGREE};
pub use prime::{is_prime_u64, Fp, PrimeField};
pub use rational::Rational;

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// Characteristic; zero for ℚ.
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse; fails with `ZeroInverse` on zero.
    fn inv(&self) -> Result<Self>;

    /// A square root if one exists in this field. The root returned is
    /// deterministic for a given element and context.
    fn sqrt(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }

    fn zero_like(&self) -> Self {
        Self::zero_in(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one_in(&self.ctx())
    }

    fn int_like(&self, n: i64) -> Self {
        Self::from_int(&self.ctx(), n)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

/// Finite fields of odd characteristic.
pub trait FiniteField: Field {
    fn order(ctx: &Self::Ctx) -> BigUint;
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc * self.clone();
            }
        }
        acc
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let q = Self::order(&self.ctx());
        let e = (q - 1u32) >> 1;
        self.pow_big(&e).is_one()
    }

    /// Both square roots `{r, -r}` (a single `0` for zero), or `None`.
    fn sqrt_pair(&self) -> Option<Vec<Self>> {
        let r = self.sqrt()?;
        if r.is_zero() {
            Some(vec![r])
        } else {
            let n = -r.clone();
            Some(vec![r, n])
        }
    }
}

/// Tonelli–Shanks in a field of order `q` given a fixed non-residue.
pub(crate) fn tonelli_shanks<F: FiniteField>(a: &F, nonresidue: &F) -> Option<F> {
    if a.is_zero() {
        return Some(a.clone());
    }
    if !a.is_square() {
        return None;
    }
    let q = F::order(&a.ctx());
    let mut t = q - 1u32;
    let mut s = 0u32;
    while !t.bit(0) {
        t >>= 1;
        s += 1;
    }
    let mut m = s;
    let mut c = nonresidue.pow_big(&t);
    let mut x = a.pow_big(&((&t + BigUint::one()) >> 1));
    let mut b = a.pow_big(&t);
    while !b.is_one() {
        let mut i = 0u32;
        let mut b2 = b.clone();
        while !b2.is_one() {
            b2 = b2.square();
            i += 1;
        }
        let mut f = c.clone();
        for _ in 0..(m - i - 1) {
            f = f.square();
        }
        x = x * f.clone();
        c = f.square();
        b = b * c.clone();
        m = i;
    }
    Some(x)
}
