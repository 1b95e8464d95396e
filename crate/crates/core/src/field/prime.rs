use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::Rng;
use serde::{Serialize, Serializer};

use super::{Field, FiniteField};
use crate::error::{Error, Result};

/// Upper bound on supported primes; products fit comfortably in `u128`.
pub const MAX_PRIME: u64 = 1 << 61;

/// Context of the prime field 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..MAX_PRIME).contains(&p) || !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }

    pub fn from_i64(&self, n: i64) -> Fp {
        self.from_i128(n as i128)
    }

    pub fn from_i128(&self, n: i128) -> Fp {
        self.elem(n.rem_euclid(self.p as i128) as u64)
    }

    /// Smallest quadratic non-residue.
    pub fn nonresidue(&self) -> Fp {
        let mut n = 2;
        loop {
            let e = self.elem(n);
            if legendre(n, self.p) == -1 {
                return e;
            }
            n += 1;
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Element of 𝔽_p, stored as the canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self) -> i128 {
        if self.v > self.p / 2 {
            self.v as i128 - self.p as i128
        } else {
            self.v as i128
        }
    }

    fn sqrt_u64(&self) -> Option<u64> {
        let (a, p) = (self.v, self.p);
        if a == 0 {
            return Some(0);
        }
        if legendre(a, p) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(powmod(a, (p + 1) / 4, p));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.field().nonresidue().v;
        let mut m = s;
        let mut c = powmod(z, q, p);
        let mut t = powmod(a, q, p);
        let mut r = powmod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mulmod(t2, t2, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mulmod(b, b, p);
            }
            r = mulmod(r, b, p);
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            m = i;
        }
        Some(r)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Serialize for Fp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.v.to_string())
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { v: addmod(self.v, o.v, self.p), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { v: submod(self.v, o.v, self.p), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: submod(0, self.v, self.p), p: self.p }
    }
}

impl Field for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn zero_in(ctx: &PrimeField) -> Self {
        ctx.elem(0)
    }

    fn one_in(ctx: &PrimeField) -> Self {
        ctx.elem(1)
    }

    fn from_int(ctx: &PrimeField, n: i64) -> Self {
        ctx.from_i128(n as i128)
    }

    fn characteristic(ctx: &PrimeField) -> u64 {
        ctx.p
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::ZeroInverse);
        }
        // extended Euclid on i128
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.field().from_i128(t0))
    }

    fn sqrt(&self) -> Option<Self> {
        self.sqrt_u64().map(|r| self.field().elem(r))
    }

    fn pow(&self, e: u64) -> Self {
        Fp { v: powmod(self.v, e, self.p), p: self.p }
    }
}

impl FiniteField for Fp {
    fn order(ctx: &PrimeField) -> BigUint {
        BigUint::from(ctx.p)
    }

    fn random<R: Rng + ?Sized>(ctx: &PrimeField, rng: &mut R) -> Self {
        ctx.elem(rng.gen_range(0..ctx.p))
    }

    fn is_square(&self) -> bool {
        legendre(self.v, self.p) >= 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let k = f(101);
        assert_eq!(k.elem(3).inv().unwrap(), k.elem(34));
        assert_eq!(k.elem(1).inv().unwrap(), k.elem(1));
        assert_eq!(f(13).elem(0).inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn sqrt_examples() {
        let k = f(13);
        let mut r = k.elem(4).sqrt_pair().unwrap();
        r.sort_by_key(|e| e.value());
        assert_eq!(r, vec![k.elem(2), k.elem(11)]);
        assert!(f(5).elem(2).sqrt().is_none());
        let k7 = f(7);
        let mut r = k7.elem(2).sqrt_pair().unwrap();
        r.sort_by_key(|e| e.value());
        assert_eq!(r, vec![k7.elem(3), k7.elem(4)]);
        assert_eq!(k.elem(0).sqrt_pair().unwrap(), vec![k.elem(0)]);
    }

    #[test]
    fn exactly_half_the_units_are_squares() {
        for p in (3u64..500).filter(|&p| is_prime_u64(p)) {
            let k = f(p);
            let mut roots = 0;
            for a in k.elements().skip(1) {
                if let Some(r) = a.sqrt() {
                    assert_eq!(r * r, a);
                    roots += 1;
                }
            }
            assert_eq!(roots, (p - 1) / 2, "p = {p}");
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1 << 61).is_err());
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0u64..5000 {
            let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), slow, "{n}");
        }
    }
}
