use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::prime::{addmod, mulmod, submod};
use super::{tonelli_shanks, Field, FiniteField, Fp, PrimeField};
use crate::error::{Error, Result};
use crate::upoly::UPoly;

pub const MAX_EXT_DEGREE: usize = 6;

type Coeffs = [u64; MAX_EXT_DEGREE];

/// 𝔽_{p^k} = 𝔽_p[t]/(m(t)) with `m` monic irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    k: usize,
    /// low-to-high, length k + 1, monic
    modulus: Vec<u64>,
    nonresidue: Coeffs,
    order: BigUint,
}

/// Builds 𝔽_{p^k} from a seeded search for an irreducible modulus.
pub fn ext_build(p: u64, k: usize, seed: u64) -> Result<Arc<ExtField>> {
    if k == 0 || k > MAX_EXT_DEGREE {
        return Err(Error::InvalidDegree(k));
    }
    let base = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p.rotate_left(17)) ^ (k as u64) << 56);
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        loop {
            let mut c: Vec<Fp> = (0..k).map(|_| Fp::random(&base, &mut rng)).collect();
            c.push(base.elem(1));
            let cand = UPoly::from_coeffs(&base, c);
            if cand.is_irreducible() {
                break cand.coeffs().iter().map(|e| e.value()).collect();
            }
        }
    };
    let order = BigUint::from(p).pow(k as u32);
    let mut ctx = ExtField { base, k, modulus, nonresidue: [0; MAX_EXT_DEGREE], order };
    let probe = Arc::new(ctx.clone());
    loop {
        let cand = Fq::random(&probe, &mut rng);
        if !cand.is_zero() && !cand.is_square() {
            ctx.nonresidue = cand.c;
            break;
        }
    }
    Ok(Arc::new(ctx))
}

impl ExtField {
    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order_u128(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.k as u32)
    }

    #[inline]
    pub fn add_raw(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.p();
        let mut r = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            r[i] = addmod(a[i], b[i], p);
        }
        r
    }

    #[inline]
    pub fn mul_raw(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.p();
        let k = self.k;
        let mut t = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] = addmod(t[i + j], mulmod(a[i], b[j], p), p);
            }
        }
        for d in (k..2 * k - 1).rev() {
            let top = t[d];
            if top == 0 {
                continue;
            }
            for j in 0..k {
                t[d - k + j] = submod(t[d - k + j], mulmod(top, self.modulus[j], p), p);
            }
        }
        let mut r = [0; MAX_EXT_DEGREE];
        r[..k].copy_from_slice(&t[..k]);
        r
    }

    /// Mixed-radix index of an element, in `[0, p^k)`.
    #[inline]
    pub fn index_of(&self, a: &Coeffs) -> usize {
        let p = self.p() as usize;
        a[..self.k].iter().rev().fold(0, |acc, &c| acc * p + c as usize)
    }

    pub fn from_index(&self, mut idx: usize) -> Coeffs {
        let p = self.p() as usize;
        let mut r = [0; MAX_EXT_DEGREE];
        for slot in r.iter_mut().take(self.k) {
            *slot = (idx % p) as u64;
            idx /= p;
        }
        r
    }

    pub fn embed_raw(&self, a: Fp) -> Coeffs {
        let mut r = [0; MAX_EXT_DEGREE];
        r[0] = a.value();
        r
    }
}

/// Element of an extension field.
#[derive(Clone)]
pub struct Fq {
    c: Coeffs,
    ctx: Arc<ExtField>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl Eq for Fq {}

impl Fq {
    pub fn from_coeffs(ctx: &Arc<ExtField>, coeffs: &[u64]) -> Self {
        let mut c = [0; MAX_EXT_DEGREE];
        let p = ctx.p();
        let m = &ctx.modulus;
        // reduce an arbitrary-length coefficient list modulo the field modulus
        let mut t: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        let k = ctx.k;
        for d in (k..t.len()).rev() {
            let top = t[d];
            if top != 0 {
                for j in 0..=k {
                    t[d - k + j] = submod(t[d - k + j], mulmod(top, m[j], p), p);
                }
            }
        }
        for (i, v) in t.into_iter().take(k).enumerate() {
            c[i] = v;
        }
        Fq { c, ctx: ctx.clone() }
    }

    pub fn from_raw(ctx: &Arc<ExtField>, c: Coeffs) -> Self {
        Fq { c, ctx: ctx.clone() }
    }

    pub fn from_base(ctx: &Arc<ExtField>, a: Fp) -> Self {
        assert_eq!(a.modulus(), ctx.p(), "embedding across characteristics");
        Fq { c: ctx.embed_raw(a), ctx: ctx.clone() }
    }

    /// The residue class of the polynomial variable.
    pub fn generator(ctx: &Arc<ExtField>) -> Self {
        Fq::from_coeffs(ctx, &[0, 1])
    }

    /// Back to 𝔽_p when the element lies in the prime subfield.
    pub fn to_base(&self) -> Option<Fp> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.ctx.base.elem(self.c[0]))
        } else {
            None
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.ctx.k]
    }

    pub fn raw(&self) -> &Coeffs {
        &self.c
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.ctx
    }

    /// x ↦ x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Fq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.ctx.k))?;
        for c in self.coeffs() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, o: Fq) -> Fq {
        let c = self.ctx.add_raw(&self.c, &o.c);
        Fq { c, ctx: self.ctx }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, o: Fq) -> Fq {
        let p = self.ctx.p();
        let mut c = [0; MAX_EXT_DEGREE];
        for (i, slot) in c.iter_mut().enumerate().take(self.ctx.k) {
            *slot = submod(self.c[i], o.c[i], p);
        }
        Fq { c, ctx: self.ctx }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, o: Fq) -> Fq {
        let c = self.ctx.mul_raw(&self.c, &o.c);
        Fq { c, ctx: self.ctx }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.ctx.p();
        let mut c = [0; MAX_EXT_DEGREE];
        for (i, slot) in c.iter_mut().enumerate().take(self.ctx.k) {
            *slot = submod(0, self.c[i], p);
        }
        Fq { c, ctx: self.ctx }
    }
}

impl Field for Fq {
    type Ctx = Arc<ExtField>;

    fn ctx(&self) -> Arc<ExtField> {
        self.ctx.clone()
    }

    fn zero_in(ctx: &Arc<ExtField>) -> Self {
        Fq { c: [0; MAX_EXT_DEGREE], ctx: ctx.clone() }
    }

    fn one_in(ctx: &Arc<ExtField>) -> Self {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = 1;
        Fq { c, ctx: ctx.clone() }
    }

    fn from_int(ctx: &Arc<ExtField>, n: i64) -> Self {
        Fq::from_base(ctx, ctx.base.from_i64(n))
    }

    fn characteristic(ctx: &Arc<ExtField>) -> u64 {
        ctx.p()
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let e = &self.ctx.order - 2u32;
        Ok(self.pow_big(&e))
    }

    fn sqrt(&self) -> Option<Self> {
        let z = Fq { c: self.ctx.nonresidue, ctx: self.ctx.clone() };
        tonelli_shanks(self, &z)
    }
}

impl FiniteField for Fq {
    fn order(ctx: &Arc<ExtField>) -> BigUint {
        ctx.order.clone()
    }

    fn random<R: Rng + ?Sized>(ctx: &Arc<ExtField>, rng: &mut R) -> Self {
        let p = ctx.p();
        let mut c = [0; MAX_EXT_DEGREE];
        for slot in c.iter_mut().take(ctx.k) {
            *slot = rng.gen_range(0..p);
        }
        Fq { c, ctx: ctx.clone() }
    }
}
