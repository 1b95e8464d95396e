//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over a named, ordered list of indeterminates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Fp, PrimeField};

type Exps = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MPolyZ {
    vars: Vec<String>,
    terms: BTreeMap<Exps, BigInt>,
}

/// Graded lexicographic comparison.
fn grlex(a: &Exps, b: &Exps) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MPolyZ {
    pub fn zero(vars: &[&str]) -> Self {
        MPolyZ { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let idx =
            vars.iter().position(|v| *v == name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigInt::one());
        Ok(p)
    }

    /// One polynomial per variable, in order.
    pub fn vars_of(vars: &[&str]) -> Vec<Self> {
        vars.iter().map(|v| Self::var(vars, v).expect("listed")).collect()
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Invalid("exponent vector length differs from variable count".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn same_shape(&self) -> Self {
        MPolyZ { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> Vec<(&Exps, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        let mut out = self.same_shape();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = self.same_shape();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&self.var_refs(), 1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (the variable list is kept; `var` just does not occur).
    pub fn coeff_in(&self, var: &str, k: u32) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut out = self.same_shape();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        Ok(out)
    }

    fn times_var_pow(&self, i: usize, k: u32) -> Self {
        let mut out = self.same_shape();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += k;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Pseudo-remainder of `self` by `d` with respect to `var`:
    /// `lc^(deg self − deg d + 1)·self = q·d + r` with `deg_var r < deg_var d`.
    pub fn pseudo_rem(&self, d: &Self, var: &str) -> Result<Self> {
        self.check_vars(d)?;
        let i = self.var_index(var)?;
        let dd = d.degree_in(var)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = d.coeff_in(var, dd)?;
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var)? >= dd {
            let rd = r.degree_in(var)?;
            let lr = r.coeff_in(var, rd)?;
            // r ← lc·r − lr·var^(rd−dd)·d
            let t = &lr * &d.times_var_pow(i, rd - dd);
            r = &(&lc * &r) - &t;
        }
        Ok(r)
    }

    /// Exact quotient `self / d` if `d` divides `self` in ℤ[vars].
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (ld_e, ld_c) = d.terms.iter().max_by(|a, b| grlex(a.0, b.0)).expect("nonzero");
        let mut r = self.clone();
        let mut q = self.same_shape();
        while let Some((le, lcoef)) = r.terms.iter().max_by(|a, b| grlex(a.0, b.0)) {
            if le.iter().zip(ld_e).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let (qc, rem) = lcoef.div_rem(ld_c);
            if !rem.is_zero() {
                return Ok(None);
            }
            let qe: Exps = le.iter().zip(ld_e).map(|(a, b)| a - b).collect();
            let mut mono = self.same_shape();
            mono.add_term(qe.clone(), qc.clone());
            q.add_term(qe, qc);
            r = &r - &(&mono * d);
        }
        Ok(Some(q))
    }

    /// Evaluate at a point of 𝔽_p^n.
    pub fn eval_fp(&self, point: &[Fp]) -> Result<Fp> {
        if point.len() != self.vars.len() {
            return Err(Error::Invalid("point dimension differs from variable count".into()));
        }
        let field: PrimeField = point.first().map(|a| a.field()).ok_or_else(|| Error::Invalid("empty point".into()))?;
        let p = field.p() as i128;
        let mut acc = field.elem(0);
        for (e, c) in &self.terms {
            let cm = (c % BigInt::from(p)).to_i128().expect("reduced");
            let mut t = field.from_i128(cm);
            for (x, &k) in point.iter().zip(e) {
                t = t * x.pow(k as u64);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.vars.len() {
            return Err(Error::Invalid("point dimension differs from variable count".into()));
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `self(swap(a, b))`
    pub fn swap_vars(&self, a: &str, b: &str) -> Result<Self> {
        let (i, j) = (self.var_index(a)?, self.var_index(b)?);
        let mut out = self.same_shape();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MPolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: MPolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        j.try_into()
    }
}

/// `true` iff both sides expand to the same canonical form.
pub fn expand_equal(lhs: &MPolyZ, rhs: &MPolyZ) -> Result<bool> {
    lhs.check_vars(rhs)?;
    Ok(lhs == rhs)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<u32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl From<&MPolyZ> for MPolyJson {
    fn from(p: &MPolyZ) -> Self {
        MPolyJson {
            vars: p.vars.clone(),
            terms: p.terms().into_iter().map(|(e, c)| TermJson { e: e.clone(), c: c.to_string() }).collect(),
        }
    }
}

impl TryFrom<MPolyJson> for MPolyZ {
    type Error = Error;
    fn try_from(j: MPolyJson) -> Result<Self> {
        let vars: Vec<&str> = j.vars.iter().map(String::as_str).collect();
        let mut terms = Vec::new();
        for t in j.terms {
            let c: BigInt = t.c.parse().map_err(|_| Error::Invalid(format!("bad coefficient {}", t.c)))?;
            terms.push((t.e, c));
        }
        MPolyZ::from_terms(&vars, terms)
    }
}

impl Serialize for MPolyZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson::from(self).serialize(s)
    }
}

impl fmt::Debug for MPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on variable-list mismatch; use `try_*` to get an error.
impl Add for &MPolyZ {
    type Output = MPolyZ;
    fn add(self, o: &MPolyZ) -> MPolyZ {
        self.try_add(o).expect("variable lists must match")
    }
}

impl Sub for &MPolyZ {
    type Output = MPolyZ;
    fn sub(self, o: &MPolyZ) -> MPolyZ {
        self.try_add(&-o).expect("variable lists must match")
    }
}

impl Mul for &MPolyZ {
    type Output = MPolyZ;
    fn mul(self, o: &MPolyZ) -> MPolyZ {
        self.try_mul(o).expect("variable lists must match")
    }
}

impl Neg for &MPolyZ {
    type Output = MPolyZ;
    fn neg(self) -> MPolyZ {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const V: [&str; 3] = ["x", "y", "z"];

    fn xyz() -> (MPolyZ, MPolyZ, MPolyZ) {
        let v = MPolyZ::vars_of(&V);
        (v[0].clone(), v[1].clone(), v[2].clone())
    }

    fn c(n: i64) -> MPolyZ {
        MPolyZ::constant(&V, n)
    }

    #[test]
    fn binomial_square() {
        let (x, _, _) = xyz();
        let lhs = (&x + &c(1)).pow(2);
        let rhs = &(&x.pow(2) + &(&c(2) * &x)) + &c(1);
        assert!(expand_equal(&lhs, &rhs).unwrap());
        let wrong = &(&x.pow(2) + &x) + &c(1);
        assert!(!expand_equal(&lhs, &wrong).unwrap());
    }

    #[test]
    fn symmetric_s() {
        let vars = ["v", "x", "z"];
        let [v, x, z]: [MPolyZ; 3] = MPolyZ::vars_of(&vars).try_into().unwrap();
        let one = MPolyZ::constant(&vars, 1);
        let s = &(&(&x.pow(2) * &z.pow(2)) - &(&v.pow(2) * &(&x.pow(2) + &z.pow(2)))) + &one;
        assert!(expand_equal(&s, &s.swap_vars("x", "z").unwrap()).unwrap());
    }

    #[test]
    fn mismatched_variables() {
        let a = MPolyZ::constant(&["x"], 1);
        let b = MPolyZ::constant(&["y"], 1);
        assert!(matches!(expand_equal(&a, &b), Err(Error::VariableMismatch(_, _))));
    }

    #[test]
    fn pseudo_remainder_of_multiple_vanishes() {
        let (x, y, z) = xyz();
        let d = &(&(&x * &z.pow(2)) + &y) - &c(3);
        let q = &(&z.pow(3) * &y) + &x;
        let f = &d * &q;
        assert!(f.pseudo_rem(&d, "z").unwrap().is_zero());
        let g = &f + &z;
        assert!(!g.pseudo_rem(&d, "z").unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let (x, y, _) = xyz();
        let d = &(&x * &y) - &c(1);
        let q = &(&c(2) * &x) - &y;
        assert_eq!((&d * &q).div_exact(&d).unwrap(), Some(q));
        assert_eq!((&d + &x).div_exact(&d).unwrap(), None);
    }

    #[test]
    fn json_shape() {
        let (x, _, z) = xyz();
        let p = &(&c(-3) * &(&x * &z)) + &c(7);
        let j = p.to_json();
        assert_eq!(j["vars"], serde_json::json!(["x", "y", "z"]));
        assert_eq!(j["terms"][0], serde_json::json!({"e": [1, 0, 1], "c": "-3"}));
        assert_eq!(MPolyZ::from_json(&j).unwrap(), p);
        assert_eq!(p.to_string(), "-3*x*z + 7");
    }

    fn arb_poly() -> impl Strategy<Value = MPolyZ> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -1_000_000i64..=1_000_000), 0..6)
            .prop_map(|ts| MPolyZ::from_terms(&V, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap())
    }

    proptest! {
        #[test]
        fn commutative_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            prop_assert_eq!(MPolyZ::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), pt in prop::collection::vec(0u64..10007, 3)) {
            let k = PrimeField::new(10007).unwrap();
            let pt: Vec<Fp> = pt.into_iter().map(|v| k.elem(v)).collect();
            let lhs = (&a * &b).eval_fp(&pt).unwrap();
            prop_assert_eq!(lhs, a.eval_fp(&pt).unwrap() * b.eval_fp(&pt).unwrap());
        }
    }
}
