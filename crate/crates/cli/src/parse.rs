//! Field elements and point lists from command-line strings.

use forge_core::moduli::ProjPoint;
use forge_core::{Error, Field, Fp, PrimeField, Rational, Result};

/// A decimal integer reduced mod `p`, or `n/d` evaluated in `𝔽_p`.
pub fn fp(k: &PrimeField, s: &str) -> Result<Fp> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = decimal(k, d)?;
            if d.is_zero() {
                return Err(Error::Invalid(format!("{s}: denominator divisible by {}", k.p())));
            }
            decimal(k, n)?.div(&d)
        }
        None => decimal(k, s),
    }
}

fn decimal(k: &PrimeField, s: &str) -> Result<Fp> {
    let t = s.trim();
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Invalid(format!("not a number: {s:?}")));
    }
    let ten = k.elem(10);
    let x = digits.bytes().fold(k.elem(0), |acc, b| acc * ten + k.elem((b - b'0') as u64));
    Ok(if neg { -x } else { x })
}

pub fn rational(s: &str) -> Result<Rational> {
    s.parse()
}

pub fn int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Invalid(format!("not an integer: {s:?}")))
}

pub fn list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

pub fn point<F: Field>(s: &str, elem: impl Fn(&str) -> Result<F>) -> Result<ProjPoint<F>> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(ProjPoint::Infinity),
        t => Ok(ProjPoint::Finite(elem(t)?)),
    }
}

pub fn six_points<F: Field>(items: &[String], elem: impl Fn(&str) -> Result<F>) -> Result<[ProjPoint<F>; 6]> {
    if items.len() != 6 {
        return Err(Error::Invalid(format!("expected 6 points, got {}", items.len())));
    }
    let pts = items.iter().map(|s| point(s, &elem)).collect::<Result<Vec<_>>>()?;
    Ok(pts.try_into().unwrap_or_else(|_| unreachable!()))
}
