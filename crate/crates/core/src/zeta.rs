//! Naive point counting and L-polynomials for curves of genus at most 3.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{
    a_constant, build, theorem_curve, validate_params, CurveLabel, FamilyParams, HyperCurve, ValidationLevel,
};
use crate::field::{ext_build, Field, FiniteField, Fp, PrimeField, MAX_EXT_DEGREE};
use crate::jacobian::{random_class, OddModel};
use crate::seed;
use crate::upoly::UPoly;

/// Largest field size over which points are enumerated.
pub const SCALE_GUARD: u128 = 100_000_000;
pub const MAX_GENUS: usize = 3;

/// Fixed seed for the extension modulus; counts do not depend on it.
const COUNT_SEED: u64 = 0x5eed;

struct SquareTable {
    bits: Vec<u64>,
}

impl SquareTable {
    fn new(q: usize, square_index: impl Fn(usize) -> usize) -> Self {
        let mut bits = vec![0u64; q / 64 + 1];
        for i in 0..q {
            let s = square_index(i);
            bits[s / 64] |= 1 << (s % 64);
        }
        SquareTable { bits }
    }

    /// Quadratic character of the element with index `i` (index 0 is zero).
    fn chi(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }
}

fn legendre(a: &Fp) -> i64 {
    if a.is_zero() {
        0
    } else if a.is_square() {
        1
    } else {
        -1
    }
}

/// Number of points over `𝔽_{p^k}` of the smooth model of `y² = f(x)`.
pub fn count_points(curve: &HyperCurve<Fp>, k: usize) -> Result<u64> {
    let p = curve.ctx().p();
    if p == 2 {
        return Err(Error::InvalidPrime(p));
    }
    if k == 0 || k > MAX_EXT_DEGREE {
        return Err(Error::InvalidDegree(k));
    }
    let q = (p as u128).pow(k as u32);
    if q > SCALE_GUARD {
        return Err(Error::ScaleGuard(q));
    }
    let q = q as usize;
    let f = &curve.f;
    let affine: i64 = if k == 1 {
        let table = SquareTable::new(q, |i| (i as u128 * i as u128 % p as u128) as usize);
        (0..p).map(|x| 1 + table.chi(f.eval(&curve.ctx().elem(x)).value() as usize)).sum()
    } else {
        let ext = ext_build(p, k, COUNT_SEED)?;
        let table = SquareTable::new(q, |i| {
            let a = ext.from_index(i);
            ext.index_of(&ext.mul_raw(&a, &a))
        });
        let coeffs: Vec<[u64; MAX_EXT_DEGREE]> = f.coeffs().iter().rev().map(|c| ext.embed_raw(*c)).collect();
        (0..q)
            .map(|i| {
                let x = ext.from_index(i);
                let y = coeffs.iter().fold([0; MAX_EXT_DEGREE], |acc, c| ext.add_raw(&ext.mul_raw(&acc, &x), c));
                1 + table.chi(ext.index_of(&y))
            })
            .sum()
    };
    let d = f.degree().unwrap_or(0);
    let at_infinity = if d % 2 == 1 {
        1
    } else if k.is_multiple_of(2) {
        2
    } else {
        1 + legendre(&f.lc())
    };
    let n = affine + at_infinity;
    let g = curve.genus as i128;
    let dev = n as i128 - q as i128 - 1;
    assert!(dev * dev <= 4 * g * g * q as i128, "point count violates the Weil bound");
    Ok(n as u64)
}

/// `L(T) = a₀ + a₁T + … + a_{2g}T^{2g}` with `a₀ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPoly {
    pub g: usize,
    pub p: u64,
    pub coeffs: Vec<i64>,
}

impl LPoly {
    /// Reconstruct from `N₁, …, N_g` by Newton's identities and the
    /// functional equation.
    pub fn from_counts(p: u64, counts: &[u64]) -> Result<Self> {
        let g = counts.len();
        let pi = p as i64;
        let s: Vec<i64> = counts.iter().enumerate().map(|(k, &n)| pi.pow(k as u32 + 1) + 1 - n as i64).collect();
        let mut a = vec![0i64; 2 * g + 1];
        a[0] = 1;
        for k in 1..=g {
            let acc: i64 = (1..=k).map(|i| a[k - i] * s[i - 1]).sum();
            if acc % k as i64 != 0 {
                return Err(Error::Invalid("inconsistent point counts".into()));
            }
            a[k] = -acc / k as i64;
        }
        for j in 1..=g {
            a[g + j] = pi.pow(j as u32) * a[g - j];
        }
        Ok(LPoly { g, p, coeffs: a })
    }

    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.g;
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0] == 1
            && (0..=g).all(|j| self.coeffs[g + j] == (self.p as i64).pow(j as u32) * self.coeffs[g - j])
    }

    /// `L(1)`, the order of the Jacobian's group of rational points.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Coefficients of `y^{2g}L(1/y)` from `y^{2g}` down to `y⁰`.
    pub fn charpoly(&self) -> Vec<i64> {
        self.coeffs.clone()
    }

    /// L-polynomial of the quadratic twist.
    pub fn twist(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, &a)| if j % 2 == 0 { a } else { -a }).collect();
        LPoly { g: self.g, p: self.p, coeffs }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.p != o.p {
            return Err(Error::Invalid("L-polynomials over different primes".into()));
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Ok(LPoly { g: self.g + o.g, p: self.p, coeffs: c })
    }

    /// Power sums `s₁, …, s_n` of the reciprocal roots.
    pub fn power_sums(&self, n: usize) -> Vec<i64> {
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let mut s = Vec::with_capacity(n);
        for k in 1..=n {
            let acc: i64 = (1..k).map(|i| a(k - i) * s[i - 1]).sum();
            s.push(-(k as i64) * a(k) - acc);
        }
        s
    }

    /// `N₁, …, N_n` predicted by the L-polynomial.
    pub fn point_counts(&self, n: usize) -> Vec<i64> {
        let p = self.p as i64;
        self.power_sums(n).iter().enumerate().map(|(k, s)| p.pow(k as u32 + 1) + 1 - s).collect()
    }

    /// Roots of the characteristic polynomial, by Durand–Kerner on the
    /// rescaling `y = √p·w`.
    pub fn reciprocal_roots(&self) -> Vec<Complex64> {
        let n = 2 * self.g;
        if n == 0 {
            return Vec::new();
        }
        let sp = (self.p as f64).sqrt();
        // monic in w, c[j] is the coefficient of w^{n−j}
        let c: Vec<f64> = self.coeffs.iter().enumerate().map(|(j, &a)| a as f64 / sp.powi(j as i32)).collect();
        let eval = |w: Complex64| c.iter().fold(Complex64::new(0.0, 0.0), |acc, &cj| acc * w + cj);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
                let step = eval(z[i]) / denom;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        z.into_iter().map(|w| w * sp).collect()
    }

    /// `max | |α| − √p |` over the reciprocal roots.
    pub fn weil_deviation(&self) -> f64 {
        let sp = (self.p as f64).sqrt();
        self.reciprocal_roots().iter().map(|r| (r.norm() - sp).abs()).fold(0.0, f64::max)
    }
}

pub fn l_polynomial(curve: &HyperCurve<Fp>) -> Result<LPoly> {
    let g = curve.genus;
    if g == 0 || g > MAX_GENUS {
        return Err(Error::UnsupportedGenus(g));
    }
    let p = curve.ctx().p();
    let counts = (1..=g).map(|k| count_points(curve, k)).collect::<Result<Vec<_>>>()?;
    let l = LPoly::from_counts(p, &counts)?;
    assert!(l.at_one() > 0, "L(1) must be positive");
    Ok(l)
}

pub fn frobenius_charpoly(curve: &HyperCurve<Fp>) -> Result<Vec<i64>> {
    Ok(l_polynomial(curve)?.charpoly())
}

fn reduce(k: &PrimeField, xs: &[i64]) -> Vec<Fp> {
    xs.iter().map(|&x| k.from_i64(x)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistRelation {
    Equal,
    Twist,
    /// Both, which happens when the L-polynomial is even.
    EqualAndTwist,
    Neither,
}

fn relation(a: &LPoly, b: &LPoly) -> TwistRelation {
    match (a == b, *a == b.twist()) {
        (true, true) => TwistRelation::EqualAndTwist,
        (true, false) => TwistRelation::Equal,
        (false, true) => TwistRelation::Twist,
        (false, false) => TwistRelation::Neither,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LEqualityEntry {
    pub p: u64,
    pub skipped: Option<String>,
    pub l_c: Option<LPoly>,
    pub l_c_prime: Option<LPoly>,
    pub equal: bool,
    pub theorem_models: Option<TwistRelation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LEqualityReport {
    pub g: usize,
    pub entries: Vec<LEqualityEntry>,
    pub passed: bool,
}

/// `L(C) = L(C′)` prime by prime; degenerate reductions are skipped.
pub fn check_l_equality(g: usize, v: i64, a: &[i64], primes: &[u64]) -> Result<LEqualityReport> {
    let mut entries = Vec::new();
    for &p in primes {
        let k = PrimeField::new(p)?;
        let params = match validate_params(g, k.from_i64(v), reduce(&k, a), &k, ValidationLevel::Pair) {
            Ok(ps) => ps,
            Err(Error::DegenerateParams(why)) => {
                entries.push(LEqualityEntry {
                    p,
                    skipped: Some(why.join(", ")),
                    l_c: None,
                    l_c_prime: None,
                    equal: false,
                    theorem_models: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let pair = build(&params)?;
        let l_c = l_polynomial(&pair.c)?;
        let l_c_prime = l_polynomial(&pair.c_prime)?;
        let rel = relation(&l_polynomial(&pair.c_thm)?, &l_polynomial(&pair.c_prime_thm)?);
        entries.push(LEqualityEntry {
            p,
            skipped: None,
            equal: l_c == l_c_prime,
            l_c: Some(l_c),
            l_c_prime: Some(l_c_prime),
            theorem_models: Some(rel),
        });
    }
    let checked: Vec<_> = entries.iter().filter(|e| e.skipped.is_none()).collect();
    let passed = !checked.is_empty() && checked.iter().all(|e| e.equal);
    Ok(LEqualityReport { g, entries, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub p: u64,
    pub i: Fp,
    pub l_c: LPoly,
    pub l_q1: LPoly,
    pub l_q2: LPoly,
    /// Sign pairs `(ε₁, ε₂)` with `L(C) = L(Q₁^{ε₁})·L(Q₂^{ε₂})`, `−` meaning
    /// the quadratic twist.
    pub matching: Vec<String>,
    /// Whether the quotients written without the constant `i` also satisfy
    /// the product relation.
    pub without_i_constant: bool,
    pub passed: bool,
}

/// At `v = √−1` the curve has the extra involution `x ↦ −x` and its
/// Jacobian splits up to isogeny into those of the two quotients.
pub fn check_split_at_i(g: usize, a: &[i64], p: u64) -> Result<SplitReport> {
    if p % 4 != 1 {
        return Err(Error::PrimeUnsuitable(format!("{p} is not 1 mod 4")));
    }
    let k = PrimeField::new(p)?;
    let i = k.from_i64(-1).sqrt().expect("p = 1 mod 4");
    let i = if i.value() <= p / 2 { i } else { -i };
    let params = validate_params(g, i, reduce(&k, a), &k, ValidationLevel::CurveOnly)?;
    let c = theorem_curve(&params)?;
    let one = k.elem(1);
    let base = params.a.iter().fold(UPoly::from_coeffs(&k, vec![one, one]), |acc, ai| &acc * &UPoly::linear_root(ai));
    let q1 = HyperCurve::new(base.clone(), CurveLabel::CThm)?;
    let q2 = HyperCurve::new(&base * &UPoly::x(&k), CurveLabel::CThm)?;
    let l_c = l_polynomial(&c)?;
    let (l1, l2) = (l_polynomial(&q1.twist(&i)?)?, l_polynomial(&q2.twist(&i)?)?);
    let mut matching = Vec::new();
    for (n1, a1) in [("+", l1.clone()), ("-", l1.twist())] {
        for (n2, a2) in [("+", l2.clone()), ("-", l2.twist())] {
            if a1.mul(&a2)? == l_c {
                matching.push(format!("{n1}{n2}"));
            }
        }
    }
    let without_i_constant = l_polynomial(&q1)?.mul(&l_polynomial(&q2)?)? == l_c;
    let passed = !matching.is_empty();
    Ok(SplitReport { p, i, l_c, l_q1: l1, l_q2: l2, matching, without_i_constant, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingEntry {
    pub reading: String,
    pub a: Vec<i64>,
    pub with_a_constant: bool,
    pub smooth_genus_3: bool,
    pub charpoly: Option<Vec<i64>>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub p: u64,
    pub v: i64,
    pub expected: Vec<i64>,
    pub entries: Vec<ReadingEntry>,
    pub passed: bool,
}

pub const SPECIALIZATION_CHARPOLY: [i64; 7] = [1, 2, 3, 44, 39, 338, 2197];

/// The genus-3 specialization `v = 2` with parameters `(1, 3, 4)` at `p = 13`,
/// read either as the `aᵢ` themselves or as their square roots, with and
/// without the constant `A`. Exactly one reading should give a smooth genus-3
/// curve with the expected Frobenius polynomial.
pub fn reproduce_specialization() -> Result<SpecializationReport> {
    let p = 13;
    let v = 2;
    let xs = [1i64, 3, 4];
    let k = PrimeField::new(p)?;
    let mut entries = Vec::new();
    for (reading, a) in [("literal", xs.to_vec()), ("squares", xs.iter().map(|x| x * x).collect())] {
        for with_a in [false, true] {
            let params =
                FamilyParams { g: 3, v: k.from_i64(v), a: reduce(&k, &a), ctx: k, level: ValidationLevel::CurveOnly };
            let curve = theorem_curve(&params).and_then(|c| {
                if with_a {
                    c.twist(&a_constant(&params.v, &params.a))
                } else {
                    Ok(c)
                }
            });
            let curve = curve.ok().filter(|c| c.genus == 3);
            let charpoly = curve.as_ref().map(frobenius_charpoly).transpose()?;
            let matches = charpoly.as_deref() == Some(&SPECIALIZATION_CHARPOLY[..]);
            entries.push(ReadingEntry {
                reading: reading.into(),
                a: a.clone(),
                with_a_constant: with_a,
                smooth_genus_3: curve.is_some(),
                charpoly,
                matches,
            });
        }
    }
    let passed = entries.iter().filter(|e| e.matches).count() == 1;
    Ok(SpecializationReport { p, v, expected: SPECIALIZATION_CHARPOLY.to_vec(), entries, passed })
}

/// Number of random classes killed by `L(1) = #J(𝔽_p)`. Even-degree models
/// need a rational branch point to move to an odd model.
pub fn check_group_order(curve: &HyperCurve<Fp>, l: &LPoly, trials: usize, seed: u64) -> Result<usize> {
    let model = if curve.f.deg() % 2 == 1 {
        OddModel::from_odd(&curve.f)?
    } else {
        let roots = curve.f.roots(&mut seed::rng(seed::derive(seed, "root")))?;
        let r = roots.iter().min_by_key(|r| r.value()).ok_or(Error::NoRationalRoot)?;
        OddModel::from_even(&curve.f, r)?
    };
    let n = l.at_one();
    let mut killed = 0;
    for t in 0..trials {
        let d = random_class(&model, seed::derive_indexed(seed, "group-order", t));
        if d.scalar_mul(n).is_identity() {
            killed += 1;
        }
    }
    Ok(killed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::CurveLabel;

    fn curve(p: u64, f: &[i64]) -> HyperCurve<Fp> {
        let k = PrimeField::new(p).unwrap();
        HyperCurve::new(UPoly::from_coeffs(&k, reduce(&k, f)), CurveLabel::C).unwrap()
    }

    /// Counts `(x, y)` pairs by trying every `y`, plus points at infinity.
    fn exhaustive(c: &HyperCurve<Fp>) -> u64 {
        let k = *c.ctx();
        let p = k.p();
        let mut n = 0;
        for x in 0..p {
            let fx = c.f.eval(&k.elem(x));
            n += (0..p).filter(|&y| k.elem(y).square() == fx).count() as u64;
        }
        let d = c.f.degree().unwrap();
        n + if d % 2 == 1 {
            1
        } else if (0..p).any(|y| k.elem(y).square() == c.f.lc()) {
            2
        } else {
            0
        }
    }

    #[test]
    fn counts_match_exhaustive_enumeration() {
        let cases: [(u64, &[i64]); 4] =
            [(11, &[1, 0, 3, 1]), (13, &[3, 1, 0, 0, 5]), (31, &[2, -1, 7, 0, 0, 1]), (29, &[5, 0, 1, 3, 0, 2, 9])];
        for (p, f) in cases {
            let c = curve(p, f);
            assert_eq!(count_points(&c, 1).unwrap(), exhaustive(&c), "p = {p}");
        }
    }

    #[test]
    fn twist_identity_at_every_degree() {
        let c = curve(13, &[3, 1, 0, 0, 5, 2]);
        let k = *c.ctx();
        let t = c.twist(&k.nonresidue()).unwrap();
        for e in 1..=3 {
            let q = 13u64.pow(e as u32);
            let (n, nt) = (count_points(&c, e).unwrap(), count_points(&t, e).unwrap());
            if e % 2 == 1 {
                assert_eq!(n + nt, 2 * (q + 1));
            } else {
                assert_eq!(n, nt);
            }
        }
    }

    #[test]
    fn odd_model_count_agrees() {
        // y² = (x−3)(3x−1)(x²−2)(x²−5) has the rational root 3
        let k = PrimeField::new(101).unwrap();
        let lin = |a: i64, b: i64| UPoly::from_coeffs(&k, vec![k.from_i64(b), k.from_i64(a)]);
        let quad = |c: i64| UPoly::from_coeffs(&k, vec![k.from_i64(-c), k.elem(0), k.elem(1)]);
        let f = &(&(&lin(1, -3) * &lin(3, -1)) * &quad(2)) * &quad(5);
        let even = HyperCurve::new(f.clone(), CurveLabel::C).unwrap();
        let odd = crate::jacobian::OddModel::from_even(&f, &k.elem(3)).unwrap();
        let odd = HyperCurve::new(odd.f.clone(), CurveLabel::C).unwrap();
        for e in 1..=2 {
            assert_eq!(count_points(&even, e).unwrap(), count_points(&odd, e).unwrap());
        }
    }

    #[test]
    fn guard_and_genus_limits() {
        let c = curve(10007, &[1, 2, 0, 1]);
        assert!(matches!(count_points(&c, 2), Err(Error::ScaleGuard(_))));
        let big = curve(11, &[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(l_polynomial(&big), Err(Error::UnsupportedGenus(4))));
    }

    #[test]
    fn genus_one_relation() {
        let c = curve(11, &[1, 0, 3, 1]);
        let n = count_points(&c, 1).unwrap() as i64;
        let l = l_polynomial(&c).unwrap();
        assert_eq!(l.coeffs, vec![1, n - 12, 11]);
        assert_eq!(l.at_one(), n);
    }

    #[test]
    fn power_sums_reproduce_counts() {
        let c = curve(13, &[2, 1, 0, 5, 0, 3, 1, 0, 1]);
        let l = l_polynomial(&c).unwrap();
        assert!(l.satisfies_functional_equation());
        let counts: Vec<i64> = (1..=3).map(|e| count_points(&c, e).unwrap() as i64).collect();
        assert_eq!(l.point_counts(3), counts);
        assert!(l.weil_deviation() < 1e-6);
        assert_eq!(l.twist().twist(), l);
    }

    #[test]
    fn family_l_equality_fixtures() {
        // 3 = 1/v² mod 11, so that prime is skipped
        let r = check_l_equality(1, 2, &[3], &[11, 13, 101]).unwrap();
        assert!(r.passed);
        assert_eq!(r.entries[0].skipped.as_deref(), Some("a1 = 1/v^2"));
        assert_eq!(r.entries[2].l_c.as_ref().unwrap().coeffs, vec![1, 0, 101]);
        for e in &r.entries[1..] {
            let l = e.l_c.as_ref().unwrap();
            let k = PrimeField::new(e.p).unwrap();
            let ps = validate_params(1, k.elem(2), vec![k.elem(3)], &k, ValidationLevel::Pair).unwrap();
            let n = exhaustive(&build(&ps).unwrap().c_prime) as i64;
            assert_eq!(l.coeffs[1], n - e.p as i64 - 1);
        }
        let r = check_l_equality(2, 3, &[2, 5], &[101]).unwrap();
        assert_eq!(r.entries[0].l_c.as_ref().unwrap().coeffs, vec![1, -6, 10, -606, 10201]);
        assert!(r.passed);
        let r = check_l_equality(3, 2, &[3, 5, 7], &[29]).unwrap();
        assert_eq!(r.entries[0].l_c.as_ref().unwrap().coeffs, vec![1, 0, -5, 176, -145, 0, 24389]);
        assert!(r.passed);
    }

    #[test]
    fn degenerate_prime_is_skipped() {
        // v² = 9 = a₁ + 7 ≡ a₁ mod 7
        let r = check_l_equality(1, 3, &[2], &[7, 11]).unwrap();
        assert!(r.entries[0].skipped.is_some());
        assert!(r.entries[1].skipped.is_none());
        assert!(r.passed);
    }

    #[test]
    fn split_at_i() {
        let r = check_split_at_i(2, &[2, 3], 13).unwrap();
        assert_eq!(r.i.value(), 5);
        assert_eq!(r.l_c.coeffs, vec![1, -4, 30, -52, 169]);
        assert!(r.passed);
        assert!(matches!(check_split_at_i(2, &[2, 3], 7), Err(Error::PrimeUnsuitable(_))));
    }

    #[test]
    fn specialization_reading() {
        let r = reproduce_specialization().unwrap();
        assert!(r.passed, "{r:?}");
        let hit = r.entries.iter().find(|e| e.matches).unwrap();
        assert_eq!(hit.reading, "squares");
        assert!(hit.with_a_constant);
        assert!(r.entries.iter().filter(|e| e.reading == "literal").all(|e| !e.smooth_genus_3));
    }

    #[test]
    fn group_order_kills_classes() {
        let odd = curve(13, &[2, 1, 0, 5, 0, 3, 1]);
        let l = l_polynomial(&odd).unwrap();
        assert_eq!(check_group_order(&odd, &l, 5, 1).unwrap(), 5);
        let k = PrimeField::new(101).unwrap();
        let ps = validate_params(2, k.elem(3), vec![k.elem(2), k.elem(5)], &k, ValidationLevel::Pair).unwrap();
        let c = build(&ps).unwrap().c;
        let l = l_polynomial(&c).unwrap();
        assert_eq!(check_group_order(&c, &l, 5, 1).unwrap(), 5);
        let wrong = LPoly { coeffs: vec![1, -5, 10, -606, 10201], ..l };
        assert!(check_group_order(&c, &wrong, 5, 1).unwrap() < 5);
    }
}
