//! Involutions of the projective line and the genus-2 normal form of six
//! branch points.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use rand::Rng;

use crate::field::{ext_build, Field, FiniteField, Fp, Fq, PrimeField};
use crate::seed;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> ProjPoint<F> {
    fn coords(&self, ctx: &F::Ctx) -> (F, F) {
        match self {
            ProjPoint::Finite(x) => (x.clone(), F::one_in(ctx)),
            ProjPoint::Infinity => (F::one_in(ctx), F::zero_in(ctx)),
        }
    }

    fn from_coords(x0: F, x1: F) -> Result<Self> {
        if x1.is_zero() {
            if x0.is_zero() {
                return Err(Error::Invalid("(0 : 0) is not a point".into()));
            }
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(x0.div(&x1)?))
        }
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ProjPoint<G> {
        match self {
            ProjPoint::Finite(x) => ProjPoint::Finite(f(x)),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }
}

impl<F: Field + Serialize> Serialize for ProjPoint<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjPoint::Finite(x) => x.serialize(s),
            ProjPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

/// `x ↦ (ax + b)/(cx + d)`, stored with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Homography<F: Field> {
    m: [F; 4],
}

impl<F: Field> Homography<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self> {
        if (a.clone() * d.clone() - b.clone() * c.clone()).is_zero() {
            return Err(Error::Invalid("singular homography".into()));
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|e| !e.is_zero()).expect("nonzero").inv()?;
        Ok(Homography { m: [a, b, c, d].map(|e| e * lead.clone()) })
    }

    pub fn identity(ctx: &F::Ctx) -> Self {
        let (o, z) = (F::one_in(ctx), F::zero_in(ctx));
        Homography { m: [o.clone(), z.clone(), z, o] }
    }

    pub fn entries(&self) -> &[F; 4] {
        &self.m
    }

    pub fn det(&self) -> F {
        let [a, b, c, d] = &self.m;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        let [a, b, c, d] = &self.m;
        let (x0, x1) = p.coords(&a.ctx());
        ProjPoint::from_coords(a.clone() * x0.clone() + b.clone() * x1.clone(), c.clone() * x0 + d.clone() * x1)
            .expect("nonsingular")
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        let mul = |x: &F, y: &F, z: &F, w: &F| x.clone() * y.clone() + z.clone() * w.clone();
        Homography::new(mul(a, e, b, g), mul(a, f, b, h), mul(c, e, d, g), mul(c, f, d, h)).expect("nonsingular")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m.clone();
        Homography::new(d, -b, -c, a).expect("nonsingular")
    }

    pub fn is_identity(&self) -> bool {
        *self == Homography::identity(&self.m[0].ctx())
    }

    /// The involution `x ↦ (αx + β)/(γx − α)`.
    fn involution(k: &[F; 3]) -> Result<Self> {
        let [al, be, ga] = k.clone();
        Homography::new(al.clone(), be, ga, -al)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Homography<G> {
        Homography { m: [f(&self.m[0]), f(&self.m[1]), f(&self.m[2]), f(&self.m[3])] }
    }
}

impl<F: Field + Serialize> Serialize for Homography<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

fn ensure_distinct<F: PartialEq>(pts: &[F]) -> Result<()> {
    for (i, a) in pts.iter().enumerate() {
        if pts[i + 1..].contains(a) {
            return Err(Error::DuplicateInput);
        }
    }
    Ok(())
}

/// Both sides of the six-point identity for the pairing `(a₁,a₂), (a₃,a₄), (a₅,a₆)`.
pub fn criterion_sides<F: Field>(a: &[F; 6]) -> (F, F) {
    let t = |i: usize, j: usize, k: usize| a[i - 1].clone() * a[j - 1].clone() * a[k - 1].clone();
    let lhs = t(6, 5, 3) + t(6, 5, 4) + t(6, 2, 1) + t(5, 2, 1) + t(1, 4, 3) + t(2, 4, 3);
    let rhs = t(6, 5, 1) + t(6, 5, 2) + t(6, 4, 3) + t(5, 4, 3) + t(2, 1, 3) + t(2, 1, 4);
    (lhs, rhs)
}

/// Whether some involution swaps `a₁ ↔ a₂`, `a₃ ↔ a₄` and `a₅ ↔ a₆`.
pub fn involution_criterion<F: Field>(a: &[F; 6]) -> Result<bool> {
    ensure_distinct(a)?;
    let (l, r) = criterion_sides(a);
    Ok(l == r)
}

/// Row of the condition that `x ↦ (αx + β)/(γx − α)` swaps `p` and `q`:
/// `α(p + q) + β − γpq = 0`, homogenized.
fn swap_row<F: Field>(p: &ProjPoint<F>, q: &ProjPoint<F>, ctx: &F::Ctx) -> [F; 3] {
    let (p0, p1) = p.coords(ctx);
    let (q0, q1) = q.coords(ctx);
    [p0.clone() * q1.clone() + p1.clone() * q0.clone(), p1 * q1, -(p0 * q0)]
}

fn det3<F: Field>(r: &[[F; 3]; 3]) -> F {
    let m = |i: usize, j: usize| r[i][j].clone();
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Basis of the null space of a matrix with three columns.
fn kernel<F: Field>(rows: &[[F; 3]]) -> Vec<[F; 3]> {
    let mut r: Vec<[F; 3]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(pr) = (row..r.len()).find(|&i| !r[i][col].is_zero()) else { continue };
        r.swap(row, pr);
        let inv = r[row][col].inv().expect("nonzero pivot");
        r[row] = r[row].clone().map(|e| e * inv.clone());
        for i in 0..r.len() {
            if i != row && !r[i][col].is_zero() {
                let f = r[i][col].clone();
                for j in 0..3 {
                    let t = r[row][j].clone() * f.clone();
                    r[i][j] = r[i][j].clone() - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let ctx = rows[0][0].ctx();
    (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [F; 3] = std::array::from_fn(|_| F::zero_in(&ctx));
            v[free] = F::one_in(&ctx);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[i][free].clone();
            }
            v
        })
        .collect()
}

fn nondegenerate<F: Field>(k: &[F; 3]) -> bool {
    !(k[0].square() + k[1].clone() * k[2].clone()).is_zero()
}

#[derive(Clone, Debug)]
pub struct InvolutionReport<F: Field> {
    pub exists: bool,
    pub involution: Option<Homography<F>>,
    pub determinant: F,
}

impl<F: Field + Serialize> InvolutionReport<F> {
    pub fn to_json(&self) -> Value {
        json!({ "exists": self.exists, "involution": self.involution, "determinant": self.determinant })
    }
}

/// Solves for an involution swapping each of the three pairs.
pub fn pairing_involution<F: Field>(pairs: &[(ProjPoint<F>, ProjPoint<F>); 3]) -> Result<InvolutionReport<F>> {
    let flat: Vec<_> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    ensure_distinct(&flat)?;
    let ctx = match flat.iter().find_map(|p| p.finite()) {
        Some(x) => x.ctx(),
        None => return Err(Error::DuplicateInput),
    };
    let rows: [[F; 3]; 3] = std::array::from_fn(|i| swap_row(&pairs[i].0, &pairs[i].1, &ctx));
    let determinant = det3(&rows);
    let mut involution = None;
    if determinant.is_zero() {
        let ker = kernel(&rows);
        if ker.len() == 1 && nondegenerate(&ker[0]) {
            let h = Homography::involution(&ker[0])?;
            for (a, b) in pairs {
                assert!(h.apply(a) == *b && h.apply(b) == *a, "involution does not swap a pair");
            }
            involution = Some(h);
        }
    }
    if flat.iter().all(|p| p.finite().is_some()) {
        let a: [F; 6] = std::array::from_fn(|i| flat[i].finite().unwrap().clone());
        let (l, r) = criterion_sides(&a);
        assert_eq!(determinant.is_zero(), l == r, "determinant and criterion disagree");
    }
    Ok(InvolutionReport { exists: involution.is_some(), involution, determinant })
}

/// `h` with `h({P₁,…,P₆}) = {x₁, −x₁, x₂, −x₂, v, 1/v}`, `h(P₁) = x₁`,
/// `h(P₃) = x₂`, `h(P₅) = v`.
#[derive(Clone, Debug)]
pub struct Normalization<F: Field> {
    pub h: Homography<F>,
    pub v: F,
    pub x1: F,
    pub x2: F,
}

impl<F: Field> Normalization<F> {
    pub fn pattern(&self) -> [F; 6] {
        let vi = self.v.inv().expect("v nonzero");
        [self.x1.clone(), -self.x1.clone(), self.x2.clone(), -self.x2.clone(), self.v.clone(), vi]
    }

    /// Applies `h` and matches the image against the pattern as multisets.
    pub fn verify(&self, points: &[ProjPoint<F>; 6]) -> bool {
        let mut want: Vec<ProjPoint<F>> = self.pattern().into_iter().map(ProjPoint::Finite).collect();
        for p in points {
            let img = self.h.apply(p);
            match want.iter().position(|w| *w == img) {
                Some(i) => {
                    want.swap_remove(i);
                }
                None => return false,
            }
        }
        want.is_empty()
    }
}

impl<F: Field + Serialize> Normalization<F> {
    pub fn to_json(&self) -> Value {
        json!({ "h": self.h, "v": self.v, "x1": self.x1, "x2": self.x2 })
    }
}

fn special(why: &str) -> Error {
    Error::SpecialPosition(why.into())
}

/// The unique involution swapping two pairs of points.
fn involution_through<F: Field>(rows: [[F; 3]; 2], what: &str) -> Result<[F; 3]> {
    let ker = kernel(&rows);
    if ker.len() != 1 || !nondegenerate(&ker[0]) {
        return Err(special(what));
    }
    Ok(ker[0].clone())
}

/// Fixed points of `x ↦ (αx + β)/(γx − α)`: roots of `γx² − 2αx − β`.
fn fixed_points<F: Field>(k: &[F; 3]) -> Result<(ProjPoint<F>, ProjPoint<F>)> {
    let [al, be, ga] = k.clone();
    let disc = al.square() + be.clone() * ga.clone();
    let r = disc.sqrt().ok_or_else(|| Error::Irrational("fixed points of the first involution".into()))?;
    if ga.is_zero() {
        return Ok((ProjPoint::Finite(-be.div(&(al.int_like(2) * al))?), ProjPoint::Infinity));
    }
    Ok((ProjPoint::Finite((al.clone() + r.clone()).div(&ga)?), ProjPoint::Finite((al - r).div(&ga)?)))
}

/// Normal form of six distinct points: the involution `u` swapping
/// `P₁ ↔ P₂`, `P₃ ↔ P₄` becomes `x ↦ −x`, and the involution `w` commuting
/// with it and swapping `P₅ ↔ P₆` becomes `x ↦ 1/x`.
pub fn normalize_genus2<F: Field>(points: &[ProjPoint<F>; 6]) -> Result<Normalization<F>> {
    ensure_distinct(points)?;
    let ctx = points.iter().find_map(|p| p.finite()).ok_or(Error::DuplicateInput)?.ctx();
    let row = |i: usize, j: usize| swap_row(&points[i], &points[j], &ctx);
    let u = involution_through([row(0, 1), row(2, 3)], "no unique involution swaps the first two pairs")?;
    // trace-zero matrices anticommute iff 2αα′ + βγ′ + γβ′ = 0
    let commute = [u[0].int_like(2) * u[0].clone(), u[2].clone(), u[1].clone()];
    let w = involution_through([commute, row(4, 5)], "no unique commuting involution swaps the last pair")?;

    let (f1, f2) = fixed_points(&u)?;
    let (o, z) = (F::one_in(&ctx), F::zero_in(&ctx));
    // k(f₁) = 0, k(f₂) = ∞
    let k = match (&f1, &f2) {
        (ProjPoint::Finite(a), ProjPoint::Infinity) => Homography::new(o.clone(), -a.clone(), z.clone(), o.clone())?,
        (ProjPoint::Infinity, ProjPoint::Finite(b)) => Homography::new(z.clone(), o.clone(), o.clone(), -b.clone())?,
        (ProjPoint::Finite(a), ProjPoint::Finite(b)) => Homography::new(o.clone(), -a.clone(), o.clone(), -b.clone())?,
        _ => return Err(special("degenerate fixed points")),
    };
    let wk = k.compose(&Homography::involution(&w)?).compose(&k.inverse());
    let [a, b, c, d] = wk.entries().clone();
    if !a.is_zero() || !d.is_zero() {
        return Err(special("second involution does not swap the fixed points of the first"));
    }
    let t = b.div(&c)?;
    let s = t.sqrt().ok_or_else(|| Error::Irrational("scaling constant".into()))?;
    let h = Homography::new(o, z.clone(), z, s)?.compose(&k);
    let img = |i: usize| match h.apply(&points[i]) {
        ProjPoint::Finite(x) if !x.is_zero() => Ok(x),
        _ => Err(special("a point lands on 0 or ∞")),
    };
    let n = Normalization { v: img(4)?, x1: img(0)?, x2: img(2)?, h };
    if !n.verify(points) {
        return Err(special("normal form pattern not reproduced"));
    }
    Ok(n)
}

/// Over `𝔽_p` the normal form may need `𝔽_{p²}` or `𝔽_{p⁴}`; returns the
/// degree used.
pub fn normalize_genus2_fp(points: &[ProjPoint<Fp>; 6], seed: u64) -> Result<(usize, Normalization<Fq>)> {
    let p = points.iter().find_map(|q| q.finite()).ok_or(Error::DuplicateInput)?.modulus();
    for k in [1, 2, 4] {
        let ext = ext_build(p, k, seed)?;
        let lifted: [ProjPoint<Fq>; 6] = std::array::from_fn(|i| points[i].map(|a| Fq::from_base(&ext, *a)));
        match normalize_genus2(&lifted) {
            Ok(n) => return Ok((k, n)),
            Err(Error::Irrational(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Irrational("normal form needs more than a quartic extension".into()))
}

/// A uniformly drawn nondegenerate involution of `ℙ¹(𝔽_p)`.
pub fn random_involution<R: Rng + ?Sized>(k: &PrimeField, rng: &mut R) -> Homography<Fp> {
    loop {
        let c = [Fp::random(k, rng), Fp::random(k, rng), Fp::random(k, rng)];
        if nondegenerate(&c) {
            return Homography::involution(&c).expect("nondegenerate");
        }
    }
}

/// Six distinct finite points `(x₁, h(x₁), x₂, h(x₂), x₃, h(x₃))`.
pub fn involution_tuple<R: Rng + ?Sized>(k: &PrimeField, h: &Homography<Fp>, rng: &mut R) -> [Fp; 6] {
    loop {
        let mut pts = Vec::with_capacity(6);
        for _ in 0..3 {
            let x = ProjPoint::Finite(Fp::random(k, rng));
            pts.push(x.clone());
            pts.push(h.apply(&x));
        }
        if pts.iter().all(|p| p.finite().is_some()) && ensure_distinct(&pts).is_ok() {
            return std::array::from_fn(|i| *pts[i].finite().unwrap());
        }
    }
}

fn distinct_tuple<R: Rng + ?Sized>(k: &PrimeField, rng: &mut R) -> [Fp; 6] {
    loop {
        let a: [Fp; 6] = std::array::from_fn(|_| Fp::random(k, rng));
        if ensure_distinct(&a).is_ok() {
            return a;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionBattery {
    pub p: u64,
    pub generated: usize,
    pub generated_satisfied: usize,
    pub uniform: usize,
    pub uniform_satisfied: usize,
    pub uniform_allowed: usize,
    pub equivalence_samples: usize,
    pub equivalence_agreed: usize,
    pub passed: bool,
}

/// Involution-generated tuples must satisfy the criterion, uniform ones
/// rarely do, and the determinant vanishes exactly when the criterion holds.
/// Half of the equivalence samples are generated so both outcomes occur.
pub fn criterion_battery(
    p: u64,
    generated: usize,
    uniform: usize,
    uniform_allowed: usize,
    equivalence: usize,
    seed: u64,
) -> Result<CriterionBattery> {
    let k = PrimeField::new(p)?;
    let mut rng = seed::rng(seed::derive(seed, "generated"));
    let mut generated_satisfied = 0;
    for _ in 0..generated {
        let h = random_involution(&k, &mut rng);
        let a = involution_tuple(&k, &h, &mut rng);
        let r = pairing_involution(&pairs_of(&a))?;
        if involution_criterion(&a)? && r.involution.as_ref() == Some(&h) {
            generated_satisfied += 1;
        }
    }
    let mut rng = seed::rng(seed::derive(seed, "uniform"));
    let mut uniform_satisfied = 0;
    for _ in 0..uniform {
        if involution_criterion(&distinct_tuple(&k, &mut rng))? {
            uniform_satisfied += 1;
        }
    }
    let mut rng = seed::rng(seed::derive(seed, "equivalence"));
    let mut equivalence_agreed = 0;
    for i in 0..equivalence {
        let a = if i % 2 == 0 {
            let h = random_involution(&k, &mut rng);
            involution_tuple(&k, &h, &mut rng)
        } else {
            distinct_tuple(&k, &mut rng)
        };
        let (l, r) = criterion_sides(&a);
        let det = pairing_involution(&pairs_of(&a))?.determinant;
        if det.is_zero() == (l == r) {
            equivalence_agreed += 1;
        }
    }
    let passed =
        generated_satisfied == generated && uniform_satisfied <= uniform_allowed && equivalence_agreed == equivalence;
    Ok(CriterionBattery {
        p,
        generated,
        generated_satisfied,
        uniform,
        uniform_satisfied,
        uniform_allowed,
        equivalence_samples: equivalence,
        equivalence_agreed,
        passed,
    })
}

fn pairs_of(a: &[Fp; 6]) -> [(ProjPoint<Fp>, ProjPoint<Fp>); 3] {
    std::array::from_fn(|i| (ProjPoint::Finite(a[2 * i]), ProjPoint::Finite(a[2 * i + 1])))
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizationBattery {
    pub p: u64,
    pub target: usize,
    pub normalized: usize,
    pub verified: usize,
    /// Sets rejected as special position before the target was reached.
    pub special_position: usize,
    /// Successes over `𝔽_p`, `𝔽_{p²}`, `𝔽_{p⁴}`.
    pub by_degree: [usize; 3],
    pub passed: bool,
}

/// Normalizes random six-point sets until `target` succeed, verifying each
/// output by applying `h`.
pub fn normalization_battery(p: u64, target: usize, seed: u64) -> Result<NormalizationBattery> {
    let k = PrimeField::new(p)?;
    let mut rng = seed::rng(seed::derive(seed, "normalize"));
    let (mut normalized, mut verified, mut special, mut by_degree) = (0, 0, 0, [0usize; 3]);
    while normalized < target {
        if special > 10 * target + 100 {
            break;
        }
        let a = distinct_tuple(&k, &mut rng);
        let pts: [ProjPoint<Fp>; 6] = std::array::from_fn(|i| ProjPoint::Finite(a[i]));
        match normalize_genus2_fp(&pts, seed::derive(seed, "extension")) {
            Ok((d, n)) => {
                normalized += 1;
                by_degree[match d {
                    1 => 0,
                    2 => 1,
                    _ => 2,
                }] += 1;
                let ext = n.v.field().clone();
                let lifted: [ProjPoint<Fq>; 6] = std::array::from_fn(|i| pts[i].map(|x| Fq::from_base(&ext, *x)));
                if n.verify(&lifted) {
                    verified += 1;
                }
            }
            Err(Error::SpecialPosition(_)) => special += 1,
            Err(e) => return Err(e),
        }
    }
    let passed = normalized == target && verified == target;
    Ok(NormalizationBattery { p, target, normalized, verified, special_position: special, by_degree, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::mpoly::MPolyZ;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn qs(v: &[(i64, i64)]) -> [Rational; 6] {
        std::array::from_fn(|i| q(v[i].0, v[i].1))
    }

    fn fin<F: Field>(a: &[F; 6]) -> [ProjPoint<F>; 6] {
        std::array::from_fn(|i| ProjPoint::Finite(a[i].clone()))
    }

    fn pairs<F: Field>(a: &[F; 6]) -> [(ProjPoint<F>, ProjPoint<F>); 3] {
        std::array::from_fn(|i| (ProjPoint::Finite(a[2 * i].clone()), ProjPoint::Finite(a[2 * i + 1].clone())))
    }

    #[test]
    fn criterion_examples() {
        let neg = qs(&[(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1)]);
        assert!(involution_criterion(&neg).unwrap());
        let (l, r) = criterion_sides(&neg);
        assert!(l.is_zero() && r.is_zero());
        let seq = qs(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        assert_eq!(criterion_sides(&seq), (q(106, 1), q(74, 1)));
        assert!(!involution_criterion(&seq).unwrap());
        let recip = qs(&[(2, 1), (1, 2), (3, 1), (1, 3), (5, 1), (1, 5)]);
        assert!(involution_criterion(&recip).unwrap());
        let dup = qs(&[(1, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        assert_eq!(involution_criterion(&dup), Err(Error::DuplicateInput));
    }

    #[test]
    fn pairing_examples() {
        let neg = qs(&[(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1)]);
        let r = pairing_involution(&pairs(&neg)).unwrap();
        let minus = Homography::new(q(1, 1), q(0, 1), q(0, 1), q(-1, 1)).unwrap();
        assert_eq!(r.involution, Some(minus));
        let recip = qs(&[(2, 1), (1, 2), (3, 1), (1, 3), (5, 1), (1, 5)]);
        let r = pairing_involution(&pairs(&recip)).unwrap();
        let inv = Homography::new(q(0, 1), q(1, 1), q(1, 1), q(0, 1)).unwrap();
        assert_eq!(r.involution, Some(inv));
        let seq = qs(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        let r = pairing_involution(&pairs(&seq)).unwrap();
        assert!(!r.exists && !r.determinant.is_zero());
    }

    #[test]
    fn determinant_expands_to_the_criterion() {
        // symbolic expansion over ℤ[a1..a6] of the 3×3 system against LHS − RHS
        let names = ["a1", "a2", "a3", "a4", "a5", "a6"];
        let a = MPolyZ::vars_of(&names);
        let one = MPolyZ::constant(&names, 1);
        let row = |i: usize| [&a[2 * i] + &a[2 * i + 1], one.clone(), -&(&a[2 * i] * &a[2 * i + 1])];
        let r = [row(0), row(1), row(2)];
        let m = |i: usize, j: usize| r[i][j].clone();
        let det = &(&m(0, 0) * &(&(&m(1, 1) * &m(2, 2)) - &(&m(1, 2) * &m(2, 1))))
            - &(&(&m(0, 1) * &(&(&m(1, 0) * &m(2, 2)) - &(&m(1, 2) * &m(2, 0))))
                - &(&m(0, 2) * &(&(&m(1, 0) * &m(2, 1)) - &(&m(1, 1) * &m(2, 0)))));
        let t = |i: usize, j: usize, k: usize| &(&a[i - 1] * &a[j - 1]) * &a[k - 1];
        let lhs = [t(6, 5, 3), t(6, 5, 4), t(6, 2, 1), t(5, 2, 1), t(1, 4, 3), t(2, 4, 3)];
        let rhs = [t(6, 5, 1), t(6, 5, 2), t(6, 4, 3), t(5, 4, 3), t(2, 1, 3), t(2, 1, 4)];
        let sum = |v: &[MPolyZ]| v.iter().fold(MPolyZ::zero(&names), |acc, x| &acc + x);
        let diff = &sum(&lhs) - &sum(&rhs);
        assert!((&det - &diff).is_zero() || (&det + &diff).is_zero(), "det = {det}, diff = {diff}");
    }

    #[test]
    fn infinity_in_a_pair() {
        // x ↦ 6/x swaps (0, ∞), (2, 3), (1, 6)
        let r: [(ProjPoint<Rational>, ProjPoint<Rational>); 3] = [
            (ProjPoint::Finite(q(0, 1)), ProjPoint::Infinity),
            (ProjPoint::Finite(q(2, 1)), ProjPoint::Finite(q(3, 1))),
            (ProjPoint::Finite(q(1, 1)), ProjPoint::Finite(q(6, 1))),
        ];
        let rep = pairing_involution(&r).unwrap();
        assert_eq!(rep.involution, Some(Homography::new(q(0, 1), q(6, 1), q(1, 1), q(0, 1)).unwrap()));
    }

    #[test]
    fn already_normal() {
        let pts = fin(&qs(&[(3, 1), (-3, 1), (5, 1), (-5, 1), (2, 1), (1, 2)]));
        let n = normalize_genus2(&pts).unwrap();
        assert!(n.verify(&pts));
        let stab = [
            Homography::identity(&()),
            Homography::new(q(-1, 1), q(0, 1), q(0, 1), q(1, 1)).unwrap(),
            Homography::new(q(0, 1), q(1, 1), q(1, 1), q(0, 1)).unwrap(),
            Homography::new(q(0, 1), q(-1, 1), q(1, 1), q(0, 1)).unwrap(),
        ];
        assert!(stab.contains(&n.h), "{:?}", n.h);
    }

    #[test]
    fn special_position() {
        // P₃ = P₄ is rejected as a duplicate; collapsing u needs a repeated pair
        let pts = fin(&qs(&[(1, 1), (2, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(normalize_genus2(&pts).unwrap_err(), Error::DuplicateInput);
        // P₅, P₆ the fixed points 0, ∞ of u = −x: w exists but v would be 0
        let mut pts: [ProjPoint<Rational>; 6] = fin(&qs(&[(1, 1), (-1, 1), (2, 1), (-2, 1), (0, 1), (7, 1)]));
        pts[5] = ProjPoint::Infinity;
        assert!(matches!(normalize_genus2(&pts), Err(Error::SpecialPosition(_))));
    }

    #[test]
    fn random_sets_over_small_prime() {
        let k = PrimeField::new(101).unwrap();
        let mut rng = seed::rng(5);
        let (mut ok, mut degrees) = (0, [0usize; 5]);
        while ok < 30 {
            let mut v: Vec<Fp> = Vec::new();
            while v.len() < 6 {
                let x = Fp::random(&k, &mut rng);
                if !v.contains(&x) {
                    v.push(x);
                }
            }
            let pts: [ProjPoint<Fp>; 6] = std::array::from_fn(|i| ProjPoint::Finite(v[i]));
            match normalize_genus2_fp(&pts, 1) {
                Ok((d, n)) => {
                    let ext = n.v.field().clone();
                    let lifted: [ProjPoint<Fq>; 6] = std::array::from_fn(|i| pts[i].map(|a| Fq::from_base(&ext, *a)));
                    assert!(n.verify(&lifted));
                    degrees[d] += 1;
                    ok += 1;
                }
                Err(Error::SpecialPosition(_)) => {}
                Err(e) => panic!("{e:?}"),
            }
        }
        assert!(degrees[1] + degrees[2] + degrees[4] == 30);
    }

    #[test]
    fn batteries() {
        let c = criterion_battery(10007, 20, 20, 5, 40, 3).unwrap();
        assert!(c.passed, "{c:?}");
        let n = normalization_battery(101, 10, 3).unwrap();
        assert!(n.passed, "{n:?}");
        assert_eq!(n.by_degree.iter().sum::<usize>(), 10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn criterion_symmetries(s in any::<u64>()) {
            let k = PrimeField::new(10007).unwrap();
            let mut rng = seed::rng(s);
            let a: [Fp; 6] = std::array::from_fn(|_| Fp::random(&k, &mut rng));
            prop_assume!(ensure_distinct(&a).is_ok());
            let c = involution_criterion(&a).unwrap();
            let swapped = [a[1], a[0], a[2], a[3], a[5], a[4]];
            let permuted = [a[4], a[5], a[0], a[1], a[2], a[3]];
            let permuted2 = [a[2], a[3], a[0], a[1], a[4], a[5]];
            prop_assert_eq!(involution_criterion(&swapped).unwrap(), c);
            prop_assert_eq!(involution_criterion(&permuted).unwrap(), c);
            prop_assert_eq!(involution_criterion(&permuted2).unwrap(), c);
        }

        #[test]
        fn generated_tuples_satisfy_the_criterion(s in any::<u64>()) {
            let k = PrimeField::new(10007).unwrap();
            let mut rng = seed::rng(s);
            let h = random_involution(&k, &mut rng);
            let mut pts = Vec::new();
            for _ in 0..3 {
                let x = ProjPoint::Finite(Fp::random(&k, &mut rng));
                pts.push(h.apply(&x));
                pts.push(x);
            }
            prop_assume!(pts.iter().all(|p| p.finite().is_some()) && ensure_distinct(&pts).is_ok());
            let a: [Fp; 6] = std::array::from_fn(|i| *pts[i].finite().unwrap());
            prop_assert!(involution_criterion(&a).unwrap());
            let r = pairing_involution(&pairs(&a)).unwrap();
            prop_assert!(r.exists);
            let inv = r.involution.unwrap();
            prop_assert!(inv.compose(&inv).is_identity());
            prop_assert_eq!(inv, h);
        }

        #[test]
        fn normal_form_is_stable_under_the_stabilizer(s in any::<u64>()) {
            let k = PrimeField::new(10007).unwrap();
            let mut rng = seed::rng(s);
            let a: [Fp; 6] = std::array::from_fn(|_| Fp::random(&k, &mut rng));
            prop_assume!(ensure_distinct(&a).is_ok());
            let pts = fin(&a);
            if let Ok((_, n)) = normalize_genus2_fp(&pts, 2) {
                let ext = n.v.field().clone();
                let (o, z) = (Fq::from_base(&ext, k.elem(1)), Fq::from_base(&ext, k.elem(0)));
                for g in [
                    Homography::new(-o.clone(), z.clone(), z.clone(), o.clone()).unwrap(),
                    Homography::new(z.clone(), o.clone(), o.clone(), z.clone()).unwrap(),
                ] {
                    let m = Normalization {
                        h: g.compose(&n.h),
                        x1: g.apply(&ProjPoint::Finite(n.x1.clone())).finite().unwrap().clone(),
                        x2: g.apply(&ProjPoint::Finite(n.x2.clone())).finite().unwrap().clone(),
                        v: g.apply(&ProjPoint::Finite(n.v.clone())).finite().unwrap().clone(),
                    };
                    let lifted: [ProjPoint<Fq>; 6] = std::array::from_fn(|i| pts[i].map(|x| Fq::from_base(&ext, *x)));
                    prop_assert!(m.verify(&lifted));
                }
            }
        }
    }
}
