//! The 2-2 correspondence between the two curves of a pair, as a map on
//! points and on divisor classes, with the checks built on top of it.
//!
//! Points are taken on the even-degree models. A point `(X, Y)` of the first
//! curve corresponds to the two points of the second curve over the roots of
//! `S(X, z) = 0`, with `t` read off the second defining equation of the
//! correspondence. Odd genus is handled on the even parent, with `y` and `t`
//! rescaled by the recorded square factors.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::CurvePair;
use crate::field::{ext_build, ExtField, Field, FiniteField, Fp, Fq, PrimeField, MAX_EXT_DEGREE};
use crate::jacobian::{DivClass, OddModel};
use crate::seed;
use crate::upoly::{BiPoly, UPoly};

pub const DEFAULT_RETRIES: usize = 200;

/// Largest extension degree over which decomposition points may live.
const MAX_SPLIT_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// From the first curve to the second.
    Forward,
    /// From the second curve back to the first.
    Transpose,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Transpose,
            Direction::Transpose => Direction::Forward,
        }
    }
}

/// One curve of the pair together with its odd model and the factor relating
/// its ordinate to the parent's (`1` for even genus).
#[derive(Clone, Debug)]
pub struct Side<F: Field> {
    pub f: UPoly<F>,
    pub model: Arc<OddModel<F>>,
    pub scale: UPoly<F>,
}

impl<F: Field> Side<F> {
    fn map<G: Field>(&self, ctx: &G::Ctx, h: impl Fn(&F) -> G + Copy) -> Side<G> {
        Side { f: self.f.map(ctx, h), model: Arc::new(self.model.map(ctx, h)), scale: self.scale.map(ctx, h) }
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        y.square() == self.f.eval(x)
    }
}

/// Image of a point: an effective degree-2 divisor on the other curve, as an
/// even-model Mumford pair.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaImage<F: Field> {
    pub u: UPoly<F>,
    pub v: UPoly<F>,
}

impl<F: Field + Serialize> Serialize for GammaImage<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({ "u": self.u, "v": self.v }).serialize(s)
    }
}

#[derive(Clone, Debug)]
pub struct Correspondence<F: Field> {
    pub v: F,
    pub s: BiPoly<F>,
    pub m: BiPoly<F>,
    pub genus: usize,
    pub sides: [Side<F>; 2],
}

impl<F: Field> Correspondence<F> {
    pub fn new(pair: &CurvePair<F>) -> Result<Self> {
        let ctx = &pair.params.ctx;
        let v = pair.params.v.clone();
        let (xs, zs) = match &pair.transport {
            Some(t) => (t.x_factor.clone(), t.z_factor.clone()),
            None => (UPoly::one(ctx), UPoly::one(ctx)),
        };
        let side = |f: &UPoly<F>, scale: UPoly<F>| -> Result<Side<F>> {
            Ok(Side { f: f.clone(), model: OddModel::from_even(f, &v)?, scale })
        };
        Ok(Correspondence {
            v: v.clone(),
            s: pair.s.clone(),
            m: pair.m.clone(),
            genus: pair.params.g,
            sides: [side(&pair.c.f, xs)?, side(&pair.c_prime.f, zs)?],
        })
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, h: impl Fn(&F) -> G + Copy) -> Correspondence<G> {
        Correspondence {
            v: h(&self.v),
            s: self.s.map(ctx, h),
            m: self.m.map(ctx, h),
            genus: self.genus,
            sides: [self.sides[0].map(ctx, h), self.sides[1].map(ctx, h)],
        }
    }

    pub fn source(&self, dir: Direction) -> &Side<F> {
        match dir {
            Direction::Forward => &self.sides[0],
            Direction::Transpose => &self.sides[1],
        }
    }

    pub fn target(&self, dir: Direction) -> &Side<F> {
        self.source(dir.reverse())
    }

    /// Away from `y = 0` and from `x ∈ {0, ±v, ±1/v}`.
    pub fn is_good(&self, x: &F, y: &F) -> bool {
        let v2 = self.v.square();
        let x2 = x.square();
        !y.is_zero() && !x.is_zero() && x2 != v2 && !(v2 * x2).is_one()
    }

    /// The fiber polynomial `S(X, ·)` (monic) and the ordinate polynomial,
    /// without any validity checks on the input point.
    fn fiber(&self, x: &F, dir: Direction) -> (UPoly<F>, UPoly<F>) {
        match dir {
            Direction::Forward => (self.s.eval_x(x), self.m.eval_x(x)),
            Direction::Transpose => (self.s.eval_z(x), self.m.eval_z(x)),
        }
    }

    pub fn gamma_point(&self, x: &F, y: &F, dir: Direction) -> Result<GammaImage<F>> {
        let (src, tgt) = (self.source(dir), self.target(dir));
        if !src.contains(x, y) {
            return Err(Error::NotOnCurve);
        }
        if y.is_zero() {
            return Err(Error::WeierstrassPoint);
        }
        let one = x.one_like();
        let v = &self.v;
        let v2 = v.square();
        let x2 = x.square();
        if x2 == v2 {
            return Err(Error::EmptyFiber);
        }
        if (v2.clone() * x2).is_one() {
            return Err(Error::RamifiedFiber);
        }
        let ctx = x.ctx();
        let (s, m) = self.fiber(x, dir);
        let u = s.monic()?;
        let y_parent = src.scale.eval(x) * y.clone();
        if y_parent.is_zero() {
            return Err(Error::BadFiber);
        }
        // (1 − Xv) + (X − v)·w
        let cross = UPoly::from_coeffs(&ctx, vec![one.clone() - x.clone() * v.clone(), x.clone() - v.clone()]);
        let coef = (v2 + one).div(&y_parent)?;
        let v_parent = (&m * &cross).scale(&coef).rem(&u)?;
        let s_inv = tgt.scale.inv_mod(&u).map_err(|_| Error::BadFiber)?;
        let img = v_parent.mulmod(&s_inv, &u)?;
        assert!((&(&img * &img) - &tgt.f).rem(&u)?.is_zero(), "image ordinate incompatible with the target curve");
        Ok(GammaImage { u, v: img })
    }
}

/// A decomposition `c = [ΣT − ΣQ]` with every point away from the bad locus.
/// `T` lives in the extension of degree `degree`; `Q` is rational.
#[derive(Clone, Debug)]
pub struct GoodDecomposition {
    pub degree: usize,
    pub t: Vec<(Fq, Fq)>,
    pub q: Vec<(Fp, Fp)>,
    pub attempts: usize,
}

struct Lifted {
    ext: Arc<ExtField>,
    corr: Correspondence<Fq>,
}

/// Class-level action of the correspondence over a prime field.
pub struct ClassMapper {
    pub corr: Correspondence<Fp>,
    pub field: PrimeField,
    seed: u64,
    lifts: [OnceLock<Lifted>; MAX_EXT_DEGREE + 1],
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl ClassMapper {
    pub fn new(pair: &CurvePair<Fp>, seed: u64) -> Result<Self> {
        Ok(ClassMapper { corr: Correspondence::new(pair)?, field: pair.params.ctx, seed, lifts: Default::default() })
    }

    pub fn genus(&self) -> usize {
        self.corr.genus
    }

    fn lifted(&self, k: usize) -> Result<&Lifted> {
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::InvalidDegree(k));
        }
        if let Some(l) = self.lifts[k].get() {
            return Ok(l);
        }
        let ext = ext_build(self.field.p(), k, seed::derive(self.seed, "extension") ^ k as u64)?;
        let corr = self.corr.map(&ext, |a| Fq::from_base(&ext, *a));
        Ok(self.lifts[k].get_or_init(|| Lifted { ext, corr }))
    }

    pub fn source_model(&self, dir: Direction) -> &Arc<OddModel<Fp>> {
        &self.corr.source(dir).model
    }

    pub fn target_model(&self, dir: Direction) -> &Arc<OddModel<Fp>> {
        &self.corr.target(dir).model
    }

    /// A random rational point of the source curve away from the bad locus.
    pub fn random_good_point<R: Rng + ?Sized>(&self, dir: Direction, rng: &mut R) -> (Fp, Fp) {
        let src = self.corr.source(dir);
        loop {
            let x = Fp::random(&self.field, rng);
            if let Some(y) = src.f.eval(&x).sqrt() {
                let y = if rng.gen::<bool>() { y } else { -y };
                if self.corr.is_good(&x, &y) {
                    return (x, y);
                }
            }
        }
    }

    pub fn point_class(&self, dir: Direction, x: &Fp, y: &Fp) -> Result<DivClass<Fp>> {
        let model = self.source_model(dir);
        DivClass::from_point(model, &model.to_odd(x, y)?)
    }

    pub fn lift_class(&self, c: &DivClass<Fp>, k: usize, dir: Direction, on_target: bool) -> Result<DivClass<Fq>> {
        let l = self.lifted(k)?;
        let side = if on_target { l.corr.target(dir) } else { l.corr.source(dir) };
        let ext = &l.ext;
        Ok(c.map_to(&side.model, |a| Fq::from_base(ext, *a)))
    }

    fn descend(&self, c: &DivClass<Fq>, model: &Arc<OddModel<Fp>>) -> Result<DivClass<Fp>> {
        let down = |p: &UPoly<Fq>| -> Result<UPoly<Fp>> {
            let cs = p
                .coeffs()
                .iter()
                .map(|a| a.to_base().ok_or_else(|| Error::Irrational("image class is not rational".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(UPoly::from_coeffs(&self.field, cs))
        };
        DivClass::from_mumford(model, down(c.u())?, down(c.v())?)
    }

    /// Write `c` as `[ΣT − ΣQ]` with all points good.
    pub fn decompose(&self, c: &DivClass<Fp>, dir: Direction, seed: u64, retries: usize) -> Result<GoodDecomposition> {
        let g = self.genus();
        let mut rng = seed::rng(seed);
        for attempt in 1..=retries {
            let q: Vec<(Fp, Fp)> = (0..g).map(|_| self.random_good_point(dir, &mut rng)).collect();
            let mut d = c.clone();
            for (x, y) in &q {
                d = d.add(&self.point_class(dir, x, y)?)?;
            }
            if d.weight() != g || !d.u().is_squarefree() {
                continue;
            }
            let degrees: Vec<usize> = d.u().distinct_degree()?.into_iter().map(|(k, _)| k).collect();
            if degrees.iter().any(|&k| k > MAX_SPLIT_DEGREE) {
                continue;
            }
            let k = degrees.iter().fold(1, |a, &b| lcm(a, b));
            let l = self.lifted(k)?;
            let src = l.corr.source(dir);
            let ext = l.ext.clone();
            let lift = |p: &UPoly<Fp>| p.map(&ext, |a| Fq::from_base(&ext, *a));
            let (uw, vw) = (lift(d.u()), lift(d.v()));
            let roots = uw.roots(&mut rng)?;
            let mut t = Vec::with_capacity(g);
            for w in roots {
                if w.is_zero() {
                    break;
                }
                let (x, y) = src.model.to_even(&w, &vw.eval(&w))?;
                if !l.corr.is_good(&x, &y) {
                    break;
                }
                t.push((x, y));
            }
            if t.len() == g {
                return Ok(GoodDecomposition { degree: k, t, q, attempts: attempt });
            }
        }
        Err(Error::DecompositionFailure(retries))
    }

    /// `[ΣT − ΣQ]` recomputed in the extension, for verification.
    pub fn recompose(&self, dec: &GoodDecomposition, dir: Direction) -> Result<DivClass<Fq>> {
        let l = self.lifted(dec.degree)?;
        let model = &l.corr.source(dir).model;
        let mut acc = DivClass::identity(model);
        for (x, y) in &dec.t {
            acc = acc.add(&DivClass::from_point(model, &model.to_odd(x, y)?)?)?;
        }
        for (x, y) in &dec.q {
            let (x, y) = (Fq::from_base(&l.ext, *x), Fq::from_base(&l.ext, *y));
            acc = acc.sub(&DivClass::from_point(model, &model.to_odd(&x, &y)?)?)?;
        }
        Ok(acc)
    }

    fn image_class(&self, l: &Lifted, x: &Fq, y: &Fq, dir: Direction) -> Result<DivClass<Fq>> {
        let img = l.corr.gamma_point(x, y, dir)?;
        l.corr.target(dir).model.class_from_even(&img.u, &img.v)
    }

    /// Action of the correspondence on a rational divisor class.
    pub fn gamma_class(&self, c: &DivClass<Fp>, dir: Direction, seed: u64) -> Result<DivClass<Fp>> {
        if c.is_identity() {
            return Ok(DivClass::identity(self.target_model(dir)));
        }
        let dec = self.decompose(c, dir, seed, DEFAULT_RETRIES)?;
        let l = self.lifted(dec.degree)?;
        let mut acc = DivClass::identity(&l.corr.target(dir).model);
        for (x, y) in &dec.t {
            acc = acc.add(&self.image_class(l, x, y, dir)?)?;
        }
        for (x, y) in &dec.q {
            let (x, y) = (Fq::from_base(&l.ext, *x), Fq::from_base(&l.ext, *y));
            acc = acc.sub(&self.image_class(l, &x, &y, dir)?)?;
        }
        self.descend(&acc, self.target_model(dir))
    }

    /// `Γ′(Γ(c))`.
    pub fn round_trip(&self, c: &DivClass<Fp>, seed: u64) -> Result<DivClass<Fp>> {
        let img = self.gamma_class(c, Direction::Forward, seed::derive(seed, "forward"))?;
        self.gamma_class(&img, Direction::Transpose, seed::derive(seed, "transpose"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MultByTwoReport {
    pub trials: usize,
    pub agreed: usize,
    pub passed: bool,
    pub failures: Vec<Value>,
}

/// `Γ′∘Γ = [2]` on random classes.
pub fn check_mult_by_two(mapper: &ClassMapper, trials: usize, seed: u64) -> Result<MultByTwoReport> {
    let model = mapper.source_model(Direction::Forward);
    let mut failures = Vec::new();
    for t in 0..trials {
        let s = seed::derive_indexed(seed, "mult-by-two", t);
        let c = crate::jacobian::random_class(model, s);
        let got = mapper.round_trip(&c, s)?;
        let want = c.scalar_mul(2);
        if got != want {
            failures.push(json!({ "trial": t, "class": c.to_json(), "got": got.to_json(), "want": want.to_json() }));
        }
    }
    Ok(MultByTwoReport { trials, agreed: trials - failures.len(), passed: failures.is_empty(), failures })
}

/// `φ(c₁ + c₂) = φ(c₁) + φ(c₂)` on random pairs of classes.
pub fn check_homomorphism(mapper: &ClassMapper, trials: usize, seed: u64) -> Result<usize> {
    let model = mapper.source_model(Direction::Forward);
    let mut ok = 0;
    for t in 0..trials {
        let s = seed::derive_indexed(seed, "homomorphism", t);
        let c1 = crate::jacobian::random_class(model, seed::derive(s, "c1"));
        let c2 = crate::jacobian::random_class(model, seed::derive(s, "c2"));
        let f = |c: &DivClass<Fp>, l: &str| mapper.gamma_class(c, Direction::Forward, seed::derive(s, l));
        if f(&c1.add(&c2)?, "sum")? == f(&c1, "one")?.add(&f(&c2, "two")?)? {
            ok += 1;
        }
    }
    Ok(ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub genus: usize,
    pub generators_nonzero: bool,
    pub combinations: usize,
    pub combinations_nonzero: bool,
    pub images_identity: Vec<bool>,
    pub passed: bool,
}

/// The classes `eᵢ = [(√aᵢ, 0) − (−√aᵢ, 0)]` on the first curve.
pub fn kernel_generators(mapper: &ClassMapper, a: &[Fp]) -> Result<Vec<DivClass<Fp>>> {
    let model = mapper.source_model(Direction::Forward);
    let zero = mapper.field.elem(0);
    a.iter()
        .enumerate()
        .map(|(i, ai)| {
            let r = ai.sqrt().ok_or_else(|| Error::PrimeUnsuitable(format!("a{} is not a square", i + 1)))?;
            let p = model.to_odd(&r, &zero)?;
            let q = model.to_odd(&-r, &zero)?;
            crate::jacobian::point_class(model, &p, &q)
        })
        .collect()
}

/// The subgroup generated by the `eᵢ` has order `2ᵍ` and lies in the kernel.
pub fn check_kernel(mapper: &ClassMapper, pair: &CurvePair<Fp>, seed: u64) -> Result<KernelReport> {
    let e = kernel_generators(mapper, &pair.params.a)?;
    let g = e.len();
    let generators_nonzero = e.iter().all(|c| !c.is_identity());
    let model = mapper.source_model(Direction::Forward);
    let mut combinations_nonzero = true;
    for mask in 1u32..(1 << g) {
        let mut acc = DivClass::identity(model);
        for (i, c) in e.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.add(c)?;
            }
        }
        combinations_nonzero &= !acc.is_identity();
    }
    let images_identity = e
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(mapper.gamma_class(c, Direction::Forward, seed::derive_indexed(seed, "kernel", i))?.is_identity())
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = generators_nonzero && combinations_nonzero && images_identity.iter().all(|&b| b);
    Ok(KernelReport {
        genus: g,
        generators_nonzero,
        combinations: (1 << g) - 1,
        combinations_nonzero,
        images_identity,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub x: Fp,
    pub y: Fp,
    /// The companion point `P₁` (abscissa `−x`), coordinates in the quadratic
    /// extension.
    pub p1: (Fq, Fq),
    pub degenerate: bool,
    pub passed: bool,
}

/// `Γ′(Γ(P)) = 2P + P₁ + w(P₁)` with `x(P₁) = −x(P)`, as a multiset of points.
pub fn check_point_proposition(mapper: &ClassMapper, x: Fp, y: Fp) -> Result<PointReport> {
    let corr = &mapper.corr;
    if y.is_zero() {
        return Err(Error::WeierstrassPoint);
    }
    if !corr.sides[0].contains(&x, &y) {
        return Err(Error::NotOnCurve);
    }
    let l = mapper.lifted(2)?;
    let lift = |a: &Fp| Fq::from_base(&l.ext, *a);
    let (xq, yq) = (lift(&x), lift(&y));
    if x.is_zero() {
        return point_proposition_at_zero(mapper, l, xq, yq);
    }
    let img = l.corr.gamma_point(&xq, &yq, Direction::Forward)?;
    let mut rng = seed::rng(0);
    let mut pts = Vec::new();
    for z in img.u.roots(&mut rng)? {
        let t = img.v.eval(&z);
        if !l.corr.is_good(&z, &t) {
            return Err(Error::BadFiber);
        }
        let back = l.corr.gamma_point(&z, &t, Direction::Transpose)?;
        for xr in back.u.roots(&mut rng)? {
            let yr = back.v.eval(&xr);
            pts.push((xr, yr));
        }
    }
    if pts.len() != 4 {
        return Err(Error::BadFiber);
    }
    let at_p: Vec<_> = pts.iter().filter(|(a, _)| *a == xq).collect();
    let at_neg: Vec<_> = pts.iter().filter(|(a, _)| *a == -xq.clone()).collect();
    let passed = at_p.len() == 2
        && at_p.iter().all(|(_, b)| *b == yq)
        && at_neg.len() == 2
        && (at_neg[0].1.clone() + at_neg[1].1.clone()).is_zero()
        && l.corr.sides[0].contains(&at_neg[0].0, &at_neg[0].1);
    let p1 = at_neg.first().map(|p| (*p).clone()).unwrap_or((-xq, yq));
    Ok(PointReport { x, y, p1, degenerate: false, passed })
}

/// `x(P) = 0`: the fiber of `Γ` is `z = ±1/v`, one point of which is a branch
/// point of the second curve; the fibers of `Γ′` over both are ramified at
/// `x = 0`.
fn point_proposition_at_zero(mapper: &ClassMapper, l: &Lifted, xq: Fq, yq: Fq) -> Result<PointReport> {
    let corr = &l.corr;
    if corr.genus % 2 == 1 {
        return Err(Error::BadFiber);
    }
    let img = corr.gamma_point(&xq, &yq, Direction::Forward)?;
    let vinv = corr.v.inv()?;
    let one = xq.one_like();
    // over z = 1/v the second curve has t = 0, and the correspondence equation
    // reads y·0 = 0, so both points above x = 0 occur: P + w(P)
    let t_w = img.v.eval(&vinv);
    // over z = −1/v: y = M(0, −1/v)(v² + 1)·2/t, with multiplicity two
    let z2 = -vinv;
    let t2 = img.v.eval(&z2);
    if !t_w.is_zero() || t2.is_zero() {
        return Err(Error::BadFiber);
    }
    let y2 = corr.m.eval(&xq, &z2) * (corr.v.square() + one.clone()) * one.int_like(2) * t2.inv()?;
    let passed = y2 == yq;
    Ok(PointReport {
        x: mapper.field.elem(0),
        y: yq.to_base().expect("rational"),
        p1: (xq, yq),
        degenerate: true,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sqrt2Report {
    pub trials: usize,
    pub equals_plus_two: usize,
    pub equals_minus_two: usize,
    pub other: usize,
    /// `"+2"`, `"-2"`, or `"mixed"`.
    pub observed: String,
}

/// For the self-dual family, identify the second curve with the first via
/// `t ↦ √A·t` and compare `φ∘φ` with `±[2]`.
pub fn measure_phi_squared(
    mapper: &ClassMapper,
    pair: &CurvePair<Fp>,
    trials: usize,
    seed: u64,
) -> Result<Sqrt2Report> {
    if pair.c_thm.f != pair.c_prime_thm.f {
        return Err(Error::Invalid("the two curves have different branch sets".into()));
    }
    let root_a =
        pair.a_const.sqrt().ok_or_else(|| Error::PrimeUnsuitable("A is not a square, the curves are twists".into()))?;
    let c_model = mapper.source_model(Direction::Forward);
    let iso = |d: &DivClass<Fp>| DivClass::from_mumford(c_model, d.u().clone(), d.v().scale(&root_a));
    let phi =
        |d: &DivClass<Fp>, s: u64| -> Result<DivClass<Fp>> { iso(&mapper.gamma_class(d, Direction::Forward, s)?) };
    let (mut plus, mut minus, mut other) = (0, 0, 0);
    for t in 0..trials {
        let s = seed::derive_indexed(seed, "phi-squared", t);
        let c = crate::jacobian::random_class(c_model, s);
        let pp = phi(&phi(&c, seed::derive(s, "first"))?, seed::derive(s, "second"))?;
        let two = c.scalar_mul(2);
        if pp == two {
            plus += 1;
        } else if pp == two.neg() {
            minus += 1;
        } else {
            other += 1;
        }
    }
    let observed = match (plus, minus, other) {
        (_, 0, 0) => "+2",
        (0, _, 0) => "-2",
        _ => "mixed",
    };
    Ok(Sqrt2Report { trials, equals_plus_two: plus, equals_minus_two: minus, other, observed: observed.into() })
}

/// `(P, Q) ∈ Γ ⇔ (Q, P) ∈ Γ′`: each point over `Γ(P)` maps back to a divisor
/// containing `P`. Returns the number of agreeing samples.
pub fn check_transpose(mapper: &ClassMapper, trials: usize, seed: u64) -> Result<usize> {
    let l = mapper.lifted(2)?;
    let mut rng = seed::rng(seed::derive(seed, "transpose"));
    let mut ok = 0;
    for _ in 0..trials {
        let (x, y) = mapper.random_good_point(Direction::Forward, &mut rng);
        let (xq, yq) = (Fq::from_base(&l.ext, x), Fq::from_base(&l.ext, y));
        let img = l.corr.gamma_point(&xq, &yq, Direction::Forward)?;
        let mut all = true;
        for z in img.u.roots(&mut rng)? {
            let t = img.v.eval(&z);
            let back = l.corr.gamma_point(&z, &t, Direction::Transpose)?;
            all &= back.u.eval(&xq).is_zero() && back.v.eval(&xq) == yq;
        }
        ok += all as usize;
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build, sqrt2_params, validate_params, ValidationLevel};

    fn pair(p: u64, g: usize, v: u64, a: &[u64]) -> CurvePair<Fp> {
        let k = PrimeField::new(p).unwrap();
        let ps =
            validate_params(g, k.elem(v), a.iter().map(|&x| k.elem(x)).collect(), &k, ValidationLevel::Pair).unwrap();
        build(&ps).unwrap()
    }

    #[test]
    fn gamma_point_errors() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let corr = Correspondence::new(&pr).unwrap();
        let k = pr.params.ctx;
        let v = k.elem(3);
        // a branch point
        assert_eq!(corr.gamma_point(&v, &k.elem(0), Direction::Forward), Err(Error::WeierstrassPoint));
        let f = &corr.sides[0].f;
        let find = |x: Fp| f.eval(&x).sqrt().filter(|y| !y.is_zero()).map(|y| (x, y));
        for (x, err) in [
            (-v, Error::EmptyFiber),
            (v.inv().unwrap(), Error::RamifiedFiber),
            (-v.inv().unwrap(), Error::RamifiedFiber),
        ] {
            if let Some((x, y)) = find(x) {
                assert_eq!(corr.gamma_point(&x, &y, Direction::Forward), Err(err));
            }
        }
        assert_eq!(corr.gamma_point(&k.elem(1), &k.elem(1), Direction::Forward), Err(Error::NotOnCurve));
    }

    #[test]
    fn gamma_point_at_zero_hits_branch_point() {
        // X = 0: fiber z² = 1/v², and the image passes through (1/v, 0)
        let mut found = false;
        for p in [101u64, 103, 107, 109, 113] {
            let pr = pair(p, 2, 3, &[2, 5]);
            let corr = Correspondence::new(&pr).unwrap();
            let k = pr.params.ctx;
            let Some(y) = corr.sides[0].f.eval(&k.elem(0)).sqrt() else { continue };
            let img = corr.gamma_point(&k.elem(0), &y, Direction::Forward).unwrap();
            let vi = k.elem(3).inv().unwrap();
            assert_eq!(img.u, UPoly::from_coeffs(&k, vec![-vi.square(), k.elem(0), k.elem(1)]));
            assert!(img.v.eval(&vi).is_zero());
            found = true;
        }
        assert!(found);
    }

    #[test]
    fn images_satisfy_the_target_equation() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let mut rng = seed::rng(4);
        for _ in 0..30 {
            let (x, y) = m.random_good_point(Direction::Forward, &mut rng);
            let img = m.corr.gamma_point(&x, &y, Direction::Forward).unwrap();
            assert!((&(&img.v * &img.v) - &m.corr.sides[1].f).rem(&img.u).unwrap().is_zero());
            let (z, t) = m.random_good_point(Direction::Transpose, &mut rng);
            m.corr.gamma_point(&z, &t, Direction::Transpose).unwrap();
        }
    }

    #[test]
    fn decompositions_recompose() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let model = m.source_model(Direction::Forward).clone();
        let id = DivClass::identity(&model);
        let dec = m.decompose(&id, Direction::Forward, 5, DEFAULT_RETRIES).unwrap();
        assert!(m.recompose(&dec, Direction::Forward).unwrap().is_identity());
        let mut rng = seed::rng(8);
        let (x1, y1) = m.random_good_point(Direction::Forward, &mut rng);
        let (x2, y2) = m.random_good_point(Direction::Forward, &mut rng);
        let c = m
            .point_class(Direction::Forward, &x1, &y1)
            .unwrap()
            .sub(&m.point_class(Direction::Forward, &x2, &y2).unwrap())
            .unwrap();
        for s in 0..5 {
            let dec = m.decompose(&c, Direction::Forward, s, DEFAULT_RETRIES).unwrap();
            let lifted = m.lift_class(&c, dec.degree, Direction::Forward, false).unwrap();
            assert_eq!(m.recompose(&dec, Direction::Forward).unwrap(), lifted);
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let id = DivClass::identity(m.source_model(Direction::Forward));
        assert!(m.gamma_class(&id, Direction::Forward, 3).unwrap().is_identity());
    }

    #[test]
    fn round_trip_is_doubling_genus_two() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let r = check_mult_by_two(&m, 8, 11).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn round_trip_is_doubling_odd_genus() {
        for (g, a) in [(1usize, vec![3u64]), (3, vec![3, 5, 7])] {
            let pr = pair(101, g, 2, &a);
            let m = ClassMapper::new(&pr, 1).unwrap();
            let r = check_mult_by_two(&m, 4, 12).unwrap();
            assert!(r.passed, "g = {g}: {:?}", r.failures);
        }
    }

    #[test]
    fn kernel_genus_two() {
        // 4 = 2², 9 = 3² in 𝔽₁₀₁; v = 5
        let pr = pair(101, 2, 5, &[4, 9]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let r = check_kernel(&m, &pr, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.combinations, 3);
        let pr = pair(101, 2, 5, &[2, 9]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        assert!(matches!(check_kernel(&m, &pr, 2), Err(Error::PrimeUnsuitable(_))));
    }

    #[test]
    fn kernel_genus_one() {
        let pr = pair(101, 1, 5, &[4]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let r = check_kernel(&m, &pr, 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn pointwise_proposition() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        let mut rng = seed::rng(21);
        let mut done = 0;
        while done < 10 {
            let (x, y) = m.random_good_point(Direction::Forward, &mut rng);
            match check_point_proposition(&m, x, y) {
                Ok(r) => {
                    assert!(r.passed, "{r:?}");
                    assert_eq!(r.p1.0, -Fq::from_base(&m.lifted(2).unwrap().ext, x));
                    done += 1;
                }
                Err(Error::BadFiber) => continue,
                Err(e) => panic!("{e:?}"),
            }
        }
        let k = pr.params.ctx;
        let zero = k.elem(0);
        assert_eq!(check_point_proposition(&m, x_root(&pr), zero).unwrap_err(), Error::WeierstrassPoint);
        if let Some(y0) = pr.c.f.eval(&zero).sqrt() {
            let r = check_point_proposition(&m, zero, y0).unwrap();
            assert!(r.degenerate && r.passed);
        }
    }

    fn x_root(pr: &CurvePair<Fp>) -> Fp {
        pr.params.v
    }

    #[test]
    fn transpose_and_homomorphism() {
        let pr = pair(101, 2, 3, &[2, 5]);
        let m = ClassMapper::new(&pr, 1).unwrap();
        assert_eq!(check_transpose(&m, 10, 3).unwrap(), 10);
        assert_eq!(check_homomorphism(&m, 5, 3).unwrap(), 5);
    }

    #[test]
    fn self_dual_family() {
        let k = PrimeField::new(101).unwrap();
        let mut measured = false;
        for v in 2..40u64 {
            let Ok(ps) = sqrt2_params(2, k.elem(v), &[k.elem(2)], &k) else { continue };
            let pr = build(&ps).unwrap();
            let m = ClassMapper::new(&pr, 1).unwrap();
            assert!(check_mult_by_two(&m, 3, 1).unwrap().passed);
            match measure_phi_squared(&m, &pr, 3, 1) {
                Ok(r) => {
                    assert_eq!(r.trials, 3);
                    measured = true;
                    break;
                }
                Err(Error::PrimeUnsuitable(_)) => continue,
                Err(e) => panic!("{e:?}"),
            }
        }
        assert!(measured);
    }
}
