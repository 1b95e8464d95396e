//! The curve families: parameter validation, both models of each curve of an
//! isogenous pair, the odd-genus construction through an even parent, and the
//! self-dual family whose second curve has the same branch points as the first.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::{BiPoly, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidationLevel {
    /// Only the first curve must be smooth.
    CurveOnly,
    /// Both curves of the pair must be smooth and `b` must be defined.
    Pair,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams<F: Field> {
    pub g: usize,
    pub v: F,
    pub a: Vec<F>,
    pub ctx: F::Ctx,
    pub level: ValidationLevel,
}

/// Checks the non-degeneracy conditions and collects every violated one.
pub fn validate_params<F: Field>(
    g: usize,
    v: F,
    a: Vec<F>,
    ctx: &F::Ctx,
    level: ValidationLevel,
) -> Result<FamilyParams<F>> {
    let mut bad = Vec::new();
    if F::characteristic(ctx) == 2 {
        bad.push("characteristic 2".to_string());
    }
    if g == 0 {
        bad.push("g = 0".to_string());
    }
    if a.len() != g {
        bad.push(format!("expected {g} values of a, got {}", a.len()));
    }
    let one = F::one_in(ctx);
    let v2 = v.square();
    if v.is_zero() {
        bad.push("v = 0".to_string());
    }
    match level {
        ValidationLevel::Pair if v2.square() == one => bad.push("v^4 = 1".to_string()),
        ValidationLevel::CurveOnly if v2 == one => bad.push("v^2 = 1".to_string()),
        _ => {}
    }
    let inv_v2 = v2.inv().ok();
    for (i, ai) in a.iter().enumerate() {
        let n = i + 1;
        if ai.is_zero() {
            bad.push(format!("a{n} = 0"));
        }
        if *ai == v2 {
            bad.push(format!("a{n} = v^2"));
        }
        if inv_v2.as_ref() == Some(ai) {
            bad.push(format!("a{n} = 1/v^2"));
        }
        for (j, aj) in a.iter().enumerate().skip(i + 1) {
            if ai == aj {
                bad.push(format!("a{n} = a{}", j + 1));
            }
        }
    }
    if bad.is_empty() {
        Ok(FamilyParams { g, v, a, ctx: ctx.clone(), level })
    } else {
        Err(Error::DegenerateParams(bad))
    }
}

/// `(a·v² − 1)/(a − v²)`, an involution of the projective line.
pub fn b_map<F: Field>(a: &F, v: &F) -> Result<F> {
    let v2 = v.square();
    let den = a.clone() - v2.clone();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    (a.clone() * v2 - a.one_like()).div(&den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveLabel {
    C,
    #[serde(rename = "Cprime")]
    CPrime,
    #[serde(rename = "C_thm")]
    CThm,
    #[serde(rename = "Cprime_thm")]
    CPrimeThm,
    Quotient,
    OddModel,
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveLabel::C => "C",
            CurveLabel::CPrime => "Cprime",
            CurveLabel::CThm => "C_thm",
            CurveLabel::CPrimeThm => "Cprime_thm",
            CurveLabel::Quotient => "quotient",
            CurveLabel::OddModel => "odd-model",
        };
        f.write_str(s)
    }
}

/// `y² = f(x)` with `f` squarefree of degree `2g+1` or `2g+2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperCurve<F: Field> {
    pub f: UPoly<F>,
    pub genus: usize,
    pub label: CurveLabel,
}

impl<F: Field> HyperCurve<F> {
    pub fn new(f: UPoly<F>, label: CurveLabel) -> Result<Self> {
        let d = f.degree().unwrap_or(0);
        if d < 3 {
            return Err(Error::InvalidDegree(d));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperCurve { genus: (d - 1) / 2, f, label })
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.f.ctx()
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        y.square() == self.f.eval(x)
    }

    /// `y² = c·f(x)`.
    pub fn twist(&self, c: &F) -> Result<Self> {
        HyperCurve::new(self.f.scale(c), self.label)
    }

    pub fn to_json(&self) -> Value
    where
        F: Serialize,
    {
        json!({ "label": self.label, "genus": self.genus, "coeffs": self.f })
    }
}

/// How an odd-genus pair sits inside its even-genus parent (the parent has
/// one more parameter, set to zero). Points map by `y_parent = x_factor(x)·y`
/// and `t_parent = z_factor(z)·t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport<F: Field> {
    pub parent_genus: usize,
    pub parent_f: UPoly<F>,
    pub parent_f_prime: UPoly<F>,
    pub x_factor: UPoly<F>,
    pub z_factor: UPoly<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePair<F: Field> {
    pub params: FamilyParams<F>,
    /// `y² = A·∏ pᵢ(x)`.
    pub c: HyperCurve<F>,
    /// `t² = ∏ qᵢ(z)`.
    pub c_prime: HyperCurve<F>,
    pub c_thm: HyperCurve<F>,
    pub c_prime_thm: HyperCurve<F>,
    pub b: Vec<F>,
    /// `S(x, z)`, the curve on which the correspondence lives.
    pub s: BiPoly<F>,
    pub m: BiPoly<F>,
    pub a_const: F,
    /// Present for odd genus only.
    pub transport: Option<Transport<F>>,
}

/// `(x − v)(v·x − sign)`.
fn twisted_p0<F: Field>(v: &F, sign: i64) -> UPoly<F> {
    let ctx = v.ctx();
    let s = F::from_int(&ctx, sign);
    UPoly::from_coeffs(&ctx, vec![s.clone() * v.clone(), -(s + v.square()), v.clone()])
}

/// `x² − c`.
fn even_quadratic<F: Field>(c: &F) -> UPoly<F> {
    let ctx = c.ctx();
    UPoly::from_coeffs(&ctx, vec![-c.clone(), F::zero_in(&ctx), F::one_in(&ctx)])
}

fn product_with<F: Field>(base: UPoly<F>, roots_sq: &[F]) -> UPoly<F> {
    roots_sq.iter().fold(base, |acc, c| &acc * &even_quadratic(c))
}

/// `S(x, z) = x²z² − v²(x² + z²) + 1`.
pub fn s_poly<F: Field>(v: &F) -> BiPoly<F> {
    let ctx = v.ctx();
    let v2 = v.square();
    BiPoly::from_terms(&ctx, &[(2, 2, F::one_in(&ctx)), (2, 0, -v2.clone()), (0, 2, -v2), (0, 0, F::one_in(&ctx))])
}

/// `M(x, z) = ∏ₖ p₂ₖ(v)·p₂ₖ₋₁(x)·q₂ₖ(z)` for an even number of parameters.
fn m_poly<F: Field>(v: &F, a: &[F], b: &[F]) -> BiPoly<F> {
    let ctx = v.ctx();
    let v2 = v.square();
    let mut m = BiPoly::constant(F::one_in(&ctx));
    for k in 0..a.len() / 2 {
        let (odd, even) = (2 * k, 2 * k + 1);
        let pv = v2.clone() - a[even].clone();
        let px = BiPoly::from_x(&even_quadratic(&a[odd]));
        let qz = BiPoly::from_z(&even_quadratic(&b[even]));
        m = m.mul(&px).mul(&qz).scale(&pv);
    }
    m
}

/// `2(v² + 1)·∏ pᵢ(v)`; the `p₀(v)` factor vanishes and is omitted.
pub fn a_constant<F: Field>(v: &F, a: &[F]) -> F {
    let v2 = v.square();
    a.iter().fold(v.int_like(2) * (v2.clone() + v.one_like()), |acc, ai| acc * (v2.clone() - ai.clone()))
}

/// Structural data of an even-genus pair: `(S, M, A)`.
pub fn structural_polys<F: Field>(params: &FamilyParams<F>) -> Result<(BiPoly<F>, BiPoly<F>, F)> {
    if !params.g.is_multiple_of(2) {
        return Err(Error::GenusParity(params.g));
    }
    let b = params.a.iter().map(|ai| b_map(ai, &params.v)).collect::<Result<Vec<_>>>()?;
    let a_const = a_constant(&params.v, &params.a);
    Ok((s_poly(&params.v), m_poly(&params.v, &params.a, &b), a_const))
}

fn require_pair<F: Field>(params: &FamilyParams<F>) -> Result<()> {
    if params.level != ValidationLevel::Pair {
        return Err(Error::DegenerateParams(vec!["pair-level validation required".into()]));
    }
    Ok(())
}

/// Even genus: both curves and all structural data.
pub fn build_pair<F: Field>(params: &FamilyParams<F>) -> Result<CurvePair<F>> {
    if !params.g.is_multiple_of(2) {
        return Err(Error::GenusParity(params.g));
    }
    require_pair(params)?;
    let v = &params.v;
    let (s, m, a_const) = structural_polys(params)?;
    let b = params.a.iter().map(|ai| b_map(ai, v)).collect::<Result<Vec<_>>>()?;
    let f_thm = product_with(twisted_p0(v, 1), &params.a);
    let f_prime = product_with(twisted_p0(v, 1), &b);
    Ok(CurvePair {
        params: params.clone(),
        c: HyperCurve::new(f_thm.scale(&a_const), CurveLabel::C)?,
        c_prime: HyperCurve::new(f_prime.clone(), CurveLabel::CPrime)?,
        c_thm: HyperCurve::new(f_thm, CurveLabel::CThm)?,
        c_prime_thm: HyperCurve::new(f_prime, CurveLabel::CPrimeThm)?,
        b,
        s,
        m,
        a_const,
        transport: None,
    })
}

/// Odd genus: the pair obtained from the genus-`(g+1)` parent by setting the
/// last parameter to zero and removing the resulting square factors.
pub fn build_pair_odd<F: Field>(params: &FamilyParams<F>) -> Result<CurvePair<F>> {
    if params.g.is_multiple_of(2) {
        return Err(Error::GenusParity(params.g));
    }
    require_pair(params)?;
    let v = &params.v;
    let ctx = &params.ctx;
    let mut parent_a = params.a.clone();
    parent_a.push(F::zero_in(ctx));
    let parent_b = parent_a.iter().map(|ai| b_map(ai, v)).collect::<Result<Vec<_>>>()?;
    let s = s_poly(v);
    let m = m_poly(v, &parent_a, &parent_b);
    let a_const = a_constant(v, &parent_a);

    let parent_f = product_with(twisted_p0(v, 1), &parent_a).scale(&a_const);
    let parent_f_prime = product_with(twisted_p0(v, 1), &parent_b);
    let x_factor = UPoly::x(ctx);
    let v_inv = v.inv()?;
    // (v·z − 1)/v
    let z_factor = UPoly::from_coeffs(ctx, vec![-v_inv, F::one_in(ctx)]);

    let b = parent_b[..params.g].to_vec();
    let f_thm = product_with(twisted_p0(v, 1), &params.a);
    let f_prime_thm = product_with(twisted_p0(v, -1), &b);
    let f_c = f_thm.scale(&a_const);
    let f_prime = f_prime_thm.clone();

    debug_assert_eq!(&f_c * &x_factor.pow(2), parent_f);
    debug_assert_eq!(&f_prime * &z_factor.pow(2), parent_f_prime);

    Ok(CurvePair {
        params: params.clone(),
        c: HyperCurve::new(f_c, CurveLabel::C)?,
        c_prime: HyperCurve::new(f_prime, CurveLabel::CPrime)?,
        c_thm: HyperCurve::new(f_thm, CurveLabel::CThm)?,
        c_prime_thm: HyperCurve::new(f_prime_thm, CurveLabel::CPrimeThm)?,
        b,
        s,
        m,
        a_const,
        transport: Some(Transport { parent_genus: params.g + 1, parent_f, parent_f_prime, x_factor, z_factor }),
    })
}

/// Dispatches on the parity of the genus.
pub fn build<F: Field>(params: &FamilyParams<F>) -> Result<CurvePair<F>> {
    if params.g.is_multiple_of(2) {
        build_pair(params)
    } else {
        build_pair_odd(params)
    }
}

/// The first curve alone, `y² = (x − v)(vx − 1)·∏(x² − aᵢ)`, for parameters
/// that need only curve-level validity.
pub fn theorem_curve<F: Field>(params: &FamilyParams<F>) -> Result<HyperCurve<F>> {
    HyperCurve::new(product_with(twisted_p0(&params.v, 1), &params.a), CurveLabel::CThm)
}

/// Parameters of the self-dual family: the second half of `a` is the image of
/// the first half under the b-map, so `{bᵢ} = {aᵢ}`.
pub fn sqrt2_params<F: Field>(g: usize, v: F, a_half: &[F], ctx: &F::Ctx) -> Result<FamilyParams<F>> {
    if !g.is_multiple_of(2) {
        return Err(Error::GenusParity(g));
    }
    if a_half.len() != g / 2 {
        return Err(Error::DegenerateParams(vec![format!("expected {} values of a, got {}", g / 2, a_half.len())]));
    }
    let mut a = a_half.to_vec();
    for ai in a_half {
        a.push(b_map(ai, &v).map_err(|_| Error::DegenerateParams(vec!["a = v^2".into()]))?);
    }
    validate_params(g, v, a, ctx, ValidationLevel::Pair)
}

impl<F: Field + Serialize> CurvePair<F> {
    pub fn to_json(&self) -> Value {
        let p = F::characteristic(&self.params.ctx);
        json!({
            "g": self.params.g,
            "p": p.to_string(),
            "v": self.params.v,
            "a": self.params.a,
            "b": self.b,
            "C": { "coeffs": self.c.f },
            "Cprime": { "coeffs": self.c_prime.f },
            "C_thm": { "coeffs": self.c_thm.f },
            "Cprime_thm": { "coeffs": self.c_prime_thm.f },
            "A": self.a_const,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fp, PrimeField, Rational};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn fp_params(p: u64, g: usize, v: u64, a: &[u64]) -> Result<FamilyParams<Fp>> {
        let k = PrimeField::new(p).unwrap();
        validate_params(g, k.elem(v), a.iter().map(|&x| k.elem(x)).collect(), &k, ValidationLevel::Pair)
    }

    #[test]
    fn b_map_examples() {
        assert_eq!(b_map(&q("3"), &q("2")).unwrap(), q("-11"));
        let k = PrimeField::new(101).unwrap();
        let b = b_map(&k.elem(2), &k.elem(3)).unwrap();
        assert_eq!(b, k.elem(12));
        assert_eq!(b_map(&b, &k.elem(3)).unwrap(), k.elem(2));
        assert_eq!(b_map(&k.elem(9), &k.elem(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn b_map_is_an_involution_over_small_field() {
        let k = PrimeField::new(31).unwrap();
        for v in 2..30u64 {
            let v = k.elem(v);
            if v.pow(4).is_one() {
                continue;
            }
            for a in k.elements() {
                if a == v.square() {
                    continue;
                }
                let b = b_map(&a, &v).unwrap();
                assert_eq!(b_map(&b, &v).unwrap(), a);
            }
        }
    }

    #[test]
    fn validation_examples() {
        assert!(fp_params(101, 2, 3, &[2, 5]).is_ok());
        match fp_params(101, 2, 1, &[2, 5]) {
            Err(Error::DegenerateParams(v)) => assert!(v.contains(&"v^4 = 1".to_string())),
            other => panic!("{other:?}"),
        }
        match fp_params(13, 3, 2, &[1, 3, 4]) {
            Err(Error::DegenerateParams(v)) => assert_eq!(v, vec!["a3 = v^2".to_string()]),
            other => panic!("{other:?}"),
        }
        match fp_params(101, 2, 3, &[2, 2]) {
            Err(Error::DegenerateParams(v)) => assert_eq!(v, vec!["a1 = a2".to_string()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn curve_only_accepts_square_root_of_minus_one() {
        let k = PrimeField::new(13).unwrap();
        let i = k.elem(5);
        assert!(validate_params(2, i, vec![k.elem(2), k.elem(3)], &k, ValidationLevel::Pair).is_err());
        let ps = validate_params(2, i, vec![k.elem(2), k.elem(3)], &k, ValidationLevel::CurveOnly).unwrap();
        let c = theorem_curve(&ps).unwrap();
        // p0 at v = i collapses to i(x² + 1)
        let p0 = twisted_p0(&i, 1);
        assert_eq!(p0, UPoly::from_coeffs(&k, vec![i, k.elem(0), i]));
        assert_eq!(c.genus, 2);
    }

    #[test]
    fn even_pair_over_f101() {
        let ps = fp_params(101, 2, 3, &[2, 5]).unwrap();
        let pair = build_pair(&ps).unwrap();
        let k = ps.ctx;
        assert_eq!(pair.b[0], k.elem(12));
        assert_eq!(pair.b[1], b_map(&k.elem(5), &k.elem(3)).unwrap());
        for c in [&pair.c, &pair.c_prime, &pair.c_thm, &pair.c_prime_thm] {
            assert_eq!(c.f.degree(), Some(6));
            assert_eq!(c.genus, 2);
        }
        // roots v, 1/v and ±√aᵢ
        let v = k.elem(3);
        assert!(pair.c.f.eval(&v).is_zero());
        assert!(pair.c.f.eval(&v.inv().unwrap()).is_zero());
        assert_eq!(pair.c.f.degree(), Some(6));
        assert_eq!(pair.a_const, a_constant(&v, &ps.a));
        assert!(!pair.a_const.is_zero());
        assert!(matches!(build_pair(&fp_params(101, 3, 3, &[2, 5, 7]).unwrap()), Err(Error::GenusParity(3))));
    }

    #[test]
    fn roots_of_c_are_the_expected_branch_points() {
        let ps = fp_params(101, 2, 3, &[4, 25]).unwrap();
        let pair = build_pair(&ps).unwrap();
        let k = ps.ctx;
        let roots: Vec<u64> = k.elements().filter(|x| pair.c.f.eval(x).is_zero()).map(|x| x.value()).collect();
        // v = 3, 1/v = 34, ±2, ±5
        assert_eq!(roots, vec![2, 3, 5, 34, 96, 99]);
        let b: Vec<Fp> = pair.b.clone();
        for x in k.elements() {
            let on = pair.c_prime.f.eval(&x).is_zero();
            let expect = x == k.elem(3) || x == k.elem(34) || b.contains(&x.square());
            assert_eq!(on, expect, "x = {x}");
        }
    }

    #[test]
    fn odd_pair_over_rationals() {
        let ps = validate_params(1, q("2"), vec![q("3")], &(), ValidationLevel::Pair).unwrap();
        let pair = build_pair_odd(&ps).unwrap();
        assert_eq!(pair.b, vec![q("-11")]);
        let lin = |a: &str, b: &str| UPoly::from_coeffs(&(), vec![q(a), q(b)]);
        let expect_c = &(&lin("-2", "1") * &lin("-1", "2")) * &UPoly::from_coeffs(&(), vec![q("-3"), q("0"), q("1")]);
        assert_eq!(pair.c_thm.f, expect_c);
        let expect_cp = &(&lin("-2", "1") * &lin("1", "2")) * &UPoly::from_coeffs(&(), vec![q("11"), q("0"), q("1")]);
        assert_eq!(pair.c_prime_thm.f, expect_cp);
        assert_eq!(pair.c.genus, 1);
        assert_eq!(pair.c.f.degree(), Some(4));
        assert!(matches!(build_pair_odd(&fp_params(101, 2, 3, &[2, 5]).unwrap()), Err(Error::GenusParity(2))));
    }

    #[test]
    fn odd_parent_has_exact_square_factors() {
        let ps = fp_params(101, 3, 2, &[3, 5, 7]).unwrap();
        let pair = build_pair_odd(&ps).unwrap();
        let t = pair.transport.as_ref().unwrap();
        let x2 = t.x_factor.pow(2);
        let z2 = t.z_factor.pow(2);
        assert!(t.parent_f.rem(&x2).unwrap().is_zero());
        assert!(!t.parent_f.rem(&t.x_factor.pow(3)).unwrap().is_zero());
        assert!(t.parent_f_prime.rem(&z2).unwrap().is_zero());
        assert!(!t.parent_f_prime.rem(&t.z_factor.pow(3)).unwrap().is_zero());
        assert_eq!(pair.c.f.degree(), Some(8));
        assert_eq!(pair.c_prime.genus, 3);
    }

    #[test]
    fn sqrt2_family_has_equal_branch_sets() {
        let k = PrimeField::new(101).unwrap();
        let ps = sqrt2_params(2, k.elem(3), &[k.elem(2)], &k).unwrap();
        assert_eq!(ps.a, vec![k.elem(2), k.elem(12)]);
        let pair = build_pair(&ps).unwrap();
        let mut a: Vec<u64> = ps.a.iter().map(|x| x.value()).collect();
        let mut b: Vec<u64> = pair.b.iter().map(|x| x.value()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(pair.c_thm.f, pair.c_prime_thm.f);
    }

    #[test]
    fn sqrt2_fixed_point_is_degenerate() {
        // b(a) = a ⇔ a² − 2v²a + 1 = 0 ⇔ a = v² ± √(v⁴ − 1)
        let k = PrimeField::new(101).unwrap();
        let mut found = false;
        for v in 2..100u64 {
            let v = k.elem(v);
            let Some(r) = (v.pow(4) - k.elem(1)).sqrt() else { continue };
            if r.is_zero() {
                continue;
            }
            let a = v.square() + r;
            assert_eq!(b_map(&a, &v).unwrap(), a);
            assert!(matches!(sqrt2_params(2, v, &[a], &k), Err(Error::DegenerateParams(_))));
            found = true;
            break;
        }
        assert!(found);
    }

    #[test]
    fn structural_polys_at_special_fibers() {
        let ps = fp_params(101, 2, 3, &[2, 5]).unwrap();
        let (s, m, a) = structural_polys(&ps).unwrap();
        let k = ps.ctx;
        let v = k.elem(3);
        let one = k.elem(1);
        for x in [v, -v] {
            let fib = s.eval_x(&x);
            assert_eq!(fib, UPoly::constant(one - v.pow(4)));
        }
        let vi = v.inv().unwrap();
        assert_eq!(s.eval_x(&vi), UPoly::monomial(vi.square() - v.square(), 2));
        assert_eq!(m.degree_x(), Some(2));
        assert_eq!(m.degree_z(), Some(2));
        let b = b_map(&k.elem(5), &v).unwrap();
        let expect = BiPoly::from_x(&even_quadratic(&k.elem(2)))
            .mul(&BiPoly::from_z(&even_quadratic(&b)))
            .scale(&(v.square() - k.elem(5)));
        assert_eq!(m, expect);
        assert!(!a.is_zero());
    }

    #[test]
    fn random_pairs_are_smooth() {
        use rand::SeedableRng;
        let k = PrimeField::new(10007).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut built = 0;
        while built < 30 {
            let g = 1 + built % 4;
            let v = Fp::random(&k, &mut rng);
            let a = (0..g).map(|_| Fp::random(&k, &mut rng)).collect();
            let Ok(ps) = validate_params(g, v, a, &k, ValidationLevel::Pair) else { continue };
            let pair = build(&ps).unwrap();
            assert!(pair.c.f.is_squarefree() && pair.c_prime.f.is_squarefree());
            assert_eq!(pair.c.genus, g);
            assert_eq!(pair.c_prime.genus, g);
            built += 1;
        }
    }

    #[test]
    fn pair_json_shape() {
        let pair = build_pair(&fp_params(101, 2, 3, &[2, 5]).unwrap()).unwrap();
        let j = pair.to_json();
        assert_eq!(j["p"], "101");
        assert_eq!(j["b"][0], "12");
        assert_eq!(j["C"]["coeffs"].as_array().unwrap().len(), 7);
    }
}
