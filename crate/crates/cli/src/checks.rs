//! Individual checks, each producing [`CheckResult`]s. Shared by the
//! `verify` commands and the suite.

use serde_json::{json, Value};

use forge_core::corresp::{
    check_kernel, check_mult_by_two, check_point_proposition, measure_phi_squared, ClassMapper, Direction,
};
use forge_core::family::{build, sqrt2_params, validate_params, CurvePair, ValidationLevel};
use forge_core::identities::{
    m_congruence_remainder_g2, verify_base_identities, verify_gamma_consistency, verify_m_congruence,
};
use forge_core::moduli::{criterion_battery, normalization_battery};
use forge_core::zeta::{check_l_equality, check_split_at_i, reproduce_specialization};
use forge_core::{seed, Error, Field, Fp, PrimeField, Result};

use crate::report::CheckResult;

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// A pair over `𝔽_p` from integer parameters, validated for both curves.
pub fn fp_pair(g: usize, p: u64, v: i64, a: &[i64]) -> Result<CurvePair<Fp>> {
    let k = PrimeField::new(p)?;
    let a = a.iter().map(|&x| k.from_i64(x)).collect();
    build(&validate_params(g, k.from_i64(v), a, &k, ValidationLevel::Pair)?)
}

pub fn sqrt2_pair(g: usize, p: u64, v: i64, a_half: &[i64]) -> Result<CurvePair<Fp>> {
    let k = PrimeField::new(p)?;
    let a: Vec<Fp> = a_half.iter().map(|&x| k.from_i64(x)).collect();
    build(&sqrt2_params(g, k.from_i64(v), &a, &k)?)
}

pub fn base_identities() -> CheckResult {
    CheckResult::timed("base-identities", || {
        let r = verify_base_identities()?;
        Ok(CheckResult::new("base-identities", r.passed, value(&r)))
    })
}

pub fn m_congruence_exact() -> CheckResult {
    let name = "m-congruence/exact-g2";
    CheckResult::timed(name, || {
        let rem = m_congruence_remainder_g2()?;
        Ok(CheckResult::new(name, rem.is_zero(), json!({ "remainder_terms": rem.num_terms() })))
    })
}

pub fn m_congruence(g: usize, p: u64, trials: usize, root: u64) -> CheckResult {
    let name = format!("m-congruence/g{g}");
    CheckResult::timed(&name, || {
        let r = verify_m_congruence(g, p, trials, seed::derive(root, &name))?;
        Ok(CheckResult::new(&name, r.passed, value(&r)))
    })
}

pub fn gamma_consistency(g: usize, p: u64, trials: usize, root: u64) -> CheckResult {
    let name = format!("gamma-consistency/g{g}");
    CheckResult::timed(&name, || {
        let r = verify_gamma_consistency(g, p, trials, seed::derive(root, &name))?;
        Ok(CheckResult::new(&name, r.passed, value(&r)))
    })
}

/// One result per prime so that a degenerate reduction is a visible skip.
pub fn l_equality(g: usize, v: i64, a: &[i64], primes: &[u64]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &p in primes {
        let name = format!("l-equality/g{g}/p{p}");
        let c = CheckResult::timed(&name, || {
            let r = check_l_equality(g, v, a, &[p])?;
            let e = &r.entries[0];
            Ok(match &e.skipped {
                Some(why) => CheckResult::skip(&name, format!("degenerate mod {p}: {why}")),
                None => CheckResult::new(&name, e.equal, value(e)),
            })
        });
        out.push(c);
    }
    out
}

pub fn mult_by_two(mapper: &ClassMapper, label: &str, trials: usize, root: u64) -> CheckResult {
    let name = format!("mult-by-two/{label}");
    CheckResult::timed(&name, || {
        let r = check_mult_by_two(mapper, trials, seed::derive(root, &name))?;
        Ok(CheckResult::new(&name, r.passed, value(&r)))
    })
}

pub fn kernel(mapper: &ClassMapper, pair: &CurvePair<Fp>, label: &str, root: u64) -> CheckResult {
    let name = format!("kernel/{label}");
    CheckResult::timed(&name, || {
        let r = check_kernel(mapper, pair, seed::derive(root, &name))?;
        Ok(CheckResult::new(&name, r.passed, value(&r)))
    })
}

/// The pointwise form of `Γ′∘Γ` at `trials` random good points. Points on
/// the bad locus of the second map are redrawn.
pub fn pointwise(mapper: &ClassMapper, label: &str, trials: usize, root: u64) -> CheckResult {
    let name = format!("pointwise/{label}");
    CheckResult::timed(&name, || {
        let mut rng = seed::rng(seed::derive(root, &name));
        let (mut agreed, mut redrawn, mut failures) = (0, 0, Vec::new());
        let mut done = 0;
        while done < trials {
            if redrawn > 20 * trials + 100 {
                return Err(Error::DecompositionFailure(redrawn));
            }
            let (x, y) = mapper.random_good_point(Direction::Forward, &mut rng);
            match check_point_proposition(mapper, x, y) {
                Ok(r) => {
                    done += 1;
                    if r.passed && (r.degenerate || r.p1.0.to_base() == Some(-x)) {
                        agreed += 1;
                    } else {
                        failures.push(value(&r));
                    }
                }
                Err(Error::BadFiber) => redrawn += 1,
                Err(e) => return Err(e),
            }
        }
        let details = json!({ "trials": trials, "agreed": agreed, "redrawn": redrawn, "failures": failures });
        Ok(CheckResult::new(&name, agreed == trials, details))
    })
}

/// Mult-by-two, kernel and pointwise checks on one pair. A kernel check on a
/// prime where some `aᵢ` is not a square is a skip.
pub fn isogeny(pair: &CurvePair<Fp>, label: &str, trials: usize, root: u64) -> Vec<CheckResult> {
    let mapper = match ClassMapper::new(pair, seed::derive(root, label)) {
        Ok(m) => m,
        Err(e) => return vec![CheckResult::from_error(format!("isogeny/{label}"), &e)],
    };
    vec![
        mult_by_two(&mapper, label, trials, root),
        kernel(&mapper, pair, label, root),
        pointwise(&mapper, label, trials, root),
    ]
}

pub fn specialization() -> CheckResult {
    let name = "specialization-charpoly";
    CheckResult::timed(name, || {
        let r = reproduce_specialization()?;
        Ok(CheckResult::new(name, r.passed, value(&r)))
    })
}

/// The self-dual family: equal branch sets, `Γ′∘Γ = [2]`, and the measured
/// relation of `φ∘φ` to `±[2]`, which is recorded rather than asserted.
pub fn sqrt2(pair: &CurvePair<Fp>, label: &str, trials: usize, root: u64) -> Vec<CheckResult> {
    let branch = {
        let name = format!("sqrt2/branch-sets/{label}");
        CheckResult::timed(&name, || {
            let same = pair.c_thm.f.monic()? == pair.c_prime_thm.f.monic()?;
            let mut a: Vec<u64> = pair.params.a.iter().map(|x| x.value()).collect();
            let mut b: Vec<u64> = pair.b.iter().map(|x| x.value()).collect();
            a.sort_unstable();
            b.sort_unstable();
            Ok(CheckResult::new(&name, same && a == b, json!({ "a": a, "b": b })))
        })
    };
    let mapper = match ClassMapper::new(pair, seed::derive(root, label)) {
        Ok(m) => m,
        Err(e) => return vec![branch, CheckResult::from_error(format!("sqrt2/{label}"), &e)],
    };
    let double = mult_by_two(&mapper, &format!("sqrt2/{label}"), trials, root);
    let name = format!("sqrt2/phi-squared/{label}");
    let phi = CheckResult::timed(&name, || {
        let r = measure_phi_squared(&mapper, pair, trials, seed::derive(root, &name))?;
        Ok(CheckResult::new(&name, true, value(&r)))
    });
    vec![branch, double, phi]
}

/// The smallest `v ≥ 2` giving a self-dual pair whose constant `A` is a
/// square mod `p`, so that `φ∘φ` can be measured.
pub fn sqrt2_search(g: usize, p: u64, a_half: &[i64]) -> Result<(i64, CurvePair<Fp>)> {
    for v in 2..p as i64 {
        let Ok(pair) = sqrt2_pair(g, p, v, a_half) else { continue };
        if pair.a_const.sqrt().is_some() {
            return Ok((v, pair));
        }
    }
    Err(Error::PrimeUnsuitable(format!("no self-dual pair with square A mod {p}")))
}

pub fn split(g: usize, a: &[i64], p: u64) -> CheckResult {
    let name = format!("split-at-i/g{g}/p{p}");
    CheckResult::timed(&name, || {
        let r = check_split_at_i(g, a, p)?;
        Ok(CheckResult::new(&name, r.passed, value(&r)))
    })
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct ModuliConfig {
    pub criterion_prime: u64,
    pub generated: usize,
    pub uniform: usize,
    pub uniform_allowed: usize,
    pub equivalence: usize,
    pub normalize_prime: u64,
    pub normalize: usize,
}

impl Default for ModuliConfig {
    fn default() -> Self {
        ModuliConfig {
            criterion_prime: 10007,
            generated: 100,
            uniform: 100,
            uniform_allowed: 5,
            equivalence: 500,
            normalize_prime: 101,
            normalize: 50,
        }
    }
}

pub fn moduli(cfg: &ModuliConfig, root: u64) -> Vec<CheckResult> {
    let c = CheckResult::timed("moduli/criterion", || {
        let r = criterion_battery(
            cfg.criterion_prime,
            cfg.generated,
            cfg.uniform,
            cfg.uniform_allowed,
            cfg.equivalence,
            seed::derive(root, "moduli/criterion"),
        )?;
        Ok(CheckResult::new("moduli/criterion", r.passed, value(&r)))
    });
    let n = CheckResult::timed("moduli/normalize", || {
        let r = normalization_battery(cfg.normalize_prime, cfg.normalize, seed::derive(root, "moduli/normalize"))?;
        Ok(CheckResult::new("moduli/normalize", r.passed, value(&r)))
    });
    vec![c, n]
}
