//! The full verification battery.

use std::path::PathBuf;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::checks::{self, ModuliConfig};
use crate::fixtures;
use crate::report::{CheckResult, RunReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairCase {
    pub g: usize,
    pub v: i64,
    pub a: Vec<i64>,
    pub primes: Vec<u64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_trials() -> usize {
    20
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sqrt2Case {
    pub g: usize,
    pub p: u64,
    pub a_half: Vec<i64>,
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitCase {
    pub g: usize,
    pub a: Vec<i64>,
    pub p: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub identity_prime: u64,
    pub identity_trials: usize,
    pub identity_genera: Vec<usize>,
    pub l_equality: Vec<PairCase>,
    pub isogeny: Vec<PairCase>,
    pub sqrt2: Vec<Sqrt2Case>,
    pub split: Vec<SplitCase>,
    pub moduli: ModuliConfig,
    pub fixture_classes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let case =
            |g, v, a: &[i64], primes: &[u64], trials| PairCase { g, v, a: a.to_vec(), primes: primes.to_vec(), trials };
        SuiteConfig {
            identity_prime: 10007,
            identity_trials: 40,
            identity_genera: vec![2, 4],
            l_equality: vec![
                case(1, 2, &[3], &[13, 101], 0),
                case(2, 3, &[2, 5], &[101, 103], 0),
                case(3, 2, &[3, 5, 7], &[29, 31], 0),
            ],
            isogeny: vec![
                case(2, 3, &[2, 5], &[101], 20),
                case(3, 2, &[3, 5, 7], &[101], 10),
                // every aᵢ a square, for the kernel
                case(1, 5, &[4], &[101], 5),
                case(2, 5, &[4, 9], &[101], 5),
                case(3, 5, &[4, 9, 16], &[101], 5),
            ],
            sqrt2: vec![Sqrt2Case { g: 2, p: 101, a_half: vec![2], trials: 20 }],
            split: vec![SplitCase { g: 2, a: vec![2, 3], p: 13 }],
            moduli: ModuliConfig::default(),
            fixture_classes: 20,
        }
    }
}

type Job<'a> = Box<dyn FnOnce() -> Vec<CheckResult> + Send + 'a>;

fn case_label(c: &PairCase, p: u64) -> String {
    format!("g{}/p{}/v{}/a{}", c.g, p, c.v, c.a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Runs every check. Checks run concurrently; the report keeps the fixed
/// order in which they are listed, and each check draws randomness only from
/// its own child of `root`.
pub fn run_suite(cfg: &SuiteConfig, root: u64, fixture_dir: Option<PathBuf>) -> RunReport {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(|| vec![checks::base_identities()]));
    jobs.push(Box::new(|| vec![checks::m_congruence_exact()]));
    for &g in &cfg.identity_genera {
        jobs.push(Box::new(move || vec![checks::m_congruence(g, cfg.identity_prime, cfg.identity_trials, root)]));
    }
    for &g in &cfg.identity_genera {
        jobs.push(Box::new(move || vec![checks::gamma_consistency(g, cfg.identity_prime, cfg.identity_trials, root)]));
    }
    for c in &cfg.l_equality {
        jobs.push(Box::new(move || checks::l_equality(c.g, c.v, &c.a, &c.primes)));
    }
    for c in &cfg.isogeny {
        for &p in &c.primes {
            jobs.push(Box::new(move || {
                let label = case_label(c, p);
                match checks::fp_pair(c.g, p, c.v, &c.a) {
                    Ok(pair) => checks::isogeny(&pair, &label, c.trials, root),
                    Err(e) => vec![CheckResult::from_error(format!("isogeny/{label}"), &e)],
                }
            }));
        }
    }
    jobs.push(Box::new(|| vec![checks::specialization()]));
    for c in &cfg.sqrt2 {
        jobs.push(Box::new(move || {
            let label = format!("g{}/p{}", c.g, c.p);
            match checks::sqrt2_search(c.g, c.p, &c.a_half) {
                Ok((v, pair)) => checks::sqrt2(&pair, &format!("{label}/v{v}"), c.trials, root),
                Err(e) => vec![CheckResult::from_error(format!("sqrt2/{label}"), &e)],
            }
        }));
    }
    for c in &cfg.split {
        jobs.push(Box::new(move || vec![checks::split(c.g, &c.a, c.p)]));
    }
    jobs.push(Box::new(|| checks::moduli(&cfg.moduli, root)));
    if let Some(dir) = fixture_dir {
        jobs.push(Box::new(move || match fixtures::load_dir(&dir) {
            Ok(fx) => fx.iter().map(|f| fixtures::check(f, cfg.fixture_classes, root)).collect(),
            Err(e) => vec![CheckResult::error("fixtures", &e)],
        }));
    }

    let results: Vec<Vec<CheckResult>> = thread::scope(|s| {
        let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(j)).collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| {
                    vec![CheckResult::error("panic", &forge_core::Error::Invalid("a check panicked".into()))]
                })
            })
            .collect()
    });
    let params = serde_json::to_value(cfg).expect("config serializes");
    RunReport::new("suite", params, root, results.into_iter().flatten().collect())
}

/// Root seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;
