//! Fixture files: a serialized pair together with the L-polynomials its
//! curves are expected to have.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use forge_core::zeta::{check_group_order, l_polynomial, LPoly};
use forge_core::{seed, Error, Result};

use crate::checks::fp_pair;
use crate::report::CheckResult;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedL {
    #[serde(rename = "C")]
    pub c: Vec<i64>,
    #[serde(rename = "Cprime")]
    pub c_prime: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub g: usize,
    pub p: u64,
    pub v: i64,
    pub a: Vec<i64>,
    /// The pair as emitted by `forge gen --json`.
    pub pair: Value,
    pub lpoly: ExpectedL,
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

pub fn load(path: &Path) -> Result<Fixture> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Rebuilds the pair, compares it with the stored one, recomputes both
/// L-polynomials and checks that `L(1)` kills `classes` random classes.
pub fn check(fx: &Fixture, classes: usize, root: u64) -> CheckResult {
    let name = format!("fixture/{}", fx.name);
    CheckResult::timed(&name, || {
        let pair = fp_pair(fx.g, fx.p, fx.v, &fx.a)?;
        let stored_matches = pair.to_json() == fx.pair;
        let l_c = l_polynomial(&pair.c)?;
        let l_cp = l_polynomial(&pair.c_prime)?;
        let want = |c: &[i64]| LPoly { g: fx.g, p: fx.p, coeffs: c.to_vec() };
        let c_ok = l_c == want(&fx.lpoly.c);
        let cp_ok = l_cp == want(&fx.lpoly.c_prime);
        let killed = check_group_order(&pair.c, &l_c, classes, seed::derive(root, &name))?;
        let details = json!({
            "stored_pair_matches": stored_matches,
            "l_c": l_c.coeffs,
            "l_c_prime": l_cp.coeffs,
            "group_order": l_c.at_one(),
            "classes": classes,
            "classes_killed": killed,
        });
        Ok(CheckResult::new(&name, stored_matches && c_ok && cp_ok && killed == classes, details))
    })
}
