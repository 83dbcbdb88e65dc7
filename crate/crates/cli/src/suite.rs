//! Seeded property suite over a random corpus.

use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use relstab::corpus::Sampler;
use relstab::decomposition::{relative_cone, restriction_sum};
use relstab::module::io::{resolve_group, GroupRef, HomFile, ModuleFile};
use relstab::module::{internal_hom, is_r_split_exact, restriction, tensor_product};
use relstab::{
    certify_stable_iso, check_fpd_tensor, ext_group, finite_projective_dimension, gproj_approximation,
    is_gorenstein_projective, is_weakly_projective, psi, relative_syzygy, stable_hom, syzygy, CoefficientRing, Error,
    FiniteGroup, GModule, Result, StableIdeal,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const CHECKS: &[&str] = &[
    "gproj_criterion",
    "weakly_projective_fpd",
    "gproj_sequences_split",
    "gproj_fpd_orthogonal",
    "approximation_triangle",
    "fpd_tensor",
    "relative_cone",
    "ext_dimension_shift",
    "gproj_closure",
];

/// Checks whose statements assume regular coefficients (`Z` or `Z/p`).
pub const REGULAR_ONLY: &[&str] = &[
    "gproj_criterion",
    "weakly_projective_fpd",
    "gproj_sequences_split",
    "gproj_fpd_orthogonal",
    "approximation_triangle",
    "fpd_tensor",
];

fn is_regular(ring: CoefficientRing) -> bool {
    match ring {
        CoefficientRing::Integers => true,
        CoefficientRing::PrimePower { n, .. } => n == 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: u64,
    pub ring: CoefficientRing,
    pub group: GroupRef,
    #[serde(default = "default_size")]
    pub corpus_size: usize,
    #[serde(default = "default_max_factor")]
    pub max_factor: i64,
    #[serde(default = "all_checks")]
    pub checks: Vec<String>,
}

fn default_size() -> usize {
    25
}

fn default_max_factor() -> i64 {
    4
}

fn all_checks() -> Vec<String> {
    CHECKS.iter().map(|s| s.to_string()).collect()
}

impl SuiteConfig {
    pub fn new(seed: u64, ring: CoefficientRing, group: &str, corpus_size: usize) -> Self {
        SuiteConfig {
            seed,
            ring,
            group: GroupRef::Named(group.into()),
            corpus_size,
            max_factor: default_max_factor(),
            checks: all_checks(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("suite config: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub detail: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub total: usize,
    /// items where the hypothesis of the property held
    pub applicable: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub ring: String,
    pub group: String,
    pub corpus_size: usize,
    pub checks: Vec<CheckReport>,
    pub skipped: Vec<Skipped>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

enum Outcome {
    Pass,
    Vacuous,
    Fail(String, Value),
}

fn mj(m: &GModule) -> Value {
    serde_json::to_value(ModuleFile::of(m)).expect("module serializes")
}

fn factors_json(v: &[num_bigint::BigInt]) -> Value {
    json!(v.iter().map(|d| d.to_string()).collect::<Vec<_>>())
}

fn fail(detail: impl Into<String>, witness: Value) -> Outcome {
    Outcome::Fail(detail.into(), witness)
}

fn run_item(check: &str, s: &Sampler, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let ring = s.ring;
    let group = s.group.clone();
    Ok(match check {
        "gproj_criterion" => {
            let m = s.module(rng)?;
            let rg = GModule::free(ring, group, 1);
            let e1 = ext_group(&m, &rg, 1)?;
            let e2 = ext_group(&m, &rg, 2)?;
            let g = is_gorenstein_projective(&m);
            if g == (e1.is_empty() && e2.is_empty()) {
                Outcome::Pass
            } else {
                fail(
                    "Gorenstein projectivity disagrees with Ext vanishing",
                    json!({"module": mj(&m), "gproj": g, "ext1": factors_json(&e1), "ext2": factors_json(&e2)}),
                )
            }
        }
        "weakly_projective_fpd" => {
            let m = s.module(rng)?;
            if !is_weakly_projective(&m)? {
                Outcome::Vacuous
            } else if finite_projective_dimension(&m)?.is_finite() {
                Outcome::Pass
            } else {
                fail(
                    "weakly projective module of infinite projective dimension",
                    json!({"module": mj(&m)}),
                )
            }
        }
        "gproj_sequences_split" => {
            let a = s.gproj(rng)?;
            let c = s.gproj(rng)?;
            let (f, g) = if rand::Rng::gen_bool(rng, 0.5) {
                s.extension(rng, &a, &c)?
            } else {
                let rel = relative_syzygy(&c)?;
                (rel.inclusion, rel.projection)
            };
            if !is_gorenstein_projective(f.source()) || !is_gorenstein_projective(g.target()) {
                return Ok(Outcome::Vacuous);
            }
            if is_r_split_exact(&f, &g)? {
                Outcome::Pass
            } else {
                fail(
                    "sequence with Gorenstein projective ends is not R-split",
                    json!({"f": HomFile::of(&f), "g": HomFile::of(&g)}),
                )
            }
        }
        "gproj_fpd_orthogonal" => {
            let a = s.gproj(rng)?;
            let l = s.fpd(rng)?;
            let st = stable_hom(&a, &l, StableIdeal::ModuloProjectives)?;
            if st.factors.is_empty() {
                Outcome::Pass
            } else {
                fail(
                    "nonzero stable Hom from Gproj to fpd",
                    json!({"a": mj(&a), "l": mj(&l), "factors": factors_json(&st.factors)}),
                )
            }
        }
        "approximation_triangle" => {
            let m = match rand::Rng::gen_range(rng, 0..3) {
                0 => s.gproj(rng)?,
                1 => s.fpd(rng)?,
                _ => s.module(rng)?,
            };
            let tri = gproj_approximation(&m)?;
            if let Err(e) = tri.verify() {
                return Ok(fail(e.to_string(), json!({"module": mj(&m)})));
            }
            if is_gorenstein_projective(&m) && !certify_stable_iso(&tri.map, StableIdeal::ModuloProjectives)?.is_iso() {
                return Ok(fail(
                    "precover of a Gproj module is not a stable isomorphism",
                    json!({"module": mj(&m)}),
                ));
            }
            if finite_projective_dimension(&m)?.is_finite() {
                let p = psi(&m)?;
                if !p.is_zero() {
                    return Ok(fail(
                        "psi of an fpd module is nonzero",
                        json!({"module": mj(&m), "psi": mj(&p)}),
                    ));
                }
            }
            Outcome::Pass
        }
        "fpd_tensor" => {
            let a = s.gproj(rng)?;
            let l = s.fpd(rng)?;
            if check_fpd_tensor(&a, &l)? {
                Outcome::Pass
            } else {
                fail(
                    "falsification: Gproj tensor fpd has infinite projective dimension",
                    json!({"a": mj(&a), "l": mj(&l)}),
                )
            }
        }
        "relative_cone" => {
            let m = s.module(rng)?;
            let n = s.module(rng)?;
            let f = s.hom(rng, &m, &n)?;
            let cone = relative_cone(&f)?;
            let split = is_r_split_exact(&cone.inclusion, &cone.projection)?;
            let mut lhs = restriction_sum(&m, cone.cone())?;
            let mut rhs = restriction(cone.inclusion.target());
            lhs.sort();
            rhs.sort();
            if split && lhs == rhs {
                Outcome::Pass
            } else {
                fail(
                    "relative cone restriction mismatch",
                    json!({"f": HomFile::of(&f), "split": split}),
                )
            }
        }
        "ext_dimension_shift" => {
            let m = s.module(rng)?;
            let n = s.module(rng)?;
            let lhs = ext_group(&m, &n, 2)?;
            let rhs = ext_group(syzygy(&m)?.sub(), &n, 1)?;
            if lhs == rhs {
                Outcome::Pass
            } else {
                fail("Ext^2(M,N) differs from Ext^1(ΩM,N)", json!({"m": mj(&m), "n": mj(&n)}))
            }
        }
        "gproj_closure" => {
            let a = s.gproj(rng)?;
            let b = s.gproj(rng)?;
            let t = tensor_product(&a, &b)?;
            let h = internal_hom(&a, &b)?;
            if is_gorenstein_projective(&t) && is_gorenstein_projective(&h) {
                Outcome::Pass
            } else {
                fail(
                    "tensor or internal hom of Gproj modules is not Gproj",
                    json!({"a": mj(&a), "b": mj(&b)}),
                )
            }
        }
        other => return Err(Error::Parse(format!("unknown check {other:?}"))),
    })
}

fn run_check(idx: usize, name: &str, config: &SuiteConfig, sampler: &Sampler) -> CheckReport {
    let results: Vec<(usize, Result<Outcome>)> = (0..config.corpus_size)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((idx as u64) << 32) | i as u64);
            (i, run_item(name, sampler, &mut rng))
        })
        .collect();
    let mut report = CheckReport {
        name: name.to_string(),
        total: config.corpus_size,
        applicable: 0,
        passed: 0,
        failures: Vec::new(),
    };
    for (index, r) in results {
        match r {
            Ok(Outcome::Pass) => {
                report.applicable += 1;
                report.passed += 1;
            }
            Ok(Outcome::Vacuous) => report.passed += 1,
            Ok(Outcome::Fail(detail, witness)) => {
                report.applicable += 1;
                report.failures.push(Failure { index, detail, witness });
            }
            Err(e) => {
                report.applicable += 1;
                report.failures.push(Failure {
                    index,
                    detail: format!("error: {e}"),
                    witness: Value::Null,
                });
            }
        }
    }
    report
}

/// Runs every configured check; the report depends only on the config.
pub fn run_suite(config: &SuiteConfig, base: Option<&Path>) -> Result<SuiteReport> {
    let ring = config.ring.validated()?;
    let group: Arc<FiniteGroup> = Arc::new(resolve_group(&config.group, base)?);
    for name in &config.checks {
        if !CHECKS.contains(&name.as_str()) {
            return Err(Error::Parse(format!(
                "unknown check {name:?}; known: {}",
                CHECKS.join(", ")
            )));
        }
    }
    let sampler = Sampler::new(ring, group.clone(), config.max_factor);
    let (run, skip): (Vec<&String>, Vec<&String>) = config
        .checks
        .iter()
        .partition(|name| is_regular(ring) || !REGULAR_ONLY.contains(&name.as_str()));
    let skipped = skip
        .into_iter()
        .map(|name| Skipped {
            name: name.clone(),
            reason: format!("requires regular coefficients, {ring} is not"),
        })
        .collect();
    let checks: Vec<CheckReport> = run
        .into_iter()
        .map(|name| {
            let idx = CHECKS.iter().position(|c| c == name).expect("validated above");
            run_check(idx, name, config, &sampler)
        })
        .collect();
    let failures = checks.iter().map(|c| c.failures.len()).sum();
    Ok(SuiteReport {
        seed: config.seed,
        ring: ring.to_string(),
        group: group.name().to_string(),
        corpus_size: config.corpus_size,
        checks,
        skipped,
        failures,
    })
}
