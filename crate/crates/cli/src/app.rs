//! Command-line surface: argument parsing, dispatch and rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use relstab::homological::{weak_projectivity, Pdim};
use relstab::module::io::{read_group, read_module, ModuleFile};
use relstab::module::{direct_sum, dual, fingerprint, hom_group, internal_hom, tensor_product};
use relstab::{
    check_fpd_tensor, complexity_estimate, ext_group, finite_projective_dimension, gproj_approximation,
    is_gorenstein_projective, is_projective, minimal_resolution, psi, r_split_approximation, relative_cosyzygy,
    relative_syzygy, stable_hom, syzygy, Error, GModule, GModuleHom, Result, StableIdeal,
};
use serde_json::{json, Value};

use crate::example::verify_example;
use crate::suite::{run_suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "relstab",
    version,
    about = "Relative stable and Gorenstein homological algebra over ZG and (Z/p^n)G"
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group files
    #[command(subcommand)]
    Group(GroupCmd),
    /// Module files
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Projectivity profile of a module
    Analyze { file: PathBuf },
    /// Module constructions
    #[command(subcommand)]
    Op(OpCmd),
    /// Hom_RG(A, B)
    Hom { a: PathBuf, b: PathBuf },
    /// Hom_RG(A, B) modulo (weakly) projectives
    StableHom {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "proj")]
        ideal: IdealArg,
    },
    /// Iterated syzygies or cosyzygies
    Syzygy {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "abelian")]
        kind: SyzygyKind,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Ext^i_RG(A, B)
    Ext {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'i')]
        i: usize,
    },
    /// Projective dimension (0, 1 or infinite)
    Pdim { file: PathBuf },
    #[command(subcommand)]
    Gproj(GprojCmd),
    #[command(subcommand)]
    Approx(ApproxCmd),
    /// Gorenstein projective part with free summands stripped
    Psi { file: PathBuf },
    #[command(subcommand)]
    Check(CheckCmd),
    /// Betti numbers of the minimal resolution over a local group algebra
    Betti {
        file: PathBuf,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
    #[command(subcommand)]
    Suite(SuiteCmd),
    #[command(subcommand)]
    Paper(ExampleCmd),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    Validate { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ModuleCmd {
    Validate { file: PathBuf },
    Analyze { file: PathBuf },
    Fingerprint { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OpCmd {
    Tensor { a: PathBuf, b: PathBuf },
    Hom { a: PathBuf, b: PathBuf },
    Dual { a: PathBuf },
    Sum { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GprojCmd {
    /// Gorenstein projectivity test
    Test { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ApproxCmd {
    /// Gorenstein projective precover
    Gproj {
        file: PathBuf,
        #[arg(long)]
        r_split: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// Gproj ⊗ fpd has finite projective dimension
    FpdTensor { gproj: PathBuf, fpd: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    Run {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleCmd {
    /// Checks the worked example M = ZC2/(x - 3)
    VerifyExample {
        /// use the presentation x - c instead
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        constant: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IdealArg {
    Proj,
    Wproj,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SyzygyKind {
    Abelian,
    Relative,
    RelativeCo,
}

impl From<IdealArg> for StableIdeal {
    fn from(a: IdealArg) -> Self {
        match a {
            IdealArg::Proj => StableIdeal::ModuloProjectives,
            IdealArg::Wproj => StableIdeal::ModuloWeaklyProjectives,
        }
    }
}

/// A rendered result. `success = false` marks a failed mathematical assertion.
#[derive(Debug, Clone)]
pub struct Output {
    pub value: Value,
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(value: Value, text: String) -> Self {
        Output {
            value,
            text,
            success: true,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::Internal(_) => EXIT_ASSERTION,
        _ => EXIT_INPUT,
    }
}

fn factors_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn factors_json(v: &[BigInt]) -> Value {
    json!(v
        .iter()
        .map(|d| json!(relstab::module::io::Int::from(d)))
        .collect::<Vec<_>>())
}

fn module_json(m: &GModule) -> Value {
    serde_json::to_value(ModuleFile::of(m)).expect("module serializes")
}

fn matrix_text(rows: &[Vec<BigInt>]) -> String {
    let rows: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

pub fn module_text(m: &GModule) -> String {
    let mut s = format!(
        "ring {}, group {} (order {})\nfactors {}\n",
        m.ring(),
        m.group().name(),
        m.group().order(),
        factors_text(&m.factors())
    );
    for &g in m.group().generators() {
        let _ = writeln!(
            s,
            "  {} acts by {}",
            m.group().label(g),
            matrix_text(&m.action(g).to_rows())
        );
    }
    s
}

fn load(p: &Path) -> Result<GModule> {
    read_module(p)
}

fn load_pair(a: &Path, b: &Path) -> Result<(GModule, GModule)> {
    let m = load(a)?;
    let n = load(b)?;
    if m.group() != n.group() {
        return Err(Error::GroupMismatch);
    }
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), n.ring().to_string()));
    }
    Ok((m, n))
}

fn analyze(m: &GModule) -> Result<Output> {
    let projective = is_projective(m)?;
    let wp = weak_projectivity(m)?;
    if let Some(s) = &wp.section {
        let eps = relstab::module::counit(m)?;
        if !eps.map.compose(s)?.same_map(&m.identity()) {
            return Err(Error::Internal("counit section does not verify".into()));
        }
    }
    let gproj = is_gorenstein_projective(m);
    let pdim = finite_projective_dimension(m)?;
    let value = json!({
        "factors": factors_json(&m.factors()),
        "projective": projective,
        "weakly_projective": wp.weakly_projective,
        "gproj": gproj,
        "pdim": pdim.to_string(),
    });
    let text = format!(
        "{}projective: {projective}\nweakly_projective: {}\ngproj: {gproj}\npdim: {pdim}\n",
        module_text(m),
        wp.weakly_projective
    );
    Ok(Output::ok(value, text))
}

fn module_output(m: &GModule) -> Output {
    m.validate().expect("constructed modules are valid");
    Output::ok(module_json(m), module_text(m))
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Group(GroupCmd::Validate { file }) => {
            let g = read_group(file)?;
            let gens: Vec<String> = g.generators().iter().map(|&x| g.label(x)).collect();
            Ok(Output::ok(
                json!({"name": g.name(), "order": g.order(), "generators": g.generators()}),
                format!(
                    "group {} of order {} is valid, generated by {}\n",
                    g.name(),
                    g.order(),
                    gens.join(", ")
                ),
            ))
        }
        Command::Module(ModuleCmd::Validate { file }) => {
            let m = load(file)?;
            Ok(Output::ok(
                json!({"valid": true, "module": module_json(&m)}),
                format!("valid\n{}", module_text(&m)),
            ))
        }
        Command::Module(ModuleCmd::Analyze { file }) | Command::Analyze { file } => analyze(&load(file)?),
        Command::Module(ModuleCmd::Fingerprint { file }) => {
            let fp = fingerprint(&load(file)?)?;
            let text = format!(
                "factors {}\nHom(R, M) {}\nHom(M, R) {}\nHom(M, RG) {}\n",
                factors_text(&fp.factors),
                factors_text(&fp.hom_from_trivial),
                factors_text(&fp.hom_to_trivial),
                factors_text(&fp.hom_to_free)
            );
            Ok(Output::ok(
                json!({
                    "factors": factors_json(&fp.factors),
                    "hom_from_trivial": factors_json(&fp.hom_from_trivial),
                    "hom_to_trivial": factors_json(&fp.hom_to_trivial),
                    "hom_to_free": factors_json(&fp.hom_to_free),
                }),
                text,
            ))
        }
        Command::Op(op) => {
            let m = match op {
                OpCmd::Tensor { a, b } => {
                    let (m, n) = load_pair(a, b)?;
                    tensor_product(&m, &n)?
                }
                OpCmd::Hom { a, b } => {
                    let (m, n) = load_pair(a, b)?;
                    internal_hom(&m, &n)?
                }
                OpCmd::Dual { a } => dual(&load(a)?)?,
                OpCmd::Sum { a, b } => {
                    let (m, n) = load_pair(a, b)?;
                    direct_sum(&m, &n)?.module
                }
            };
            Ok(module_output(&m))
        }
        Command::Hom { a, b } => {
            let (m, n) = load_pair(a, b)?;
            let h = hom_group(&m, &n)?;
            let mut text = format!("Hom factors {}\n", factors_text(&h.factors));
            let mut gens = Vec::new();
            for (k, g) in h.generators.iter().enumerate() {
                g.validate()?;
                let _ = writeln!(text, "  generator {k}: {}", matrix_text(&g.matrix().to_rows()));
                gens.push(json!(relstab::module::io::matrix_to_json(g.matrix())));
            }
            Ok(Output::ok(
                json!({"factors": factors_json(&h.factors), "generators": gens}),
                text,
            ))
        }
        Command::StableHom { a, b, ideal } => {
            let (m, n) = load_pair(a, b)?;
            let r = stable_hom(&m, &n, (*ideal).into())?;
            for g in r.generators.iter().chain(&r.factoring_submodule) {
                g.validate()?;
            }
            let mats = |v: &[GModuleHom]| -> Vec<Value> {
                v.iter()
                    .map(|g| json!(relstab::module::io::matrix_to_json(g.matrix())))
                    .collect()
            };
            let value = json!({
                "ideal": r.ideal,
                "factors": factors_json(&r.factors),
                "generators": mats(&r.generators),
                "factoring_submodule": mats(&r.factoring_submodule),
            });
            Ok(Output::ok(
                value,
                format!("stable Hom factors {}\n", factors_text(&r.factors)),
            ))
        }
        Command::Syzygy { file, kind, n } => {
            let mut m = load(file)?;
            for _ in 0..*n {
                let seq = match kind {
                    SyzygyKind::Abelian => syzygy(&m)?,
                    SyzygyKind::Relative => relative_syzygy(&m)?,
                    SyzygyKind::RelativeCo => relative_cosyzygy(&m)?,
                };
                seq.inclusion.validate()?;
                seq.projection.validate()?;
                if !seq.projection.compose(&seq.inclusion)?.is_zero() {
                    return Err(Error::Internal("syzygy sequence does not compose to zero".into()));
                }
                m = match kind {
                    SyzygyKind::RelativeCo => seq.quotient().clone(),
                    _ => seq.sub().clone(),
                };
            }
            Ok(module_output(&m))
        }
        Command::Ext { a, b, i } => {
            let (m, n) = load_pair(a, b)?;
            let e = ext_group(&m, &n, *i)?;
            Ok(Output::ok(
                json!({"i": i, "factors": factors_json(&e)}),
                format!("Ext^{i} factors {}\n", factors_text(&e)),
            ))
        }
        Command::Pdim { file } => {
            let p = finite_projective_dimension(&load(file)?)?;
            let v = match p {
                Pdim::Finite(d) => json!(d),
                Pdim::Infinite => json!("infinite"),
            };
            Ok(Output::ok(json!({"pdim": v}), format!("pdim {p}\n")))
        }
        Command::Gproj(GprojCmd::Test { file }) => {
            let m = load(file)?;
            let g = is_gorenstein_projective(&m);
            Ok(Output::ok(
                json!({"gorenstein_projective": g, "restriction": factors_json(&m.factors())}),
                format!("gorenstein projective: {g}\n"),
            ))
        }
        Command::Approx(ApproxCmd::Gproj { file, r_split }) => {
            let m = load(file)?;
            let tri = if *r_split {
                r_split_approximation(&m)?
            } else {
                gproj_approximation(&m)?
            };
            tri.verify()?;
            let value = json!({
                "target": module_json(&tri.target),
                "gproj_part": module_json(&tri.gproj_part),
                "source": module_json(&tri.source),
                "map": relstab::module::io::matrix_to_json(tri.map.matrix()),
                "kernel": module_json(&tri.kernel),
                "kernel_inclusion": relstab::module::io::matrix_to_json(tri.kernel_inclusion.matrix()),
                "r_split": tri.r_split,
                "section": tri.section.as_ref().map(relstab::module::io::matrix_to_json),
            });
            let text = format!(
                "A: factors {}\nsource: factors {}\nkernel: factors {}\nr_split: {}\n",
                factors_text(&tri.gproj_part.factors()),
                factors_text(&tri.source.factors()),
                factors_text(&tri.kernel.factors()),
                tri.r_split
            );
            Ok(Output::ok(value, text))
        }
        Command::Psi { file } => Ok(module_output(&psi(&load(file)?)?)),
        Command::Check(CheckCmd::FpdTensor { gproj, fpd }) => {
            let (a, l) = load_pair(gproj, fpd)?;
            let ok = check_fpd_tensor(&a, &l)?;
            let text = if ok {
                "M ⊗ L has finite projective dimension\n".to_string()
            } else {
                "FALSIFICATION: M ⊗ L has infinite projective dimension\n".to_string()
            };
            Ok(Output {
                value: json!({"fpd": ok}),
                text,
                success: ok,
            })
        }
        Command::Betti { file, n } => {
            let m = load(file)?;
            let log = minimal_resolution(&m, *n)?;
            for step in &log.covers {
                if !step.map.is_surjective()? {
                    return Err(Error::Internal("cover map is not surjective".into()));
                }
            }
            let c = complexity_estimate(&log.betti);
            let value = json!({"betti": log.betti, "minimal": log.minimal, "complexity": c});
            Ok(Output::ok(
                value,
                format!("betti {:?}\ncomplexity {}\n", log.betti, c.complexity),
            ))
        }
        Command::Suite(SuiteCmd::Run { seed, config }) => {
            let mut cfg = SuiteConfig::read(config)?;
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            let report = run_suite(&cfg, config.parent())?;
            let mut text = String::new();
            for c in &report.checks {
                let _ = writeln!(
                    text,
                    "{:<24} {:>4} items, {:>4} applicable, {:>4} failed",
                    c.name,
                    c.total,
                    c.applicable,
                    c.failures.len()
                );
            }
            for sk in &report.skipped {
                let _ = writeln!(text, "{:<24} skipped: {}", sk.name, sk.reason);
            }
            let _ = writeln!(text, "total failures: {}", report.failures);
            Ok(Output {
                success: report.ok(),
                value: serde_json::to_value(&report).expect("report serializes"),
                text,
            })
        }
        Command::Paper(ExampleCmd::VerifyExample { constant }) => {
            let report = verify_example(*constant)?;
            let mut text = String::new();
            for a in &report.assertions {
                let mark = if a.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{mark} {}: expected {}, got {}", a.name, a.expected, a.actual);
            }
            Ok(Output {
                success: report.passed(),
                value: serde_json::to_value(&report).expect("report serializes"),
                text,
            })
        }
    }
}

/// Applies `RELSTAB_MAX_ENTRY_BITS` if set.
pub fn apply_env() -> Result<()> {
    if let Ok(v) = std::env::var("RELSTAB_MAX_ENTRY_BITS") {
        let bits: u64 = v
            .trim()
            .parse()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| Error::Parse(format!("RELSTAB_MAX_ENTRY_BITS must be a positive integer, got {v:?}")))?;
        relstab::set_max_entry_bits(bits);
    }
    Ok(())
}

/// Parses, runs and renders; returns the process exit code.
pub fn main_with(cli: &Cli, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32 {
    if let Err(e) = apply_env() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    match execute(cli) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.value).expect("json"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.success {
                EXIT_OK
            } else {
                EXIT_ASSERTION
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
