//! JSON form of groups, modules and maps.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{GModule, GModuleHom};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupFile};
use crate::matrix::RMatrix;
use crate::ring::CoefficientRing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Int::Small(v) => Ok(BigInt::from(*v)),
            Int::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| Int::Big(v.to_string()), Int::Small)
    }
}

/// A group given by a builtin name, a path to a group file, or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Inline(GroupFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: CoefficientRing,
    pub group: GroupRef,
    pub factors: Vec<Int>,
    /// action matrices keyed by element index (or label); generators suffice
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Int>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub source: ModuleFile,
    pub target: ModuleFile,
    pub matrix: Vec<Vec<Int>>,
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_group(path: &Path) -> Result<FiniteGroup> {
    FiniteGroup::from_file(from_json(&read_text(path)?, "group file")?)
}

/// Resolves a group reference; names are tried as paths relative to `base`
/// first and as builtins (`C<n>`, `C2xC2`, ...) second.
pub fn resolve_group(group: &GroupRef, base: Option<&Path>) -> Result<FiniteGroup> {
    match group {
        GroupRef::Inline(file) => FiniteGroup::from_file(file.clone()),
        GroupRef::Named(name) => {
            let path = base.map_or_else(|| Path::new(name).to_path_buf(), |b| b.join(name));
            if path.is_file() {
                read_group(&path)
            } else {
                FiniteGroup::builtin(name).ok_or_else(|| Error::Parse(format!("unknown group {name:?}")))
            }
        }
    }
}

fn element_index(group: &FiniteGroup, key: &str) -> Result<usize> {
    if let Ok(g) = key.parse::<usize>() {
        return Ok(g);
    }
    (0..group.order())
        .find(|&g| group.label(g) == key)
        .ok_or_else(|| Error::Parse(format!("unknown group element {key:?}")))
}

pub fn matrix_from_json(ring: CoefficientRing, rows: &[Vec<Int>]) -> Result<RMatrix> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(Int::to_bigint).collect())
        .collect::<Result<_>>()?;
    RMatrix::from_rows(ring, &rows)
}

pub fn matrix_to_json(m: &RMatrix) -> Vec<Vec<Int>> {
    m.to_rows().iter().map(|r| r.iter().map(Int::from).collect()).collect()
}

impl ModuleFile {
    /// Validates and builds the module over an already resolved group.
    pub fn build(&self, group: Arc<FiniteGroup>) -> Result<GModule> {
        let ring = self.ring.validated()?;
        let factors: Vec<BigInt> = self.factors.iter().map(Int::to_bigint).collect::<Result<_>>()?;
        let k = factors.len();
        let mut given = Vec::with_capacity(self.action.len());
        for (key, rows) in &self.action {
            let g = element_index(&group, key)?;
            let a = if k == 0 && rows.is_empty() {
                RMatrix::zeros(ring, 0, 0)
            } else {
                matrix_from_json(ring, rows)?
            };
            given.push((g, a));
        }
        if given.is_empty() && k == 0 {
            return Ok(GModule::zero(ring, group));
        }
        if given.len() == group.order() {
            given.sort_by_key(|(g, _)| *g);
            if given.iter().enumerate().all(|(i, (g, _))| i == *g) {
                return GModule::new(ring, group, &factors, given.into_iter().map(|(_, a)| a).collect());
            }
        }
        GModule::from_generator_action(ring, group, &factors, &given)
    }

    pub fn load(&self, base: Option<&Path>) -> Result<GModule> {
        let group = resolve_group(&self.group, base)?;
        self.build(Arc::new(group))
    }

    /// The full description of `m`, with the group inline.
    pub fn of(m: &GModule) -> Self {
        ModuleFile {
            ring: m.ring(),
            group: GroupRef::Inline(m.group().to_file()),
            factors: m.factors().iter().map(Int::from).collect(),
            action: (0..m.group().order())
                .map(|g| (g.to_string(), matrix_to_json(m.action(g))))
                .collect(),
        }
    }
}

pub fn parse_module(text: &str, base: Option<&Path>) -> Result<GModule> {
    from_json::<ModuleFile>(text, "module file")?.load(base)
}

pub fn read_module(path: &Path) -> Result<GModule> {
    parse_module(&read_text(path)?, path.parent())
}

pub fn module_to_json(m: &GModule) -> serde_json::Value {
    serde_json::to_value(ModuleFile::of(m)).expect("module serializes")
}

impl HomFile {
    pub fn of(f: &GModuleHom) -> Self {
        HomFile {
            source: ModuleFile::of(f.source()),
            target: ModuleFile::of(f.target()),
            matrix: matrix_to_json(f.matrix()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_only_input() {
        let text = r#"{"ring":{"type":"Z"},"group":"C2","factors":[8],"action":{"1":[[3]]}}"#;
        let m = parse_module(text, None).unwrap();
        assert_eq!(m.factors(), vec![BigInt::from(8)]);
        assert_eq!(m.action(1).get(0, 0), &BigInt::from(3));
    }

    #[test]
    fn labels_as_keys() {
        let text = r#"{"ring":{"type":"Zpn","p":2,"n":2},"group":"C4","factors":[0],"action":{"x^1":[[3]]}}"#;
        let m = parse_module(text, None).unwrap();
        assert_eq!(m.action(2).get(0, 0), &BigInt::from(1));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"ring":{"type":"Z"},"group":"C3","factors":[0,0],"action":{"1":[[0,-1],[1,-1]]}}"#;
        let m = parse_module(text, None).unwrap();
        let back = serde_json::to_string(&ModuleFile::of(&m)).unwrap();
        let again = parse_module(&back, None).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn big_entries_as_strings() {
        let v = BigInt::from(i64::MAX) * 4;
        assert_eq!(Int::from(&v), Int::Big(v.to_string()));
        assert_eq!(Int::Big(v.to_string()).to_bigint().unwrap(), v);
        assert_eq!(Int::from(&BigInt::from(-3)), Int::Small(-3));
    }

    #[test]
    fn invalid_inputs() {
        let bad_action = r#"{"ring":{"type":"Z"},"group":"C2","factors":[0],"action":{"1":[[2]]}}"#;
        assert!(parse_module(bad_action, None).is_err());
        let bad_ring = r#"{"ring":{"type":"Zpn","p":6,"n":1},"group":"C2","factors":[0],"action":{}}"#;
        assert!(parse_module(bad_ring, None).is_err());
        let bad_group = r#"{"ring":{"type":"Z"},"group":"Q8","factors":[0],"action":{}}"#;
        assert!(parse_module(bad_group, None).is_err());
        assert!(parse_module("{", None).is_err());
    }
}
