//! The worked example over `ZC2`: `M = ZC2/(x - c)` and `N = M ⊗ M`.

use std::sync::Arc;

use num_bigint::BigInt;
use relstab::module::{restriction, tensor_product};
use relstab::{finite_projective_dimension, is_weakly_projective, AlgebraElement, FiniteGroup, GModule, Pdim, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub constant: i64,
    pub assertions: Vec<Assertion>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

fn describe(m: &GModule) -> String {
    let factors: Vec<String> = restriction(m).iter().map(BigInt::to_string).collect();
    let rows: Vec<String> = m
        .action(1)
        .to_rows()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("factors [{}], x = [{}]", factors.join(","), rows.join("; "))
}

fn check(name: &'static str, expected: String, actual: String) -> Assertion {
    Assertion {
        name,
        passed: expected == actual,
        expected,
        actual,
    }
}

/// `ZC2/(x - c)`.
pub fn presented_module(c: i64) -> Result<GModule> {
    let group = Arc::new(FiniteGroup::cyclic(2));
    let r = AlgebraElement::from_i64(relstab::CoefficientRing::Z, group.clone(), &[-c, 1])?;
    GModule::from_rg_presentation(relstab::CoefficientRing::Z, group, 1, 1, &[r])
}

/// Compares the module presented by `x - c` against the expected profile:
/// `M = Z/8` with `x = 3`, not weakly projective, of projective dimension 1,
/// and `N = M ⊗ M = Z/8` with trivial action, not weakly projective, of
/// infinite projective dimension.
pub fn verify_example(c: i64) -> Result<ExampleReport> {
    let m = presented_module(c)?;
    let n = tensor_product(&m, &m)?;
    let assertions = vec![
        check(
            "M is Z/8 with x acting by 3",
            "factors [8], x = [3]".into(),
            describe(&m),
        ),
        check(
            "M is not weakly projective",
            "false".into(),
            is_weakly_projective(&m)?.to_string(),
        ),
        check(
            "M has projective dimension 1",
            Pdim::Finite(1).to_string(),
            finite_projective_dimension(&m)?.to_string(),
        ),
        check(
            "N = M ⊗ M is Z/8 with trivial action",
            "factors [8], x = [1]".into(),
            describe(&n),
        ),
        check(
            "N has infinite projective dimension",
            Pdim::Infinite.to_string(),
            finite_projective_dimension(&n)?.to_string(),
        ),
        check(
            "N is not weakly projective",
            "false".into(),
            is_weakly_projective(&n)?.to_string(),
        ),
    ];
    Ok(ExampleReport {
        constant: c,
        assertions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_passes() {
        assert!(verify_example(3).unwrap().passed());
    }

    #[test]
    fn x_minus_5_is_z24() {
        let r = verify_example(5).unwrap();
        assert!(!r.passed());
        assert_eq!(r.assertions[0].actual, "factors [24], x = [5]");
        assert_eq!(r.assertions[1].actual, "false");
        assert_eq!(r.assertions[2].actual, "1");
    }

    #[test]
    fn x_minus_1_is_trivial_z() {
        let r = verify_example(1).unwrap();
        assert!(!r.passed());
        assert_eq!(r.assertions[0].actual, "factors [0], x = [1]");
        assert_eq!(r.assertions[2].actual, "infinite");
    }
}
