//! Fixtures for the benchmarks.

use std::sync::Arc;

use relstab::num_bigint::BigInt;
use relstab::{AlgebraElement, CoefficientRing, FiniteGroup, GModule, RMatrix};

/// Deterministic `n x n` integer matrix with entries in `[-9, 9]`.
pub fn dense_matrix(n: usize) -> RMatrix {
    let data = (0..n * n)
        .map(|k| BigInt::from(((k * 7919 + 13) % 19) as i64 - 9))
        .collect();
    RMatrix::from_vec(CoefficientRing::Z, n, n, data).expect("shape matches")
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

/// `RG / (r)` for a single relation with the given coefficients.
pub fn presented(ring: CoefficientRing, order: usize, coeffs: &[i64]) -> GModule {
    let g = cyclic(order);
    let r = AlgebraElement::from_i64(ring, g.clone(), coeffs).expect("coefficients fit");
    GModule::from_rg_presentation(ring, g, 1, 1, &[r]).expect("valid presentation")
}
