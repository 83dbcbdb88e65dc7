//! The group algebra `RG`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::RMatrix;
use crate::ring::CoefficientRing;

/// An element `Σ a_g g` of `RG`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ring: CoefficientRing,
    group: Arc<FiniteGroup>,
    coeffs: Vec<BigInt>,
}

impl AlgebraElement {
    pub fn new(ring: CoefficientRing, group: Arc<FiniteGroup>, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        let coeffs = coeffs.iter().map(|c| ring.reduce(c)).collect();
        Ok(AlgebraElement { ring, group, coeffs })
    }

    pub fn from_i64(ring: CoefficientRing, group: Arc<FiniteGroup>, coeffs: &[i64]) -> Result<Self> {
        Self::new(ring, group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ring: CoefficientRing, group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        AlgebraElement {
            ring,
            group,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    /// `c · g`.
    pub fn monomial(ring: CoefficientRing, group: Arc<FiniteGroup>, g: usize, c: BigInt) -> Self {
        let mut a = Self::zero(ring, group);
        a.coeffs[g] = ring.reduce(&c);
        a
    }

    pub fn one(ring: CoefficientRing, group: Arc<FiniteGroup>) -> Self {
        Self::monomial(ring, group, 0, BigInt::one())
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.reduce(&(a + b)))
            .collect();
        Ok(AlgebraElement { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.reduce(&(a - b)))
            .collect();
        Ok(AlgebraElement { coeffs, ..self.clone() })
    }

    /// Convolution product through the multiplication table.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = vec![BigInt::zero(); self.group.order()];
        for (g, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (h, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[self.group.mul(g, h)] += a * b;
            }
        }
        Self::new(self.ring, self.group.clone(), out)
    }

    /// The linear extension of `g ↦ g⁻¹`.
    pub fn antipode(&self) -> Self {
        let mut out = vec![BigInt::zero(); self.group.order()];
        for (g, a) in self.coeffs.iter().enumerate() {
            out[self.group.inv(g)] = a.clone();
        }
        AlgebraElement {
            coeffs: out,
            ..self.clone()
        }
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.ring.reduce(&self.coeffs.iter().sum())
    }

    /// Matrix of left multiplication by this element on the basis `G`.
    pub fn left_multiplication(&self) -> RMatrix {
        let n = self.group.order();
        let mut m = RMatrix::zeros(self.ring, n, n);
        for (g, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                let v = m.get(gh, h) + a;
                m.set(gh, h, v);
            }
        }
        m
    }
}

/// Permutation matrix of left multiplication by `g`: column `h` is `e_{gh}`.
pub fn regular_representation(ring: CoefficientRing, group: &FiniteGroup, g: usize) -> RMatrix {
    let n = group.order();
    let mut m = RMatrix::zeros(ring, n, n);
    for h in 0..n {
        m.set(group.mul(g, h), h, BigInt::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn el(c: &[i64]) -> AlgebraElement {
        AlgebraElement::from_i64(CoefficientRing::Z, c2(), c).unwrap()
    }

    #[test]
    fn products_in_zc2() {
        assert_eq!(el(&[1, 1]).multiply(&el(&[1, -1])).unwrap(), el(&[0, 0]));
        assert_eq!(el(&[1, 1]).multiply(&el(&[1, 1])).unwrap(), el(&[2, 2]));
        let a = el(&[4, -7]);
        assert_eq!(el(&[1, 0]).multiply(&a).unwrap(), a);
    }

    #[test]
    fn antipode_and_augmentation() {
        assert_eq!(el(&[0, 1]).antipode(), el(&[0, 1]));
        assert_eq!(el(&[1, 1]).augmentation(), BigInt::from(2));
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let x = AlgebraElement::from_i64(CoefficientRing::Z, c3.clone(), &[0, 1, 0]).unwrap();
        assert_eq!(x.antipode().coeffs()[2], BigInt::one());
    }

    #[test]
    fn regular_rep_of_c2() {
        let m = regular_representation(CoefficientRing::Z, &FiniteGroup::cyclic(2), 1);
        assert_eq!(
            m,
            RMatrix::from_rows(CoefficientRing::Z, &[vec![0, 1], vec![1, 0]]).unwrap()
        );
        assert_eq!(el(&[0, 1]).left_multiplication(), m);
    }

    #[test]
    fn mismatched_groups_rejected() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let b = AlgebraElement::one(CoefficientRing::Z, c3);
        assert_eq!(el(&[1, 0]).multiply(&b), Err(Error::GroupMismatch));
    }
}
