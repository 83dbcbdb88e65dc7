//! Seeded random modules, maps and extensions for property checks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homological::{finite_projective_dimension, syzygy};
use crate::matrix::RMatrix;
use crate::module::{cokernel, direct_sum, dual, hom_group, induction, tensor_product, GModule, GModuleHom};
use crate::ring::CoefficientRing;

/// Where random modules live and how large their entries get.
#[derive(Debug, Clone)]
pub struct Sampler {
    pub ring: CoefficientRing,
    pub group: Arc<FiniteGroup>,
    /// bound on presentation coefficients and torsion orders
    pub max_entry: i64,
    /// bound on the rank over `R` of generated presentations
    pub max_rank: usize,
}

const ATTEMPTS: usize = 64;

impl Sampler {
    pub fn new(ring: CoefficientRing, group: Arc<FiniteGroup>, max_entry: i64) -> Self {
        let max_rank = (2 * group.order()).max(4);
        Sampler {
            ring,
            group,
            max_entry: max_entry.max(2),
            max_rank,
        }
    }

    fn element(&self, rng: &mut impl Rng, density: f64) -> AlgebraElement {
        let coeffs: Vec<i64> = (0..self.group.order())
            .map(|_| {
                if rng.gen_bool(density) {
                    rng.gen_range(-self.max_entry..=self.max_entry)
                } else {
                    0
                }
            })
            .collect();
        AlgebraElement::from_i64(self.ring, self.group.clone(), &coeffs).expect("coefficients fit the group")
    }

    /// Cokernel of a random `rows x cols` matrix over `RG`.
    pub fn presentation(&self, rng: &mut impl Rng, rows: usize, cols: usize) -> Result<GModule> {
        let entries: Vec<AlgebraElement> = (0..rows * cols).map(|_| self.element(rng, 0.6)).collect();
        GModule::from_rg_presentation(self.ring, self.group.clone(), rows, cols, &entries)
    }

    fn torsion_order(&self, rng: &mut impl Rng) -> BigInt {
        match self.ring {
            CoefficientRing::Integers => BigInt::from(rng.gen_range(2..=self.max_entry)),
            CoefficientRing::PrimePower { p, n } => BigInt::from(p).pow(rng.gen_range(1..n.max(2))),
        }
    }

    /// `R/d` with a random character, or a sign-like twist.
    pub fn cyclic(&self, rng: &mut impl Rng, torsion: bool) -> Result<GModule> {
        let d = if torsion {
            self.torsion_order(rng)
        } else {
            BigInt::from(0)
        };
        let twisted = self.group.order().is_multiple_of(2) && rng.gen_bool(0.5);
        let m = if twisted {
            GModule::sign(self.ring, self.group.clone())?
        } else {
            GModule::trivial(self.ring, self.group.clone())
        };
        if !torsion {
            return Ok(m);
        }
        GModule::new(self.ring, self.group.clone(), &[d], m.actions().to_vec())
    }

    fn any_cyclic(&self, rng: &mut impl Rng) -> Result<GModule> {
        let torsion = rng.gen_bool(0.5);
        self.cyclic(rng, torsion)
    }

    fn small_presentation(&self, rng: &mut impl Rng) -> Result<GModule> {
        let rows = if self.group.order() * 2 <= self.max_rank && rng.gen_bool(0.3) {
            2
        } else {
            1
        };
        let cols = rng.gen_range(1..=rows);
        self.presentation(rng, rows, cols)
    }

    /// A random module drawn from a mix of constructions.
    pub fn module(&self, rng: &mut impl Rng) -> Result<GModule> {
        for _ in 0..ATTEMPTS {
            let m = match rng.gen_range(0..7) {
                0 | 1 => self.small_presentation(rng)?,
                2 => self.cyclic(rng, true)?,
                3 => self.cyclic(rng, false)?,
                4 => induction(self.ring, self.group.clone(), &[self.torsion_order(rng)])?,
                5 => {
                    let a = self.any_cyclic(rng)?;
                    let b = self.any_cyclic(rng)?;
                    direct_sum(&a, &b)?.module
                }
                _ => {
                    let a = self.small_presentation(rng)?;
                    let b = self.any_cyclic(rng)?;
                    tensor_product(&a, &b)?
                }
            };
            if !m.is_zero() && m.rank() <= self.max_rank {
                return Ok(m);
            }
        }
        Err(Error::Internal(
            "could not draw a nonzero module within the rank bound".into(),
        ))
    }

    /// A random module that is free over `R`.
    pub fn gproj(&self, rng: &mut impl Rng) -> Result<GModule> {
        for _ in 0..ATTEMPTS {
            let m = match rng.gen_range(0..6) {
                0 => self.cyclic(rng, false)?,
                1 => GModule::free(self.ring, self.group.clone(), 1),
                2 => syzygy(&self.any_cyclic(rng)?)?.sub().clone(),
                3 => syzygy(&self.small_presentation(rng)?)?.sub().clone(),
                4 => dual(&syzygy(&self.cyclic(rng, true)?)?.sub().clone())?,
                _ => {
                    let a = self.cyclic(rng, false)?;
                    let b = syzygy(&self.cyclic(rng, true)?)?.sub().clone();
                    tensor_product(&a, &b)?
                }
            };
            if !m.is_zero() && m.is_r_free() && m.rank() <= self.max_rank {
                return Ok(m);
            }
        }
        Err(Error::Internal("could not draw a Gorenstein projective module".into()))
    }

    /// A random module of finite projective dimension, built as the
    /// cokernel of an injective map of free modules or as an induced module,
    /// and confirmed by the finite-dimension test.
    pub fn fpd(&self, rng: &mut impl Rng) -> Result<GModule> {
        for _ in 0..ATTEMPTS {
            let m = match rng.gen_range(0..3) {
                0 | 1 => self.presentation(rng, 1, 1)?,
                _ => induction(self.ring, self.group.clone(), &[self.torsion_order(rng)])?,
            };
            if m.rank() <= self.max_rank && finite_projective_dimension(&m)?.is_finite() {
                return Ok(m);
            }
        }
        Err(Error::Internal(
            "could not draw a module of finite projective dimension".into(),
        ))
    }

    /// A random `R`-combination of the generators of `Hom_RG(m, n)`.
    pub fn hom(&self, rng: &mut impl Rng, m: &GModule, n: &GModule) -> Result<GModuleHom> {
        let h = hom_group(m, n)?;
        let y: Vec<BigInt> = h
            .generators
            .iter()
            .map(|_| BigInt::from(rng.gen_range(-2..=2)))
            .collect();
        GModuleHom::new(m.clone(), n.clone(), h.combine(&y))
    }

    /// `0 → a → X → c → 0`, the pushout of `0 → Ω c → F → c → 0` along a
    /// random map `Ω c → a`.
    pub fn extension(&self, rng: &mut impl Rng, a: &GModule, c: &GModule) -> Result<(GModuleHom, GModuleHom)> {
        let omega = syzygy(c)?;
        let phi = self.hom(rng, omega.sub(), a)?;
        let sum = direct_sum(omega.mid(), a)?;
        let [i_f, i_a] = &sum.inclusions;
        let anti = i_f
            .compose(&omega.inclusion)?
            .add(&i_a.compose(&phi)?.scale(&BigInt::from(-1)))?;
        let push = cokernel(&anti)?;
        let incl = push.projection.compose(i_a)?;
        let to_c = omega.projection.compose(&sum.projections[0])?;
        let proj = push.induced(&to_c)?;
        Ok((incl, proj))
    }
}

/// Random integer matrix with entries in `[-bound, bound]`.
pub fn random_matrix(rng: &mut impl Rng, ring: CoefficientRing, rows: usize, cols: usize, bound: i64) -> RMatrix {
    let data: Vec<BigInt> = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    RMatrix::from_vec(ring, rows, cols, data).expect("shape matches data")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::module::is_r_split_exact;

    fn sampler(n: usize) -> Sampler {
        Sampler::new(CoefficientRing::Z, Arc::new(FiniteGroup::cyclic(n)), 4)
    }

    #[test]
    fn draws_are_valid_and_reproducible() {
        let s = sampler(3);
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let m = s.module(&mut a).unwrap();
            m.validate().unwrap();
            assert_eq!(m, s.module(&mut b).unwrap());
        }
    }

    #[test]
    fn gproj_and_fpd_draws() {
        let s = sampler(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            assert!(s.gproj(&mut rng).unwrap().is_r_free());
            assert!(finite_projective_dimension(&s.fpd(&mut rng).unwrap())
                .unwrap()
                .is_finite());
        }
    }

    #[test]
    fn extensions_are_exact() {
        let s = sampler(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = s.gproj(&mut rng).unwrap();
        let c = s.gproj(&mut rng).unwrap();
        let (f, g) = s.extension(&mut rng, &a, &c).unwrap();
        assert!(is_r_split_exact(&f, &g).unwrap());
    }
}
