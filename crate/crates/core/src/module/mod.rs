//! Finitely generated `RG`-modules in invariant-factor form.
//!
//! A module is `⊕ R/d_i` (restriction to `R`) together with one action
//! matrix per group element. Internally each summand is stored by the
//! order of its additive group: over `Z/p^n` a free summand has order
//! `p^n`. [`GModule::factors`] reports the ring-facing chain where free
//! summands are `0`.

mod construct;
mod hom;
pub mod io;
pub(crate) mod maps;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use construct::{
    coinduction, counit, direct_sum, induction, restriction, tensor_product, unit, AdjunctionMap, DirectSum, Splitting,
};
pub use hom::{dual, fingerprint, hom_group, internal_hom, Fingerprint, HomCells, HomGroup, HomSpace};
pub use maps::{cokernel, is_r_split_exact, is_split_epi_over_r, kernel, Cokernel, Kernel, Section};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::RMatrix;
use crate::ring::{divides, CoefficientRing};
use crate::snf::smith_normal_form;

/// A finitely generated `RG`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    ring: CoefficientRing,
    group: Arc<FiniteGroup>,
    moduli: Vec<BigInt>,
    action: Vec<RMatrix>,
}

/// An `RG`-linear map, as a matrix from source to target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModuleHom {
    source: GModule,
    target: GModule,
    matrix: RMatrix,
}

/// A module obtained from a raw presentation together with the change of
/// coordinates relating raw and normalized bases.
#[derive(Debug, Clone)]
pub(crate) struct Normalized {
    pub module: GModule,
    /// normalized coordinates of a raw vector (`k_new x k_raw`)
    pub to_normal: RMatrix,
    /// a raw lift of each normalized basis vector (`k_raw x k_new`)
    pub from_normal: RMatrix,
}

impl GModule {
    /// Assembles and validates a module from stored orders and actions.
    pub(crate) fn from_parts(
        ring: CoefficientRing,
        group: Arc<FiniteGroup>,
        moduli: Vec<BigInt>,
        action: Vec<RMatrix>,
    ) -> Result<Self> {
        let m = GModule {
            ring,
            group,
            moduli,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds a module from ring-facing factors and a full action table.
    ///
    /// The factor list need not be a divisibility chain; the result is
    /// renormalized into one.
    pub fn new(
        ring: CoefficientRing,
        group: Arc<FiniteGroup>,
        factors: &[BigInt],
        action: Vec<RMatrix>,
    ) -> Result<Self> {
        let moduli: Vec<BigInt> = factors.iter().map(|d| ring.effective_modulus(d)).collect();
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let k = moduli.len();
        let action: Vec<RMatrix> = action
            .into_iter()
            .map(|a| a.with_ring(ring).reduce_rows(&moduli))
            .collect();
        let raw = GModule {
            ring,
            group: group.clone(),
            moduli: moduli.clone(),
            action: action.clone(),
        };
        raw.validate()?;
        let rel: Vec<Vec<BigInt>> = (0..k)
            .filter(|&i| !moduli[i].is_zero())
            .map(|i| {
                let mut c = vec![BigInt::zero(); k];
                c[i] = moduli[i].clone();
                c
            })
            .collect();
        Ok(normalize(ring, group, k, &rel, &action)?.module)
    }

    /// Completes an action given on a generating set by breadth-first
    /// products over the multiplication table.
    pub fn from_generator_action(
        ring: CoefficientRing,
        group: Arc<FiniteGroup>,
        factors: &[BigInt],
        given: &[(usize, RMatrix)],
    ) -> Result<Self> {
        let k = factors.len();
        let n = group.order();
        let mut action: Vec<Option<RMatrix>> = vec![None; n];
        action[0] = Some(RMatrix::identity(ring, k));
        for (g, a) in given {
            if *g >= n {
                return Err(Error::InvalidModule(format!("element index {g} out of range")));
            }
            if a.shape() != (k, k) {
                return Err(Error::InvalidModule(format!("action of {g} has shape {:?}", a.shape())));
            }
            action[*g] = Some(a.with_ring(ring));
        }
        let gens: Vec<usize> = given.iter().map(|(g, _)| *g).collect();
        let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&g| action[g].is_some()).collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = group.mul(x, s);
                if action[y].is_none() {
                    let m = action[x].as_ref().unwrap() * action[s].as_ref().unwrap();
                    action[y] = Some(m);
                    queue.push_back(y);
                }
            }
        }
        let action: Option<Vec<RMatrix>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::InvalidModule("given elements do not generate the group".into()))?;
        Self::new(ring, group, factors, action)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Number of cyclic summands of the restriction.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Additive orders of the cyclic summands (`0` = infinite cyclic).
    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Invariant-factor chain of the restriction to `R`.
    pub fn factors(&self) -> Vec<BigInt> {
        self.moduli.iter().map(|m| self.ring.display_factor(m)).collect()
    }

    pub fn action(&self, g: usize) -> &RMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[RMatrix] {
        &self.action
    }

    pub fn is_zero(&self) -> bool {
        self.moduli.is_empty()
    }

    /// True when the restriction to `R` is free.
    pub fn is_r_free(&self) -> bool {
        let free = self.ring.effective_modulus(&BigInt::zero());
        self.moduli.iter().all(|m| *m == free)
    }

    pub(crate) fn check_same_base(&self, other: &GModule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Checks well-definedness and the homomorphism property of the action.
    pub fn validate(&self) -> Result<()> {
        let k = self.rank();
        let n = self.group.order();
        if self.action.len() != n {
            return Err(Error::InvalidModule(
                "action table size differs from group order".into(),
            ));
        }
        for (g, a) in self.action.iter().enumerate() {
            if a.shape() != (k, k) {
                return Err(Error::InvalidModule(format!(
                    "action of {g} is {:?}, expected {k}x{k}",
                    a.shape()
                )));
            }
            for i in 0..k {
                for j in 0..k {
                    if !divides(&self.moduli[i], &(a.get(i, j) * &self.moduli[j])) {
                        return Err(Error::InvalidModule(format!(
                            "action of element {g} is not well defined at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        if !self.action[0].congruent(&RMatrix::identity(self.ring, k), &self.moduli) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in 0..n {
            for &s in self.group.generators() {
                let prod = &self.action[g] * &self.action[s];
                if !prod.congruent(&self.action[self.group.mul(g, s)], &self.moduli) {
                    return Err(Error::InvalidModule(format!(
                        "action fails to be multiplicative at ({g}, {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self) -> GModuleHom {
        GModuleHom {
            source: self.clone(),
            target: self.clone(),
            matrix: RMatrix::identity(self.ring, self.rank()),
        }
    }

    /// Reduces a coordinate vector modulo the summand orders.
    pub(crate) fn reduce_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.moduli)
            .map(|(x, m)| crate::ring::reduce_mod(&self.ring.reduce(x), m))
            .collect()
    }
}

impl GModuleHom {
    /// Validates congruence and equivariance before wrapping.
    pub fn new(source: GModule, target: GModule, matrix: RMatrix) -> Result<Self> {
        source.check_same_base(&target)?;
        if matrix.shape() != (target.rank(), source.rank()) {
            return Err(Error::InvalidHom(format!(
                "matrix is {:?}, expected {}x{}",
                matrix.shape(),
                target.rank(),
                source.rank()
            )));
        }
        let matrix = matrix.with_ring(source.ring).reduce_rows(&target.moduli);
        let f = GModuleHom { source, target, matrix };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: GModule, target: GModule, matrix: RMatrix) -> Self {
        let matrix = matrix.reduce_rows(&target.moduli);
        GModuleHom { source, target, matrix }
    }

    pub fn zero(source: &GModule, target: &GModule) -> Self {
        let matrix = RMatrix::zeros(source.ring, target.rank(), source.rank());
        GModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for i in 0..t.rank() {
            for j in 0..s.rank() {
                if !divides(&t.moduli[i], &(self.matrix.get(i, j) * &s.moduli[j])) {
                    return Err(Error::InvalidHom(format!(
                        "entry ({i}, {j}) violates the summand congruences"
                    )));
                }
            }
        }
        for &g in s.group.generators() {
            let lhs = t.action(g) * &self.matrix;
            let rhs = &self.matrix * s.action(g);
            if !lhs.congruent(&rhs, &t.moduli) {
                return Err(Error::InvalidHom(format!("not equivariant for element {g}")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GModuleHom) -> Result<GModuleHom> {
        if first.target.moduli != self.source.moduli || first.target.rank() != self.source.rank() {
            return Err(Error::NotComposable(
                "target of the first map is not the source of the second".into(),
            ));
        }
        Ok(GModuleHom::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    pub fn add(&self, other: &GModuleHom) -> Result<GModuleHom> {
        if self.matrix.shape() != other.matrix.shape() {
            return Err(Error::DimensionMismatch("sum of maps with different shapes".into()));
        }
        Ok(GModuleHom::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            &self.matrix + &other.matrix,
        ))
    }

    pub fn scale(&self, c: &BigInt) -> GModuleHom {
        GModuleHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// True when the map is zero as a map of modules.
    pub fn is_zero(&self) -> bool {
        self.matrix.reduce_rows(&self.target.moduli).is_zero()
    }

    /// Equality as maps of modules (entries compared modulo target orders).
    pub fn same_map(&self, other: &GModuleHom) -> bool {
        self.matrix.congruent(&other.matrix, &self.target.moduli)
    }
}

/// Cokernel of `relations` on `Z^k` with a compatible action, brought into
/// invariant-factor form. Over `Z/p^n` the relations `p^n e_i` are implied.
pub(crate) fn normalize(
    ring: CoefficientRing,
    group: Arc<FiniteGroup>,
    k: usize,
    relations: &[Vec<BigInt>],
    action: &[RMatrix],
) -> Result<Normalized> {
    let z = CoefficientRing::Z;
    let mut cols: Vec<Vec<BigInt>> = relations.to_vec();
    if !ring.is_integers() {
        let m = ring.modulus();
        for i in 0..k {
            let mut c = vec![BigInt::zero(); k];
            c[i] = m.clone();
            cols.push(c);
        }
    }
    let rel = RMatrix::from_columns(z, k, &cols);
    let d = smith_normal_form(&rel)?;
    let diag = d.diagonal();
    let moduli_all: Vec<BigInt> = (0..k)
        .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
        .collect();
    let keep: Vec<usize> = (0..k).filter(|&i| !moduli_all[i].is_one()).collect();
    let moduli: Vec<BigInt> = keep.iter().map(|&i| moduli_all[i].clone()).collect();
    let to_normal = d.u_inv.select_rows(&keep).with_ring(ring).reduce_rows(&moduli);
    let from_normal = d.u.select_cols(&keep).with_ring(ring);
    let action: Vec<RMatrix> = action
        .iter()
        .map(|a| (&(&to_normal * &a.with_ring(ring)) * &from_normal).reduce_rows(&moduli))
        .collect();
    let module = GModule::from_parts(ring, group, moduli, action)?;
    Ok(Normalized {
        module,
        to_normal,
        from_normal,
    })
}
