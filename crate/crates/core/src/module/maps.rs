//! Kernels, cokernels and splitting tests.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{normalize, GModule, GModuleHom, HomCells};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linsolve::{solve_integral, LinearSystem};
use crate::matrix::RMatrix;
use crate::ring::CoefficientRing;

/// A kernel object with its inclusion.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub module: GModule,
    pub inclusion: GModuleHom,
}

/// A cokernel object with its projection and a set-theoretic lift of its basis.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub module: GModule,
    pub projection: GModuleHom,
    /// `k_target x k_coker`: a preimage of each cokernel basis vector
    pub lift: RMatrix,
}

impl Cokernel {
    /// The map out of the cokernel induced by `h`, which must vanish on the image.
    pub fn induced(&self, h: &GModuleHom) -> Result<GModuleHom> {
        GModuleHom::new(self.module.clone(), h.target().clone(), h.matrix() * &self.lift)
    }
}

/// An `R`-linear (not necessarily equivariant) splitting map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub matrix: RMatrix,
}

/// Completes a table of action matrices from those of the group generators.
pub(crate) fn complete_action(group: &FiniteGroup, ring: CoefficientRing, k: usize, gens: &[RMatrix]) -> Vec<RMatrix> {
    let n = group.order();
    let mut act: Vec<Option<RMatrix>> = vec![None; n];
    act[0] = Some(RMatrix::identity(ring, k));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (s, a) in group.generators().iter().zip(gens) {
            let y = group.mul(x, *s);
            if act[y].is_none() {
                act[y] = Some(act[x].as_ref().unwrap() * a);
                queue.push_back(y);
            }
        }
    }
    act.into_iter().map(|a| a.expect("generators generate")).collect()
}

/// The submodule of `m` spanned over `R` by `gens`, which must be `G`-stable.
pub(crate) fn submodule(m: &GModule, gens: &[Vec<BigInt>]) -> Result<Kernel> {
    let ring = m.ring();
    let group: Arc<FiniteGroup> = m.group().clone();
    let gens: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| m.reduce_vector(v))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let t = gens.len();
    let k = m.rank();
    if t == 0 {
        let z = GModule::zero(ring, group);
        return Ok(Kernel {
            inclusion: GModuleHom::zero(&z, m),
            module: z,
        });
    }
    let kmat = RMatrix::from_columns(CoefficientRing::Z, k, &gens);
    let zeros = vec![vec![BigInt::zero(); k]];
    let (_, rel) = solve_integral(&kmat, &zeros, m.moduli())?.expect("homogeneous");
    let kr = kmat.with_ring(ring);
    let mut gen_actions = Vec::new();
    for &g in group.generators() {
        let image = m.action(g) * &kr;
        let rhs: Vec<Vec<BigInt>> = (0..t).map(|c| image.column(c)).collect();
        let (b, _) = solve_integral(&kmat, &rhs, m.moduli())?
            .ok_or_else(|| Error::Internal("spanned subgroup is not G-stable".into()))?;
        gen_actions.push(RMatrix::from_columns(ring, t, &b));
    }
    let action = complete_action(&group, ring, t, &gen_actions);
    let nz = normalize(ring, group, t, &rel, &action)?;
    let incl = (&kr * &nz.from_normal).reduce_rows(m.moduli());
    Ok(Kernel {
        inclusion: GModuleHom::new(nz.module.clone(), m.clone(), incl)?,
        module: nz.module,
    })
}

/// `m / span(gens)`; `gens` must span a `G`-stable subgroup.
pub(crate) fn quotient(m: &GModule, gens: &[Vec<BigInt>]) -> Result<Cokernel> {
    let ring = m.ring();
    let k = m.rank();
    let mut rel: Vec<Vec<BigInt>> = gens.to_vec();
    for (i, d) in m.moduli().iter().enumerate() {
        if !d.is_zero() {
            let mut c = vec![BigInt::zero(); k];
            c[i] = d.clone();
            rel.push(c);
        }
    }
    let nz = normalize(ring, m.group().clone(), k, &rel, m.actions())?;
    Ok(Cokernel {
        projection: GModuleHom::new(m.clone(), nz.module.clone(), nz.to_normal.clone())?,
        lift: nz.from_normal,
        module: nz.module,
    })
}

/// Kernel of an equivariant map with its inclusion.
pub fn kernel(f: &GModuleHom) -> Result<Kernel> {
    f.validate()?;
    let t = f.target();
    let zeros = vec![vec![BigInt::zero(); t.rank()]];
    let (_, gens) = solve_integral(f.matrix(), &zeros, t.moduli())?.expect("homogeneous");
    submodule(f.source(), &gens)
}

/// Cokernel of an equivariant map with its projection.
pub fn cokernel(f: &GModuleHom) -> Result<Cokernel> {
    f.validate()?;
    let cols: Vec<Vec<BigInt>> = (0..f.matrix().cols()).map(|j| f.matrix().column(j)).collect();
    quotient(f.target(), &cols)
}

impl GModuleHom {
    pub fn is_injective(&self) -> Result<bool> {
        Ok(kernel(self)?.module.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let t = self.target();
        let cols: Vec<Vec<BigInt>> = (0..self.matrix().cols()).map(|j| self.matrix().column(j)).collect();
        let mut rel = cols;
        for (i, d) in t.moduli().iter().enumerate() {
            if !d.is_zero() {
                let mut c = vec![BigInt::zero(); t.rank()];
                c[i] = d.clone();
                rel.push(c);
            }
        }
        let m = RMatrix::from_columns(CoefficientRing::Z, t.rank(), &rel);
        Ok(crate::linsolve::factors_of_relations(CoefficientRing::Z, &m)?.is_empty())
    }
}

/// Solves `f ∘ s = id` for an `R`-linear `s`; `equivariant` also demands `s` be `RG`-linear.
pub(crate) fn section_of(f: &GModuleHom, equivariant: bool) -> Result<Option<RMatrix>> {
    let (src, tgt) = (f.source(), f.target());
    let ring = src.ring();
    let cells = HomCells::between(tgt, src);
    let u = cells.len();
    let mut sys = LinearSystem::new(ring, u);
    let id_t = RMatrix::identity(ring, tgt.rank());
    cells.push_equation(&mut sys, u, 0, &[(f.matrix(), &id_t, false)], &id_t, tgt.moduli());
    if equivariant {
        cells.push_equivariance(&mut sys, u, 0, tgt, src);
    }
    Ok(sys
        .solve()?
        .map(|(x, _)| cells.matrix_of(ring, &x).reduce_rows(src.moduli())))
}

/// Whether `f` is a split epimorphism after restriction to `R`, with a section.
pub fn is_split_epi_over_r(f: &GModuleHom) -> Result<Option<Section>> {
    Ok(section_of(f, false)?.map(|matrix| Section { matrix }))
}

/// Whether `0 → A --f--> B --g--> C → 0` is exact and split over `R`.
pub fn is_r_split_exact(f: &GModuleHom, g: &GModuleHom) -> Result<bool> {
    if f.target().moduli() != g.source().moduli() {
        return Err(Error::NotComposable("middle terms differ".into()));
    }
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    if !f.is_injective()? || !g.is_surjective()? {
        return Ok(false);
    }
    let mid = crate::linsolve::ModMap::new(f.matrix().clone(), f.target().factors())?;
    let out = crate::linsolve::ModMap::new(g.matrix().clone(), g.target().factors())?;
    if !crate::linsolve::homology_at(&mid, &out)?.is_empty() {
        return Ok(false);
    }
    Ok(is_split_epi_over_r(g)?.is_some())
}
