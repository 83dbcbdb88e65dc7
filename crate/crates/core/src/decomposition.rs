//! Gorenstein projective approximations, the right adjoint `ψ`, and
//! certificates for stable isomorphisms.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::homological::{
    factoring_maps, finite_projective_dimension, is_gorenstein_projective, is_projective, smith_cover,
    strip_free_summands, StableIdeal,
};
use crate::linsolve::{factors_of_relations, homology_at, solve_integral, ModMap};
use crate::matrix::RMatrix;
use crate::module::maps::section_of;
use crate::module::{cokernel, counit, direct_sum, hom_group, kernel, unit, GModule, GModuleHom, HomCells, HomSpace};
use crate::ring::CoefficientRing;

/// `0 → kernel → source → target → 0` with `source` built from a
/// Gorenstein projective part.
///
/// For the plain approximation `source = gproj_part`; for the `R`-split
/// variant `source = gproj_part ⊕ ι*ι_* target`.
#[derive(Debug, Clone)]
pub struct ApproximationTriangle {
    pub target: GModule,
    pub gproj_part: GModule,
    pub source: GModule,
    pub map: GModuleHom,
    pub kernel: GModule,
    pub kernel_inclusion: GModuleHom,
    pub r_split: bool,
    /// `R`-linear section of `map` when `r_split`
    pub section: Option<RMatrix>,
}

impl ApproximationTriangle {
    /// Re-checks every claim the triangle makes.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("approximation triangle: {what}")));
        if !is_gorenstein_projective(&self.gproj_part) {
            return fail("A is not Gorenstein projective");
        }
        if !finite_projective_dimension(&self.kernel)?.is_finite() {
            return fail("kernel has infinite projective dimension");
        }
        self.map.validate()?;
        self.kernel_inclusion.validate()?;
        if !self.map.is_surjective()? {
            return fail("map is not epi");
        }
        if !self.map.compose(&self.kernel_inclusion)?.is_zero() {
            return fail("composite kernel -> A -> M is nonzero");
        }
        if !self.kernel_inclusion.is_injective()? {
            return fail("kernel inclusion is not injective");
        }
        let d_in = ModMap::new(self.kernel_inclusion.matrix().clone(), self.source.factors())?;
        let d_out = ModMap::new(self.map.matrix().clone(), self.target.factors())?;
        if !homology_at(&d_in, &d_out)?.is_empty() {
            return fail("kernel is not the full kernel");
        }
        if self.r_split {
            let ok = self.section.as_ref().is_some_and(|s| {
                (self.map.matrix() * s).congruent(
                    &RMatrix::identity(self.target.ring(), self.target.rank()),
                    self.target.moduli(),
                )
            });
            if !ok {
                return fail("missing or invalid R-linear section");
            }
        }
        Ok(())
    }
}

fn identity_triangle(m: &GModule) -> ApproximationTriangle {
    let zero = GModule::zero(m.ring(), m.group().clone());
    ApproximationTriangle {
        target: m.clone(),
        gproj_part: m.clone(),
        source: m.clone(),
        map: m.identity(),
        kernel_inclusion: GModuleHom::zero(&zero, m),
        kernel: zero,
        r_split: false,
        section: None,
    }
}

/// The embedding `S → Q` of a Gorenstein projective `S` into a free module
/// with Gorenstein projective cokernel, dual to a free cover of `S^∨`.
///
/// With `π': RG^t → S^∨` the cover, `Q = RG^t` and the `(l, h)` coordinate of
/// the image of `s` is `π'(h ε_l)(s)`.
pub fn free_coresolution_step(s: &GModule) -> Result<GModuleHom> {
    let ring = s.ring();
    let group = s.group().clone();
    let n = group.order();
    let trivial = GModule::trivial(ring, group.clone());
    let space = HomSpace::new(s, &trivial)?;
    let cover = smith_cover(&space.module)?;
    let t = cover.generators.len();
    let q = GModule::free(ring, group, t);
    let mut mat = RMatrix::zeros(ring, t * n, s.rank());
    for c in 0..t * n {
        let functional = space.map_at(&cover.map.matrix().column(c));
        for j in 0..s.rank() {
            mat.set(c, j, functional.get(0, j).clone());
        }
    }
    GModuleHom::new(s.clone(), q, mat)
}

fn unsupported_ring() -> Error {
    Error::Unsupported("R-split approximations are implemented for R = Z only".into())
}

/// A Gorenstein projective precover `A → M` with projective kernel.
///
/// Over `Z/p^n` every module is Gorenstein projective and the identity is
/// returned.
pub fn gproj_approximation(m: &GModule) -> Result<ApproximationTriangle> {
    if is_gorenstein_projective(m) && !m.ring().is_integers() {
        return Ok(identity_triangle(m));
    }
    if is_projective(m)? {
        return Ok(identity_triangle(m));
    }
    let cover = smith_cover(m)?;
    let syz = kernel(&cover.map)?;
    if is_projective(&syz.module)? {
        return Ok(ApproximationTriangle {
            target: m.clone(),
            gproj_part: cover.free.clone(),
            source: cover.free,
            map: cover.map,
            kernel: syz.module,
            kernel_inclusion: syz.inclusion,
            r_split: false,
            section: None,
        });
    }
    let iota = free_coresolution_step(&syz.module)?;
    let f = cover.free.clone();
    let q = iota.target().clone();
    let sum = direct_sum(&f, &q)?;
    let [inc_f, inc_q] = &sum.inclusions;
    let anti = inc_f
        .compose(&syz.inclusion)?
        .add(&inc_q.compose(&iota)?.scale(&BigInt::from(-1)))?;
    let push = cokernel(&anti)?;
    let to_m = cover.map.compose(&sum.projections[0])?;
    let map = push.induced(&to_m)?;
    let kernel_inclusion = push.projection.compose(inc_q)?;
    Ok(ApproximationTriangle {
        target: m.clone(),
        gproj_part: push.module.clone(),
        source: push.module,
        map,
        kernel: q,
        kernel_inclusion,
        r_split: false,
        section: None,
    })
}

/// The `R`-split precover `A ⊕ ι*ι_* M → M` built from the precover and the counit.
pub fn r_split_approximation(m: &GModule) -> Result<ApproximationTriangle> {
    if !m.ring().is_integers() {
        return Err(unsupported_ring());
    }
    let base = gproj_approximation(m)?;
    let eps = counit(m)?;
    let sum = direct_sum(&base.source, eps.map.source())?;
    let map = base
        .map
        .compose(&sum.projections[0])?
        .add(&eps.map.compose(&sum.projections[1])?)?;
    let ker = kernel(&map)?;
    let section = section_of(&map, false)?;
    if !finite_projective_dimension(&ker.module)?.is_finite() {
        return Err(Error::Internal(
            "kernel of the R-split precover has infinite projective dimension".into(),
        ));
    }
    Ok(ApproximationTriangle {
        target: m.clone(),
        gproj_part: base.gproj_part,
        source: sum.module,
        map,
        kernel: ker.module,
        kernel_inclusion: ker.inclusion,
        r_split: true,
        section,
    })
}

/// `ψ M`: the Gorenstein projective part of the approximation, with free
/// summands stripped.
pub fn psi(m: &GModule) -> Result<GModule> {
    let tri = gproj_approximation(m)?;
    Ok(strip_free_summands(&tri.gproj_part)?.module)
}

/// Outcome of a stable-isomorphism search for a fixed map.
#[derive(Debug, Clone)]
pub struct StableIsoCertificate {
    pub ideal: StableIdeal,
    /// `g` with `g∘f ≡ id` and `f∘g ≡ id` modulo the ideal
    pub inverse: Option<GModuleHom>,
}

impl StableIsoCertificate {
    pub fn is_iso(&self) -> bool {
        self.inverse.is_some()
    }
}

/// Looks for a stable inverse of `f: M → N`.
///
/// Unknowns are the coordinates of `g` in `Hom_RG(N, M)` and of the two
/// correction terms in the factoring ideals of `End(M)` and `End(N)`; the
/// two identities are imposed cell by cell, so the search is complete.
pub fn certify_stable_iso(f: &GModuleHom, ideal: StableIdeal) -> Result<StableIsoCertificate> {
    let (m, n) = (f.source(), f.target());
    let ring = m.ring();
    let back = hom_group(n, m)?;
    let ideal_m = factoring_maps(m, m, ideal)?;
    let ideal_n = factoring_maps(n, n, ideal)?;
    let cells_m = HomCells::between(m, m);
    let cells_n = HomCells::between(n, n);
    let (km, kn) = (cells_m.len(), cells_n.len());
    let (ny, n1, n2) = (back.generators.len(), ideal_m.len(), ideal_n.len());
    let mut a = RMatrix::zeros(ring, km + kn, ny + n1 + n2);
    let mut put = |row0: usize, col: usize, v: Vec<BigInt>, negate: bool| {
        for (r, x) in v.into_iter().enumerate() {
            a.set(row0 + r, col, if negate { -x } else { x });
        }
    };
    for (k, g) in back.generators.iter().enumerate() {
        put(0, k, cells_m.coords_of(g.compose(f)?.matrix())?, false);
        put(km, k, cells_n.coords_of(f.compose(g)?.matrix())?, false);
    }
    for (k, phi) in ideal_m.iter().enumerate() {
        put(0, ny + k, cells_m.coords_of(phi.matrix())?, true);
    }
    for (k, phi) in ideal_n.iter().enumerate() {
        put(km, ny + n1 + k, cells_n.coords_of(phi.matrix())?, true);
    }
    let rhs: Vec<BigInt> = cells_m
        .coords_of(m.identity().matrix())?
        .into_iter()
        .chain(cells_n.coords_of(n.identity().matrix())?)
        .collect();
    let moduli: Vec<BigInt> = cells_m.orders().into_iter().chain(cells_n.orders()).collect();
    let inverse = match solve_integral(&a, &[rhs], &moduli)? {
        None => None,
        Some((mut p, _)) => {
            let sol = p.pop().expect("one rhs");
            Some(GModuleHom::new(n.clone(), m.clone(), back.combine(&sol[..ny]))?)
        }
    };
    Ok(StableIsoCertificate { ideal, inverse })
}

/// Checks that `M ⊗ L` has finite projective dimension for Gorenstein
/// projective `M` and `L` of finite projective dimension.
pub fn check_fpd_tensor(m: &GModule, l: &GModule) -> Result<bool> {
    if !is_gorenstein_projective(m) {
        return Err(Error::Precondition(
            "first argument must be Gorenstein projective".into(),
        ));
    }
    if !finite_projective_dimension(l)?.is_finite() {
        return Err(Error::Precondition(
            "second argument must have finite projective dimension".into(),
        ));
    }
    let t = crate::module::tensor_product(m, l)?;
    Ok(finite_projective_dimension(&t)?.is_finite())
}

/// `M → ι^!ι_* M ⊕ N → C` for `f: M → N`, an `R`-split sequence.
#[derive(Debug, Clone)]
pub struct RelativeCone {
    pub inclusion: GModuleHom,
    pub projection: GModuleHom,
}

impl RelativeCone {
    pub fn cone(&self) -> &GModule {
        self.projection.target()
    }
}

/// The cokernel of `(η, f): M → ι^!ι_* M ⊕ N`.
pub fn relative_cone(f: &GModuleHom) -> Result<RelativeCone> {
    let m = f.source();
    let eta = unit(m)?;
    let sum = direct_sum(eta.map.target(), f.target())?;
    let [i1, i2] = &sum.inclusions;
    let inclusion = i1.compose(&eta.map)?.add(&i2.compose(f)?)?;
    let coker = cokernel(&inclusion)?;
    Ok(RelativeCone {
        inclusion,
        projection: coker.projection,
    })
}

/// Invariant factors of the restriction of `A ⊕ B`, from their restrictions.
pub fn restriction_sum(a: &GModule, b: &GModule) -> Result<Vec<BigInt>> {
    let diag: Vec<BigInt> = a.moduli().iter().chain(b.moduli()).cloned().collect();
    factors_of_relations(a.ring(), &RMatrix::diagonal(CoefficientRing::Z, &diag))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::group::FiniteGroup;
    use crate::homological::{stable_hom, Pdim};
    use crate::module::{induction, restriction, tensor_product};

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn presented(coeffs: &[i64]) -> GModule {
        let g = c2();
        let r = AlgebraElement::from_i64(Z, g.clone(), coeffs).unwrap();
        GModule::from_rg_presentation(Z, g, 1, 1, &[r]).unwrap()
    }

    fn example_m() -> GModule {
        presented(&[-3, 1])
    }

    fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
        v.sort();
        v
    }

    #[test]
    fn approximation_of_m_is_free() {
        let tri = gproj_approximation(&example_m()).unwrap();
        tri.verify().unwrap();
        assert_eq!(tri.gproj_part.factors(), big(&[0, 0]));
        assert!(is_projective(&tri.gproj_part).unwrap());
        assert!(is_projective(&tri.kernel).unwrap());
        assert_eq!(tri.kernel.rank(), 2);
    }

    #[test]
    fn approximation_of_trivial_uses_pushout() {
        let t = GModule::trivial(Z, c2());
        let tri = gproj_approximation(&t).unwrap();
        tri.verify().unwrap();
        assert_eq!(tri.gproj_part.factors(), big(&[0, 0, 0]));
        assert!(is_projective(&tri.kernel).unwrap());
        assert_eq!(tri.kernel.rank(), 2);
        let st = strip_free_summands(&tri.gproj_part).unwrap();
        assert_eq!(st.free_rank, 1);
        assert_eq!(st.module.factors(), big(&[0]));
        assert_eq!(st.module.action(1), t.action(1));
    }

    #[test]
    fn approximation_of_free_is_identity() {
        let f = GModule::free(Z, c2(), 1);
        let tri = gproj_approximation(&f).unwrap();
        tri.verify().unwrap();
        assert!(tri.kernel.is_zero());
        assert!(tri.map.same_map(&f.identity()));
    }

    #[test]
    fn r_split_examples() {
        let m = example_m();
        let tri = r_split_approximation(&m).unwrap();
        tri.verify().unwrap();
        let ind = induction(Z, c2(), &big(&[8])).unwrap();
        assert_eq!(
            sorted(tri.source.factors()),
            sorted(restriction_sum(&GModule::free(Z, c2(), 1), &ind).unwrap())
        );
        assert!(finite_projective_dimension(&tri.kernel).unwrap().is_finite());

        let t = GModule::trivial(Z, c2());
        r_split_approximation(&t).unwrap().verify().unwrap();

        let z = GModule::zero(Z, c2());
        let tri = r_split_approximation(&z).unwrap();
        tri.verify().unwrap();
        assert!(tri.source.is_zero() && tri.kernel.is_zero());
    }

    #[test]
    fn psi_examples() {
        assert!(psi(&example_m()).unwrap().is_zero());
        let t = GModule::trivial(Z, c2());
        let p = psi(&t).unwrap();
        assert_eq!(p.factors(), big(&[0]));
        assert_eq!(p.action(1), t.action(1));
        assert!(psi(&GModule::free(Z, c2(), 2)).unwrap().is_zero());
    }

    #[test]
    fn prime_power_regime() {
        let z4 = CoefficientRing::prime_power(2, 2).unwrap();
        let t = GModule::trivial(z4, c2());
        assert!(gproj_approximation(&t).unwrap().map.same_map(&t.identity()));
        let id = RMatrix::identity(z4, 1);
        let f2 = GModule::new(z4, c2(), &big(&[2]), vec![id.clone(), id]).unwrap();
        assert!(is_gorenstein_projective(&f2));
        gproj_approximation(&f2).unwrap().verify().unwrap();
        assert!(matches!(r_split_approximation(&f2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn stable_iso_examples() {
        let t = GModule::trivial(Z, c2());
        assert!(certify_stable_iso(&t.identity(), StableIdeal::ModuloProjectives)
            .unwrap()
            .is_iso());
        let tri = gproj_approximation(&t).unwrap();
        let cert = certify_stable_iso(&tri.map, StableIdeal::ModuloProjectives).unwrap();
        assert!(cert.is_iso());
        let g = cert.inverse.unwrap();
        assert_eq!(g.source(), &t);

        // Z -> M: stable Hom(Z, Z) is Z/2 but Hom(M, Z) vanishes
        let m = example_m();
        assert_eq!(
            stable_hom(&t, &t, StableIdeal::ModuloProjectives).unwrap().factors,
            big(&[2])
        );
        let zero = GModuleHom::zero(&t, &m);
        assert!(!certify_stable_iso(&zero, StableIdeal::ModuloProjectives)
            .unwrap()
            .is_iso());
        let two = t.identity().scale(&BigInt::from(2));
        assert!(!certify_stable_iso(&two, StableIdeal::ModuloProjectives)
            .unwrap()
            .is_iso());
        let three = t.identity().scale(&BigInt::from(3));
        assert!(certify_stable_iso(&three, StableIdeal::ModuloProjectives)
            .unwrap()
            .is_iso());
    }

    #[test]
    fn fpd_tensor_examples() {
        let m = example_m();
        let t = GModule::trivial(Z, c2());
        assert!(check_fpd_tensor(&t, &m).unwrap());
        let s = GModule::sign(Z, c2()).unwrap();
        assert!(check_fpd_tensor(&s, &m).unwrap());
        let sm = tensor_product(&s, &m).unwrap();
        assert_eq!(sm.factors(), big(&[8]));
        assert_eq!(sm.action(1).get(0, 0), &BigInt::from(5));
        assert_eq!(finite_projective_dimension(&sm).unwrap(), Pdim::Finite(1));
        assert!(check_fpd_tensor(&GModule::free(Z, c2(), 1), &m).unwrap());
        assert!(check_fpd_tensor(&m, &m).is_err());
    }

    #[test]
    fn relative_cone_is_r_split() {
        let m = example_m();
        let t = GModule::trivial(Z, c2());
        let n = crate::module::direct_sum(&m, &t).unwrap();
        let f = n.inclusions[0].clone();
        let cone = relative_cone(&f).unwrap();
        assert!(crate::module::is_r_split_exact(&cone.inclusion, &cone.projection).unwrap());
        assert_eq!(
            sorted(restriction_sum(&m, cone.cone()).unwrap()),
            sorted(restriction(cone.inclusion.target()))
        );
    }

    #[test]
    fn coresolution_step_is_r_split() {
        let s = GModule::sign(Z, c2()).unwrap();
        let iota = free_coresolution_step(&s).unwrap();
        assert!(iota.is_injective().unwrap());
        let c = cokernel(&iota).unwrap();
        assert!(is_gorenstein_projective(&c.module));
        assert!(crate::module::is_r_split_exact(&iota, &c.projection).unwrap());
    }
}
