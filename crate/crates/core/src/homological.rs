//! Projectivity tests, syzygies, Ext, stable Hom and minimal resolutions,
//! in both the abelian and the `R`-split exact structures.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linsolve::{homology_at, solve_integral, ModMap};
use crate::matrix::RMatrix;
use crate::module::maps::{quotient, section_of};
use crate::module::{cokernel, counit, dual, hom_group, kernel, unit, GModule, GModuleHom};
use crate::ring::CoefficientRing;

/// A free module mapping onto `m`.
#[derive(Debug, Clone)]
pub struct FreeCover {
    pub free: GModule,
    pub map: GModuleHom,
    /// the image of each free generator `ε_l`
    pub generators: Vec<Vec<BigInt>>,
}

/// `0 → sub → mid → quotient → 0` with an optional `R`-linear section of the epi.
#[derive(Debug, Clone)]
pub struct ShortExact {
    pub inclusion: GModuleHom,
    pub projection: GModuleHom,
    pub r_section: Option<RMatrix>,
}

impl ShortExact {
    pub fn sub(&self) -> &GModule {
        self.inclusion.source()
    }

    pub fn mid(&self) -> &GModule {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &GModule {
        self.projection.target()
    }
}

/// The free cover `RG^t → m` sending `ε_l` to `vectors[l]`.
pub fn cover_from_vectors(m: &GModule, vectors: &[Vec<BigInt>]) -> Result<FreeCover> {
    let ring = m.ring();
    let group = m.group().clone();
    let n = group.order();
    let t = vectors.len();
    let free = GModule::free(ring, group, t);
    let mut mat = RMatrix::zeros(ring, m.rank(), t * n);
    for (l, v) in vectors.iter().enumerate() {
        for h in 0..n {
            let img = m.action(h).apply(v);
            for (i, x) in img.into_iter().enumerate() {
                mat.set(i, l * n + h, x);
            }
        }
    }
    let map = GModuleHom::new(free.clone(), m.clone(), mat)?;
    Ok(FreeCover {
        free,
        map,
        generators: vectors.to_vec(),
    })
}

/// Free cover on a subset of the Smith basis of `m`.
///
/// Basis vectors are visited in factor order and dropped when they already
/// lie in the `RG`-span of the remaining ones.
pub fn smith_cover(m: &GModule) -> Result<FreeCover> {
    let k = m.rank();
    let n = m.group().order();
    let unit_vec = |i: usize| {
        let mut v = vec![BigInt::zero(); k];
        v[i] = BigInt::from(1);
        v
    };
    let mut keep: Vec<usize> = (0..k).collect();
    for i in 0..k {
        let others: Vec<usize> = keep.iter().copied().filter(|&j| j != i).collect();
        if others.len() == keep.len() {
            continue;
        }
        let cols: Vec<Vec<BigInt>> = others
            .iter()
            .flat_map(|&j| (0..n).map(move |h| m.action(h).column(j)))
            .collect();
        let span = RMatrix::from_columns(CoefficientRing::Z, k, &cols);
        if solve_integral(&span, &[unit_vec(i)], m.moduli())?.is_some() {
            keep = others;
        }
    }
    let vectors: Vec<Vec<BigInt>> = keep.into_iter().map(unit_vec).collect();
    cover_from_vectors(m, &vectors)
}

/// `0 → Ω m → F → m → 0` for the Smith cover `F`.
pub fn syzygy(m: &GModule) -> Result<ShortExact> {
    let cover = smith_cover(m)?;
    let ker = kernel(&cover.map)?;
    Ok(ShortExact {
        inclusion: ker.inclusion,
        projection: cover.map,
        r_section: None,
    })
}

/// Kernel of the counit `ι*ι_* m → m`; the sequence is `R`-split.
pub fn relative_syzygy(m: &GModule) -> Result<ShortExact> {
    let eps = counit(m)?;
    let ker = kernel(&eps.map)?;
    Ok(ShortExact {
        inclusion: ker.inclusion,
        projection: eps.map,
        r_section: Some(eps.witness),
    })
}

/// Cokernel of the unit `m → ι^!ι_* m`; the sequence is `R`-split.
pub fn relative_cosyzygy(m: &GModule) -> Result<ShortExact> {
    let eta = unit(m)?;
    let coker = cokernel(&eta.map)?;
    let r_section = section_of(&coker.projection, false)?;
    if r_section.is_none() {
        return Err(Error::Internal("relative cosyzygy sequence is not R-split".into()));
    }
    Ok(ShortExact {
        inclusion: eta.map,
        projection: coker.projection,
        r_section,
    })
}

/// An equivariant section of the Smith cover, if `m` is projective.
pub fn projective_section(m: &GModule) -> Result<Option<GModuleHom>> {
    if m.is_zero() {
        return Ok(Some(GModuleHom::zero(m, m)));
    }
    let cover = smith_cover(m)?;
    match section_of(&cover.map, true)? {
        None => Ok(None),
        Some(s) => Ok(Some(GModuleHom::new(m.clone(), cover.free, s)?)),
    }
}

pub fn is_projective(m: &GModule) -> Result<bool> {
    if !m.is_r_free() {
        return Ok(false);
    }
    Ok(projective_section(m)?.is_some())
}

/// Outcome of the weak-projectivity test.
#[derive(Debug, Clone)]
pub struct WeakProjectivity {
    pub weakly_projective: bool,
    /// an equivariant section of the counit, when one exists
    pub section: Option<GModuleHom>,
}

/// `m` is weakly projective iff the counit `ι*ι_* m → m` has an equivariant section.
pub fn weak_projectivity(m: &GModule) -> Result<WeakProjectivity> {
    let eps = counit(m)?;
    let section = section_of(&eps.map, true)?
        .map(|s| GModuleHom::new(m.clone(), eps.map.source().clone(), s))
        .transpose()?;
    Ok(WeakProjectivity {
        weakly_projective: section.is_some(),
        section,
    })
}

pub fn is_weakly_projective(m: &GModule) -> Result<bool> {
    Ok(weak_projectivity(m)?.weakly_projective)
}

/// Over `Z`, Gorenstein projective iff the restriction to `R` is free.
/// Over `Z/p^n` the group algebra is self-injective and every module is
/// Gorenstein projective.
pub fn is_gorenstein_projective(m: &GModule) -> bool {
    !m.ring().is_integers() || m.is_r_free()
}

/// A free resolution `F_len → … → F_0 → m`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub covers: Vec<FreeCover>,
    /// `syzygies[j]` is the kernel of `covers[j]`, included into `F_j`
    pub syzygies: Vec<GModuleHom>,
}

impl Resolution {
    /// The differential `F_j → F_{j-1}`, `j ≥ 1`.
    pub fn differential(&self, j: usize) -> RMatrix {
        self.syzygies[j - 1].matrix() * self.covers[j].map.matrix()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.covers.iter().map(|c| c.generators.len()).collect()
    }
}

/// Smith-cover resolution with `len + 1` free terms.
pub fn resolve(m: &GModule, len: usize) -> Result<Resolution> {
    let mut covers = Vec::new();
    let mut syzygies = Vec::new();
    let mut current = m.clone();
    for j in 0..=len {
        let cover = smith_cover(&current)?;
        if j < len {
            let ker = kernel(&cover.map)?;
            current = ker.module.clone();
            syzygies.push(ker.inclusion);
        }
        covers.push(cover);
    }
    Ok(Resolution { covers, syzygies })
}

/// `Hom_RG(d, N)` for `d: RG^s → RG^t`, on the evaluation coordinates `N^t → N^s`.
fn dual_differential(d: &RMatrix, t: usize, s: usize, n: &GModule) -> RMatrix {
    let ring = n.ring();
    let order = n.group().order();
    let k = n.rank();
    let mut out = RMatrix::zeros(ring, s * k, t * k);
    for l in 0..s {
        for lp in 0..t {
            let mut block = RMatrix::zeros(ring, k, k);
            for h in 0..order {
                let c = d.get(lp * order + h, l * order);
                if !c.is_zero() {
                    block = &block + &n.action(h).scale(c);
                }
            }
            out.set_block(l * k, lp * k, &block);
        }
    }
    out
}

/// `Ext^i_RG(m, n)` for `i ≥ 1`, as the cohomology of `Hom_RG(F_•, n)`.
pub fn ext_group(m: &GModule, n: &GModule, i: usize) -> Result<Vec<BigInt>> {
    m.check_same_base(n)?;
    if i == 0 {
        return Err(Error::Precondition("Ext degree must be at least 1".into()));
    }
    let res = resolve(m, i + 1)?;
    let ranks = res.ranks();
    let nf = n.factors();
    let moduli = |t: usize| -> Vec<BigInt> { (0..t).flat_map(|_| nf.iter().cloned()).collect() };
    let d_in = dual_differential(&res.differential(i), ranks[i - 1], ranks[i], n);
    let d_out = dual_differential(&res.differential(i + 1), ranks[i], ranks[i + 1], n);
    homology_at(
        &ModMap::new(d_in, moduli(ranks[i]))?,
        &ModMap::new(d_out, moduli(ranks[i + 1]))?,
    )
}

/// Projective dimension, exploiting the Gorenstein bound `pdim < ∞ ⇒ pdim ≤ d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pdim {
    Finite(usize),
    Infinite,
}

impl Pdim {
    pub fn is_finite(&self) -> bool {
        matches!(self, Pdim::Finite(_))
    }
}

impl fmt::Display for Pdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pdim::Finite(d) => write!(f, "{d}"),
            Pdim::Infinite => write!(f, "infinite"),
        }
    }
}

/// Over `Z` (`d = 1`) a module has finite projective dimension iff its first
/// syzygy is projective; over `Z/p^n` (`d = 0`) iff it is projective.
pub fn finite_projective_dimension(m: &GModule) -> Result<Pdim> {
    if is_projective(m)? {
        return Ok(Pdim::Finite(0));
    }
    if m.ring().is_integers() {
        let omega = syzygy(m)?;
        if is_projective(omega.sub())? {
            return Ok(Pdim::Finite(1));
        }
    }
    Ok(Pdim::Infinite)
}

/// Which maps are quotiented out of `Hom_RG`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StableIdeal {
    ModuloProjectives,
    ModuloWeaklyProjectives,
}

/// `Hom_RG(m, n)` modulo maps factoring through (weakly) projectives.
#[derive(Debug, Clone)]
pub struct StableHomReport {
    pub ideal: StableIdeal,
    pub factors: Vec<BigInt>,
    pub generators: Vec<GModuleHom>,
    pub factoring_submodule: Vec<GModuleHom>,
}

/// Generators of the maps `m → n` that factor through a projective
/// (via the cover of `n`) or a weakly projective (via the counit of `n`).
pub fn factoring_maps(m: &GModule, n: &GModule, ideal: StableIdeal) -> Result<Vec<GModuleHom>> {
    let epi = match ideal {
        StableIdeal::ModuloProjectives => smith_cover(n)?.map,
        StableIdeal::ModuloWeaklyProjectives => counit(n)?.map,
    };
    let through = hom_group(m, epi.source())?;
    through.generators.iter().map(|g| epi.compose(g)).collect()
}

pub fn stable_hom(m: &GModule, n: &GModule, ideal: StableIdeal) -> Result<StableHomReport> {
    m.check_same_base(n)?;
    let ring = m.ring();
    let hom = hom_group(m, n)?;
    let factoring = factoring_maps(m, n, ideal)?;
    let r = hom.generators.len();
    let mut rel: Vec<Vec<BigInt>> = Vec::new();
    for (i, o) in hom.orders().iter().enumerate() {
        if !o.is_zero() {
            let mut c = vec![BigInt::zero(); r];
            c[i] = o.clone();
            rel.push(c);
        }
    }
    for f in &factoring {
        let y = hom
            .coordinates_of(f.matrix())?
            .ok_or_else(|| Error::Internal("factoring map is not in Hom_RG".into()))?;
        rel.push(y);
    }
    let trivial = vec![RMatrix::identity(ring, r); m.group().order()];
    let nz = crate::module::normalize(ring, m.group().clone(), r, &rel, &trivial)?;
    let generators = (0..nz.from_normal.cols())
        .map(|c| GModuleHom::new(m.clone(), n.clone(), hom.combine(&nz.from_normal.column(c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(StableHomReport {
        ideal,
        factors: nz.module.factors(),
        generators,
        factoring_submodule: factoring,
    })
}

/// A module with free summands split off.
#[derive(Debug, Clone)]
pub struct Stripped {
    pub module: GModule,
    /// number of copies of `RG` removed
    pub free_rank: usize,
}

fn candidate_combinations(r: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    for i in 0..r {
        for j in i + 1..r {
            for s in [1, -1] {
                let mut v = vec![0; r];
                v[i] = 1;
                v[j] = s;
                out.push(v);
            }
        }
    }
    if r <= 6 {
        let total = 3usize.pow(r as u32);
        for code in 0..total {
            let mut v = vec![0i64; r];
            let mut c = code;
            for x in v.iter_mut() {
                *x = (c % 3) as i64 - 1;
                c /= 3;
            }
            let nonzero = v.iter().filter(|&&x| x != 0).count();
            // first nonzero entry positive, more than two terms
            if nonzero > 2 && v.iter().find(|&&x| x != 0) == Some(&1) {
                out.push(v);
            }
        }
    }
    out
}

/// Splits off copies of `RG`.
///
/// A projective module strips to zero. Otherwise a free summand is found as
/// a surjection `m → RG`, searched among small integer combinations of the
/// generators of `Hom_RG(m, RG)`; over local `RG` single generators already
/// decide the question, over other rings the search is a heuristic and may
/// leave free summands in place.
pub fn strip_free_summands(m: &GModule) -> Result<Stripped> {
    let order = m.group().order();
    if is_projective(m)? {
        return Ok(Stripped {
            module: GModule::zero(m.ring(), m.group().clone()),
            free_rank: m.rank() / order,
        });
    }
    let mut current = m.clone();
    let mut free_rank = 0;
    let rg = GModule::free(m.ring(), m.group().clone(), 1);
    'outer: loop {
        if current.rank() < order {
            break;
        }
        let hom = hom_group(&current, &rg)?;
        let r = hom.generators.len();
        for combo in candidate_combinations(r) {
            let y: Vec<BigInt> = combo.iter().map(|&c| BigInt::from(c)).collect();
            let f = GModuleHom::new(current.clone(), rg.clone(), hom.combine(&y))?;
            if f.is_surjective()? {
                current = kernel(&f)?.module;
                free_rank += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(Stripped {
        module: current,
        free_rank,
    })
}

/// Cosyzygy over self-injective coefficients, as `(Ω(m^∨))^∨`, before stripping.
pub fn cosyzygy_selfinjective_unstripped(m: &GModule) -> Result<GModule> {
    if m.ring().is_integers() {
        return Err(Error::Unsupported(
            "cosyzygies via duality need self-injective coefficients Z/p^n".into(),
        ));
    }
    let omega = syzygy(&dual(m)?)?;
    dual(omega.sub())
}

/// `Ω⁻¹ m` over `Z/p^n`, normalized by stripping free summands.
pub fn cosyzygy_selfinjective(m: &GModule) -> Result<GModule> {
    Ok(strip_free_summands(&cosyzygy_selfinjective_unstripped(m)?)?.module)
}

/// One step of a minimal resolution.
#[derive(Debug, Clone)]
pub struct CoverStep {
    pub rank: usize,
    pub map: GModuleHom,
    pub syzygy: GModule,
}

#[derive(Debug, Clone)]
pub struct ResolutionLog {
    pub covers: Vec<CoverStep>,
    pub betti: Vec<usize>,
    pub minimal: bool,
}

/// Minimal generators of `m`: lifts of a basis of `m / Jm`, where `J` is
/// the kernel of `RG → F_p`.
pub fn minimal_generators(m: &GModule) -> Result<Vec<Vec<BigInt>>> {
    let ring = m.ring();
    let p = ring
        .prime()
        .ok_or_else(|| Error::Unsupported("minimal covers need a local group algebra over Z/p^n".into()))?;
    let k = m.rank();
    let mut rad: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..k {
        let mut v = vec![BigInt::zero(); k];
        v[i] = BigInt::from(p);
        rad.push(v);
    }
    for &g in m.group().generators() {
        let a = m.action(g) - &RMatrix::identity(ring, k);
        for i in 0..k {
            rad.push(a.column(i));
        }
    }
    let top = quotient(m, &rad)?;
    Ok((0..top.lift.cols())
        .map(|c| m.reduce_vector(&top.lift.column(c)))
        .collect())
}

fn check_local(m: &GModule) -> Result<()> {
    match m.ring().prime() {
        Some(p) if m.group().is_p_group(p) => Ok(()),
        Some(p) => Err(Error::Unsupported(format!(
            "group order {} is not a power of {p}",
            m.group().order()
        ))),
        None => Err(Error::Unsupported("minimal resolutions need coefficients Z/p^n".into())),
    }
}

/// First `steps` terms of the minimal free resolution over a local `RG`.
pub fn minimal_resolution(m: &GModule, steps: usize) -> Result<ResolutionLog> {
    check_local(m)?;
    let mut covers = Vec::with_capacity(steps);
    let mut current = m.clone();
    for _ in 0..steps {
        let gens = minimal_generators(&current)?;
        let cover = cover_from_vectors(&current, &gens)?;
        let ker = kernel(&cover.map)?;
        covers.push(CoverStep {
            rank: gens.len(),
            map: cover.map,
            syzygy: ker.module.clone(),
        });
        current = ker.module;
    }
    let betti = covers.iter().map(|c| c.rank).collect();
    Ok(ResolutionLog {
        covers,
        betti,
        minimal: true,
    })
}

/// Polynomial-growth diagnostics for a window of Betti numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    /// `1 + degree`, or 0 when the tail of the window vanishes
    pub complexity: usize,
    pub degree: Option<usize>,
    /// maximal absolute residual of the least-squares fit per degree 0..=3
    pub residuals: Vec<f64>,
    /// half-open index range used for the fit
    pub window: (usize, usize),
}

/// Largest residual accepted when matching integer Betti numbers to a polynomial.
pub const COMPLEXITY_FIT_TOLERANCE: f64 = 0.5;

/// Fits the last half of the Betti window against polynomials of degree
/// 0..=3 and reports the smallest degree that fits. A windowed heuristic,
/// not the asymptotic invariant.
pub fn complexity_estimate(betti: &[usize]) -> ComplexityReport {
    let n = betti.len();
    let start = n / 2;
    let xs: Vec<f64> = (start..n).map(|i| i as f64).collect();
    let ys: Vec<f64> = betti[start..].iter().map(|&b| b as f64).collect();
    if ys.iter().all(|&y| y == 0.0) {
        return ComplexityReport {
            complexity: 0,
            degree: None,
            residuals: vec![0.0; 4],
            window: (start, n),
        };
    }
    let mut residuals = Vec::new();
    for deg in 0..=3usize {
        if xs.len() <= deg {
            residuals.push(f64::INFINITY);
            continue;
        }
        let v = nalgebra::DMatrix::from_fn(xs.len(), deg + 1, |r, c| xs[r].powi(c as i32));
        let y = nalgebra::DVector::from_vec(ys.clone());
        let coeffs = v.clone().svd(true, true).solve(&y, 1e-12).expect("svd solve");
        let fit = &v * coeffs;
        residuals.push((fit - y).amax());
    }
    let degree = residuals.iter().position(|&r| r <= COMPLEXITY_FIT_TOLERANCE);
    ComplexityReport {
        complexity: degree.map_or(usize::MAX, |d| d + 1),
        degree,
        residuals,
        window: (start, n),
    }
}

/// Sizes of small finite modules, `None` if infinite or too large for `u64`.
pub fn module_order(m: &GModule) -> Option<u64> {
    m.moduli().iter().try_fold(1u64, |acc, d| {
        if d.is_zero() {
            None
        } else {
            acc.checked_mul(d.to_u64()?)
        }
    })
}
