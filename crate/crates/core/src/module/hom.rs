//! `Hom_R(M, N)` with the conjugation action, and its invariants `Hom_RG(M, N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{normalize, GModule, GModuleHom};
use crate::error::{Error, Result};
use crate::linsolve::{solve_integral, LinearSystem};
use crate::matrix::RMatrix;
use crate::ring::{gcd0, reduce_mod, CoefficientRing};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cell {
    i: usize,
    j: usize,
    gamma: BigInt,
    order: BigInt,
}

/// Parametrization of `R`-linear maps `⊕ R/d_j → ⊕ R/e_i`.
///
/// Entry `(i, j)` of such a map is `x · γ` with `γ = e_i / gcd(d_i, e_j)`
/// and `x` defined modulo `gcd(d_j, e_i)`. Maps from a torsion summand to
/// a free summand over `Z` vanish, so that cell is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCells {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl HomCells {
    pub fn new(source_moduli: &[BigInt], target_moduli: &[BigInt]) -> Self {
        let mut cells = Vec::new();
        for (i, e) in target_moduli.iter().enumerate() {
            for (j, d) in source_moduli.iter().enumerate() {
                if e.is_zero() && !d.is_zero() {
                    continue;
                }
                let g = gcd0(d, e);
                if g.is_one() {
                    continue;
                }
                let gamma = if e.is_zero() { BigInt::one() } else { e / &g };
                cells.push(Cell { i, j, gamma, order: g });
            }
        }
        HomCells {
            rows: target_moduli.len(),
            cols: source_moduli.len(),
            cells,
        }
    }

    pub fn between(source: &GModule, target: &GModule) -> Self {
        Self::new(source.moduli(), target.moduli())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Orders of the cyclic pieces (zero = infinite).
    pub fn orders(&self) -> Vec<BigInt> {
        self.cells.iter().map(|c| c.order.clone()).collect()
    }

    pub fn matrix_of(&self, ring: CoefficientRing, x: &[BigInt]) -> RMatrix {
        let mut m = RMatrix::zeros(ring, self.rows, self.cols);
        for (c, v) in self.cells.iter().zip(x) {
            m.set(c.i, c.j, v * &c.gamma);
        }
        m
    }

    /// Cell coordinates of a congruence-respecting matrix.
    pub fn coords_of(&self, f: &RMatrix) -> Result<Vec<BigInt>> {
        if f.shape() != (self.rows, self.cols) {
            return Err(Error::DimensionMismatch(format!("map of shape {:?}", f.shape())));
        }
        let mut out = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let (q, r) = f.get(c.i, c.j).div_rem(&c.gamma);
            if !r.is_zero() {
                return Err(Error::InvalidHom(format!(
                    "entry ({}, {}) violates the summand congruences",
                    c.i, c.j
                )));
            }
            out.push(reduce_mod(&q, &c.order));
        }
        Ok(out)
    }

    /// Coefficients of the unknown cells in the entries of `left · X · right`,
    /// one row per entry `(a, b)` in row-major order.
    pub(crate) fn sandwich(&self, left: &RMatrix, right: &RMatrix) -> Vec<Vec<BigInt>> {
        let (q, l) = (left.rows(), right.cols());
        let mut rows = vec![vec![BigInt::zero(); self.cells.len()]; q * l];
        for (ci, c) in self.cells.iter().enumerate() {
            for a in 0..q {
                let la = left.get(a, c.i);
                if la.is_zero() {
                    continue;
                }
                let lg = la * &c.gamma;
                for b in 0..l {
                    let rb = right.get(c.j, b);
                    if !rb.is_zero() {
                        rows[a * l + b][ci] += &lg * rb;
                    }
                }
            }
        }
        rows
    }

    /// Adds `Σ_t left_t · X · right_t ≡ rhs` (rows modulo `moduli`) with `X`
    /// occupying unknowns `offset..offset + len`.
    pub(crate) fn push_equation(
        &self,
        sys: &mut LinearSystem,
        unknowns: usize,
        offset: usize,
        terms: &[(&RMatrix, &RMatrix, bool)],
        rhs: &RMatrix,
        moduli: &[BigInt],
    ) {
        let mut acc: Option<Vec<Vec<BigInt>>> = None;
        for (left, right, negate) in terms {
            let rows = self.sandwich(left, right);
            match &mut acc {
                None => {
                    acc = Some(if *negate {
                        rows.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
                    } else {
                        rows
                    })
                }
                Some(a) => {
                    for (dst, src) in a.iter_mut().zip(rows) {
                        for (d, s) in dst.iter_mut().zip(src) {
                            if *negate {
                                *d -= s;
                            } else {
                                *d += s;
                            }
                        }
                    }
                }
            }
        }
        let acc = acc.expect("at least one term");
        let l = rhs.cols();
        for (idx, row) in acc.into_iter().enumerate() {
            let mut full = vec![BigInt::zero(); unknowns];
            full[offset..offset + row.len()].clone_from_slice(&row);
            let (a, b) = (idx / l, idx % l);
            sys.push(full, rhs.get(a, b).clone(), moduli[a].clone());
        }
    }

    /// Adds the equivariance equations `A_t(g) X = X A_s(g)` for the group generators.
    pub(crate) fn push_equivariance(
        &self,
        sys: &mut LinearSystem,
        unknowns: usize,
        offset: usize,
        source: &GModule,
        target: &GModule,
    ) {
        let ring = source.ring();
        let it = RMatrix::identity(ring, target.rank());
        let is = RMatrix::identity(ring, source.rank());
        let zero = RMatrix::zeros(ring, target.rank(), source.rank());
        for &g in source.group().generators() {
            self.push_equation(
                sys,
                unknowns,
                offset,
                &[(target.action(g), &is, false), (&it, source.action(g), true)],
                &zero,
                target.moduli(),
            );
        }
    }
}

/// The internal hom `Hom_R(M, N)` with `(g·f) = g ∘ f ∘ g⁻¹`, plus the
/// coordinate change between maps and module elements.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: GModule,
    pub target: GModule,
    pub cells: HomCells,
    pub module: GModule,
    to_normal: RMatrix,
    from_normal: RMatrix,
}

impl HomSpace {
    pub fn new(m: &GModule, n: &GModule) -> Result<Self> {
        m.check_same_base(n)?;
        let ring = m.ring();
        let group = m.group().clone();
        let cells = HomCells::between(m, n);
        let k = cells.len();
        let action: Vec<RMatrix> = (0..group.order())
            .map(|g| {
                let ag = n.action(g);
                let ainv = m.action(group.inv(g));
                let mut a = RMatrix::zeros(ring, k, k);
                let mut x = vec![BigInt::zero(); k];
                for c in 0..k {
                    x[c] = BigInt::one();
                    let f = cells.matrix_of(ring, &x);
                    x[c] = BigInt::zero();
                    let conj = (&(ag * &f) * ainv).reduce_rows(n.moduli());
                    let coords = cells.coords_of(&conj)?;
                    for (r, v) in coords.into_iter().enumerate() {
                        a.set(r, c, v);
                    }
                }
                Ok(a)
            })
            .collect::<Result<_>>()?;
        let orders = cells.orders();
        let rel: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut c = vec![BigInt::zero(); k];
                c[i] = o.clone();
                c
            })
            .collect();
        let nz = normalize(ring, group, k, &rel, &action)?;
        Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            cells,
            module: nz.module,
            to_normal: nz.to_normal,
            from_normal: nz.from_normal,
        })
    }

    /// Coordinates of an `R`-linear map in the internal hom module.
    pub fn coordinates(&self, f: &RMatrix) -> Result<Vec<BigInt>> {
        let raw = self.cells.coords_of(f)?;
        Ok(self.module.reduce_vector(&self.to_normal.apply(&raw)))
    }

    /// The `R`-linear map with the given module coordinates.
    pub fn map_at(&self, coords: &[BigInt]) -> RMatrix {
        let raw = self.from_normal.apply(coords);
        self.cells
            .matrix_of(self.source.ring(), &raw)
            .reduce_rows(self.target.moduli())
    }
}

/// `Hom_R(M, N)` with the diagonal (conjugation) action.
pub fn internal_hom(m: &GModule, n: &GModule) -> Result<GModule> {
    Ok(HomSpace::new(m, n)?.module)
}

/// `M^∨ = Hom_R(M, R)`.
pub fn dual(m: &GModule) -> Result<GModule> {
    internal_hom(m, &GModule::trivial(m.ring(), m.group().clone()))
}

/// `Hom_RG(M, N)` as an `R`-module with explicit generating maps.
#[derive(Debug, Clone)]
pub struct HomGroup {
    /// ring-facing invariant factors
    pub factors: Vec<BigInt>,
    /// one equivariant map per invariant factor
    pub generators: Vec<GModuleHom>,
    pub space: HomSpace,
    /// columns: coordinates of the generators in `space.module`
    generator_coords: RMatrix,
    orders: Vec<BigInt>,
}

impl HomGroup {
    /// Additive orders of the generators.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Expresses an equivariant map in terms of the generators.
    pub fn coordinates_of(&self, f: &RMatrix) -> Result<Option<Vec<BigInt>>> {
        let target = self.space.coordinates(f)?;
        if self.generators.is_empty() {
            return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
        }
        let sol = solve_integral(&self.generator_coords, &[target], self.space.module.moduli())?;
        Ok(sol.map(|(mut p, _)| {
            let y = p.pop().expect("one rhs");
            y.iter().zip(&self.orders).map(|(v, o)| reduce_mod(v, o)).collect()
        }))
    }

    /// `Σ y_k generator_k`.
    pub fn combine(&self, y: &[BigInt]) -> RMatrix {
        let ring = self.space.source.ring();
        let mut m = RMatrix::zeros(ring, self.space.target.rank(), self.space.source.rank());
        for (g, c) in self.generators.iter().zip(y) {
            if !c.is_zero() {
                m = &m + &g.matrix().scale(c);
            }
        }
        m.reduce_rows(self.space.target.moduli())
    }
}

/// `Hom_RG(M, N)`: the `G`-invariants of the internal hom.
pub fn hom_group(m: &GModule, n: &GModule) -> Result<HomGroup> {
    let space = HomSpace::new(m, n)?;
    let h = &space.module;
    let ring = h.ring();
    let k = h.rank();
    let mut sys = LinearSystem::new(ring, k);
    for &g in h.group().generators() {
        let a = h.action(g) - &RMatrix::identity(ring, k);
        for r in 0..k {
            sys.push(a.row(r).to_vec(), BigInt::zero(), h.moduli()[r].clone());
        }
    }
    let (_, mut gens) = sys.solve()?.expect("homogeneous system is solvable");
    if sys.equations() == 0 {
        gens = (0..k)
            .map(|i| {
                let mut v = vec![BigInt::zero(); k];
                v[i] = BigInt::one();
                v
            })
            .collect();
    }
    let gens: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| h.reduce_vector(v))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let t = gens.len();
    let kmat = RMatrix::from_columns(CoefficientRing::Z, k, &gens);
    let rel = if t == 0 {
        Vec::new()
    } else {
        let zeros = vec![vec![BigInt::zero(); k]];
        solve_integral(&kmat, &zeros, h.moduli())?.expect("homogeneous").1
    };
    let trivial = vec![RMatrix::identity(ring, t); h.group().order()];
    let nz = normalize(ring, h.group().clone(), t, &rel, &trivial)?;
    let gen_coords: RMatrix = (&kmat.with_ring(ring) * &nz.from_normal).reduce_rows(h.moduli());
    let generators = (0..gen_coords.cols())
        .map(|c| GModuleHom::new(m.clone(), n.clone(), space.map_at(&gen_coords.column(c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomGroup {
        factors: nz.module.factors(),
        generators,
        orders: nz.module.moduli().to_vec(),
        generator_coords: gen_coords.with_ring(CoefficientRing::Z),
        space,
    })
}

/// Isomorphism invariants: equal fingerprints are necessary, not sufficient,
/// for two modules to be isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Fingerprint {
    pub factors: Vec<BigInt>,
    pub hom_from_trivial: Vec<BigInt>,
    pub hom_to_trivial: Vec<BigInt>,
    pub hom_to_free: Vec<BigInt>,
}

pub fn fingerprint(m: &GModule) -> Result<Fingerprint> {
    let t = GModule::trivial(m.ring(), m.group().clone());
    let rg = GModule::free(m.ring(), m.group().clone(), 1);
    Ok(Fingerprint {
        factors: m.factors(),
        hom_from_trivial: hom_group(&t, m)?.factors,
        hom_to_trivial: hom_group(m, &t)?.factors,
        hom_to_free: hom_group(m, &rg)?.factors,
    })
}
