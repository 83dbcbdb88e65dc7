use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{normalize, GModule, GModuleHom, Normalized};
use crate::algebra::{regular_representation, AlgebraElement};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::RMatrix;
use crate::ring::{gcd0, CoefficientRing};

fn diagonal_relations(moduli: &[BigInt]) -> Vec<Vec<BigInt>> {
    let k = moduli.len();
    moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = m.clone();
            c
        })
        .collect()
}

/// Which side the stored `R`-linear splitting sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    /// `map ∘ witness = id` (counits)
    Section,
    /// `witness ∘ map = id` (units)
    Retraction,
}

/// A map from the induction/restriction adjunction with its splitting over `R`.
#[derive(Debug, Clone)]
pub struct AdjunctionMap {
    pub map: GModuleHom,
    pub witness: RMatrix,
    pub kind: Splitting,
}

impl AdjunctionMap {
    /// Re-checks the stored splitting.
    pub fn verify(&self) -> bool {
        let f = self.map.matrix();
        let (src, tgt) = (self.map.source(), self.map.target());
        if self.witness.shape() != (src.rank(), tgt.rank()) {
            return false;
        }
        match self.kind {
            Splitting::Section => {
                (f * &self.witness).congruent(&RMatrix::identity(tgt.ring(), tgt.rank()), tgt.moduli())
            }
            Splitting::Retraction => {
                (&self.witness * f).congruent(&RMatrix::identity(src.ring(), src.rank()), src.moduli())
            }
        }
    }
}

/// `M ⊕ N` with its structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: GModule,
    pub inclusions: [GModuleHom; 2],
    pub projections: [GModuleHom; 2],
}

impl GModule {
    pub fn zero(ring: CoefficientRing, group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GModule {
            ring,
            group,
            moduli: Vec::new(),
            action: vec![RMatrix::zeros(ring, 0, 0); n],
        }
    }

    /// `R` with trivial action.
    pub fn trivial(ring: CoefficientRing, group: Arc<FiniteGroup>) -> Self {
        Self::character(ring, group.clone(), &vec![1; group.order()]).expect("trivial character")
    }

    /// Rank-one module on which `g` acts by `values[g]`.
    pub fn character(ring: CoefficientRing, group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidModule("one character value per element required".into()));
        }
        let action = values
            .iter()
            .map(|&v| RMatrix::from_rows(ring, &[vec![v]]).expect("1x1"))
            .collect();
        GModule::from_parts(ring, group, vec![ring.effective_modulus(&BigInt::zero())], action)
    }

    /// The sign module of a group of even cyclic order: the generator acts by `-1`.
    pub fn sign(ring: CoefficientRing, group: Arc<FiniteGroup>) -> Result<Self> {
        let n = group.order();
        if !n.is_multiple_of(2) {
            return Err(Error::Precondition("sign module needs a group of even order".into()));
        }
        let values: Vec<i64> = (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        Self::character(ring, group, &values)
    }

    /// `RG^rank`; coordinate `l * |G| + h` is the basis vector `h ε_l`.
    pub fn free(ring: CoefficientRing, group: Arc<FiniteGroup>, rank: usize) -> Self {
        let n = group.order();
        let k = rank * n;
        let action = (0..n)
            .map(|g| {
                let reg = regular_representation(ring, &group, g);
                let mut a = RMatrix::zeros(ring, k, k);
                for l in 0..rank {
                    a.set_block(l * n, l * n, &reg);
                }
                a
            })
            .collect();
        let moduli = vec![ring.effective_modulus(&BigInt::zero()); k];
        GModule::from_parts(ring, group, moduli, action).expect("free module is valid")
    }

    /// Cokernel of `RG^cols → RG^rows` given by a `rows x cols` matrix over `RG`
    /// (row-major `entries`), with column `j` the image of `ε_j`.
    pub fn from_rg_presentation(
        ring: CoefficientRing,
        group: Arc<FiniteGroup>,
        rows: usize,
        cols: usize,
        entries: &[AlgebraElement],
    ) -> Result<Self> {
        Ok(presentation_normalized(ring, group, rows, cols, entries)?.module)
    }
}

pub(crate) fn presentation_normalized(
    ring: CoefficientRing,
    group: Arc<FiniteGroup>,
    rows: usize,
    cols: usize,
    entries: &[AlgebraElement],
) -> Result<Normalized> {
    if entries.len() != rows * cols {
        return Err(Error::DimensionMismatch(format!(
            "{} entries for a {rows}x{cols} presentation",
            entries.len()
        )));
    }
    for e in entries {
        if e.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), e.ring().to_string()));
        }
        if **e.group() != *group {
            return Err(Error::GroupMismatch);
        }
    }
    let n = group.order();
    let k = rows * n;
    let mut rel = Vec::with_capacity(cols * n);
    for j in 0..cols {
        for h in 0..n {
            let mut col = vec![BigInt::zero(); k];
            for i in 0..rows {
                for (x, c) in entries[i * cols + j].coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        col[i * n + group.mul(h, x)] += c;
                    }
                }
            }
            rel.push(col);
        }
    }
    let free = GModule::free(ring, group.clone(), rows);
    normalize(ring, group, k, &rel, &free.action)
}

fn check_chain(ring: CoefficientRing, factors: &[BigInt]) -> Result<()> {
    let mut seen_zero = false;
    for (i, d) in factors.iter().enumerate() {
        if ring.is_unit(d) {
            return Err(Error::InvalidModule(format!("factor {d} is a unit")));
        }
        if !ring.is_integers() {
            let m = ring.modulus();
            let r = ring.reduce(d);
            if !r.is_zero() && ring.effective_modulus(&r) != r {
                return Err(Error::InvalidModule(format!("factor {d} is not a power of the prime")));
            }
            if !r.is_zero() && r >= m {
                return Err(Error::InvalidModule(format!("factor {d} exceeds the ring modulus")));
            }
        } else if d < &BigInt::zero() {
            return Err(Error::InvalidModule(format!("negative factor {d}")));
        }
        let eff = ring.effective_modulus(d);
        if d.is_zero() {
            seen_zero = true;
        } else if seen_zero && ring.is_integers() {
            return Err(Error::InvalidModule("zero factors must come last".into()));
        }
        if i > 0 {
            let prev = ring.effective_modulus(&factors[i - 1]);
            if !crate::ring::divides(&prev, &eff) {
                return Err(Error::InvalidModule(format!(
                    "{} does not divide {}",
                    factors[i - 1],
                    d
                )));
            }
        }
    }
    Ok(())
}

/// `RG ⊗_R V` on raw coordinates `h * k + i`, for summand orders `moduli`.
pub(crate) fn induced(ring: CoefficientRing, group: Arc<FiniteGroup>, moduli: &[BigInt]) -> Result<Normalized> {
    let n = group.order();
    let k = moduli.len();
    let raw: Vec<BigInt> = (0..n).flat_map(|_| moduli.iter().cloned()).collect();
    let action: Vec<RMatrix> = (0..n)
        .map(|g| {
            let mut a = RMatrix::zeros(ring, n * k, n * k);
            for h in 0..n {
                for i in 0..k {
                    a.set(group.mul(g, h) * k + i, h * k + i, BigInt::one());
                }
            }
            a
        })
        .collect();
    normalize(ring, group, n * k, &diagonal_relations(&raw), &action)
}

/// `Hom_R(RG, V)` on raw coordinates `h * k + i` holding `φ(h)`.
pub(crate) fn coinduced(ring: CoefficientRing, group: Arc<FiniteGroup>, moduli: &[BigInt]) -> Result<Normalized> {
    let n = group.order();
    let k = moduli.len();
    let raw: Vec<BigInt> = (0..n).flat_map(|_| moduli.iter().cloned()).collect();
    let action: Vec<RMatrix> = (0..n)
        .map(|g| {
            // (g·φ)(h) = φ(hg)
            let mut a = RMatrix::zeros(ring, n * k, n * k);
            for h in 0..n {
                for i in 0..k {
                    a.set(h * k + i, group.mul(h, g) * k + i, BigInt::one());
                }
            }
            a
        })
        .collect();
    normalize(ring, group, n * k, &diagonal_relations(&raw), &action)
}

/// Extension of scalars `ι*` of the `R`-module with invariant factors `factors`.
pub fn induction(ring: CoefficientRing, group: Arc<FiniteGroup>, factors: &[BigInt]) -> Result<GModule> {
    check_chain(ring, factors)?;
    let moduli: Vec<BigInt> = factors.iter().map(|d| ring.effective_modulus(d)).collect();
    Ok(induced(ring, group, &moduli)?.module)
}

/// Restriction of scalars `ι_*`: the invariant factors of the underlying `R`-module.
pub fn restriction(m: &GModule) -> Vec<BigInt> {
    m.factors()
}

/// Coextension of scalars `ι^!` together with the natural isomorphism
/// from the induced module, `h ⊗ v ↦ (k ↦ [kh = 1] v)`.
pub fn coinduction(
    ring: CoefficientRing,
    group: Arc<FiniteGroup>,
    factors: &[BigInt],
) -> Result<(GModule, GModuleHom)> {
    check_chain(ring, factors)?;
    let moduli: Vec<BigInt> = factors.iter().map(|d| ring.effective_modulus(d)).collect();
    let ind = induced(ring, group.clone(), &moduli)?;
    let coind = coinduced(ring, group.clone(), &moduli)?;
    let n = group.order();
    let k = moduli.len();
    let mut raw = RMatrix::zeros(ring, n * k, n * k);
    for h in 0..n {
        for i in 0..k {
            raw.set(group.inv(h) * k + i, h * k + i, BigInt::one());
        }
    }
    let m = &(&coind.to_normal * &raw) * &ind.from_normal;
    let iso = GModuleHom::new(ind.module, coind.module.clone(), m)?;
    Ok((coind.module, iso))
}

/// The counit `ι*ι_* M → M`, `h ⊗ v ↦ h v`, with an `R`-linear section.
pub fn counit(m: &GModule) -> Result<AdjunctionMap> {
    let (ring, group) = (m.ring, m.group.clone());
    let n = group.order();
    let k = m.rank();
    let ind = induced(ring, group, &m.moduli)?;
    let mut raw = RMatrix::zeros(ring, k, n * k);
    for h in 0..n {
        raw.set_block(0, h * k, m.action(h));
    }
    let map = GModuleHom::new(ind.module.clone(), m.clone(), &raw * &ind.from_normal)?;
    let mut sec = RMatrix::zeros(ring, n * k, k);
    sec.set_block(0, 0, &RMatrix::identity(ring, k));
    let witness = (&ind.to_normal * &sec).reduce_rows(ind.module.moduli());
    let out = AdjunctionMap {
        map,
        witness,
        kind: Splitting::Section,
    };
    if !out.verify() {
        return Err(Error::Internal("counit section does not split".into()));
    }
    Ok(out)
}

/// The unit `M → ι^!ι_* M`, `m ↦ (h ↦ h m)`, with an `R`-linear retraction.
pub fn unit(m: &GModule) -> Result<AdjunctionMap> {
    let (ring, group) = (m.ring, m.group.clone());
    let n = group.order();
    let k = m.rank();
    let co = coinduced(ring, group, &m.moduli)?;
    let mut raw = RMatrix::zeros(ring, n * k, k);
    for h in 0..n {
        raw.set_block(h * k, 0, m.action(h));
    }
    let map = GModuleHom::new(m.clone(), co.module.clone(), &co.to_normal * &raw)?;
    let mut ret = RMatrix::zeros(ring, k, n * k);
    ret.set_block(0, 0, &RMatrix::identity(ring, k));
    let witness = (&ret * &co.from_normal).reduce_rows(&m.moduli);
    let out = AdjunctionMap {
        map,
        witness,
        kind: Splitting::Retraction,
    };
    if !out.verify() {
        return Err(Error::Internal("unit retraction does not split".into()));
    }
    Ok(out)
}

/// `M ⊕ N`.
pub fn direct_sum(m: &GModule, n: &GModule) -> Result<DirectSum> {
    m.check_same_base(n)?;
    let ring = m.ring;
    let (a, b) = (m.rank(), n.rank());
    let moduli: Vec<BigInt> = m.moduli.iter().chain(&n.moduli).cloned().collect();
    let action: Vec<RMatrix> = m.action.iter().zip(&n.action).map(|(x, y)| x.block_diag(y)).collect();
    let nz = normalize(ring, m.group.clone(), a + b, &diagonal_relations(&moduli), &action)?;
    let mut i1 = RMatrix::zeros(ring, a + b, a);
    i1.set_block(0, 0, &RMatrix::identity(ring, a));
    let mut i2 = RMatrix::zeros(ring, a + b, b);
    i2.set_block(a, 0, &RMatrix::identity(ring, b));
    let p1 = i1.transpose();
    let p2 = i2.transpose();
    let s = nz.module.clone();
    Ok(DirectSum {
        inclusions: [
            GModuleHom::new(m.clone(), s.clone(), &nz.to_normal * &i1)?,
            GModuleHom::new(n.clone(), s.clone(), &nz.to_normal * &i2)?,
        ],
        projections: [
            GModuleHom::new(s.clone(), m.clone(), &p1 * &nz.from_normal)?,
            GModuleHom::new(s.clone(), n.clone(), &p2 * &nz.from_normal)?,
        ],
        module: s,
    })
}

/// `M ⊗_R N` with the diagonal action `g(m ⊗ n) = gm ⊗ gn`.
pub fn tensor_product(m: &GModule, n: &GModule) -> Result<GModule> {
    m.check_same_base(n)?;
    let ring = m.ring;
    let moduli: Vec<BigInt> = m
        .moduli
        .iter()
        .flat_map(|d| n.moduli.iter().map(move |e| gcd0(d, e)))
        .collect();
    let action: Vec<RMatrix> = m.action.iter().zip(&n.action).map(|(x, y)| x.kron(y)).collect();
    Ok(normalize(
        ring,
        m.group.clone(),
        moduli.len(),
        &diagonal_relations(&moduli),
        &action,
    )?
    .module)
}
