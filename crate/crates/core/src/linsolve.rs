//! Linear congruence systems and homology of maps between finitely
//! presented modules `⊕ R/m_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::ring::CoefficientRing;
use crate::snf::{invariant_factors, smith_normal_form};

/// One particular solution plus generators of the homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSolution {
    /// `n x c`, one column per right-hand side.
    pub particular: RMatrix,
    /// `n x h`; columns generate `{x : a x ≡ 0}`.
    pub homogeneous: RMatrix,
}

/// Solves `a X ≡ b` where row `i` holds modulo `row_moduli[i]`.
///
/// A modulus of zero is an exact equation in `R` (so modulo `p^n` over
/// `Z/p^n`). Returns `None` when some column of `b` has no solution.
pub fn solve_congruence_system(a: &RMatrix, b: &RMatrix, row_moduli: &[BigInt]) -> Result<Option<CongruenceSolution>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    if a.rows() != b.rows() || row_moduli.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system {}x{}, rhs {}x{}, {} moduli",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            row_moduli.len()
        )));
    }
    let ring = a.ring();
    let eff: Vec<BigInt> = row_moduli.iter().map(|m| ring.effective_modulus(m)).collect();
    let rhs: Vec<Vec<BigInt>> = (0..b.cols()).map(|j| b.column(j)).collect();
    let Some((part, hom)) = solve_integral(a, &rhs, &eff)? else {
        return Ok(None);
    };
    Ok(Some(CongruenceSolution {
        particular: RMatrix::from_columns(ring, a.cols(), &part),
        homogeneous: RMatrix::from_columns(ring, a.cols(), &hom),
    }))
}

type Basis = Vec<Vec<BigInt>>;

/// Integer core of the solver: adjoins `m_i e_i` columns and runs Smith
/// reduction over `Z`. `moduli` are integer moduli (zero = exact).
pub(crate) fn solve_integral(
    a: &RMatrix,
    rhs: &[Vec<BigInt>],
    moduli: &[BigInt],
) -> Result<Option<(Vec<Vec<BigInt>>, Basis)>> {
    let ring = a.ring();
    let n = a.cols();
    let r = a.rows();
    let z = CoefficientRing::Z;
    let extra: Vec<usize> = (0..r).filter(|&i| !moduli[i].is_zero()).collect();
    let mut aug = RMatrix::zeros(z, r, n + extra.len());
    aug.set_block(0, 0, &a.with_ring(z));
    for (c, &i) in extra.iter().enumerate() {
        aug.set(i, n + c, moduli[i].clone());
    }
    let d = smith_normal_form(&aug)?;
    let diag = d.diagonal();
    let rank = diag.iter().take_while(|x| !x.is_zero()).count();
    let cols = aug.cols();

    let mut particular = Vec::with_capacity(rhs.len());
    for b in rhs {
        let c = d.u_inv.apply(b);
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..r {
            if i < rank {
                let (q, rem) = c[i].div_rem(&diag[i]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !c[i].is_zero() {
                return Ok(None);
            }
        }
        let x = d.v_inv.apply(&y);
        particular.push(x[..n].iter().map(|v| ring.reduce(v)).collect());
    }
    let mut homogeneous = Vec::new();
    for k in rank..cols {
        let col: Vec<BigInt> = (0..n).map(|i| ring.reduce(d.v_inv.get(i, k))).collect();
        if col.iter().any(|v| !v.is_zero()) {
            homogeneous.push(col);
        }
    }
    Ok(Some((particular, homogeneous)))
}

/// A map of finitely presented modules: its matrix plus the moduli of the
/// target rows (zero = free summand).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMap {
    pub matrix: RMatrix,
    pub row_moduli: Vec<BigInt>,
}

impl ModMap {
    pub fn new(matrix: RMatrix, row_moduli: Vec<BigInt>) -> Result<Self> {
        if row_moduli.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} moduli for {} rows",
                row_moduli.len(),
                matrix.rows()
            )));
        }
        Ok(ModMap { matrix, row_moduli })
    }
}

/// Invariant factors of `ker(d_out) / im(d_in)`.
///
/// The middle module is `⊕ R/m_i` with `m = d_in.row_moduli`.
pub fn homology_at(d_in: &ModMap, d_out: &ModMap) -> Result<Vec<BigInt>> {
    let ring = d_in.matrix.ring();
    if d_out.matrix.ring() != ring {
        return Err(Error::RingMismatch(ring.to_string(), d_out.matrix.ring().to_string()));
    }
    if d_out.matrix.cols() != d_in.matrix.rows() {
        return Err(Error::NotComposable(format!(
            "outgoing map has {} columns, incoming map has {} rows",
            d_out.matrix.cols(),
            d_in.matrix.rows()
        )));
    }
    let eff = |ms: &[BigInt]| -> Vec<BigInt> { ms.iter().map(|m| ring.effective_modulus(m)).collect() };
    let mid = eff(&d_in.row_moduli);
    let out = eff(&d_out.row_moduli);
    let composite = &d_out.matrix * &d_in.matrix;
    if !composite.with_ring(CoefficientRing::Z).reduce_rows(&out).is_zero() {
        return Err(Error::NonZeroComposite);
    }
    let b = d_in.matrix.rows();
    let zeros = vec![vec![BigInt::zero(); d_out.matrix.rows()]];
    let (_, kernel) = solve_integral(&d_out.matrix, &zeros, &out)?.expect("homogeneous system is solvable");
    homology_of_subquotient(ring, b, &kernel, &d_in.matrix, &mid)
}

/// Invariant factors of `span(kernel) / (im(image) + moduli)` inside `Z^b`.
pub(crate) fn homology_of_subquotient(
    ring: CoefficientRing,
    b: usize,
    kernel: &[Vec<BigInt>],
    image: &RMatrix,
    mid: &[BigInt],
) -> Result<Vec<BigInt>> {
    let t = kernel.len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let k = RMatrix::from_columns(CoefficientRing::Z, b, kernel);
    let sys = k.hstack(&image.with_ring(CoefficientRing::Z))?;
    let zeros = vec![vec![BigInt::zero(); b]];
    let (_, rel) = solve_integral(&sys, &zeros, mid)?.expect("homogeneous system is solvable");
    let rel: Vec<Vec<BigInt>> = rel.into_iter().map(|c| c[..t].to_vec()).collect();
    let rel_m = RMatrix::from_columns(CoefficientRing::Z, t, &rel);
    factors_of_relations(ring, &rel_m)
}

/// Invariant factors (units dropped, zeros last) of `Z^t / im(rel)`,
/// reported in ring-facing form.
pub(crate) fn factors_of_relations(ring: CoefficientRing, rel: &RMatrix) -> Result<Vec<BigInt>> {
    let t = rel.rows();
    let mut diag = invariant_factors(rel)?;
    diag.resize(t, BigInt::zero());
    Ok(diag
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| ring.display_factor(&d))
        .collect())
}

/// Accumulates congruences over a vector of unknowns.
#[derive(Debug, Clone)]
pub(crate) struct LinearSystem {
    ring: CoefficientRing,
    unknowns: usize,
    coeffs: Vec<BigInt>,
    rhs: Vec<BigInt>,
    moduli: Vec<BigInt>,
}

impl LinearSystem {
    pub fn new(ring: CoefficientRing, unknowns: usize) -> Self {
        LinearSystem {
            ring,
            unknowns,
            coeffs: Vec::new(),
            rhs: Vec::new(),
            moduli: Vec::new(),
        }
    }

    /// Adds `coeffs · x ≡ rhs (mod modulus)`; `modulus` is an integer modulus.
    pub fn push(&mut self, coeffs: Vec<BigInt>, rhs: BigInt, modulus: BigInt) {
        debug_assert_eq!(coeffs.len(), self.unknowns);
        if modulus.is_one() {
            return;
        }
        let trivial = rhs.is_zero() && coeffs.iter().all(Zero::is_zero);
        if trivial {
            return;
        }
        self.coeffs.extend(coeffs);
        self.rhs.push(rhs);
        self.moduli.push(modulus);
    }

    pub fn equations(&self) -> usize {
        self.rhs.len()
    }

    /// Particular solution and homogeneous generators, or `None`.
    pub fn solve(&self) -> Result<Option<(Vec<BigInt>, Basis)>> {
        let rows = self.rhs.len();
        let a = RMatrix::from_vec(CoefficientRing::Z, rows, self.unknowns, self.coeffs.clone())?.with_ring(self.ring);
        match solve_integral(&a, std::slice::from_ref(&self.rhs), &self.moduli)? {
            None => Ok(None),
            Some((mut part, hom)) => Ok(Some((part.pop().expect("one rhs"), hom))),
        }
    }
}
