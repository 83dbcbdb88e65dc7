//! Dense matrices over a [`CoefficientRing`].

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{reduce_mod, CoefficientRing};

static MAX_ENTRY_BITS: AtomicU64 = AtomicU64::new(4096);

/// Caps the bit length of integers produced by Smith reduction.
pub fn set_max_entry_bits(bits: u64) {
    MAX_ENTRY_BITS.store(bits, Ordering::Relaxed);
}

pub fn max_entry_bits() -> u64 {
    MAX_ENTRY_BITS.load(Ordering::Relaxed)
}

pub(crate) fn check_entry(x: &BigInt) -> Result<()> {
    let limit = max_entry_bits();
    let bits = x.bits();
    if bits > limit {
        Err(Error::EntryTooLarge { bits, limit })
    } else {
        Ok(())
    }
}

/// Row-major dense matrix with entries canonically reduced for the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl RMatrix {
    pub fn zeros(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        RMatrix {
            ring,
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major data, reducing entries canonically.
    pub fn from_vec(ring: CoefficientRing, rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let mut m = RMatrix { ring, rows, cols, data };
        m.canonicalize();
        Ok(m)
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(ring: CoefficientRing, rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Self::from_vec(ring, r, c, data)
    }

    pub fn diagonal(ring: CoefficientRing, diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = ring.reduce(d);
        }
        m
    }

    fn canonicalize(&mut self) {
        if !self.ring.is_integers() {
            let ring = self.ring;
            self.data.iter_mut().for_each(|x| ring.reduce_in_place(x));
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Same entries, viewed over another ring (re-reduced).
    pub fn with_ring(&self, ring: CoefficientRing) -> Self {
        let mut m = RMatrix { ring, ..self.clone() };
        m.canonicalize();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = self.ring.reduce(&v);
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_columns(ring: CoefficientRing, rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = ring.reduce(v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.ring, idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            m.data[a * self.cols..(a + 1) * self.cols].clone_from_slice(self.row(i));
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (b, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.ring, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].clone_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].clone_from_slice(other.row(i));
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &RMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RMatrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, other: &RMatrix) -> Self {
        let mut m = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    /// Kronecker product, row index `i * other.rows + k`.
    pub fn kron(&self, other: &RMatrix) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(self.ring, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = a * other.get(k, l);
                        m.data[(i * other.rows + k) * c + j * other.cols + l] = self.ring.reduce(&v);
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let data = self.data.iter().map(|x| self.ring.reduce(&(x * s))).collect();
        RMatrix { data, ..self.clone() }
    }

    /// Reduces row `i` modulo `moduli[i]` (zero modulus leaves the row untouched).
    pub fn reduce_rows(&self, moduli: &[BigInt]) -> Self {
        debug_assert_eq!(moduli.len(), self.rows);
        let mut m = self.clone();
        for (i, md) in moduli.iter().enumerate() {
            if md.is_zero() {
                continue;
            }
            for x in &mut m.data[i * self.cols..(i + 1) * self.cols] {
                if x.is_negative() || &*x >= md {
                    *x = reduce_mod(x, md);
                }
            }
        }
        m
    }

    /// True when `self ≡ other` row-wise modulo `moduli`.
    pub fn congruent(&self, other: &RMatrix, moduli: &[BigInt]) -> bool {
        self.shape() == other.shape() && (self - other).reduce_rows(moduli).is_zero()
    }

    pub fn try_mul(&self, rhs: &RMatrix) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), rhs.ring.to_string()));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &RMatrix) -> Self {
        let mut out = Self::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = rhs.row(k);
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *d += a * b;
                    }
                }
            }
        }
        out.canonicalize();
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let s: BigInt = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                self.ring.reduce(&s)
            })
            .collect()
    }

    /// Row-major JSON array of decimal strings.
    pub fn to_debug_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row(i)
                            .iter()
                            .map(|x| serde_json::Value::String(x.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl<'a> Mul<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: &'a RMatrix) -> RMatrix {
        self.try_mul(rhs).expect("matrix product shapes")
    }
}

impl<'a> Add<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn add(self, rhs: &'a RMatrix) -> RMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shapes");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| self.ring.reduce(&(a + b)))
            .collect();
        RMatrix { data, ..self.clone() }
    }
}

impl<'a> Sub<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn sub(self, rhs: &'a RMatrix) -> RMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shapes");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| self.ring.reduce(&(a - b)))
            .collect();
        RMatrix { data, ..self.clone() }
    }
}

impl Neg for &RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        let data = self.data.iter().map(|a| self.ring.reduce(&-a)).collect();
        RMatrix { data, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_reduces_over_prime_power() {
        let r = CoefficientRing::prime_power(2, 2).unwrap();
        let a = RMatrix::from_rows(r, &[vec![3, 1], vec![0, 2]]).unwrap();
        let p = &a * &a;
        assert_eq!(p, RMatrix::from_rows(r, &[vec![1, 1], vec![0, 0]]).unwrap());
    }

    #[test]
    fn kron_layout() {
        let z = CoefficientRing::Z;
        let a = RMatrix::from_rows(z, &[vec![0, 1], vec![1, 0]]).unwrap();
        let b = RMatrix::from_rows(z, &[vec![2]]).unwrap();
        assert_eq!(a.kron(&b), RMatrix::from_rows(z, &[vec![0, 2], vec![2, 0]]).unwrap());
    }

    #[test]
    fn debug_json_is_strings() {
        let m = RMatrix::from_rows(CoefficientRing::Z, &[vec![-1, 2]]).unwrap();
        assert_eq!(m.to_debug_json().to_string(), r#"[["-1","2"]]"#);
    }
}
