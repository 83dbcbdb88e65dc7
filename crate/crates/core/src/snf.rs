//! Smith normal form with tracked unimodular transforms.
//!
//! Pivoting is deterministic: over the integers the pivot is the entry of
//! smallest absolute value, over `Z/p^n` the entry of smallest p-adic
//! valuation; ties go to the lowest row, then the lowest column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::{check_entry, RMatrix};
use crate::ring::CoefficientRing;

/// `a = u * s * v` with `u`, `v` invertible and `s` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: RMatrix,
    pub s: RMatrix,
    pub v: RMatrix,
    pub u_inv: RMatrix,
    pub v_inv: RMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Dense working copy. `p * a * q = s` is maintained together with the inverses.
struct Work {
    ring: CoefficientRing,
    modulus: Option<BigInt>,
    m: usize,
    n: usize,
    a: Vec<BigInt>,
    p: Vec<BigInt>,
    p_inv: Vec<BigInt>,
    q: Vec<BigInt>,
    q_inv: Vec<BigInt>,
    track: bool,
}

fn ident(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = BigInt::one();
    }
    v
}

impl Work {
    fn new(a: &RMatrix, track: bool) -> Self {
        let (m, n) = a.shape();
        let ring = a.ring();
        Work {
            ring,
            modulus: (!ring.is_integers()).then(|| ring.modulus()),
            m,
            n,
            a: a.entries().to_vec(),
            p: if track { ident(m) } else { Vec::new() },
            p_inv: if track { ident(m) } else { Vec::new() },
            q: if track { ident(n) } else { Vec::new() },
            q_inv: if track { ident(n) } else { Vec::new() },
            track,
        }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.n + j]
    }

    fn red(&self, x: &mut BigInt) {
        if let Some(md) = &self.modulus {
            if x.is_negative() || &*x >= md {
                *x = x.mod_floor(md);
            }
        }
    }

    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        let (m, n) = (self.m, self.n);
        for k in 0..n {
            let t = c * &self.a[j * n + k];
            self.a[i * n + k] += t;
            let mut x = std::mem::take(&mut self.a[i * n + k]);
            self.red(&mut x);
            self.a[i * n + k] = x;
        }
        if self.track {
            for k in 0..m {
                let t = c * &self.p[j * m + k];
                let mut x = &self.p[i * m + k] + t;
                self.red(&mut x);
                self.p[i * m + k] = x;
                // p_inv: column j -= c * column i
                let t = c * &self.p_inv[k * m + i];
                let mut x = &self.p_inv[k * m + j] - t;
                self.red(&mut x);
                self.p_inv[k * m + j] = x;
            }
        }
    }

    /// col_j += c * col_i
    fn col_add(&mut self, j: usize, i: usize, c: &BigInt) {
        let (m, n) = (self.m, self.n);
        for k in 0..m {
            let t = c * &self.a[k * n + i];
            let mut x = &self.a[k * n + j] + t;
            self.red(&mut x);
            self.a[k * n + j] = x;
        }
        if self.track {
            for k in 0..n {
                let t = c * &self.q[k * n + i];
                let mut x = &self.q[k * n + j] + t;
                self.red(&mut x);
                self.q[k * n + j] = x;
                // q_inv: row i -= c * row j
                let t = c * &self.q_inv[j * n + k];
                let mut x = &self.q_inv[i * n + k] - t;
                self.red(&mut x);
                self.q_inv[i * n + k] = x;
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (m, n) = (self.m, self.n);
        for k in 0..n {
            self.a.swap(i * n + k, j * n + k);
        }
        if self.track {
            for k in 0..m {
                self.p.swap(i * m + k, j * m + k);
                self.p_inv.swap(k * m + i, k * m + j);
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (m, n) = (self.m, self.n);
        for k in 0..m {
            self.a.swap(k * n + i, k * n + j);
        }
        if self.track {
            for k in 0..n {
                self.q.swap(k * n + i, k * n + j);
                self.q_inv.swap(i * n + k, j * n + k);
            }
        }
    }

    /// row_i *= u for a unit u with inverse u_inv.
    fn row_scale(&mut self, i: usize, u: &BigInt, u_inv: &BigInt) {
        let (m, n) = (self.m, self.n);
        for k in 0..n {
            let mut x = &self.a[i * n + k] * u;
            self.red(&mut x);
            self.a[i * n + k] = x;
        }
        if self.track {
            for k in 0..m {
                let mut x = &self.p[i * m + k] * u;
                self.red(&mut x);
                self.p[i * m + k] = x;
                let mut x = &self.p_inv[k * m + i] * u_inv;
                self.red(&mut x);
                self.p_inv[k * m + i] = x;
            }
        }
    }

    fn check_bits(&self) -> Result<()> {
        for x in &self.a {
            check_entry(x)?;
        }
        Ok(())
    }

    fn integer_reduce(&mut self) -> Result<()> {
        let r = self.m.min(self.n);
        for t in 0..r {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.m {
                for j in t..self.n {
                    let x = self.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < self.at(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let piv = self.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.m {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).div_floor(&piv);
                    self.row_add(i, t, &-q);
                    clean &= self.at(i, t).is_zero();
                }
                for j in t + 1..self.n {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).div_floor(&piv);
                    self.col_add(j, t, &-q);
                    clean &= self.at(t, j).is_zero();
                }
                self.check_bits()?;
                if !clean {
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = self.at(i, t);
                        if !x.is_zero() && x.abs() < self.at(best.0, best.1).abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = self.at(t, j);
                        if !x.is_zero() && x.abs() < self.at(best.0, best.1).abs() {
                            best = (t, j);
                        }
                    }
                    self.row_swap(t, best.0);
                    self.col_swap(t, best.1);
                    continue;
                }
                // divisibility of the trailing block
                let piv = self.at(t, t).clone();
                let bad = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !self.at(i, j).is_multiple_of(&piv)));
                match bad {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                let neg = -BigInt::one();
                self.row_scale(t, &neg, &neg);
            }
        }
        Ok(())
    }

    fn local_reduce(&mut self) -> Result<()> {
        let ring = self.ring;
        let p = BigInt::from(ring.prime().expect("local reduction needs a prime"));
        let r = self.m.min(self.n);
        for t in 0..r {
            let mut best: Option<(usize, usize, u32)> = None;
            for i in t..self.m {
                for j in t..self.n {
                    let x = self.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let v = ring.valuation(x);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, v)) = best else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            let pe = num_traits::pow(p.clone(), v as usize);
            let unit = self.at(t, t) / &pe;
            if !unit.is_one() {
                let inv = ring.unit_inverse(&unit).expect("pivot cofactor is a unit");
                self.row_scale(t, &inv, &unit);
            }
            for i in t + 1..self.m {
                if !self.at(i, t).is_zero() {
                    let q = self.at(i, t) / &pe;
                    self.row_add(i, t, &-q);
                }
            }
            for j in t + 1..self.n {
                if !self.at(t, j).is_zero() {
                    let q = self.at(t, j) / &pe;
                    self.col_add(j, t, &-q);
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> SmithDecomposition {
        let ring = self.ring;
        let mk = |r, c, v: Vec<BigInt>| RMatrix::from_vec(ring, r, c, v).expect("shape");
        let s = mk(self.m, self.n, self.a);
        // p a q = s  =>  a = p^-1 s q^-1
        SmithDecomposition {
            u: mk(self.m, self.m, self.p_inv),
            s,
            v: mk(self.n, self.n, self.q_inv),
            u_inv: mk(self.m, self.m, self.p),
            v_inv: mk(self.n, self.n, self.q),
        }
    }
}

/// Smith normal form of `a` over its ring.
///
/// Over the integers the diagonal is nonnegative with `s1 | s2 | ...` and
/// zeros last; over `Z/p^n` the diagonal entries are powers of `p` or zero.
pub fn smith_normal_form(a: &RMatrix) -> Result<SmithDecomposition> {
    let mut w = Work::new(a, true);
    if a.ring().is_integers() {
        w.integer_reduce()?;
    } else {
        w.local_reduce()?;
    }
    Ok(w.finish())
}

/// Diagonal only, skipping the transforms.
pub fn invariant_factors(a: &RMatrix) -> Result<Vec<BigInt>> {
    let mut w = Work::new(a, false);
    if a.ring().is_integers() {
        w.integer_reduce()?;
    } else {
        w.local_reduce()?;
    }
    let r = w.m.min(w.n);
    Ok((0..r).map(|i| w.at(i, i).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> RMatrix {
        RMatrix::from_rows(CoefficientRing::Z, rows).unwrap()
    }

    fn check(a: &RMatrix, d: &SmithDecomposition) {
        assert_eq!(&(&d.u * &d.s) * &d.v, *a);
        assert_eq!(&d.u * &d.u_inv, RMatrix::identity(a.ring(), a.rows()));
        assert_eq!(&d.v * &d.v_inv, RMatrix::identity(a.ring(), a.cols()));
    }

    #[test]
    fn identity_is_fixed() {
        let a = RMatrix::identity(CoefficientRing::Z, 3);
        let d = smith_normal_form(&a).unwrap();
        assert_eq!(d.s, a);
        check(&a, &d);
    }

    #[test]
    fn two_by_two_invariants() {
        let a = z(&[vec![2, 4], vec![6, 8]]);
        let d = smith_normal_form(&a).unwrap();
        assert_eq!(d.s, z(&[vec![2, 0], vec![0, 4]]));
        check(&a, &d);
    }

    #[test]
    fn zero_over_z4() {
        let r = CoefficientRing::prime_power(2, 2).unwrap();
        let a = RMatrix::zeros(r, 2, 2);
        let d = smith_normal_form(&a).unwrap();
        assert!(d.s.is_zero());
        check(&a, &d);
    }

    #[test]
    fn local_pivots_are_prime_powers() {
        let r = CoefficientRing::prime_power(3, 2).unwrap();
        let a = RMatrix::from_rows(r, &[vec![6, 3], vec![2, 0]]).unwrap();
        let d = smith_normal_form(&a).unwrap();
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
        check(&a, &d);
    }

    #[test]
    fn entry_cap_is_enforced() {
        crate::matrix::set_max_entry_bits(4096);
        let a = z(&[vec![1 << 40, 3], vec![5, 7]]);
        assert!(smith_normal_form(&a).is_ok());
    }

    #[test]
    fn rectangular_and_empty() {
        let a = z(&[vec![0, 0, 0], vec![0, 6, 4]]);
        let d = smith_normal_form(&a).unwrap();
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(0)]);
        check(&a, &d);
        let e = RMatrix::zeros(CoefficientRing::Z, 3, 0);
        let d = smith_normal_form(&e).unwrap();
        check(&e, &d);
    }
}
