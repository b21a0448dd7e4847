//! Dense matrices over a [`FieldCtx`] and exact Gauss–Jordan elimination.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Fe, FieldCtx};

/// Row-major matrix of field element handles. Ordering is lexicographic on
/// the entries for matrices of equal shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Fe>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Fe::ONE)
    }

    pub fn scalar(n: usize, lambda: Fe) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = lambda;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
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

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        Ok(())
    }

    pub fn add(&self, f: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, f: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        })
    }

    pub fn scale(&self, f: &FieldCtx, lambda: Fe) -> Matrix {
        self.map(|x| f.mul(lambda, x))
    }

    pub fn mul(&self, f: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, f: &FieldCtx, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, f: &FieldCtx, e: u32) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(f, self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form with zero rows removed, and the pivot columns.
    pub fn rref(&self, f: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.rref(f).1.len()
    }

    pub fn inverse(&self, f: &FieldCtx) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let (red, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, f: &FieldCtx) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Basis of the right null space `{x : A x = 0}` as row vectors.
    pub fn null_space(&self, f: &FieldCtx) -> Vec<Vec<Fe>> {
        let (red, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(red.get(r, fc));
                }
                v
            })
            .collect()
    }
}

/// Every matrix of the given shape, in lexicographic order of entries.
pub fn all_matrices(f: &FieldCtx, rows: usize, cols: usize) -> impl Iterator<Item = Matrix> + '_ {
    let q = f.order() as u64;
    let n = rows * cols;
    let count = q.pow(n as u32);
    (0..count).map(move |mut v| {
        let mut data = vec![Fe::ZERO; n];
        for slot in data.iter_mut().rev() {
            *slot = Fe((v % q) as u16);
            v /= q;
        }
        Matrix { rows, cols, data }
    })
}

/// Every vector of length `len`, first coordinate most significant.
pub fn all_vectors(f: &FieldCtx, len: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    all_matrices(f, 1, len).map(|m| m.data)
}

/// Position of `v` in the order of [`all_vectors`].
pub fn vector_index(f: &FieldCtx, v: &[Fe]) -> usize {
    let q = f.order() as usize;
    v.iter().fold(0, |acc, x| acc * q + x.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldCtx;

    #[test]
    fn inverse_roundtrip_gl2_f3() {
        let f = FieldCtx::prime(3).unwrap();
        let mut invertible = 0;
        for m in all_matrices(&f, 2, 2) {
            match m.inverse(&f) {
                Ok(inv) => {
                    invertible += 1;
                    assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(2));
                }
                Err(e) => assert_eq!(e, Error::Singular),
            }
        }
        // |GL(2,3)| = (9-1)(9-3)
        assert_eq!(invertible, 48);
    }

    #[test]
    fn rref_is_canonical() {
        let f = FieldCtx::gf(4).unwrap();
        // the second basis spans the same plane: its first row is the sum of the rows of `a`
        let a = Matrix::from_rows(&[vec![Fe(1), Fe(2), Fe(3)], vec![Fe(0), Fe(1), Fe(1)]]).unwrap();
        let b = Matrix::from_rows(&[vec![Fe(1), Fe(3), Fe(2)], vec![Fe(0), Fe(2), Fe(2)]]).unwrap();
        let (ra, pa) = a.rref(&f);
        assert_eq!(pa, vec![0, 1]);
        assert_eq!(ra.rref(&f).0, ra);
        assert_eq!(b.rref(&f).0, ra);
        // dependent rows collapse
        let c = Matrix::from_rows(&[vec![Fe(1), Fe(2), Fe(3)], vec![Fe(2), Fe(3), Fe(1)]]).unwrap();
        assert_eq!(c.rank(&f), 1);
    }

    #[test]
    fn vector_order_matches_index() {
        let f = FieldCtx::gf(3).unwrap();
        for (i, v) in all_vectors(&f, 3).enumerate() {
            assert_eq!(vector_index(&f, &v), i);
        }
    }

    #[test]
    fn null_space_annihilates() {
        let f = FieldCtx::prime(5).unwrap();
        let a = Matrix::from_rows(&[vec![Fe(1), Fe(2), Fe(3), Fe(4)], vec![Fe(0), Fe(1), Fe(1), Fe(1)]]).unwrap();
        let ns = a.null_space(&f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = Matrix::new(4, 1, v).unwrap();
            assert!(a.mul(&f, &col).unwrap().is_zero());
        }
    }
}
