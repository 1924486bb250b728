//! Dense matrices over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zmat::ZMat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigRational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![vec![BigRational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<BigRational>>, cols: usize) -> Self {
        QMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        QMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_zmat(a: &ZMat, cols: usize) -> Self {
        let data = a
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        QMatrix { rows: a.len(), cols, data }
    }

    /// Integer entries, or `None` if some entry is not integral.
    pub fn to_zmat(&self) -> Option<ZMat> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        QMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &QMatrix) {
        for (r, s) in self.data.iter_mut().zip(&other.data) {
            for (x, y) in r.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        let mut out = self.clone();
        for (r, s) in out.data.iter_mut().zip(&other.data) {
            for (x, y) in r.iter_mut().zip(s) {
                *x -= y;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        let data = self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else { continue };
            m.data.swap(r, p);
            let inv = m.data[r][c].recip();
            for x in m.data[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m.data[r].clone();
            for i in 0..m.rows {
                if i == r || m.data[i][c].is_zero() {
                    continue;
                }
                let f = m.data[i][c].clone();
                for (x, y) in m.data[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = BigRational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let data = r.data.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(QMatrix { rows: n, cols: n, data })
    }

    /// Basis of the right kernel `{v : A v = 0}`, as rows.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[i][f].clone();
                }
                v
            })
            .collect()
    }

    /// Row space basis in RREF (nonzero rows).
    pub fn row_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let data: Vec<_> = r.data.into_iter().take(pivots.len()).collect();
        QMatrix::from_rows(data, self.cols)
    }

    /// Columns `B` (n x k) spanning the column space, with `B` in column-RREF
    /// form, together with the pivot rows where `B` restricts to the identity.
    pub fn column_basis(&self) -> (QMatrix, Vec<usize>) {
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let data: Vec<_> = r.data.into_iter().take(pivots.len()).collect();
        let b = QMatrix::from_rows(data, self.rows).transpose();
        (b, pivots)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|r| {
                let mut s = BigRational::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_rows(idx.iter().map(|&i| self.data[i].clone()).collect(), self.cols)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + &self.data[i][i])
    }

    /// Characteristic polynomial coefficients, constant term first (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> Vec<BigRational> {
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = QMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next.data[i][i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k as i64));
        }
        coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn det_and_inverse() {
        let a = QMatrix::from_i64(&[vec![2, 1], vec![5, 3]]);
        assert_eq!(a.det(), rat(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_dims() {
        let a = QMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn char_poly_2x2() {
        let a = QMatrix::from_i64(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.char_poly(), vec![rat(-2), rat(-5), rat(1)]);
    }
}
