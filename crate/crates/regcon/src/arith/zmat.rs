//! Integer matrices (row-major `Vec<Vec<BigInt>>`): Hermite and Smith normal
//! forms with unimodular transforms, integer kernels and integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;

pub fn zmat_from_i64(rows: &[Vec<i64>]) -> ZMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &ZMat, b: &ZMat, inner: usize, cols: usize) -> ZMat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &ZMat, cols: usize) -> ZMat {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row vector times matrix.
pub fn vec_mul(x: &[BigInt], a: &ZMat, cols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); cols];
    for (xi, row) in x.iter().zip(a) {
        if xi.is_zero() {
            continue;
        }
        for j in 0..cols {
            out[j] += xi * &row[j];
        }
    }
    out
}

fn row_axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Row Hermite normal form `U·A = H` with `U` unimodular.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: ZMat,
    pub u: ZMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hnf(a: &ZMat, ncols: usize) -> Hnf {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()).then(i.cmp(&j)));
            let Some(i) = best else { break };
            h.swap(i, r);
            u.swap(i, r);
            let mut done = true;
            for k in r + 1..m {
                if h[k][c].is_zero() {
                    continue;
                }
                let q = h[k][c].div_floor(&h[r][c]);
                row_axpy(&mut h, k, r, &q);
                row_axpy(&mut u, k, r, &q);
                if !h[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= m || h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for k in 0..r {
            let q = h[k][c].div_floor(&h[r][c]);
            row_axpy(&mut h, k, r, &q);
            row_axpy(&mut u, k, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, rank: r, pivots }
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn hnf_basis(a: &ZMat, ncols: usize) -> ZMat {
    let res = hnf(a, ncols);
    res.h.into_iter().take(res.rank).collect()
}

/// Saturated basis of `{x : x·A = 0}` in Hermite-reduced form.
pub fn left_kernel(a: &ZMat, ncols: usize) -> ZMat {
    let res = hnf(a, ncols);
    let m = a.len();
    let ker: ZMat = res.u[res.rank..m].to_vec();
    if ker.is_empty() {
        return ker;
    }
    hnf_basis(&ker, m)
}

/// Integer solution of `x·A = b`, if any.
pub fn solve_left(a: &ZMat, ncols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let res = hnf(a, ncols);
    let m = a.len();
    let mut y = vec![BigInt::zero(); m];
    let mut rem: Vec<BigInt> = b.to_vec();
    for (i, &c) in res.pivots.iter().enumerate() {
        let (q, r) = rem[c].div_rem(&res.h[i][c]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..ncols {
            if !res.h[i][j].is_zero() {
                rem[j] -= &q * &res.h[i][j];
            }
        }
        y[i] = q;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(vec_mul(&y, &res.u, m))
}

/// Smith normal form `U·A·V = diag(d)` with `d_i | d_{i+1}`, `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: ZMat,
    pub v: ZMat,
}

pub fn snf(a: &ZMat, ncols: usize) -> Snf {
    let m = a.len();
    let n = ncols;
    let mut h = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut diag = Vec::new();

    fn col_axpy(mat: &mut ZMat, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
    }
    fn swap_cols(mat: &mut ZMat, i: usize, j: usize) {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !h[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| h[i][j].abs() < h[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        h.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut h, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if h[i][t].is_zero() {
                    continue;
                }
                let q = h[i][t].div_floor(&h[t][t]);
                row_axpy(&mut h, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !h[i][t].is_zero() {
                    h.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if h[t][j].is_zero() {
                    continue;
                }
                let q = h[t][j].div_floor(&h[t][t]);
                col_axpy(&mut h, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !h[t][j].is_zero() {
                    swap_cols(&mut h, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&h[i][j] % &h[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut h, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if h[t][t].is_negative() {
            negate_row(&mut h[t]);
            negate_row(&mut u[t]);
        }
        diag.push(h[t][t].clone());
    }
    Snf { diag, u, v }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &ZMat) -> ZMat {
    let n = a.len();
    let q = super::QMatrix::from_zmat(a, n);
    let inv = q.inverse().expect("unimodular matrix is invertible");
    inv.to_zmat().expect("inverse of a unimodular matrix is integral")
}

pub fn det(a: &ZMat) -> BigInt {
    let n = a.len();
    super::QMatrix::from_zmat(a, n).det().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_s3_marks() {
        // permutation characters of S3 on classes (1, (12), (123))
        let a = zmat_from_i64(&[vec![6, 0, 0], vec![3, 1, 0], vec![2, 0, 2], vec![1, 1, 1]]);
        let k = left_kernel(&a, 3);
        assert_eq!(k, zmat_from_i64(&[vec![1, -2, -1, 2]]));
    }

    #[test]
    fn snf_small() {
        let a = zmat_from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = snf(&a, 3);
        let d: Vec<i64> = s.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let uav = mul(&mul(&s.u, &a, 3, 3), &s.v, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(uav[i][j], want);
            }
        }
    }

    #[test]
    fn solve_left_integral() {
        let a = zmat_from_i64(&[vec![2, 0], vec![0, 3]]);
        let b: Vec<BigInt> = vec![4.into(), 9.into()];
        assert_eq!(solve_left(&a, 2, &b).unwrap(), vec![BigInt::from(2), BigInt::from(3)]);
        let b: Vec<BigInt> = vec![1.into(), 0.into()];
        assert!(solve_left(&a, 2, &b).is_none());
    }
}
