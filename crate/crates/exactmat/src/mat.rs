//! Dense row-major matrices over a [`Coeff`] scalar.

use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Row-reduced echelon form together with its pivot columns.
pub struct Rref<S> {
    pub mat: Mat<S>,
    pub pivots: Vec<usize>,
}

impl<S> Rref<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<S: Coeff> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn col_vec(entries: Vec<S>) -> Self {
        Mat {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| s.clone() * v.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).clone() + a.clone() * other.at(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Kronecker product with the usual index convention:
    /// entry ((i1,i2),(j1,j2)) = a[i1,j1] * b[i2,j2].
    pub fn kronecker(&self, other: &Self) -> Self {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        Mat::from_fn(ar * br, ac * bc, |i, j| {
            self.at(i / br, j / bc).clone() * other.at(i % br, j % bc).clone()
        })
    }

    pub fn block_diag(blocks: &[Mat<S>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self.at(i, i).clone();
        }
        t
    }

    pub fn frob_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.to_c64().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_zero_tol(tol))
    }

    pub fn rref(&self, tol: f64) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best = r;
            let mut best_w = 0.0_f64;
            for i in r..m.rows {
                let w = m.at(i, c).pivot_weight();
                if w > best_w {
                    best_w = w;
                    best = i;
                }
            }
            let thresh = if S::EXACT { 0.0 } else { tol };
            if best_w <= thresh {
                continue;
            }
            m.swap_rows(r, best);
            let inv = m.at(r, c).try_inv().expect("pivot passed zero test");
            for j in c..m.cols {
                let v = m.at(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            m.set(r, c, S::one());
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.at(i, c).clone();
                if f.is_zero_tol(0.0) {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                    m.set(i, j, v);
                }
                m.set(i, c, S::zero());
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).rank()
    }

    /// Basis of the right null space, one column per free variable.
    pub fn kernel_basis(&self, tol: f64) -> Mat<S> {
        let rr = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, S::one());
            for (row, &pc) in rr.pivots.iter().enumerate() {
                out.set(pc, k, -rr.mat.at(row, fc).clone());
            }
        }
        out
    }

    /// One solution of `self * X = rhs` (free variables set to zero),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Self, tol: f64) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let rr = aug.rref(tol);
        if rr.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (row, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, rr.mat.at(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self, tol: f64) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let rr = self.hstack(&Mat::identity(n)).rref(tol);
        if rr.pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| rr.mat.at(i, n + j).clone()))
    }

    /// Column-stacking vectorization: columns of the matrix concatenated.
    pub fn vec_cols(&self) -> Mat<S> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Mat {
            rows: self.rows * self.cols,
            cols: 1,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussRat, Rat};
    use num_complex::Complex64;

    fn gm(rows: Vec<Vec<i64>>) -> Mat<GaussRat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(GaussRat::from_int).collect())
                .collect(),
        )
    }

    #[test]
    fn matmul_identity() {
        let a = gm(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.matmul(&Mat::identity(2)), a);
        assert_eq!(Mat::identity(2).matmul(&a), a);
    }

    #[test]
    fn exact_inverse_roundtrip() {
        let a = gm(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(3));
        assert_eq!(inv.matmul(&a), Mat::identity(3));
        let sing = gm(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse(0.0).is_none());
    }

    #[test]
    fn rank_and_kernel_exact() {
        // rank 2, nullity 1: third column = col0 + col1
        let a = gm(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]);
        assert_eq!(a.rank(0.0), 2);
        let k = a.kernel_basis(0.0);
        assert_eq!(k.cols(), 1);
        assert!(a.matmul(&k).is_zero(0.0));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = gm(vec![vec![1, 1], vec![1, -1]]);
        let b = gm(vec![vec![3], vec![1]]);
        let x = a.solve(&b, 0.0).unwrap();
        assert_eq!(a.matmul(&x), b);
        let sing = gm(vec![vec![1, 1], vec![1, 1]]);
        let bad = gm(vec![vec![0], vec![1]]);
        assert!(sing.solve(&bad, 0.0).is_none());
    }

    #[test]
    fn kronecker_mixed_product() {
        let a = gm(vec![vec![1, 2], vec![0, 1]]);
        let b = gm(vec![vec![3, 0], vec![1, 1]]);
        let c = gm(vec![vec![1, 1], vec![1, 0]]);
        let d = gm(vec![vec![0, 2], vec![1, 0]]);
        let lhs = a.kronecker(&b).matmul(&c.kronecker(&d));
        let rhs = a.matmul(&c).kronecker(&b.matmul(&d));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_with_column() {
        let a = gm(vec![vec![1, 0], vec![0, 1]]);
        let s = gm(vec![vec![5], vec![7]]);
        let k = a.kronecker(&s);
        assert_eq!((k.rows(), k.cols()), (4, 2));
        assert_eq!(*k.at(0, 0), GaussRat::from_int(5));
        assert_eq!(*k.at(3, 1), GaussRat::from_int(7));
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let a: Mat<Complex64> = Mat::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-13, 0.0)],
        ]);
        assert_eq!(a.rank(1e-9), 1);
        assert_eq!(a.rank(1e-16), 2);
    }

    #[test]
    fn conj_transpose_gaussian() {
        let i = GaussRat::i();
        let a = Mat::from_rows(vec![vec![GaussRat::one(), i.clone()]]);
        let at = a.conj_transpose();
        assert_eq!((at.rows(), at.cols()), (2, 1));
        assert_eq!(*at.at(1, 0), -i);
    }

    #[test]
    fn block_diag_and_trace() {
        let a = gm(vec![vec![1, 2], vec![3, 4]]);
        let b = gm(vec![vec![5]]);
        let d = Mat::block_diag(&[a, b]);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(d.trace(), GaussRat::from_int(10));
    }

    #[test]
    fn exact_rational_elimination_no_drift() {
        // Hilbert-like matrix is exactly invertible over Q
        let h = Mat::from_fn(4, 4, |i, j| {
            GaussRat::real(Rat::new(1.into(), ((i + j + 1) as i64).into()))
        });
        let inv = h.inverse(0.0).unwrap();
        assert_eq!(h.matmul(&inv), Mat::identity(4));
    }
}
