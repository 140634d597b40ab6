//! Integer matrix routines: diagonalization by unimodular row and column
//! operations, exact kernels and solves over Z.

use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c);
        }
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = y;
            self[(i, b)] = x;
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, k: i64) {
        for j in 0..self.cols {
            let s = self[(src, j)];
            self[(dst, j)] += k * s;
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, k: i64) {
        for i in 0..self.rows {
            let s = self[(i, src)];
            self[(i, dst)] += k * s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonalization u * a * v = d with u, v unimodular.
pub struct Diagonalized {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

pub fn diagonalize(a: &IntMat) -> Diagonalized {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        loop {
            let mut pivot = None;
            let mut best = i64::MAX;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = d[(i, j)].abs();
                    if x != 0 && x < best {
                        best = x;
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return Diagonalized { d, u, v },
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..d.rows {
                let q = num_integer::Integer::div_floor(&d[(i, t)], &p);
                if q != 0 {
                    d.add_row(t, i, -q);
                    u.add_row(t, i, -q);
                }
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                let q = num_integer::Integer::div_floor(&d[(t, j)], &p);
                if q != 0 {
                    d.add_col(t, j, -q);
                    v.add_col(t, j, -q);
                }
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    Diagonalized { d, u, v }
}

pub fn rank(a: &IntMat) -> usize {
    let dia = diagonalize(a);
    (0..a.rows.min(a.cols)).filter(|&t| dia.d[(t, t)] != 0).count()
}

/// Basis of the integer kernel {x : a x = 0}, one column vector per entry.
pub fn kernel(a: &IntMat) -> Vec<Vec<i64>> {
    let dia = diagonalize(a);
    let mut out = Vec::new();
    for j in 0..a.cols {
        let zero = j >= a.rows.min(a.cols) || dia.d[(j, j)] == 0;
        if zero {
            out.push(dia.v.col(j));
        }
    }
    out
}

/// One integer solution of a x = b, if any exists.
pub fn solve(a: &IntMat, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows, b.len());
    let dia = diagonalize(a);
    let y = dia.u.mul_vec(b);
    let mut z = vec![0i64; a.cols];
    for i in 0..a.rows {
        let di = if i < a.cols { dia.d[(i, i)] } else { 0 };
        if di == 0 {
            if y[i] != 0 {
                return None;
            }
        } else {
            if y[i] % di != 0 {
                return None;
            }
            z[i] = y[i] / di;
        }
    }
    Some(dia.v.mul_vec(&z))
}

/// Divides through by the gcd and flips the sign so the first nonzero
/// entry is positive. Returns None for the zero vector.
pub fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return None;
    }
    let mut w: Vec<i64> = v.iter().map(|&x| x / g).collect();
    if let Some(first) = w.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in &mut w {
                *x = -*x;
            }
        }
    }
    Some(w)
}
