//! Finite-dimensional associative algebras given by structure constants.
//!
//! The scalar field is generic: Gaussian rationals give exact answers
//! (radical, characters verified by equality), `Complex64` gives a float
//! mode where every rank decision uses a tolerance.

pub mod chars;
pub mod constructors;

pub use chars::{CharacterSearch, FailedCandidate};
pub use constructors::{conifold_apical, cyclic_quotient_apical, matrix_algebra};

use exactmat::{Coeff, Mat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("{0}")]
    BadInput(String),
    #[error("radical needs exact scalars; run in exact mode")]
    RadicalNeedsExact,
    #[error("invariant-monomial quotient did not stabilize below degree {0}")]
    QuotientUnbounded(usize),
    #[error("character search could not separate eigenvalues after {0} attempts")]
    SplitFailed(usize),
}

/// Associative unital algebra of dimension `dim` with structure constants
/// `c[i][j][k]`: the coefficient of basis element `k` in the product
/// `e_i * e_j`.
#[derive(Clone, Debug)]
pub struct FinAlgebra<S: Coeff> {
    dim: usize,
    unit: Vec<S>,
    sc: Vec<S>,
    labels: Option<Vec<String>>,
    sparse: Vec<Vec<(usize, S)>>,
}

impl<S: Coeff> FinAlgebra<S> {
    pub fn new(
        dim: usize,
        unit: Vec<S>,
        sc: Vec<S>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        if unit.len() != dim {
            return Err(AlgebraError::BadInput(format!(
                "unit vector has length {}, expected {dim}",
                unit.len()
            )));
        }
        if sc.len() != dim * dim * dim {
            return Err(AlgebraError::BadInput(format!(
                "structure constants have length {}, expected {}",
                sc.len(),
                dim * dim * dim
            )));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(AlgebraError::BadInput("label count != dim".into()));
            }
        }
        let mut sparse = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let row = &mut sparse[i * dim + j];
                for k in 0..dim {
                    let v = &sc[(i * dim + j) * dim + k];
                    if !v.is_zero_tol(0.0) {
                        row.push((k, v.clone()));
                    }
                }
            }
        }
        Ok(FinAlgebra {
            dim,
            unit,
            sc,
            labels,
            sparse,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn sc_at(&self, i: usize, j: usize, k: usize) -> &S {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[S] {
        &self.sc
    }

    /// Sparse form of the basis product `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn multiply(&self, u: &[S], v: &[S]) -> Vec<S> {
        assert_eq!(u.len(), self.dim, "left factor has wrong length");
        assert_eq!(v.len(), self.dim, "right factor has wrong length");
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero_tol(0.0) {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero_tol(0.0) {
                    continue;
                }
                let uv = u[i].clone() * v[j].clone();
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = out[*k].clone() + uv.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `u` in the defining basis.
    pub fn left_mult(&self, u: &[S]) -> Mat<S> {
        let mut m: Mat<S> = Mat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if u[i].is_zero_tol(0.0) {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    let v = m.at(*k, j).clone() + u[i].clone() * c.clone();
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    pub fn right_mult(&self, v: &[S]) -> Mat<S> {
        let mut m: Mat<S> = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            if v[j].is_zero_tol(0.0) {
                continue;
            }
            for i in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    let w = m.at(*k, i).clone() + v[j].clone() * c.clone();
                    m.set(*k, i, w);
                }
            }
        }
        m
    }

    /// Exhaustive associativity check over all basis triples.
    pub fn check_associativity(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let mut lhs = vec![S::zero(); self.dim];
                    for (m, a) in self.basis_product(i, j) {
                        for (l, b) in self.basis_product(*m, k) {
                            lhs[*l] = lhs[*l].clone() + a.clone() * b.clone();
                        }
                    }
                    let mut rhs = vec![S::zero(); self.dim];
                    for (m, a) in self.basis_product(j, k) {
                        for (l, b) in self.basis_product(i, *m) {
                            rhs[*l] = rhs[*l].clone() + a.clone() * b.clone();
                        }
                    }
                    if !lhs.iter().zip(&rhs).all(|(x, y)| x.approx_eq(y, tol)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_unit(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            let left = self.multiply(&self.unit, &e);
            let right = self.multiply(&e, &self.unit);
            if !left.iter().zip(&e).all(|(x, y)| x.approx_eq(y, tol))
                || !right.iter().zip(&e).all(|(x, y)| x.approx_eq(y, tol))
            {
                return false;
            }
        }
        true
    }

    /// Basis of the center: joint kernel of all ad-operators.
    pub fn center_basis(&self, tol: f64) -> Vec<Vec<S>> {
        let mut stacked: Mat<S> = Mat::zeros(self.dim * self.dim, self.dim);
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            let ad = self.left_mult(&e).sub(&self.right_mult(&e));
            for r in 0..self.dim {
                for c in 0..self.dim {
                    stacked.set(i * self.dim + r, c, ad.at(r, c).clone());
                }
            }
        }
        let ker = stacked.kernel_basis(tol);
        (0..ker.cols()).map(|c| ker.col(c)).collect()
    }

    /// Smallest two-sided ideal containing all commutators of basis pairs,
    /// returned as reduced row vectors.
    pub fn commutator_ideal_basis(&self, tol: f64) -> Mat<S> {
        let mut rows: Vec<Vec<S>> = Vec::new();
        for i in 0..self.dim {
            for j in 0..i {
                let mut v = vec![S::zero(); self.dim];
                for (k, c) in self.basis_product(i, j) {
                    v[*k] = v[*k].clone() + c.clone();
                }
                for (k, c) in self.basis_product(j, i) {
                    v[*k] = v[*k].clone() - c.clone();
                }
                rows.push(v);
            }
        }
        self.ideal_closure(rows, tol)
    }

    /// Close a spanning set under left and right basis multiplication.
    pub fn ideal_closure(&self, rows: Vec<Vec<S>>, tol: f64) -> Mat<S> {
        let mut span = Mat::from_rows(if rows.is_empty() {
            vec![vec![S::zero(); self.dim]]
        } else {
            rows
        })
        .rref(tol);
        loop {
            let rank = span.rank();
            let mut next: Vec<Vec<S>> = Vec::new();
            for r in 0..rank {
                let v: Vec<S> = span.mat.row(r).to_vec();
                for i in 0..self.dim {
                    let mut e = vec![S::zero(); self.dim];
                    e[i] = S::one();
                    next.push(self.multiply(&e, &v));
                    next.push(self.multiply(&v, &e));
                }
            }
            for r in 0..rank {
                next.push(span.mat.row(r).to_vec());
            }
            let closed = Mat::from_rows(next).rref(tol);
            if closed.rank() == rank {
                return Mat::from_fn(rank, self.dim, |i, j| span.mat.at(i, j).clone());
            }
            span = closed;
        }
    }

    /// Quotient by the two-sided ideal spanned by `ideal` rows. Returns the
    /// quotient algebra and the projection matrix (quotient coords per
    /// original basis column).
    pub fn quotient_by_ideal(&self, ideal: &Mat<S>, tol: f64) -> (FinAlgebra<S>, Mat<S>) {
        let rr = ideal.rref(tol);
        let pivots = &rr.pivots;
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        let reduce = |v: &[S]| -> Vec<S> {
            let mut v = v.to_vec();
            for (row, &p) in pivots.iter().enumerate() {
                let f = v[p].clone();
                if f.is_zero_tol(0.0) {
                    continue;
                }
                for c in 0..self.dim {
                    v[c] = v[c].clone() - f.clone() * rr.mat.at(row, c).clone();
                }
            }
            free.iter().map(|&c| v[c].clone()).collect()
        };
        let mut proj: Mat<S> = Mat::zeros(q, self.dim);
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            for (r, val) in reduce(&e).into_iter().enumerate() {
                proj.set(r, i, val);
            }
        }
        let mut sc = vec![S::zero(); q * q * q];
        for (a, &ca) in free.iter().enumerate() {
            for (b, &cb) in free.iter().enumerate() {
                let mut prod = vec![S::zero(); self.dim];
                for (k, c) in self.basis_product(ca, cb) {
                    prod[*k] = prod[*k].clone() + c.clone();
                }
                for (k, val) in reduce(&prod).into_iter().enumerate() {
                    sc[(a * q + b) * q + k] = val;
                }
            }
        }
        let unit = reduce(&self.unit);
        let labels = self
            .labels
            .as_ref()
            .map(|l| free.iter().map(|&c| l[c].clone()).collect());
        let quotient = FinAlgebra::new(q, unit, sc, labels).expect("quotient shape");
        (quotient, proj)
    }

    /// Quotient by the commutator ideal.
    pub fn abelianization(&self, tol: f64) -> FinAlgebra<S> {
        let comm = self.commutator_ideal_basis(tol);
        self.quotient_by_ideal(&comm, tol).0
    }

    /// Radical basis via the trace form of left multiplication, valid in
    /// characteristic zero. Exact scalars only.
    pub fn radical_basis(&self) -> Result<Mat<S>, AlgebraError> {
        if !S::EXACT {
            return Err(AlgebraError::RadicalNeedsExact);
        }
        Ok(self.radical_basis_with_tol(0.0))
    }

    pub(crate) fn radical_basis_with_tol(&self, tol: f64) -> Mat<S> {
        let mut tr_l = vec![S::zero(); self.dim];
        for m in 0..self.dim {
            let mut t = S::zero();
            for k in 0..self.dim {
                t = t + self.sc_at(m, k, k).clone();
            }
            tr_l[m] = t;
        }
        let gram: Mat<S> = Mat::from_fn(self.dim, self.dim, |i, j| {
            let mut g = S::zero();
            for (m, c) in self.basis_product(i, j) {
                g = g + c.clone() * tr_l[*m].clone();
            }
            g
        });
        gram.kernel_basis(tol).transpose()
    }
}
