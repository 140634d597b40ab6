//! One-dimensional representations (characters) of a structure-constant
//! algebra.
//!
//! Every character kills the radical and the commutator ideal, so the search
//! works on the quotient by both: split it numerically with a random element,
//! read off candidate values from eigenvectors, lift back along the quotient
//! projection, then promote candidates to the scalar field and verify the
//! multiplicativity equations. Candidates that fail verification are kept in
//! the report instead of being silently dropped.

use exactmat::{rat_from_f64, rationalize, Coeff, Complex64, Mat};
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

use crate::{AlgebraError, FinAlgebra};

const MAX_SPLIT_ATTEMPTS: u64 = 8;
const RATIONALIZE_MAX_DEN: u64 = 1_000_000;

/// A numeric candidate that did not survive verification.
#[derive(Clone, Debug)]
pub struct FailedCandidate {
    pub values: Vec<Complex64>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct CharacterSearch<S> {
    /// Verified characters, each a value per basis element, sorted
    /// lexicographically by (re, im) of the values.
    pub characters: Vec<Vec<S>>,
    pub failed: Vec<FailedCandidate>,
}

fn left_mult_c64<S: Coeff>(a: &FinAlgebra<S>, z: &[Complex64]) -> Mat<Complex64> {
    let d = a.dim();
    let mut m: Mat<Complex64> = Mat::zeros(d, d);
    for i in 0..d {
        if z[i].norm() == 0.0 {
            continue;
        }
        for j in 0..d {
            for (k, c) in a.basis_product(i, j) {
                let v = *m.at(*k, j) + z[i] * c.to_c64();
                m.set(*k, j, v);
            }
        }
    }
    m
}

fn eigenvalues_c64(m: &Mat<Complex64>) -> Option<Vec<Complex64>> {
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| *m.at(i, j));
    let schur = nalgebra::linalg::Schur::try_new(dm, 1e-13, 0)?;
    let ev = schur.eigenvalues()?;
    Some(ev.iter().copied().collect())
}

fn cmp_c64_slices(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

impl<S: Coeff> FinAlgebra<S> {
    /// Check that `vals` defines a character: unit goes to 1 and products
    /// split multiplicatively over every basis pair. Exact scalars are
    /// compared by equality, floats within `tol`.
    pub fn verify_character(&self, vals: &[S], tol: f64) -> Result<(), String> {
        let vtol = if S::EXACT { 0.0 } else { tol.max(1e-6) };
        let mut u = S::zero();
        for i in 0..self.dim() {
            u = u + self.unit()[i].clone() * vals[i].clone();
        }
        if !u.approx_eq(&S::one(), vtol) {
            return Err("does not send the unit to 1".to_string());
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let mut lhs = S::zero();
                for (k, c) in self.basis_product(i, j) {
                    lhs = lhs + c.clone() * vals[*k].clone();
                }
                let rhs = vals[i].clone() * vals[j].clone();
                if !lhs.approx_eq(&rhs, vtol) {
                    return Err(format!("multiplicativity fails on basis pair ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    pub fn characters(&self, tol: f64, seed: u64) -> Result<CharacterSearch<S>, AlgebraError> {
        let rad = if S::EXACT {
            self.radical_basis()?
        } else {
            self.radical_basis_with_tol(tol)
        };
        let comm = self.commutator_ideal_basis(tol);
        let mut rows: Vec<Vec<S>> = Vec::new();
        rows.extend((0..rad.rows()).map(|r| rad.row(r).to_vec()));
        rows.extend((0..comm.rows()).map(|r| comm.row(r).to_vec()));
        let ideal = if rows.is_empty() {
            Mat::zeros(0, self.dim())
        } else {
            Mat::from_rows(rows)
        };
        let (q_alg, proj) = self.quotient_by_ideal(&ideal, tol);
        let qd = q_alg.dim();
        if qd == 0 {
            return Ok(CharacterSearch {
                characters: Vec::new(),
                failed: Vec::new(),
            });
        }

        let sep = tol.max(1e-9);
        let mut split: Option<Vec<Vec<Complex64>>> = None;
        'attempts: for attempt in 0..MAX_SPLIT_ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
            let z: Vec<Complex64> = (0..qd)
                .map(|_| Complex64::new(rng.random::<f64>(), rng.random::<f64>()))
                .collect();
            let lz = left_mult_c64(&q_alg, &z);
            let Some(eigs) = eigenvalues_c64(&lz) else {
                continue;
            };
            for a in 0..qd {
                for b in 0..a {
                    if (eigs[a] - eigs[b]).norm() <= sep {
                        continue 'attempts;
                    }
                }
            }
            let mut all = Vec::with_capacity(qd);
            for &lam in &eigs {
                let shifted = Mat::from_fn(qd, qd, |i, j| {
                    let mut v = *lz.at(i, j);
                    if i == j {
                        v -= lam;
                    }
                    v
                });
                let ker = shifted.kernel_basis(sep);
                if ker.cols() == 0 {
                    continue 'attempts;
                }
                let v = ker.col(0);
                let kmax = (0..qd)
                    .max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))
                    .unwrap();
                let mut vals = vec![Complex64::new(0.0, 0.0); qd];
                for (j, slot) in vals.iter_mut().enumerate() {
                    let mut num = Complex64::new(0.0, 0.0);
                    for col in 0..qd {
                        for (k, c) in q_alg.basis_product(j, col) {
                            if *k == kmax {
                                num += v[col] * c.to_c64();
                            }
                        }
                    }
                    *slot = num / v[kmax];
                }
                all.push(vals);
            }
            split = Some(all);
            break;
        }
        let Some(split) = split else {
            return Err(AlgebraError::SplitFailed(MAX_SPLIT_ATTEMPTS as usize));
        };

        let d = self.dim();
        let mut characters: Vec<Vec<S>> = Vec::new();
        let mut failed: Vec<FailedCandidate> = Vec::new();
        'cand: for cq in split {
            let lifted: Vec<Complex64> = (0..d)
                .map(|i| {
                    (0..qd)
                        .map(|k| cq[k] * proj.at(k, i).to_c64())
                        .sum::<Complex64>()
                })
                .collect();
            let mut vals: Vec<S> = Vec::with_capacity(d);
            for c in &lifted {
                let pair = if S::EXACT {
                    let tr = tol.max(1e-6);
                    match (
                        rationalize(c.re, RATIONALIZE_MAX_DEN, tr),
                        rationalize(c.im, RATIONALIZE_MAX_DEN, tr),
                    ) {
                        (Some(re), Some(im)) => Some((re, im)),
                        _ => None,
                    }
                } else {
                    match (rat_from_f64(c.re), rat_from_f64(c.im)) {
                        (Some(re), Some(im)) => Some((re, im)),
                        _ => None,
                    }
                };
                let Some((re, im)) = pair else {
                    failed.push(FailedCandidate {
                        values: lifted.clone(),
                        reason: if S::EXACT {
                            format!(
                                "value {c} has no rational approximation with denominator at most {RATIONALIZE_MAX_DEN}"
                            )
                        } else {
                            format!("value {c} is not finite")
                        },
                    });
                    continue 'cand;
                };
                vals.push(S::from_rat_pair(&re, &im));
            }
            if let Err(reason) = self.verify_character(&vals, tol) {
                failed.push(FailedCandidate {
                    values: lifted,
                    reason,
                });
                continue;
            }
            let dedup_tol = if S::EXACT { 0.0 } else { tol.max(1e-9) };
            if !characters
                .iter()
                .any(|c| c.iter().zip(&vals).all(|(x, y)| x.approx_eq(y, dedup_tol)))
            {
                characters.push(vals);
            }
        }
        characters.sort_by(|a, b| {
            let ca: Vec<Complex64> = a.iter().map(Coeff::to_c64).collect();
            let cb: Vec<Complex64> = b.iter().map(Coeff::to_c64).collect();
            cmp_c64_slices(&ca, &cb)
        });
        failed.sort_by(|a, b| cmp_c64_slices(&a.values, &b.values));
        Ok(CharacterSearch { characters, failed })
    }
}
