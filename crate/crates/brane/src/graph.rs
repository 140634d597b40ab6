use crate::{commutator, frob, hermitian_part, BraneError, BraneMap, CMat};
use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

/// Largest Frobenius norm of a coordinate commutator over all sites.
pub fn commutativity_defect(map: &BraneMap) -> f64 {
    (0..map.num_sites())
        .map(|site| site_defect(map, site))
        .fold(0.0, f64::max)
}

pub(crate) fn site_defect(map: &BraneMap, site: usize) -> f64 {
    let mut worst = 0.0f64;
    for alpha in 0..map.coords() {
        for beta in alpha + 1..map.coords() {
            worst = worst.max(frob(&commutator(map.at(site, alpha), map.at(site, beta))));
        }
    }
    worst
}

/// A point of the graph of an (almost) commuting map together with the
/// dimension of its joint eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPoint {
    pub point: Vec<f64>,
    pub multiplicity: usize,
}

struct EigenBlock {
    basis: CMat,
    vals: Vec<f64>,
}

/// Joint spectrum of the coordinate matrices at one site. Eigenvalues closer
/// than `tol` are treated as equal, so the multiplicities always add up to
/// the brane rank.
pub fn graph_of_map(
    map: &BraneMap,
    site: usize,
    tol: f64,
) -> Result<Vec<GraphPoint>, BraneError> {
    if site >= map.num_sites() {
        return Err(BraneError::ShapeMismatch(format!(
            "site {site} out of range for {} sites",
            map.num_sites()
        )));
    }
    let defect = site_defect(map, site);
    if defect > tol {
        return Err(BraneError::NoncommutingFiber { defect, tol });
    }
    let r = map.rank();
    let mut blocks = vec![EigenBlock {
        basis: CMat::identity(r, r),
        vals: vec![],
    }];
    for alpha in 0..map.coords() {
        let mat = map.at(site, alpha);
        let mut refined = Vec::new();
        for block in blocks {
            let k = block.basis.ncols();
            let h = hermitian_part(&(block.basis.adjoint() * mat * &block.basis));
            let eig = SymmetricEigen::new(h);
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
            let mut start = 0;
            while start < k {
                let mut end = start + 1;
                while end < k
                    && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= tol
                {
                    end += 1;
                }
                let group = &order[start..end];
                let mut sub = CMat::zeros(k, group.len());
                for (col, &src) in group.iter().enumerate() {
                    sub.set_column(col, &eig.eigenvectors.column(src));
                }
                let mean = group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>()
                    / group.len() as f64;
                let mut vals = block.vals.clone();
                vals.push(mean);
                refined.push(EigenBlock {
                    basis: &block.basis * sub,
                    vals,
                });
                start = end;
            }
        }
        blocks = refined;
    }
    // merge joint values that ended up within tol of each other
    let mut points: Vec<(Vec<f64>, usize)> = blocks
        .into_iter()
        .map(|b| (b.vals, b.basis.ncols()))
        .collect();
    let mut merged: Vec<(Vec<f64>, usize)> = Vec::new();
    'outer: for (p, mult) in points.drain(..) {
        for (q, qmult) in merged.iter_mut() {
            let close = p
                .iter()
                .zip(q.iter())
                .all(|(a, b)| (a - b).abs() <= tol);
            if close {
                let total = *qmult + mult;
                for (c, pc) in q.iter_mut().zip(&p) {
                    *c = (*c * *qmult as f64 + pc * mult as f64) / total as f64;
                }
                *qmult = total;
                continue 'outer;
            }
        }
        merged.push((p, mult));
    }
    merged.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(merged
        .into_iter()
        .map(|(point, multiplicity)| GraphPoint { point, multiplicity })
        .collect())
}

/// Dimension of the unital algebra generated by the coordinate matrices at
/// one site, computed by closing the linear span under right multiplication.
pub fn surrogate_dimension(
    map: &BraneMap,
    site: usize,
    tol: f64,
) -> Result<usize, BraneError> {
    if site >= map.num_sites() {
        return Err(BraneError::ShapeMismatch(format!(
            "site {site} out of range for {} sites",
            map.num_sites()
        )));
    }
    let r = map.rank();
    let mut ortho: Vec<DVector<Complex64>> = Vec::new();
    let mut elems: Vec<CMat> = Vec::new();
    let admit = |m: &CMat, ortho: &mut Vec<DVector<Complex64>>, elems: &mut Vec<CMat>| {
        let mut v = DVector::from_iterator(r * r, m.iter().cloned());
        let scale = v.norm().max(1.0);
        for b in ortho.iter() {
            let coeff = b.dotc(&v);
            v -= b.map(|z| z * coeff);
        }
        if v.norm() > tol * scale {
            let norm = v.norm();
            ortho.push(v.map(|z| z / norm));
            elems.push(m.clone());
            true
        } else {
            false
        }
    };
    admit(&CMat::identity(r, r), &mut ortho, &mut elems);
    let gens: Vec<CMat> = (0..map.coords())
        .map(|alpha| map.at(site, alpha).clone())
        .collect();
    for g in &gens {
        admit(g, &mut ortho, &mut elems);
    }
    let mut next = 0;
    while next < elems.len() && elems.len() < r * r {
        let word = elems[next].clone();
        for g in &gens {
            admit(&(&word * g), &mut ortho, &mut elems);
        }
        next += 1;
    }
    Ok(elems.len())
}
