//! Rational polyhedral cones given by generating rays, with exact
//! membership tests, convexity checks, and Hilbert bases of
//! inequality-cut sublattices.

use exactmat::{GaussRat, Mat, Rat};
use num_integer::Integer;

use crate::snf::{self, IntMat};
use crate::DimerError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<Vec<i64>>,
    dim: usize,
}

fn to_exact(v: &[i64]) -> Vec<GaussRat> {
    v.iter().map(|&x| GaussRat::from_int(x)).collect()
}

fn is_nonneg_real(g: &GaussRat) -> bool {
    g.im == Rat::from_integer(0.into()) && g.re >= Rat::from_integer(0.into())
}

impl Cone {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>) -> Result<Self, DimerError> {
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for r in &rays {
            if r.len() != dim {
                return Err(DimerError::BadInput(format!(
                    "ray has {} coordinates, ambient rank is {dim}",
                    r.len()
                )));
            }
            let g = gcd_of(r);
            if g == 0 {
                continue;
            }
            let p: Vec<i64> = r.iter().map(|&x| x / g).collect();
            if !kept.contains(&p) {
                kept.push(p);
            }
        }
        if kept.len() > 24 {
            return Err(DimerError::BadInput(format!("{} rays exceed the supported bound", kept.len())));
        }
        kept.sort();
        Ok(Cone { rays: kept, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Exact membership: v is a nonnegative rational combination of the
    /// rays iff it is one of a linearly independent subset.
    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if self.rays.is_empty() {
            return false;
        }
        let target = Mat::col_vec(to_exact(v));
        let n = self.rays.len();
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            if idx.len() > self.dim {
                continue;
            }
            let sub = Mat::from_fn(self.dim, idx.len(), |i, j| {
                GaussRat::from_int(self.rays[idx[j]][i])
            });
            if sub.rank(0.0) != idx.len() {
                continue;
            }
            if let Some(sol) = sub.solve(&target, 0.0) {
                if sol.entries().iter().all(is_nonneg_real) {
                    return true;
                }
            }
        }
        false
    }

    /// A cone is strongly convex iff no nonzero element has its negative
    /// in the cone; it suffices to test the generating rays.
    pub fn strongly_convex(&self) -> bool {
        self.rays.iter().all(|r| {
            let neg: Vec<i64> = r.iter().map(|&x| -x).collect();
            !self.contains(&neg)
        })
    }

    /// Pairing of a dual vector (coordinates in the dual basis) with
    /// every ray.
    pub fn pairings(&self, u: &[i64]) -> Vec<i64> {
        self.rays
            .iter()
            .map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn in_dual(&self, u: &[i64]) -> bool {
        self.pairings(u).iter().all(|&p| p >= 0)
    }
}

/// Extreme rays of {c in Z^m : a c >= 0}, primitive, sorted. Requires the
/// cone to be pointed (integer kernel of a must vanish).
pub fn extreme_rays(a: &IntMat) -> Result<Vec<Vec<i64>>, DimerError> {
    let m = a.cols;
    if m == 0 {
        return Ok(Vec::new());
    }
    if !snf::kernel(a).is_empty() {
        return Err(DimerError::NotPointed);
    }
    let feasible = |z: &[i64]| a.mul_vec(z).iter().all(|&x| x >= 0);
    let mut rays: Vec<Vec<i64>> = Vec::new();
    if m == 1 {
        for z in [vec![1], vec![-1]] {
            if feasible(&z) && !rays.contains(&z) {
                rays.push(z);
            }
        }
        rays.sort();
        return Ok(rays);
    }
    let n = a.rows;
    assert!(n <= 24, "facet enumeration bound exceeded");
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) != m - 1 {
            continue;
        }
        let sub = IntMat::from_rows(
            (0..n).filter(|k| mask >> k & 1 == 1).map(|k| a.row(k).to_vec()).collect(),
        );
        let ker = snf::kernel(&sub);
        if ker.len() != 1 {
            continue;
        }
        let z = snf::primitive(&ker[0]).unwrap();
        let neg: Vec<i64> = z.iter().map(|&x| -x).collect();
        for cand in [z, neg] {
            if feasible(&cand) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    rays.sort();
    Ok(rays)
}

/// Hilbert basis of {c in Z^m : a c >= 0} by graded enumeration. The
/// positive grading is the sum of all inequality values; `degree_cap`
/// must dominate the certified saturation bound or the call fails.
pub fn hilbert_basis(a: &IntMat, degree_cap: u32) -> Result<Vec<Vec<i64>>, DimerError> {
    let m = a.cols;
    if m == 0 {
        return Ok(Vec::new());
    }
    let rays = extreme_rays(a)?;
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let weight: Vec<i64> = (0..m).map(|j| (0..a.rows).map(|i| a[(i, j)]).sum()).collect();
    let deg = |c: &[i64]| -> i64 { weight.iter().zip(c).map(|(w, x)| w * x).sum() };
    let mut ray_degs: Vec<i64> = rays.iter().map(|r| deg(r)).collect();
    ray_degs.sort_unstable_by(|a, b| b.cmp(a));
    let need: i64 = ray_degs.iter().take(m).sum();
    if need > degree_cap as i64 {
        return Err(DimerError::NotSaturated(degree_cap));
    }
    let coord_bound = need
        * rays
            .iter()
            .flat_map(|r| r.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(1)
            .max(1);

    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut cursor = vec![-coord_bound; m];
    'outer: loop {
        let c = cursor.clone();
        if c.iter().any(|&x| x != 0) {
            let vals = a.mul_vec(&c);
            if vals.iter().all(|&x| x >= 0) && deg(&c) <= need {
                candidates.push(c);
            }
        }
        for k in 0..m {
            cursor[k] += 1;
            if cursor[k] <= coord_bound {
                continue 'outer;
            }
            cursor[k] = -coord_bound;
        }
        break;
    }
    candidates.sort_by(|p, q| deg(p).cmp(&deg(q)).then_with(|| p.cmp(q)));

    let mut basis: Vec<Vec<i64>> = Vec::new();
    for c in candidates {
        let reducible = basis.iter().any(|g| {
            let diff: Vec<i64> = c.iter().zip(g).map(|(a, b)| a - b).collect();
            diff.iter().any(|&x| x != 0) && a.mul_vec(&diff).iter().all(|&x| x >= 0)
        });
        if !reducible {
            basis.push(c);
        }
    }
    Ok(basis)
}

/// All integer points of the box |v_i| <= bound.
pub fn box_points(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    if dim == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cursor = vec![-bound; dim];
    'outer: loop {
        out.push(cursor.clone());
        for k in 0..dim {
            cursor[k] += 1;
            if cursor[k] <= bound {
                continue 'outer;
            }
            cursor[k] = -bound;
        }
        break;
    }
    out
}

/// Nonzero integer points of the box |v_i| <= bound that satisfy
/// g . v >= 0 for every row g of `constraints`.
pub fn dual_box_sample(constraints: &[Vec<i64>], dim: usize, bound: i64) -> Vec<Vec<i64>> {
    box_points(dim, bound)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| {
            constraints.iter().all(|g| g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() >= 0)
        })
        .collect()
}

/// Lexicographic convex hull of planar integer points, counterclockwise.
pub fn convex_hull_2d(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}
