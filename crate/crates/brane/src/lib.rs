//! Dynamics of D0/Dp-brane configurations over a settled base: matrix-valued
//! transverse coordinates on a worldvolume lattice, their graphs and fiber
//! admissibility, cluster scattering across rank walls, and a lattice
//! Yang-Mills-Higgs energy with its gradient flow.

mod energy;
mod graph;
mod scatter;
mod target;

pub use energy::{
    commutator_penalty, energy, energy_gradient, gauge_transform, minimize, random_hermitian,
    random_unitary, seeded_map, MinimizeParams, MinimizeReport,
};
pub use graph::{commutativity_defect, graph_of_map, surrogate_dimension, GraphPoint};
pub use scatter::{
    run_scattering, Cluster, D0System, ScatterReport, ScatterTarget, WallEvent, TRANSMISSION_RULE,
};
pub use target::{
    map_existence, wall_admissibility, AdmissibilityViolation, FiberClassReport, TargetModel,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type CMat = DMatrix<Complex64>;

#[derive(Debug, Error)]
pub enum BraneError {
    #[error("bad worldvolume lattice: {0}")]
    BadLattice(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix at site {site}, coordinate {alpha} is not hermitian (defect {defect:e})")]
    NotHermitian { site: usize, alpha: usize, defect: f64 },
    #[error("link at site {site}, axis {axis} is not unitary (defect {defect:e})")]
    NotUnitary { site: usize, axis: usize, defect: f64 },
    #[error("commutativity defect {defect:e} exceeds tolerance {tol:e}, the map has no graph")]
    NoncommutingFiber { defect: f64, tol: f64 },
    #[error("objective increased over a window of {window} iterations ending at {iteration}")]
    Divergence { iteration: usize, window: usize },
    #[error("bad scattering configuration: {0}")]
    BadConfig(String),
    #[error("target model: {0}")]
    Target(String),
}

pub(crate) fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn trace_re(m: &CMat) -> f64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)].re).sum()
}

pub(crate) fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub(crate) fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Rectangular worldvolume lattice in one or two dimensions with a uniform
/// spacing, per-axis boundary conditions, and a diagonal metric.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldvolumeLattice {
    dims: Vec<usize>,
    spacing: f64,
    periodic: Vec<bool>,
    weights: Vec<f64>,
}

impl WorldvolumeLattice {
    pub fn new(
        dims: Vec<usize>,
        spacing: f64,
        periodic: Vec<bool>,
        weights: Vec<f64>,
    ) -> Result<Self, BraneError> {
        let d = dims.len();
        if d == 0 || d > 2 {
            return Err(BraneError::BadLattice(format!(
                "dimension must be 1 or 2, got {d}"
            )));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(BraneError::BadLattice("empty axis".into()));
        }
        if periodic.len() != d || weights.len() != d {
            return Err(BraneError::BadLattice(
                "periodicity and metric weights must match the dimension".into(),
            ));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(BraneError::BadLattice(format!("spacing {spacing} not positive")));
        }
        if weights.iter().any(|h| !(*h > 0.0) || !h.is_finite()) {
            return Err(BraneError::BadLattice("metric weights must be positive".into()));
        }
        Ok(WorldvolumeLattice {
            dims,
            spacing,
            periodic,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.dims
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn periodic(&self) -> &[bool] {
        &self.periodic
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn num_sites(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major coordinates of a site index.
    pub fn coords(&self, site: usize) -> Vec<usize> {
        let mut rest = site;
        let mut out = vec![0; self.dim()];
        for axis in (0..self.dim()).rev() {
            out[axis] = rest % self.dims[axis];
            rest /= self.dims[axis];
        }
        out
    }

    pub fn site(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    /// Neighbor one step forward along `axis`, if the edge exists.
    pub fn forward(&self, site: usize, axis: usize) -> Option<usize> {
        let mut c = self.coords(site);
        if c[axis] + 1 < self.dims[axis] {
            c[axis] += 1;
        } else if self.periodic[axis] {
            c[axis] = 0;
        } else {
            return None;
        }
        Some(self.site(&c))
    }

    pub fn backward(&self, site: usize, axis: usize) -> Option<usize> {
        let mut c = self.coords(site);
        if c[axis] > 0 {
            c[axis] -= 1;
        } else if self.periodic[axis] {
            c[axis] = self.dims[axis] - 1;
        } else {
            return None;
        }
        Some(self.site(&c))
    }
}

/// Transverse coordinates of a rank-`r` brane: `n` hermitian `r x r`
/// matrices per lattice site.
#[derive(Clone, Debug, PartialEq)]
pub struct BraneMap {
    r: usize,
    n: usize,
    m: Vec<Vec<CMat>>,
}

const HERMITIAN_TOL: f64 = 1e-8;

impl BraneMap {
    pub fn new(r: usize, n: usize, m: Vec<Vec<CMat>>) -> Result<Self, BraneError> {
        if r == 0 || n == 0 || m.is_empty() {
            return Err(BraneError::ShapeMismatch(
                "need positive rank, at least one coordinate and one site".into(),
            ));
        }
        for (site, mats) in m.iter().enumerate() {
            if mats.len() != n {
                return Err(BraneError::ShapeMismatch(format!(
                    "site {site} carries {} coordinates, expected {n}",
                    mats.len()
                )));
            }
            for (alpha, mat) in mats.iter().enumerate() {
                if mat.nrows() != r || mat.ncols() != r {
                    return Err(BraneError::ShapeMismatch(format!(
                        "matrix at site {site}, coordinate {alpha} is {}x{}, expected {r}x{r}",
                        mat.nrows(),
                        mat.ncols()
                    )));
                }
                let defect = frob(&(mat - mat.adjoint()));
                if defect > HERMITIAN_TOL * (1.0 + frob(mat)) {
                    return Err(BraneError::NotHermitian { site, alpha, defect });
                }
            }
        }
        Ok(BraneMap { r, n, m })
    }

    pub(crate) fn new_unchecked(r: usize, n: usize, m: Vec<Vec<CMat>>) -> Self {
        BraneMap { r, n, m }
    }

    /// The same matrices at every site.
    pub fn constant(r: usize, n: usize, sites: usize, mats: Vec<CMat>) -> Result<Self, BraneError> {
        if sites == 0 {
            return Err(BraneError::ShapeMismatch("need at least one site".into()));
        }
        BraneMap::new(r, n, vec![mats; sites])
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn coords(&self) -> usize {
        self.n
    }

    pub fn num_sites(&self) -> usize {
        self.m.len()
    }

    pub fn at(&self, site: usize, alpha: usize) -> &CMat {
        &self.m[site][alpha]
    }

    pub(crate) fn at_mut(&mut self, site: usize, alpha: usize) -> &mut CMat {
        &mut self.m[site][alpha]
    }

    pub fn matrices(&self) -> &[Vec<CMat>] {
        &self.m
    }
}

/// Unitary parallel transport on every forward edge of the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeField {
    r: usize,
    links: Vec<Vec<Option<CMat>>>,
}

impl GaugeField {
    pub fn identity(lat: &WorldvolumeLattice, r: usize) -> Self {
        let links = (0..lat.num_sites())
            .map(|site| {
                (0..lat.dim())
                    .map(|axis| lat.forward(site, axis).map(|_| CMat::identity(r, r)))
                    .collect()
            })
            .collect();
        GaugeField { r, links }
    }

    pub fn new(
        lat: &WorldvolumeLattice,
        r: usize,
        links: Vec<Vec<Option<CMat>>>,
        tol: f64,
    ) -> Result<Self, BraneError> {
        if r == 0 {
            return Err(BraneError::ShapeMismatch("gauge rank must be positive".into()));
        }
        if links.len() != lat.num_sites() {
            return Err(BraneError::ShapeMismatch(format!(
                "{} link rows for {} sites",
                links.len(),
                lat.num_sites()
            )));
        }
        for (site, row) in links.iter().enumerate() {
            if row.len() != lat.dim() {
                return Err(BraneError::ShapeMismatch(format!(
                    "site {site} carries {} axes, expected {}",
                    row.len(),
                    lat.dim()
                )));
            }
            for (axis, link) in row.iter().enumerate() {
                match (lat.forward(site, axis), link) {
                    (Some(_), Some(u)) => {
                        if u.nrows() != r || u.ncols() != r {
                            return Err(BraneError::ShapeMismatch(format!(
                                "link at site {site}, axis {axis} is {}x{}, expected {r}x{r}",
                                u.nrows(),
                                u.ncols()
                            )));
                        }
                        let defect = frob(&(u * u.adjoint() - CMat::identity(r, r)));
                        if defect > tol {
                            return Err(BraneError::NotUnitary { site, axis, defect });
                        }
                    }
                    (None, None) => {}
                    (Some(_), None) => {
                        return Err(BraneError::ShapeMismatch(format!(
                            "missing link at site {site}, axis {axis}"
                        )))
                    }
                    (None, Some(_)) => {
                        return Err(BraneError::ShapeMismatch(format!(
                            "link at site {site}, axis {axis} has no edge"
                        )))
                    }
                }
            }
        }
        Ok(GaugeField { r, links })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn link(&self, site: usize, axis: usize) -> Option<&CMat> {
        self.links[site][axis].as_ref()
    }

    pub fn links(&self) -> &[Vec<Option<CMat>>] {
        &self.links
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn site_indexing_round_trips() {
        let lat = WorldvolumeLattice::new(vec![3, 4], 1.0, vec![true, false], vec![1.0, 1.0])
            .unwrap();
        assert_eq!(lat.num_sites(), 12);
        for site in 0..12 {
            assert_eq!(lat.site(&lat.coords(site)), site);
        }
        assert_eq!(lat.coords(7), vec![1, 3]);
    }

    #[test]
    fn neighbors_respect_boundary_conditions() {
        let lat = WorldvolumeLattice::new(vec![3, 2], 0.5, vec![true, false], vec![1.0, 2.0])
            .unwrap();
        // periodic axis wraps
        assert_eq!(lat.forward(lat.site(&[2, 0]), 0), Some(lat.site(&[0, 0])));
        assert_eq!(lat.backward(lat.site(&[0, 1]), 0), Some(lat.site(&[2, 1])));
        // free axis stops
        assert_eq!(lat.forward(lat.site(&[1, 1]), 1), None);
        assert_eq!(lat.backward(lat.site(&[1, 0]), 1), None);
        assert_eq!(lat.forward(lat.site(&[1, 0]), 1), Some(lat.site(&[1, 1])));
    }

    #[test]
    fn lattice_validation_rejects_bad_data() {
        assert!(WorldvolumeLattice::new(vec![2, 2, 2], 1.0, vec![true; 3], vec![1.0; 3]).is_err());
        assert!(WorldvolumeLattice::new(vec![4], 0.0, vec![true], vec![1.0]).is_err());
        assert!(WorldvolumeLattice::new(vec![4], 1.0, vec![true], vec![-1.0]).is_err());
        assert!(WorldvolumeLattice::new(vec![4], 1.0, vec![true, false], vec![1.0]).is_err());
    }

    #[test]
    fn brane_map_checks_shapes_and_hermiticity() {
        let h = CMat::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(-2.0, 0.0),
        ]);
        assert!(BraneMap::new(2, 1, vec![vec![h.clone()]]).is_ok());
        let skew = CMat::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert!(matches!(
            BraneMap::new(2, 1, vec![vec![skew]]),
            Err(BraneError::NotHermitian { .. })
        ));
        assert!(BraneMap::new(3, 1, vec![vec![h]]).is_err());
    }

    #[test]
    fn gauge_field_checks_unitarity_and_edges() {
        let lat = WorldvolumeLattice::new(vec![2], 1.0, vec![false], vec![1.0]).unwrap();
        let id = GaugeField::identity(&lat, 2);
        assert!(id.link(0, 0).is_some());
        assert!(id.link(1, 0).is_none());
        let stretched = vec![
            vec![Some(CMat::identity(2, 2).map(|z| z * 2.0))],
            vec![None],
        ];
        assert!(matches!(
            GaugeField::new(&lat, 2, stretched, 1e-9),
            Err(BraneError::NotUnitary { .. })
        ));
        let missing = vec![vec![None], vec![None]];
        assert!(GaugeField::new(&lat, 2, missing, 1e-9).is_err());
    }
}
