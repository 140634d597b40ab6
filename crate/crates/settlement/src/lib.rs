//! Bundle settlements over a partitioned box base: a vector-bundle rank per
//! block, glued along interior walls by constant full-column-rank matrices.
//! Gluing data induces a clutching quiver on every deeper stratum, and the
//! settlement is usable when each of those quivers is saturated (some vertex
//! absorbs every directed path) and path-consistent.

use std::sync::Arc;

use boxpart::{Cell, PartitionedBase, Violation};
use exactmat::{Coeff, Mat, Rat};
use finalg::FinAlgebra;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SettleError {
    #[error("point error: {0}")]
    BadPoint(String),
    #[error("stratum {0} has an unsaturated clutching quiver")]
    Unsaturated(usize),
    #[error("settlements are not concordant: {0}")]
    NotConcordant(String),
    #[error("{0}")]
    Invalid(String),
}

/// One oriented gluing record: `matrix` maps fibers of block `src` into
/// fibers of block `dst` over the closure of the stratum cell.
#[derive(Clone, Debug)]
pub struct Clutching<S> {
    pub stratum: usize,
    pub src: usize,
    pub dst: usize,
    pub matrix: Mat<S>,
}

#[derive(Clone, Debug)]
pub struct Settlement<S: Coeff> {
    base: Arc<PartitionedBase>,
    ranks: Vec<usize>,
    labels: Vec<Option<String>>,
    clutchings: Vec<Clutching<S>>,
}

#[derive(Clone, Debug)]
pub struct QuiverEdge<S> {
    pub src: usize,
    pub dst: usize,
    pub matrix: Mat<S>,
    /// True when the record lives on a lower-codimension facet and is only
    /// inherited here; false for records attached to this stratum itself.
    pub inherited: bool,
}

#[derive(Clone, Debug)]
pub struct ClutchQuiver<S> {
    pub stratum: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<QuiverEdge<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathViolation {
    pub stratum: usize,
    pub src: usize,
    pub dst: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct FiberSubspace<S> {
    pub block: usize,
    pub dim: usize,
    /// Columns spanning the subspace inside the distinguished fiber.
    pub span: Mat<S>,
    /// Vertex sequence of the composed clutching path used as provenance.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DecoratedFiber<S> {
    pub ambient_dim: usize,
    pub ambient_block: usize,
    pub subspaces: Vec<FiberSubspace<S>>,
    /// Strict inclusions `subspaces[i].span ⊆ subspaces[j].span`, i != j,
    /// established by rank tests.
    pub order: Vec<(usize, usize)>,
}

impl<S: Coeff> ClutchQuiver<S> {
    /// A quiver is saturated when some vertex is reachable from every vertex
    /// by a directed path. Returns the flag and all such vertices.
    pub fn saturation(&self) -> (bool, Vec<usize>) {
        let n = self.vertices.len();
        let index_of = |b: usize| self.vertices.iter().position(|&v| v == b).unwrap();
        let mut reach = vec![vec![false; n]; n];
        for (s, row) in reach.iter_mut().enumerate() {
            row[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for e in &self.edges {
                    let (a, b) = (index_of(e.src), index_of(e.dst));
                    if a == u && !row[b] {
                        row[b] = true;
                        queue.push(b);
                    }
                }
            }
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&v| reach.iter().all(|row| row[v]))
            .map(|v| self.vertices[v])
            .collect();
        (!candidates.is_empty(), candidates)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let index_of = |b: usize| self.vertices.iter().position(|&v| v == b).unwrap();
        let mut adj = vec![Vec::new(); n];
        for (ei, e) in self.edges.iter().enumerate() {
            adj[index_of(e.src)].push(ei);
        }
        for row in &mut adj {
            row.sort_by_key(|&ei| self.edges[ei].dst);
        }
        adj
    }

    /// All simple directed paths from `src` to `dst` (by block id), each as
    /// the vertex sequence and the composed matrix, in lexicographic order of
    /// the sequences. With `src == dst` this enumerates the directed cycles
    /// through the vertex.
    pub fn simple_paths(&self, src: usize, dst: usize) -> Vec<(Vec<usize>, Mat<S>)> {
        let index_of = |b: usize| self.vertices.iter().position(|&v| v == b).unwrap();
        let adj = self.adjacency();
        let (s, t) = (index_of(src), index_of(dst));
        let mut out = Vec::new();
        let mut visited = vec![false; self.vertices.len()];
        visited[s] = true;
        let mut seq = vec![src];
        self.dfs_paths(s, t, &adj, &mut visited, &mut seq, None, &mut out);
        out
    }

    fn dfs_paths(
        &self,
        u: usize,
        t: usize,
        adj: &[Vec<usize>],
        visited: &mut Vec<bool>,
        seq: &mut Vec<usize>,
        acc: Option<&Mat<S>>,
        out: &mut Vec<(Vec<usize>, Mat<S>)>,
    ) {
        for &ei in &adj[u] {
            let e = &self.edges[ei];
            let v = self.vertices.iter().position(|&b| b == e.dst).unwrap();
            let next = match acc {
                None => e.matrix.clone(),
                Some(m) => e.matrix.matmul(m),
            };
            if v == t {
                seq.push(e.dst);
                out.push((seq.clone(), next));
                seq.pop();
            } else if !visited[v] {
                visited[v] = true;
                seq.push(e.dst);
                self.dfs_paths(v, t, adj, visited, seq, Some(&next), out);
                seq.pop();
                visited[v] = false;
            }
        }
    }

    /// Lexicographically first simple path between two block ids, if any.
    pub fn first_path(&self, src: usize, dst: usize) -> Option<(Vec<usize>, Mat<S>)> {
        self.simple_paths(src, dst).into_iter().next()
    }
}

impl<S: Coeff> Settlement<S> {
    pub fn new(
        base: Arc<PartitionedBase>,
        ranks: Vec<usize>,
        labels: Vec<Option<String>>,
        clutchings: Vec<Clutching<S>>,
        tol: f64,
    ) -> Result<Self, Vec<Violation>> {
        let s = Settlement {
            base,
            ranks,
            labels,
            clutchings,
        };
        let report = s.validate(tol);
        if report.is_empty() {
            Ok(s)
        } else {
            Err(report)
        }
    }

    pub fn base(&self) -> &Arc<PartitionedBase> {
        &self.base
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn label_of(&self, block: usize) -> Option<&str> {
        self.labels.get(block).and_then(|l| l.as_deref())
    }

    pub fn clutchings(&self) -> &[Clutching<S>] {
        &self.clutchings
    }

    fn validate(&self, tol: f64) -> Vec<Violation> {
        let mut report = Vec::new();
        let nb = self.base.num_blocks();
        fn viol(kind: &str, message: String) -> Violation {
            Violation {
                kind: kind.to_string(),
                message,
            }
        }
        if self.ranks.len() != nb {
            report.push(viol(
                "rank_count",
                format!("{} ranks for {} blocks", self.ranks.len(), nb),
            ));
            return report;
        }
        if self.labels.len() != nb && !self.labels.is_empty() {
            report.push(viol(
                "label_count",
                format!("{} labels for {} blocks", self.labels.len(), nb),
            ));
        }
        let cells = self.base.cells();
        for (ci, c) in self.clutchings.iter().enumerate() {
            let Some(cell) = cells.get(c.stratum) else {
                report.push(viol(
                    "bad_stratum",
                    format!("clutching {ci}: no cell with id {}", c.stratum),
                ));
                continue;
            };
            if !cell.is_interior() || cell.codim == 0 {
                report.push(viol(
                    "bad_stratum",
                    format!(
                        "clutching {ci}: cell {} is not an interior stratum of positive codimension",
                        c.stratum
                    ),
                ));
                continue;
            }
            let adj = self.base.adjacent_blocks(cell);
            if c.src == c.dst || !adj.contains(&c.src) || !adj.contains(&c.dst) {
                report.push(viol(
                    "bad_endpoints",
                    format!(
                        "clutching {ci}: blocks {} -> {} are not a pair adjacent to cell {}",
                        c.src, c.dst, c.stratum
                    ),
                ));
                continue;
            }
            let (rs, rd) = (self.ranks[c.src], self.ranks[c.dst]);
            if c.matrix.rows() != rd || c.matrix.cols() != rs {
                report.push(viol(
                    "matrix_shape",
                    format!(
                        "clutching {ci}: matrix is {}x{}, expected {}x{}",
                        c.matrix.rows(),
                        c.matrix.cols(),
                        rd,
                        rs
                    ),
                ));
                continue;
            }
            if rs > rd {
                report.push(viol(
                    "orientation",
                    format!(
                        "clutching {ci}: oriented from rank {} down to rank {}",
                        rs, rd
                    ),
                ));
                continue;
            }
            if c.matrix.rank(tol) < rs {
                report.push(viol(
                    "rank_deficient",
                    format!("clutching {ci}: matrix does not embed the rank-{rs} fiber"),
                ));
            }
        }
        for wall in self.base.enumerate_strata(1) {
            let n = self
                .clutchings
                .iter()
                .filter(|c| c.stratum == wall.id)
                .count();
            if n == 0 {
                report.push(viol(
                    "missing_wall_clutching",
                    format!("interior wall {} carries no clutching", wall.id),
                ));
            } else if n > 1 {
                report.push(viol(
                    "duplicate_wall_clutching",
                    format!("interior wall {} carries {} clutchings", wall.id, n),
                ));
            }
        }
        report
    }

    /// The clutching quiver at an interior stratum: adjacent blocks as
    /// vertices, with records inherited from every lower-codimension facet
    /// whose closure contains the stratum, plus records attached directly.
    pub fn clutch_quiver(&self, stratum: usize) -> Result<ClutchQuiver<S>, SettleError> {
        let cells = self.base.cells();
        let Some(cell) = cells.get(stratum) else {
            return Err(SettleError::Invalid(format!("no cell with id {stratum}")));
        };
        if !cell.is_interior() || cell.codim == 0 {
            return Err(SettleError::Invalid(format!(
                "cell {stratum} is not an interior stratum of positive codimension"
            )));
        }
        let mut vertices = self.base.adjacent_blocks(cell);
        vertices.sort_unstable();
        vertices.dedup();
        let mut keyed: Vec<(usize, usize, &Clutching<S>)> = Vec::new();
        for c in &self.clutchings {
            let w = &cells[c.stratum];
            if c.stratum == stratum || (w.codim < cell.codim && closure_contains(w, cell)) {
                keyed.push((w.codim, c.stratum, c));
            }
        }
        keyed.sort_by_key(|(codim, sid, c)| (*codim, *sid, c.src, c.dst));
        let edges = keyed
            .into_iter()
            .map(|(_, sid, c)| QuiverEdge {
                src: c.src,
                dst: c.dst,
                matrix: c.matrix.clone(),
                inherited: sid != stratum,
            })
            .collect();
        Ok(ClutchQuiver {
            stratum,
            vertices,
            edges,
        })
    }

    /// Path-consistency over every interior stratum: all simple directed
    /// paths between an ordered vertex pair must compose to the same matrix,
    /// and directed cycles (edge loops included) must compose to the
    /// identity. Errors out on the first unsaturated stratum.
    pub fn check_consistency(&self, tol: f64) -> Result<Vec<PathViolation>, SettleError> {
        let mut strata: Vec<&Cell> = Vec::new();
        for codim in 1..=self.base.dim() {
            strata.extend(self.base.enumerate_strata(codim));
        }
        strata.sort_by_key(|c| c.id);
        let mut quivers = Vec::with_capacity(strata.len());
        for cell in &strata {
            let q = self.clutch_quiver(cell.id)?;
            if !q.saturation().0 {
                return Err(SettleError::Unsaturated(cell.id));
            }
            quivers.push(q);
        }
        let mut violations: Vec<PathViolation> = quivers
            .par_iter()
            .flat_map_iter(|q| check_quiver_paths(q, tol))
            .collect();
        violations.sort_by_key(|v| (v.stratum, v.src, v.dst));
        Ok(violations)
    }

    fn locate_interior(&self, point: &[Rat]) -> Result<&Cell, SettleError> {
        let cell = self.base.locate(point).map_err(SettleError::BadPoint)?;
        if !cell.is_interior() {
            return Err(SettleError::BadPoint(
                "point lies on the base boundary".to_string(),
            ));
        }
        Ok(cell)
    }

    /// The distinguished block at a point: the quiver vertex reachable from
    /// every vertex. Ties (possible with directed cycles) are broken by least
    /// block id and flagged.
    pub fn distinguished_block(&self, point: &[Rat]) -> Result<(usize, bool), SettleError> {
        let cell = self.locate_interior(point)?;
        if cell.is_block() {
            return Ok((self.base.block_id_of_cell(cell.id).unwrap(), false));
        }
        let q = self.clutch_quiver(cell.id)?;
        let (ok, candidates) = q.saturation();
        if !ok {
            return Err(SettleError::Unsaturated(cell.id));
        }
        Ok((candidates[0], candidates.len() > 1))
    }

    /// The image subspaces of every adjacent fiber inside the distinguished
    /// fiber, ordered by inclusion.
    pub fn decorated_fiber(&self, point: &[Rat], tol: f64) -> Result<DecoratedFiber<S>, SettleError> {
        let cell = self.locate_interior(point)?;
        if cell.is_block() {
            let block = self.base.block_id_of_cell(cell.id).unwrap();
            let r = self.ranks[block];
            return Ok(DecoratedFiber {
                ambient_dim: r,
                ambient_block: block,
                subspaces: vec![FiberSubspace {
                    block,
                    dim: r,
                    span: Mat::identity(r),
                    path: vec![block],
                }],
                order: Vec::new(),
            });
        }
        let q = self.clutch_quiver(cell.id)?;
        let (ok, candidates) = q.saturation();
        if !ok {
            return Err(SettleError::Unsaturated(cell.id));
        }
        let star = candidates[0];
        let ambient = self.ranks[star];
        let mut subspaces = Vec::new();
        for &v in &q.vertices {
            if v == star {
                subspaces.push(FiberSubspace {
                    block: v,
                    dim: ambient,
                    span: Mat::identity(ambient),
                    path: vec![v],
                });
                continue;
            }
            let (path, m) = q.first_path(v, star).expect("saturated quiver");
            subspaces.push(FiberSubspace {
                block: v,
                dim: m.rank(tol),
                span: m,
                path,
            });
        }
        let mut order = Vec::new();
        for i in 0..subspaces.len() {
            for j in 0..subspaces.len() {
                if i == j {
                    continue;
                }
                let a = &subspaces[i].span;
                let b = &subspaces[j].span;
                if b.hstack(a).rank(tol) == subspaces[j].dim {
                    order.push((i, j));
                }
            }
        }
        Ok(DecoratedFiber {
            ambient_dim: ambient,
            ambient_block: star,
            subspaces,
            order,
        })
    }

    /// The algebra of tuples of endomorphisms, one square matrix per quiver
    /// vertex, intertwining every clutching edge; componentwise composition.
    pub fn endomorphism_fiber(
        &self,
        point: &[Rat],
        tol: f64,
    ) -> Result<FinAlgebra<S>, SettleError> {
        let cell = self.locate_interior(point)?;
        let (vertices, edges): (Vec<usize>, Vec<QuiverEdge<S>>) = if cell.is_block() {
            (
                vec![self.base.block_id_of_cell(cell.id).unwrap()],
                Vec::new(),
            )
        } else {
            let q = self.clutch_quiver(cell.id)?;
            if !q.saturation().0 {
                return Err(SettleError::Unsaturated(cell.id));
            }
            (q.vertices, q.edges)
        };
        let ranks: Vec<usize> = vertices.iter().map(|&v| self.ranks[v]).collect();
        let mut offset = vec![0usize; vertices.len()];
        for i in 1..vertices.len() {
            offset[i] = offset[i - 1] + ranks[i - 1] * ranks[i - 1];
        }
        let total: usize = ranks.iter().map(|r| r * r).sum();
        let index_of = |b: usize| vertices.iter().position(|&v| v == b).unwrap();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for e in &edges {
            let (u, v) = (index_of(e.src), index_of(e.dst));
            let (ru, rv) = (ranks[u], ranks[v]);
            for a in 0..rv {
                for b in 0..ru {
                    // (M_v h - h M_u)[a, b] = 0
                    let mut row = vec![S::zero(); total];
                    for c in 0..rv {
                        let idx = offset[v] + a * rv + c;
                        row[idx] = row[idx].clone() + e.matrix.at(c, b).clone();
                    }
                    for c in 0..ru {
                        let idx = offset[u] + c * ru + b;
                        row[idx] = row[idx].clone() - e.matrix.at(a, c).clone();
                    }
                    rows.push(row);
                }
            }
        }
        let system = if rows.is_empty() {
            Mat::zeros(0, total)
        } else {
            Mat::from_rows(rows)
        };
        let kernel = system.kernel_basis(tol);
        let dim = kernel.cols();
        let tuple_product = |x: &[S], y: &[S]| -> Vec<S> {
            let mut out = vec![S::zero(); total];
            for (vi, &r) in ranks.iter().enumerate() {
                for a in 0..r {
                    for b in 0..r {
                        let mut s = S::zero();
                        for c in 0..r {
                            s = s + x[offset[vi] + a * r + c].clone()
                                * y[offset[vi] + c * r + b].clone();
                        }
                        out[offset[vi] + a * r + b] = s;
                    }
                }
            }
            out
        };
        let mut rhs: Mat<S> = Mat::zeros(total, dim * dim + 1);
        for i in 0..dim {
            let x = kernel.col(i);
            for j in 0..dim {
                let y = kernel.col(j);
                let p = tuple_product(&x, &y);
                for (k, val) in p.into_iter().enumerate() {
                    rhs.set(k, i * dim + j, val);
                }
            }
        }
        for (vi, &r) in ranks.iter().enumerate() {
            for a in 0..r {
                rhs.set(offset[vi] + a * r + a, dim * dim, S::one());
            }
        }
        let coords = kernel.solve(&rhs, tol).ok_or_else(|| {
            SettleError::Invalid("endomorphism products left the intertwiner space".to_string())
        })?;
        let mut sc = vec![S::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    sc[(i * dim + j) * dim + k] = coords.at(k, i * dim + j).clone();
                }
            }
        }
        let unit = coords.col(dim * dim);
        FinAlgebra::new(dim, unit, sc, None).map_err(|e| SettleError::Invalid(e.to_string()))
    }

    /// Blockwise direct sum of two concordant settlements: ranks add and
    /// matched clutchings become block-diagonal.
    pub fn direct_sum(&self, other: &Settlement<S>, tol: f64) -> Result<Settlement<S>, SettleError> {
        let pairs = self.concordant_pairs(other)?;
        let ranks = self
            .ranks
            .iter()
            .zip(&other.ranks)
            .map(|(a, b)| a + b)
            .collect();
        let clutchings = pairs
            .into_iter()
            .map(|(a, b)| Clutching {
                stratum: a.stratum,
                src: a.src,
                dst: a.dst,
                matrix: Mat::block_diag(&[a.matrix.clone(), b.matrix.clone()]),
            })
            .collect();
        Settlement::new(
            self.base.clone(),
            ranks,
            combine_labels(&self.labels, &other.labels, "+"),
            clutchings,
            tol,
        )
        .map_err(|v| SettleError::Invalid(join_violations(&v)))
    }

    /// Blockwise tensor product: ranks multiply and matched clutchings become
    /// Kronecker products.
    pub fn tensor(&self, other: &Settlement<S>, tol: f64) -> Result<Settlement<S>, SettleError> {
        let pairs = self.concordant_pairs(other)?;
        let ranks = self
            .ranks
            .iter()
            .zip(&other.ranks)
            .map(|(a, b)| a * b)
            .collect();
        let clutchings = pairs
            .into_iter()
            .map(|(a, b)| Clutching {
                stratum: a.stratum,
                src: a.src,
                dst: a.dst,
                matrix: a.matrix.kronecker(&b.matrix),
            })
            .collect();
        Settlement::new(
            self.base.clone(),
            ranks,
            combine_labels(&self.labels, &other.labels, "*"),
            clutchings,
            tol,
        )
        .map_err(|v| SettleError::Invalid(join_violations(&v)))
    }

    /// Concordance: same partitioned base and identical quiver shape, i.e.
    /// the same multiset of (stratum, src, dst) clutching triples.
    fn concordant_pairs<'a>(
        &'a self,
        other: &'a Settlement<S>,
    ) -> Result<Vec<(&'a Clutching<S>, &'a Clutching<S>)>, SettleError> {
        if !Arc::ptr_eq(&self.base, &other.base) && *self.base != *other.base {
            return Err(SettleError::NotConcordant(
                "different base partitions".to_string(),
            ));
        }
        let key = |c: &Clutching<S>| (c.stratum, c.src, c.dst);
        let mut a: Vec<&Clutching<S>> = self.clutchings.iter().collect();
        let mut b: Vec<&Clutching<S>> = other.clutchings.iter().collect();
        a.sort_by_key(|c| key(c));
        b.sort_by_key(|c| key(c));
        if a.len() != b.len() {
            return Err(SettleError::NotConcordant(format!(
                "{} clutchings versus {}",
                a.len(),
                b.len()
            )));
        }
        for (x, y) in a.iter().zip(&b) {
            if key(x) != key(y) {
                return Err(SettleError::NotConcordant(format!(
                    "clutching quivers differ at stratum {} ({} -> {} versus {} -> {})",
                    x.stratum, x.src, x.dst, y.src, y.dst
                )));
            }
        }
        Ok(a.into_iter().zip(b).collect())
    }
}

/// Does the closure of interior cell `w` contain cell `z`? Per axis the slot
/// must agree, or `w` must be an interval slot and `z` one of its endpoints.
fn closure_contains(w: &Cell, z: &Cell) -> bool {
    w.slots.iter().zip(&z.slots).all(|(&sw, &sz)| {
        sw == sz || (sw % 2 == 1 && (sz + 1 == sw || sz == sw + 1))
    })
}

fn check_quiver_paths<S: Coeff>(q: &ClutchQuiver<S>, tol: f64) -> Vec<PathViolation> {
    let mut out = Vec::new();
    for e in &q.edges {
        if e.src == e.dst && !e.matrix.approx_eq(&Mat::identity(e.matrix.rows()), tol) {
            out.push(PathViolation {
                stratum: q.stratum,
                src: e.src,
                dst: e.dst,
                message: format!("edge loop at block {} is not the identity", e.src),
            });
        }
    }
    for &u in &q.vertices {
        for &v in &q.vertices {
            if u == v {
                // simple cycles based at their least vertex must be identity
                let cycles = q.simple_paths(u, u);
                for (seq, m) in cycles {
                    if seq.len() <= 2 {
                        continue;
                    }
                    if seq.iter().any(|&w| w < u) {
                        continue;
                    }
                    if !m.approx_eq(&Mat::identity(m.rows()), tol) {
                        out.push(PathViolation {
                            stratum: q.stratum,
                            src: u,
                            dst: u,
                            message: format!(
                                "cycle {:?} does not compose to the identity",
                                seq
                            ),
                        });
                    }
                }
                continue;
            }
            let paths = q.simple_paths(u, v);
            if paths.len() < 2 {
                continue;
            }
            let (ref_seq, ref_mat) = &paths[0];
            for (seq, m) in &paths[1..] {
                if !m.approx_eq(ref_mat, tol) {
                    out.push(PathViolation {
                        stratum: q.stratum,
                        src: u,
                        dst: v,
                        message: format!(
                            "paths {:?} and {:?} compose to different matrices",
                            ref_seq, seq
                        ),
                    });
                }
            }
        }
    }
    out
}

fn combine_labels(
    a: &[Option<String>],
    b: &[Option<String>],
    op: &str,
) -> Vec<Option<String>> {
    if a.len() != b.len() {
        return Vec::new();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => Some(format!("{x}{op}{y}")),
            _ => None,
        })
        .collect()
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
