//! Lattice data of a dual quiver and the block-graded toric algebra it
//! generates: perfect-matching cones, consistency conditions, center
//! presentations, and superpotential derivative checks.

use exactmat::Coeff;

use crate::cone::{self, Cone};
use crate::snf::{self, IntMat};
use crate::{
    dual_quiver, perfect_matchings, viol, DimerError, DimerModel, DualQuiver, Violation,
};

/// Sublattice of arrow cochains whose face sums are constant, together
/// with the induced grading of its dual by quiver vertices.
pub struct LatticeData {
    /// Columns form a basis; rows index arrows.
    pub n_basis: IntMat,
    pub rank: usize,
    pub rank_d1: usize,
    /// Row per quiver vertex; pairing a dual class against row i gives
    /// its degree at vertex i.
    pub boundary: IntMat,
    /// Per arrow, the evaluation functional in dual coordinates.
    pub arrow_classes: Vec<Vec<i64>>,
}

pub fn lattice_data(q: &DualQuiver) -> Result<LatticeData, DimerError> {
    let d1 = q.d1();
    let q1 = q.arrows.len();
    let q2 = q.faces.len();
    if snf::solve(&d1, &vec![1; q2]).is_none() {
        return Err(DimerError::NotExact);
    }
    let mut aug = IntMat::zeros(q2, q1 + 1);
    for i in 0..q2 {
        for j in 0..q1 {
            aug[(i, j)] = d1[(i, j)];
        }
        aug[(i, q1)] = -1;
    }
    let ker = snf::kernel(&aug);
    let rank = ker.len();
    let mut n_basis = IntMat::zeros(q1, rank);
    for (k, v) in ker.iter().enumerate() {
        for a in 0..q1 {
            n_basis[(a, k)] = v[a];
        }
    }
    let d0 = q.d0();
    let mut boundary = IntMat::zeros(q.num_vertices, rank);
    for i in 0..q.num_vertices {
        let c = snf::solve(&n_basis, &d0.col(i))
            .ok_or_else(|| DimerError::BadInput(format!("vertex difference {i} is not a constant-sum cochain")))?;
        for k in 0..rank {
            boundary[(i, k)] = c[k];
        }
    }
    let arrow_classes = (0..q1).map(|a| n_basis.row(a).to_vec()).collect();
    Ok(LatticeData { n_basis, rank, rank_d1: snf::rank(&d1), boundary, arrow_classes })
}

/// Cone spanned by the perfect matchings, in basis coordinates.
pub fn matching_cone(
    d: &DimerModel,
    lat: &LatticeData,
    matchings: &[Vec<usize>],
) -> Result<Cone, DimerError> {
    let mut rays = Vec::new();
    for m in matchings {
        let mut xi = vec![0i64; d.edges.len()];
        for &e in m {
            xi[e] = 1;
        }
        let c = snf::solve(&lat.n_basis, &xi)
            .ok_or_else(|| DimerError::BadInput("matching cochain escapes the lattice".into()))?;
        rays.push(c);
    }
    Cone::new(lat.rank, rays)
}

pub struct NCToricData {
    pub num_blocks: usize,
    /// Tail and head of each arrow, aligned with the arrow classes.
    pub arrow_ends: Vec<(usize, usize)>,
    pub lattice: LatticeData,
    pub cone: Cone,
    pub matchings: Vec<Vec<usize>>,
}

pub fn nc_toric_data(d: &DimerModel, matching_limit: usize) -> Result<NCToricData, DimerError> {
    let q = dual_quiver(d).map_err(|viols| {
        let msgs: Vec<String> = viols.iter().map(|v| v.to_string()).collect();
        DimerError::BadInput(msgs.join("; "))
    })?;
    let lattice = lattice_data(&q)?;
    let matchings = perfect_matchings(d, matching_limit)?;
    let cone = matching_cone(d, &lattice, &matchings)?;
    Ok(NCToricData {
        num_blocks: q.num_vertices,
        arrow_ends: q.arrows.iter().map(|a| (a.tail, a.head)).collect(),
        lattice,
        cone,
        matchings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: String,
    pub status: ConditionStatus,
    pub detail: String,
}

fn report(name: &str, status: ConditionStatus, detail: String) -> ConditionReport {
    ConditionReport { name: name.to_string(), status, detail }
}

fn block_target(num_blocks: usize, src: usize, dst: usize) -> Vec<i64> {
    let mut t = vec![0i64; num_blocks];
    t[src] -= 1;
    t[dst] += 1;
    t
}

/// Dual classes graded by the pair (src, dst) found within the search
/// box, nonnegative against the cone.
fn graded_dual_sample(data: &NCToricData, src: usize, dst: usize, depth: i64) -> Option<Vec<Vec<i64>>> {
    let target = block_target(data.num_blocks, src, dst);
    let u0 = snf::solve(&data.lattice.boundary, &target)?;
    let kernel = snf::kernel(&data.lattice.boundary);
    let mut found = Vec::new();
    for c in cone::box_points(kernel.len(), depth) {
        let u: Vec<i64> = (0..data.lattice.rank)
            .map(|t| u0[t] + kernel.iter().zip(&c).map(|(k, cc)| k[t] * cc).sum::<i64>())
            .collect();
        if data.cone.in_dual(&u) {
            found.push(u);
        }
    }
    found.sort();
    found.dedup();
    Some(found)
}

/// Three-valued consistency report: strong convexity is decided exactly,
/// the block-piece and dual-comparison conditions are certified up to
/// the search depth.
pub fn validate_nc_toric_data(data: &NCToricData, depth: u32) -> Vec<ConditionReport> {
    use ConditionStatus::*;
    let mut out = Vec::new();
    let convex = data.cone.strongly_convex();
    out.push(report(
        "strong_convexity",
        if convex { Pass } else { Fail },
        if convex {
            "the matching cone contains no line".into()
        } else {
            "the cone contains a nonzero vector together with its negative".into()
        },
    ));

    let n = data.num_blocks;
    let mut pieces = Vec::new();
    let mut piece_status = Pass;
    let mut piece_detail = format!("all {} ordered block pairs witnessed at depth {depth}", n * n);
    for i in 0..n {
        for j in 0..n {
            match graded_dual_sample(data, i, j, depth as i64) {
                None => {
                    piece_status = Fail;
                    piece_detail = format!("block piece ({i},{j}) admits no integral class at all");
                }
                Some(found) if found.is_empty() => {
                    if piece_status == Pass {
                        piece_status = Unresolved;
                        piece_detail =
                            format!("block piece ({i},{j}) has no witness within depth {depth}");
                    }
                }
                Some(found) => pieces.extend(found),
            }
        }
    }
    pieces.retain(|u| u.iter().any(|&x| x != 0));
    pieces.sort();
    pieces.dedup();
    out.push(report("block_pieces_nonempty", piece_status, piece_detail));

    let mut ray_status = Pass;
    let mut ray_detail = "every cone ray pairs nonnegatively with the sampled classes".to_string();
    'rays: for r in data.cone.rays() {
        for g in &pieces {
            if g.iter().zip(r).map(|(a, b)| a * b).sum::<i64>() < 0 {
                ray_status = Fail;
                ray_detail = format!("ray {r:?} pairs negatively with class {g:?}");
                break 'rays;
            }
        }
    }
    out.push(report("rays_in_sampled_dual", ray_status, ray_detail));

    let mut dual_status = Pass;
    let mut dual_detail = format!(
        "all lattice points up to depth {depth} dual to the sampled classes lie in the cone"
    );
    for v in cone::dual_box_sample(&pieces, data.lattice.rank, depth as i64) {
        if !data.cone.contains(&v) {
            dual_status = Unresolved;
            dual_detail = format!(
                "{v:?} pairs nonnegatively with every sampled class but was not certified inside the cone"
            );
            break;
        }
    }
    out.push(report("dual_sample_in_cone", dual_status, dual_detail));
    out
}

pub struct CenterPresentation {
    /// Dual classes of degree zero at every block, nonnegative on the
    /// cone; a minimal generating set for that semigroup.
    pub generators: Vec<Vec<i64>>,
    /// Integer combinations of the generators that vanish.
    pub relations: Vec<Vec<i64>>,
}

pub fn center_presentation(
    data: &NCToricData,
    degree_cap: u32,
) -> Result<CenterPresentation, DimerError> {
    let kernel = snf::kernel(&data.lattice.boundary);
    let m = kernel.len();
    if m == 0 {
        return Ok(CenterPresentation { generators: Vec::new(), relations: Vec::new() });
    }
    let rays = data.cone.rays();
    let mut pairing = IntMat::zeros(rays.len(), m);
    for (k, r) in rays.iter().enumerate() {
        for (j, kj) in kernel.iter().enumerate() {
            pairing[(k, j)] = kj.iter().zip(r).map(|(a, b)| a * b).sum();
        }
    }
    let basis_c = cone::hilbert_basis(&pairing, degree_cap)?;
    let mut generators: Vec<Vec<i64>> = basis_c
        .iter()
        .map(|c| {
            (0..data.lattice.rank)
                .map(|t| kernel.iter().zip(c).map(|(k, cc)| k[t] * cc).sum())
                .collect()
        })
        .collect();
    let degree = |u: &Vec<i64>| -> i64 {
        rays.iter().map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum::<i64>()).sum()
    };
    generators.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));

    let relations = if generators.is_empty() {
        Vec::new()
    } else {
        let mut gen_mat = IntMat::zeros(data.lattice.rank, generators.len());
        for (g, u) in generators.iter().enumerate() {
            for t in 0..data.lattice.rank {
                gen_mat[(t, g)] = u[t];
            }
        }
        let mut rels: Vec<Vec<i64>> =
            snf::kernel(&gen_mat).iter().filter_map(|z| snf::primitive(z)).collect();
        rels.sort();
        rels
    };
    Ok(CenterPresentation { generators, relations })
}

/// For every arrow, the two complementary paths of its superpotential
/// derivative must land on the same dual class.
pub fn jacobian_consistency(q: &DualQuiver, lat: &LatticeData) -> Vec<Violation> {
    let mut out = Vec::new();
    for a in 0..q.arrows.len() {
        let mut sides = [vec![0i64; lat.rank], vec![0i64; lat.rank]];
        for face in &q.faces {
            if !face.arrows.contains(&a) {
                continue;
            }
            let side = if face.sign > 0 { 0 } else { 1 };
            for &b in &face.arrows {
                if b == a {
                    continue;
                }
                for t in 0..lat.rank {
                    sides[side][t] += lat.arrow_classes[b][t];
                }
            }
        }
        if sides[0] != sides[1] {
            out.push(viol(
                "jacobian_mismatch",
                format!("arrow {a}: complementary derivative paths have different classes"),
            ));
        }
    }
    out
}

/// Monomial in the block (src, dst), recorded by its dual class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ToricMonomial {
    pub src: usize,
    pub dst: usize,
    pub class: Vec<i64>,
}

impl ToricMonomial {
    pub fn new(
        data: &NCToricData,
        src: usize,
        dst: usize,
        class: Vec<i64>,
    ) -> Result<Self, DimerError> {
        if src >= data.num_blocks || dst >= data.num_blocks {
            return Err(DimerError::BadInput(format!("block pair ({src},{dst}) out of range")));
        }
        if class.len() != data.lattice.rank {
            return Err(DimerError::BadInput(format!(
                "class has {} coordinates, lattice rank is {}",
                class.len(),
                data.lattice.rank
            )));
        }
        if data.lattice.boundary.mul_vec(&class) != block_target(data.num_blocks, src, dst) {
            return Err(DimerError::BadInput(
                "class is not graded by the block pair".into(),
            ));
        }
        if !data.cone.in_dual(&class) {
            return Err(DimerError::BadInput(
                "class pairs negatively with a cone ray".into(),
            ));
        }
        Ok(ToricMonomial { src, dst, class })
    }

    pub fn identity(data: &NCToricData, block: usize) -> Self {
        ToricMonomial { src: block, dst: block, class: vec![0; data.lattice.rank] }
    }
}

/// Monomial of an arrow: its evaluation class in the block of its ends.
pub fn arrow_monomial(data: &NCToricData, arrow: usize) -> ToricMonomial {
    let (tail, head) = data.arrow_ends[arrow];
    ToricMonomial { src: tail, dst: head, class: data.lattice.arrow_classes[arrow].clone() }
}

/// Composition (i,j,u) . (j,k,v) = (i,k,u+v); mismatched blocks refuse
/// to compose, mirroring matrix-block multiplication.
pub fn toric_multiply(a: &ToricMonomial, b: &ToricMonomial) -> Result<ToricMonomial, DimerError> {
    if a.dst != b.src {
        return Err(DimerError::BlockMismatch(a.src, a.dst, b.src, b.dst));
    }
    Ok(ToricMonomial {
        src: a.src,
        dst: b.dst,
        class: a.class.iter().zip(&b.class).map(|(x, y)| x + y).collect(),
    })
}

/// Finite sum of block monomials with scalar coefficients, kept in a
/// normalized sorted form.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricElement<S: Coeff> {
    terms: Vec<(ToricMonomial, S)>,
}

impl<S: Coeff> ToricElement<S> {
    fn normalized(mut terms: Vec<(ToricMonomial, S)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(ToricMonomial, S)> = Vec::new();
        for (m, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc = acc.clone() + c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero_tol(0.0));
        ToricElement { terms: merged }
    }

    pub fn zero() -> Self {
        ToricElement { terms: Vec::new() }
    }

    pub fn monomial(m: ToricMonomial, coeff: S) -> Self {
        Self::normalized(vec![(m, coeff)])
    }

    /// Sum of the diagonal identity monomials over every block.
    pub fn unit(data: &NCToricData) -> Self {
        Self::normalized(
            (0..data.num_blocks)
                .map(|i| (ToricMonomial::identity(data, i), S::one()))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(ToricMonomial, S)] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::normalized(terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Ok(m) = toric_multiply(ma, mb) {
                    terms.push((m, ca.clone() * cb.clone()));
                }
            }
        }
        Self::normalized(terms)
    }
}
