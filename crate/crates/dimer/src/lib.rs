//! Doubly periodic bipartite graphs on a torus, their dual quivers with
//! superpotential, and the lattice data extracted from them.

pub mod cone;
pub mod snf;
mod toric;

use std::fmt;

use thiserror::Error;

pub use cone::{convex_hull_2d, Cone};
pub use snf::IntMat;
pub use toric::{
    arrow_monomial, center_presentation, jacobian_consistency, lattice_data, matching_cone,
    nc_toric_data,
    toric_multiply, validate_nc_toric_data, CenterPresentation, ConditionReport, ConditionStatus,
    LatticeData, NCToricData, ToricElement, ToricMonomial,
};

#[derive(Debug, Error)]
pub enum DimerError {
    #[error("{0}")]
    BadInput(String),
    #[error("more than {0} perfect matchings")]
    MatchingLimit(usize),
    #[error("the all-ones face cochain is not integrally exact")]
    NotExact,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("generator search not saturated within degree cap {0}")]
    NotSaturated(u32),
    #[error("block mismatch: cannot compose ({0} -> {1}) with ({2} -> {3})")]
    BlockMismatch(usize, usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.kind, self.message)
    }
}

pub(crate) fn viol(kind: &str, message: String) -> Violation {
    Violation { kind: kind.to_string(), message }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug)]
pub struct DimerVertex {
    pub id: usize,
    pub color: Color,
    /// Incident edges in counterclockwise order around the vertex.
    pub cyclic_edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DimerEdge {
    pub id: usize,
    pub black: usize,
    pub white: usize,
    /// Homology class picked up when crossing from the black endpoint to
    /// the white one, in fundamental-domain units.
    pub offset: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct DimerModel {
    pub vertices: Vec<DimerVertex>,
    pub edges: Vec<DimerEdge>,
}

impl DimerModel {
    fn incident_edges(&self, v: usize) -> Vec<usize> {
        let color = self.vertices[v].color;
        self.edges
            .iter()
            .filter(|e| match color {
                Color::Black => e.black == v,
                Color::White => e.white == v,
            })
            .map(|e| e.id)
            .collect()
    }
}

/// Darts are directed edge sides: 2e runs black to white, 2e + 1 back.
fn dart_head(d: &DimerModel, dart: usize) -> usize {
    let e = &d.edges[dart / 2];
    if dart % 2 == 0 {
        e.white
    } else {
        e.black
    }
}

fn outgoing_dart(d: &DimerModel, v: usize, edge: usize) -> usize {
    match d.vertices[v].color {
        Color::Black => 2 * edge,
        Color::White => 2 * edge + 1,
    }
}

/// Orbits of the face permutation: follow a dart to its head, flip it,
/// and continue with the next edge in the rotation there.
fn trace_faces(d: &DimerModel) -> (Vec<Vec<usize>>, Vec<usize>) {
    let next_dart = |dart: usize| -> usize {
        let v = dart_head(d, dart);
        let rot = &d.vertices[v].cyclic_edges;
        let pos = rot.iter().position(|&e| e == dart / 2).unwrap();
        outgoing_dart(d, v, rot[(pos + 1) % rot.len()])
    };
    let total = 2 * d.edges.len();
    let mut face_of = vec![usize::MAX; total];
    let mut orbits = Vec::new();
    for start in 0..total {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut dart = start;
        loop {
            face_of[dart] = orbits.len();
            orbit.push(dart);
            dart = next_dart(dart);
            if dart == start {
                break;
            }
        }
        orbits.push(orbit);
    }
    (orbits, face_of)
}

pub fn validate_dimer(d: &DimerModel) -> Vec<Violation> {
    let mut report = Vec::new();
    if d.vertices.is_empty() || d.edges.is_empty() {
        report.push(viol("empty", "a dimer needs at least one vertex and one edge".into()));
        return report;
    }
    for (i, v) in d.vertices.iter().enumerate() {
        if v.id != i {
            report.push(viol("bad_ids", format!("vertex at position {i} has id {}", v.id)));
        }
    }
    for (i, e) in d.edges.iter().enumerate() {
        if e.id != i {
            report.push(viol("bad_ids", format!("edge at position {i} has id {}", e.id)));
        }
    }
    if !report.is_empty() {
        return report;
    }
    let nv = d.vertices.len();
    for e in &d.edges {
        if e.black >= nv || d.vertices[e.black].color != Color::Black {
            report.push(viol("edge_endpoints", format!("edge {}: {} is not a black vertex", e.id, e.black)));
        }
        if e.white >= nv || d.vertices[e.white].color != Color::White {
            report.push(viol("edge_endpoints", format!("edge {}: {} is not a white vertex", e.id, e.white)));
        }
    }
    if !report.is_empty() {
        return report;
    }
    let blacks = d.vertices.iter().filter(|v| v.color == Color::Black).count();
    if 2 * blacks != nv {
        report.push(viol(
            "unbalanced",
            format!("{blacks} black vertices against {} white", nv - blacks),
        ));
    }
    for v in &d.vertices {
        let mut expected = d.incident_edges(v.id);
        expected.sort_unstable();
        let mut got = v.cyclic_edges.clone();
        got.sort_unstable();
        if expected != got {
            report.push(viol(
                "rotation_mismatch",
                format!("vertex {}: cyclic edge list does not match its incident edges", v.id),
            ));
        }
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for e in &d.edges {
            for w in [e.black, e.white] {
                if (e.black == v || e.white == v) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        report.push(viol("disconnected", "the graph is not connected".into()));
    }
    if !report.is_empty() {
        return report;
    }
    let (orbits, _) = trace_faces(d);
    let euler = nv as i64 - d.edges.len() as i64 + orbits.len() as i64;
    if euler != 0 {
        report.push(viol(
            "not_torus",
            format!("Euler characteristic {euler}: the embedding is not a torus"),
        ));
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFace {
    pub dimer_vertex: usize,
    /// +1 around white vertices, -1 around black ones.
    pub sign: i64,
    /// Directed cycle of arrow ids, rotated to start at the least arrow.
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DualQuiver {
    pub num_vertices: usize,
    pub arrows: Vec<Arrow>,
    pub faces: Vec<QuiverFace>,
}

/// Dual of the dimer: one quiver vertex per graph face, one arrow per
/// edge oriented to keep the black endpoint on its right, one quiver
/// face per dimer vertex.
pub fn dual_quiver(d: &DimerModel) -> Result<DualQuiver, Vec<Violation>> {
    let report = validate_dimer(d);
    if !report.is_empty() {
        return Err(report);
    }
    let (orbits, face_of) = trace_faces(d);
    let arrows: Vec<Arrow> = d
        .edges
        .iter()
        .map(|e| Arrow { id: e.id, tail: face_of[2 * e.id + 1], head: face_of[2 * e.id] })
        .collect();
    let mut faces = Vec::new();
    for v in &d.vertices {
        let mut cycle: Vec<usize> = v.cyclic_edges.clone();
        let sign = match v.color {
            Color::White => 1,
            Color::Black => {
                cycle.reverse();
                -1
            }
        };
        let min_pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &a)| a)
            .map(|(p, _)| p)
            .unwrap();
        cycle.rotate_left(min_pos);
        for k in 0..cycle.len() {
            let a = &arrows[cycle[k]];
            let b = &arrows[cycle[(k + 1) % cycle.len()]];
            assert_eq!(a.head, b.tail, "face cycle at vertex {} broke", v.id);
        }
        faces.push(QuiverFace { dimer_vertex: v.id, sign, arrows: cycle });
    }
    Ok(DualQuiver { num_vertices: orbits.len(), arrows, faces })
}

impl DualQuiver {
    /// Arrow boundary over the quiver vertices: head minus tail.
    pub fn boundary_arrows(&self) -> IntMat {
        let mut m = IntMat::zeros(self.num_vertices, self.arrows.len());
        for a in &self.arrows {
            m[(a.head, a.id)] += 1;
            m[(a.tail, a.id)] -= 1;
        }
        m
    }

    /// Face boundary over the arrows: each face cycle counts its arrows.
    pub fn boundary_faces(&self) -> IntMat {
        let mut m = IntMat::zeros(self.arrows.len(), self.faces.len());
        for (f, face) in self.faces.iter().enumerate() {
            for &a in &face.arrows {
                m[(a, f)] += 1;
            }
        }
        m
    }

    pub fn d0(&self) -> IntMat {
        self.boundary_arrows().transpose()
    }

    pub fn d1(&self) -> IntMat {
        self.boundary_faces().transpose()
    }
}

/// Signed cycle terms, positive ones first.
pub fn superpotential(q: &DualQuiver) -> Vec<QuiverFace> {
    let mut terms = q.faces.clone();
    terms.sort_by_key(|f| (-f.sign, f.dimer_vertex));
    terms
}

pub fn perfect_matchings(d: &DimerModel, limit: usize) -> Result<Vec<Vec<usize>>, DimerError> {
    let report = validate_dimer(d);
    if !report.is_empty() {
        return Err(DimerError::BadInput(report[0].to_string()));
    }
    let blacks: Vec<usize> =
        d.vertices.iter().filter(|v| v.color == Color::Black).map(|v| v.id).collect();
    let mut white_used = vec![false; d.vertices.len()];
    let mut chosen: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn go(
        d: &DimerModel,
        blacks: &[usize],
        k: usize,
        white_used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<(), DimerError> {
        if k == blacks.len() {
            if out.len() == limit {
                return Err(DimerError::MatchingLimit(limit));
            }
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(m);
            return Ok(());
        }
        for e in &d.edges {
            if e.black == blacks[k] && !white_used[e.white] {
                white_used[e.white] = true;
                chosen.push(e.id);
                let r = go(d, blacks, k + 1, white_used, chosen, out, limit);
                chosen.pop();
                white_used[e.white] = false;
                r?;
            }
        }
        Ok(())
    }
    go(d, &blacks, 0, &mut white_used, &mut chosen, &mut out, limit)?;
    out.sort();
    Ok(out)
}

/// Convex hull of the homology classes of the perfect matchings.
pub fn matching_polygon(d: &DimerModel, matchings: &[Vec<usize>]) -> Vec<(i64, i64)> {
    let points: Vec<(i64, i64)> = matchings
        .iter()
        .map(|m| {
            m.iter().fold((0, 0), |acc, &e| {
                let off = d.edges[e].offset;
                (acc.0 + off.0, acc.1 + off.1)
            })
        })
        .collect();
    convex_hull_2d(&points)
}

/// One black and one white vertex joined by three edges; the dual quiver
/// is a single vertex with three loops.
pub fn hexagonal_dimer() -> DimerModel {
    DimerModel {
        vertices: vec![
            DimerVertex { id: 0, color: Color::Black, cyclic_edges: vec![0, 1, 2] },
            DimerVertex { id: 1, color: Color::White, cyclic_edges: vec![0, 1, 2] },
        ],
        edges: vec![
            DimerEdge { id: 0, black: 0, white: 1, offset: (0, 0) },
            DimerEdge { id: 1, black: 0, white: 1, offset: (1, 0) },
            DimerEdge { id: 2, black: 0, white: 1, offset: (0, 1) },
        ],
    }
}

/// One black and one white vertex joined by four edges; the dual quiver
/// has two vertices with two arrows in each direction.
pub fn square_dimer() -> DimerModel {
    DimerModel {
        vertices: vec![
            DimerVertex { id: 0, color: Color::Black, cyclic_edges: vec![0, 1, 2, 3] },
            DimerVertex { id: 1, color: Color::White, cyclic_edges: vec![0, 1, 2, 3] },
        ],
        edges: vec![
            DimerEdge { id: 0, black: 0, white: 1, offset: (0, 0) },
            DimerEdge { id: 1, black: 0, white: 1, offset: (1, 0) },
            DimerEdge { id: 2, black: 0, white: 1, offset: (1, 1) },
            DimerEdge { id: 3, black: 0, white: 1, offset: (0, 1) },
        ],
    }
}

/// Honeycomb with a three-cell fundamental domain: three hexagonal
/// faces, so the dual quiver is a directed triangle with three parallel
/// arrows on each side.
pub fn triple_hexagonal_dimer() -> DimerModel {
    let mut vertices = Vec::new();
    for k in 0..3usize {
        vertices.push(DimerVertex {
            id: k,
            color: Color::Black,
            cyclic_edges: vec![k, 3 + k, 6 + k],
        });
    }
    for j in 0..3usize {
        vertices.push(DimerVertex {
            id: 3 + j,
            color: Color::White,
            cyclic_edges: vec![j, 6 + (j + 1) % 3, 3 + (j + 2) % 3],
        });
    }
    let mut edges = Vec::new();
    for k in 0..3usize {
        edges.push(DimerEdge { id: k, black: k, white: 3 + k, offset: (0, 0) });
    }
    let y_offsets = [(-1, 0), (-1, 0), (0, 1)];
    for k in 0..3usize {
        edges.push(DimerEdge { id: 3 + k, black: k, white: 3 + (k + 1) % 3, offset: y_offsets[k] });
    }
    let z_offsets = [(-1, -1), (0, 0), (0, 0)];
    for k in 0..3usize {
        edges.push(DimerEdge { id: 6 + k, black: k, white: 3 + (k + 2) % 3, offset: z_offsets[k] });
    }
    DimerModel { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagonal_dimer_dualizes_to_one_vertex_with_three_loops() {
        let d = hexagonal_dimer();
        assert!(validate_dimer(&d).is_empty());
        let q = dual_quiver(&d).unwrap();
        assert_eq!(q.num_vertices, 1);
        assert_eq!(q.arrows.len(), 3);
        assert_eq!(q.faces.len(), 2);
        for a in &q.arrows {
            assert_eq!((a.tail, a.head), (0, 0));
        }
    }

    #[test]
    fn square_dimer_dualizes_to_the_two_vertex_double_arrow_quiver() {
        let q = dual_quiver(&square_dimer()).unwrap();
        assert_eq!(q.num_vertices, 2);
        assert_eq!(q.arrows.len(), 4);
        assert_eq!(q.faces.len(), 2);
        let forward = q.arrows.iter().filter(|a| (a.tail, a.head) == (1, 0)).count();
        let backward = q.arrows.iter().filter(|a| (a.tail, a.head) == (0, 1)).count();
        assert_eq!((forward, backward), (2, 2));
    }

    #[test]
    fn boundaries_compose_to_zero() {
        for d in [hexagonal_dimer(), square_dimer(), triple_hexagonal_dimer()] {
            let q = dual_quiver(&d).unwrap();
            assert!(q.boundary_arrows().matmul(&q.boundary_faces()).is_zero());
            assert!(q.d1().matmul(&q.d0()).is_zero());
        }
    }

    #[test]
    fn superpotential_uses_every_arrow_once_per_sign() {
        for d in [hexagonal_dimer(), square_dimer(), triple_hexagonal_dimer()] {
            let q = dual_quiver(&d).unwrap();
            let w = superpotential(&q);
            for sign in [1i64, -1] {
                let mut seen = vec![0usize; q.arrows.len()];
                for term in w.iter().filter(|t| t.sign == sign) {
                    for &a in &term.arrows {
                        seen[a] += 1;
                    }
                }
                assert!(seen.iter().all(|&c| c == 1), "sign {sign} misses an arrow");
            }
        }
    }

    #[test]
    fn fixture_superpotentials_have_the_expected_terms() {
        let hex = superpotential(&dual_quiver(&hexagonal_dimer()).unwrap());
        assert_eq!(hex.len(), 2);
        assert_eq!((hex[0].sign, hex[0].arrows.clone()), (1, vec![0, 1, 2]));
        assert_eq!((hex[1].sign, hex[1].arrows.clone()), (-1, vec![0, 2, 1]));

        let sq = superpotential(&dual_quiver(&square_dimer()).unwrap());
        assert_eq!((sq[0].sign, sq[0].arrows.clone()), (1, vec![0, 1, 2, 3]));
        assert_eq!((sq[1].sign, sq[1].arrows.clone()), (-1, vec![0, 3, 2, 1]));
    }

    #[test]
    fn triple_hexagon_is_a_torus_with_three_faces() {
        let d = triple_hexagonal_dimer();
        assert!(validate_dimer(&d).is_empty());
        let q = dual_quiver(&d).unwrap();
        assert_eq!(q.num_vertices, 3);
        assert_eq!(q.arrows.len(), 9);
        assert_eq!(q.faces.len(), 6);
        for f in &q.faces {
            assert_eq!(f.arrows.len(), 3);
        }
        let mut ends: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.tail, a.head)).collect();
        ends.sort_unstable();
        assert_eq!(ends, vec![(0, 2); 3].into_iter().chain(vec![(1, 0); 3]).chain(vec![(2, 1); 3]).collect::<Vec<_>>());
    }

    #[test]
    fn structural_violations_are_reported() {
        let mut unbalanced = hexagonal_dimer();
        unbalanced.vertices.push(DimerVertex { id: 2, color: Color::Black, cyclic_edges: vec![] });
        assert!(validate_dimer(&unbalanced).iter().any(|v| v.kind == "unbalanced"));
        assert!(validate_dimer(&unbalanced).iter().any(|v| v.kind == "disconnected"));

        let mut bad_rotation = hexagonal_dimer();
        bad_rotation.vertices[1].cyclic_edges = vec![0, 1, 1];
        assert!(validate_dimer(&bad_rotation).iter().any(|v| v.kind == "rotation_mismatch"));

        let mut sphere = hexagonal_dimer();
        sphere.vertices[1].cyclic_edges = vec![0, 2, 1];
        let report = validate_dimer(&sphere);
        assert!(report.iter().any(|v| v.kind == "not_torus"));
        assert!(dual_quiver(&sphere).is_err());
    }

    #[test]
    fn matchings_and_polygons_of_the_fixtures() {
        let hex = hexagonal_dimer();
        let hm = perfect_matchings(&hex, 100).unwrap();
        assert_eq!(hm, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(matching_polygon(&hex, &hm), vec![(0, 0), (1, 0), (0, 1)]);

        let sq = square_dimer();
        let sm = perfect_matchings(&sq, 100).unwrap();
        assert_eq!(sm.len(), 4);
        let hull = matching_polygon(&sq, &sm);
        assert_eq!(hull.len(), 4);
        for corner in [(0, 0), (1, 0), (1, 1), (0, 1)] {
            assert!(hull.contains(&corner));
        }

        let tri = triple_hexagonal_dimer();
        let tm = perfect_matchings(&tri, 100).unwrap();
        assert_eq!(tm.len(), 6);
        let hull = matching_polygon(&tri, &tm);
        assert_eq!(hull.len(), 3);
        for corner in [(0, 0), (-2, 1), (-1, -1)] {
            assert!(hull.contains(&corner));
        }
        assert!(matches!(perfect_matchings(&tri, 5), Err(DimerError::MatchingLimit(5))));
    }
}
