//! Seed systems and the settlements they generate: one ranked bundle with a
//! distinguished nonzero section per covering set, tensored over each block's
//! label set, with slot-insertion clutching maps across walls.

use std::collections::BTreeSet;
use std::sync::Arc;

use boxpart::{build_partition, validate_covering, BaseSpace, RegularCovering, Violation};
use exactmat::{Coeff, Mat};
use settlement::{Clutching, Settlement};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("{0}")]
    BadInsertion(String),
}

#[derive(Clone, Debug)]
pub struct SeedBundle<S> {
    /// 1-based covering index.
    pub j: usize,
    pub rank: usize,
    pub section: Vec<S>,
}

#[derive(Clone, Debug)]
pub struct SeedSystem<S> {
    pub base: BaseSpace,
    pub covering: RegularCovering,
    /// One bundle per covering set; tensor slots are ordered by ascending j.
    pub seeds: Vec<SeedBundle<S>>,
}

fn viol(kind: &str, message: String) -> Violation {
    Violation {
        kind: kind.to_string(),
        message,
    }
}

pub fn validate_seed<S: Coeff>(seed: &SeedSystem<S>) -> Vec<Violation> {
    let mut report = validate_covering(&seed.base, &seed.covering);
    let m = seed.covering.sets.len();
    let mut seen = vec![0usize; m + 1];
    for s in &seed.seeds {
        if s.j == 0 || s.j > m {
            report.push(viol(
                "bad_index",
                format!("seed index {} outside 1..={m}", s.j),
            ));
            continue;
        }
        seen[s.j] += 1;
        if s.rank == 0 {
            report.push(viol("bad_rank", format!("seed {} has rank 0", s.j)));
        }
        if s.section.len() != s.rank {
            report.push(viol(
                "section_shape",
                format!(
                    "seed {} section has {} entries for rank {}",
                    s.j,
                    s.section.len(),
                    s.rank
                ),
            ));
        } else if s.section.iter().all(|x| x.is_zero_tol(0.0)) {
            report.push(viol(
                "vanishing_section",
                format!("seed {} has the zero section", s.j),
            ));
        }
    }
    for j in 1..=m {
        if seen[j] == 0 {
            report.push(viol("uncovered_index", format!("no seed for set {j}")));
        } else if seen[j] > 1 {
            report.push(viol(
                "duplicate_seed",
                format!("{} seeds for set {j}", seen[j]),
            ));
        }
    }
    report
}

impl<S: Coeff> SeedSystem<S> {
    fn seed(&self, j: usize) -> &SeedBundle<S> {
        self.seeds.iter().find(|s| s.j == j).unwrap()
    }
}

/// The slot-insertion map ⊗_{j∈src} C^{r_j} → ⊗_{j∈dst} C^{r_j}: shared
/// tensor factors pass through identically, each missing factor is filled
/// with that seed's distinguished section. Built as an iterated Kronecker
/// product over dst in ascending index order.
pub fn insertion_map<S: Coeff>(
    src: &BTreeSet<usize>,
    dst: &BTreeSet<usize>,
    seed: &SeedSystem<S>,
) -> Result<Mat<S>, TensorError> {
    if !src.is_subset(dst) {
        return Err(TensorError::BadInsertion(format!(
            "source label {src:?} is not contained in target label {dst:?}"
        )));
    }
    let mut out = Mat::identity(1);
    for &j in dst {
        let s = seed.seed(j);
        let factor = if src.contains(&j) {
            Mat::identity(s.rank)
        } else {
            Mat::col_vec(s.section.clone())
        };
        out = out.kronecker(&factor);
    }
    Ok(out)
}

/// Grow a settlement from a seed system: build the partition, give each
/// block the tensor product of its label's seed ranks, and glue every
/// interior wall with the insertion map toward the larger label.
pub fn grow<S: Coeff>(seed: &SeedSystem<S>, tol: f64) -> Result<Settlement<S>, Vec<Violation>> {
    let report = validate_seed(seed);
    if !report.is_empty() {
        return Err(report);
    }
    let partition = build_partition(seed.base.clone(), seed.covering.clone())?;
    let partition = Arc::new(partition);
    let mut ranks = Vec::with_capacity(partition.num_blocks());
    let mut labels = Vec::with_capacity(partition.num_blocks());
    for cell in partition.blocks() {
        let r: usize = cell.label.iter().map(|&j| seed.seed(j).rank).product();
        ranks.push(r);
        let names: Vec<String> = cell.label.iter().map(|j| j.to_string()).collect();
        labels.push(Some(format!("{{{}}}", names.join(","))));
    }
    let mut clutchings = Vec::new();
    for wall in partition.enumerate_strata(1) {
        let adj = partition.adjacent_blocks(wall);
        let (a, b) = (adj[0], adj[1]);
        let la = &partition.block_cell(a).label;
        let lb = &partition.block_cell(b).label;
        let (src, dst) = if la.is_subset(lb) && lb.len() == la.len() + 1 {
            (a, b)
        } else if lb.is_subset(la) && la.len() == lb.len() + 1 {
            (b, a)
        } else {
            return Err(vec![viol(
                "wall_labels",
                format!(
                    "wall {} separates labels {la:?} and {lb:?}, which do not differ by one set",
                    wall.id
                ),
            )]);
        };
        let matrix = insertion_map(
            &partition.block_cell(src).label,
            &partition.block_cell(dst).label,
            seed,
        )
        .map_err(|e| vec![viol("insertion", e.to_string())])?;
        clutchings.push(Clutching {
            stratum: wall.id,
            src,
            dst,
            matrix,
        });
    }
    Settlement::new(partition, ranks, labels, clutchings, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use boxpart::BoxRegion;
    use exactmat::{rat_parse, GaussRat, Rat};

    fn r(s: &str) -> Rat {
        rat_parse(s).unwrap()
    }

    fn pts(coords: &[&str]) -> Vec<Rat> {
        coords.iter().map(|s| r(s)).collect()
    }

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn set(js: &[usize]) -> BTreeSet<usize> {
        js.iter().copied().collect()
    }

    /// [0,1] covered by [0,3/5) and (2/5,1], seed ranks 2 and 3.
    fn line_seed() -> SeedSystem<GaussRat> {
        let amb = BoxRegion::closed(pts(&["0"]), pts(&["1"]));
        SeedSystem {
            covering: RegularCovering {
                sets: vec![
                    BoxRegion::open_within(&amb, pts(&["0"]), pts(&["3/5"])),
                    BoxRegion::open_within(&amb, pts(&["2/5"]), pts(&["1"])),
                ],
            },
            base: BaseSpace::new(amb, vec![]).unwrap(),
            seeds: vec![
                SeedBundle {
                    j: 1,
                    rank: 2,
                    section: vec![g(1), g(2)],
                },
                SeedBundle {
                    j: 2,
                    rank: 3,
                    section: vec![g(1), g(0), g(0)],
                },
            ],
        }
    }

    #[test]
    fn seed_validation_reports_problems() {
        assert!(validate_seed(&line_seed()).is_empty());
        let mut bad = line_seed();
        bad.seeds[1].section = vec![g(0), g(0), g(0)];
        assert!(validate_seed(&bad)
            .iter()
            .any(|v| v.kind == "vanishing_section"));
        let mut bad = line_seed();
        bad.seeds.pop();
        assert!(validate_seed(&bad)
            .iter()
            .any(|v| v.kind == "uncovered_index"));
        let mut bad = line_seed();
        bad.seeds[0].section.push(g(1));
        assert!(validate_seed(&bad).iter().any(|v| v.kind == "section_shape"));
    }

    #[test]
    fn single_insertion_is_tensoring_with_the_section() {
        let seed = line_seed();
        let m = insertion_map(&set(&[1]), &set(&[1, 2]), &seed).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 2));
        // v ↦ v ⊗ s₂ with s₂ = e₁: rows (i1,i2), i2 fastest
        for i1 in 0..2 {
            for i2 in 0..3 {
                for j in 0..2 {
                    let expect = if i1 == j && i2 == 0 { g(1) } else { g(0) };
                    assert_eq!(*m.at(i1 * 3 + i2, j), expect);
                }
            }
        }
        let from_empty = insertion_map(&set(&[]), &set(&[1]), &seed).unwrap();
        assert_eq!((from_empty.rows(), from_empty.cols()), (2, 1));
        assert_eq!(from_empty.col(0), vec![g(1), g(2)]);
        assert!(insertion_map(&set(&[1, 2]), &set(&[1]), &seed).is_err());
    }

    fn three_slot_seed() -> SeedSystem<GaussRat> {
        let mut seed = line_seed();
        seed.seeds = vec![
            SeedBundle {
                j: 1,
                rank: 2,
                section: vec![g(1), g(1)],
            },
            SeedBundle {
                j: 2,
                rank: 2,
                section: vec![g(2), g(-1)],
            },
            SeedBundle {
                j: 3,
                rank: 3,
                section: vec![g(0), g(1), g(3)],
            },
        ];
        seed
    }

    #[test]
    fn insertions_compose_independently_of_the_route() {
        // pure Kronecker identity; the covering is irrelevant here
        let seed = three_slot_seed();
        let direct = insertion_map(&set(&[1]), &set(&[1, 2, 3]), &seed).unwrap();
        let via_12 = insertion_map(&set(&[1, 2]), &set(&[1, 2, 3]), &seed)
            .unwrap()
            .matmul(&insertion_map(&set(&[1]), &set(&[1, 2]), &seed).unwrap());
        let via_13 = insertion_map(&set(&[1, 3]), &set(&[1, 2, 3]), &seed)
            .unwrap()
            .matmul(&insertion_map(&set(&[1]), &set(&[1, 3]), &seed).unwrap());
        assert_eq!(direct, via_12);
        assert_eq!(direct, via_13);
        // middle-slot insertion has the right shape
        let mid = insertion_map(&set(&[1, 3]), &set(&[1, 2, 3]), &seed).unwrap();
        assert_eq!((mid.rows(), mid.cols()), (12, 6));
    }

    #[test]
    fn grown_line_settlement_has_product_ranks() {
        let s = grow(&line_seed(), 0.0).unwrap();
        assert_eq!(s.ranks(), &[2, 6, 3]);
        assert_eq!(s.label_of(1), Some("{1,2}"));
        assert_eq!(s.check_consistency(0.0).unwrap(), vec![]);
        // wall matrices are the two insertions
        let wall_a = s.base().cell_by_slots(&[2]).id;
        let q = s.clutch_quiver(wall_a).unwrap();
        assert_eq!((q.edges[0].src, q.edges[0].dst), (0, 1));
        assert_eq!((q.edges[0].matrix.rows(), q.edges[0].matrix.cols()), (6, 2));
        let wall_b = s.base().cell_by_slots(&[4]).id;
        let q = s.clutch_quiver(wall_b).unwrap();
        assert_eq!((q.edges[0].src, q.edges[0].dst), (2, 1));
    }

    /// [0,3]^2 covered by two vertical and two horizontal slabs.
    fn crossed_seed(ranks: [usize; 4], sections: [Vec<GaussRat>; 4]) -> SeedSystem<GaussRat> {
        let amb = BoxRegion::closed(pts(&["0", "0"]), pts(&["3", "3"]));
        let covering = RegularCovering {
            sets: vec![
                BoxRegion::open_within(&amb, pts(&["0", "0"]), pts(&["13/8", "3"])),
                BoxRegion::open_within(&amb, pts(&["11/8", "0"]), pts(&["3", "3"])),
                BoxRegion::open_within(&amb, pts(&["0", "0"]), pts(&["3", "13/8"])),
                BoxRegion::open_within(&amb, pts(&["0", "11/8"]), pts(&["3", "3"])),
            ],
        };
        let seeds = ranks
            .into_iter()
            .zip(sections)
            .enumerate()
            .map(|(i, (rank, section))| SeedBundle {
                j: i + 1,
                rank,
                section,
            })
            .collect();
        SeedSystem {
            base: BaseSpace::new(amb, vec![]).unwrap(),
            covering,
            seeds,
        }
    }

    #[test]
    fn rank_one_crossed_growth_is_consistent() {
        let seed = crossed_seed(
            [1, 1, 1, 1],
            [vec![g(1)], vec![g(1)], vec![g(1)], vec![g(1)]],
        );
        let s = grow(&seed, 0.0).unwrap();
        assert!(s.ranks().iter().all(|&r| r == 1));
        assert_eq!(s.check_consistency(0.0).unwrap(), vec![]);
        for stratum in s.base().enumerate_strata(2) {
            let q = s.clutch_quiver(stratum.id).unwrap();
            assert_eq!(q.vertices.len(), 4);
            assert_eq!(q.edges.len(), 4);
            for e in &q.edges {
                assert_eq!(*e.matrix.at(0, 0), g(1));
            }
        }
    }

    #[test]
    fn crossed_growth_quivers_are_cube_skeletons() {
        let seed = crossed_seed(
            [2, 3, 1, 2],
            [
                vec![g(1), g(2)],
                vec![g(0), g(1), g(1)],
                vec![g(3)],
                vec![g(1), g(-1)],
            ],
        );
        let s = grow(&seed, 0.0).unwrap();
        assert_eq!(s.check_consistency(0.0).unwrap(), vec![]);
        for k in 1..=2 {
            for stratum in s.base().enumerate_strata(k) {
                let q = s.clutch_quiver(stratum.id).unwrap();
                assert_eq!(q.vertices.len(), 1 << k, "stratum {}", stratum.id);
                assert_eq!(q.edges.len(), k << (k.max(1) - 1), "stratum {}", stratum.id);
                let sources: Vec<usize> = q
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| q.edges.iter().all(|e| e.dst != v))
                    .collect();
                let sinks: Vec<usize> = q
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| q.edges.iter().all(|e| e.src != v))
                    .collect();
                assert_eq!(sources.len(), 1);
                assert_eq!(sinks.len(), 1);
                let (ok, cands) = q.saturation();
                assert!(ok);
                assert_eq!(cands, sinks);
                // composed clutching along any source->sink route is the
                // direct insertion between the end labels
                let paths = q.simple_paths(sources[0], sinks[0]);
                assert!(!paths.is_empty());
                let direct = insertion_map(
                    &s.base().block_cell(sources[0]).label,
                    &s.base().block_cell(sinks[0]).label,
                    &seed,
                )
                .unwrap();
                for (_, m) in paths {
                    assert_eq!(m, direct);
                }
            }
        }
    }

    #[test]
    fn distinguished_block_has_the_largest_label() {
        let seed = crossed_seed(
            [2, 3, 1, 2],
            [
                vec![g(1), g(2)],
                vec![g(0), g(1), g(1)],
                vec![g(3)],
                vec![g(1), g(-1)],
            ],
        );
        let s = grow(&seed, 0.0).unwrap();
        // the central block carries all four indices
        let (b, ambiguous) = s.distinguished_block(&pts(&["3/2", "3/2"])).unwrap();
        assert!(!ambiguous);
        assert_eq!(s.base().block_cell(b).label, set(&[1, 2, 3, 4]));
        // at a corner stratum the sink label is the union of all adjacent labels
        let corner = pts(&["11/8", "13/8"]);
        let (b, _) = s.distinguished_block(&corner).unwrap();
        let cell = s.base().locate(&corner).unwrap();
        let union: BTreeSet<usize> = s
            .base()
            .adjacent_blocks(cell)
            .iter()
            .flat_map(|&v| s.base().block_cell(v).label.iter().copied())
            .collect();
        assert_eq!(s.base().block_cell(b).label, union);
    }

    #[test]
    fn section_scaling_preserves_fiber_algebras() {
        let base_seed = crossed_seed(
            [2, 2, 1, 1],
            [vec![g(1), g(1)], vec![g(1), g(-1)], vec![g(2)], vec![g(1)]],
        );
        let mut scaled = base_seed.clone();
        let lambda = [g(2), g(-3), g(5), g(1)];
        for (s, l) in scaled.seeds.iter_mut().zip(&lambda) {
            s.section = s.section.iter().map(|x| x.clone() * l.clone()).collect();
        }
        let a = grow(&base_seed, 0.0).unwrap();
        let b = grow(&scaled, 0.0).unwrap();
        for point in [
            pts(&["11/8", "1/2"]),
            pts(&["11/8", "11/8"]),
            pts(&["13/8", "13/8"]),
            pts(&["1/2", "1/2"]),
        ] {
            let fa = a.endomorphism_fiber(&point, 0.0).unwrap();
            let fb = b.endomorphism_fiber(&point, 0.0).unwrap();
            assert_eq!(fa.dim(), fb.dim());
            let ca = fa.characters(1e-9, 17).unwrap();
            let cb = fb.characters(1e-9, 17).unwrap();
            assert_eq!(ca.characters.len(), cb.characters.len());
            assert_eq!(ca.failed.len(), 0);
            assert_eq!(cb.failed.len(), 0);
        }
    }
}
