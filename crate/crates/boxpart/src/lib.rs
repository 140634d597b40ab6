//! Axis-aligned box model of a partitioned base space.
//!
//! The base is a closed box with finitely many marked interior singular
//! points. An open box covering induces a grid partition: per-axis
//! breakpoints come from the covering walls and the box boundary, and cells
//! are indexed by per-axis slots that alternate point (even) and open
//! interval (odd). Everything is exact rational; membership decisions happen
//! at cell barycenters.

use std::collections::BTreeSet;
use std::fmt;

use exactmat::Rat;
use num_bigint::BigInt;

/// One axis of a box: endpoints plus openness flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Interval {
    pub fn closed(lo: Rat, hi: Rat) -> Self {
        Interval {
            lo,
            hi,
            open_lo: false,
            open_hi: false,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let lo_ok = if self.open_lo { x > &self.lo } else { x >= &self.lo };
        let hi_ok = if self.open_hi { x < &self.hi } else { x <= &self.hi };
        lo_ok && hi_ok
    }

    pub fn closure_contains(&self, x: &Rat) -> bool {
        x >= &self.lo && x <= &self.hi
    }

    /// Closed sub-interval test, interiors compared where flags are open.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = if self.open_lo {
            other.lo > self.lo || (other.lo == self.lo && other.open_lo)
        } else {
            other.lo >= self.lo
        };
        let hi_ok = if self.open_hi {
            other.hi < self.hi || (other.hi == self.hi && other.open_hi)
        } else {
            other.hi <= self.hi
        };
        lo_ok && hi_ok
    }
}

/// Product of per-axis intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxRegion {
    pub axes: Vec<Interval>,
}

impl BoxRegion {
    pub fn closed(lo: Vec<Rat>, hi: Vec<Rat>) -> Self {
        assert_eq!(lo.len(), hi.len());
        BoxRegion {
            axes: lo
                .into_iter()
                .zip(hi)
                .map(|(l, h)| Interval::closed(l, h))
                .collect(),
        }
    }

    /// Box whose sides are opened automatically wherever they fall strictly
    /// inside the ambient box, matching the covering-set convention.
    pub fn open_within(ambient: &BoxRegion, lo: Vec<Rat>, hi: Vec<Rat>) -> Self {
        assert_eq!(lo.len(), hi.len());
        assert_eq!(lo.len(), ambient.dim());
        BoxRegion {
            axes: lo
                .into_iter()
                .zip(hi)
                .enumerate()
                .map(|(a, (l, h))| Interval {
                    open_lo: l > ambient.axes[a].lo,
                    open_hi: h < ambient.axes[a].hi,
                    lo: l,
                    hi: h,
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        p.len() == self.dim() && self.axes.iter().zip(p).all(|(iv, x)| iv.contains(x))
    }

    pub fn closure_contains(&self, p: &[Rat]) -> bool {
        p.len() == self.dim() && self.axes.iter().zip(p).all(|(iv, x)| iv.closure_contains(x))
    }
}

/// Closed ambient box plus marked interior singular points.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseSpace {
    pub ambient: BoxRegion,
    pub singular: Vec<Vec<Rat>>,
}

impl BaseSpace {
    pub fn new(ambient: BoxRegion, singular: Vec<Vec<Rat>>) -> Result<Self, String> {
        for iv in &ambient.axes {
            if iv.open_lo || iv.open_hi {
                return Err("ambient box must be closed".into());
            }
            if iv.lo >= iv.hi {
                return Err("ambient box needs nonempty interior on every axis".into());
            }
        }
        for (k, p) in singular.iter().enumerate() {
            if p.len() != ambient.dim() {
                return Err(format!("singular point {k} has wrong dimension"));
            }
            let strictly_inside = ambient
                .axes
                .iter()
                .zip(p)
                .all(|(iv, x)| x > &iv.lo && x < &iv.hi);
            if !strictly_inside {
                return Err(format!("singular point {k} not strictly interior"));
            }
            for q in &singular[..k] {
                if q == p {
                    return Err(format!("singular point {k} duplicates an earlier one"));
                }
            }
        }
        Ok(BaseSpace { ambient, singular })
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }
}

/// Indexed open box covering; covering index `j` is 1-based position.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularCovering {
    pub sets: Vec<BoxRegion>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: String,
    pub message: String,
}

impl Violation {
    fn new(kind: &str, message: String) -> Self {
        Violation {
            kind: kind.to_string(),
            message,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.kind, self.message)
    }
}

/// One grid cell. Even slot `2p` on an axis is the point at breakpoint `p`;
/// odd slot `2p+1` is the open interval between breakpoints `p` and `p+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub id: usize,
    pub slots: Vec<usize>,
    pub codim: usize,
    pub boundary_depth: usize,
    pub label: BTreeSet<usize>,
    pub extent: BoxRegion,
}

impl Cell {
    pub fn is_block(&self) -> bool {
        self.codim == 0 && self.boundary_depth == 0
    }

    pub fn is_interior(&self) -> bool {
        self.boundary_depth == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionedBase {
    pub base: BaseSpace,
    pub covering: RegularCovering,
    pub breakpoints: Vec<Vec<Rat>>,
    cells: Vec<Cell>,
    block_of_cell: Vec<Option<usize>>,
    block_cells: Vec<usize>,
}

fn half(x: Rat) -> Rat {
    x / Rat::from_integer(BigInt::from(2))
}

fn for_each_slots(limits: &[usize], mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; limits.len()];
    if limits.iter().any(|&l| l == 0) {
        return;
    }
    loop {
        f(&idx);
        let mut a = limits.len();
        loop {
            if a == 0 {
                return;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < limits[a] {
                break;
            }
            idx[a] = 0;
        }
    }
}

fn build_breakpoints(base: &BaseSpace, covering: &RegularCovering) -> Vec<Vec<Rat>> {
    let n = base.dim();
    let mut per_axis: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for a in 0..n {
        let amb = &base.ambient.axes[a];
        let mut vals = vec![amb.lo.clone(), amb.hi.clone()];
        for set in &covering.sets {
            if set.axes.len() != n {
                continue;
            }
            for v in [&set.axes[a].lo, &set.axes[a].hi] {
                if v > &amb.lo && v < &amb.hi {
                    vals.push(v.clone());
                }
            }
        }
        vals.sort();
        vals.dedup();
        per_axis.push(vals);
    }
    per_axis
}

fn barycenter_of_slots(breakpoints: &[Vec<Rat>], slots: &[usize]) -> Vec<Rat> {
    slots
        .iter()
        .enumerate()
        .map(|(a, &s)| {
            if s % 2 == 0 {
                breakpoints[a][s / 2].clone()
            } else {
                half(&breakpoints[a][s / 2] + &breakpoints[a][s / 2 + 1])
            }
        })
        .collect()
}

fn extent_of_slots(breakpoints: &[Vec<Rat>], slots: &[usize]) -> BoxRegion {
    BoxRegion {
        axes: slots
            .iter()
            .enumerate()
            .map(|(a, &s)| {
                if s % 2 == 0 {
                    Interval::closed(breakpoints[a][s / 2].clone(), breakpoints[a][s / 2].clone())
                } else {
                    Interval::closed(
                        breakpoints[a][s / 2].clone(),
                        breakpoints[a][s / 2 + 1].clone(),
                    )
                }
            })
            .collect(),
    }
}

fn build_cells(
    covering: &RegularCovering,
    breakpoints: &[Vec<Rat>],
) -> Vec<Cell> {
    let limits: Vec<usize> = breakpoints.iter().map(|b| 2 * b.len() - 1).collect();
    let mut cells = Vec::new();
    for_each_slots(&limits, |slots| {
        let mut codim = 0;
        let mut depth = 0;
        for (a, &s) in slots.iter().enumerate() {
            if s % 2 == 0 {
                if s == 0 || s == limits[a] - 1 {
                    depth += 1;
                } else {
                    codim += 1;
                }
            }
        }
        let bary = barycenter_of_slots(breakpoints, slots);
        let label: BTreeSet<usize> = covering
            .sets
            .iter()
            .enumerate()
            .filter(|(_, u)| u.contains(&bary))
            .map(|(idx, _)| idx + 1)
            .collect();
        cells.push(Cell {
            id: cells.len(),
            slots: slots.to_vec(),
            codim,
            boundary_depth: depth,
            label,
            extent: extent_of_slots(breakpoints, slots),
        });
    });
    cells
}

/// Check a covering against the base. Violations are data, not failures.
pub fn validate_covering(base: &BaseSpace, covering: &RegularCovering) -> Vec<Violation> {
    let n = base.dim();
    let mut out = Vec::new();
    if covering.sets.is_empty() {
        out.push(Violation::new("empty_covering", "covering has no sets".into()));
        return out;
    }
    let mut shapes_ok = true;
    for (idx, set) in covering.sets.iter().enumerate() {
        let j = idx + 1;
        if set.axes.len() != n {
            out.push(Violation::new(
                "dimension_mismatch",
                format!("covering set {j} has dimension {} != {n}", set.axes.len()),
            ));
            shapes_ok = false;
            continue;
        }
        for (a, iv) in set.axes.iter().enumerate() {
            let amb = &base.ambient.axes[a];
            if iv.lo >= iv.hi {
                out.push(Violation::new(
                    "empty_interior",
                    format!("covering set {j} axis {a} has empty interior"),
                ));
                shapes_ok = false;
            }
            if iv.lo < amb.lo || iv.hi > amb.hi {
                out.push(Violation::new(
                    "outside_ambient",
                    format!("covering set {j} axis {a} exceeds the ambient box"),
                ));
                shapes_ok = false;
            }
            if iv.lo > amb.lo && iv.lo < amb.hi && !iv.open_lo {
                out.push(Violation::new(
                    "interior_wall_closed",
                    format!("covering set {j} axis {a}: interior lower wall must be open"),
                ));
            }
            if iv.hi > amb.lo && iv.hi < amb.hi && !iv.open_hi {
                out.push(Violation::new(
                    "interior_wall_closed",
                    format!("covering set {j} axis {a}: interior upper wall must be open"),
                ));
            }
        }
    }
    if !shapes_ok {
        return out;
    }

    // Transversality: every interior wall value on an axis belongs to exactly
    // one covering wall, so crossing it changes exactly one membership.
    for a in 0..n {
        let amb = &base.ambient.axes[a];
        let mut walls: Vec<(Rat, usize, &str)> = Vec::new();
        for (idx, set) in covering.sets.iter().enumerate() {
            let iv = &set.axes[a];
            if iv.lo > amb.lo && iv.lo < amb.hi {
                walls.push((iv.lo.clone(), idx + 1, "lower"));
            }
            if iv.hi > amb.lo && iv.hi < amb.hi {
                walls.push((iv.hi.clone(), idx + 1, "upper"));
            }
        }
        walls.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        for w in walls.windows(2) {
            if w[0].0 == w[1].0 {
                out.push(Violation::new(
                    "coincident_walls",
                    format!(
                        "axis {a}: {} wall of set {} coincides with {} wall of set {} at {}",
                        w[0].2, w[0].1, w[1].2, w[1].1, w[0].0
                    ),
                ));
            }
        }
    }

    let breakpoints = build_breakpoints(base, covering);
    let cells = build_cells(covering, &breakpoints);
    for cell in &cells {
        if cell.label.is_empty() {
            let bary = barycenter_of_slots(&breakpoints, &cell.slots);
            out.push(Violation::new(
                "uncovered",
                format!(
                    "cell at ({}) lies in no covering set",
                    bary.iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ));
        }
    }

    for (k, p) in base.singular.iter().enumerate() {
        let inside: Vec<usize> = covering
            .sets
            .iter()
            .enumerate()
            .filter(|(_, u)| u.contains(p))
            .map(|(idx, _)| idx + 1)
            .collect();
        if inside.len() != 1 {
            out.push(Violation::new(
                "singular_not_confined",
                format!("singular point {k} lies in {} covering sets", inside.len()),
            ));
            continue;
        }
        let j = inside[0];
        for (idx, u) in covering.sets.iter().enumerate() {
            if idx + 1 != j && u.closure_contains(p) {
                out.push(Violation::new(
                    "singular_not_confined",
                    format!(
                        "singular point {k} meets the closure of covering set {}",
                        idx + 1
                    ),
                ));
            }
        }
        for (a, x) in p.iter().enumerate() {
            if breakpoints[a].contains(x) {
                out.push(Violation::new(
                    "singular_on_wall",
                    format!("singular point {k} lies on a partition wall (axis {a})"),
                ));
            }
        }
    }

    out
}

/// Build the grid partition. Rejects coverings with a nonempty violation report.
pub fn build_partition(
    base: BaseSpace,
    covering: RegularCovering,
) -> Result<PartitionedBase, Vec<Violation>> {
    let report = validate_covering(&base, &covering);
    if !report.is_empty() {
        return Err(report);
    }
    let breakpoints = build_breakpoints(&base, &covering);
    let cells = build_cells(&covering, &breakpoints);
    let mut block_of_cell = vec![None; cells.len()];
    let mut block_cells = Vec::new();
    for cell in &cells {
        if cell.is_block() {
            block_of_cell[cell.id] = Some(block_cells.len());
            block_cells.push(cell.id);
        }
    }
    Ok(PartitionedBase {
        base,
        covering,
        breakpoints,
        cells,
        block_of_cell,
        block_cells,
    })
}

impl PartitionedBase {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn num_blocks(&self) -> usize {
        self.block_cells.len()
    }

    /// Blocks in lexicographic slot order; the position is the block id.
    pub fn blocks(&self) -> impl Iterator<Item = &Cell> {
        self.block_cells.iter().map(|&c| &self.cells[c])
    }

    pub fn block_cell(&self, block_id: usize) -> &Cell {
        &self.cells[self.block_cells[block_id]]
    }

    pub fn block_id_of_cell(&self, cell_id: usize) -> Option<usize> {
        self.block_of_cell[cell_id]
    }

    pub fn barycenter(&self, cell: &Cell) -> Vec<Rat> {
        barycenter_of_slots(&self.breakpoints, &cell.slots)
    }

    fn slot_limits(&self) -> Vec<usize> {
        self.breakpoints.iter().map(|b| 2 * b.len() - 1).collect()
    }

    fn cell_index_by_slots(&self, slots: &[usize]) -> usize {
        let limits = self.slot_limits();
        let mut idx = 0;
        for (a, &s) in slots.iter().enumerate() {
            idx = idx * limits[a] + s;
        }
        idx
    }

    pub fn cell_by_slots(&self, slots: &[usize]) -> &Cell {
        &self.cells[self.cell_index_by_slots(slots)]
    }

    /// The unique cell containing the point, or an error outside the base.
    pub fn locate(&self, point: &[Rat]) -> Result<&Cell, String> {
        if point.len() != self.dim() {
            return Err(format!(
                "point has dimension {}, base has {}",
                point.len(),
                self.dim()
            ));
        }
        let mut slots = Vec::with_capacity(self.dim());
        for (a, x) in point.iter().enumerate() {
            let bp = &self.breakpoints[a];
            if x < &bp[0] || x > bp.last().unwrap() {
                return Err(format!("coordinate {a} = {x} falls outside the base box"));
            }
            let slot = match bp.binary_search(x) {
                Ok(p) => 2 * p,
                Err(p) => 2 * (p - 1) + 1,
            };
            slots.push(slot);
        }
        Ok(self.cell_by_slots(&slots))
    }

    /// Interior cells of the given codimension, lexicographic slot order.
    pub fn enumerate_strata(&self, codim: usize) -> Vec<&Cell> {
        self.cells
            .iter()
            .filter(|c| c.is_interior() && c.codim == codim)
            .collect()
    }

    /// Block ids of the top-dimensional cells whose closure contains `cell`.
    pub fn adjacent_blocks(&self, cell: &Cell) -> Vec<usize> {
        let limits = self.slot_limits();
        let mut choices: Vec<Vec<usize>> = Vec::with_capacity(cell.slots.len());
        for (a, &s) in cell.slots.iter().enumerate() {
            if s % 2 == 1 {
                choices.push(vec![s]);
            } else {
                let mut c = Vec::new();
                if s > 0 {
                    c.push(s - 1);
                }
                if s + 1 < limits[a] {
                    c.push(s + 1);
                }
                choices.push(c);
            }
        }
        let counts: Vec<usize> = choices.iter().map(Vec::len).collect();
        let mut out = Vec::new();
        for_each_slots(&counts, |pick| {
            let slots: Vec<usize> = pick.iter().enumerate().map(|(a, &k)| choices[a][k]).collect();
            let cell_id = self.cell_index_by_slots(&slots);
            if let Some(b) = self.block_of_cell[cell_id] {
                out.push(b);
            }
        });
        out.sort_unstable();
        out
    }

    /// Singular points lying in the interior of the given block.
    pub fn singular_points_in_block(&self, block_id: usize) -> Vec<usize> {
        let cell = self.block_cell(block_id);
        self.base
            .singular
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                cell.extent
                    .axes
                    .iter()
                    .zip(p.iter())
                    .all(|(iv, x)| x > &iv.lo && x < &iv.hi)
            })
            .map(|(k, _)| k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::rat_parse;

    fn r(s: &str) -> Rat {
        rat_parse(s).unwrap()
    }

    fn open_box_1d(lo: &str, hi: &str, open_lo: bool, open_hi: bool) -> BoxRegion {
        BoxRegion {
            axes: vec![Interval {
                lo: r(lo),
                hi: r(hi),
                open_lo,
                open_hi,
            }],
        }
    }

    fn unit_base_1d() -> BaseSpace {
        BaseSpace::new(BoxRegion::closed(vec![r("0")], vec![r("1")]), vec![]).unwrap()
    }

    fn two_set_cover_1d() -> RegularCovering {
        RegularCovering {
            sets: vec![
                open_box_1d("0", "3/5", false, true),
                open_box_1d("2/5", "1", true, false),
            ],
        }
    }

    #[test]
    fn two_interval_cover_validates() {
        assert!(validate_covering(&unit_base_1d(), &two_set_cover_1d()).is_empty());
    }

    #[test]
    fn gap_is_reported() {
        let cov = RegularCovering {
            sets: vec![
                open_box_1d("0", "2/5", false, true),
                open_box_1d("3/5", "1", true, false),
            ],
        };
        let report = validate_covering(&unit_base_1d(), &cov);
        assert!(report.iter().any(|v| v.kind == "uncovered"));
    }

    #[test]
    fn unconfined_singular_point_is_reported() {
        let base = BaseSpace::new(
            BoxRegion::closed(vec![r("0"), r("0")], vec![r("1"), r("1")]),
            vec![vec![r("1/2"), r("1/2")]],
        )
        .unwrap();
        let full = |x: &str, y: &str, ox, oy| BoxRegion {
            axes: vec![
                Interval {
                    lo: r(x),
                    hi: r(y),
                    open_lo: ox,
                    open_hi: oy,
                },
                Interval::closed(r("0"), r("1")),
            ],
        };
        let cov = RegularCovering {
            sets: vec![full("0", "3/4", false, true), full("1/4", "1", true, false)],
        };
        let report = validate_covering(&base, &cov);
        assert!(report.iter().any(|v| v.kind == "singular_not_confined"));
    }

    #[test]
    fn coincident_walls_are_reported() {
        let cov = RegularCovering {
            sets: vec![
                open_box_1d("0", "1/2", false, true),
                open_box_1d("1/2", "1", true, false),
            ],
        };
        let report = validate_covering(&unit_base_1d(), &cov);
        assert!(report.iter().any(|v| v.kind == "coincident_walls"));
        // the shared wall also leaves the point 1/2 uncovered
        assert!(report.iter().any(|v| v.kind == "uncovered"));
    }

    #[test]
    fn closed_interior_wall_is_reported() {
        let cov = RegularCovering {
            sets: vec![
                open_box_1d("0", "3/5", false, false),
                open_box_1d("2/5", "1", true, false),
            ],
        };
        let report = validate_covering(&unit_base_1d(), &cov);
        assert!(report.iter().any(|v| v.kind == "interior_wall_closed"));
    }

    #[test]
    fn one_dim_partition_blocks_and_walls() {
        let p = build_partition(unit_base_1d(), two_set_cover_1d()).unwrap();
        let blocks: Vec<_> = p.blocks().collect();
        assert_eq!(blocks.len(), 3);
        let labels: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.label.iter().copied().collect())
            .collect();
        assert_eq!(labels, vec![vec![1], vec![1, 2], vec![2]]);
        assert_eq!(p.enumerate_strata(1).len(), 2);
        assert_eq!(p.enumerate_strata(0).len(), 3);
    }

    #[test]
    fn identity_covering() {
        let cov = RegularCovering {
            sets: vec![open_box_1d("0", "1", false, false)],
        };
        let p = build_partition(unit_base_1d(), cov).unwrap();
        assert_eq!(p.num_blocks(), 1);
        assert_eq!(p.enumerate_strata(1).len(), 0);
        let label: Vec<usize> = p.block_cell(0).label.iter().copied().collect();
        assert_eq!(label, vec![1]);
    }

    #[test]
    fn locate_examples() {
        let p = build_partition(unit_base_1d(), two_set_cover_1d()).unwrap();
        let mid = p.locate(&[r("1/2")]).unwrap();
        assert!(mid.is_block());
        assert_eq!(mid.label.iter().copied().collect::<Vec<_>>(), vec![1, 2]);
        let wall = p.locate(&[r("2/5")]).unwrap();
        assert_eq!(wall.codim, 1);
        assert!(wall.is_interior());
        let corner = p.locate(&[r("0")]).unwrap();
        assert_eq!(corner.boundary_depth, 1);
        assert!(p.locate(&[r("2")]).is_err());
    }

    fn crossed_cover_2d() -> (BaseSpace, RegularCovering) {
        let base = BaseSpace::new(
            BoxRegion::closed(vec![r("0"), r("0")], vec![r("1"), r("1")]),
            vec![],
        )
        .unwrap();
        let xslab = |lo: &str, hi: &str, ol, oh| BoxRegion {
            axes: vec![
                Interval {
                    lo: r(lo),
                    hi: r(hi),
                    open_lo: ol,
                    open_hi: oh,
                },
                Interval::closed(r("0"), r("1")),
            ],
        };
        let yslab = |lo: &str, hi: &str, ol, oh| BoxRegion {
            axes: vec![
                Interval::closed(r("0"), r("1")),
                Interval {
                    lo: r(lo),
                    hi: r(hi),
                    open_lo: ol,
                    open_hi: oh,
                },
            ],
        };
        let cov = RegularCovering {
            sets: vec![
                xslab("0", "3/5", false, true),
                xslab("2/5", "1", true, false),
                yslab("0", "3/5", false, true),
                yslab("2/5", "1", true, false),
            ],
        };
        (base, cov)
    }

    #[test]
    fn crossed_two_dim_partition() {
        let (base, cov) = crossed_cover_2d();
        let p = build_partition(base, cov).unwrap();
        assert_eq!(p.num_blocks(), 9);
        let codim2 = p.enumerate_strata(2);
        assert_eq!(codim2.len(), 4);
        for cell in codim2 {
            assert_eq!(p.adjacent_blocks(cell).len(), 4);
        }
    }

    #[test]
    fn adjacency_count_is_two_to_the_codim() {
        let (base, cov) = crossed_cover_2d();
        let p = build_partition(base, cov).unwrap();
        for cell in p.cells() {
            if cell.is_interior() {
                assert_eq!(
                    p.adjacent_blocks(cell).len(),
                    1 << cell.codim,
                    "cell {:?}",
                    cell.slots
                );
            }
        }
    }

    #[test]
    fn labels_match_box_inclusion() {
        // independent derivation: a cell lies in U_j iff its extent interval
        // sits inside U_j's interval on every axis
        let (base, cov) = crossed_cover_2d();
        let p = build_partition(base, cov).unwrap();
        for cell in p.cells() {
            let derived: BTreeSet<usize> = p
                .covering
                .sets
                .iter()
                .enumerate()
                .filter(|(_, u)| {
                    u.axes
                        .iter()
                        .zip(&cell.extent.axes)
                        .all(|(uiv, civ)| {
                            let degenerate = civ.lo == civ.hi;
                            let mut probe = civ.clone();
                            probe.open_lo = !degenerate;
                            probe.open_hi = !degenerate;
                            uiv.contains_interval(&probe)
                        })
                })
                .map(|(idx, _)| idx + 1)
                .collect();
            assert_eq!(cell.label, derived, "cell {:?}", cell.slots);
        }
    }

    #[test]
    fn stratum_label_is_intersection_of_adjacent_blocks() {
        let (base, cov) = crossed_cover_2d();
        let p = build_partition(base, cov).unwrap();
        for cell in p.cells() {
            if !cell.is_interior() || cell.codim == 0 {
                continue;
            }
            let mut inter: Option<BTreeSet<usize>> = None;
            for b in p.adjacent_blocks(cell) {
                let bl = &p.block_cell(b).label;
                inter = Some(match inter {
                    None => bl.clone(),
                    Some(acc) => acc.intersection(bl).copied().collect(),
                });
            }
            assert_eq!(cell.label, inter.unwrap());
        }
    }

    #[test]
    fn revalidation_of_enlarged_blocks_passes() {
        let p = build_partition(unit_base_1d(), two_set_cover_1d()).unwrap();
        // enlarge each block by a third of the smallest gap; walls stay
        // distinct and the result is again a regular covering
        let eps = r("1/15");
        let sets: Vec<BoxRegion> = p
            .blocks()
            .map(|b| {
                let amb = &p.base.ambient.axes[0];
                let iv = &b.extent.axes[0];
                let lo = if iv.lo == amb.lo {
                    amb.lo.clone()
                } else {
                    &iv.lo - &eps
                };
                let hi = if iv.hi == amb.hi {
                    amb.hi.clone()
                } else {
                    &iv.hi + &eps
                };
                BoxRegion {
                    axes: vec![Interval {
                        open_lo: lo != amb.lo,
                        open_hi: hi != amb.hi,
                        lo,
                        hi,
                    }],
                }
            })
            .collect();
        let report = validate_covering(&p.base, &RegularCovering { sets });
        assert!(report.is_empty(), "{report:?}");
    }

    #[test]
    fn singular_point_sits_in_singleton_labelled_block() {
        let base = BaseSpace::new(
            BoxRegion::closed(vec![r("0")], vec![r("1")]),
            vec![vec![r("1/5")]],
        )
        .unwrap();
        let p = build_partition(base, two_set_cover_1d()).unwrap();
        let cell = p.locate(&[r("1/5")]).unwrap();
        assert!(cell.is_block());
        assert_eq!(cell.label.iter().copied().collect::<Vec<_>>(), vec![1]);
        let b = p.block_id_of_cell(cell.id).unwrap();
        assert_eq!(p.singular_points_in_block(b), vec![0]);
    }
}
