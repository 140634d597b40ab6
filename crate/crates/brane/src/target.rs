use crate::{BraneError, GraphPoint, ScatterTarget};
use exactmat::{rat_from_f64, rat_to_f64, Coeff, Rat};
use settlement::Settlement;

/// Cached character data of the endomorphism fiber over one interior cell.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberClassReport {
    pub cell: usize,
    pub codim: usize,
    pub algebra_dim: usize,
    pub characters: usize,
}

/// A settled base together with the fiber algebras a brane map can land in.
pub struct TargetModel<S: Coeff> {
    settlement: Settlement<S>,
    fibers: Vec<FiberClassReport>,
}

impl<S: Coeff> TargetModel<S> {
    pub fn new(settlement: Settlement<S>, tol: f64, seed: u64) -> Result<Self, BraneError> {
        if settlement.ranks().iter().any(|&r| r == 0) {
            return Err(BraneError::Target("block rank zero".into()));
        }
        let base = settlement.base().clone();
        let mut fibers = Vec::new();
        for cell in base.cells().iter().filter(|c| c.is_interior()) {
            let point = base.barycenter(cell);
            let alg = settlement
                .endomorphism_fiber(&point, tol)
                .map_err(|e| BraneError::Target(e.to_string()))?;
            let characters = alg
                .characters(tol.max(1e-9), seed)
                .map(|search| search.characters.len())
                .unwrap_or(0);
            fibers.push(FiberClassReport {
                cell: cell.id,
                codim: cell.codim,
                algebra_dim: alg.dim(),
                characters,
            });
        }
        Ok(TargetModel { settlement, fibers })
    }

    pub fn settlement(&self) -> &Settlement<S> {
        &self.settlement
    }

    pub fn fiber_reports(&self) -> &[FiberClassReport] {
        &self.fibers
    }

    /// Wall positions and block ranks of a 1-dimensional target.
    pub fn scatter_target(&self) -> Result<ScatterTarget, BraneError> {
        let base = self.settlement.base();
        if base.dim() != 1 {
            return Err(BraneError::Target(format!(
                "scattering needs a 1-dimensional base, got dimension {}",
                base.dim()
            )));
        }
        let mut walls: Vec<f64> = base
            .cells()
            .iter()
            .filter(|c| c.is_interior() && c.codim == 1)
            .map(|c| rat_to_f64(&c.extent.axes[0].lo))
            .collect();
        walls.sort_by(f64::total_cmp);
        ScatterTarget::new(walls, self.settlement.ranks().to_vec())
    }
}

/// Whether a rank-`r` brane map into the target exists, with the reason.
pub fn map_existence<S: Coeff>(r: usize, target: &TargetModel<S>) -> (bool, String) {
    if r == 0 {
        return (false, "the brane rank must be positive".into());
    }
    if let Some(f) = target.fibers.iter().find(|f| f.characters > 0) {
        return (
            true,
            format!(
                "the fiber algebra over cell {} admits a character, so constant maps of every rank exist",
                f.cell
            ),
        );
    }
    if let Some(&rho) = target
        .settlement
        .ranks()
        .iter()
        .find(|&&rho| r % rho == 0)
    {
        return (
            true,
            format!("block rank {rho} divides {r}, so block-regular maps exist"),
        );
    }
    (
        false,
        format!("no fiber admits a character and no block rank divides {r}"),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityViolation {
    pub point: usize,
    pub kind: String,
    pub message: String,
}

/// Check the graph points of a map against the target: each multiplicity
/// must be a multiple of the rank of the block the point lands in, with
/// stratum points judged by their distinguished block.
pub fn wall_admissibility<S: Coeff>(
    points: &[GraphPoint],
    target: &TargetModel<S>,
) -> (bool, Vec<AdmissibilityViolation>) {
    let base = target.settlement().base().clone();
    let mut violations = Vec::new();
    let fail = |idx: usize, kind: &str, message: String, out: &mut Vec<AdmissibilityViolation>| {
        out.push(AdmissibilityViolation {
            point: idx,
            kind: kind.into(),
            message,
        });
    };
    for (idx, gp) in points.iter().enumerate() {
        if gp.point.len() != base.dim() {
            fail(
                idx,
                "dimension_mismatch",
                format!("point has {} coordinates, base has {}", gp.point.len(), base.dim()),
                &mut violations,
            );
            continue;
        }
        let coords: Option<Vec<Rat>> = gp.point.iter().map(|&x| rat_from_f64(x)).collect();
        let Some(coords) = coords else {
            fail(idx, "bad_point", "coordinate is not finite".into(), &mut violations);
            continue;
        };
        let cell = match base.locate(&coords) {
            Ok(cell) => cell,
            Err(e) => {
                fail(idx, "outside_target", e, &mut violations);
                continue;
            }
        };
        let rho = if let Some(block) = base.block_id_of_cell(cell.id) {
            target.settlement().ranks()[block]
        } else {
            match target.settlement().distinguished_block(&coords) {
                Ok((block, _)) => target.settlement().ranks()[block],
                Err(e) => {
                    fail(idx, "stratum_error", e.to_string(), &mut violations);
                    continue;
                }
            }
        };
        if gp.multiplicity % rho != 0 {
            fail(
                idx,
                "indivisible_multiplicity",
                format!(
                    "multiplicity {} is not a multiple of the block rank {rho}",
                    gp.multiplicity
                ),
                &mut violations,
            );
        }
    }
    (violations.is_empty(), violations)
}
