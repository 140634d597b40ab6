use crate::BraneError;

/// One stack of D0 units: a position, a velocity, and an integer length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub x: f64,
    pub v: f64,
    pub len: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct D0System {
    pub clusters: Vec<Cluster>,
    pub dt: f64,
    pub merge_eps: f64,
}

impl D0System {
    pub fn new(clusters: Vec<Cluster>, dt: f64, merge_eps: f64) -> Result<Self, BraneError> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(BraneError::BadConfig(format!("time step {dt} not positive")));
        }
        if !(merge_eps >= 0.0) || !merge_eps.is_finite() {
            return Err(BraneError::BadConfig(format!("merge window {merge_eps} negative")));
        }
        for c in &clusters {
            if c.len == 0 {
                return Err(BraneError::BadConfig("cluster of length zero".into()));
            }
            if !c.x.is_finite() || !c.v.is_finite() {
                return Err(BraneError::BadConfig("non-finite cluster state".into()));
            }
        }
        Ok(D0System {
            clusters,
            dt,
            merge_eps,
        })
    }

    pub fn total_length(&self) -> Result<u64, BraneError> {
        self.clusters.iter().try_fold(0u64, |acc, c| {
            acc.checked_add(c.len)
                .ok_or_else(|| BraneError::BadConfig("total length overflows".into()))
        })
    }
}

/// A 1-dimensional target seen by the scattering dynamics: wall positions in
/// ascending order and the block rank between consecutive walls.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterTarget {
    walls: Vec<f64>,
    ranks: Vec<usize>,
}

impl ScatterTarget {
    pub fn new(walls: Vec<f64>, ranks: Vec<usize>) -> Result<Self, BraneError> {
        if ranks.len() != walls.len() + 1 {
            return Err(BraneError::BadConfig(format!(
                "{} ranks for {} walls",
                ranks.len(),
                walls.len()
            )));
        }
        if ranks.iter().any(|&r| r == 0) {
            return Err(BraneError::BadConfig("block rank zero".into()));
        }
        if walls.iter().any(|w| !w.is_finite()) {
            return Err(BraneError::BadConfig("non-finite wall".into()));
        }
        if walls.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BraneError::BadConfig("walls must be strictly ascending".into()));
        }
        Ok(ScatterTarget { walls, ranks })
    }

    /// Contiguous blocks `(lo, hi, rank)`; consecutive blocks must share an
    /// endpoint, which becomes a wall.
    pub fn from_blocks(blocks: &[(f64, f64, usize)]) -> Result<Self, BraneError> {
        if blocks.is_empty() {
            return Err(BraneError::BadConfig("no blocks".into()));
        }
        for (lo, hi, _) in blocks {
            if !(lo < hi) {
                return Err(BraneError::BadConfig(format!("degenerate block [{lo}, {hi}]")));
            }
        }
        for pair in blocks.windows(2) {
            if pair[0].1 != pair[1].0 {
                return Err(BraneError::BadConfig(format!(
                    "blocks [{}, {}] and [{}, {}] are not contiguous",
                    pair[0].0, pair[0].1, pair[1].0, pair[1].1
                )));
            }
        }
        let walls = blocks[..blocks.len() - 1].iter().map(|b| b.1).collect();
        let ranks = blocks.iter().map(|b| b.2).collect();
        ScatterTarget::new(walls, ranks)
    }

    pub fn walls(&self) -> &[f64] {
        &self.walls
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

pub const TRANSMISSION_RULE: &str = "maximal-transmission (extension)";

/// Record of one wall interaction.
#[derive(Clone, Debug, PartialEq)]
pub struct WallEvent {
    pub step: usize,
    pub time: f64,
    pub wall: f64,
    pub direction: i8,
    pub rank_from: usize,
    pub rank_to: usize,
    pub pooled_clusters: usize,
    pub pooled_length: u64,
    pub transmitted_stacks: u64,
    pub transmitted_length: u64,
    pub reflected_length: u64,
    pub rule: &'static str,
}

#[derive(Clone, Debug)]
pub struct ScatterReport {
    pub clusters: Vec<Cluster>,
    pub events: Vec<WallEvent>,
    pub steps: usize,
    pub total_length: u64,
}

#[derive(Clone, Copy)]
struct Body {
    x: f64,
    v: f64,
    len: u64,
    just_left: Option<usize>,
}

fn next_wall(target: &ScatterTarget, b: &Body) -> Option<usize> {
    if b.v > 0.0 {
        (0..target.walls.len()).find(|&k| {
            let w = target.walls[k];
            w > b.x || (w == b.x && b.just_left != Some(k))
        })
    } else if b.v < 0.0 {
        (0..target.walls.len()).rev().find(|&k| {
            let w = target.walls[k];
            w < b.x || (w == b.x && b.just_left != Some(k))
        })
    } else {
        None
    }
}

/// Advance the cluster system for `steps` time steps of `sys.dt`. Crossing a
/// wall into a block of rank `rho` transmits as many stacked length-`rho`
/// clusters as the pooled length allows and reflects the remainder; this
/// maximal-transmission rule is an extension of the unit-hopping picture and
/// every logged event is tagged with it. Total length is conserved exactly.
pub fn run_scattering(
    sys: &D0System,
    target: &ScatterTarget,
    steps: usize,
) -> Result<ScatterReport, BraneError> {
    let checked = D0System::new(sys.clusters.clone(), sys.dt, sys.merge_eps)?;
    let total = checked.total_length()?;
    let mut bodies: Vec<Body> = checked
        .clusters
        .iter()
        .map(|c| Body {
            x: c.x,
            v: c.v,
            len: c.len,
            just_left: None,
        })
        .collect();
    let mut events = Vec::new();
    let interaction_cap = 64 * (bodies.len() + 4) * (target.walls.len() + 4);
    for step in 0..steps {
        sort_bodies(&mut bodies);
        let mut s = 0.0f64;
        let mut interactions = 0usize;
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for (i, b) in bodies.iter().enumerate() {
                let Some(k) = next_wall(target, b) else { continue };
                let t = (s + (target.walls[k] - b.x) / b.v).max(s);
                if t > sys.dt {
                    continue;
                }
                let cand = (t, k, i);
                if best.map_or(true, |cur| {
                    cand.0 < cur.0 || (cand.0 == cur.0 && (cand.1, cand.2) < (cur.1, cur.2))
                }) {
                    best = Some(cand);
                }
            }
            let Some((t, k, lead)) = best else {
                let delta = sys.dt - s;
                for b in bodies.iter_mut() {
                    b.x += b.v * delta;
                }
                break;
            };
            let delta = t - s;
            if delta > 0.0 {
                for b in bodies.iter_mut() {
                    b.x += b.v * delta;
                    if let Some(j) = b.just_left {
                        if b.x != target.walls[j] {
                            b.just_left = None;
                        }
                    }
                }
            }
            s = t;
            let w = target.walls[k];
            bodies[lead].x = w;
            let dir = if bodies[lead].v > 0.0 { 1i8 } else { -1i8 };
            let v_inc = bodies[lead].v;
            let (rank_from, rank_to) = if dir > 0 {
                (target.ranks[k], target.ranks[k + 1])
            } else {
                (target.ranks[k + 1], target.ranks[k])
            };
            let pooled: Vec<usize> = bodies
                .iter()
                .enumerate()
                .filter(|(_, b)| {
                    let same_dir = (b.v > 0.0) == (dir > 0) && b.v != 0.0;
                    let incident = if dir > 0 { w - b.x } else { b.x - w };
                    same_dir
                        && b.just_left != Some(k)
                        && incident >= 0.0
                        && incident <= sys.merge_eps
                })
                .map(|(i, _)| i)
                .collect();
            let pooled_length: u64 = pooled.iter().map(|&i| bodies[i].len).sum();
            let rho = rank_to as u64;
            let stacks = pooled_length / rho;
            let transmitted = stacks * rho;
            let reflected = pooled_length - transmitted;
            let mut kept: Vec<Body> = bodies
                .iter()
                .enumerate()
                .filter(|(i, _)| !pooled.contains(i))
                .map(|(_, b)| *b)
                .collect();
            for _ in 0..stacks {
                kept.push(Body {
                    x: w,
                    v: v_inc,
                    len: rho,
                    just_left: Some(k),
                });
            }
            if reflected > 0 {
                kept.push(Body {
                    x: w,
                    v: -v_inc,
                    len: reflected,
                    just_left: Some(k),
                });
            }
            bodies = kept;
            events.push(WallEvent {
                step,
                time: step as f64 * sys.dt + s,
                wall: w,
                direction: dir,
                rank_from,
                rank_to,
                pooled_clusters: pooled.len(),
                pooled_length,
                transmitted_stacks: stacks,
                transmitted_length: transmitted,
                reflected_length: reflected,
                rule: TRANSMISSION_RULE,
            });
            interactions += 1;
            if interactions > interaction_cap {
                return Err(BraneError::BadConfig(
                    "wall interactions did not terminate within one step".into(),
                ));
            }
        }
        let here: u64 = bodies.iter().map(|b| b.len).sum();
        if here != total {
            return Err(BraneError::BadConfig(format!(
                "length {here} after step {step}, expected {total}"
            )));
        }
    }
    sort_bodies(&mut bodies);
    Ok(ScatterReport {
        clusters: bodies
            .into_iter()
            .map(|b| Cluster {
                x: b.x,
                v: b.v,
                len: b.len,
            })
            .collect(),
        events,
        steps,
        total_length: total,
    })
}

fn sort_bodies(bodies: &mut [Body]) {
    bodies.sort_by(|a, b| {
        a.x.total_cmp(&b.x)
            .then(a.v.total_cmp(&b.v))
            .then(a.len.cmp(&b.len))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_construction_is_checked() {
        assert!(ScatterTarget::new(vec![0.0, 1.0], vec![1, 2, 3]).is_ok());
        assert!(ScatterTarget::new(vec![1.0, 0.0], vec![1, 2, 3]).is_err());
        assert!(ScatterTarget::new(vec![0.0], vec![1]).is_err());
        assert!(ScatterTarget::new(vec![0.0], vec![1, 0]).is_err());
        let t = ScatterTarget::from_blocks(&[(0.0, 1.5, 1), (1.5, 2.5, 3)]).unwrap();
        assert_eq!(t.walls(), &[1.5]);
        assert_eq!(t.ranks(), &[1, 3]);
        assert!(ScatterTarget::from_blocks(&[(0.0, 1.0, 1), (1.1, 2.0, 3)]).is_err());
    }

    #[test]
    fn still_clusters_never_interact() {
        let sys = D0System::new(
            vec![Cluster { x: 0.5, v: 0.0, len: 4 }],
            0.1,
            0.0,
        )
        .unwrap();
        let target = ScatterTarget::new(vec![0.5], vec![1, 2]).unwrap();
        let report = run_scattering(&sys, &target, 50).unwrap();
        assert!(report.events.is_empty());
        assert_eq!(report.clusters[0].x, 0.5);
    }
}
