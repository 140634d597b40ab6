use crate::fail::{fail_with, parse_err, read_json, violation, CmdResult, Failure};
use crate::report::{header, RunMeta};
use crate::scalars::{fnum, get, get_array, get_usize, value_to_f64, value_to_pair};
use brane::{
    commutator_penalty, energy, minimize, run_scattering, seeded_map, BraneMap, Cluster, CMat,
    D0System, GaugeField, MinimizeParams, ScatterTarget, WallEvent, WorldvolumeLattice,
};
use exactmat::{rat_to_f64, Complex64};
use serde_json::Value;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_SCATTER: &str = "forge.scatter";
pub const SCHEMA_ENERGY: &str = "forge.energy";
pub const SCHEMA_ENERGY_MIN: &str = "forge.energy-min";
pub const SCHEMA_MAP: &str = "forge.brane-map";

fn brane_violation(e: &brane::BraneError) -> Failure {
    let kind = match e {
        brane::BraneError::BadLattice(_) => "bad_lattice",
        brane::BraneError::ShapeMismatch(_) => "shape_mismatch",
        brane::BraneError::NotHermitian { .. } => "not_hermitian",
        brane::BraneError::NotUnitary { .. } => "not_unitary",
        brane::BraneError::NoncommutingFiber { .. } => "noncommuting_fiber",
        brane::BraneError::Divergence { .. } => "divergence",
        brane::BraneError::BadConfig(_) => "bad_config",
        brane::BraneError::Target(_) => "target",
    };
    fail_with(vec![violation(kind, e.to_string())])
}

fn value_to_cmat(v: &Value, what: &str) -> Result<CMat, Failure> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected a matrix")))?;
    let r = rows.len();
    let mut data: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("{what}: row {i} is not an array")))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            let (re, im) = value_to_pair(e, &format!("{what}[{i}][{j}]"))?;
            out.push(Complex64::new(rat_to_f64(&re), rat_to_f64(&im)));
        }
        data.push(out);
    }
    if r == 0 || data.iter().any(|row| row.len() != data[0].len()) {
        return Err(parse_err(format!("{what}: empty or ragged matrix")));
    }
    let c = data[0].len();
    Ok(CMat::from_fn(r, c, |i, j| data[i][j]))
}

fn cmat_value(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| {
                            let z = m[(i, j)];
                            serde_json::json!([
                                exactmat::fmt_f64(z.re, crate::scalars::SIG),
                                exactmat::fmt_f64(z.im, crate::scalars::SIG),
                            ])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn parse_lattice(v: &Value) -> Result<WorldvolumeLattice, Failure> {
    let dims = get_array(v, "dims", "lattice")?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| parse_err(format!("lattice.dims[{i}]: expected an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spacing = value_to_f64(get(v, "spacing", "lattice")?, "lattice.spacing")?;
    let periodic = get_array(v, "periodic", "lattice")?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_bool()
                .ok_or_else(|| parse_err(format!("lattice.periodic[{i}]: expected a boolean")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weights = get_array(v, "weights", "lattice")?
        .iter()
        .enumerate()
        .map(|(i, x)| value_to_f64(x, &format!("lattice.weights[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    WorldvolumeLattice::new(dims, spacing, periodic, weights).map_err(|e| brane_violation(&e))
}

pub fn parse_map(v: &Value) -> Result<(BraneMap, Vec<usize>), Failure> {
    let r = get_usize(v, "r", "map")?;
    let n = get_usize(v, "n", "map")?;
    let sites = get_array(v, "sites", "map")?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| parse_err(format!("map.sites[{i}]: expected an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let expected: usize = sites.iter().product();

    let m_v = get_array(v, "m", "map")?;
    if m_v.len() != expected {
        return Err(fail_with(vec![violation(
            "shape_mismatch",
            format!(
                "map lists {} sites but the extents {:?} give {expected}",
                m_v.len(),
                sites
            ),
        )]));
    }
    let mut m = Vec::with_capacity(m_v.len());
    for (s, site_v) in m_v.iter().enumerate() {
        let mats_v = site_v
            .as_array()
            .ok_or_else(|| parse_err(format!("map.m[{s}]: expected an array of matrices")))?;
        let mut mats = Vec::with_capacity(mats_v.len());
        for (a, mat_v) in mats_v.iter().enumerate() {
            mats.push(value_to_cmat(mat_v, &format!("map.m[{s}][{a}]"))?);
        }
        m.push(mats);
    }
    let map = BraneMap::new(r, n, m).map_err(|e| brane_violation(&e))?;
    Ok((map, sites))
}

pub fn map_artifact(map: &BraneMap, sites: &[usize], meta: &RunMeta) -> Value {
    let mut m = header(SCHEMA_MAP, meta);
    m.insert("r".into(), Value::from(map.rank()));
    m.insert("n".into(), Value::from(map.coords()));
    m.insert(
        "sites".into(),
        Value::Array(sites.iter().map(|s| Value::from(*s)).collect()),
    );
    m.insert(
        "m".into(),
        Value::Array(
            map.matrices()
                .iter()
                .map(|mats| Value::Array(mats.iter().map(cmat_value).collect()))
                .collect(),
        ),
    );
    Value::Object(m)
}

pub fn parse_gauge(
    v: &Value,
    lat: &WorldvolumeLattice,
    tol: f64,
) -> Result<GaugeField, Failure> {
    let r = get_usize(v, "r", "gauge")?;
    let links_v = get_array(v, "links", "gauge")?;
    let mut links = Vec::with_capacity(links_v.len());
    for (s, site_v) in links_v.iter().enumerate() {
        let axes_v = site_v
            .as_array()
            .ok_or_else(|| parse_err(format!("gauge.links[{s}]: expected an array")))?;
        let mut axes = Vec::with_capacity(axes_v.len());
        for (a, link_v) in axes_v.iter().enumerate() {
            if link_v.is_null() {
                axes.push(None);
            } else {
                axes.push(Some(value_to_cmat(
                    link_v,
                    &format!("gauge.links[{s}][{a}]"),
                )?));
            }
        }
        links.push(axes);
    }
    GaugeField::new(lat, r, links, tol.max(1e-9)).map_err(|e| brane_violation(&e))
}

fn event_value(e: &WallEvent) -> Value {
    serde_json::json!({
        "step": e.step,
        "time": fnum(e.time),
        "wall": fnum(e.wall),
        "direction": e.direction,
        "rank_from": e.rank_from,
        "rank_to": e.rank_to,
        "pooled_clusters": e.pooled_clusters,
        "pooled_length": e.pooled_length,
        "transmitted_stacks": e.transmitted_stacks,
        "transmitted_length": e.transmitted_length,
        "reflected_length": e.reflected_length,
        "rule": e.rule,
    })
}

pub fn scatter(input: &Path, steps: usize, log: Option<&Path>, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;

    let blocks = get_array(&v, "blocks", "scatter config")?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let what = format!("blocks[{i}]");
            Ok((
                value_to_f64(get(b, "lo", &what)?, &format!("{what}.lo"))?,
                value_to_f64(get(b, "hi", &what)?, &format!("{what}.hi"))?,
                get_usize(b, "rank", &what)?,
            ))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let clusters = get_array(&v, "clusters", "scatter config")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let what = format!("clusters[{i}]");
            Ok(Cluster {
                x: value_to_f64(get(c, "x", &what)?, &format!("{what}.x"))?,
                v: value_to_f64(get(c, "v", &what)?, &format!("{what}.v"))?,
                len: get(c, "len", &what)?
                    .as_u64()
                    .ok_or_else(|| parse_err(format!("{what}.len: expected an integer")))?,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let dt = value_to_f64(get(&v, "dt", "scatter config")?, "dt")?;
    let merge_eps = value_to_f64(get(&v, "merge_eps", "scatter config")?, "merge_eps")?;

    let target = ScatterTarget::from_blocks(&blocks).map_err(|e| brane_violation(&e))?;
    let sys = D0System::new(clusters, dt, merge_eps).map_err(|e| brane_violation(&e))?;
    let rep = run_scattering(&sys, &target, steps).map_err(|e| brane_violation(&e))?;

    if let Some(path) = log {
        let mut out = String::new();
        for e in &rep.events {
            out.push_str(&serde_json::to_string(&event_value(e)).expect("event serialization"));
            out.push('\n');
        }
        let mut f = std::fs::File::create(path)
            .map_err(|e| parse_err(format!("cannot create {}: {e}", path.display())))?;
        f.write_all(out.as_bytes())
            .map_err(|e| parse_err(format!("cannot write {}: {e}", path.display())))?;
    }

    let final_clusters: Vec<Value> = rep
        .clusters
        .iter()
        .map(|c| serde_json::json!({"x": fnum(c.x), "v": fnum(c.v), "len": c.len}))
        .collect();
    let mut m = header(SCHEMA_SCATTER, meta);
    m.insert("steps".into(), Value::from(rep.steps));
    m.insert("dt".into(), fnum(dt));
    m.insert("merge_eps".into(), fnum(merge_eps));
    m.insert(
        "walls".into(),
        Value::Array(target.walls().iter().map(|w| fnum(*w)).collect()),
    );
    m.insert(
        "ranks".into(),
        Value::Array(target.ranks().iter().map(|r| Value::from(*r)).collect()),
    );
    m.insert("total_length".into(), Value::from(rep.total_length));
    m.insert("num_events".into(), Value::from(rep.events.len()));
    m.insert("final_clusters".into(), Value::Array(final_clusters));
    Ok(Value::Object(m))
}

fn load_triple(
    map: &Path,
    gauge: &Path,
    lattice: &Path,
    meta: &RunMeta,
) -> Result<(BraneMap, Vec<usize>, GaugeField, WorldvolumeLattice), Failure> {
    let lat = parse_lattice(&read_json(lattice)?)?;
    let (bm, sites) = parse_map(&read_json(map)?)?;
    if sites != lat.extents() {
        return Err(fail_with(vec![violation(
            "shape_mismatch",
            format!(
                "map extents {:?} do not match lattice dims {:?}",
                sites,
                lat.extents()
            ),
        )]));
    }
    let gf = parse_gauge(&read_json(gauge)?, &lat, meta.tol)?;
    Ok((bm, sites, gf, lat))
}

pub fn energy_cmd(
    map: &Path,
    gauge: &Path,
    lattice: &Path,
    tension: f64,
    meta: &RunMeta,
) -> CmdResult {
    let (bm, _, gf, lat) = load_triple(map, gauge, lattice, meta)?;
    let e = energy(&bm, &gf, &lat, tension).map_err(|e| brane_violation(&e))?;
    let p = commutator_penalty(&bm);

    let mut m = header(SCHEMA_ENERGY, meta);
    m.insert("r".into(), Value::from(bm.rank()));
    m.insert("n".into(), Value::from(bm.coords()));
    m.insert("num_sites".into(), Value::from(bm.num_sites()));
    m.insert("tension".into(), fnum(tension));
    m.insert("energy".into(), fnum(e));
    m.insert("commutator_penalty".into(), fnum(p));
    Ok(Value::Object(m))
}

#[allow(clippy::too_many_arguments)]
pub fn energy_min(
    map: &Path,
    gauge: &Path,
    lattice: &Path,
    tension: f64,
    kappa: f64,
    step: f64,
    max_iter: usize,
    random_init: bool,
    init_scale: f64,
    meta: &RunMeta,
) -> CmdResult {
    let (bm, sites, gf, lat) = load_triple(map, gauge, lattice, meta)?;
    let start = if random_init {
        seeded_map(meta.seed, &lat, bm.rank(), bm.coords(), init_scale)
    } else {
        bm
    };

    let params = MinimizeParams {
        tension,
        kappa,
        step,
        max_iter,
        ..MinimizeParams::default()
    };
    let rep = minimize(&start, &gf, &lat, params).map_err(|e| brane_violation(&e))?;
    let final_energy = energy(&rep.map, &gf, &lat, tension).map_err(|e| brane_violation(&e))?;

    let mut m = header(SCHEMA_ENERGY_MIN, meta);
    m.insert("iterations".into(), Value::from(rep.iterations));
    m.insert("kappa".into(), fnum(kappa));
    m.insert("kappa_final".into(), fnum(rep.kappa_final));
    m.insert("defect".into(), fnum(rep.defect));
    m.insert(
        "objective_initial".into(),
        fnum(*rep.history.first().expect("nonempty history")),
    );
    m.insert(
        "objective_final".into(),
        fnum(*rep.history.last().expect("nonempty history")),
    );
    m.insert("energy_final".into(), fnum(final_energy));
    m.insert(
        "history".into(),
        Value::Array(rep.history.iter().map(|x| fnum(*x)).collect()),
    );
    m.insert("map".into(), map_artifact(&rep.map, &sites, meta));
    Ok(Value::Object(m))
}
