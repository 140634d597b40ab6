use crate::fail::{fail_with, parse_err, read_json, violation, CmdResult, Failure};
use crate::report::{header, RunMeta};
use crate::scalars::{
    bool_list, get, get_array, get_usize, rat_list, rat_value, rat_vec_value, Mode,
};
use boxpart::{
    build_partition, validate_covering, BaseSpace, BoxRegion, Cell, Interval, PartitionedBase,
    RegularCovering, Violation,
};
use serde_json::{Map, Value};
use std::path::Path;

pub const SCHEMA: &str = "forge.partition";

pub fn violation_values(viols: &[Violation]) -> Vec<Value> {
    viols
        .iter()
        .map(|v| violation(&v.kind, v.message.clone()))
        .collect()
}

/// Parses the shared base-description fields: a closed ambient box with
/// optional singular points and an indexed box covering.
pub fn parse_base(v: &Value) -> Result<(BaseSpace, RegularCovering), Failure> {
    let amb = get(v, "ambient", "input")?;
    let dims = get_usize(amb, "dims", "ambient")?;
    let lo = rat_list(get(amb, "lo", "ambient")?, "ambient.lo")?;
    let hi = rat_list(get(amb, "hi", "ambient")?, "ambient.hi")?;
    if lo.len() != dims || hi.len() != dims {
        return Err(parse_err(format!(
            "ambient: lo and hi must each have {dims} coordinates"
        )));
    }
    let ambient = BoxRegion::closed(lo, hi);

    let singular = match v.get("singular") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(pts)) => pts
            .iter()
            .enumerate()
            .map(|(k, p)| rat_list(p, &format!("singular[{k}]")))
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(parse_err("singular: expected an array of points")),
    };
    let base = BaseSpace::new(ambient, singular)
        .map_err(|msg| fail_with(vec![violation("bad_base", msg)]))?;

    let sets_v = get_array(v, "covering", "input")?;
    let mut sets = Vec::with_capacity(sets_v.len());
    for (k, cset) in sets_v.iter().enumerate() {
        let what = format!("covering[{}]", k + 1);
        let lo = rat_list(get(cset, "lo", &what)?, &format!("{what}.lo"))?;
        let hi = rat_list(get(cset, "hi", &what)?, &format!("{what}.hi"))?;
        if lo.len() != dims || hi.len() != dims {
            return Err(parse_err(format!(
                "{what}: lo and hi must each have {dims} coordinates"
            )));
        }
        let open_lo = bool_list(cset.get("open_lo"), dims, &format!("{what}.open_lo"))?;
        let open_hi = bool_list(cset.get("open_hi"), dims, &format!("{what}.open_hi"))?;
        let axes = lo
            .into_iter()
            .zip(hi)
            .zip(open_lo.into_iter().zip(open_hi))
            .map(|((lo, hi), (open_lo, open_hi))| Interval {
                lo,
                hi,
                open_lo,
                open_hi,
            })
            .collect();
        sets.push(BoxRegion { axes });
    }
    Ok((base, RegularCovering { sets }))
}

pub fn build_validated(
    base: BaseSpace,
    covering: RegularCovering,
) -> Result<PartitionedBase, Failure> {
    let report = validate_covering(&base, &covering);
    if !report.is_empty() {
        return Err(fail_with(violation_values(&report)));
    }
    build_partition(base, covering).map_err(|r| fail_with(violation_values(&r)))
}

/// Serializes base-description fields back out, so emitted settlements
/// re-parse through the same reader.
pub fn base_fields(mode: Mode, base: &BaseSpace, covering: &RegularCovering) -> Map<String, Value> {
    let mut m = Map::new();
    let dims = base.dim();
    let lo: Vec<Value> = base.ambient.axes.iter().map(|iv| rat_value(mode, &iv.lo)).collect();
    let hi: Vec<Value> = base.ambient.axes.iter().map(|iv| rat_value(mode, &iv.hi)).collect();
    m.insert(
        "ambient".into(),
        serde_json::json!({"dims": dims, "lo": lo, "hi": hi}),
    );
    m.insert(
        "singular".into(),
        Value::Array(base.singular.iter().map(|p| rat_vec_value(mode, p)).collect()),
    );
    let sets: Vec<Value> = covering
        .sets
        .iter()
        .map(|s| {
            let lo: Vec<Value> = s.axes.iter().map(|iv| rat_value(mode, &iv.lo)).collect();
            let hi: Vec<Value> = s.axes.iter().map(|iv| rat_value(mode, &iv.hi)).collect();
            let open_lo: Vec<Value> = s.axes.iter().map(|iv| Value::Bool(iv.open_lo)).collect();
            let open_hi: Vec<Value> = s.axes.iter().map(|iv| Value::Bool(iv.open_hi)).collect();
            serde_json::json!({"lo": lo, "hi": hi, "open_lo": open_lo, "open_hi": open_hi})
        })
        .collect();
    m.insert("covering".into(), Value::Array(sets));
    m
}

fn cell_value(mode: Mode, part: &PartitionedBase, c: &Cell) -> Value {
    let lo: Vec<Value> = c.extent.axes.iter().map(|iv| rat_value(mode, &iv.lo)).collect();
    let hi: Vec<Value> = c.extent.axes.iter().map(|iv| rat_value(mode, &iv.hi)).collect();
    let label: Vec<usize> = c.label.iter().copied().collect();
    serde_json::json!({
        "id": c.id,
        "slots": c.slots,
        "codim": c.codim,
        "boundary_depth": c.boundary_depth,
        "label": label,
        "lo": lo,
        "hi": hi,
        "interior": c.is_interior(),
        "block": part.block_id_of_cell(c.id),
    })
}

pub fn run(input: &Path, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;
    let (base, covering) = parse_base(&v)?;
    let part = build_validated(base, covering)?;

    let mut m = header(SCHEMA, meta);
    m.insert("dim".into(), Value::from(part.dim()));
    m.insert("num_cells".into(), Value::from(part.cells().len()));
    m.insert("num_blocks".into(), Value::from(part.num_blocks()));
    m.insert(
        "cells".into(),
        Value::Array(
            part.cells()
                .iter()
                .map(|c| cell_value(meta.mode, &part, c))
                .collect(),
        ),
    );
    m.insert(
        "blocks".into(),
        Value::Array(part.blocks().map(|c| Value::from(c.id)).collect()),
    );
    Ok(Value::Object(m))
}
