use crate::fail::{fail_with, parse_err, read_json, violation, CmdResult, Failure};
use crate::report::{header, RunMeta};
use crate::scalars::{get, get_array, get_usize};
use dimer::{
    center_presentation, dual_quiver, jacobian_consistency, matching_polygon, nc_toric_data,
    superpotential, validate_dimer, Color, ConditionStatus, DimerEdge, DimerModel, DimerVertex,
};
use serde_json::Value;
use std::path::Path;

pub const SCHEMA: &str = "forge.dimer";

/// Matchings are enumerated fully; this only guards against runaway input.
const MATCHING_LIMIT: usize = 4096;

pub fn parse_dimer(v: &Value) -> Result<DimerModel, Failure> {
    let verts_v = get_array(v, "vertices", "dimer")?;
    let mut vertices = Vec::with_capacity(verts_v.len());
    for (i, vert) in verts_v.iter().enumerate() {
        let what = format!("vertices[{i}]");
        let id = get_usize(vert, "id", &what)?;
        let color = match get(vert, "color", &what)?.as_str() {
            Some("b") | Some("black") => Color::Black,
            Some("w") | Some("white") => Color::White,
            _ => {
                return Err(parse_err(format!(
                    "{what}.color: expected \"b\" or \"w\""
                )))
            }
        };
        let cyclic_edges = get_array(vert, "cyclic_edges", &what)?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                e.as_u64().map(|n| n as usize).ok_or_else(|| {
                    parse_err(format!("{what}.cyclic_edges[{k}]: expected an edge id"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        vertices.push(DimerVertex {
            id,
            color,
            cyclic_edges,
        });
    }

    let edges_v = get_array(v, "edges", "dimer")?;
    let mut edges = Vec::with_capacity(edges_v.len());
    for (i, edge) in edges_v.iter().enumerate() {
        let what = format!("edges[{i}]");
        let offset_v = get_array(edge, "offset", &what)?;
        if offset_v.len() != 2 {
            return Err(parse_err(format!("{what}.offset: expected [dx, dy]")));
        }
        let dx = offset_v[0]
            .as_i64()
            .ok_or_else(|| parse_err(format!("{what}.offset[0]: expected an integer")))?;
        let dy = offset_v[1]
            .as_i64()
            .ok_or_else(|| parse_err(format!("{what}.offset[1]: expected an integer")))?;
        edges.push(DimerEdge {
            id: get_usize(edge, "id", &what)?,
            black: get_usize(edge, "black", &what)?,
            white: get_usize(edge, "white", &what)?,
            offset: (dx, dy),
        });
    }

    Ok(DimerModel { vertices, edges })
}

fn status_str(s: &ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Pass => "pass",
        ConditionStatus::Fail => "fail",
        ConditionStatus::Unresolved => "unresolved",
    }
}

pub fn analyze(input: &Path, depth: u32, cap: u32, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;
    let d = parse_dimer(&v)?;

    let viols = validate_dimer(&d);
    if !viols.is_empty() {
        let vals = viols
            .iter()
            .map(|x| violation(&x.kind, x.message.clone()))
            .collect();
        return Err(fail_with(vals));
    }
    let q = dual_quiver(&d).map_err(|viols| {
        fail_with(
            viols
                .iter()
                .map(|x| violation(&x.kind, x.message.clone()))
                .collect(),
        )
    })?;
    let w = superpotential(&q);
    let data = nc_toric_data(&d, MATCHING_LIMIT)
        .map_err(|e| fail_with(vec![violation("toric_data", e.to_string())]))?;
    let conditions = dimer::validate_nc_toric_data(&data, depth);
    let center = center_presentation(&data, cap)
        .map_err(|e| fail_with(vec![violation("center", e.to_string())]))?;
    let jac = jacobian_consistency(&q, &data.lattice);
    let polygon = matching_polygon(&d, &data.matchings);

    let consistent = conditions
        .iter()
        .all(|c| matches!(c.status, ConditionStatus::Pass))
        && jac.is_empty();

    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|a| serde_json::json!({"id": a.id, "tail": a.tail, "head": a.head}))
        .collect();
    let faces: Vec<Value> = w
        .iter()
        .map(|f| {
            serde_json::json!({
                "dimer_vertex": f.dimer_vertex,
                "sign": f.sign,
                "arrows": f.arrows,
            })
        })
        .collect();
    let matchings: Vec<Value> = data
        .matchings
        .iter()
        .map(|m| Value::Array(m.iter().map(|e| Value::from(*e)).collect()))
        .collect();
    let polygon_v: Vec<Value> = polygon
        .iter()
        .map(|(x, y)| serde_json::json!([x, y]))
        .collect();
    let rays: Vec<Value> = data
        .cone
        .rays()
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| Value::from(*x)).collect()))
        .collect();
    let conditions_v: Vec<Value> = conditions
        .iter()
        .map(|c| {
            serde_json::json!({
                "name": c.name,
                "status": status_str(&c.status),
                "detail": c.detail,
            })
        })
        .collect();
    let int_rows = |rows: &[Vec<i64>]| -> Vec<Value> {
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::from(*x)).collect()))
            .collect()
    };
    let jac_v: Vec<Value> = jac
        .iter()
        .map(|x| violation(&x.kind, x.message.clone()))
        .collect();

    let mut m = header(SCHEMA, meta);
    m.insert(
        "quiver".into(),
        serde_json::json!({
            "num_vertices": q.num_vertices,
            "num_arrows": q.arrows.len(),
            "arrows": arrows,
        }),
    );
    m.insert("superpotential".into(), Value::Array(faces));
    m.insert("num_matchings".into(), Value::from(data.matchings.len()));
    m.insert("matchings".into(), Value::Array(matchings));
    m.insert("polygon".into(), Value::Array(polygon_v));
    m.insert(
        "lattice".into(),
        serde_json::json!({
            "rank": data.lattice.rank,
            "rank_d1": data.lattice.rank_d1,
            "arrow_classes": int_rows(&data.lattice.arrow_classes),
        }),
    );
    m.insert("sigma_rays".into(), Value::Array(rays));
    m.insert("conditions".into(), Value::Array(conditions_v));
    m.insert(
        "center".into(),
        serde_json::json!({
            "generators": int_rows(&center.generators),
            "relations": int_rows(&center.relations),
        }),
    );
    m.insert("jacobian_violations".into(), Value::Array(jac_v));
    m.insert("consistent".into(), Value::Bool(consistent));
    m.insert("depth".into(), Value::from(depth));
    m.insert("degree_cap".into(), Value::from(cap));
    Ok(Value::Object(m))
}
