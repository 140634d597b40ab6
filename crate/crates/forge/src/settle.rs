use crate::algebra::algebra_artifact;
use crate::fail::{fail_with, parse_err, read_json, violation, CmdResult, Failure};
use crate::partition::{base_fields, build_validated, parse_base, violation_values};
use crate::report::{header, render, RunMeta};
use crate::scalars::{
    get, get_array, get_usize, matrix_value, rat_vec_value, value_to_matrix, value_to_scalar,
};
use exactmat::{rat_parse, Coeff, Rat};
use serde_json::{Map, Value};
use settlement::{Clutching, SettleError, Settlement};
use std::path::Path;
use std::sync::Arc;
use tensorial::{grow, validate_seed, SeedBundle, SeedSystem};

pub const SCHEMA_CHECK: &str = "forge.settle-check";
pub const SCHEMA_FIBER: &str = "forge.fiber";
pub const SCHEMA_SETTLEMENT: &str = "forge.settlement";

pub fn parse_settlement<S: Coeff>(v: &Value, tol: f64) -> Result<Settlement<S>, Failure> {
    let (base, covering) = parse_base(v)?;
    let part = Arc::new(build_validated(base, covering)?);

    let blocks_v = get_array(v, "blocks", "settlement")?;
    let mut ranks = Vec::with_capacity(blocks_v.len());
    let mut labels = Vec::with_capacity(blocks_v.len());
    for (i, b) in blocks_v.iter().enumerate() {
        let what = format!("blocks[{i}]");
        let id = get_usize(b, "id", &what)?;
        if id != i {
            return Err(parse_err(format!(
                "{what}: blocks must be listed in id order, found id {id}"
            )));
        }
        ranks.push(get_usize(b, "rank", &what)?);
        labels.push(b.get("label").and_then(|s| s.as_str()).map(String::from));
    }

    let clutch_v = get_array(v, "clutchings", "settlement")?;
    let mut clutchings = Vec::with_capacity(clutch_v.len());
    for (k, c) in clutch_v.iter().enumerate() {
        let what = format!("clutchings[{k}]");
        clutchings.push(Clutching {
            stratum: get_usize(c, "stratum", &what)?,
            src: get_usize(c, "src", &what)?,
            dst: get_usize(c, "dst", &what)?,
            matrix: value_to_matrix::<S>(get(c, "matrix", &what)?, &format!("{what}.matrix"))?,
        });
    }

    Settlement::new(part, ranks, labels, clutchings, tol)
        .map_err(|viols| fail_with(violation_values(&viols)))
}

/// Full settlement artifact: base description plus blocks and clutching
/// records, re-readable by `parse_settlement`.
pub fn settlement_value<S: Coeff>(s: &Settlement<S>, meta: &RunMeta) -> Value {
    let mut m = header(SCHEMA_SETTLEMENT, meta);
    let part = s.base();
    for (k, v) in base_fields(meta.mode, &part.base, &part.covering) {
        m.insert(k, v);
    }
    let blocks: Vec<Value> = s
        .ranks()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut b = Map::new();
            b.insert("id".into(), Value::from(i));
            b.insert("rank".into(), Value::from(*r));
            if let Some(l) = s.label_of(i) {
                b.insert("label".into(), Value::String(l.to_string()));
            }
            Value::Object(b)
        })
        .collect();
    m.insert("blocks".into(), Value::Array(blocks));
    let clutchings: Vec<Value> = s
        .clutchings()
        .iter()
        .map(|c| {
            serde_json::json!({
                "stratum": c.stratum,
                "src": c.src,
                "dst": c.dst,
                "matrix": matrix_value(meta.mode, &c.matrix),
            })
        })
        .collect();
    m.insert("clutchings".into(), Value::Array(clutchings));
    Value::Object(m)
}

fn settle_error_value(e: &SettleError) -> Value {
    let kind = match e {
        SettleError::BadPoint(_) => "bad_point",
        SettleError::Unsaturated(_) => "unsaturated",
        SettleError::NotConcordant(_) => "not_concordant",
        SettleError::Invalid(_) => "invalid",
    };
    violation(kind, e.to_string())
}

pub fn check<S: Coeff>(input: &Path, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;
    let s = parse_settlement::<S>(&v, meta.tol)?;
    let path_viols = s
        .check_consistency(meta.tol)
        .map_err(|e| fail_with(vec![settle_error_value(&e)]))?;
    if !path_viols.is_empty() {
        let vals = path_viols
            .iter()
            .map(|p| {
                serde_json::json!({
                    "kind": "path_mismatch",
                    "stratum": p.stratum,
                    "src": p.src,
                    "dst": p.dst,
                    "message": p.message,
                })
            })
            .collect();
        return Err(fail_with(vals));
    }

    let strata_checked = s
        .base()
        .cells()
        .iter()
        .filter(|c| c.is_interior() && !c.is_block())
        .count();
    let mut m = header(SCHEMA_CHECK, meta);
    m.insert("status".into(), Value::String("pass".into()));
    m.insert("num_blocks".into(), Value::from(s.ranks().len()));
    m.insert("num_clutchings".into(), Value::from(s.clutchings().len()));
    m.insert("num_strata_checked".into(), Value::from(strata_checked));
    m.insert(
        "ranks".into(),
        Value::Array(s.ranks().iter().map(|r| Value::from(*r)).collect()),
    );
    Ok(Value::Object(m))
}

pub fn parse_point(point: &[String]) -> Result<Vec<Rat>, Failure> {
    point
        .iter()
        .map(|c| {
            rat_parse(c).ok_or_else(|| parse_err(format!("point: cannot parse coordinate '{c}'")))
        })
        .collect()
}

pub fn fiber<S: Coeff>(
    input: &Path,
    point: &[String],
    emit: Option<&Path>,
    meta: &RunMeta,
) -> CmdResult {
    let v = read_json(input)?;
    let s = parse_settlement::<S>(&v, meta.tol)?;
    let pt = parse_point(point)?;

    let fib = s
        .decorated_fiber(&pt, meta.tol)
        .map_err(|e| fail_with(vec![settle_error_value(&e)]))?;
    let alg = s
        .endomorphism_fiber(&pt, meta.tol)
        .map_err(|e| fail_with(vec![settle_error_value(&e)]))?;
    let chars = alg
        .characters(meta.tol.max(1e-9), meta.seed)
        .map(|cs| cs.characters.len())
        .unwrap_or(0);

    if let Some(path) = emit {
        let artifact = algebra_artifact(&alg, meta);
        std::fs::write(path, render(&artifact))
            .map_err(|e| parse_err(format!("cannot write {}: {e}", path.display())))?;
    }

    let subspaces: Vec<Value> = fib
        .subspaces
        .iter()
        .map(|sub| {
            serde_json::json!({
                "block": sub.block,
                "dim": sub.dim,
                "path": sub.path,
            })
        })
        .collect();
    let order: Vec<Value> = fib
        .order
        .iter()
        .map(|(i, j)| serde_json::json!([i, j]))
        .collect();

    let mut m = header(SCHEMA_FIBER, meta);
    m.insert("point".into(), rat_vec_value(meta.mode, &pt));
    m.insert("ambient_block".into(), Value::from(fib.ambient_block));
    m.insert("ambient_dim".into(), Value::from(fib.ambient_dim));
    m.insert("subspaces".into(), Value::Array(subspaces));
    m.insert("order".into(), Value::Array(order));
    m.insert("algebra_dim".into(), Value::from(alg.dim()));
    m.insert("num_characters".into(), Value::from(chars));
    Ok(Value::Object(m))
}

pub fn grow_cmd<S: Coeff>(input: &Path, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;
    let (base, covering) = parse_base(&v)?;

    let seeds_v = get_array(&v, "seeds", "seed system")?;
    let mut seeds = Vec::with_capacity(seeds_v.len());
    for (k, sv) in seeds_v.iter().enumerate() {
        let what = format!("seeds[{k}]");
        let j = get_usize(sv, "j", &what)?;
        let rank = get_usize(sv, "rank", &what)?;
        let section_v = get_array(sv, "section", &what)?;
        let section = section_v
            .iter()
            .enumerate()
            .map(|(i, e)| value_to_scalar::<S>(e, &format!("{what}.section[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        seeds.push(SeedBundle { j, rank, section });
    }

    let system = SeedSystem {
        base,
        covering,
        seeds,
    };
    let viols = validate_seed(&system);
    if !viols.is_empty() {
        return Err(fail_with(violation_values(&viols)));
    }
    let s = grow(&system, meta.tol).map_err(|viols| fail_with(violation_values(&viols)))?;
    Ok(settlement_value(&s, meta))
}
