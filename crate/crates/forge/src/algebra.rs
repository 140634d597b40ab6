use crate::fail::{fail_with, parse_err, read_json, violation, CmdResult, Failure};
use crate::report::{header, RunMeta};
use crate::scalars::{get_array, get_usize, scalar_value, value_to_scalar};
use exactmat::{Coeff, Mat};
use finalg::{conifold_apical, cyclic_quotient_apical, FinAlgebra};
use serde_json::{Map, Value};
use std::path::Path;

pub const SCHEMA_ANALYSIS: &str = "forge.algebra-analysis";
pub const SCHEMA_ALGEBRA: &str = "forge.algebra";

pub fn parse_algebra<S: Coeff>(v: &Value) -> Result<FinAlgebra<S>, Failure> {
    let dim = get_usize(v, "dim", "algebra")?;
    let unit_v = get_array(v, "unit", "algebra")?;
    let unit = unit_v
        .iter()
        .enumerate()
        .map(|(i, e)| value_to_scalar::<S>(e, &format!("unit[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;

    let sc_v = get_array(v, "sc", "algebra")?;
    if sc_v.len() != dim {
        return Err(parse_err(format!(
            "sc: expected {dim} slices, got {}",
            sc_v.len()
        )));
    }
    let mut sc = Vec::with_capacity(dim * dim * dim);
    for (i, slice) in sc_v.iter().enumerate() {
        let rows = slice
            .as_array()
            .filter(|a| a.len() == dim)
            .ok_or_else(|| parse_err(format!("sc[{i}]: expected {dim} rows")))?;
        for (j, row) in rows.iter().enumerate() {
            let entries = row
                .as_array()
                .filter(|a| a.len() == dim)
                .ok_or_else(|| parse_err(format!("sc[{i}][{j}]: expected {dim} entries")))?;
            for (k, e) in entries.iter().enumerate() {
                sc.push(value_to_scalar::<S>(e, &format!("sc[{i}][{j}][{k}]"))?);
            }
        }
    }

    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(ls)) => Some(
            ls.iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(String::from)
                        .ok_or_else(|| parse_err(format!("labels[{i}]: expected a string")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(parse_err("labels: expected an array of strings")),
    };

    FinAlgebra::new(dim, unit, sc, labels)
        .map_err(|e| fail_with(vec![violation("bad_algebra", e.to_string())]))
}

/// Standalone algebra artifact in the structure-constant exchange format.
pub fn algebra_artifact<S: Coeff>(a: &FinAlgebra<S>, meta: &RunMeta) -> Value {
    let d = a.dim();
    let unit: Vec<Value> = a
        .unit()
        .iter()
        .map(|s| scalar_value(meta.mode, s))
        .collect();
    let sc: Vec<Value> = (0..d)
        .map(|i| {
            Value::Array(
                (0..d)
                    .map(|j| {
                        Value::Array(
                            (0..d)
                                .map(|k| scalar_value(meta.mode, a.sc_at(i, j, k)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let mut m = header(SCHEMA_ALGEBRA, meta);
    m.insert("dim".into(), Value::from(d));
    m.insert("unit".into(), Value::Array(unit));
    m.insert("sc".into(), Value::Array(sc));
    if let Some(labels) = a.labels() {
        m.insert(
            "labels".into(),
            Value::Array(labels.iter().map(|l| Value::String(l.clone())).collect()),
        );
    }
    Value::Object(m)
}

fn radical_dim<S: Coeff>(a: &FinAlgebra<S>, tol: f64) -> usize {
    if S::EXACT {
        return a
            .radical_basis()
            .expect("exact radical computation")
            .rows();
    }
    let d = a.dim();
    let mut tr = vec![S::zero(); d];
    for m in 0..d {
        let mut t = S::zero();
        for k in 0..d {
            t = t + a.sc_at(m, k, k).clone();
        }
        tr[m] = t;
    }
    let gram: Mat<S> = Mat::from_fn(d, d, |i, j| {
        let mut g = S::zero();
        for (m, c) in a.basis_product(i, j) {
            g = g + c.clone() * tr[*m].clone();
        }
        g
    });
    gram.kernel_basis(tol).cols()
}

pub fn analysis_report<S: Coeff>(
    a: &FinAlgebra<S>,
    name: Option<&str>,
    extra: Map<String, Value>,
    meta: &RunMeta,
) -> CmdResult {
    let char_tol = meta.tol.max(1e-9);
    let search = a
        .characters(char_tol, meta.seed)
        .map_err(|e| fail_with(vec![violation("character_search", e.to_string())]))?;
    let characters: Vec<Value> = search
        .characters
        .iter()
        .map(|chi| {
            Value::Array(
                chi.iter()
                    .map(|s| scalar_value(meta.mode, s))
                    .collect(),
            )
        })
        .collect();

    let mut m = header(SCHEMA_ANALYSIS, meta);
    if let Some(n) = name {
        m.insert("name".into(), Value::String(n.into()));
    }
    for (k, v) in extra {
        m.insert(k, v);
    }
    m.insert("dim".into(), Value::from(a.dim()));
    m.insert("associative".into(), Value::Bool(a.check_associativity(meta.tol)));
    m.insert("unital".into(), Value::Bool(a.check_unit(meta.tol)));
    m.insert(
        "center_dim".into(),
        Value::from(a.center_basis(meta.tol).len()),
    );
    m.insert(
        "radical_dim".into(),
        Value::from(radical_dim(a, meta.tol)),
    );
    m.insert("num_characters".into(), Value::from(characters.len()));
    m.insert("characters".into(), Value::Array(characters));
    m.insert(
        "failed_candidates".into(),
        Value::from(search.failed.len()),
    );
    Ok(Value::Object(m))
}

pub fn analyze<S: Coeff>(input: &Path, meta: &RunMeta) -> CmdResult {
    let v = read_json(input)?;
    let a = parse_algebra::<S>(&v)?;
    analysis_report(&a, None, Map::new(), meta)
}

pub fn conifold<S: Coeff>(meta: &RunMeta) -> CmdResult {
    let a = conifold_apical::<S>();
    analysis_report(&a, Some("conifold_apical"), Map::new(), meta)
}

pub fn cyclic<S: Coeff>(
    n: usize,
    m: u32,
    weights: &[i64],
    cap: Option<u32>,
    meta: &RunMeta,
) -> CmdResult {
    let a = cyclic_quotient_apical::<S>(n, m, weights, cap)
        .map_err(|e| fail_with(vec![violation("bad_quotient", e.to_string())]))?;
    let mut extra = Map::new();
    extra.insert("n".into(), Value::from(n));
    extra.insert("m".into(), Value::from(m));
    extra.insert(
        "weights".into(),
        Value::Array(weights.iter().map(|w| Value::from(*w)).collect()),
    );
    analysis_report(&a, Some("cyclic_quotient_apical"), extra, meta)
}
