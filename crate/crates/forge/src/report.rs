use crate::scalars::Mode;
use serde_json::{Map, Value};

pub struct RunMeta {
    pub mode: Mode,
    pub seed: u64,
    pub tol: f64,
}

/// Common header carried by every artifact: schema version, arithmetic
/// mode and the run seed. Keys are emitted in sorted order, so reports
/// are byte-stable for a fixed configuration.
pub fn header(schema: &str, meta: &RunMeta) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(format!("{schema}/1")));
    m.insert("mode".into(), Value::String(meta.mode.name().into()));
    m.insert("seed".into(), Value::from(meta.seed));
    m
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialization");
    s.push('\n');
    s
}
