use crate::fail::{parse_err, Failure};
use exactmat::{fmt_f64, rat_from_f64, rat_parse, rat_to_f64, rat_to_string, Coeff, Mat, Rat};
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Significant digits for every floating-point value we print.
pub const SIG: usize = 12;

pub fn fnum(x: f64) -> Value {
    Value::String(fmt_f64(x, SIG))
}

pub fn rat_value(mode: Mode, x: &Rat) -> Value {
    match mode {
        Mode::Exact => Value::String(rat_to_string(x)),
        Mode::Float => fnum(rat_to_f64(x)),
    }
}

pub fn rat_vec_value(mode: Mode, xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(|x| rat_value(mode, x)).collect())
}

/// A scalar serialized as an `[re, im]` pair of mode-formatted strings.
pub fn scalar_value<S: Coeff>(mode: Mode, s: &S) -> Value {
    if mode == Mode::Exact {
        if let Some((re, im)) = s.to_rat_pair() {
            return json!([rat_to_string(&re), rat_to_string(&im)]);
        }
    }
    let z = s.to_c64();
    json!([fmt_f64(z.re, SIG), fmt_f64(z.im, SIG)])
}

pub fn matrix_value<S: Coeff>(mode: Mode, m: &Mat<S>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| scalar_value(mode, m.at(i, j)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn value_to_rat(v: &Value, what: &str) -> Result<Rat, Failure> {
    let r = match v {
        Value::String(s) => rat_parse(s),
        Value::Number(n) => n.as_f64().and_then(rat_from_f64),
        _ => None,
    };
    r.ok_or_else(|| parse_err(format!("{what}: expected a rational scalar, got {v}")))
}

pub fn value_to_f64(v: &Value, what: &str) -> Result<f64, Failure> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| parse_err(format!("{what}: not a finite number"))),
        Value::String(s) => rat_parse(s)
            .map(|r| rat_to_f64(&r))
            .ok_or_else(|| parse_err(format!("{what}: cannot parse '{s}' as a number"))),
        _ => Err(parse_err(format!("{what}: expected a number, got {v}"))),
    }
}

pub fn value_to_pair(v: &Value, what: &str) -> Result<(Rat, Rat), Failure> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| parse_err(format!("{what}: expected an [re, im] pair")))?;
    Ok((
        value_to_rat(&arr[0], what)?,
        value_to_rat(&arr[1], what)?,
    ))
}

pub fn value_to_scalar<S: Coeff>(v: &Value, what: &str) -> Result<S, Failure> {
    let (re, im) = value_to_pair(v, what)?;
    Ok(S::from_rat_pair(&re, &im))
}

pub fn value_to_matrix<S: Coeff>(v: &Value, what: &str) -> Result<Mat<S>, Failure> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected a matrix as an array of rows")))?;
    let mut data: Vec<Vec<S>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("{what}: row {i} is not an array")))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            out.push(value_to_scalar(e, &format!("{what}[{i}][{j}]"))?);
        }
        if let Some(first) = data.first() {
            if out.len() != first.len() {
                return Err(parse_err(format!("{what}: ragged matrix rows")));
            }
        }
        data.push(out);
    }
    if data.is_empty() || data[0].is_empty() {
        return Err(parse_err(format!("{what}: empty matrix")));
    }
    Ok(Mat::from_fn(data.len(), data[0].len(), |i, j| {
        data[i][j].clone()
    }))
}

pub fn get<'a>(obj: &'a Value, key: &str, what: &str) -> Result<&'a Value, Failure> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("{what}: missing field '{key}'")))
}

pub fn get_usize(obj: &Value, key: &str, what: &str) -> Result<usize, Failure> {
    get(obj, key, what)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(format!("{what}.{key}: expected a nonnegative integer")))
}

pub fn get_array<'a>(obj: &'a Value, key: &str, what: &str) -> Result<&'a Vec<Value>, Failure> {
    get(obj, key, what)?
        .as_array()
        .ok_or_else(|| parse_err(format!("{what}.{key}: expected an array")))
}

pub fn rat_list(v: &Value, what: &str) -> Result<Vec<Rat>, Failure> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(i, x)| value_to_rat(x, &format!("{what}[{i}]")))
        .collect()
}

pub fn bool_list(v: Option<&Value>, len: usize, what: &str) -> Result<Vec<bool>, Failure> {
    match v {
        None => Ok(vec![false; len]),
        Some(Value::Array(a)) => {
            if a.len() != len {
                return Err(parse_err(format!("{what}: expected {len} flags")));
            }
            a.iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_bool()
                        .ok_or_else(|| parse_err(format!("{what}[{i}]: expected a boolean")))
                })
                .collect()
        }
        Some(_) => Err(parse_err(format!("{what}: expected an array of booleans"))),
    }
}
