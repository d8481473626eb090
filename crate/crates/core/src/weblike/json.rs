use std::fmt::Display;

use serde_json::{json, Value};

use super::{Invariant, LabelSpace};
use crate::exact::{parse_rational, Rational, Ring};
use crate::graph::json::{as_array, as_str, as_usize, field, join};
use crate::graph::JsonError;

pub fn serialize_invariant<V: Ring + Display>(x: &Invariant<V>) -> String {
    let space = x.space();
    let values: Vec<Value> = space
        .labels()
        .iter()
        .zip(x.values())
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| {
            let sets: Vec<Vec<usize>> = s.iter().map(|&m| crate::subsets::elements(m as u32)).collect();
            json!({"S": sets, "value": v.to_string()})
        })
        .collect();
    let v = json!({"r": space.r(), "n": space.n(), "lambda": space.lambda(), "values": values});
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

pub fn parse_invariant(text: &str) -> Result<Invariant<Rational>, JsonError> {
    let root: Value = serde_json::from_str(text).map_err(|e| JsonError::new("", e.to_string()))?;
    let r = as_usize(field(&root, "r", "")?, "r")?;
    let n = as_usize(field(&root, "n", "")?, "n")?;
    let lambda = as_array(field(&root, "lambda", "")?, "lambda")?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("lambda[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if lambda.len() != n {
        return Err(JsonError::new("lambda", format!("expected {n} entries")));
    }
    let space = LabelSpace::new(r, &lambda).map_err(|e| JsonError::new("lambda", e.to_string()))?;
    let mut x = Invariant::<Rational>::zero(space.clone());
    let mut values = x.values().to_vec();
    for (j, item) in as_array(field(&root, "values", "")?, "values")?.iter().enumerate() {
        let p = format!("values[{j}]");
        let sp = join(&p, "S");
        let sets = as_array(field(item, "S", &p)?, &sp)?;
        if sets.len() != n {
            return Err(JsonError::new(sp, format!("expected {n} subsets")));
        }
        let mut s = Vec::with_capacity(n);
        for (i, set) in sets.iter().enumerate() {
            let ip = format!("{sp}[{i}]");
            let mut mask = 0u8;
            for (t, c) in as_array(set, &ip)?.iter().enumerate() {
                let c = as_usize(c, &format!("{ip}[{t}]"))?;
                if c == 0 || c > r || mask >> (c - 1) & 1 == 1 {
                    return Err(JsonError::new(format!("{ip}[{t}]"), format!("color {c} is out of range or repeated")));
                }
                mask |= 1 << (c - 1);
            }
            s.push(mask);
        }
        let idx = space
            .index_of(&s)
            .ok_or_else(|| JsonError::new(sp.clone(), "label list does not match the degree"))?;
        let vp = join(&p, "value");
        let value = parse_rational(as_str(field(item, "value", &p)?, &vp)?)
            .map_err(|e| JsonError::new(vp, e.to_string()))?;
        values[idx] = value;
    }
    x = Invariant::from_values(space, values);
    Ok(x)
}
