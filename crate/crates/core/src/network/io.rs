//! JSON interchange for topologies and cases.
//!
//! Topology: `{"buses": 3, "edges": [[0, 1], [1, 2]]}` with loops implicit.
//! A case adds `"y": {"i,j": [re, im], ...}`, `"s": [[re, im], ...]` and `"v0"`, and an
//! independent-mode case carries `"second_block": {"s": ..., "y": ...}` as well.

use super::{CoefficientMode, NetworkCase, SecondBlock, Topology};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Writes JSON with sorted keys, one object member per line and scalar arrays inline.
pub fn to_pretty_json(value: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn inline(v: &Value) -> bool {
        match v {
            Value::Array(items) => items.iter().all(scalar),
            Value::Object(map) => map.is_empty(),
            _ => true,
        }
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(items) if inline(v) => {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&item.to_string());
                }
                out.push(']');
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(item, indent + 1, out);
                    out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
                }
                let _ = write!(out, "{}]", "  ".repeat(indent));
            }
            Value::Object(map) if map.is_empty() => out.push_str("{}"),
            Value::Object(map) => {
                out.push_str("{\n");
                for (k, (key, item)) in map.iter().enumerate() {
                    let _ = write!(out, "{pad}{}: ", Value::String(key.clone()));
                    go(item, indent + 1, out);
                    out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
                }
                let _ = write!(out, "{}}}", "  ".repeat(indent));
            }
            _ => out.push_str(&v.to_string()),
        }
    }
    let mut out = String::new();
    go(value, 0, &mut out);
    out.push('\n');
    out
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn y_json(y: &BTreeMap<(usize, usize), Complex64>) -> Value {
    Value::Object(y.iter().map(|(&(i, j), &z)| (format!("{i},{j}"), complex_json(z))).collect())
}

fn topology_value(t: &Topology) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("buses".into(), json!(t.bus_count()));
    map.insert("edges".into(), Value::Array(t.edges().map(|(a, b)| json!([a, b])).collect()));
    map
}

pub fn topology_to_json(t: &Topology) -> String {
    to_pretty_json(&Value::Object(topology_value(t)))
}

pub fn case_to_json(case: &NetworkCase) -> String {
    let mut map = topology_value(&case.topology);
    map.insert("y".into(), y_json(&case.y));
    map.insert("s".into(), Value::Array(case.s.iter().map(|&z| complex_json(z)).collect()));
    map.insert("v0".into(), json!(case.v0));
    if let Some(b) = &case.second_block {
        map.insert(
            "second_block".into(),
            json!({"y": y_json(&b.y), "s": Value::Array(b.s.iter().map(|&z| complex_json(z)).collect())}),
        );
    }
    to_pretty_json(&Value::Object(map))
}

/// Line of the `index`-th inner array of the `"edges"` member, or of the member itself.
fn edge_line(text: &str, index: Option<usize>) -> usize {
    let line_of = |pos: usize| text[..pos].matches('\n').count() + 1;
    let Some(start) = text.find("\"edges\"") else {
        return 1;
    };
    let Some(index) = index else {
        return line_of(start);
    };
    let mut depth = 0usize;
    let mut seen = 0usize;
    for (pos, ch) in text[start..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == index {
                        return line_of(start + pos);
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    line_of(start)
}

fn key_line(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\""))
        .map_or(1, |pos| text[..pos].matches('\n').count() + 1)
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_value(text: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(parse_error(1, "expected a JSON object")),
    }
}

fn parse_topology_map(text: &str, map: &Map<String, Value>) -> Result<Topology> {
    let buses = map
        .get("buses")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_error(key_line(text, "buses"), "\"buses\" must be a nonnegative integer"))?
        as usize;
    if buses < 2 {
        return Err(parse_error(key_line(text, "buses"), format!("need at least 2 buses, got {buses}")));
    }
    let edges = map
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(edge_line(text, None), "\"edges\" must be an array"))?;
    let mut pairs = Vec::with_capacity(edges.len());
    let mut seen = std::collections::BTreeSet::new();
    for (k, e) in edges.iter().enumerate() {
        let line = edge_line(text, Some(k));
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
            .ok_or_else(|| parse_error(line, format!("edge {k} must be a pair of node indices")))?;
        let (a, b) = pair;
        if a >= buses || b >= buses {
            return Err(parse_error(line, format!("edge [{a},{b}] has a node index outside 0..{buses}")));
        }
        if a == b {
            return Err(parse_error(line, format!("edge [{a},{b}] is a loop; loops are implicit")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(parse_error(line, format!("duplicate edge [{a},{b}]")));
        }
        pairs.push(pair);
    }
    Topology::new(buses, pairs)
}

/// Parses a topology file. Any case data present is ignored.
pub fn load_topology(text: &str) -> Result<Topology> {
    let map = parse_value(text)?;
    parse_topology_map(text, &map)
}

fn parse_complex(v: &Value) -> Option<Complex64> {
    let a = v.as_array().filter(|a| a.len() == 2)?;
    Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?))
}

fn parse_block(text: &str, t: &Topology, obj: &Map<String, Value>) -> Result<(BTreeMap<(usize, usize), Complex64>, Vec<Complex64>)> {
    let y_line = key_line(text, "y");
    let y_map = obj
        .get("y")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_error(y_line, "\"y\" must be an object"))?;
    let mut y = BTreeMap::new();
    for (key, v) in y_map {
        let pair = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| parse_error(key_line(text, key), format!("bad admittance key {key:?}")))?;
        if !t.has_edge(pair.0, pair.1) {
            return Err(parse_error(key_line(text, key), format!("admittance {key} is not on an edge")));
        }
        let z = parse_complex(v)
            .filter(|z| z.norm() > 0.0)
            .ok_or_else(|| parse_error(key_line(text, key), format!("admittance {key} must be a nonzero [re, im]")))?;
        y.insert(pair, z);
    }
    for e in t.directed_edges() {
        if !y.contains_key(&e) {
            return Err(parse_error(y_line, format!("missing admittance \"{},{}\"", e.0, e.1)));
        }
    }
    let s_line = key_line(text, "s");
    let s = obj
        .get("s")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(s_line, "\"s\" must be an array"))?
        .iter()
        .map(parse_complex)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| parse_error(s_line, "injections must be [re, im] pairs"))?;
    if s.len() != t.n() {
        return Err(parse_error(s_line, format!("expected {} injections, got {}", t.n(), s.len())));
    }
    Ok((y, s))
}

/// Parses a case file (a topology file with `y`, `s` and `v0`).
pub fn load_case(text: &str) -> Result<NetworkCase> {
    let map = parse_value(text)?;
    let topology = parse_topology_map(text, &map)?;
    let (y, s) = parse_block(text, &topology, &map)?;
    let v0 = map
        .get("v0")
        .and_then(Value::as_f64)
        .filter(|v| *v != 0.0)
        .ok_or_else(|| parse_error(key_line(text, "v0"), "\"v0\" must be a nonzero real"))?;
    let second_block = match map.get("second_block") {
        None => None,
        Some(Value::Object(obj)) => {
            let (y, s) = parse_block(text, &topology, obj)?;
            Some(SecondBlock { y, s })
        }
        Some(_) => return Err(parse_error(key_line(text, "second_block"), "\"second_block\" must be an object")),
    };
    Ok(NetworkCase { topology, y, s, v0, second_block })
}

/// A parsed input file: either a bare topology or a full case.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkInput {
    Topology(Topology),
    Case(NetworkCase),
}

pub fn load_input(text: &str) -> Result<NetworkInput> {
    let map = parse_value(text)?;
    if map.contains_key("y") {
        load_case(text).map(NetworkInput::Case)
    } else {
        parse_topology_map(text, &map).map(NetworkInput::Topology)
    }
}

impl NetworkInput {
    pub fn topology(&self) -> &Topology {
        match self {
            NetworkInput::Topology(t) => t,
            NetworkInput::Case(c) => &c.topology,
        }
    }

    /// The case itself, or a sampled one when only a topology was given.
    pub fn into_case(self, seed: u64, mode: CoefficientMode) -> NetworkCase {
        match self {
            NetworkInput::Topology(t) => super::sample_case(&t, seed, mode),
            NetworkInput::Case(c) => c,
        }
    }
}
