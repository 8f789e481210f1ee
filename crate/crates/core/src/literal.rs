//! JSON literals for maps and sets.
//!
//! Map literal:
//!
//! ```json
//! {"breakpoints": [["0","0"], ["1/2","1/4"], ["1","1"]],
//!  "left_tail": {"slope": "1", "offset": "0"},
//!  "unit_interval": true}
//! ```
//!
//! Omitted tails have slope 1 through the nearest breakpoint, which is the
//! identity whenever that breakpoint lies on the diagonal. With no
//! breakpoints and no tails the literal is the identity. `"periodic": true`
//! reads the breakpoints as one period `[0,1]` of a map commuting with
//! `x ↦ x+1`.
//!
//! Set literal: `[["-inf","0"], ["1","inf"]]`.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::intervals::{ClosedSet, Endpoint};
use crate::periodic::PeriodicMap;
use crate::plmap::{Affine, LineMap, PLMap};
use crate::rational::{self, Rational};

/// A map of either representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMap {
    Line(PLMap),
    Periodic(PeriodicMap),
}

impl AnyMap {
    pub fn as_line(&self) -> Option<&PLMap> {
        match self {
            AnyMap::Line(f) => Some(f),
            AnyMap::Periodic(_) => None,
        }
    }

    pub fn as_periodic(&self) -> Option<&PeriodicMap> {
        match self {
            AnyMap::Periodic(f) => Some(f),
            AnyMap::Line(_) => None,
        }
    }
}

impl fmt::Display for AnyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMap::Line(m) => m.fmt(f),
            AnyMap::Periodic(m) => m.fmt(f),
        }
    }
}

impl From<PLMap> for AnyMap {
    fn from(f: PLMap) -> Self {
        AnyMap::Line(f)
    }
}

impl From<PeriodicMap> for AnyMap {
    fn from(f: PeriodicMap) -> Self {
        AnyMap::Periodic(f)
    }
}

fn rational_at(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s).map_err(|e| Error::parse(loc, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap())),
        _ => Err(Error::parse(loc, "expected a rational string \"p/q\"")),
    }
}

fn affine_at(v: &Value, loc: &str) -> Result<Affine> {
    let obj = v.as_object().ok_or_else(|| Error::parse(loc, "expected {\"slope\", \"offset\"}"))?;
    let field = |k: &str| {
        obj.get(k)
            .ok_or_else(|| Error::parse(loc, format!("missing \"{k}\"")))
            .and_then(|x| rational_at(x, &format!("{loc}.{k}")))
    };
    Affine::new(field("slope")?, field("offset")?).map_err(|e| Error::parse(loc, e.to_string()))
}

fn flag(obj: &Map<String, Value>, key: &str, loc: &str) -> Result<bool> {
    match obj.get(key) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(Error::parse(format!("{loc}.{key}"), "expected a boolean")),
    }
}

/// Reads a map literal; `loc` prefixes diagnostics.
pub fn map_from_value(v: &Value, loc: &str) -> Result<AnyMap> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(loc, "a map literal is a JSON object"))?;
    for key in obj.keys() {
        if !["breakpoints", "left_tail", "right_tail", "unit_interval", "periodic"].contains(&key.as_str()) {
            return Err(Error::parse(format!("{loc}.{key}"), "unknown field"));
        }
    }
    let points = match obj.get("breakpoints") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let ploc = format!("{loc}.breakpoints[{i}]");
                match p.as_array().map(Vec::as_slice) {
                    Some([x, y]) => Ok((rational_at(x, &format!("{ploc}[0]"))?, rational_at(y, &format!("{ploc}[1]"))?)),
                    _ => Err(Error::parse(ploc, "expected a pair [x, y]")),
                }
            })
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(Error::parse(format!("{loc}.breakpoints"), "expected a list of pairs")),
    };
    let unit = flag(obj, "unit_interval", loc)?;
    let periodic = flag(obj, "periodic", loc)?;
    let invalid = |e: Error| Error::parse(loc, e.to_string());

    if periodic {
        if unit || obj.contains_key("left_tail") || obj.contains_key("right_tail") {
            return Err(Error::parse(loc, "a periodic literal takes only breakpoints"));
        }
        return PeriodicMap::new(points).map(AnyMap::Periodic).map_err(invalid);
    }
    let left = obj.get("left_tail").map(|t| affine_at(t, &format!("{loc}.left_tail"))).transpose()?;
    let right = obj.get("right_tail").map(|t| affine_at(t, &format!("{loc}.right_tail"))).transpose()?;
    let map = if unit {
        if left.is_some() || right.is_some() {
            return Err(Error::parse(loc, "a unit-interval literal has identity tails"));
        }
        PLMap::unit_interval(points)
    } else if points.is_empty() {
        match (left, right) {
            (None, None) => Ok(PLMap::identity()),
            (Some(t), None) | (None, Some(t)) => PLMap::affine(t.slope, t.offset),
            (Some(l), Some(r)) => PLMap::new(points, l, r),
        }
    } else {
        let (first, last) = (&points[0], &points[points.len() - 1]);
        let left = left.unwrap_or_else(|| Affine::translation(&first.1 - &first.0));
        let right = right.unwrap_or_else(|| Affine::translation(&last.1 - &last.0));
        PLMap::new(points, left, right)
    };
    map.map(AnyMap::Line).map_err(invalid)
}

pub fn parse_map(text: &str, loc: &str) -> Result<AnyMap> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("{loc}:{}:{}", e.line(), e.column()), e.to_string()))?;
    map_from_value(&v, loc)
}

fn q(x: &Rational) -> Value {
    Value::String(rational::fmt(x))
}

fn pairs(points: &[(Rational, Rational)]) -> Value {
    Value::Array(points.iter().map(|(x, y)| json!([q(x), q(y)])).collect())
}

fn affine_value(a: &Affine) -> Value {
    json!({"slope": q(&a.slope), "offset": q(&a.offset)})
}

pub fn map_to_value(f: &AnyMap) -> Value {
    match f {
        AnyMap::Periodic(p) => json!({"periodic": true, "breakpoints": pairs(p.points())}),
        AnyMap::Line(m) => json!({
            "breakpoints": pairs(m.points()),
            "left_tail": affine_value(m.left_tail()),
            "right_tail": affine_value(m.right_tail()),
        }),
    }
}

fn endpoint_at(v: &Value, loc: &str) -> Result<Endpoint> {
    match v {
        Value::String(s) => Endpoint::parse(s).map_err(|e| Error::parse(loc, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Endpoint::Finite(rational::int(n.as_i64().unwrap()))),
        _ => Err(Error::parse(loc, "expected \"p/q\", \"-inf\" or \"inf\"")),
    }
}

pub fn set_from_value(v: &Value, loc: &str) -> Result<ClosedSet> {
    let items = v.as_array().ok_or_else(|| Error::parse(loc, "a set literal is a list of [lo, hi]"))?;
    let spans = items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ploc = format!("{loc}[{i}]");
            match p.as_array().map(Vec::as_slice) {
                Some([lo, hi]) => Ok((endpoint_at(lo, &format!("{ploc}[0]"))?, endpoint_at(hi, &format!("{ploc}[1]"))?)),
                _ => Err(Error::parse(ploc, "expected a pair [lo, hi]")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ClosedSet::new(spans).map_err(|e| Error::parse(loc, e.to_string()))
}

pub fn parse_set(text: &str, loc: &str) -> Result<ClosedSet> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("{loc}:{}:{}", e.line(), e.column()), e.to_string()))?;
    set_from_value(&v, loc)
}

pub fn endpoint_value(e: &Endpoint) -> Value {
    Value::String(e.to_string())
}

pub fn set_to_value(s: &ClosedSet) -> Value {
    Value::Array(
        s.intervals()
            .iter()
            .map(|(lo, hi)| json!([endpoint_value(lo), endpoint_value(hi)]))
            .collect(),
    )
}

pub fn open_list_to_value(s: &crate::intervals::OpenIntervalList) -> Value {
    Value::Array(
        s.intervals()
            .iter()
            .map(|(lo, hi)| json!([endpoint_value(lo), endpoint_value(hi)]))
            .collect(),
    )
}
