//! JSON encodings. Rationals are always strings `"p/q"` or `"p"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chambers::Chamber;
use crate::ehrhart::{Cell, MultiQuasiPoly, Wall};
use crate::error::{Error, Result};
use crate::polytope::{HRep, VRep};
use crate::poly::{MultiIndex, Poly};
use crate::ratmath::{format_rational, parse_rational, RatVector, Rational};

#[derive(Serialize, Deserialize)]
struct HRepJson {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    b: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct VRepJson {
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct PartsJson {
    parts: Vec<VRepJson>,
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    expo: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct WallJson {
    coef: Vec<String>,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    walls: Vec<WallJson>,
    vertices: Vec<Vec<String>>,
    coeffs: BTreeMap<String, Vec<MonomialJson>>,
}

#[derive(Serialize, Deserialize)]
struct QuasiPolyJson {
    dim: usize,
    periods: Vec<String>,
    cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    parts: Vec<VRepJson>,
}

fn de<T: for<'a> Deserialize<'a>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rats_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_rationals(v: &[String]) -> Result<RatVector> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn index_key(i: &[u32]) -> String {
    i.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_index_key(key: &str) -> Result<MultiIndex> {
    key.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad multi-index {key:?}"))))
        .collect()
}

pub fn parse_hrep(text: &str) -> Result<HRep> {
    let j: HRepJson = de(text)?;
    HRep::new(j.a, parse_rationals(&j.b)?)
}

pub fn hrep_to_json(h: &HRep) -> Value {
    json!({ "A": h.a(), "b": rats_to_strings(h.b()) })
}

fn vrep_from_json(j: &VRepJson) -> Result<VRep> {
    let points = j.vertices.iter().map(|p| parse_rationals(p)).collect::<Result<Vec<_>>>()?;
    let dim = points.first().map(Vec::len).ok_or_else(|| Error::Parse("empty vertex list".into()))?;
    VRep::hull(dim, points)
}

fn vrep_json(v: &VRep) -> VRepJson {
    VRepJson { vertices: v.vertices().iter().map(|p| rats_to_strings(p)).collect() }
}

pub fn parse_vrep(text: &str) -> Result<VRep> {
    vrep_from_json(&de(text)?)
}

pub fn vrep_to_json(v: &VRep) -> Value {
    serde_json::to_value(vrep_json(v)).expect("serializable")
}

/// `{"parts": [{"vertices": …}, …]}`.
pub fn parse_parts(text: &str) -> Result<Vec<VRep>> {
    let j: PartsJson = de(text)?;
    if j.parts.is_empty() {
        return Err(Error::Parse("no parts".into()));
    }
    j.parts.iter().map(vrep_from_json).collect()
}

pub fn parts_to_json(parts: &[VRep]) -> Value {
    json!({ "parts": parts.iter().map(vrep_to_json).collect::<Vec<_>>() })
}

fn poly_json(p: &Poly) -> Vec<MonomialJson> {
    p.terms().iter().map(|(e, c)| MonomialJson { expo: e.clone(), coef: format_rational(c) }).collect()
}

pub fn quasi_poly_to_json(qp: &MultiQuasiPoly) -> Value {
    let j = QuasiPolyJson {
        dim: qp.dim,
        periods: rats_to_strings(&qp.periods),
        cells: qp
            .cells
            .iter()
            .map(|c| CellJson {
                walls: c.walls.iter().map(|w| WallJson { coef: rats_to_strings(&w.coef), rhs: format_rational(&w.rhs) }).collect(),
                vertices: c.vertices.iter().map(|v| rats_to_strings(v)).collect(),
                coeffs: c.coeffs.iter().map(|(i, p)| (index_key(i), poly_json(p))).collect(),
            })
            .collect(),
        parts: qp.parts.iter().map(vrep_json).collect(),
    };
    serde_json::to_value(j).expect("serializable")
}

pub fn parse_quasi_poly(text: &str) -> Result<MultiQuasiPoly> {
    let j: QuasiPolyJson = de(text)?;
    let periods = parse_rationals(&j.periods)?;
    let k = periods.len();
    let mut cells = Vec::with_capacity(j.cells.len());
    for c in &j.cells {
        let walls = c
            .walls
            .iter()
            .map(|w| Ok(Wall { coef: parse_rationals(&w.coef)?, rhs: parse_rational(&w.rhs)? }))
            .collect::<Result<Vec<_>>>()?;
        if walls.iter().any(|w| w.coef.len() != k) {
            return Err(Error::Dimension("wall of the wrong arity".into()));
        }
        let vertices = c.vertices.iter().map(|v| parse_rationals(v)).collect::<Result<Vec<_>>>()?;
        let mut coeffs = BTreeMap::new();
        for (key, monos) in &c.coeffs {
            let i = parse_index_key(key)?;
            let terms = monos
                .iter()
                .map(|m| {
                    if m.expo.len() != k {
                        return Err(Error::Dimension("monomial of the wrong arity".into()));
                    }
                    Ok((m.expo.clone(), parse_rational(&m.coef)?))
                })
                .collect::<Result<Vec<_>>>()?;
            coeffs.insert(i, Poly::from_terms(k, terms));
        }
        cells.push(Cell { walls, vertices, coeffs });
    }
    let parts = j.parts.iter().map(vrep_from_json).collect::<Result<Vec<_>>>()?;
    Ok(MultiQuasiPoly { dim: j.dim, periods, cells, parts })
}

pub fn chamber_to_json(ch: &Chamber) -> Result<Value> {
    let facets = ch.facets()?;
    let strings = |rows: &[RatVector]| rows.iter().map(|r| rats_to_strings(r)).collect::<Vec<_>>();
    Ok(json!({
        "signature": ch.signature.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "dimension": ch.dimension,
        "full_dimensional": ch.is_full_dimensional(),
        "closure": {
            "equalities": strings(&facets.equalities),
            "inequalities": strings(&facets.inequalities),
        },
        "rays": strings(&ch.rays),
        "lineality": strings(&ch.lineality),
        "generators": strings(&ch.generators()),
    }))
}

pub fn coefficient_map_to_json(values: &BTreeMap<MultiIndex, Rational>) -> Value {
    let map: serde_json::Map<String, Value> =
        values.iter().map(|(i, c)| (index_key(i), Value::String(format_rational(c)))).collect();
    Value::Object(map)
}
