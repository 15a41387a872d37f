//! JSON readers and writers. Rationals are written as strings `"p"` or
//! `"p/q"`; readers also accept JSON integers and finite decimals.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::code::{Code, Codeword, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::polytope::{ConvexSet, HPolytope, Halfspace, Realization, Topology, VPolytope};
use crate::geometry::rational::{format_rational, parse_rational, Point, Rational};
use crate::morphisms::TrunkMorphism;
use crate::realize::{PolytopalRealizationPlan, Route};
use crate::sunflower::{Certification, SunflowerSpec};

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

fn rationals(v: &Value) -> Result<Point> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rationals, found {v}")))?
        .iter()
        .map(rational)
        .collect()
}

fn point_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| Error::Parse(format!("field {key:?} must be an array")))
}

#[derive(Deserialize)]
struct CodeDoc {
    n: usize,
    codewords: Vec<Vec<usize>>,
}

pub fn code_to_value(c: &Code) -> Value {
    json!({"n": c.n(), "codewords": c.iter().map(Codeword::neurons).collect::<Vec<_>>()})
}

pub fn code_to_json(c: &Code) -> String {
    to_pretty(&code_to_value(c))
}

pub fn code_from_value(v: &Value, strict: bool) -> Result<Code> {
    let doc: CodeDoc = serde_json::from_value(v.clone()).map_err(parse_err)?;
    for w in &doc.codewords {
        if w.windows(2).any(|p| p[0] >= p[1]) {
            // Unsorted lists are accepted; repeated neurons are not.
            let mut s = w.clone();
            s.sort_unstable();
            if s.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::Parse(format!("codeword {w:?} repeats a neuron")));
            }
        }
    }
    if strict {
        Code::from_words_strict(doc.n, &doc.codewords)
    } else {
        Code::from_words(doc.n, &doc.codewords)
    }
}

pub fn code_from_json(s: &str, strict: bool) -> Result<Code> {
    code_from_value(&serde_json::from_str(s).map_err(parse_err)?, strict)
}

/// A complex given by `{"n", "facets"}`, or by a code JSON whose words are
/// closed under subsets.
pub fn complex_from_json(s: &str) -> Result<SimplicialComplex> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    if let Some(facets) = v.get("facets") {
        let n = usize_field(&v, "n")?;
        let lists: Vec<Vec<usize>> = serde_json::from_value(facets.clone()).map_err(parse_err)?;
        let words = lists
            .iter()
            .map(|f| Codeword::from_neurons(n, f))
            .collect::<Result<Vec<_>>>()?;
        return SimplicialComplex::from_facets(n, words);
    }
    SimplicialComplex::from_code(code_from_value(&v, false)?)
}

pub fn complex_to_json(d: &SimplicialComplex) -> String {
    to_pretty(&json!({"n": d.n(), "facets": d.facets().iter().map(|f| f.neurons()).collect::<Vec<_>>()}))
}

fn hpolytope_ineqs(h: &HPolytope) -> Value {
    Value::Array(
        h.halfspaces()
            .iter()
            .map(|hs| json!({"a": point_json(&hs.a), "b": format_rational(&hs.b)}))
            .collect(),
    )
}

fn hpolytope_from_ineqs(v: &Value, dim: usize, open: bool) -> Result<HPolytope> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("\"ineqs\" must be an array".into()))?
        .iter()
        .map(|row| Halfspace::new(rationals(field(row, "a")?)?, rational(field(row, "b")?)?, open))
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(dim, open, rows)
}

fn set_to_value(s: &ConvexSet) -> Value {
    match s {
        ConvexSet::H(h) => json!({"kind": "H", "ineqs": hpolytope_ineqs(h)}),
        ConvexSet::V(v) => json!({"kind": "V", "points": v.points().iter().map(|p| point_json(p)).collect::<Vec<_>>()}),
        ConvexSet::Empty => json!({"kind": "empty"}),
    }
}

pub fn realization_to_value(r: &Realization) -> Value {
    json!({
        "dim": r.dim(),
        "topology": r.topology().to_string(),
        "sets": r.sets().iter().map(set_to_value).collect::<Vec<_>>(),
    })
}

pub fn realization_to_json(r: &Realization) -> String {
    to_pretty(&realization_to_value(r))
}

fn topology(v: &Value) -> Result<Topology> {
    match field(v, "topology")?.as_str() {
        Some("open") => Ok(Topology::Open),
        Some("closed") => Ok(Topology::Closed),
        _ => Err(Error::Parse("topology must be \"open\" or \"closed\"".into())),
    }
}

pub fn realization_from_value(v: &Value) -> Result<Realization> {
    let dim = usize_field(v, "dim")?;
    let top = topology(v)?;
    let sets = array(v, "sets")?
        .iter()
        .map(|s| match field(s, "kind")?.as_str() {
            Some("H") => Ok(ConvexSet::H(hpolytope_from_ineqs(field(s, "ineqs")?, dim, top.is_open())?)),
            Some("V") => {
                let points = array(s, "points")?.iter().map(rationals).collect::<Result<Vec<_>>>()?;
                Ok(ConvexSet::V(VPolytope::new(dim, points)?))
            }
            Some("empty") => Ok(ConvexSet::Empty),
            _ => Err(Error::Parse("set kind must be \"H\", \"V\" or \"empty\"".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Realization::new(dim, top, sets)
}

pub fn realization_from_json(s: &str) -> Result<Realization> {
    realization_from_value(&serde_json::from_str(s).map_err(parse_err)?)
}

pub fn points_to_json(dim: usize, points: &[Point]) -> String {
    to_pretty(&json!({"dim": dim, "points": points.iter().map(|p| point_json(p)).collect::<Vec<_>>()}))
}

pub fn points_from_json(s: &str) -> Result<(usize, Vec<Point>)> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    let dim = usize_field(&v, "dim")?;
    let points = array(&v, "points")?.iter().map(rationals).collect::<Result<Vec<_>>>()?;
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }
    Ok((dim, points))
}

/// `{"source": <code>, "trunks": [[indices into canonical order]]}`.
pub fn morphism_to_json(f: &TrunkMorphism) -> String {
    to_pretty(&json!({"source": code_to_value(f.source()), "trunks": f.trunk_indices()}))
}

pub fn morphism_from_json(s: &str) -> Result<TrunkMorphism> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    let source = code_from_value(field(&v, "source")?, false)?;
    let trunks: Vec<Vec<usize>> = serde_json::from_value(field(&v, "trunks")?.clone()).map_err(parse_err)?;
    TrunkMorphism::from_indices(source, &trunks)
}

pub fn plan_to_json(plan: &PolytopalRealizationPlan) -> String {
    let face_points: Vec<Value> = plan
        .face_points
        .iter()
        .map(|(c, p)| json!({"word": c.neurons(), "point": point_json(p)}))
        .collect();
    to_pretty(&json!({
        "code": code_to_value(&plan.code),
        "m": plan.m,
        "route": plan.route.to_string(),
        "neighborly_facets": plan.neighborly_facets,
        "dual_vertices": plan.dual_vertices.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "complex_vertices": plan.complex_vertices.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "cells": plan.cells,
        "face_points": face_points,
        "realization": realization_to_value(&plan.realization),
    }))
}

pub fn plan_from_value(v: &Value) -> Result<PolytopalRealizationPlan> {
    let code = code_from_value(field(v, "code")?, false)?;
    let n = code.n();
    let route = match field(v, "route")?.as_str() {
        Some("simplex") => Route::Simplex,
        Some("cyclic") => Route::Cyclic,
        _ => return Err(Error::Parse("route must be \"simplex\" or \"cyclic\"".into())),
    };
    let points = |key: &str| -> Result<Vec<Point>> { array(v, key)?.iter().map(rationals).collect() };
    let lists = |key: &str| -> Result<Vec<Vec<usize>>> { serde_json::from_value(field(v, key)?.clone()).map_err(parse_err) };
    let mut face_points = BTreeMap::new();
    for entry in array(v, "face_points")? {
        let word: Vec<usize> = serde_json::from_value(field(entry, "word")?.clone()).map_err(parse_err)?;
        face_points.insert(Codeword::from_neurons(n, &word)?, rationals(field(entry, "point")?)?);
    }
    Ok(PolytopalRealizationPlan {
        code,
        m: usize_field(v, "m")?,
        route,
        neighborly_facets: lists("neighborly_facets")?,
        dual_vertices: points("dual_vertices")?,
        complex_vertices: points("complex_vertices")?,
        cells: lists("cells")?,
        face_points,
        realization: realization_from_value(field(v, "realization")?)?,
    })
}

pub fn plan_from_json(s: &str) -> Result<PolytopalRealizationPlan> {
    plan_from_value(&serde_json::from_str(s).map_err(parse_err)?)
}

pub fn sunflower_to_json(spec: &SunflowerSpec, points: &[Point]) -> String {
    to_pretty(&json!({
        "d": spec.d,
        "k": spec.k,
        "certification": match spec.certification {
            Certification::CodeChecked => "code-checked",
            Certification::ByConstruction => "by-construction",
        },
        "petals": spec.petals.iter().map(|p| json!({"ineqs": hpolytope_ineqs(p)})).collect::<Vec<_>>(),
        "points": points.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
    }))
}

pub fn sunflower_from_json(s: &str) -> Result<(SunflowerSpec, Vec<Point>)> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    let d = usize_field(&v, "d")?;
    let certification = match field(&v, "certification")?.as_str() {
        Some("code-checked") => Certification::CodeChecked,
        Some("by-construction") => Certification::ByConstruction,
        _ => return Err(Error::Parse("unknown certification".into())),
    };
    let petals = array(&v, "petals")?
        .iter()
        .map(|p| hpolytope_from_ineqs(field(p, "ineqs")?, d, true))
        .collect::<Result<Vec<_>>>()?;
    if petals.is_empty() {
        return Err(Error::Parse("a sunflower needs at least one petal".into()));
    }
    let points = match v.get("points") {
        Some(p) => p
            .as_array()
            .ok_or_else(|| Error::Parse("\"points\" must be an array".into()))?
            .iter()
            .map(rationals)
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok((SunflowerSpec { d, k: usize_field(&v, "k")?, petals, certification }, points))
}
