//! JSON readers and writers for matrices, fans, polytopes, divisors and
//! reports. Integers are written as JSON numbers when they fit in an `i64`
//! and as decimal strings otherwise; rationals are always strings `"p/q"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::dynamics::{StabilityReport, TInvariantDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::lattice::IVec;
use crate::linalg::IntMatrix;
use crate::polytope::{DegreeSequence, LatticePolytope, LinearRecurrence};
use crate::spectra::{describe_eigenvalues, ClassificationCase};
use crate::stabilizer::{Case2Report, Outcome, StabilizationOutcome};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(parse_err(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("{s:?} is not an integer"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || parse_err(format!("{s:?} is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        other => int_from_json(other).map(BigRational::from_integer),
    }
}

fn ivec_to_json(v: &IVec) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

fn ivec_from_json(v: &Value) -> Result<IVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("expected a vector, found {v}")))?;
    if arr.len() != 3 {
        return Err(parse_err(format!("expected 3 coordinates, found {}", arr.len())));
    }
    Ok([int_from_json(&arr[0])?, int_from_json(&arr[1])?, int_from_json(&arr[2])?])
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>> {
    field(v, name)?
        .as_array()
        .ok_or_else(|| parse_err(format!("field {name:?} must be an array")))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn matrix_to_json(a: &IntMatrix) -> Value {
    json!({
        "n": a.n(),
        "rows": a.rows().iter().map(|r| r.iter().map(int_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = array(v, "rows")?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix rows must be arrays"))?
                .iter()
                .map(int_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = v.get("n") {
        let n = n
            .as_u64()
            .ok_or_else(|| parse_err("field \"n\" must be a positive integer"))?;
        if n as usize != rows.len() {
            return Err(parse_err(format!("\"n\" is {n} but there are {} rows", rows.len())));
        }
    }
    IntMatrix::from_rows(rows)
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    matrix_from_json(&parse_value(text)?)
}

/// Rays sorted lexicographically and cones listed in sorted order.
pub fn fan_to_json(f: &Fan) -> Value {
    let (rays, cones) = f.canonical();
    json!({
        "rays": rays.iter().map(ivec_to_json).collect::<Vec<_>>(),
        "max_cones": cones,
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan> {
    let rays = array(v, "rays")?
        .iter()
        .map(ivec_from_json)
        .collect::<Result<Vec<_>>>()?;
    let cones = array(v, "max_cones")?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| parse_err("cones must be arrays of ray indices"))?
                .iter()
                .map(|i| {
                    i.as_u64()
                        .map(|i| i as usize)
                        .ok_or_else(|| parse_err(format!("bad ray index {i}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rays, cones)
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    fan_from_json(&parse_value(text)?)
}

pub fn polytope_to_json(p: &LatticePolytope) -> Value {
    json!({ "vertices": p.vertices().iter().map(ivec_to_json).collect::<Vec<_>>() })
}

pub fn polytope_from_json(v: &Value) -> Result<LatticePolytope> {
    let vertices = array(v, "vertices")?
        .iter()
        .map(ivec_from_json)
        .collect::<Result<Vec<_>>>()?;
    if vertices.is_empty() {
        return Err(parse_err("a polytope needs at least one vertex"));
    }
    Ok(LatticePolytope::new(&vertices))
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    polytope_from_json(&parse_value(text)?)
}

/// Only nonzero coefficients are written.
pub fn divisor_to_json(d: &TInvariantDivisor) -> Value {
    let coeffs: Map<String, Value> = d
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != BigRational::from_integer(0.into()))
        .map(|(i, c)| (i.to_string(), Value::String(rational_to_string(c))))
        .collect();
    json!({ "coeffs": coeffs })
}

pub fn divisor_from_json(v: &Value, num_rays: usize) -> Result<TInvariantDivisor> {
    let map = field(v, "coeffs")?
        .as_object()
        .ok_or_else(|| parse_err("\"coeffs\" must be an object"))?;
    let mut d = TInvariantDivisor::zero(num_rays);
    for (k, c) in map {
        let i: usize = k
            .parse()
            .map_err(|_| parse_err(format!("bad ray index {k:?}")))?;
        if i >= num_rays {
            return Err(parse_err(format!("ray index {i} out of range")));
        }
        d.coeffs[i] = rational_from_json(c)?;
    }
    Ok(d)
}

pub fn classification_to_json(case: &ClassificationCase) -> Value {
    let s = &case.spectrum;
    let real: Vec<Value> = s
        .real
        .iter()
        .map(|e| {
            json!({
                "value": e.value.to_string(),
                "approx": e.value.to_f64(),
                "multiplicity": e.multiplicity,
            })
        })
        .collect();
    let pair = s.complex_pair.as_ref().map(|p| {
        json!({
            "sum": p.p.format_var("nu"),
            "modulus_squared": p.q.format_var("nu"),
        })
    });
    json!({
        "case": case.label.name(),
        "dual_case": case.label.dual().name(),
        "char_poly": s.char_poly.format_var("x"),
        "eigenvalues": {
            "real": real,
            "complex_pair": pair,
            "modulus_pattern": s.modulus_pattern,
            "summary": describe_eigenvalues(s),
        },
        "ratio_root_of_unity": case.ratio_root_of_unity,
    })
}

pub fn stability_to_json(f: &Fan, report: &StabilityReport) -> Value {
    let cone = |ids: &Vec<usize>| -> Value {
        Value::Array(ids.iter().map(|&i| ivec_to_json(&f.rays()[i])).collect())
    };
    let orbits: Vec<Value> = report
        .orbits
        .iter()
        .map(|o| {
            json!({
                "ray": ivec_to_json(&f.rays()[o.ray]),
                "cones": o.cones.iter().map(cone).collect::<Vec<_>>(),
                "cycle_start": o.cycle_start,
            })
        })
        .collect();
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "ray": ivec_to_json(&w.ray_vector),
            "step": w.k,
            "cone": cone(&w.cone),
            "image_point": ivec_to_json(&w.image_point),
        })
    });
    json!({
        "verdict": report.verdict,
        "orbits": orbits,
        "witness": witness,
    })
}

pub fn outcome_to_json(out: &StabilizationOutcome) -> Value {
    let mut obj = Map::new();
    obj.insert("verdict".into(), json!(out.verdict.name()));
    obj.insert("case".into(), json!(out.case.name()));
    match &out.verdict {
        Outcome::StabilizedFan {
            fan,
            k0,
            two_stable,
            certified_powers,
        } => {
            obj.insert("k0".into(), json!(k0));
            obj.insert("two_stable".into(), json!(two_stable));
            obj.insert("certified_powers".into(), json!(certified_powers));
            obj.insert("fan".into(), fan_to_json(fan));
        }
        Outcome::NoModelExists { scope, reason } => {
            obj.insert("scope".into(), json!(scope.to_string()));
            obj.insert("reason".into(), json!(reason));
        }
        Outcome::NotByRefinement { subcase, reason } => {
            obj.insert("subcase".into(), json!(subcase));
            obj.insert("reason".into(), json!(reason));
        }
        Outcome::SearchExhausted { budget, reason } => {
            obj.insert("budget".into(), json!(budget));
            obj.insert("reason".into(), json!(reason));
        }
    }
    obj.insert("log".into(), json!(out.log));
    Value::Object(obj)
}

/// The outcome JSON with a `witness` block describing the subcase geometry.
pub fn case2_to_json(f: &Fan, report: &Case2Report) -> Value {
    let s = &report.subcase;
    let rays = |ids: &[usize]| -> Value {
        Value::Array(ids.iter().map(|&i| ivec_to_json(&f.rays()[i])).collect())
    };
    let mut v = outcome_to_json(&report.outcome);
    v["subcase"] = json!(s.label);
    v["witness"] = json!({
        "eigenvalue": s.eigenvalue.to_string(),
        "eigendirection": s.gamma.describe(),
        "plane_covector": s.plane_covector.describe(),
        "eigendirection_cone": rays(&s.gamma_cone),
        "opposite_cone": rays(&s.neg_gamma_cone),
        "rays_in_plane": rays(&s.rays_in_plane),
        "attracted_rays": rays(&s.attracted_rays),
    });
    v
}

pub fn degrees_to_json(seq: &DegreeSequence, recurrence: Option<&LinearRecurrence>) -> Value {
    let values: BTreeMap<usize, String> = seq
        .values
        .iter()
        .enumerate()
        .map(|(i, d)| (i + 1, rational_to_string(d)))
        .collect();
    json!({
        "p": seq.p,
        "degrees": values,
        "recurrence": recurrence.map(|r| json!({
            "relation": r.to_string(),
            "coeffs": r.coeffs.iter().map(rational_to_string).collect::<Vec<_>>(),
            "window": r.window,
        })),
    })
}

/// Reads a `k,deg` table, skipping a header line if present.
pub fn parse_degree_csv(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cell = line.rsplit(',').next().unwrap_or(line).trim();
        match parse_rational(cell) {
            Ok(v) => out.push(v),
            Err(_) if n == 0 => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
