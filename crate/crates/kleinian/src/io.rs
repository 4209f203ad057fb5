//! JSON (de)serialization of group specifications.
//!
//! A spec is either a named family with parameters or a raw generator
//! list. Complex numbers are `[re, im]` arrays and matrices are row-major
//! flat lists, so `{"generators": [[1,0, 0,0, ... ]]}` is unambiguous
//! across languages. Serialization always emits the canonical generator
//! form, so serialize(parse(x)) is stable.

use nalgebra::Matrix2;
use serde_json::{json, Map, Value};

use crate::families::{self, GroupSpec, UnipotentKind};
use crate::moebius::Mobius;
use crate::projective::{C, Mat3, ProjMap};
use crate::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A complex number: `[re, im]`, or a bare number meaning a real.
fn parse_complex(v: &Value) -> Result<C> {
    if let Some(x) = v.as_f64() {
        return Ok(C::new(x, 0.0));
    }
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| parse_err("complex number must be [re, im]"))?;
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| parse_err("complex part must be a number"))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| parse_err("complex part must be a number"))?;
    Ok(C::new(re, im))
}

fn parse_complex_list(v: &Value) -> Result<Vec<C>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a list of complex numbers"))?
        .iter()
        .map(parse_complex)
        .collect()
}

fn parse_pair_list(v: &Value) -> Result<Vec<(C, C)>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a list of complex pairs"))?
        .iter()
        .map(|p| {
            let arr = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| parse_err("lattice entry must be a pair"))?;
            Ok((parse_complex(&arr[0])?, parse_complex(&arr[1])?))
        })
        .collect()
}

/// Row-major 3x3 matrix: nine complex entries.
fn parse_matrix(v: &Value) -> Result<Mat3> {
    let entries = v
        .as_array()
        .filter(|a| a.len() == 9)
        .ok_or_else(|| parse_err("matrix must list 9 row-major complex entries"))?;
    let mut m = Mat3::zeros();
    for (idx, e) in entries.iter().enumerate() {
        m[(idx / 3, idx % 3)] = parse_complex(e)?;
    }
    Ok(m)
}

fn parse_mobius(v: &Value) -> Result<Mobius> {
    let entries = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| parse_err("Mobius matrix must list 4 row-major complex entries"))?;
    let mut vals = [C::new(0.0, 0.0); 4];
    for (i, e) in entries.iter().enumerate() {
        vals[i] = parse_complex(e)?;
    }
    Mobius::from_matrix(Matrix2::new(vals[0], vals[1], vals[2], vals[3]))
}

fn field<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    params
        .get(key)
        .ok_or_else(|| parse_err(format!("missing parameter {key:?}")))
}

fn parse_family(family: &str, params: &Map<String, Value>) -> Result<GroupSpec> {
    match family {
        "torus" => families::torus_group(&parse_pair_list(field(params, "basis")?)?),
        "dual_torus" => families::dual_torus(&parse_pair_list(field(params, "basis")?)?),
        "inoue" => families::inoue_group(
            &parse_pair_list(field(params, "basis")?)?,
            parse_complex(field(params, "x")?)?,
            parse_complex(field(params, "y")?)?,
            parse_complex(field(params, "z")?)?,
        ),
        "kodaira" => families::kodaira_group(&parse_pair_list(field(params, "pairs")?)?),
        "elliptic" => families::elliptic_group(
            &parse_complex_list(field(params, "w")?)?,
            &parse_complex_list(field(params, "mu")?)?,
        ),
        "fake_hopf" => families::fake_hopf(
            &parse_complex_list(field(params, "w")?)?,
            &parse_complex_list(field(params, "mu")?)?,
        ),
        "h0" => families::h0_group(
            &parse_complex_list(field(params, "w")?)?,
            &parse_complex_list(field(params, "mu")?)?,
        ),
        "diagonal" => families::diagonal_group(
            parse_complex(field(params, "alpha")?)?,
            parse_complex(field(params, "beta")?)?,
        ),
        "screw_line_point" => families::screw_line_point_group(
            parse_complex(field(params, "alpha")?)?,
            field(params, "theta")?
                .as_f64()
                .ok_or_else(|| parse_err("theta must be a number"))?,
        ),
        "hyperbolic_toral" => {
            let a = field(params, "a")?
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| parse_err("a must be a 2x2 integer matrix"))?;
            let mut m = [[0i64; 2]; 2];
            for (i, row) in a.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == 2)
                    .ok_or_else(|| parse_err("a must be a 2x2 integer matrix"))?;
                for (j, e) in row.iter().enumerate() {
                    m[i][j] = e
                        .as_i64()
                        .ok_or_else(|| parse_err("a entries must be integers"))?;
                }
            }
            families::hyperbolic_toral(m)
        }
        "suspension" => {
            let sigma = match field(params, "sigma")? {
                Value::String(s) if s == "schottky" => crate::moebius::schottky_pair().to_vec(),
                v => v
                    .as_array()
                    .ok_or_else(|| parse_err("sigma must be \"schottky\" or a matrix list"))?
                    .iter()
                    .map(parse_mobius)
                    .collect::<Result<Vec<_>>>()?,
            };
            let rho = parse_complex_list(field(params, "rho")?)?;
            families::suspension(&sigma, &rho, parse_complex(field(params, "alpha")?)?)
        }
        "unipotent" => {
            let kind = match field(params, "kind")?.as_str() {
                Some("Z1") => UnipotentKind::Z1,
                Some("Z2") => UnipotentKind::Z2,
                Some("Z3") => UnipotentKind::Z3,
                Some("Z4") => UnipotentKind::Z4,
                Some("Gk") => UnipotentKind::Gk,
                Some("DeltaK") => UnipotentKind::DeltaK,
                _ => return Err(parse_err("kind must be Z1..Z4, Gk or DeltaK")),
            };
            let k = params.get("k").and_then(Value::as_i64).unwrap_or(1);
            families::unipotent_presentation_group(kind, k)
        }
        other => Err(parse_err(format!("unknown family {other:?}"))),
    }
}

/// Parse a group specification from its JSON value.
pub fn parse_spec_value(v: &Value) -> Result<GroupSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("spec must be a JSON object"))?;
    if let Some(gens) = obj.get("generators") {
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("generators");
        let generators = gens
            .as_array()
            .ok_or_else(|| parse_err("generators must be a list of matrices"))?
            .iter()
            .map(|g| ProjMap::from_matrix(parse_matrix(g)?))
            .collect::<Result<Vec<_>>>()?;
        let mut spec = families::from_generators(name, generators);
        // carry descriptive params through so serialization round-trips
        if let Some(params) = obj.get("params").and_then(Value::as_object) {
            spec.params = params
                .iter()
                .map(|(k, v)| {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    (k.clone(), text)
                })
                .collect();
        }
        return Ok(spec);
    }
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("spec needs \"family\" or \"generators\""))?;
    let empty = Map::new();
    let params = obj
        .get("params")
        .map(|p| {
            p.as_object()
                .ok_or_else(|| parse_err("params must be an object"))
        })
        .transpose()?
        .unwrap_or(&empty);
    parse_family(family, params)
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    parse_spec_value(&v)
}

fn complex_json(z: C) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &Mat3) -> Value {
    Value::Array(
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| complex_json(m[(i, j)]))
            .collect(),
    )
}

/// Canonical serialization: always the generator form, built from the
/// canonical (sup-norm-1, phase-fixed) matrices, so equal groups given in
/// different ways serialize identically.
pub fn spec_to_json(spec: &GroupSpec) -> Value {
    json!({
        "name": spec.name,
        "params": Value::Object(
            spec.params
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect::<Map<String, Value>>()
        ),
        "generators": Value::Array(
            spec.generators
                .iter()
                .map(|g| matrix_json(g.canon()))
                .collect()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_generator_form() {
        let text = r#"{"generators": [[[1,0],[0,0],[0,0], [0,0],[1,0],[0,0], [0,0],[0,0],[0.5,0]]]}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.generators.len(), 1);
        let m = spec.generators[0].canon();
        assert!((m[(2, 2)].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parse_family_forms() {
        let spec = parse_spec(r#"{"family":"diagonal","params":{"alpha":2,"beta":3}}"#).unwrap();
        assert_eq!(spec.generators.len(), 2);
        let spec = parse_spec(
            r#"{"family":"hyperbolic_toral","params":{"a":[[2,1],[1,1]]}}"#,
        )
        .unwrap();
        assert_eq!(spec.toral_a, Some([[2, 1], [1, 1]]));
        let spec = parse_spec(
            r#"{"family":"torus","params":{"basis":[[[1,0],[0,0]],[[0,0],[1,0]]]}}"#,
        )
        .unwrap();
        assert_eq!(spec.generators.len(), 2);
        let spec = parse_spec(
            r#"{"family":"suspension","params":{"sigma":"schottky","rho":[1,1],"alpha":2}}"#,
        )
        .unwrap();
        assert_eq!(spec.generators.len(), 3);
        let spec =
            parse_spec(r#"{"family":"unipotent","params":{"kind":"Gk","k":2}}"#).unwrap();
        assert_eq!(spec.generators.len(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_spec("not json"), Err(Error::Parse(_))));
        assert!(matches!(parse_spec("{}"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_spec(r#"{"family":"nope","params":{}}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"family":"diagonal","params":{"alpha":2}}"#),
            Err(Error::Parse(_))
        ));
        // precondition failures surface as their own variants, not Parse
        assert!(matches!(
            parse_spec(r#"{"family":"diagonal","params":{"alpha":1,"beta":1}}"#),
            Err(Error::UnitaryParameter)
        ));
    }

    #[test]
    fn serialize_is_canonical_and_stable() {
        let text = r#"{"family":"diagonal","params":{"alpha":2,"beta":3}}"#;
        let spec = parse_spec(text).unwrap();
        let once = spec_to_json(&spec);
        let reparsed = parse_spec_value(&once).unwrap();
        let twice = spec_to_json(&reparsed);
        assert_eq!(once["generators"], twice["generators"]);
        for (a, b) in spec.generators.iter().zip(&reparsed.generators) {
            assert!(a.dedup_eq(b));
        }
    }
}
