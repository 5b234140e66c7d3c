//! JSON readers and writers for algebras, presentations, modules and
//! dimension sequences.
//!
//! Coefficients are written as exact decimal strings (`"3"`, `"-1/2"`);
//! integers are accepted on input.

use serde_json::{json, Value};

use crate::error::IoError;
use crate::field::{parse_field_json, Field, Scalar};
use crate::homology::{GradedModule, ModuleSpec};
use crate::lie::GradedLieAlgebra;
use crate::linalg::Vector;
use crate::presentation::Presentation;
use crate::series::DimensionSequence;

/// What a JSON input file turned out to hold.
#[derive(Clone, Debug)]
pub enum Input {
    Algebra(GradedLieAlgebra),
    Presentation(Presentation),
    Sequence(DimensionSequence),
}

/// Dispatches on the keys present: `generators` means a presentation,
/// `basis` an algebra, `dims` a dimension sequence.
pub fn read_input(v: &Value) -> Result<Input, IoError> {
    if v.get("generators").is_some() {
        Ok(Input::Presentation(presentation_from_json(v)?))
    } else if v.get("basis").is_some() {
        Ok(Input::Algebra(algebra_from_json(v)?))
    } else if v.get("dims").is_some() {
        Ok(Input::Sequence(DimensionSequence::from_json(v)?))
    } else {
        Err(IoError::Schema(
            "expected an algebra (`basis`), presentation (`generators`) or sequence (`dims`)".into(),
        ))
    }
}

fn field_of(v: &Value) -> Result<Field, IoError> {
    match v.get("field") {
        None | Some(Value::Null) => Ok(Field::Rational),
        Some(f) => Ok(parse_field_json(f)?),
    }
}

fn truncation_of(v: &Value) -> Result<Option<u32>, IoError> {
    match v.get("truncation") {
        None | Some(Value::Null) => Ok(None),
        Some(t) => t
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .map(Some)
            .ok_or_else(|| IoError::Schema(format!("truncation must be a nonnegative integer, got {t}"))),
    }
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a [Value], IoError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(&[]),
        Some(Value::Array(a)) => Ok(a),
        Some(other) => Err(IoError::Schema(format!("`{key}` must be an array, got {other}"))),
    }
}

fn string<'a>(v: &'a Value, key: &str) -> Result<&'a str, IoError> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| IoError::Schema(format!("missing string field `{key}` in {v}")))
}

fn degree(v: &Value) -> Result<u32, IoError> {
    v.get("degree")
        .and_then(Value::as_u64)
        .and_then(|d| u32::try_from(d).ok())
        .ok_or_else(|| IoError::Schema(format!("missing nonnegative integer `degree` in {v}")))
}

fn named_degrees(items: &[Value]) -> Result<Vec<(String, u32)>, IoError> {
    items.iter().map(|b| Ok((string(b, "name")?.to_string(), degree(b)?))).collect()
}

pub fn parse_coeff(field: Field, v: &Value) -> Result<Scalar, IoError> {
    match v {
        Value::String(s) => Ok(field.parse(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(field.parse(&n.to_string())?),
        _ => Err(IoError::Schema(format!("coefficient must be a decimal string or integer, got {v}"))),
    }
}

/// `[{"basis": name, "coeff": c}, ...]` resolved through `index`.
fn parse_vector(
    field: Field,
    items: &[Value],
    mut index: impl FnMut(&str) -> Result<usize, IoError>,
) -> Result<Vector, IoError> {
    let mut out = Vector::zero();
    for t in items {
        let i = index(string(t, "basis")?)?;
        let c = parse_coeff(field, t.get("coeff").unwrap_or(&Value::Null))?;
        out.add_at(i, &c);
    }
    Ok(out)
}

fn vector_json(v: &Vector, name: impl Fn(usize) -> String) -> Value {
    Value::Array(
        v.iter().map(|(i, c)| json!({"basis": name(i), "coeff": c.to_string()})).collect(),
    )
}

/// Reads an algebra. Axioms are not checked here; see
/// [`GradedLieAlgebra::validate`].
pub fn algebra_from_json(v: &Value) -> Result<GradedLieAlgebra, IoError> {
    let field = field_of(v)?;
    let basis = named_degrees(array(v, "basis")?)?;
    let mut l = GradedLieAlgebra::new(field, basis, truncation_of(v)?)?;
    for b in array(v, "brackets")? {
        let i = l.index_of(string(b, "left")?)?;
        let j = l.index_of(string(b, "right")?)?;
        let value = parse_vector(field, array(b, "value")?, |n| Ok(l.index_of(n)?))?;
        l.set_bracket(i, j, value)?;
    }
    Ok(l)
}

pub fn algebra_to_json(l: &GradedLieAlgebra) -> Value {
    let name = |i: usize| l.name(i).to_string();
    json!({
        "field": l.field().to_json(),
        "truncation": l.truncation(),
        "basis": l.basis().iter().map(|e| json!({"name": e.name, "degree": e.degree})).collect::<Vec<_>>(),
        "brackets": l.stored_brackets().map(|((i, j), v)| json!({
            "left": name(i), "right": name(j), "value": vector_json(v, name),
        })).collect::<Vec<_>>(),
    })
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation, IoError> {
    let field = field_of(v)?;
    let gens = named_degrees(array(v, "generators")?)?;
    let n = truncation_of(v)?
        .ok_or_else(|| IoError::Schema("a presentation needs an integer `truncation`".into()))?;
    let mut p = Presentation::new(field, gens, n)?;
    for r in array(v, "relators")? {
        let rel = p.parse_relator(r)?;
        p.add_relator(rel)?;
    }
    Ok(p)
}

/// Reads a module for `l`. Besides an explicit
/// `{"basis": [...], "action": [{"element", "on", "value"}]}` the shorthands
/// `{"kind": "trivial" | "free" | "adjoint"}` are accepted. The module is
/// validated against `l`.
pub fn module_from_json(v: &Value, l: &GradedLieAlgebra) -> Result<ModuleSpec, IoError> {
    if let Some(kind) = v.get("kind").and_then(Value::as_str) {
        return match kind {
            "trivial" => Ok(ModuleSpec::trivial(l.field())),
            "free" => Ok(ModuleSpec::Free),
            "adjoint" => Ok(ModuleSpec::Finite(GradedModule::adjoint(l)?)),
            other => Err(IoError::Schema(format!("unknown module kind `{other}`"))),
        };
    }
    let field = match v.get("field") {
        None | Some(Value::Null) => l.field(),
        Some(f) => parse_field_json(f)?,
    };
    let basis = named_degrees(array(v, "basis")?)?;
    let lookup = |name: &str| {
        basis
            .iter()
            .position(|b| b.0 == name)
            .ok_or_else(|| IoError::Schema(format!("unknown module basis element `{name}`")))
    };
    let mut actions = Vec::new();
    for a in array(v, "action")? {
        let x = l.index_of(string(a, "element")?)?;
        let m = lookup(string(a, "on")?)?;
        actions.push((x, m, parse_vector(field, array(a, "value")?, lookup)?));
    }
    let mut module = GradedModule::new(field, basis.clone());
    for (x, m, val) in actions {
        module.set_action(x, m, val);
    }
    module.validate(l)?;
    Ok(ModuleSpec::Finite(module))
}

pub fn module_to_json(m: &GradedModule, l: &GradedLieAlgebra) -> Value {
    let name = |i: usize| m.name(i).to_string();
    json!({
        "field": m.field().to_json(),
        "basis": m.basis().iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
        "action": m.actions().map(|((x, k), v)| json!({
            "element": l.name(x), "on": name(k), "value": vector_json(v, name),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> Value {
        json!({
            "field": "Q",
            "basis": [{"name": "a", "degree": 2}, {"name": "b", "degree": 2}, {"name": "c", "degree": 4}],
            "brackets": [{"left": "a", "right": "b", "value": [{"basis": "c", "coeff": "1"}]}],
        })
    }

    #[test]
    fn algebra_round_trip() {
        let l = algebra_from_json(&heisenberg()).unwrap();
        assert!(l.validate().is_empty());
        let back = algebra_to_json(&l);
        let again = algebra_from_json(&back).unwrap();
        assert_eq!(algebra_to_json(&again), back);
        assert_eq!(back["truncation"], Value::Null);
    }

    #[test]
    fn reversed_bracket_is_accepted() {
        let mut v = heisenberg();
        v["brackets"] = json!([{"left": "b", "right": "a", "value": [{"basis": "c", "coeff": -1}]}]);
        let l = algebra_from_json(&v).unwrap();
        let want = algebra_from_json(&heisenberg()).unwrap();
        assert_eq!(algebra_to_json(&l), algebra_to_json(&want));
    }

    #[test]
    fn rejects_bad_coefficients_and_names() {
        let mut v = heisenberg();
        v["brackets"][0]["value"][0]["coeff"] = json!(0.5);
        assert!(algebra_from_json(&v).is_err());
        let mut v = heisenberg();
        v["brackets"][0]["value"][0]["basis"] = json!("zz");
        assert!(algebra_from_json(&v).is_err());
        let mut v = heisenberg();
        v["field"] = json!({"Fp": 2});
        assert!(matches!(algebra_from_json(&v), Err(IoError::Field(_))));
    }

    #[test]
    fn presentation_round_trip() {
        let v = json!({
            "field": "Q", "truncation": 6,
            "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 2}],
            "relators": [["br", "a", ["br", "a", "b"]]],
        });
        let p = presentation_from_json(&v).unwrap();
        let back = p.to_json();
        assert_eq!(presentation_from_json(&back).unwrap().to_json(), back);
        assert!(matches!(read_input(&v).unwrap(), Input::Presentation(_)));
    }

    #[test]
    fn module_parse_and_validate() {
        let l = algebra_from_json(&heisenberg()).unwrap();
        let adj = match module_from_json(&json!({"kind": "adjoint"}), &l).unwrap() {
            ModuleSpec::Finite(m) => m,
            ModuleSpec::Free => unreachable!(),
        };
        let v = module_to_json(&adj, &l);
        assert!(module_from_json(&v, &l).is_ok());
        // a non-module: a acts but b does not, so [a,b] = c must act by zero on
        // a nonzero vector while the commutator vanishes
        let bad = json!({
            "basis": [{"name": "m", "degree": 0}, {"name": "n", "degree": 4}],
            "action": [{"element": "c", "on": "m", "value": [{"basis": "n", "coeff": "1"}]}],
        });
        assert!(matches!(module_from_json(&bad, &l), Err(IoError::Homology(_))));
    }
}
