//! Generated traces must conform to `schemas/trace.schema.json`.
//!
//! The validator below covers exactly the keywords that schema uses
//! (type, const, enum, required, properties, additionalProperties, items,
//! oneOf, minimum, minLength, local `$ref`); any other keyword fails the
//! test so the schema cannot silently outgrow it.

use std::path::Path;

use condense_core::corpus::CorpusRng;
use condense_core::trace::TraceDocument;
use condense_core::{det_condensation, fixtures, Integer, Matrix, PivotStrategy, Rational, Scalar};
use serde_json::Value;

const KNOWN: &[&str] = &[
    "$schema",
    "$id",
    "$defs",
    "$ref",
    "title",
    "description",
    "type",
    "const",
    "enum",
    "required",
    "properties",
    "additionalProperties",
    "items",
    "oneOf",
    "minimum",
    "minLength",
];

fn load_schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/trace.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let pointer = reference.strip_prefix('#').expect("only local references");
    root.pointer(pointer)
        .unwrap_or_else(|| panic!("dangling reference {reference}"))
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

/// Collects violations of `schema` by `v` into `errors`, tagged with `path`.
fn validate(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let schema = schema.as_object().expect("schema nodes are objects");
    for key in schema.keys() {
        assert!(
            KNOWN.contains(&key.as_str()),
            "validator does not support `{key}`"
        );
    }
    if let Some(r) = schema.get("$ref") {
        validate(root, resolve(root, r.as_str().unwrap()), v, path, errors);
    }
    if let Some(t) = schema.get("type") {
        if !type_matches(t.as_str().unwrap(), v) {
            errors.push(format!("{path}: expected {t}"));
            return;
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            errors.push(format!("{path}: expected const {c}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum") {
        if !options.as_array().unwrap().contains(v) {
            errors.push(format!("{path}: {v} not in {options}"));
        }
    }
    if let Some(min) = schema.get("minimum") {
        if v.as_f64().is_some_and(|x| x < min.as_f64().unwrap()) {
            errors.push(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(min) = schema.get("minLength") {
        if v.as_str()
            .is_some_and(|s| (s.chars().count() as u64) < min.as_u64().unwrap())
        {
            errors.push(format!("{path}: string shorter than {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            if !obj.contains_key(key.as_str().unwrap()) {
                errors.push(format!("{path}: missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => validate(root, sub, value, &format!("{path}/{key}"), errors),
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{path}: unexpected property {key}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(root, items, item, &format!("{path}/{i}"), errors);
        }
    }
    if let Some(branches) = schema.get("oneOf") {
        let matching = branches
            .as_array()
            .unwrap()
            .iter()
            .filter(|b| {
                let mut sub = Vec::new();
                validate(root, b, v, path, &mut sub);
                sub.is_empty()
            })
            .count();
        if matching != 1 {
            errors.push(format!("{path}: matches {matching} oneOf branches"));
        }
    }
}

fn violations(json: &str) -> Vec<String> {
    let root = load_schema();
    let doc: Value = serde_json::from_str(json).unwrap();
    let mut errors = Vec::new();
    validate(&root, &root, &doc, "", &mut errors);
    errors
}

fn trace_json<S: Scalar>(m: &Matrix<S>, strategy: PivotStrategy) -> String {
    let result = det_condensation(m, strategy).unwrap();
    TraceDocument::from_result(&result, m.rows(), strategy).to_json()
}

#[test]
fn generated_traces_conform() {
    let mut rng = CorpusRng::new(0x5c4e);
    for n in 2..=8 {
        let r = rng.rational_matrix(n, 9);
        for strategy in [PivotStrategy::FirstNonzero, PivotStrategy::MaxMagnitude] {
            let json = trace_json(&r, strategy);
            assert_eq!(violations(&json), Vec::<String>::new(), "{json}");
        }
        let i: Matrix<Integer> = rng.integer_matrix(n, 9);
        assert!(violations(&trace_json(&i, PivotStrategy::FirstNonzero)).is_empty());
    }
    let worked = trace_json(&fixtures::worked_7x7(), PivotStrategy::FirstNonzero);
    assert!(violations(&worked).is_empty());
}

#[test]
fn zero_first_row_trace_conforms() {
    let m = Matrix::<Rational>::from_i64_rows(&[
        [1, 2, 3, 4],
        [0, 0, 0, 0],
        [2, 4, 6, 8],
        [1, 1, 1, 1],
    ])
    .unwrap();
    // Row 2 condenses to a zero first row one level down.
    let json = trace_json(&m, PivotStrategy::FirstNonzero);
    assert!(json.contains("zero-first-row"), "{json}");
    assert_eq!(violations(&json), Vec::<String>::new());
}

#[test]
fn schema_rejects_malformed_documents() {
    let m = Matrix::<Integer>::from_i64_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]).unwrap();
    let good = trace_json(&m, PivotStrategy::FirstNonzero);
    assert!(violations(&good).is_empty());
    let bad = [
        good.replacen("\"sign\": 1", "\"sign\": 2", 1),
        good.replacen("\"kind\": \"condense\"", "\"kind\": \"other\"", 1),
        good.replacen(
            "\"strategy\": \"first-nonzero\"",
            "\"strategy\": \"random\"",
            1,
        ),
        good.replacen("\"format\"", "\"extra\": true, \"format\"", 1),
        good.replacen("\"level\": 1", "\"level\": 0", 1),
        good.replacen("\"value\": \"18\"", "\"value\": 18", 1),
    ];
    for (i, doc) in bad.iter().enumerate() {
        assert_ne!(doc, &good, "mutation {i} did not apply");
        assert!(!violations(doc).is_empty(), "mutation {i} accepted");
    }
}
