//! The instance file format: a strict, versioned JSON grammar for finite
//! quasi-pseudometric spaces with optional maps and control functions.
//!
//! Top-level object keys (any other key is rejected):
//!
//! - `"points"`   — nonempty array of distinct nonempty label strings.
//! - `"dist"`     — n×n array of arrays of rational strings, rows ordered
//!   as `points`; entry `[i][j]` is `d(points[i], points[j])`.
//! - `"F"`        — optional set-valued map: object with exactly the
//!   labels as keys, each mapped to a nonempty array of labels.
//! - `"f"`        — optional single-valued map: object with exactly the
//!   labels as keys, each mapped to one label.
//! - `"alpha"`    — optional n×n weight matrix of rational strings for
//!   `f` (requires `f`).
//! - `"gamma"`    — optional comparison function spec (see below).
//! - `"psi"`      — optional contraction modulus spec (same shape).
//! - `"flags"`    — optional object; the only known flag is
//!   `"require_t0": bool`.
//! - `"version"`  — optional; must be the integer 1 when present.
//!
//! Function specs are objects `{"kind": "linear", "c": "1/2"}`,
//! `{"kind": "power", "c": "1/2", "p": 2}`, or `{"kind": "table",
//! "breakpoints": [["1/2", "1/4"], ...]}`.
//!
//! Rationals cross the interface as `"p/q"` strings only; no floating
//! point is accepted anywhere. Parsing distinguishes structural problems
//! (malformed JSON, unknown keys, shape errors, empty images) from axiom
//! violations of a well-formed matrix: callers exit differently on the
//! two classes.

use std::collections::BTreeSet;
use std::fmt;

use qpmet_core::funcspec::FunctionSpec;
use qpmet_core::multimaps::{SetValuedMap, SingleMap};
use qpmet_core::rational::{parse_rational, rational_to_string};
use qpmet_core::space::{SpaceDiagnostics, SpaceError};
use qpmet_core::{FiniteQuasiSpace, PointSet, Rational};
use serde_json::{json, Map, Value};

/// A parsed, fully validated instance: the space plus whatever optional
/// components the document carried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabInstance {
    pub space: FiniteQuasiSpace,
    /// The set-valued map `F`, when given.
    pub set_map: Option<SetValuedMap>,
    /// The single-valued map `f` (with its weight table when `alpha` was
    /// given), when given.
    pub single_map: Option<SingleMap>,
    /// The comparison function `gamma`, when given.
    pub comparison: Option<FunctionSpec>,
    /// The contraction modulus `psi`, when given.
    pub modulus: Option<FunctionSpec>,
    /// Whether the document demanded the `T0` separation property.
    pub require_t0: bool,
}

/// Errors from parsing an instance document.
#[derive(Clone, Debug)]
pub enum FormatError {
    /// The text is not valid JSON; carries the parser's positioned message.
    Json(String),
    /// The JSON is well-formed but violates the grammar at `path`.
    Structure { path: String, detail: String },
    /// The matrix is well-formed but violates the quasi-pseudometric
    /// axioms (or `T0` when demanded); carries exact witnesses.
    Axioms(SpaceDiagnostics),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(message) => write!(f, "invalid JSON: {message}"),
            FormatError::Structure { path, detail } => {
                write!(f, "invalid instance at {path}: {detail}")
            }
            FormatError::Axioms(diagnostics) => {
                write!(f, "axiom violations:")?;
                for violation in &diagnostics.violations {
                    write!(f, "\n  {violation}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for FormatError {}

impl FormatError {
    fn structure(path: impl Into<String>, detail: impl Into<String>) -> Self {
        FormatError::Structure {
            path: path.into(),
            detail: detail.into(),
        }
    }

    /// Whether this is an axiom failure of well-formed input (as opposed
    /// to a structural problem). Callers map the distinction to exit
    /// codes.
    pub fn is_axiom_failure(&self) -> bool {
        matches!(self, FormatError::Axioms(_))
    }
}

fn expect_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    value
        .as_object()
        .ok_or_else(|| FormatError::structure(path, "expected an object"))
}

fn expect_array<'a>(value: &'a Value, path: &str) -> Result<&'a [Value], FormatError> {
    value
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| FormatError::structure(path, "expected an array"))
}

fn expect_string<'a>(value: &'a Value, path: &str) -> Result<&'a str, FormatError> {
    value
        .as_str()
        .ok_or_else(|| FormatError::structure(path, "expected a string"))
}

fn expect_rational(value: &Value, path: &str) -> Result<Rational, FormatError> {
    let text = value.as_str().ok_or_else(|| {
        FormatError::structure(
            path,
            "expected a rational string \"p/q\" (numbers must be quoted)",
        )
    })?;
    parse_rational(text).map_err(|err| FormatError::structure(path, err.to_string()))
}

fn reject_unknown_keys(
    object: &Map<String, Value>,
    known: &[&str],
    path: &str,
) -> Result<(), FormatError> {
    for key in object.keys() {
        if !known.contains(&key.as_str()) {
            return Err(FormatError::structure(
                format!("{path}.{key}"),
                format!("unknown key (known keys: {})", known.join(", ")),
            ));
        }
    }
    Ok(())
}

fn parse_points(map: &Map<String, Value>) -> Result<Vec<String>, FormatError> {
    let value = map
        .get("points")
        .ok_or_else(|| FormatError::structure("points", "missing required key"))?;
    let entries = expect_array(value, "points")?;
    if entries.is_empty() {
        return Err(FormatError::structure("points", "must be nonempty"));
    }
    let mut labels = Vec::with_capacity(entries.len());
    let mut seen = BTreeSet::new();
    for (i, entry) in entries.iter().enumerate() {
        let label = expect_string(entry, &format!("points[{i}]"))?;
        if label.is_empty() {
            return Err(FormatError::structure(
                format!("points[{i}]"),
                "labels must be nonempty",
            ));
        }
        if !seen.insert(label) {
            return Err(FormatError::structure(
                format!("points[{i}]"),
                format!("duplicate label {label:?}"),
            ));
        }
        labels.push(label.to_string());
    }
    Ok(labels)
}

fn parse_matrix(
    map: &Map<String, Value>,
    key: &str,
    n: usize,
) -> Result<Vec<Vec<Rational>>, FormatError> {
    let value = map
        .get(key)
        .ok_or_else(|| FormatError::structure(key, "missing required key"))?;
    let rows = expect_array(value, key)?;
    if rows.len() != n {
        return Err(FormatError::structure(
            key,
            format!("expected {n} rows (one per point), got {}", rows.len()),
        ));
    }
    let mut matrix = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{key}[{i}]");
        let entries = expect_array(row, &row_path)?;
        if entries.len() != n {
            return Err(FormatError::structure(
                row_path,
                format!("expected {n} entries, got {}", entries.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, entry) in entries.iter().enumerate() {
            parsed.push(expect_rational(entry, &format!("{key}[{i}][{j}]"))?);
        }
        matrix.push(parsed);
    }
    Ok(matrix)
}

fn label_index(space: &FiniteQuasiSpace, label: &str, path: &str) -> Result<usize, FormatError> {
    space
        .point(label)
        .map_err(|_| FormatError::structure(path, format!("unknown point label {label:?}")))
}

/// Checks that `object` has exactly the space's labels as keys.
fn expect_total_over_labels(
    object: &Map<String, Value>,
    space: &FiniteQuasiSpace,
    path: &str,
) -> Result<(), FormatError> {
    for key in object.keys() {
        label_index(space, key, &format!("{path}.{key}"))?;
    }
    for label in space.labels() {
        if !object.contains_key(label) {
            return Err(FormatError::structure(
                path,
                format!("missing image for point {label:?} (maps must be total)"),
            ));
        }
    }
    Ok(())
}

fn parse_set_map(
    value: &Value,
    space: &FiniteQuasiSpace,
) -> Result<SetValuedMap, FormatError> {
    let object = expect_object(value, "F")?;
    expect_total_over_labels(object, space, "F")?;
    let mut images = vec![PointSet::empty(); space.len()];
    for (label, image_value) in object {
        let x = label_index(space, label, "F")?;
        let path = format!("F.{label}");
        let entries = expect_array(image_value, &path)?;
        if entries.is_empty() {
            return Err(FormatError::structure(path, "empty image (images must be nonempty)"));
        }
        let mut image = PointSet::empty();
        for (i, entry) in entries.iter().enumerate() {
            let entry_path = format!("{path}[{i}]");
            let target = expect_string(entry, &entry_path)?;
            image.insert(label_index(space, target, &entry_path)?);
        }
        images[x] = image;
    }
    SetValuedMap::new(space, images)
        .map_err(|err| FormatError::structure("F", err.to_string()))
}

fn parse_single_map(
    value: &Value,
    alpha: Option<&Value>,
    space: &FiniteQuasiSpace,
) -> Result<SingleMap, FormatError> {
    let object = expect_object(value, "f")?;
    expect_total_over_labels(object, space, "f")?;
    let mut values = vec![0usize; space.len()];
    for (label, target_value) in object {
        let x = label_index(space, label, "f")?;
        let path = format!("f.{label}");
        let target = expect_string(target_value, &path)?;
        values[x] = label_index(space, target, &path)?;
    }
    let map = SingleMap::new(space, values)
        .map_err(|err| FormatError::structure("f", err.to_string()))?;
    match alpha {
        None => Ok(map),
        Some(alpha_value) => {
            let fake_root = Map::from_iter([(String::from("alpha"), alpha_value.clone())]);
            let rows = parse_matrix(&fake_root, "alpha", space.len())?;
            map.with_weights(space, rows)
                .map_err(|err| FormatError::structure("alpha", err.to_string()))
        }
    }
}

fn parse_function_spec(value: &Value, key: &str) -> Result<FunctionSpec, FormatError> {
    let object = expect_object(value, key)?;
    let kind_path = format!("{key}.kind");
    let kind = object
        .get("kind")
        .ok_or_else(|| FormatError::structure(&kind_path, "missing required key"))
        .and_then(|v| expect_string(v, &kind_path))?;
    let build = |result: Result<FunctionSpec, qpmet_core::funcspec::FunctionSpecError>| {
        result.map_err(|err| FormatError::structure(key, err.to_string()))
    };
    match kind {
        "linear" => {
            reject_unknown_keys(object, &["kind", "c"], key)?;
            let c = object
                .get("c")
                .ok_or_else(|| FormatError::structure(format!("{key}.c"), "missing required key"))?;
            build(FunctionSpec::linear(expect_rational(c, &format!("{key}.c"))?))
        }
        "power" => {
            reject_unknown_keys(object, &["kind", "c", "p"], key)?;
            let c = object
                .get("c")
                .ok_or_else(|| FormatError::structure(format!("{key}.c"), "missing required key"))?;
            let p = object
                .get("p")
                .ok_or_else(|| FormatError::structure(format!("{key}.p"), "missing required key"))?
                .as_u64()
                .ok_or_else(|| {
                    FormatError::structure(format!("{key}.p"), "expected a positive integer")
                })?;
            let exponent = u32::try_from(p).map_err(|_| {
                FormatError::structure(format!("{key}.p"), "exponent out of range")
            })?;
            build(FunctionSpec::power(
                expect_rational(c, &format!("{key}.c"))?,
                exponent,
            ))
        }
        "table" => {
            reject_unknown_keys(object, &["kind", "breakpoints"], key)?;
            let entries = object.get("breakpoints").ok_or_else(|| {
                FormatError::structure(format!("{key}.breakpoints"), "missing required key")
            })?;
            let entries = expect_array(entries, &format!("{key}.breakpoints"))?;
            let mut breakpoints = Vec::with_capacity(entries.len());
            for (i, entry) in entries.iter().enumerate() {
                let path = format!("{key}.breakpoints[{i}]");
                let pair = expect_array(entry, &path)?;
                if pair.len() != 2 {
                    return Err(FormatError::structure(path, "expected a [t, value] pair"));
                }
                breakpoints.push((
                    expect_rational(&pair[0], &format!("{path}[0]"))?,
                    expect_rational(&pair[1], &format!("{path}[1]"))?,
                ));
            }
            build(FunctionSpec::table(breakpoints))
        }
        other => Err(FormatError::structure(
            kind_path,
            format!("unknown kind {other:?} (known: linear, power, table)"),
        )),
    }
}

fn parse_flags(value: &Value) -> Result<bool, FormatError> {
    let object = expect_object(value, "flags")?;
    reject_unknown_keys(object, &["require_t0"], "flags")?;
    match object.get("require_t0") {
        None => Ok(false),
        Some(flag) => flag
            .as_bool()
            .ok_or_else(|| FormatError::structure("flags.require_t0", "expected a boolean")),
    }
}

const TOP_LEVEL_KEYS: [&str; 9] = [
    "points", "dist", "F", "f", "alpha", "gamma", "psi", "flags", "version",
];

/// Parses and fully validates an instance document.
pub fn parse_instance(text: &str) -> Result<LabInstance, FormatError> {
    let value: Value =
        serde_json::from_str(text).map_err(|err| FormatError::Json(err.to_string()))?;
    let root = expect_object(&value, "document root")?;
    reject_unknown_keys(root, &TOP_LEVEL_KEYS, "document root")?;

    if let Some(version) = root.get("version") {
        if version.as_u64() != Some(1) {
            return Err(FormatError::structure(
                "version",
                format!("unsupported version {version} (this tool reads version 1)"),
            ));
        }
    }

    let labels = parse_points(root)?;
    let rows = parse_matrix(root, "dist", labels.len())?;
    let space = match FiniteQuasiSpace::new(labels, rows) {
        Ok(space) => space,
        Err(SpaceError::Axioms(diagnostics)) => return Err(FormatError::Axioms(diagnostics)),
        Err(other) => return Err(FormatError::structure("dist", other.to_string())),
    };

    let require_t0 = match root.get("flags") {
        Some(flags) => parse_flags(flags)?,
        None => false,
    };
    if require_t0 {
        let diagnostics = space.diagnostics(true);
        if !diagnostics.is_clean() {
            return Err(FormatError::Axioms(diagnostics));
        }
    }

    if root.get("alpha").is_some() && root.get("f").is_none() {
        return Err(FormatError::structure(
            "alpha",
            "alpha is a weight table for f; provide f as well",
        ));
    }

    let set_map = root
        .get("F")
        .map(|value| parse_set_map(value, &space))
        .transpose()?;
    let single_map = root
        .get("f")
        .map(|value| parse_single_map(value, root.get("alpha"), &space))
        .transpose()?;
    let comparison = root
        .get("gamma")
        .map(|value| parse_function_spec(value, "gamma"))
        .transpose()?;
    let modulus = root
        .get("psi")
        .map(|value| parse_function_spec(value, "psi"))
        .transpose()?;

    Ok(LabInstance {
        space,
        set_map,
        single_map,
        comparison,
        modulus,
        require_t0,
    })
}

fn function_spec_to_value(spec: &FunctionSpec) -> Value {
    use qpmet_core::funcspec::FunctionSpecView;
    match spec.view() {
        FunctionSpecView::Linear { factor } => json!({
            "kind": "linear",
            "c": rational_to_string(factor),
        }),
        FunctionSpecView::Power { factor, exponent } => json!({
            "kind": "power",
            "c": rational_to_string(factor),
            "p": exponent,
        }),
        FunctionSpecView::Table { breakpoints } => json!({
            "kind": "table",
            "breakpoints": breakpoints
                .iter()
                .map(|(t, v)| json!([rational_to_string(t), rational_to_string(v)]))
                .collect::<Vec<_>>(),
        }),
    }
}

/// Renders an instance back to the document grammar. The output parses to
/// an equal instance; key order is deterministic.
pub fn export_instance(instance: &LabInstance) -> String {
    let space = &instance.space;
    let n = space.len();
    let mut root = Map::new();
    root.insert("version".into(), json!(1));
    root.insert(
        "points".into(),
        json!(space.labels().iter().collect::<Vec<_>>()),
    );
    let dist: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| rational_to_string(space.dist(i, j))).collect())
        .collect();
    root.insert("dist".into(), json!(dist));

    if let Some(map) = &instance.set_map {
        let mut images = Map::new();
        for x in 0..n {
            images.insert(
                space.label(x).to_string(),
                json!(map.image(x).iter().map(|y| space.label(y)).collect::<Vec<_>>()),
            );
        }
        root.insert("F".into(), Value::Object(images));
    }
    if let Some(map) = &instance.single_map {
        let mut values = Map::new();
        for x in 0..n {
            values.insert(
                space.label(x).to_string(),
                json!(space.label(map.value(x))),
            );
        }
        root.insert("f".into(), Value::Object(values));
        if map.has_weights() {
            let alpha: Vec<Vec<String>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| rational_to_string(map.weight(x, y).expect("weights present")))
                        .collect()
                })
                .collect();
            root.insert("alpha".into(), json!(alpha));
        }
    }
    if let Some(spec) = &instance.comparison {
        root.insert("gamma".into(), function_spec_to_value(spec));
    }
    if let Some(spec) = &instance.modulus {
        root.insert("psi".into(), function_spec_to_value(spec));
    }
    if instance.require_t0 {
        root.insert("flags".into(), json!({ "require_t0": true }));
    }

    let mut text = serde_json::to_string_pretty(&Value::Object(root))
        .expect("instance serialization is infallible");
    text.push('\n');
    text
}

/// Convenience used by generators and tests: wraps a bare space.
pub fn instance_from_space(space: FiniteQuasiSpace) -> LabInstance {
    LabInstance {
        space,
        set_map: None,
        single_map: None,
        comparison: None,
        modulus: None,
        require_t0: false,
    }
}
