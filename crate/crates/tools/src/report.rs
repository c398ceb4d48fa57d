//! Report construction and rendering.
//!
//! Every command and suite builds exactly one JSON value describing its
//! outcome; that value is the single source of truth. The JSON renderer
//! prints it pretty with a stable (alphabetical) key order, and the text
//! renderer walks the *same* value, so the two output modes can never
//! disagree about content. Reports carry no timestamps or timing — the
//! same inputs produce byte-identical output.

use qpmet_core::multimaps::{ApproxReport, LevelSets, PointClassification};
use qpmet_core::rational::rational_to_string;
use qpmet_core::solvers::{
    AdmissibilityReport, ContractionReport, IterationLog, IterationViolation, PairFinding,
    SolveMethod, StepRecord,
};
use qpmet_core::funcspec::CertificationRecord;
use qpmet_core::hyperspace::HyperDistanceReport;
use qpmet_core::{ExtendedRational, FiniteQuasiSpace, PointSet, Rational};
use serde_json::{json, Map, Value};

/// Schema tag stamped on every top-level report.
pub const SCHEMA: &str = "qpmet-report/1";

/// Wraps a report body with the schema tag and a kind discriminator.
pub fn report(kind: &str, body: Map<String, Value>) -> Value {
    let mut root = Map::new();
    root.insert("schema".into(), json!(SCHEMA));
    root.insert("kind".into(), json!(kind));
    for (key, value) in body {
        root.insert(key, value);
    }
    Value::Object(root)
}

/// A rational as its canonical string.
pub fn rat(value: &Rational) -> Value {
    Value::String(rational_to_string(value))
}

/// An extended rational: the canonical string, or `"inf"`.
pub fn ext(value: &ExtendedRational) -> Value {
    match value.finite() {
        Some(finite) => rat(finite),
        None => Value::String("inf".into()),
    }
}

/// A point as its label.
pub fn point(space: &FiniteQuasiSpace, p: usize) -> Value {
    Value::String(space.label(p).to_string())
}

/// A point set as the sorted array of its labels (index order).
pub fn point_set(space: &FiniteQuasiSpace, set: &PointSet) -> Value {
    Value::Array(set.iter().map(|p| point(space, p)).collect())
}

pub fn classification(space: &FiniteQuasiSpace, c: &PointClassification) -> Value {
    json!({
        "point": point(space, c.point),
        "start_value": rat(&c.start_value),
        "end_value": rat(&c.end_value),
        "mix_value": rat(&c.mix_value),
        "fixed": c.is_fixed,
        "startpoint": c.is_startpoint,
        "endpoint": c.is_endpoint,
    })
}

pub fn approx(space: &FiniteQuasiSpace, a: &ApproxReport) -> Value {
    json!({
        "kind": a.kind.to_string(),
        "value": rat(&a.value),
        "witness": point(space, a.witness),
    })
}

fn certification_word(outcome: qpmet_core::funcspec::Certification) -> &'static str {
    use qpmet_core::funcspec::Certification::*;
    match outcome {
        Proved => "proved",
        Refuted => "refuted",
        HeuristicPass => "heuristic-pass",
        HeuristicFail => "heuristic-fail",
    }
}

pub fn certification(record: &CertificationRecord) -> Value {
    json!({
        "nondecreasing": certification_word(record.nondecreasing),
        "summable_orbits": certification_word(record.summable_orbits),
        "below_identity": certification_word(record.below_identity),
        "upper_semicontinuous": certification_word(record.upper_semicontinuous),
        "gap_at_infinity": certification_word(record.gap_at_infinity),
    })
}

pub fn pair_finding(space: &FiniteQuasiSpace, finding: &PairFinding) -> Value {
    json!({
        "x": point(space, finding.x),
        "y": point(space, finding.y),
        "lhs": rat(&finding.lhs),
        "rhs": rat(&finding.rhs),
    })
}

pub fn contraction(space: &FiniteQuasiSpace, report: &ContractionReport) -> Value {
    json!({
        "holds": report.holds,
        "worst_pair": report.worst.as_ref().map(|w| pair_finding(space, w)),
        "max_ratio": report.max_ratio.as_ref().map(ext),
        "certification": certification(&report.certification),
    })
}

pub fn admissibility(space: &FiniteQuasiSpace, report: &AdmissibilityReport) -> Value {
    json!({
        "admissible": report.admissible,
        "failures": report
            .failures
            .iter()
            .map(|f| pair_finding(space, f))
            .collect::<Vec<_>>(),
    })
}

pub fn level_sets(space: &FiniteQuasiSpace, levels: &LevelSets) -> Value {
    let sets: Vec<Value> = levels
        .sets
        .iter()
        .zip(&levels.diameters)
        .enumerate()
        .map(|(i, (set, diameter))| {
            json!({
                "n": i + 1,
                "members": point_set(space, set),
                "sym_diameter": diameter.as_ref().map(rat),
            })
        })
        .collect();
    json!({
        "levels": sets,
        "core": point_set(space, &levels.core),
    })
}

pub fn hyper_distance(
    space: &FiniteQuasiSpace,
    report: &HyperDistanceReport,
) -> Value {
    json!({
        "value": ext(&report.value),
        "witness_in_left": point(space, report.witness_in_left),
        "witness_in_right": point(space, report.witness_in_right),
    })
}

fn method_name(method: &SolveMethod) -> &'static str {
    match method {
        SolveMethod::WeightedOrbit { .. } => "weighted-orbit",
        SolveMethod::StartpointDescent { .. } => "startpoint-descent",
        SolveMethod::EndpointDescent { .. } => "endpoint-descent",
        SolveMethod::SymmetricDescent { .. } => "symmetric-descent",
    }
}

fn step_record(space: &FiniteQuasiSpace, step: &StepRecord) -> Value {
    let mut entry = Map::new();
    entry.insert("index".into(), json!(step.index));
    entry.insert("from".into(), point(space, step.from));
    entry.insert("to".into(), point(space, step.to));
    entry.insert("step_distance".into(), rat(&step.step_distance));
    entry.insert("step_bound".into(), rat(&step.step_bound));
    entry.insert("step_bound_ok".into(), json!(step.step_bound_ok));
    if let Some(weight) = &step.weight {
        entry.insert("weight".into(), rat(weight));
    }
    if let Some(value) = &step.target_value {
        entry.insert("target_value".into(), rat(value));
    }
    if let Some(bound) = &step.target_bound {
        entry.insert("target_bound".into(), rat(bound));
    }
    if let Some(ok) = step.target_bound_ok {
        entry.insert("target_bound_ok".into(), json!(ok));
    }
    if let Some(bound) = &step.feasibility_bound {
        entry.insert("feasibility_bound".into(), rat(bound));
    }
    if let Some(bound) = &step.remaining_bound {
        entry.insert("remaining_bound".into(), rat(bound));
    }
    Value::Object(entry)
}

fn violation(space: &FiniteQuasiSpace, violation: &IterationViolation) -> Value {
    match violation {
        IterationViolation::WeightPropagation { failures } => json!({
            "kind": "weight-propagation",
            "failures": failures
                .iter()
                .map(|f| pair_finding(space, f))
                .collect::<Vec<_>>(),
        }),
        IterationViolation::Contraction { worst } => json!({
            "kind": "contraction",
            "worst_pair": pair_finding(space, worst),
        }),
        IterationViolation::SeedWeight { weight } => json!({
            "kind": "seed-weight",
            "weight": rat(weight),
        }),
        IterationViolation::StepBound { index } => json!({
            "kind": "step-bound",
            "step_index": index,
        }),
        IterationViolation::NoFeasibleSuccessor { at, closest } => json!({
            "kind": "no-feasible-successor",
            "at": point(space, *at),
            "closest_candidate": closest.as_ref().map(|c| pair_finding(space, c)),
        }),
    }
}

pub fn iteration_log(space: &FiniteQuasiSpace, log: &IterationLog) -> Value {
    let mut body = Map::new();
    body.insert("method".into(), json!(method_name(&log.method)));
    body.insert("seed".into(), point(space, log.seed));
    body.insert("status".into(), json!(log.status.to_string()));
    body.insert(
        "steps".into(),
        Value::Array(
            log.steps
                .iter()
                .map(|step| step_record(space, step))
                .collect(),
        ),
    );
    body.insert("terminal".into(), point(space, log.terminal));
    if let Some(classification_record) = &log.terminal_classification {
        body.insert(
            "terminal_classification".into(),
            classification(space, classification_record),
        );
    }
    if let Some(violation_record) = &log.violation {
        body.insert("violation".into(), violation(space, violation_record));
    }
    if !log.assumed_hypotheses.is_empty() {
        body.insert("assumed_hypotheses".into(), json!(log.assumed_hypotheses));
    }
    Value::Object(body)
}

/// Pretty JSON with a trailing newline; keys are sorted, output is
/// byte-deterministic.
pub fn render_json(value: &Value) -> String {
    let mut text =
        serde_json::to_string_pretty(value).expect("report serialization is infallible");
    text.push('\n');
    text
}

/// Plain-text rendering of the same value: `key: value` lines, nested
/// blocks indented, and arrays of uniform objects as aligned tables.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, value, 0);
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::Null => "-".into(),
        Value::String(text) => text.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Array(_) | Value::Object(_))
}

/// Arrays of objects sharing one key set render as a table.
fn uniform_keys(items: &[Value]) -> Option<Vec<&String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    for item in items {
        let object = item.as_object()?;
        if object.keys().ne(keys.iter().copied()) {
            return None;
        }
        if object.values().any(|v| !is_scalar(v)) {
            return None;
        }
    }
    Some(keys)
}

fn render_table(out: &mut String, items: &[Value], keys: &[&String], depth: usize) {
    let mut widths: Vec<usize> = keys.iter().map(|k| k.len()).collect();
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            let object = item.as_object().expect("checked uniform");
            keys.iter()
                .enumerate()
                .map(|(i, key)| {
                    let cell = scalar_text(&object[*key]);
                    widths[i] = widths[i].max(cell.len());
                    cell
                })
                .collect()
        })
        .collect();
    indent(out, depth);
    for (i, key) in keys.iter().enumerate() {
        if i > 0 {
            out.push_str("  ");
        }
        out.push_str(&format!("{key:<width$}", width = widths[i]));
    }
    out.push('\n');
    for row in rows {
        indent(out, depth);
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            if i + 1 == row.len() {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
        }
        out.push('\n');
    }
}

fn render_into(out: &mut String, value: &Value, depth: usize) {
    match value {
        Value::Object(object) => {
            for (key, entry) in object {
                if is_scalar(entry) {
                    indent(out, depth);
                    out.push_str(key);
                    out.push_str(": ");
                    out.push_str(&scalar_text(entry));
                    out.push('\n');
                } else if let Value::Array(items) = entry {
                    render_array_entry(out, key, items, depth);
                } else {
                    indent(out, depth);
                    out.push_str(key);
                    out.push_str(":\n");
                    render_into(out, entry, depth + 1);
                }
            }
        }
        Value::Array(items) => render_array_entry(out, "items", items, depth),
        scalar => {
            indent(out, depth);
            out.push_str(&scalar_text(scalar));
            out.push('\n');
        }
    }
}

fn render_array_entry(out: &mut String, key: &str, items: &[Value], depth: usize) {
    if items.is_empty() {
        indent(out, depth);
        out.push_str(key);
        out.push_str(": (none)\n");
        return;
    }
    if items.iter().all(is_scalar) {
        indent(out, depth);
        out.push_str(key);
        out.push_str(": [");
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&scalar_text(item));
        }
        out.push_str("]\n");
        return;
    }
    indent(out, depth);
    out.push_str(key);
    out.push_str(":\n");
    if let Some(keys) = uniform_keys(items) {
        render_table(out, items, &keys, depth + 1);
        return;
    }
    for item in items {
        if is_scalar(item) {
            indent(out, depth + 1);
            out.push_str("- ");
            out.push_str(&scalar_text(item));
            out.push('\n');
        } else {
            indent(out, depth + 1);
            out.push_str("-\n");
            render_into(out, item, depth + 2);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpmet_core::multimaps::SetValuedMap;
    use qpmet_core::rational::ratio;

    /// Two points where moving from `a` to `b` is free but returning
    /// costs one.
    fn tilted_pair() -> FiniteQuasiSpace {
        FiniteQuasiSpace::new(
            vec!["a".into(), "b".into()],
            vec![
                vec![ratio(0, 1), ratio(0, 1)],
                vec![ratio(1, 1), ratio(0, 1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn scalars_and_sets_render_canonically() {
        assert_eq!(rat(&ratio(3, 6)), Value::String("1/2".into()));
        assert_eq!(rat(&ratio(4, 2)), Value::String("2".into()));
        assert_eq!(
            ext(&ExtendedRational::Infinite),
            Value::String("inf".into())
        );
        let space = tilted_pair();
        let mut set = PointSet::empty();
        set.insert(1);
        set.insert(0);
        assert_eq!(point_set(&space, &set), json!(["a", "b"]));
    }

    #[test]
    fn text_renderer_walks_objects_arrays_and_tables() {
        let value = json!({
            "name": "demo",
            "empty": [],
            "tags": ["a", "b"],
            "rows": [
                {"point": "x", "value": "1/2"},
                {"point": "yy", "value": "0"}
            ],
            "nested": {"inner": 3}
        });
        let text = render_text(&value);
        let expected = "\
empty: (none)
name: demo
nested:
  inner: 3
rows:
  point  value
  x      1/2
  yy     0
tags: [a, b]
";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_rendering_is_deterministic() {
        let space = tilted_pair();
        let map = SetValuedMap::new(
            &space,
            vec![PointSet::from_iter([1]), PointSet::from_iter([0])],
        )
        .unwrap();
        let classification_record =
            qpmet_core::multimaps::classify_point(&space, &map, 0).unwrap();
        let value = report(
            "demo",
            Map::from_iter([(
                String::from("classification"),
                classification(&space, &classification_record),
            )]),
        );
        let first = render_json(&value);
        let second = render_json(&value);
        assert_eq!(first, second);
        assert!(first.starts_with("{\n  \"classification\""));
        assert!(first.contains("\"schema\": \"qpmet-report/1\""));
        assert!(first.ends_with('\n'));
    }

    #[test]
    fn mixed_arrays_fall_back_to_item_lists() {
        let value = json!({
            "mixed": [
                {"a": 1},
                {"b": 2}
            ]
        });
        let text = render_text(&value);
        assert_eq!(text, "mixed:\n  -\n    a: 1\n  -\n    b: 2\n");
    }
}
