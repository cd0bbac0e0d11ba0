use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, RefinementScript};
use crate::interval::UncertainInterval;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    version: String,
    delta: String,
    intervals: Vec<IntervalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    refinements: Option<Vec<Vec<StepDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    time_costs: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    lo: String,
    hi: String,
    cost: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    lo: String,
    hi: String,
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(format_scalar).collect()
}

/// Canonical UTF-8 text for `inst`: pretty JSON, numbers as strings, trailing newline.
pub fn serialize(inst: &Instance) -> String {
    let doc = Document {
        version: FORMAT_VERSION.into(),
        delta: format_scalar(&inst.delta),
        intervals: inst
            .intervals
            .iter()
            .map(|iv| IntervalDoc {
                lo: format_scalar(&iv.lo),
                hi: format_scalar(&iv.hi),
                cost: format_scalar(&iv.cost),
            })
            .collect(),
        values: inst.values.as_deref().map(strings),
        refinements: inst.refinements.as_ref().map(|scripts| {
            scripts
                .iter()
                .map(|s| {
                    s.steps
                        .iter()
                        .map(|(lo, hi)| StepDoc {
                            lo: format_scalar(lo),
                            hi: format_scalar(hi),
                        })
                        .collect()
                })
                .collect()
        }),
        time_costs: inst
            .time_costs
            .as_ref()
            .map(|tc| tc.iter().map(|seq| strings(seq)).collect()),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

fn field(text: &str, what: impl Fn() -> String) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| match e {
        Error::ParseError { message, .. } => Error::ParseError {
            line: 0,
            column: 0,
            message: format!("{}: {message}", what()),
        },
        other => other,
    })
}

/// Parses and validates a document produced by [`serialize`] (or written by hand).
pub fn deserialize(text: &str) -> Result<Instance> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::ParseError {
            line: 0,
            column: 0,
            message: format!("unsupported version {:?}", doc.version),
        });
    }
    let delta = field(&doc.delta, || "delta".into())?;
    let intervals = doc
        .intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            UncertainInterval::new(
                field(&iv.lo, || format!("intervals[{i}].lo"))?,
                field(&iv.hi, || format!("intervals[{i}].hi"))?,
                field(&iv.cost, || format!("intervals[{i}].cost"))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let values = doc
        .values
        .map(|vs| {
            vs.iter()
                .enumerate()
                .map(|(i, v)| field(v, || format!("values[{i}]")))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let refinements = doc
        .refinements
        .map(|scripts| {
            scripts
                .iter()
                .enumerate()
                .map(|(i, steps)| {
                    steps
                        .iter()
                        .enumerate()
                        .map(|(t, s)| {
                            Ok((
                                field(&s.lo, || format!("refinements[{i}][{t}].lo"))?,
                                field(&s.hi, || format!("refinements[{i}][{t}].hi"))?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()
                        .map(RefinementScript::new)
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let time_costs = doc
        .time_costs
        .map(|tc| {
            tc.iter()
                .enumerate()
                .map(|(i, seq)| {
                    seq.iter()
                        .enumerate()
                        .map(|(t, c)| field(c, || format!("time_costs[{i}][{t}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let inst = Instance {
        delta,
        intervals,
        values,
        refinements,
        time_costs,
    };
    inst.validate()?;
    Ok(inst)
}
