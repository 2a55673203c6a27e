use galqm::Field;
use serde::Serialize;

use super::build_field;
use crate::error::CliResult;
use crate::output::{to_csv, to_json, Render, SCHEMA};
use crate::Global;

/// Tables are printed only up to this order.
const TABLE_LIMIT: u32 = 16;

#[derive(Debug, Serialize)]
pub struct FieldReport {
    schema: &'static str,
    command: &'static str,
    field: String,
    p: u32,
    n: u32,
    q: u32,
    modulus: String,
    elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    addition: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplication: Option<Vec<Vec<String>>>,
}

pub fn field(g: &Global) -> CliResult<FieldReport> {
    let f: Field = build_field(g)?;
    let elements = f.elements();
    let table = |op: fn(&galqm::FieldElement, &galqm::FieldElement) -> galqm::FieldElement| {
        elements
            .iter()
            .map(|a| elements.iter().map(|b| op(a, b).to_string()).collect())
            .collect::<Vec<Vec<String>>>()
    };
    let small = f.order() <= TABLE_LIMIT;
    Ok(FieldReport {
        schema: SCHEMA,
        command: "field",
        field: f.descriptor(),
        p: f.characteristic(),
        n: f.degree(),
        q: f.order(),
        modulus: f.modulus().to_string(),
        elements: elements.iter().map(ToString::to_string).collect(),
        addition: small.then(|| table(|a, b| a + b)),
        multiplication: small.then(|| table(|a, b| a * b)),
    })
}

impl FieldReport {
    fn tables(&self) -> Vec<(&'static str, &Vec<Vec<String>>)> {
        let mut out = Vec::new();
        if let Some(t) = &self.addition {
            out.push(("+", t));
        }
        if let Some(t) = &self.multiplication {
            out.push(("*", t));
        }
        out
    }
}

impl Render for FieldReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    /// One block per operation: header row of elements, then one row per
    /// left operand. Blocks are separated by an empty record.
    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![vec!["field".to_string(), self.field.clone()]];
        for (op, t) in self.tables() {
            rows.push(vec![String::new()]);
            let mut header = vec![op.to_string()];
            header.extend(self.elements.iter().cloned());
            rows.push(header);
            for (a, row) in self.elements.iter().zip(t) {
                let mut r = vec![a.clone()];
                r.extend(row.iter().cloned());
                rows.push(r);
            }
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!("{}  (q = {})\nmodulus: {}\nelements: {}\n", self.field, self.q, self.modulus, self.elements.join(" "));
        if self.addition.is_none() {
            s.push_str(&format!("tables omitted for q > {TABLE_LIMIT}\n"));
        }
        let width = self.elements.iter().map(String::len).max().unwrap_or(1);
        for (op, t) in self.tables() {
            s.push('\n');
            s.push_str(&format!("{op:>width$} |"));
            for e in &self.elements {
                s.push_str(&format!(" {e:>width$}"));
            }
            s.push('\n');
            s.push_str(&"-".repeat((width + 1) * (self.elements.len() + 1) + 1));
            s.push('\n');
            for (a, row) in self.elements.iter().zip(t) {
                s.push_str(&format!("{a:>width$} |"));
                for v in row {
                    s.push_str(&format!(" {v:>width$}"));
                }
                s.push('\n');
            }
        }
        s
    }
}
