use galqm::state::projective_points;
use galqm::tensor::two_party_points;
use galqm::{labels, Ket};
use serde::Serialize;

use super::{build_field, guard_enumeration};
use crate::error::CliResult;
use crate::output::{joined, ket, to_csv, to_json, Render, SCHEMA};
use crate::Global;

#[derive(Debug, Serialize)]
struct StateEntry {
    coords: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct StatesReport {
    schema: &'static str,
    command: &'static str,
    field: String,
    #[serde(rename = "N")]
    dim: usize,
    kind: &'static str,
    /// Nonzero vectors of the enumerated space.
    nonzero_vectors: u128,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    product_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entangled_count: Option<usize>,
    states: Vec<StateEntry>,
}

pub fn states(g: &Global, two_party: bool) -> CliResult<StatesReport> {
    let field = build_field(g)?;
    let space_dim = if two_party { g.dim * g.dim } else { g.dim };
    guard_enumeration(g, &field, space_dim)?;
    let nonzero_vectors = u128::from(field.order()).pow(space_dim as u32) - 1;
    let report = if two_party {
        let states: Vec<StateEntry> = two_party_points(&field, g.dim)
            .iter()
            .map(|s| StateEntry {
                coords: ket(s.ket()),
                product: Some(s.is_product()),
                factors: s.factors().map(|(u, v)| [ket(&u), ket(&v)]),
                name: labels::entangled_name(s).map(str::to_string),
            })
            .collect();
        let product = states.iter().filter(|s| s.product == Some(true)).count();
        StatesReport {
            schema: SCHEMA,
            command: "states",
            field: field.descriptor(),
            dim: g.dim,
            kind: "two_party",
            nonzero_vectors,
            count: states.len(),
            product_count: Some(product),
            entangled_count: Some(states.len() - product),
            states,
        }
    } else {
        let states: Vec<StateEntry> = projective_points::<galqm::state::Column>(&field, g.dim)
            .iter()
            .map(|k: &Ket| StateEntry {
                coords: ket(k),
                product: None,
                factors: None,
                name: labels::state_name(k).map(String::from),
            })
            .collect();
        StatesReport {
            schema: SCHEMA,
            command: "states",
            field: field.descriptor(),
            dim: g.dim,
            kind: "single",
            nonzero_vectors,
            count: states.len(),
            product_count: None,
            entangled_count: None,
            states,
        }
    };
    Ok(report)
}

impl Render for StatesReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![vec![
            "coords".to_string(),
            "product".into(),
            "factor1".into(),
            "factor2".into(),
            "name".into(),
        ]];
        for s in &self.states {
            let (f1, f2) = match &s.factors {
                Some([u, v]) => (joined(u), joined(v)),
                None => (String::new(), String::new()),
            };
            rows.push(vec![
                joined(&s.coords),
                s.product.map(|p| p.to_string()).unwrap_or_default(),
                f1,
                f2,
                s.name.clone().unwrap_or_default(),
            ]);
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{}  N = {}  {} states: {} ({} nonzero vectors)\n",
            self.field, self.dim, self.kind, self.count, self.nonzero_vectors
        );
        if let (Some(p), Some(e)) = (self.product_count, self.entangled_count) {
            s.push_str(&format!("product: {p}  entangled: {e}\n"));
        }
        for st in &self.states {
            s.push_str(&format!("[{}]", st.coords.join(",")));
            match (&st.product, &st.factors) {
                (Some(true), Some([u, v])) => {
                    s.push_str(&format!("  product = [{}] x [{}]", u.join(","), v.join(",")))
                }
                (Some(false), _) => s.push_str("  entangled"),
                _ => {}
            }
            if let Some(n) = &st.name {
                s.push_str(&format!("  {n}"));
            }
            s.push('\n');
        }
        s
    }
}
