use clap::Args;
use galqm::tensor::joint_table;
use serde::Serialize;

use super::{build_field, guard_enumeration, pair_label, require_qubit_pairs, resolve_state, spin_menu, table_order};
use crate::error::CliResult;
use crate::output::{joined, ket, to_csv, to_json, Render, SCHEMA};
use crate::Global;

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateArgs {
    /// Named entangled state over GF(2): S, ab, bc, ca, abc, acb.
    #[arg(long)]
    pub state: Option<String>,
    /// Comma-separated coordinates of the two-party state, e.g. 1,0,0,0.
    #[arg(long, allow_hyphen_values = true)]
    pub coords: Option<String>,
}

#[derive(Debug, Serialize)]
pub(crate) struct StateInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub coords: Vec<String>,
    pub product: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<[Vec<String>; 2]>,
}

impl StateInfo {
    pub fn new(state: &galqm::TwoPartyState, name: Option<String>) -> StateInfo {
        StateInfo {
            name,
            coords: ket(state.ket()),
            product: state.is_product(),
            factors: state.factors().map(|(u, v)| [ket(&u), ket(&v)]),
        }
    }

    pub fn describe(&self) -> String {
        let coords = format!("[{}]", self.coords.join(","));
        match &self.name {
            Some(n) => format!("{n} = {coords}"),
            None => coords,
        }
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    observable: String,
    first: String,
    second: String,
    #[serde(rename = "++")]
    pp: String,
    #[serde(rename = "+-")]
    pm: String,
    #[serde(rename = "-+")]
    mp: String,
    #[serde(rename = "--")]
    mm: String,
    ev: String,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    schema: &'static str,
    command: &'static str,
    field: String,
    state: StateInfo,
    tables: Vec<TableRow>,
}

pub fn table(g: &Global, args: &StateArgs) -> CliResult<TableReport> {
    let field = build_field(g)?;
    require_qubit_pairs(g, "table")?;
    guard_enumeration(g, &field, 4)?;
    let chosen = resolve_state(g, &field, args.state.as_deref(), args.coords.as_deref())?;
    let menu = spin_menu(&field);
    let mut tables = Vec::new();
    for (i, j) in table_order(&field, menu.len()) {
        let (a, b) = (&menu[i], &menu[j]);
        let t = joint_table(&chosen.state, a, b)?;
        let [pp, pm, mp, mm] = t.probs.map(|r| r.to_string());
        tables.push(TableRow {
            observable: pair_label(a, b),
            first: a.label(),
            second: b.label(),
            pp,
            pm,
            mp,
            mm,
            ev: t.expectation().to_string(),
        });
    }
    Ok(TableReport {
        schema: SCHEMA,
        command: "table",
        field: field.descriptor(),
        state: StateInfo::new(&chosen.state, chosen.name),
        tables,
    })
}

impl Render for TableReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["observable", "++", "+-", "-+", "--", "ev"]
            .map(String::from)
            .to_vec()];
        for t in &self.tables {
            rows.push(vec![
                t.observable.clone(),
                t.pp.clone(),
                t.pm.clone(),
                t.mp.clone(),
                t.mm.clone(),
                t.ev.clone(),
            ]);
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!("{}  state {}", self.field, self.state.describe());
        match &self.state.factors {
            Some([u, v]) => s.push_str(&format!(
                "  product of {} and {}\n",
                joined(u),
                joined(v)
            )),
            None => s.push_str("  entangled\n"),
        }
        let w = self
            .tables
            .iter()
            .map(|t| t.observable.len())
            .max()
            .unwrap_or(0)
            .max("observable".len());
        s.push_str(&format!(
            "{:<w$}  {:>5} {:>5} {:>5} {:>5} {:>5}\n",
            "observable", "++", "+-", "-+", "--", "ev"
        ));
        for t in &self.tables {
            s.push_str(&format!(
                "{:<w$}  {:>5} {:>5} {:>5} {:>5} {:>5}\n",
                t.observable, t.pp, t.pm, t.mp, t.mm, t.ev
            ));
        }
        s
    }
}
