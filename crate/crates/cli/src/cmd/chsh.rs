use clap::{Args, ValueEnum};
use galqm::chsh::{chsh_sweep_with, ObservableSet, StateSelection, SweepOptions};
use serde::Serialize;

use super::{build_field, guard_enumeration, require_qubit_pairs, spin_label};
use crate::error::{CliError, CliResult};
use crate::output::{joined, ket, to_csv, to_json, Render, SCHEMA};
use crate::Global;

/// Largest field swept without `--force`.
const MAX_SWEEP_ORDER: u32 = 5;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    All,
    Entangled,
    Singlet,
}

#[derive(Debug, Args)]
pub struct ChshArgs {
    /// Which two-party states to sweep.
    #[arg(long, value_enum, default_value_t = Mode::All)]
    mode: Mode,
    /// Use one sign per spin instead of both.
    #[arg(long)]
    unsigned: bool,
    /// Number of witnesses to list (all are counted).
    #[arg(long, default_value_t = 64)]
    witnesses: usize,
}

#[derive(Debug, Serialize)]
struct WitnessRow {
    state: Vec<String>,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "A'")]
    a_alt: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "B'")]
    b_alt: String,
    value: String,
}

#[derive(Debug, Serialize)]
pub struct ChshReport {
    schema: &'static str,
    command: &'static str,
    field: String,
    mode: &'static str,
    observables: &'static str,
    max_abs: String,
    witness_count: u64,
    states_swept: u64,
    #[serde(rename = "quads_per_state")]
    quads_swept: u64,
    witnesses: Vec<WitnessRow>,
}

pub fn chsh(g: &Global, args: &ChshArgs) -> CliResult<ChshReport> {
    let field = build_field(g)?;
    require_qubit_pairs(g, "chsh")?;
    if field.order() > MAX_SWEEP_ORDER && !g.force {
        return Err(CliError::ScaleGuard(format!(
            "CHSH sweep over GF({}) exceeds the default limit q <= {MAX_SWEEP_ORDER}",
            field.order()
        )));
    }
    guard_enumeration(g, &field, 4)?;
    let states = match args.mode {
        Mode::All => StateSelection::All,
        Mode::Entangled => StateSelection::Entangled,
        Mode::Singlet => StateSelection::Singlet,
    };
    let opts = SweepOptions {
        states,
        observables: if args.unsigned {
            ObservableSet::Unsigned
        } else {
            ObservableSet::Signed
        },
        witness_limit: args.witnesses,
    };
    let r = chsh_sweep_with(&field, &opts);
    let witnesses = r
        .witnesses
        .iter()
        .map(|w| {
            let quad = r.quad(w);
            WitnessRow {
                state: ket(w.state.ket()),
                a: spin_label(&quad.a),
                a_alt: spin_label(&quad.a_alt),
                b: spin_label(&quad.b),
                b_alt: spin_label(&quad.b_alt),
                value: w.value.to_string(),
            }
        })
        .collect();
    Ok(ChshReport {
        schema: SCHEMA,
        command: "chsh",
        field: field.descriptor(),
        mode: states.name(),
        observables: if args.unsigned { "unsigned" } else { "signed" },
        max_abs: r.max_abs.to_string(),
        witness_count: r.witness_count,
        states_swept: r.states_swept,
        quads_swept: r.quads_swept,
        witnesses,
    })
}

impl Render for ChshReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    /// Witness rows only; the maximum is the absolute value of any row.
    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["state", "A", "A'", "B", "B'", "value"]
            .map(String::from)
            .to_vec()];
        for w in &self.witnesses {
            rows.push(vec![
                joined(&w.state),
                w.a.clone(),
                w.a_alt.clone(),
                w.b.clone(),
                w.b_alt.clone(),
                w.value.clone(),
            ]);
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{}  mode {}  {} observables\nstates swept: {}  quads per state: {}\nmax |<A,A';B,B'>| = {}  attained {} times\n",
            self.field,
            self.mode,
            self.observables,
            self.states_swept,
            self.quads_swept,
            self.max_abs,
            self.witness_count
        );
        if !self.witnesses.is_empty() {
            s.push_str(&format!("first {} witnesses:\n", self.witnesses.len()));
        }
        for w in &self.witnesses {
            s.push_str(&format!(
                "  [{}]  <{},{};{},{}> = {}\n",
                w.state.join(","),
                w.a,
                w.a_alt,
                w.b,
                w.b_alt,
                w.value
            ));
        }
        s
    }
}
