use std::collections::HashMap;
use std::path::PathBuf;

use clap::Args;
use galqm::hv::{enumerate_strategies, hv_feasible, Certificate, HvInstance, HvVerdict, MAX_OBSERVABLES};
use galqm::tensor::JOINT_OUTCOMES;
use galqm::{JointTable, Rational};
use serde::{Deserialize, Serialize};

use super::{build_field, guard_enumeration, require_qubit_pairs, resolve_state, spin_menu};
use crate::cmd::table::StateInfo;
use crate::error::{CliError, CliResult};
use crate::output::{strs, to_csv, to_json, Render, SCHEMA};
use crate::Global;

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct HvSource {
    /// Named entangled state over GF(2): S, ab, bc, ca, abc, acb.
    #[arg(long)]
    state: Option<String>,
    /// Comma-separated coordinates of the two-party state.
    #[arg(long, allow_hyphen_values = true)]
    coords: Option<String>,
    /// Every table uniform (1/4 in each cell).
    #[arg(long)]
    uniform: bool,
    /// Instance file: menus plus tables with rational strings.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HvArgs {
    #[command(flatten)]
    source: HvSource,
    /// Print the instance in file format instead of deciding it.
    #[arg(long)]
    emit_instance: bool,
}

/// On-disk instance format, also produced by `--emit-instance`.
#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    menu1: Vec<String>,
    menu2: Vec<String>,
    tables: Vec<TableDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableDoc {
    first: String,
    second: String,
    /// Probabilities of `++, +-, -+, --`.
    probs: [String; 4],
}

impl InstanceDoc {
    fn from_instance(inst: &HvInstance) -> InstanceDoc {
        let mut tables = Vec::new();
        for (i, a) in inst.menu1().iter().enumerate() {
            for (j, b) in inst.menu2().iter().enumerate() {
                tables.push(TableDoc {
                    first: a.clone(),
                    second: b.clone(),
                    probs: inst.table(i, j).probs.map(|r| r.to_string()),
                });
            }
        }
        InstanceDoc {
            schema: Some(SCHEMA.to_string()),
            menu1: inst.menu1().to_vec(),
            menu2: inst.menu2().to_vec(),
            tables,
        }
    }

    fn into_instance(self) -> CliResult<HvInstance> {
        if let Some(s) = &self.schema {
            if s != SCHEMA {
                return Err(CliError::Validation(format!("unsupported schema '{s}'")));
            }
        }
        check_menu_size(self.menu1.len() + self.menu2.len())?;
        let mut by_pair: HashMap<(String, String), JointTable> = HashMap::new();
        for t in self.tables {
            let mut probs = [Rational::new(0, 1); 4];
            for (slot, s) in probs.iter_mut().zip(&t.probs) {
                *slot = s.trim().parse().map_err(|_| {
                    CliError::Validation(format!("bad probability '{s}' in table ({}, {})", t.first, t.second))
                })?;
            }
            let key = (t.first.clone(), t.second.clone());
            if by_pair.insert(key, JointTable::new(probs)).is_some() {
                return Err(CliError::Validation(format!(
                    "duplicate table ({}, {})",
                    t.first, t.second
                )));
            }
        }
        let expected = self.menu1.len() * self.menu2.len();
        if by_pair.len() != expected {
            return Err(CliError::Validation(format!(
                "expected {expected} tables, found {}",
                by_pair.len()
            )));
        }
        let mut tables = Vec::with_capacity(expected);
        for a in &self.menu1 {
            for b in &self.menu2 {
                let t = by_pair.remove(&(a.clone(), b.clone())).ok_or_else(|| {
                    CliError::Validation(format!("missing table ({a}, {b})"))
                })?;
                tables.push(t);
            }
        }
        Ok(HvInstance::new(self.menu1, self.menu2, tables)?)
    }
}

impl Render for InstanceDoc {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["first", "second", "++", "+-", "-+", "--"]
            .map(String::from)
            .to_vec()];
        for t in &self.tables {
            let mut r = vec![t.first.clone(), t.second.clone()];
            r.extend(t.probs.iter().cloned());
            rows.push(r);
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!(
            "menu1: {}\nmenu2: {}\n",
            self.menu1.join(" "),
            self.menu2.join(" ")
        );
        for t in &self.tables {
            s.push_str(&format!("{} {}: {}\n", t.first, t.second, t.probs.join(" ")));
        }
        s
    }
}

fn check_menu_size(total: usize) -> CliResult<()> {
    if total > MAX_OBSERVABLES {
        Err(CliError::Limit(format!(
            "{total} observables exceed the limit of {MAX_OBSERVABLES} (2^{total} strategies)"
        )))
    } else {
        Ok(())
    }
}

#[derive(Debug, Serialize)]
struct CellDoc {
    first: String,
    second: String,
    outcome: &'static str,
    description: String,
}

#[derive(Debug, Serialize)]
struct ZeroCellDoc {
    cells: Vec<CellDoc>,
    /// Index into `cells` of the cell that rules out each strategy, in
    /// strategy enumeration order.
    eliminated_by: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct WeightDoc {
    strategy: String,
    weight: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateDoc {
    Mixture {
        weights: Vec<WeightDoc>,
    },
    Infeasible {
        zero_cells: Option<ZeroCellDoc>,
        farkas: Vec<String>,
    },
}

#[derive(Debug, Serialize)]
pub struct HvReport {
    schema: &'static str,
    command: &'static str,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<StateInfo>,
    menu1: Vec<String>,
    menu2: Vec<String>,
    feasible: bool,
    strategies: usize,
    zero_cell_survivors: usize,
    certificate: CertificateDoc,
}

fn certificate_doc(inst: &HvInstance, verdict: &HvVerdict) -> CertificateDoc {
    match &verdict.certificate {
        Certificate::Mixture(weights) => CertificateDoc::Mixture {
            weights: weights
                .iter()
                .map(|(s, w)| WeightDoc {
                    strategy: s.label(),
                    weight: w.to_string(),
                })
                .collect(),
        },
        Certificate::Infeasible { zero_cells, farkas } => CertificateDoc::Infeasible {
            zero_cells: zero_cells.as_ref().map(|z| ZeroCellDoc {
                cells: z
                    .cells
                    .iter()
                    .map(|c| CellDoc {
                        first: inst.menu1()[c.first].clone(),
                        second: inst.menu2()[c.second].clone(),
                        outcome: JOINT_OUTCOMES[c.outcome],
                        description: c.describe(inst),
                    })
                    .collect(),
                eliminated_by: z.eliminated_by.clone(),
            }),
            farkas: strs(farkas),
        },
    }
}

pub fn hv(g: &Global, args: &HvArgs) -> CliResult<Box<dyn Render>> {
    let src = &args.source;
    let mut field_name = None;
    let mut state_info = None;
    let (inst, source) = if let Some(path) = &src.instance {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read {}: {e}", path.display()))
        })?;
        let doc: InstanceDoc = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("malformed instance: {e}")))?;
        (doc.into_instance()?, format!("instance {}", path.display()))
    } else {
        let field = build_field(g)?;
        let menu = spin_menu(&field);
        check_menu_size(2 * menu.len())?;
        field_name = Some(field.descriptor());
        if src.uniform {
            let names = |party: u8| {
                menu.iter()
                    .map(|o| galqm::observable::party_label(o, party))
                    .collect::<Vec<_>>()
            };
            (HvInstance::uniform(names(1), names(2))?, "uniform".to_string())
        } else {
            require_qubit_pairs(g, "hv")?;
            guard_enumeration(g, &field, 4)?;
            let chosen = resolve_state(g, &field, src.state.as_deref(), src.coords.as_deref())?;
            let inst = HvInstance::from_state(&chosen.state, &menu, &menu)?;
            let info = StateInfo::new(&chosen.state, chosen.name);
            let source = format!("state {}", info.describe());
            state_info = Some(info);
            (inst, source)
        }
    };
    if args.emit_instance {
        return Ok(Box::new(InstanceDoc::from_instance(&inst)));
    }
    let verdict = hv_feasible(&inst)?;
    if !verdict.verify(&inst) {
        return Err(CliError::Invariant("hidden-variable certificate failed re-verification".into()));
    }
    debug_assert_eq!(
        verdict.strategies,
        enumerate_strategies(inst.menu1().len(), inst.menu2().len()).len()
    );
    Ok(Box::new(HvReport {
        schema: SCHEMA,
        command: "hv",
        source,
        field: field_name,
        state: state_info,
        menu1: inst.menu1().to_vec(),
        menu2: inst.menu2().to_vec(),
        feasible: verdict.feasible,
        strategies: verdict.strategies,
        zero_cell_survivors: verdict.zero_cell_survivors,
        certificate: certificate_doc(&inst, &verdict),
    }))
}

impl Render for HvReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    /// Mixture weights, or the zero cells and Farkas multipliers.
    fn csv(&self) -> CliResult<String> {
        let mut rows = Vec::new();
        match &self.certificate {
            CertificateDoc::Mixture { weights } => {
                rows.push(vec!["strategy".to_string(), "weight".into()]);
                for w in weights {
                    rows.push(vec![w.strategy.clone(), w.weight.clone()]);
                }
            }
            CertificateDoc::Infeasible { zero_cells, farkas } => {
                rows.push(["kind", "first", "second", "outcome", "value"].map(String::from).to_vec());
                for c in zero_cells.iter().flat_map(|z| &z.cells) {
                    rows.push(vec![
                        "zero_cell".into(),
                        c.first.clone(),
                        c.second.clone(),
                        c.outcome.into(),
                        "0".into(),
                    ]);
                }
                for (i, y) in farkas.iter().enumerate() {
                    rows.push(vec![
                        "farkas".into(),
                        i.to_string(),
                        String::new(),
                        String::new(),
                        y.clone(),
                    ]);
                }
            }
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!("source: {}\n", self.source);
        if let Some(f) = &self.field {
            s.push_str(&format!("field: {f}\n"));
        }
        s.push_str(&format!(
            "menus: {} | {}\n{} deterministic strategies, {} survive the zero-cell filter\n",
            self.menu1.join(" "),
            self.menu2.join(" "),
            self.strategies,
            self.zero_cell_survivors
        ));
        match &self.certificate {
            CertificateDoc::Mixture { weights } => {
                s.push_str("local hidden-variable model: yes\nmixture:\n");
                for w in weights {
                    s.push_str(&format!("  {}  {}\n", w.strategy, w.weight));
                }
            }
            CertificateDoc::Infeasible { zero_cells, farkas } => {
                s.push_str("local hidden-variable model: no\n");
                match zero_cells {
                    Some(z) => {
                        s.push_str("zero cells excluding every strategy:\n");
                        for c in &z.cells {
                            s.push_str(&format!("  {}\n", c.description));
                        }
                    }
                    None => s.push_str("zero cells alone do not exclude every strategy\n"),
                }
                s.push_str(&format!("farkas multipliers: {}\n", farkas.join(" ")));
            }
        }
        s
    }
}
