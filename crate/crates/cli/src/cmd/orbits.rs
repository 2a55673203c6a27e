use galqm::labels;
use galqm::tensor::{local_orbits, local_orbits_exhaustive};
use serde::Serialize;

use super::{build_field, guard_enumeration, require_qubit_pairs};
use crate::error::{CliError, CliResult};
use crate::output::{joined, ket, to_csv, to_json, Render, SCHEMA};
use crate::Global;

/// Closure over all of GL(2,q) x GL(2,q) is refused above this order.
const MAX_EXHAUSTIVE_ORDER: u32 = 4;

#[derive(Debug, Serialize)]
struct MemberDoc {
    coords: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'static str>,
}

#[derive(Debug, Serialize)]
struct OrbitDoc {
    size: usize,
    product: bool,
    members: Vec<MemberDoc>,
}

#[derive(Debug, Serialize)]
pub struct OrbitsReport {
    schema: &'static str,
    command: &'static str,
    field: String,
    method: &'static str,
    orbit_count: usize,
    orbits: Vec<OrbitDoc>,
}

pub fn orbits(g: &Global, exhaustive: bool) -> CliResult<OrbitsReport> {
    let field = build_field(g)?;
    require_qubit_pairs(g, "orbits")?;
    guard_enumeration(g, &field, 4)?;
    if exhaustive && field.order() > MAX_EXHAUSTIVE_ORDER && !g.force {
        return Err(CliError::ScaleGuard(format!(
            "exhaustive closure over GF({}) exceeds the default limit q <= {MAX_EXHAUSTIVE_ORDER}",
            field.order()
        )));
    }
    let orbits = if exhaustive {
        local_orbits_exhaustive(&field)
    } else {
        local_orbits(&field)
    };
    let orbits: Vec<OrbitDoc> = orbits
        .iter()
        .map(|o| OrbitDoc {
            size: o.len(),
            product: o.product,
            members: o
                .members
                .iter()
                .map(|s| MemberDoc {
                    coords: ket(s.ket()),
                    name: labels::entangled_name(s),
                })
                .collect(),
        })
        .collect();
    Ok(OrbitsReport {
        schema: SCHEMA,
        command: "orbits",
        field: field.descriptor(),
        method: if exhaustive { "exhaustive" } else { "generators" },
        orbit_count: orbits.len(),
        orbits,
    })
}

impl Render for OrbitsReport {
    fn json(&self) -> CliResult<String> {
        to_json(self)
    }

    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["orbit", "size", "product", "state", "name"]
            .map(String::from)
            .to_vec()];
        for (k, o) in self.orbits.iter().enumerate() {
            for m in &o.members {
                rows.push(vec![
                    k.to_string(),
                    o.size.to_string(),
                    o.product.to_string(),
                    joined(&m.coords),
                    m.name.unwrap_or_default().to_string(),
                ]);
            }
        }
        to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut s = format!("{}  {} orbits ({})\n", self.field, self.orbit_count, self.method);
        for (k, o) in self.orbits.iter().enumerate() {
            let kind = if o.product { "product" } else { "entangled" };
            s.push_str(&format!("orbit {k}: {} {kind} states\n", o.size));
            for m in &o.members {
                s.push_str(&format!("  [{}]", m.coords.join(",")));
                if let Some(n) = m.name {
                    s.push_str(&format!("  {n}"));
                }
                s.push('\n');
            }
        }
        s
    }
}
