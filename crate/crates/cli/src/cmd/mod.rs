//! Subcommand implementations. Each returns a report that renders to every
//! output format; nothing is printed here.

mod chsh;
mod field;
mod hv;
mod orbits;
mod states;
mod table;

pub use chsh::{chsh, ChshArgs};
pub use field::field;
pub use hv::{hv, HvArgs};
pub use orbits::orbits;
pub use states::states;
pub use table::{table, StateArgs};

use galqm::observable::{party_label, unsigned_spin_observables};
use galqm::{labels, Field, Ket, Observable, TwoPartyState};

use crate::error::{CliError, CliResult};
use crate::Global;

/// Largest enumeration (q^k) attempted without `--force`.
const ENUMERATION_LIMIT: u128 = 1 << 16;

pub(crate) fn build_field(g: &Global) -> CliResult<Field> {
    if g.dim == 0 {
        return Err(CliError::Validation("--N must be at least 1".into()));
    }
    Ok(Field::new(g.p, g.n)?)
}

/// Refuses to enumerate q^exp vectors past the limit unless forced.
pub(crate) fn guard_enumeration(g: &Global, field: &Field, exp: usize) -> CliResult<()> {
    let size = u32::try_from(exp)
        .ok()
        .and_then(|e| u128::from(field.order()).checked_pow(e));
    match size {
        Some(s) if s <= ENUMERATION_LIMIT => Ok(()),
        _ if g.force => Ok(()),
        _ => Err(CliError::ScaleGuard(format!(
            "enumerating {}^{exp} vectors exceeds the limit of {ENUMERATION_LIMIT}",
            field.order()
        ))),
    }
}

pub(crate) fn require_qubit_pairs(g: &Global, what: &str) -> CliResult<()> {
    if g.dim == 2 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{what} requires --N 2")))
    }
}

fn is_gf2(field: &Field) -> bool {
    field.order() == 2
}

/// Spin observables measured by each party: X, Y, Z over GF(2), one
/// representative per spin otherwise.
pub(crate) fn spin_menu(field: &Field) -> Vec<Observable> {
    if is_gf2(field) {
        labels::xyz().to_vec()
    } else {
        unsigned_spin_observables(field)
    }
}

/// Pairs of menu indices in report order. Over GF(2) this follows the
/// familiar grouping XX, YY, ZZ, XY, YZ, ZX, XZ, ZY, YX.
pub(crate) fn table_order(field: &Field, m: usize) -> Vec<(usize, usize)> {
    if is_gf2(field) && m == 3 {
        vec![(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0)]
    } else {
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
    }
}

pub(crate) fn pair_label(a: &Observable, b: &Observable) -> String {
    format!("{}{}", party_label(a, 1), party_label(b, 2))
}

/// Display label of a spin observable, using X, Y, Z (and negations) over
/// GF(2).
pub(crate) fn spin_label(obs: &Observable) -> String {
    if is_gf2(obs.field()) {
        for base in labels::xyz() {
            for cand in [base.clone(), base.negated()] {
                if cand.outcomes() == obs.outcomes() {
                    return cand.label();
                }
            }
        }
    }
    obs.label()
}

/// A two-party state chosen by alias (`S`, `ab`, ... over GF(2)) or by
/// coordinates.
pub(crate) struct ChosenState {
    pub state: TwoPartyState,
    pub name: Option<String>,
}

pub(crate) fn resolve_state(
    g: &Global,
    field: &Field,
    name: Option<&str>,
    coords: Option<&str>,
) -> CliResult<ChosenState> {
    match (name, coords) {
        (Some(name), None) => {
            if g.p != 2 || g.n != 1 || g.dim != 2 {
                return Err(CliError::Validation(format!(
                    "state alias '{name}' is only defined for --p 2 --n 1 --N 2"
                )));
            }
            let state = labels::entangled_state(name)?;
            Ok(ChosenState {
                state,
                name: Some(name.to_string()),
            })
        }
        (None, Some(coords)) => {
            let ket = Ket::parse(field, coords)?;
            if ket.dim() != g.dim * g.dim {
                return Err(CliError::Validation(format!(
                    "expected {} coordinates, found {}",
                    g.dim * g.dim,
                    ket.dim()
                )));
            }
            let state = TwoPartyState::new(ket, g.dim)?;
            let name = labels::entangled_name(&state).map(str::to_string);
            Ok(ChosenState { state, name })
        }
        _ => Err(CliError::Validation(
            "give exactly one of --state or --coords".into(),
        )),
    }
}
