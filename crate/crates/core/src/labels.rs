//! Named states, outcomes and observables of the two-level system over GF(2).
//!
//! ```text
//! |a⟩ = [1 0]ᵀ   |b⟩ = [0 1]ᵀ   |c⟩ = [1 1]ᵀ
//! ⟨ā| = [0 1]    ⟨b̄| = [1 0]    ⟨c̄| = [1 1]
//! ```
//!
//! so that ⟨r̄|s⟩ = 0 exactly when r = s. The spins are
//! Z = A_ab, X = A_bc, Y = A_ca.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::observable::Observable;
use crate::state::{Bra, Ket};
use crate::tensor::TwoPartyState;

pub const STATE_LABELS: [char; 3] = ['a', 'b', 'c'];

/// Names of the six entangled two-party states with their coordinates.
pub const ENTANGLED_NAMES: [(&str, [i64; 4]); 6] = [
    ("S", [0, 1, 1, 0]),
    ("ab", [1, 0, 0, 1]),
    ("bc", [1, 1, 1, 0]),
    ("ca", [0, 1, 1, 1]),
    ("abc", [1, 1, 0, 1]),
    ("acb", [1, 0, 1, 1]),
];

pub fn gf2() -> Field {
    Field::new(2, 1).expect("GF(2) is valid")
}

fn require_gf2(field: &Field) -> Result<()> {
    if field.order() == 2 {
        Ok(())
    } else {
        Err(Error::Parse("named states exist only over GF(2)".into()))
    }
}

pub fn ket(label: char) -> Result<Ket> {
    let f = gf2();
    match label {
        'a' => Ket::from_ints(&f, &[1, 0]),
        'b' => Ket::from_ints(&f, &[0, 1]),
        'c' => Ket::from_ints(&f, &[1, 1]),
        _ => Err(Error::Parse(format!("unknown state '{label}'"))),
    }
}

/// The outcome ⟨r̄| that annihilates |r⟩.
pub fn bra(label: char) -> Result<Bra> {
    let f = gf2();
    match label {
        'a' => Bra::from_ints(&f, &[0, 1]),
        'b' => Bra::from_ints(&f, &[1, 0]),
        'c' => Bra::from_ints(&f, &[1, 1]),
        _ => Err(Error::Parse(format!("unknown outcome '{label}'"))),
    }
}

/// A_rs = {⟨r̄|, ⟨s̄|}.
pub fn spin(r: char, s: char) -> Result<Observable> {
    Observable::spin(&bra(r)?, &bra(s)?)
}

pub fn z() -> Observable {
    spin('a', 'b').expect("a != b").with_name("Z")
}

pub fn x() -> Observable {
    spin('b', 'c').expect("b != c").with_name("X")
}

pub fn y() -> Observable {
    spin('c', 'a').expect("c != a").with_name("Y")
}

/// Spin observable by name: `X`, `Y`, `Z`, optionally prefixed with `-`.
pub fn spin_by_name(name: &str) -> Result<Observable> {
    let (neg, base) = match name.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, name),
    };
    let obs = match base {
        "X" => x(),
        "Y" => y(),
        "Z" => z(),
        _ => return Err(Error::Parse(format!("unknown observable '{name}'"))),
    };
    Ok(if neg { obs.negated() } else { obs })
}

/// The three spins in the order X, Y, Z.
pub fn xyz() -> [Observable; 3] {
    [x(), y(), z()]
}

pub fn entangled_state(name: &str) -> Result<TwoPartyState> {
    let (_, coords) = ENTANGLED_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown state name '{name}'")))?;
    TwoPartyState::new(Ket::from_ints(&gf2(), coords)?, 2)
}

pub fn singlet() -> TwoPartyState {
    entangled_state("S").expect("S is listed")
}

/// Name of a GF(2) two-party state if it is one of the six entangled ones.
pub fn entangled_name(state: &TwoPartyState) -> Option<&'static str> {
    require_gf2(state.field()).ok()?;
    let idx = state.ket().indices();
    ENTANGLED_NAMES
        .iter()
        .find(|(_, c)| c.iter().zip(&idx).all(|(&a, &b)| a as u32 == b) && idx.len() == 4)
        .map(|(n, _)| *n)
}

/// Label `a`, `b` or `c` of a GF(2) single-particle state.
pub fn state_name(psi: &Ket) -> Option<char> {
    require_gf2(psi.field()).ok()?;
    STATE_LABELS
        .iter()
        .copied()
        .find(|&l| ket(l).map(|k| &k == psi).unwrap_or(false))
}
