//! Observables as ordered bases of V* with outcome values, and the
//! probability rule
//!
//! ```text
//! P(x|ψ) = |⟨x|ψ⟩|² / Σ_y |⟨y|ψ⟩|²
//! ```
//!
//! where `|k|` is 0 for `k = 0` and 1 otherwise. Since `|k|² = |k|`, every
//! outcome with a nonzero bracket is equally likely.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg;
use crate::state::{bracket, projective_points, Bra, Ket};
use crate::Rational;

/// Outcome value assigned to the first vector of a spin-like observable.
pub const SPIN_UP: i64 = 1;
/// Outcome value assigned to the second vector.
pub const SPIN_DOWN: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Observable {
    outcomes: Vec<Bra>,
    values: Vec<Rational>,
    name: Option<String>,
}

impl Observable {
    /// An observable with the given outcome vectors and values. The outcome
    /// vectors must form a basis of V*.
    pub fn new(outcomes: Vec<Bra>, values: Vec<Rational>) -> Result<Observable> {
        let dim = outcomes.first().map(Bra::dim).ok_or(Error::NotABasis)?;
        if outcomes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: outcomes.len(),
            });
        }
        if values.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: values.len(),
            });
        }
        if !is_basis(&outcomes)? {
            return Err(Error::NotABasis);
        }
        Ok(Observable {
            outcomes,
            values,
            name: None,
        })
    }

    /// Skips the basis check; callers guarantee independence.
    pub(crate) fn from_basis_unchecked(outcomes: Vec<Bra>, values: Vec<Rational>) -> Observable {
        debug_assert_eq!(outcomes.len(), values.len());
        Observable {
            outcomes,
            values,
            name: None,
        }
    }

    /// The spin-like observable A_rs = {⟨r|, ⟨s|} with values (+1, -1).
    pub fn spin(r: &Bra, s: &Bra) -> Result<Observable> {
        if r.dim() != 2 || s.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: if r.dim() != 2 { r.dim() } else { s.dim() },
            });
        }
        let (r, s) = (r.nonzero()?, s.nonzero()?);
        if r.same_ray(&s)? {
            return Err(Error::IdenticalOutcomes);
        }
        Observable::new(
            vec![r, s],
            vec![Rational::from(SPIN_UP), Rational::from(SPIN_DOWN)],
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn outcomes(&self) -> &[Bra] {
        &self.outcomes
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.outcomes.len()
    }

    pub fn field(&self) -> &Field {
        self.outcomes[0].field()
    }

    pub fn is_spin_like(&self) -> bool {
        self.dim() == 2
            && self.values[0] == Rational::from(SPIN_UP)
            && self.values[1] == Rational::from(SPIN_DOWN)
    }

    /// For spin-like observables, A_sr = -A_rs: the outcome vectors swap and
    /// the values stay attached to positions. Otherwise values are negated.
    pub fn negated(&self) -> Observable {
        let name = self.name.as_ref().map(|n| match n.strip_prefix('-') {
            Some(stripped) => stripped.to_string(),
            None => format!("-{n}"),
        });
        if self.is_spin_like() {
            Observable {
                outcomes: vec![self.outcomes[1].clone(), self.outcomes[0].clone()],
                values: self.values.clone(),
                name,
            }
        } else {
            Observable {
                outcomes: self.outcomes.clone(),
                values: self.values.iter().map(|v| -v).collect(),
                name,
            }
        }
    }

    /// Display label: the name if set, otherwise the outcome vectors.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => {
                let parts: Vec<String> = self.outcomes.iter().map(|b| b.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    /// 0/1 indicators |⟨x|ψ⟩| for each outcome vector.
    pub fn bracket_support(&self, psi: &Ket) -> Result<Vec<u8>> {
        let psi = psi.nonzero()?;
        self.outcomes
            .iter()
            .map(|x| bracket(x, &psi).map(|b| b.abs_val()))
            .collect()
    }

    pub fn outcome_probabilities(&self, psi: &Ket) -> Result<OutcomeDistribution> {
        let support = self.bracket_support(psi)?;
        let nonzero: i64 = support.iter().map(|&s| i64::from(s)).sum();
        if nonzero == 0 {
            // Only possible if the outcomes fail to span V*.
            return Err(Error::Invariant("all brackets vanish on a nonzero state".into()));
        }
        let probs = support
            .iter()
            .map(|&s| Rational::new(i64::from(s), nonzero))
            .collect();
        Ok(OutcomeDistribution { probs })
    }

    pub fn expectation(&self, psi: &Ket) -> Result<Rational> {
        Ok(self.outcome_probabilities(psi)?.expectation(&self.values))
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeDistribution {
    probs: Vec<Rational>,
}

impl OutcomeDistribution {
    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn expectation(&self, values: &[Rational]) -> Rational {
        self.probs
            .iter()
            .zip(values)
            .fold(Rational::zero(), |acc, (p, v)| acc + p * v)
    }

    pub fn is_normalized(&self) -> bool {
        self.probs.iter().fold(Rational::zero(), |a, p| a + p) == Rational::one()
    }
}

/// Label of an observable measured by party 1 or 2: `X1` for single-letter
/// names, `(A0_1)2` otherwise.
pub fn party_label(obs: &Observable, party: u8) -> String {
    let label = obs.label();
    if label.chars().count() == 1 {
        format!("{label}{party}")
    } else {
        format!("({label}){party}")
    }
}

/// True iff the bras are linearly independent and span V*.
pub fn is_basis(bras: &[Bra]) -> Result<bool> {
    let Some(first) = bras.first() else {
        return Ok(false);
    };
    let dim = first.dim();
    for b in bras {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
    }
    let rows: Vec<_> = bras.iter().map(|b| b.coords().to_vec()).collect();
    Ok(bras.len() == dim && linalg::rank(first.field(), &rows)? == dim)
}

/// Every spin-like observable on K^2: one per ordered pair of distinct dual
/// projective points, ordered by (first point, second point). There are
/// (q+1)q of them.
pub fn all_spin_observables(field: &Field) -> Vec<Observable> {
    spin_observables(field, |i, j| i != j)
}

/// One representative per spin up to sign: pairs `(i, j)` with `i < j`.
pub fn unsigned_spin_observables(field: &Field) -> Vec<Observable> {
    spin_observables(field, |i, j| i < j)
}

fn spin_observables(field: &Field, keep: impl Fn(usize, usize) -> bool) -> Vec<Observable> {
    let points: Vec<Bra> = projective_points(field, 2);
    let mut out = Vec::new();
    for (i, r) in points.iter().enumerate() {
        for (j, s) in points.iter().enumerate() {
            if keep(i, j) {
                out.push(
                    Observable::spin(r, s)
                        .expect("distinct projective points form a basis")
                        .with_name(format!("A{i}_{j}")),
                );
            }
        }
    }
    out
}
