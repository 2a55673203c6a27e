//! The CHSH combination `⟨A,A';B,B'⟩ = ⟨AB⟩ + ⟨AB'⟩ + ⟨A'B⟩ - ⟨A'B'⟩` and
//! exhaustive sweeps of its absolute value over states and spin observables.
//!
//! Sweeps work on correlation matrices: for every state, the expectation of
//! every product of two spin observables is tabulated once, scaled by a
//! common denominator to an integer, and then every ordered quad is
//! evaluated with integer arithmetic. Results are assembled in state order,
//! so the output does not depend on how the work is split across threads.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::observable::{all_spin_observables, unsigned_spin_observables, Observable};
use crate::state::{bracket, projective_points, Bra};
use crate::tensor::{self, joint_table, tensor_bra, TwoPartyState};
use crate::Rational;

/// Expectation values have denominators in {1, 2, 3, 4}.
const SCALE: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChshQuad {
    /// `A`, first setting of particle 1.
    pub a: Observable,
    /// `A'` (written `a` in the correlator), second setting of particle 1.
    pub a_alt: Observable,
    /// `B`, first setting of particle 2.
    pub b: Observable,
    /// `B'` (written `b`), second setting of particle 2.
    pub b_alt: Observable,
}

impl ChshQuad {
    pub fn new(a: &Observable, a_alt: &Observable, b: &Observable, b_alt: &Observable) -> ChshQuad {
        ChshQuad {
            a: a.clone(),
            a_alt: a_alt.clone(),
            b: b.clone(),
            b_alt: b_alt.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [&self.a, &self.a_alt, &self.b, &self.b_alt];
        if all.iter().any(|o| !o.is_spin_like()) {
            return Err(Error::NotSpinLike);
        }
        if all.iter().any(|o| o.field() != self.a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn labels(&self) -> [String; 4] {
        [
            self.a.label(),
            self.a_alt.label(),
            self.b.label(),
            self.b_alt.label(),
        ]
    }
}

pub fn chsh_correlator(state: &TwoPartyState, quad: &ChshQuad) -> Result<Rational> {
    quad.validate()?;
    let ev = |x: &Observable, y: &Observable| joint_table(state, x, y).map(|t| t.expectation());
    Ok(ev(&quad.a, &quad.b)? + ev(&quad.a, &quad.b_alt)? + ev(&quad.a_alt, &quad.b)?
        - ev(&quad.a_alt, &quad.b_alt)?)
}

/// Evaluates the five equivalent forms
///
/// ```text
/// ⟨A,a;B,b⟩ = ⟨A,-a;b,B⟩ = -⟨-A,a;b,B⟩ = ⟨a,A;B,-b⟩ = -⟨a,A;-B,b⟩
/// ```
///
/// directly and reports whether they agree.
pub fn verify_symmetry_identities(state: &TwoPartyState, quad: &ChshQuad) -> Result<bool> {
    let ChshQuad { a, a_alt, b, b_alt } = quad;
    let base = chsh_correlator(state, quad)?;
    let forms = [
        chsh_correlator(state, &ChshQuad::new(a, &a_alt.negated(), b_alt, b))?,
        -chsh_correlator(state, &ChshQuad::new(&a.negated(), a_alt, b_alt, b))?,
        chsh_correlator(state, &ChshQuad::new(a_alt, a, b, &b_alt.negated()))?,
        -chsh_correlator(state, &ChshQuad::new(a_alt, a, &b.negated(), b_alt))?,
    ];
    Ok(forms.iter().all(|f| *f == base))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateSelection {
    /// Every projective two-party state.
    All,
    /// Entangled projective two-party states only.
    Entangled,
    /// The single state `e_1⊗e_2 + e_2⊗e_1`.
    Singlet,
}

impl StateSelection {
    pub fn name(self) -> &'static str {
        match self {
            StateSelection::All => "all",
            StateSelection::Entangled => "entangled",
            StateSelection::Singlet => "singlet",
        }
    }

    pub fn states(self, field: &Field) -> Vec<TwoPartyState> {
        match self {
            StateSelection::All => tensor::two_party_points(field, 2),
            StateSelection::Entangled => tensor::entangled_points(field, 2),
            StateSelection::Singlet => vec![tensor::singlet(field)],
        }
    }
}

impl std::str::FromStr for StateSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(StateSelection::All),
            "entangled" => Ok(StateSelection::Entangled),
            "singlet" => Ok(StateSelection::Singlet),
            _ => Err(Error::Parse(format!("unknown sweep mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservableSet {
    /// Every ordered pair of distinct dual points, i.e. both signs of each spin.
    Signed,
    /// One representative per spin.
    Unsigned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub states: StateSelection,
    pub observables: ObservableSet,
    /// Maximum number of witnesses kept; all are still counted.
    pub witness_limit: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            states: StateSelection::All,
            observables: ObservableSet::Signed,
            witness_limit: 64,
        }
    }
}

/// A (state, quad) pair attaining the sweep maximum. `quad` indexes
/// [`SweepResult::observables`] as `(A, A', B, B')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub state: TwoPartyState,
    pub quad: [usize; 4],
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub max_abs: Rational,
    pub witness_count: u64,
    pub witnesses: Vec<Witness>,
    pub states_swept: u64,
    pub quads_swept: u64,
    pub observables: Vec<Observable>,
}

impl SweepResult {
    pub fn quad(&self, w: &Witness) -> ChshQuad {
        let o = &self.observables;
        ChshQuad::new(&o[w.quad[0]], &o[w.quad[1]], &o[w.quad[2]], &o[w.quad[3]])
    }
}

/// Index pair of dual projective points `(r, s)` for each observable.
fn dual_pairs(points: &[Bra], observables: &[Observable]) -> Vec<(usize, usize)> {
    let find = |x: &Bra| {
        let c = x.canonicalize().expect("outcome vectors are nonzero");
        points.iter().position(|p| *p == c).expect("spin outcomes are projective points")
    };
    observables
        .iter()
        .map(|o| (find(&o.outcomes()[0]), find(&o.outcomes()[1])))
        .collect()
}

/// `SCALE * ⟨A B⟩` for every pair of observables, row-major in `A`.
///
/// Uses the 0/1 supports `|⟨r⊗t|ψ⟩|` of all pairs of dual points, so each
/// product observable costs four table lookups.
pub fn scaled_correlations(
    state: &TwoPartyState,
    points: &[Bra],
    pairs: &[(usize, usize)],
) -> Vec<i64> {
    let k = points.len();
    let mut support = vec![0i64; k * k];
    for (i, r) in points.iter().enumerate() {
        for (j, t) in points.iter().enumerate() {
            let x = tensor_bra(r, t).expect("same field");
            support[i * k + j] = i64::from(bracket(&x, state.ket()).expect("dimensions match").abs_val());
        }
    }
    let n = pairs.len();
    let mut out = vec![0i64; n * n];
    for (ia, &(r, s)) in pairs.iter().enumerate() {
        for (ib, &(t, u)) in pairs.iter().enumerate() {
            let (pp, pm, mp, mm) = (
                support[r * k + t],
                support[r * k + u],
                support[s * k + t],
                support[s * k + u],
            );
            let total = pp + pm + mp + mm;
            out[ia * n + ib] = SCALE * (pp - pm - mp + mm) / total;
        }
    }
    out
}

struct StateScan {
    best: i64,
    count: u64,
    witnesses: Vec<([usize; 4], i64)>,
}

/// Evaluates every ordered quad on one correlation matrix. When `target` is
/// given, counts and records quads with `|value| == target`.
fn scan(corr: &[i64], n: usize, target: Option<i64>, limit: usize) -> StateScan {
    let mut out = StateScan {
        best: 0,
        count: 0,
        witnesses: Vec::new(),
    };
    let mut plus = vec![0i64; n];
    let mut minus = vec![0i64; n];
    for a in 0..n {
        for a_alt in 0..n {
            // value = (E[A][B] + E[A'][B]) + (E[A][B'] - E[A'][B'])
            for j in 0..n {
                plus[j] = corr[a * n + j] + corr[a_alt * n + j];
                minus[j] = corr[a * n + j] - corr[a_alt * n + j];
            }
            for b in 0..n {
                for b_alt in 0..n {
                    let v = plus[b] + minus[b_alt];
                    let abs = v.abs();
                    match target {
                        None => out.best = out.best.max(abs),
                        Some(t) if abs == t => {
                            out.count += 1;
                            if out.witnesses.len() < limit {
                                out.witnesses.push(([a, a_alt, b, b_alt], v));
                            }
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive sweep over two-party states on K^2 ⊗ K^2 and all spin
/// observables, with default options and the given state selection.
pub fn chsh_sweep(field: &Field, states: StateSelection) -> SweepResult {
    chsh_sweep_with(
        field,
        &SweepOptions {
            states,
            ..SweepOptions::default()
        },
    )
}

pub fn chsh_sweep_with(field: &Field, opts: &SweepOptions) -> SweepResult {
    let observables = match opts.observables {
        ObservableSet::Signed => all_spin_observables(field),
        ObservableSet::Unsigned => unsigned_spin_observables(field),
    };
    let points: Vec<Bra> = projective_points(field, 2);
    let pairs = dual_pairs(&points, &observables);
    let n = observables.len();
    let states = opts.states.states(field);

    let corrs: Vec<Vec<i64>> = states
        .par_iter()
        .map(|s| scaled_correlations(s, &points, &pairs))
        .collect();
    let best = corrs
        .par_iter()
        .map(|c| scan(c, n, None, 0).best)
        .max()
        .unwrap_or(0);
    let scans: Vec<StateScan> = corrs
        .par_iter()
        .map(|c| scan(c, n, Some(best), opts.witness_limit))
        .collect();

    let mut witnesses = Vec::new();
    let mut witness_count = 0;
    for (state, sc) in states.iter().zip(scans) {
        witness_count += sc.count;
        for (quad, v) in sc.witnesses {
            if witnesses.len() < opts.witness_limit {
                witnesses.push(Witness {
                    state: state.clone(),
                    quad,
                    value: Rational::new(v, SCALE),
                });
            }
        }
    }
    SweepResult {
        max_abs: Rational::new(best, SCALE),
        witness_count,
        witnesses,
        states_swept: states.len() as u64,
        quads_swept: (n as u64).pow(4),
        observables,
    }
}

/// Maximum of `|⟨A,A';B,B'⟩|` on one state over the given observables,
/// evaluated quad by quad through joint tables.
pub fn max_abs_correlator(state: &TwoPartyState, observables: &[Observable]) -> Result<Rational> {
    let n = observables.len();
    let mut ev = vec![Rational::zero(); n * n];
    for (i, a) in observables.iter().enumerate() {
        for (j, b) in observables.iter().enumerate() {
            ev[i * n + j] = joint_table(state, a, b)?.expectation();
        }
    }
    let mut best = Rational::zero();
    for a in 0..n {
        for a_alt in 0..n {
            for b in 0..n {
                for b_alt in 0..n {
                    let v = ev[a * n + b] + ev[a * n + b_alt] + ev[a_alt * n + b]
                        - ev[a_alt * n + b_alt];
                    best = best.max(v.abs());
                }
            }
        }
    }
    Ok(best)
}
