//! Local hidden-variable realizability of joint outcome tables.
//!
//! A local hidden-variable model is taken to be a probability mixture of
//! deterministic strategies, each fixing a ±1 outcome for every observable
//! on each side. An instance is realizable iff some mixture reproduces every
//! cell of every table, which is a linear feasibility problem decided here
//! exactly. Zero-probability cells give a faster, incomplete test: any
//! strategy that would land on such a cell can carry no weight.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::observable::{party_label, Observable};
use crate::tensor::{joint_table, JointTable, TwoPartyState, JOINT_OUTCOMES};
use crate::Rational;

/// Strategy-space size guard: more observables than this per instance is
/// refused.
pub const MAX_OBSERVABLES: usize = 16;

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Menus of observable names for the two parties and a joint table for every
/// pair, row-major in the first menu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HvInstance {
    menu1: Vec<String>,
    menu2: Vec<String>,
    tables: Vec<JointTable>,
}

impl HvInstance {
    pub fn new(menu1: Vec<String>, menu2: Vec<String>, tables: Vec<JointTable>) -> Result<Self> {
        if menu1.is_empty() || menu2.is_empty() {
            return Err(Error::MalformedTable("empty menu".into()));
        }
        if menu1.len() + menu2.len() > MAX_OBSERVABLES {
            return Err(Error::Unsupported(format!(
                "{} observables exceed the limit of {MAX_OBSERVABLES}",
                menu1.len() + menu2.len()
            )));
        }
        if tables.len() != menu1.len() * menu2.len() {
            return Err(Error::MalformedTable(format!(
                "expected {} tables, found {}",
                menu1.len() * menu2.len(),
                tables.len()
            )));
        }
        for (k, t) in tables.iter().enumerate() {
            if !t.is_normalized() {
                return Err(Error::MalformedTable(format!(
                    "table ({}, {}) is not a probability distribution",
                    menu1[k / menu2.len()],
                    menu2[k % menu2.len()]
                )));
            }
        }
        Ok(HvInstance {
            menu1,
            menu2,
            tables,
        })
    }

    /// Tables of `state` for every pair of spin observables from the menus.
    /// Menu entries are labelled with their names plus a party suffix.
    pub fn from_state(
        state: &TwoPartyState,
        menu1: &[Observable],
        menu2: &[Observable],
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(menu1.len() * menu2.len());
        for a in menu1 {
            for b in menu2 {
                tables.push(joint_table(state, a, b)?);
            }
        }
        let names = |menu: &[Observable], party: u8| {
            menu.iter().map(|o| party_label(o, party)).collect::<Vec<_>>()
        };
        HvInstance::new(names(menu1, 1), names(menu2, 2), tables)
    }

    /// Every cell equal to 1/4.
    pub fn uniform(menu1: Vec<String>, menu2: Vec<String>) -> Result<Self> {
        let t = JointTable::new([Rational::new(1, 4); 4]);
        let count = menu1.len() * menu2.len();
        HvInstance::new(menu1, menu2, vec![t; count])
    }

    pub fn menu1(&self) -> &[String] {
        &self.menu1
    }

    pub fn menu2(&self) -> &[String] {
        &self.menu2
    }

    pub fn tables(&self) -> &[JointTable] {
        &self.tables
    }

    pub fn table(&self, i: usize, j: usize) -> &JointTable {
        &self.tables[i * self.menu2.len() + j]
    }

    fn cell_prob(&self, cell: CellRef) -> Rational {
        self.table(cell.first, cell.second).probs[cell.outcome]
    }

    fn cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        (0..self.menu1.len()).flat_map(move |i| {
            (0..self.menu2.len())
                .flat_map(move |j| (0..4).map(move |o| CellRef::new(i, j, o)))
        })
    }
}

/// One cell: the outcome (index into `++, +-, -+, --`) of the table for
/// `(menu1[first], menu2[second])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub first: usize,
    pub second: usize,
    pub outcome: usize,
}

impl CellRef {
    pub fn new(first: usize, second: usize, outcome: usize) -> Self {
        CellRef {
            first,
            second,
            outcome,
        }
    }

    pub fn describe(&self, inst: &HvInstance) -> String {
        format!(
            "P({}{} = {}) = 0",
            inst.menu1[self.first], inst.menu2[self.second], JOINT_OUTCOMES[self.outcome]
        )
    }
}

/// A fixed ±1 outcome for every observable on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    pub first: Vec<i8>,
    pub second: Vec<i8>,
}

impl DeterministicStrategy {
    /// Outcome index (`++, +-, -+, --`) this strategy produces for the pair
    /// `(i, j)`.
    pub fn outcome(&self, i: usize, j: usize) -> usize {
        usize::from(self.first[i] < 0) * 2 + usize::from(self.second[j] < 0)
    }

    pub fn hits(&self, cell: CellRef) -> bool {
        self.outcome(cell.first, cell.second) == cell.outcome
    }

    /// Compact form such as `+-+|--+`.
    pub fn label(&self) -> String {
        let side = |v: &[i8]| -> String { v.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect() };
        format!("{}|{}", side(&self.first), side(&self.second))
    }
}

/// All `2^(m1+m2)` strategies, lexicographic with `+` before `-` reading
/// the first party's assignments first.
pub fn enumerate_strategies(m1: usize, m2: usize) -> Vec<DeterministicStrategy> {
    let total = m1 + m2;
    (0..1u64 << total)
        .map(|k| {
            let bit = |pos: usize| if (k >> (total - 1 - pos)) & 1 == 1 { -1 } else { 1 };
            DeterministicStrategy {
                first: (0..m1).map(bit).collect(),
                second: (m1..total).map(bit).collect(),
            }
        })
        .collect()
}

/// Strategies that never land on a zero-probability cell.
pub fn zero_cell_filter(inst: &HvInstance) -> Vec<DeterministicStrategy> {
    let zeros: Vec<CellRef> = inst.cells().filter(|&c| inst.cell_prob(c).is_zero()).collect();
    enumerate_strategies(inst.menu1.len(), inst.menu2.len())
        .into_iter()
        .filter(|s| !zeros.iter().any(|&c| s.hits(c)))
        .collect()
}

/// A set of zero-probability cells such that every deterministic strategy
/// lands on at least one of them. `eliminated_by[k]` indexes the cell that
/// rules out strategy `k` of [`enumerate_strategies`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCellCover {
    pub cells: Vec<CellRef>,
    pub eliminated_by: Vec<usize>,
}

impl ZeroCellCover {
    /// Builds an irredundant cover if the zero cells eliminate every
    /// strategy.
    pub fn find(inst: &HvInstance) -> Option<ZeroCellCover> {
        let strategies = enumerate_strategies(inst.menu1.len(), inst.menu2.len());
        let mut cells: Vec<CellRef> =
            inst.cells().filter(|&c| inst.cell_prob(c).is_zero()).collect();
        let covers = |cells: &[CellRef]| strategies.iter().all(|s| cells.iter().any(|&c| s.hits(c)));
        if !covers(&cells) {
            return None;
        }
        // Drop cells greedily from the back while the rest still cover.
        let mut k = cells.len();
        while k > 0 {
            k -= 1;
            let removed = cells.remove(k);
            if !covers(&cells) {
                cells.insert(k, removed);
            }
        }
        let eliminated_by = strategies
            .iter()
            .map(|s| cells.iter().position(|&c| s.hits(c)).expect("cover"))
            .collect();
        Some(ZeroCellCover {
            cells,
            eliminated_by,
        })
    }

    pub fn verify(&self, inst: &HvInstance) -> bool {
        let strategies = enumerate_strategies(inst.menu1.len(), inst.menu2.len());
        self.eliminated_by.len() == strategies.len()
            && self.cells.iter().all(|&c| {
                c.first < inst.menu1.len()
                    && c.second < inst.menu2.len()
                    && c.outcome < 4
                    && inst.cell_prob(c).is_zero()
            })
            && strategies.iter().zip(&self.eliminated_by).all(|(s, &k)| {
                self.cells.get(k).is_some_and(|&c| s.hits(c))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Weights of the strategies in a reproducing mixture (zero weights
    /// omitted).
    Mixture(Vec<(DeterministicStrategy, BigRational)>),
    /// Farkas multipliers `y` for the cell rows followed by the
    /// normalization row: every strategy column has `yᵀa <= 0` while
    /// `yᵀb > 0`. `zero_cells` is present when zero cells alone already
    /// exclude every strategy.
    Infeasible {
        zero_cells: Option<ZeroCellCover>,
        farkas: Vec<BigRational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HvVerdict {
    pub feasible: bool,
    pub strategies: usize,
    pub zero_cell_survivors: usize,
    pub certificate: Certificate,
}

/// Constraint system: one row per cell plus normalization, one column per
/// strategy.
fn constraint_system(
    inst: &HvInstance,
    strategies: &[DeterministicStrategy],
) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for cell in inst.cells() {
        a.push(
            strategies
                .iter()
                .map(|s| if s.hits(cell) { BigRational::one() } else { BigRational::zero() })
                .collect(),
        );
        b.push(to_big(&inst.cell_prob(cell)));
    }
    a.push(vec![BigRational::one(); strategies.len()]);
    b.push(BigRational::one());
    (a, b)
}

impl HvVerdict {
    /// Re-checks the certificate against the instance by direct arithmetic.
    pub fn verify(&self, inst: &HvInstance) -> bool {
        match &self.certificate {
            Certificate::Mixture(weights) => {
                self.feasible
                    && weights.iter().all(|(_, w)| !w.is_negative())
                    && weights.iter().fold(BigRational::zero(), |acc, (_, w)| acc + w)
                        == BigRational::one()
                    && inst.cells().all(|cell| {
                        let got = weights
                            .iter()
                            .filter(|(s, _)| s.hits(cell))
                            .fold(BigRational::zero(), |acc, (_, w)| acc + w);
                        got == to_big(&inst.cell_prob(cell))
                    })
            }
            Certificate::Infeasible { zero_cells, farkas } => {
                let strategies = enumerate_strategies(inst.menu1.len(), inst.menu2.len());
                let (a, b) = constraint_system(inst, &strategies);
                !self.feasible
                    && lp::verify_farkas(&a, &b, farkas)
                    && zero_cells.as_ref().is_none_or(|z| z.verify(inst))
            }
        }
    }
}

/// Product-of-marginals mixture, if the tables are consistent with
/// independent outcomes on each side.
fn independent_mixture(
    inst: &HvInstance,
    strategies: &[DeterministicStrategy],
) -> Option<Vec<(DeterministicStrategy, BigRational)>> {
    let (m1, m2) = (inst.menu1.len(), inst.menu2.len());
    let up1: Vec<Rational> = (0..m1)
        .map(|i| {
            let t = inst.table(i, 0);
            t.probs[0] + t.probs[1]
        })
        .collect();
    let up2: Vec<Rational> = (0..m2)
        .map(|j| {
            let t = inst.table(0, j);
            t.probs[0] + t.probs[2]
        })
        .collect();
    let one = Rational::one();
    for i in 0..m1 {
        for j in 0..m2 {
            let (p, q) = (up1[i], up2[j]);
            let expected = [p * q, p * (one - q), (one - p) * q, (one - p) * (one - q)];
            if inst.table(i, j).probs != expected {
                return None;
            }
        }
    }
    let weight = |s: &DeterministicStrategy| {
        let side = |vals: &[i8], up: &[Rational]| {
            vals.iter()
                .zip(up)
                .fold(one, |acc, (&v, &p)| acc * if v > 0 { p } else { one - p })
        };
        side(&s.first, &up1) * side(&s.second, &up2)
    };
    Some(
        strategies
            .iter()
            .map(|s| (s.clone(), to_big(&weight(s))))
            .filter(|(_, w)| !w.is_zero())
            .collect(),
    )
}

/// Decides whether some mixture of deterministic strategies reproduces the
/// instance. Tries the independent-marginals mixture first, then the exact
/// LP; infeasible verdicts always carry Farkas multipliers.
pub fn hv_feasible(inst: &HvInstance) -> Result<HvVerdict> {
    let strategies = enumerate_strategies(inst.menu1.len(), inst.menu2.len());
    let survivors = zero_cell_filter(inst).len();
    if let Some(mix) = independent_mixture(inst, &strategies) {
        return Ok(HvVerdict {
            feasible: true,
            strategies: strategies.len(),
            zero_cell_survivors: survivors,
            certificate: Certificate::Mixture(mix),
        });
    }
    let verdict = hv_feasible_lp(inst)?;
    Ok(HvVerdict {
        zero_cell_survivors: survivors,
        ..verdict
    })
}

/// [`hv_feasible`] without the independent-marginals shortcut.
pub fn hv_feasible_lp(inst: &HvInstance) -> Result<HvVerdict> {
    let strategies = enumerate_strategies(inst.menu1.len(), inst.menu2.len());
    let survivors = zero_cell_filter(inst).len();
    let (a, b) = constraint_system(inst, &strategies);
    let verdict = match lp::feasibility(&a, &b) {
        LpOutcome::Feasible(x) => {
            let mix = strategies
                .iter()
                .zip(x)
                .filter(|(_, w)| !w.is_zero())
                .map(|(s, w)| (s.clone(), w))
                .collect();
            HvVerdict {
                feasible: true,
                strategies: strategies.len(),
                zero_cell_survivors: survivors,
                certificate: Certificate::Mixture(mix),
            }
        }
        LpOutcome::Infeasible(y) => HvVerdict {
            feasible: false,
            strategies: strategies.len(),
            zero_cell_survivors: survivors,
            certificate: Certificate::Infeasible {
                zero_cells: ZeroCellCover::find(inst),
                farkas: y,
            },
        },
    };
    if survivors == 0 && verdict.feasible {
        return Err(Error::Invariant(
            "zero cells exclude every strategy but the LP found a mixture".into(),
        ));
    }
    if !verdict.verify(inst) {
        return Err(Error::Invariant("LP certificate failed verification".into()));
    }
    Ok(verdict)
}

/// Largest `|AB + AB' + A'B - A'B'|` over deterministic strategies and quads
/// drawn from the menus (`A, A'` from the first, `B, B'` from the second).
pub fn chsh_classical_bound(menu1: &[Observable], menu2: &[Observable]) -> Result<Rational> {
    if menu1.iter().chain(menu2).any(|o| !o.is_spin_like()) {
        return Err(Error::NotSpinLike);
    }
    Ok(Rational::from(deterministic_chsh_max(menu1.len(), menu2.len())))
}

/// Brute-force classical CHSH maximum for menus of the given sizes.
pub fn deterministic_chsh_max(m1: usize, m2: usize) -> i64 {
    let mut best = 0i64;
    for s in enumerate_strategies(m1, m2) {
        let (v1, v2) = (&s.first, &s.second);
        for &a in v1 {
            for &a_alt in v1 {
                for &b in v2 {
                    for &b_alt in v2 {
                        let (a, a_alt, b, b_alt) =
                            (i64::from(a), i64::from(a_alt), i64::from(b), i64::from(b_alt));
                        best = best.max((a * b + a * b_alt + a_alt * b - a_alt * b_alt).abs());
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn strategy_order() {
        let s = enumerate_strategies(1, 1);
        let labels: Vec<String> = s.iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["+|+", "+|-", "-|+", "-|-"]);
        assert_eq!(enumerate_strategies(3, 3).len(), 64);
    }

    #[test]
    fn malformed_tables() {
        let bad = JointTable::new([Rational::new(1, 2); 4]);
        assert!(matches!(
            HvInstance::new(names("a", 1), names("b", 1), vec![bad]),
            Err(Error::MalformedTable(_))
        ));
        let ok = JointTable::new([Rational::new(1, 4); 4]);
        assert!(matches!(
            HvInstance::new(names("a", 2), names("b", 1), vec![ok]),
            Err(Error::MalformedTable(_))
        ));
        let neg = JointTable::new([
            Rational::new(-1, 4),
            Rational::new(1, 2),
            Rational::new(1, 2),
            Rational::new(1, 4),
        ]);
        assert!(HvInstance::new(names("a", 1), names("b", 1), vec![neg]).is_err());
    }

    #[test]
    fn perfect_correlation_is_local() {
        // P(++) = P(--) = 1/2: a fair shared coin.
        let t = JointTable::new([
            Rational::new(1, 2),
            Rational::from(0),
            Rational::from(0),
            Rational::new(1, 2),
        ]);
        let inst = HvInstance::new(names("a", 1), names("b", 1), vec![t]).unwrap();
        let v = hv_feasible(&inst).unwrap();
        assert!(v.feasible && v.verify(&inst));
        assert_eq!(zero_cell_filter(&inst).len(), 2);
    }

    fn pr_like(agree: Rational, differ: Rational) -> Vec<JointTable> {
        let same = JointTable::new([agree, differ, differ, agree]);
        let flip = JointTable::new([differ, agree, agree, differ]);
        vec![same, same, same, flip]
    }

    #[test]
    fn pr_box_is_not_local() {
        // Outputs agree unless both second settings are chosen.
        let tables = pr_like(Rational::new(1, 2), Rational::from(0));
        let inst = HvInstance::new(names("a", 2), names("b", 2), tables).unwrap();
        assert!(zero_cell_filter(&inst).is_empty());
        let v = hv_feasible(&inst).unwrap();
        assert!(!v.feasible);
        assert!(matches!(
            v.certificate,
            Certificate::Infeasible { zero_cells: Some(_), .. }
        ));
        assert!(v.verify(&inst));
    }

    #[test]
    fn noisy_pr_box_needs_the_lp() {
        // CHSH value 4 * 3/5 = 12/5 > 2 with every cell positive.
        let tables = pr_like(Rational::new(2, 5), Rational::new(1, 10));
        let inst = HvInstance::new(names("a", 2), names("b", 2), tables).unwrap();
        assert_eq!(zero_cell_filter(&inst).len(), 16);
        let v = hv_feasible(&inst).unwrap();
        assert!(!v.feasible);
        assert!(matches!(
            v.certificate,
            Certificate::Infeasible { zero_cells: None, .. }
        ));
        assert!(v.verify(&inst));
        // At CHSH value exactly 2 a local model exists.
        let tables = pr_like(Rational::new(3, 8), Rational::new(1, 8));
        let inst = HvInstance::new(names("a", 2), names("b", 2), tables).unwrap();
        let v = hv_feasible(&inst).unwrap();
        assert!(v.feasible && v.verify(&inst));
    }

    #[test]
    fn tampered_certificate_fails() {
        let inst = HvInstance::uniform(names("a", 1), names("b", 1)).unwrap();
        let mut v = hv_feasible(&inst).unwrap();
        if let Certificate::Mixture(ref mut w) = v.certificate {
            w[0].1 = w[0].1.clone() + BigRational::new(1.into(), 8.into());
        }
        assert!(!v.verify(&inst));
    }

    #[test]
    fn classical_bound_small_menus() {
        assert_eq!(deterministic_chsh_max(1, 1), 2);
        assert_eq!(deterministic_chsh_max(2, 2), 2);
        assert_eq!(deterministic_chsh_max(3, 3), 2);
    }
}
