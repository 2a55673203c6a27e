//! Two-party systems on V⊗V.
//!
//! Coordinates of a two-party vector are stored row-major in the first
//! factor: the coefficient of `e_i ⊗ e_j` lives at flat index `i*N + j`.
//! Viewing the coordinates as an N×N matrix `M`, a state is a product state
//! iff `rank(M) = 1`, and a local map `(g1, g2)` acts as `M -> g1 M g2ᵀ`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, Matrix};
use crate::observable::Observable;
use crate::state::{nonzero_vectors, projective_points, Bra, Column, Ket};
use crate::Rational;

/// Outcome labels of a product of two spin-like observables, in table order.
pub const JOINT_OUTCOMES: [&str; 4] = ["++", "+-", "-+", "--"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoPartyState {
    ket: Ket,
    factor_dim: usize,
}

impl TwoPartyState {
    pub fn new(ket: Ket, factor_dim: usize) -> Result<TwoPartyState> {
        if ket.dim() != factor_dim * factor_dim {
            return Err(Error::DimensionMismatch {
                expected: factor_dim * factor_dim,
                found: ket.dim(),
            });
        }
        Ok(TwoPartyState {
            ket: ket.nonzero()?,
            factor_dim,
        })
    }

    pub fn ket(&self) -> &Ket {
        &self.ket
    }

    pub fn factor_dim(&self) -> usize {
        self.factor_dim
    }

    pub fn field(&self) -> &Field {
        self.ket.field()
    }

    pub fn canonicalize(&self) -> TwoPartyState {
        TwoPartyState {
            ket: self.ket.canonicalize().expect("state is nonzero"),
            factor_dim: self.factor_dim,
        }
    }

    pub fn try_add(&self, other: &TwoPartyState) -> Result<TwoPartyState> {
        TwoPartyState::new(self.ket.try_add(&other.ket)?, self.factor_dim)
    }

    /// Coordinates as the N×N matrix `M[i][j]`.
    pub fn coefficient_matrix(&self) -> Matrix {
        let n = self.factor_dim;
        Matrix::new(self.field(), n, n, self.ket.coords().to_vec()).expect("shape checked")
    }

    /// Schmidt-style rank over K of the coefficient matrix.
    pub fn rank(&self) -> usize {
        self.coefficient_matrix().rank()
    }

    /// Factors `(u, v)` with `u ⊗ v` proportional to this state, if it is a
    /// product state. Both factors are canonical.
    pub fn factors(&self) -> Option<(Ket, Ket)> {
        if self.rank() != 1 {
            return None;
        }
        let n = self.factor_dim;
        let c = self.ket.coords();
        let (row, col) = (0..n * n).find(|&k| !c[k].is_zero()).map(|k| (k / n, k % n))?;
        let v = Ket::new(self.field(), c[row * n..row * n + n].to_vec()).ok()?;
        let u = Ket::new(self.field(), (0..n).map(|i| c[i * n + col].clone()).collect()).ok()?;
        Some((u.canonicalize().ok()?, v.canonicalize().ok()?))
    }

    pub fn is_product(&self) -> bool {
        self.rank() == 1
    }
}

impl fmt::Display for TwoPartyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ket.fmt(f)
    }
}

fn kron(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    u.iter()
        .flat_map(|a| v.iter().map(move |b| a * b))
        .collect()
}

/// `u ⊗ v`, with coordinate `(i, j)` at flat index `i*N + j`.
pub fn tensor_ket(u: &Ket, v: &Ket) -> Result<TwoPartyState> {
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let ket = Ket::new(u.field(), kron(u.coords(), v.coords()))?;
    TwoPartyState::new(ket, u.dim())
}

pub fn tensor_bra(x: &Bra, y: &Bra) -> Result<Bra> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    Bra::new(x.field(), kron(x.coords(), y.coords()))
}

/// All nonzero two-party vectors on K^N ⊗ K^N (not up to scalars) that are
/// not product states, in lexicographic order.
pub fn enumerate_entangled(field: &Field, factor_dim: usize) -> Vec<TwoPartyState> {
    nonzero_vectors::<Column>(field, factor_dim * factor_dim)
        .into_iter()
        .map(|k| TwoPartyState {
            ket: k,
            factor_dim,
        })
        .filter(|s| !s.is_product())
        .collect()
}

/// Canonical representatives of every projective two-party state.
pub fn two_party_points(field: &Field, factor_dim: usize) -> Vec<TwoPartyState> {
    projective_points(field, factor_dim * factor_dim)
        .into_iter()
        .map(|ket| TwoPartyState { ket, factor_dim })
        .collect()
}

/// Canonical representatives of the entangled projective two-party states.
pub fn entangled_points(field: &Field, factor_dim: usize) -> Vec<TwoPartyState> {
    two_party_points(field, factor_dim)
        .into_iter()
        .filter(|s| !s.is_product())
        .collect()
}

/// `e_1 ⊗ e_2 + e_2 ⊗ e_1` on K^2 ⊗ K^2. Over GF(2) this equals
/// `|a⟩⊗|a⟩ + |b⟩⊗|b⟩ + |c⟩⊗|c⟩`.
pub fn singlet(field: &Field) -> TwoPartyState {
    let ket = Ket::from_ints(field, &[0, 1, 1, 0]).expect("valid coordinates");
    TwoPartyState { ket, factor_dim: 2 }
}

/// Product of two spin-like observables: outcome vectors
/// `r⊗t, r⊗u, s⊗t, s⊗u` for `A = {r, s}`, `B = {t, u}`, i.e. outcomes
/// `++, +-, -+, --`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductObservable {
    first: Observable,
    second: Observable,
    outcomes: [Bra; 4],
}

impl ProductObservable {
    pub fn new(first: &Observable, second: &Observable) -> Result<ProductObservable> {
        if !first.is_spin_like() || !second.is_spin_like() {
            return Err(Error::NotSpinLike);
        }
        if first.field() != second.field() {
            return Err(Error::FieldMismatch);
        }
        let (r, s) = (&first.outcomes()[0], &first.outcomes()[1]);
        let (t, u) = (&second.outcomes()[0], &second.outcomes()[1]);
        Ok(ProductObservable {
            first: first.clone(),
            second: second.clone(),
            outcomes: [
                tensor_bra(r, t)?,
                tensor_bra(r, u)?,
                tensor_bra(s, t)?,
                tensor_bra(s, u)?,
            ],
        })
    }

    pub fn first(&self) -> &Observable {
        &self.first
    }

    pub fn second(&self) -> &Observable {
        &self.second
    }

    pub fn outcomes(&self) -> &[Bra; 4] {
        &self.outcomes
    }

    /// The four-outcome observable on V⊗V with values `(+1, -1, -1, +1)`.
    /// Tensor products of two bases always form a basis.
    pub fn as_observable(&self) -> Observable {
        let values = [1, -1, -1, 1].iter().map(|&v| Rational::from(v)).collect();
        Observable::from_basis_unchecked(self.outcomes.to_vec(), values)
    }

    pub fn table(&self, state: &TwoPartyState) -> Result<JointTable> {
        let dist = self.as_observable().outcome_probabilities(state.ket())?;
        let p = dist.probs();
        Ok(JointTable {
            probs: [p[0], p[1], p[2], p[3]],
        })
    }
}

pub fn product_observable(a: &Observable, b: &Observable) -> Result<ProductObservable> {
    ProductObservable::new(a, b)
}

/// Joint outcome probabilities `P(++), P(+-), P(-+), P(--)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JointTable {
    pub probs: [Rational; 4],
}

impl JointTable {
    pub fn new(probs: [Rational; 4]) -> JointTable {
        JointTable { probs }
    }

    /// `P(++) - P(+-) - P(-+) + P(--)`.
    pub fn expectation(&self) -> Rational {
        let [pp, pm, mp, mm] = self.probs;
        pp - pm - mp + mm
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().fold(Rational::zero(), |a, p| a + p)
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == Rational::from(1) && self.probs.iter().all(|p| *p >= Rational::zero())
    }
}

pub fn joint_table(state: &TwoPartyState, a: &Observable, b: &Observable) -> Result<JointTable> {
    ProductObservable::new(a, b)?.table(state)
}

/// A pair of invertible N×N matrices acting independently on each factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalMap {
    g1: Matrix,
    g2: Matrix,
}

impl LocalMap {
    pub fn new(g1: Matrix, g2: Matrix) -> Result<LocalMap> {
        if g1.rows() != g2.rows() {
            return Err(Error::DimensionMismatch {
                expected: g1.rows(),
                found: g2.rows(),
            });
        }
        if g1.field() != g2.field() {
            return Err(Error::FieldMismatch);
        }
        if !g1.is_invertible() || !g2.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(LocalMap { g1, g2 })
    }

    pub fn identity(field: &Field, n: usize) -> LocalMap {
        LocalMap {
            g1: Matrix::identity(field, n),
            g2: Matrix::identity(field, n),
        }
    }

    pub fn first(&self) -> &Matrix {
        &self.g1
    }

    pub fn second(&self) -> &Matrix {
        &self.g2
    }

    /// Coordinates of `(g1 ⊗ g2) ψ`, i.e. `g1 M g2ᵀ`.
    fn apply_coords(&self, state: &TwoPartyState) -> Result<Vec<FieldElement>> {
        let n = self.g1.rows();
        if state.factor_dim != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.factor_dim,
            });
        }
        let m = state.coefficient_matrix();
        let out = self.g1.mul(&m)?.mul(&self.g2.transpose())?;
        Ok(out.row_vecs().into_iter().flatten().collect())
    }

    pub fn apply(&self, state: &TwoPartyState) -> Result<TwoPartyState> {
        let coords = self.apply_coords(state)?;
        TwoPartyState::new(Ket::new(state.field(), coords)?, state.factor_dim)
    }

    /// The observable whose outcome vectors are `x g^{-1}`, so that brackets
    /// against transformed states are unchanged. `slot` selects the factor
    /// (0 or 1).
    pub fn transform_observable(&self, obs: &Observable, slot: usize) -> Result<Observable> {
        let g = if slot == 0 { &self.g1 } else { &self.g2 };
        let ginv_t = g.inverse()?.transpose();
        let outcomes = obs
            .outcomes()
            .iter()
            .map(|x| {
                let coords = ginv_t.apply(x.coords())?;
                Bra::new(x.field(), coords)?.canonicalize()
            })
            .collect::<Result<Vec<_>>>()?;
        Observable::new(outcomes, obs.values().to_vec())
    }
}

pub fn apply_local(map: &LocalMap, state: &TwoPartyState) -> Result<TwoPartyState> {
    map.apply(state)
}

/// An orbit of projective two-party states under local maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<TwoPartyState>,
    pub product: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partition of PG(N²-1, q) into orbits of GL(N,q) × GL(N,q), by
/// breadth-first closure under the generators `(g, 1)` and `(1, g)` with `g`
/// from `generators`.
fn orbits_by_closure(field: &Field, generators: &[LocalMap]) -> Vec<Orbit> {
    let n = generators.first().map(|g| g.g1.rows()).unwrap_or(2);
    let points = two_party_points(field, n);
    let index: HashMap<Vec<u32>, usize> = points
        .iter()
        .enumerate()
        .map(|(i, s)| (s.ket.indices(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for g in generators {
                let image = g
                    .apply(&points[cur])
                    .expect("local maps preserve nonzero states")
                    .canonicalize();
                let j = index[&image.ket.indices()];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let members: Vec<TwoPartyState> = members.into_iter().map(|i| points[i].clone()).collect();
        let product = members[0].is_product();
        orbits.push(Orbit { members, product });
    }
    orbits
}

/// Orbits of two-party states on K^2 ⊗ K^2 under local basis changes,
/// computed by closure over a generating set of GL(2,q) in each slot.
/// Orbits are listed by smallest member; members are sorted.
pub fn local_orbits(field: &Field) -> Vec<Orbit> {
    let id = Matrix::identity(field, 2);
    let mut gens = Vec::new();
    for g in linalg::gl2_generators(field) {
        gens.push(LocalMap::new(g.clone(), id.clone()).expect("generator is invertible"));
        gens.push(LocalMap::new(id.clone(), g).expect("generator is invertible"));
    }
    orbits_by_closure(field, &gens)
}

/// Every local map `(g1, g2)` with both factors in GL(N, q).
pub fn all_local_maps(field: &Field, n: usize) -> Vec<LocalMap> {
    let group = linalg::general_linear_group(field, n);
    group
        .iter()
        .flat_map(|g1| {
            group.iter().map(move |g2| LocalMap {
                g1: g1.clone(),
                g2: g2.clone(),
            })
        })
        .collect()
}

/// Same partition as [`local_orbits`], using every element of
/// GL(2,q) × GL(2,q) as a generator. Only practical for tiny q.
pub fn local_orbits_exhaustive(field: &Field) -> Vec<Orbit> {
    orbits_by_closure(field, &all_local_maps(field, 2))
}

/// First local map (in enumeration order) taking `from` to a multiple of
/// `to`.
pub fn find_local_map(from: &TwoPartyState, to: &TwoPartyState) -> Option<LocalMap> {
    let target = to.canonicalize();
    all_local_maps(from.field(), from.factor_dim)
        .into_iter()
        .find(|g| g.apply(from).map(|s| s.canonicalize() == target).unwrap_or(false))
}

impl From<TwoPartyState> for Ket {
    fn from(s: TwoPartyState) -> Ket {
        s.ket
    }
}
