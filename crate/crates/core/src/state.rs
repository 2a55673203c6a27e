//! States (kets), outcomes (bras) and the projective identification of
//! vectors that differ by a nonzero scalar.
//!
//! There is no inner product on K^N, so kets and bras are kept as distinct
//! types; the only pairing between them is [`bracket`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row;

/// A coordinate vector over GF(q). The marker distinguishes states
/// ([`Ket`]) from outcomes ([`Bra`]).
pub struct Vector<K> {
    coords: Vec<FieldElement>,
    field: Field,
    kind: PhantomData<K>,
}

impl<K> Clone for Vector<K> {
    fn clone(&self) -> Self {
        Vector {
            coords: self.coords.clone(),
            field: self.field.clone(),
            kind: PhantomData,
        }
    }
}

impl<K> PartialEq for Vector<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl<K> Eq for Vector<K> {}

impl<K> Hash for Vector<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl<K> fmt::Debug for Vector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector{self}")
    }
}

/// A state vector in V = K^N.
pub type Ket = Vector<Column>;
/// An outcome vector in the dual space V*.
pub type Bra = Vector<Row>;

impl<K> Vector<K> {
    pub fn new(field: &Field, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Vector {
            coords,
            field: field.clone(),
            kind: PhantomData,
        })
    }

    pub fn from_ints(field: &Field, coords: &[i64]) -> Result<Self> {
        Vector::new(field, coords.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Parses comma-separated element strings, e.g. `1,0,t+1`.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|tok| field.parse_element(tok))
            .collect::<Result<Vec<_>>>()?;
        Vector::new(field, coords)
    }

    /// Vector whose coordinates are the field elements with the given
    /// enumeration indices.
    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Self> {
        Vector::new(field, indices.iter().map(|&i| field.element(i)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coords.iter().map(FieldElement::index).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    pub fn scale(&self, lambda: &FieldElement) -> Self {
        Vector {
            coords: self.coords.iter().map(|c| c * lambda).collect(),
            field: self.field.clone(),
            kind: PhantomData,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            field: self.field.clone(),
            kind: PhantomData,
        })
    }

    fn check_compatible<L>(&self, other: &Vector<L>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// The multiple of `self` whose first nonzero coordinate is 1.
    pub fn canonicalize(&self) -> Result<Self> {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroVector)?;
        Ok(self.scale(&lead.inv()?))
    }

    pub fn is_canonical(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(FieldElement::is_one)
    }

    /// True iff `self = lambda * other` for some nonzero scalar.
    pub fn same_ray(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.canonicalize()? == other.canonicalize()?)
    }

    /// Returns a copy, or `ZeroVector` if this vector cannot represent a
    /// physical state or outcome.
    pub fn nonzero(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::ZeroVector)
        } else {
            Ok(self.clone())
        }
    }
}

impl<K> PartialOrd for Vector<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for Vector<K> {
    /// Lexicographic on coordinate enumeration indices.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<K> fmt::Display for Vector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// ⟨x|ψ⟩ = Σ x_i ψ_i.
pub fn bracket(x: &Bra, psi: &Ket) -> Result<FieldElement> {
    x.check_compatible(psi)?;
    Ok(x.coords
        .iter()
        .zip(&psi.coords)
        .fold(x.field.zero(), |acc, (a, b)| &acc + &(a * b)))
}

/// A point of PG(N-1, q): the ray through a nonzero vector, held as its
/// canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint<K>(Vector<K>);

impl<K> ProjectivePoint<K> {
    pub fn new(v: &Vector<K>) -> Result<Self> {
        Ok(ProjectivePoint(v.canonicalize()?))
    }

    pub fn representative(&self) -> &Vector<K> {
        &self.0
    }

    pub fn into_representative(self) -> Vector<K> {
        self.0
    }
}

/// Canonical representatives of all (q^N - 1)/(q - 1) points of PG(N-1, q),
/// in lexicographic order of coordinates.
pub fn projective_points<K>(field: &Field, dim: usize) -> Vec<Vector<K>> {
    let q = field.order();
    let elements = field.elements();
    let mut out = Vec::new();
    // Leading 1 at position `lead`, zeros before it, anything after.
    for lead in (0..dim).rev() {
        let tail = dim - lead - 1;
        let count = u64::from(q).pow(tail as u32);
        for mut idx in 0..count {
            let mut coords = vec![field.zero(); dim];
            coords[lead] = field.one();
            for slot in coords[lead + 1..].iter_mut().rev() {
                *slot = elements[(idx % u64::from(q)) as usize].clone();
                idx /= u64::from(q);
            }
            out.push(Vector {
                coords,
                field: field.clone(),
                kind: PhantomData,
            });
        }
    }
    out.sort();
    out
}

/// All q^N - 1 nonzero vectors of K^N in lexicographic order.
pub fn nonzero_vectors<K>(field: &Field, dim: usize) -> Vec<Vector<K>> {
    let q = u64::from(field.order());
    let elements = field.elements();
    (1..q.pow(dim as u32))
        .map(|mut idx| {
            let mut coords = vec![field.zero(); dim];
            for slot in coords.iter_mut().rev() {
                *slot = elements[(idx % q) as usize].clone();
                idx /= q;
            }
            Vector {
                coords,
                field: field.clone(),
                kind: PhantomData,
            }
        })
        .collect()
}
