//! Arithmetic in the finite field GF(p^n).
//!
//! Elements are stored as coefficient vectors (ascending degree) of their
//! representative polynomial modulo a monic irreducible polynomial of degree
//! `n` over Z_p. The modulus chosen by [`Field::new`] is the smallest monic
//! irreducible polynomial when coefficient vectors are compared constant term
//! first, so the same `(p, n)` always produces the same field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest characteristic accepted by [`Field::new`]. Primality is decided by
/// trial division, which is only sensible for small `p`.
pub const MAX_CHARACTERISTIC: u32 = 100;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 16;

type Coeffs = SmallVec<[u32; 4]>;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A polynomial over Z_p, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl ZpPoly {
    /// Builds a polynomial from ascending coefficients, reducing them mod `p`
    /// and trimming high zero coefficients.
    pub fn new(p: u32, coeffs: &[u32]) -> Self {
        let mut coeffs: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ZpPoly { p, coeffs }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Remainder of `self` divided by the monic polynomial `divisor`.
    fn rem_monic(&self, divisor: &ZpPoly) -> ZpPoly {
        let p = u64::from(self.p);
        let dd = divisor.coeffs.len() - 1;
        let mut r: Vec<u64> = self.coeffs.iter().map(|&c| u64::from(c)).collect();
        while r.len() > dd {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            if lead != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let sub = lead * u64::from(d) % p;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        let r: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        ZpPoly::new(self.p, &r)
    }

    /// Irreducibility over Z_p by trial division with every monic polynomial
    /// of degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NonMonic);
        }
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::Parse("constant polynomial".into()));
        }
        for d in 1..=deg / 2 {
            for tail in 0..(self.p as u64).pow(d as u32) {
                let mut c = digits(tail, self.p, d);
                c.push(1);
                let factor = ZpPoly { p: self.p, coeffs: c };
                if self.rem_monic(&factor).coeffs.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ZpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_string(&self.coeffs, "x"))
    }
}

/// Base-`p` digits of `value`, least significant first, padded to `len`.
fn digits(mut value: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((value % u64::from(p)) as u32);
        value /= u64::from(p);
    }
    out
}

fn poly_string(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (deg, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (d, 1) => format!("{var}^{d}"),
            (d, c) => format!("{c}{var}^{d}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parameters of GF(p^n): characteristic, degree and the reduction modulus.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    n: u32,
    q: u32,
    modulus: ZpPoly,
}

impl FieldParams {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &ZpPoly {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.n == 1
    }
}

/// Shared handle to a field; cheap to clone.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldParams>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl std::ops::Deref for Field {
    type Target = FieldParams;

    fn deref(&self) -> &FieldParams {
        &self.0
    }
}

impl Field {
    /// Constructs GF(p^n) with the smallest monic irreducible modulus of
    /// degree `n`. For `n = 1` the modulus is `x` and arithmetic is plain
    /// residue arithmetic mod `p`.
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::Unsupported(format!(
                "characteristic {p} exceeds {MAX_CHARACTERISTIC}"
            )));
        }
        let q = u64::from(p).checked_pow(n).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::Unsupported(format!("GF({p}^{n}) exceeds order {MAX_ORDER}"))
        })?;
        let modulus = smallest_irreducible(p, n as usize);
        Ok(Field(Arc::new(FieldParams {
            p,
            n,
            q: q as u32,
            modulus,
        })))
    }

    pub fn params(&self) -> &FieldParams {
        &self.0
    }

    /// `GF(p^n)/modulus`, e.g. `GF(2^2)/x^2+x+1`.
    pub fn descriptor(&self) -> String {
        format!("GF({}^{})/{}", self.p, self.n, self.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The element with enumeration index `index`, i.e. coefficient vector
    /// given by the base-p digits of `index` (constant term least significant).
    ///
    /// Panics if `index >= q`.
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range for GF({})", self.q);
        FieldElement {
            coeffs: digits(u64::from(index), self.p, self.n as usize).into_iter().collect(),
            field: self.clone(),
        }
    }

    /// Element from ascending polynomial coefficients; reduced mod `p` and,
    /// when longer than `n`, mod the field modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let poly = ZpPoly::new(self.p, coeffs);
        let reduced = if poly.coeffs.len() > self.n as usize {
            poly.rem_monic(&self.modulus)
        } else {
            poly
        };
        let mut c: Coeffs = reduced.coeffs.iter().copied().collect();
        c.resize(self.n as usize, 0);
        FieldElement {
            coeffs: c,
            field: self.clone(),
        }
    }

    /// The image of an integer under Z -> GF(q).
    pub fn from_int(&self, value: i64) -> FieldElement {
        let r = value.rem_euclid(i64::from(self.p)) as u32;
        self.from_coeffs(&[r])
    }

    /// All `q` elements in index order: zero first, then ascending base-p
    /// value of the coefficient vector.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q).map(|i| self.element(i)).collect()
    }

    pub fn nonzero_elements(&self) -> Vec<FieldElement> {
        (1..self.q).map(|i| self.element(i)).collect()
    }

    /// Parses the textual element syntax: an integer for prime fields, a
    /// polynomial in `t` (e.g. `2t^2+t+1`) for extension fields. Integers are
    /// accepted for both.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(self.from_int(v));
        }
        let mut coeffs = vec![0u32; self.n as usize];
        for term in s.split('+') {
            let (coef, deg) = parse_term(term)?;
            if deg >= self.n as usize {
                return Err(Error::Parse(format!("degree {deg} too high in '{s}'")));
            }
            coeffs[deg] = (coeffs[deg] + coef % self.p) % self.p;
        }
        Ok(self.from_coeffs(&coeffs))
    }
}

fn parse_term(term: &str) -> Result<(u32, usize)> {
    let bad = || Error::Parse(format!("bad term '{term}'"));
    match term.find('t') {
        None => term.parse::<u32>().map(|c| (c, 0)).map_err(|_| bad()),
        Some(pos) => {
            let coef = term[..pos].trim_end_matches('*');
            let coef = if coef.is_empty() {
                1
            } else {
                coef.parse::<u32>().map_err(|_| bad())?
            };
            let rest = &term[pos + 1..];
            let deg = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(bad)?
            };
            Ok((coef, deg))
        }
    }
}

fn smallest_irreducible(p: u32, n: usize) -> ZpPoly {
    // Constant term is the most significant position in the comparison, so
    // the enumeration index is read most-significant-digit first.
    for idx in 0..u64::from(p).pow(n as u32) {
        let mut c = digits(idx, p, n);
        c.reverse();
        c.push(1);
        let poly = ZpPoly { p, coeffs: c };
        if poly.is_irreducible().expect("candidate is monic") {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_{p}")
}

/// An element of GF(p^n).
#[derive(Debug, Clone)]
pub struct FieldElement {
    coeffs: Coeffs,
    field: Field,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Enumeration order (see [`Field::elements`]).
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Ascending-degree coefficients, each in `[0, p)`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Position in [`Field::elements`].
    pub fn index(&self) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.field.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// 0 for the zero element, 1 otherwise. Multiplicative, since a field has
    /// no zero divisors.
    pub fn abs_val(&self) -> u8 {
        u8::from(!self.is_zero())
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = u64::from(self.field.p);
        let n = self.coeffs.len();
        if n == 1 {
            let c = u64::from(self.coeffs[0]) * u64::from(other.coeffs[0]) % p;
            return Ok(FieldElement {
                coeffs: smallvec::smallvec![c as u32],
                field: self.field.clone(),
            });
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        // Reduce with the monic modulus: x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
        let m = self.field.modulus.coeffs();
        for k in (n..prod.len()).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mi) in m[..n].iter().enumerate() {
                let sub = lead * u64::from(mi) % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        Ok(FieldElement {
            coeffs: prod[..n].iter().map(|&c| c as u32).collect(),
            field: self.field.clone(),
        })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^(q-2)`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(u64::from(self.field.q) - 2))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.try_mul(&other.inv()?)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            write!(f, "{}", self.coeffs[0])
        } else {
            f.write_str(&poly_string(&self.coeffs, "t"))
        }
    }
}

// Operator forms panic on mixed fields; use the `try_*` methods where
// operands come from untrusted sources.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p;
        FieldElement {
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
            field: self.field.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Field {
        Field::new(p, n).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(1, 1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Field::new(101, 1), Err(Error::Unsupported(_))));
        assert!(matches!(Field::new(2, 17), Err(Error::Unsupported(_))));
    }

    #[test]
    fn moduli() {
        assert_eq!(gf(2, 1).modulus().coeffs(), &[0, 1]);
        assert_eq!(gf(2, 2).modulus().to_string(), "x^2+x+1");
        assert_eq!(gf(2, 2).descriptor(), "GF(2^2)/x^2+x+1");
        // x^2 + 1 is irreducible mod 3 since -1 is not a square.
        assert_eq!(gf(3, 2).modulus().to_string(), "x^2+1");
        // Coefficients compare constant term first: [1,0,1] < [1,1,0].
        assert_eq!(gf(2, 3).modulus().to_string(), "x^3+x^2+1");
    }

    #[test]
    fn irreducibility() {
        let poly = |c: &[u32]| ZpPoly::new(2, c);
        assert!(poly(&[1, 1, 1]).is_irreducible().unwrap());
        assert!(!poly(&[1, 0, 1]).is_irreducible().unwrap());
        assert!(ZpPoly::new(5, &[0, 1]).is_irreducible().unwrap());
        assert_eq!(
            ZpPoly::new(3, &[1, 2]).is_irreducible().unwrap_err(),
            Error::NonMonic
        );
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over Z_2: no roots, still reducible.
        assert!(!poly(&[1, 0, 1, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn small_tables() {
        let f2 = gf(2, 1);
        assert!((f2.one() + f2.one()).is_zero());
        let f3 = gf(3, 1);
        assert_eq!(f3.from_int(2) + f3.from_int(2), f3.one());
        assert_eq!(f3.from_int(2) * f3.from_int(2), f3.one());
        assert_eq!(f3.from_int(2).inv().unwrap(), f3.from_int(2));
        let f4 = gf(2, 2);
        let t = f4.from_coeffs(&[0, 1]);
        let t1 = f4.from_coeffs(&[1, 1]);
        assert_eq!(&t + &t1, f4.one());
        assert_eq!(&t * &t, t1);
        assert_eq!(t.inv().unwrap(), t1);
        assert_eq!(f4.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = gf(2, 1).one();
        let b = gf(3, 1).one();
        assert_eq!(a.try_add(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.try_mul(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn enumeration_and_text() {
        let f2 = gf(2, 1);
        let names: Vec<String> = f2.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1"]);
        let f4 = gf(2, 2);
        let names: Vec<String> = f4.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
        for e in gf(3, 2).elements() {
            assert_eq!(gf(3, 2).parse_element(&e.to_string()).unwrap(), e);
        }
        assert_eq!(f4.parse_element("1+t").unwrap().to_string(), "t+1");
        assert_eq!(gf(5, 1).parse_element("-1").unwrap().to_string(), "4");
        assert!(f4.parse_element("t^2").is_err());
        assert!(f4.parse_element("x").is_err());
    }

    #[test]
    fn fields_compare_structurally() {
        assert_eq!(gf(3, 2), gf(3, 2));
        assert_ne!(gf(3, 1), gf(3, 2));
        assert_eq!(gf(3, 2).one(), gf(3, 2).one());
    }
}
