//! Dense matrices over GF(q) and Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Rank of the matrix whose rows are `rows`, by row reduction over the field.
/// All rows must have the same length and come from `field`.
pub fn rank(field: &Field, rows: &[Vec<FieldElement>]) -> Result<usize> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Ok(0);
    };
    for r in rows {
        if r.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: r.len(),
            });
        }
        if r.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
    }
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    Ok(row_reduce(&mut m, width))
}

/// In-place reduction to row echelon form over the first `width` columns;
/// returns the number of pivots.
fn row_reduce(m: &mut [Vec<FieldElement>], width: usize) -> usize {
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].inv().expect("pivot is nonzero");
        for c in col..m[pivot_row].len() {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for r in 0..m.len() {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..m[r].len() {
                let sub = &factor * &m[pivot_row][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    pivot_row
}

/// A square or rectangular matrix over GF(q), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
    field: Field,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    /// Convenience constructor from integer entries (reduced into the prime
    /// subfield).
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Result<Matrix> {
        let data = entries.iter().map(|&v| field.from_int(v)).collect();
        Matrix::new(field, rows, cols, data)
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let data = (0..n * n)
            .map(|k| if k / n == k % n { field.one() } else { field.zero() })
            .collect();
        Matrix {
            rows: n,
            cols: n,
            data,
            field: field.clone(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.row_vecs();
        row_reduce(&mut m, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let data = (0..self.rows * self.cols)
            .map(|k| self.get(k % self.rows, k / self.rows).clone())
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
            field: self.field.clone(),
        })
    }

    /// `self * v` for a column of coordinates.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(self.field.zero(), |acc, c| &acc + &(self.get(r, c) * &v[c]))
            })
            .collect())
    }

    /// Inverse by Gauss-Jordan elimination on `[self | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug: Vec<Vec<FieldElement>> = (0..n)
            .map(|r| {
                let mut row: Vec<FieldElement> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.extend((0..n).map(|c| {
                    if c == r {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        if row_reduce(&mut aug, n) < n {
            return Err(Error::SingularMatrix);
        }
        let data = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Matrix {
            rows: n,
            cols: n,
            data,
            field: self.field.clone(),
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .chunks(self.cols)
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// Every invertible `n x n` matrix over the field, in lexicographic order of
/// entry indices. Enumerates `q^(n^2)` candidates.
pub fn general_linear_group(field: &Field, n: usize) -> Vec<Matrix> {
    let q = field.order() as usize;
    let total = q.pow((n * n) as u32);
    let elements = field.elements();
    (0..total)
        .filter_map(|mut idx| {
            let mut data = vec![field.zero(); n * n];
            for slot in data.iter_mut().rev() {
                *slot = elements[idx % q].clone();
                idx /= q;
            }
            let m = Matrix {
                rows: n,
                cols: n,
                data,
                field: field.clone(),
            };
            m.is_invertible().then_some(m)
        })
        .collect()
}

/// A generating set of GL(2, q): the coordinate swap, the transvections
/// `[[1,k],[0,1]]` and the diagonal scalings `diag(k,1)` for nonzero `k`.
pub fn gl2_generators(field: &Field) -> Vec<Matrix> {
    let (zero, one) = (field.zero(), field.one());
    let mut gens = vec![Matrix {
        rows: 2,
        cols: 2,
        data: vec![zero.clone(), one.clone(), one.clone(), zero.clone()],
        field: field.clone(),
    }];
    for k in field.nonzero_elements() {
        gens.push(Matrix {
            rows: 2,
            cols: 2,
            data: vec![one.clone(), k.clone(), zero.clone(), one.clone()],
            field: field.clone(),
        });
        if !k.is_one() {
            gens.push(Matrix {
                rows: 2,
                cols: 2,
                data: vec![k, zero.clone(), zero.clone(), one.clone()],
                field: field.clone(),
            });
        }
    }
    gens
}
