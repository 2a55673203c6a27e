//! Exact feasibility of `A x = b, x >= 0` over the rationals.
//!
//! Phase-one simplex on a dense tableau with one artificial variable per row
//! and Bland's rule, in arbitrary-precision rational arithmetic. The outcome
//! always carries a certificate that can be checked independently:
//! a nonnegative solution, or a Farkas vector `y` with `yᵀA <= 0` and
//! `yᵀb > 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

pub fn big(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Decides feasibility of `a x = b`, `x >= 0`. `a` is row-major with every
/// row of the same length.
pub fn feasibility(a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = a.first().map(Vec::len).unwrap_or(0);
    assert_eq!(b.len(), m, "one right-hand side per row");

    // Columns: n originals, m artificials, then the rhs.
    let width = n + m + 1;
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let sign = if rhs.is_negative() {
            flipped[i] = true;
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let mut r = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = v * &sign;
        }
        r[n + i] = BigRational::one();
        r[width - 1] = rhs * &sign;
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials), with
    // the negated objective value in the last slot.
    let mut cost = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &best {
                None => true,
                Some(bv) => ratio < *bv || (ratio == *bv && basis[i] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        // The phase-one objective is bounded below by zero, so a column with a
        // negative reduced cost always has a positive entry.
        let row = leave.expect("phase one is bounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    if cost[width - 1].is_zero() {
        let mut x = vec![BigRational::zero(); n];
        for (i, &var) in basis.iter().enumerate() {
            if var < n {
                x[var] = t[i][width - 1].clone();
            }
        }
        LpOutcome::Feasible(x)
    } else {
        // Reduced cost of artificial i is 1 - y_i.
        let y = (0..m)
            .map(|i| {
                let yi = BigRational::one() - &cost[n + i];
                if flipped[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        LpOutcome::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

/// True iff `x >= 0` and `a x = b` exactly.
pub fn verify_solution(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, rhs)| {
            row.len() == x.len()
                && row
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (aij, xj)| acc + aij * xj)
                    == *rhs
        })
}

/// True iff `yᵀA <= 0` column-wise and `yᵀb > 0`, which rules out any
/// nonnegative solution.
pub fn verify_farkas(a: &[Vec<BigRational>], b: &[BigRational], y: &[BigRational]) -> bool {
    if y.len() != a.len() {
        return false;
    }
    let n = a.first().map(Vec::len).unwrap_or(0);
    let columns_ok = (0..n).all(|j| {
        !a.iter()
            .zip(y)
            .fold(BigRational::zero(), |acc, (row, yi)| acc + &row[j] * yi)
            .is_positive()
    });
    let yb = b
        .iter()
        .zip(y)
        .fold(BigRational::zero(), |acc, (bi, yi)| acc + bi * yi);
    columns_ok && yb.is_positive()
}
