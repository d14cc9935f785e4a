//! Routh–Hurwitz stability tables.
//!
//! The verdict is deliberately conservative: any zero pivot (or a whole zero
//! row) is reported as *not* Hurwitz. Strict left-half-plane membership is
//! what every caller needs; marginal polynomials are rejections, so the
//! classic epsilon-row continuation is intentionally absent.

use num_traits::Zero;

use super::{Coeff, Polynomial};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A fully built Routh array plus the derived verdict data.
#[derive(Debug, Clone)]
pub struct RouthTable<T: Coeff> {
    /// Rows of the array, from the `s^n` row down to `s^0` (rows after a
    /// zero pivot are absent).
    pub rows: Vec<Vec<T>>,
    /// First column of the built rows.
    pub first_column: Vec<T>,
    /// Sign alternations along the first column (zeros excluded).
    pub sign_changes: usize,
    /// True if construction hit a zero pivot or zero row.
    pub zero_pivot: bool,
}

impl<T: Coeff> RouthTable<T> {
    /// Strict Hurwitz verdict: complete table, no zero pivots, and a
    /// sign-constant first column.
    pub fn is_hurwitz(&self) -> bool {
        !self.zero_pivot && self.sign_changes == 0
    }
}

/// Builds the Routh array for `p`.
///
/// Requires degree ≥ 1 and a positive leading coefficient; the verdict then
/// reads "all roots strictly in the open left half-plane".
pub fn routh_hurwitz<T: Coeff>(p: &Polynomial<T>) -> Result<RouthTable<T>> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        got => return Err(Error::Degree { expected: 1, got }),
    };
    if p.leading() <= T::zero() {
        return Err(Error::Range(format!(
            "leading coefficient must be positive, got {:?}",
            p.leading()
        )));
    }
    let desc = p.descending_coeffs(n + 1);
    let width = n / 2 + 1;
    let mut rows: Vec<Vec<T>> = vec![vec![T::zero(); width]; 2];
    for (i, c) in desc.iter().enumerate() {
        rows[i % 2][i / 2] = c.clone();
    }
    let mut zero_pivot = false;
    for i in 2..=n {
        let pivot = rows[i - 1][0].clone();
        if pivot.is_zero() {
            zero_pivot = true;
            rows.truncate(i);
            break;
        }
        let mut row = vec![T::zero(); width];
        for (j, slot) in row.iter_mut().enumerate().take(width - 1) {
            let above = rows[i - 2][j + 1].clone();
            let left = rows[i - 1][j + 1].clone();
            *slot = (pivot.clone() * above - rows[i - 2][0].clone() * left) / pivot.clone();
        }
        rows.push(row);
    }
    let first_column: Vec<T> = rows.iter().map(|r| r[0].clone()).collect();
    if first_column.iter().any(Zero::is_zero) {
        zero_pivot = true;
    }
    let mut sign_changes = 0;
    let mut last: Option<bool> = None;
    for v in &first_column {
        if v.is_zero() {
            continue;
        }
        let pos = *v > T::zero();
        if let Some(prev) = last {
            if prev != pos {
                sign_changes += 1;
            }
        }
        last = Some(pos);
    }
    Ok(RouthTable {
        rows,
        first_column,
        sign_changes,
        zero_pivot,
    })
}

/// Convenience verdict; `false` when the table cannot be built (degree < 1 or
/// nonpositive leading coefficient).
pub fn is_hurwitz(p: &Polynomial<Rat>) -> bool {
    routh_hurwitz(p).map(|t| t.is_hurwitz()).unwrap_or(false)
}
