//! Smith normal form of small integer matrices, with the unimodular
//! transforms, in checked `i128` arithmetic.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i128>>;

/// `U·M·V = S` with `U`, `V` unimodular and `S` diagonal, each diagonal entry
/// nonnegative and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
}

impl Smith {
    /// The diagonal of `S`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i])
            .collect()
    }
}

fn overflow() -> Error {
    Error::CapExceeded {
        what: "integer overflow in Smith normal form".into(),
        limit: i128::MAX as u64,
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

/// `row[dst] -= q * row[src]`.
fn row_sub(m: &mut IntMatrix, dst: usize, src: usize, q: i128) -> Result<()> {
    for c in 0..m[dst].len() {
        let t = q.checked_mul(m[src][c]).ok_or_else(overflow)?;
        m[dst][c] = m[dst][c].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

/// `col[dst] -= q * col[src]`.
fn col_sub(m: &mut IntMatrix, dst: usize, src: usize, q: i128) -> Result<()> {
    for row in m.iter_mut() {
        let t = q.checked_mul(row[src]).ok_or_else(overflow)?;
        row[dst] = row[dst].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_negate(m: &mut IntMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -*x;
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<Smith> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged integer matrix".into()));
    }
    let mut s = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| s[i][j] != 0)
                .min_by_key(|&(i, j)| s[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Ok(Smith { u, v, s });
            };
            s.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut s, t, pj);
            col_swap(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[i][t].div_euclid(s[t][t]);
                if q != 0 {
                    row_sub(&mut s, i, t, q)?;
                    row_sub(&mut u, i, t, q)?;
                }
                clean &= s[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = s[t][j].div_euclid(s[t][t]);
                if q != 0 {
                    col_sub(&mut s, j, t, q)?;
                    col_sub(&mut v, j, t, q)?;
                }
                clean &= s[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| s[i][j] % s[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    row_sub(&mut s, t, i, -1)?;
                    row_sub(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if s[t][t] < 0 {
            row_negate(&mut s, t);
            row_negate(&mut u, t);
        }
    }
    Ok(Smith { u, v, s })
}
