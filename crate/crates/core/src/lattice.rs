//! Integer linear algebra used by the fan construction and the cone oracle.
//!
//! Everything works over `i128` with checked arithmetic; an operation that
//! would leave the representable range reports [`Error::Overflow`] rather than
//! wrapping. Inputs coming from weight matrices are `i64`, so products of two
//! entries never overflow, but elimination can grow entries and is checked.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
pub type IntMatrix = Vec<Vec<i128>>;

#[inline]
pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("lattice multiply"))
}

#[inline]
pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("lattice add"))
}

#[inline]
pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("lattice subtract"))
}

/// Non-negative greatest common divisor, with `gcd(0, x) = |x|`.
pub fn gcd(a: i128, b: i128) -> Result<i128> {
    let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    i128::try_from(x).map_err(|_| Error::Overflow("gcd"))
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
///
/// `egcd(a, 0)` gives `(|a|, sign(a), 0)`; standardization relies on that
/// for idempotence.
pub fn egcd(a: i128, b: i128) -> Result<(i128, i128, i128)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        let nr = sub(old_r, mul(q, r)?)?;
        old_r = r;
        r = nr;
        let ns = sub(old_s, mul(q, s)?)?;
        old_s = s;
        s = ns;
        let nt = sub(old_t, mul(q, t)?)?;
        old_t = t;
        t = nt;
    }
    if old_r < 0 {
        old_r = old_r.checked_neg().ok_or(Error::Overflow("egcd"))?;
        old_s = -old_s;
        old_t = -old_t;
    }
    Ok((old_r, old_s, old_t))
}

/// Floor division for a positive divisor.
pub fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if (a % b) < 0 {
        q - 1
    } else {
        q
    }
}

/// Basis of the integer right kernel of `m` (rows of length `ncols`).
///
/// Column-style Hermite elimination with a tracked unimodular transform `V`:
/// once `m·V = [H | 0]`, the columns of `V` under the zero block form a
/// basis of `{x ∈ Z^n : m·x = 0}`. Returned vectors are these columns.
pub fn integer_kernel(m: &[Vec<i128>], ncols: usize) -> Result<Vec<Vec<i128>>> {
    let mut a: IntMatrix = m.to_vec();
    // v stored column-major: v[c] is column c of V.
    let mut v: IntMatrix = (0..ncols)
        .map(|c| {
            let mut col = vec![0i128; ncols];
            col[c] = 1;
            col
        })
        .collect();

    let mut pivot = 0usize;
    for row in 0..a.len() {
        if pivot >= ncols {
            break;
        }
        for c in pivot + 1..ncols {
            let y = a[row][c];
            if y == 0 {
                continue;
            }
            let x = a[row][pivot];
            let (g, s, t) = egcd(x, y)?;
            let (xg, yg) = (x / g, y / g);
            for r in 0..a.len() {
                let (p, q) = (a[r][pivot], a[r][c]);
                a[r][pivot] = add(mul(s, p)?, mul(t, q)?)?;
                a[r][c] = sub(mul(xg, q)?, mul(yg, p)?)?;
            }
            for k in 0..ncols {
                let (p, q) = (v[pivot][k], v[c][k]);
                v[pivot][k] = add(mul(s, p)?, mul(t, q)?)?;
                v[c][k] = sub(mul(xg, q)?, mul(yg, p)?)?;
            }
        }
        if a[row][pivot] != 0 {
            pivot += 1;
        }
    }
    Ok(v.split_off(pivot))
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Output rows are in echelon form with positive pivots; entries above each
/// pivot lie in `[0, pivot)`. Zero rows are dropped, so the result is the
/// unique HNF basis of the row lattice.
pub fn hermite_normal_form(m: &[Vec<i128>]) -> Result<IntMatrix> {
    let mut rows: IntMatrix = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out_row = 0usize;
    for col in 0..ncols {
        if out_row >= rows.len() {
            break;
        }
        // Gather the gcd of this column (rows out_row..) into out_row.
        for r in out_row + 1..rows.len() {
            let y = rows[r][col];
            if y == 0 {
                continue;
            }
            let x = rows[out_row][col];
            let (g, s, t) = egcd(x, y)?;
            let (xg, yg) = (x / g, y / g);
            for k in 0..ncols {
                let (p, q) = (rows[out_row][k], rows[r][k]);
                rows[out_row][k] = add(mul(s, p)?, mul(t, q)?)?;
                rows[r][k] = sub(mul(xg, q)?, mul(yg, p)?)?;
            }
        }
        if rows[out_row][col] == 0 {
            continue;
        }
        if rows[out_row][col] < 0 {
            for k in 0..ncols {
                rows[out_row][k] = -rows[out_row][k];
            }
        }
        let p = rows[out_row][col];
        for r in 0..out_row {
            let q = div_floor(rows[r][col], p);
            if q != 0 {
                for k in 0..ncols {
                    rows[r][k] = sub(rows[r][k], mul(q, rows[out_row][k])?)?;
                }
            }
        }
        out_row += 1;
    }
    rows.truncate(out_row);
    Ok(rows)
}

/// Smith decomposition `U·M·V = D` of a square or rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invariant factors `d_1 | d_2 | … `, all non-negative.
    pub diagonal: Vec<i128>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            let mut r = vec![0i128; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &[Vec<i128>]) -> Result<SmithForm> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut d: IntMatrix = m.to_vec();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        d.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_j -= q * row_i
    fn row_axpy(x: &mut IntMatrix, target: usize, source: usize, q: i128) -> Result<()> {
        for k in 0..x[0].len() {
            x[target][k] = sub(x[target][k], mul(q, x[source][k])?)?;
        }
        Ok(())
    }
    fn col_axpy(x: &mut IntMatrix, target: usize, source: usize, q: i128) -> Result<()> {
        for row in x.iter_mut() {
            row[target] = sub(row[target], mul(q, row[source])?)?;
        }
        Ok(())
    }

    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize, u128)> = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |(_, _, b)| x.unsigned_abs() < b) {
                        best = Some((i, j, x.unsigned_abs()));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            if pi != t {
                swap_rows(&mut d, &mut u, pi, t);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, pj, t);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                if d[i][t] != 0 {
                    let q = d[i][t] / p;
                    row_axpy(&mut d, i, t, q)?;
                    row_axpy(&mut u, i, t, q)?;
                    clean &= d[i][t] == 0;
                }
            }
            for j in t + 1..ncols {
                if d[t][j] != 0 {
                    let q = d[t][j] / p;
                    col_axpy(&mut d, j, t, q)?;
                    col_axpy(&mut v, j, t, q)?;
                    clean &= d[t][j] == 0;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a non-divisible row into the pivot row.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for k in 0..ncols {
                d[t][k] = -d[t][k];
            }
            for k in 0..nrows {
                u[t][k] = -u[t][k];
            }
        }
    }
    let diagonal = (0..steps).map(|i| d[i][i]).collect();
    Ok(SmithForm { diagonal, u, v })
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    mul(sign, a[n - 1][n - 1])
}

pub fn mat_mul(x: &[Vec<i128>], y: &[Vec<i128>]) -> Result<IntMatrix> {
    let inner = y.len();
    let ncols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).try_fold(0i128, |acc, k| add(acc, mul(row[k], y[k][j])?)))
                .collect()
        })
        .collect()
}
