//! Rank-two weight matrices: validation, standard form, deduplication keys
//! and random sampling.
//!
//! A weight matrix is a `2 × N` integer matrix whose columns `D_i = (a_i, b_i)`
//! are the weights of a `(C^×)^2` action on `C^N`. The stability vector is the
//! column sum `ω = (a, b)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, div_floor};

/// A `2 × N` integer weight matrix with `N ≥ 4`.
///
/// Construction only checks the shape and that the column sums fit in `i64`;
/// the geometric conditions are reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeightMatrix", into = "RawWeightMatrix")]
pub struct WeightMatrix {
    a: Vec<i64>,
    b: Vec<i64>,
    sum_a: i64,
    sum_b: i64,
}

#[derive(Serialize, Deserialize)]
struct RawWeightMatrix {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl TryFrom<RawWeightMatrix> for WeightMatrix {
    type Error = Error;

    fn try_from(raw: RawWeightMatrix) -> Result<Self> {
        WeightMatrix::new(raw.a, raw.b)
    }
}

impl From<WeightMatrix> for RawWeightMatrix {
    fn from(w: WeightMatrix) -> Self {
        RawWeightMatrix { a: w.a, b: w.b }
    }
}

impl WeightMatrix {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::RowLengthMismatch { top: a.len(), bottom: b.len() });
        }
        if a.len() < 4 {
            return Err(Error::TooFewColumns(a.len()));
        }
        let sum = |v: &[i64]| {
            v.iter()
                .try_fold(0i64, |acc, &x| acc.checked_add(x))
                .ok_or(Error::Overflow("column sum"))
        };
        let (sum_a, sum_b) = (sum(&a)?, sum(&b)?);
        Ok(WeightMatrix { a, b, sum_a, sum_b })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(columns: &[(i64, i64)]) -> Result<Self> {
        Self::new(columns.iter().map(|c| c.0).collect(), columns.iter().map(|c| c.1).collect())
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn column(&self, i: usize) -> (i64, i64) {
        (self.a[i], self.b[i])
    }

    pub fn columns(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.a.iter().copied().zip(self.b.iter().copied())
    }

    /// `a = Σ a_i`.
    pub fn sum_a(&self) -> i64 {
        self.sum_a
    }

    /// `b = Σ b_i`.
    pub fn sum_b(&self) -> i64 {
        self.sum_b
    }

    /// `a_i·b − b_i·a`, the signed position of column `i` relative to `ω`.
    ///
    /// Positive for columns clockwise of `ω` (the index set `s_+`).
    pub fn omega_cross(&self, i: usize) -> i128 {
        // |a_i·b| ≤ 2^126, so the difference fits in i128.
        self.a[i] as i128 * self.sum_b as i128 - self.b[i] as i128 * self.sum_a as i128
    }

    /// Both index sets `(s_+, s_−)`.
    pub fn sign_split(&self) -> (Vec<usize>, Vec<usize>) {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for i in 0..self.n() {
            match self.omega_cross(i).cmp(&0) {
                Ordering::Greater => plus.push(i),
                Ordering::Less => minus.push(i),
                Ordering::Equal => {}
            }
        }
        (plus, minus)
    }

    /// The same matrix with its rows exchanged.
    pub fn swap_rows(&self) -> WeightMatrix {
        WeightMatrix {
            a: self.b.clone(),
            b: self.a.clone(),
            sum_a: self.sum_b,
            sum_b: self.sum_a,
        }
    }

    /// `U·W` for a 2×2 integer matrix `U` (row-major).
    pub fn transform(&self, u: [[i64; 2]; 2]) -> Result<WeightMatrix> {
        let cols = self
            .columns()
            .map(|(x, y)| {
                let nx = u[0][0] as i128 * x as i128 + u[0][1] as i128 * y as i128;
                let ny = u[1][0] as i128 * x as i128 + u[1][1] as i128 * y as i128;
                Ok((to_i64(nx)?, to_i64(ny)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(&cols)
    }

    /// Reorders columns: column `k` of the result is column `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> WeightMatrix {
        let a = perm.iter().map(|&k| self.a[k]).collect();
        let b = perm.iter().map(|&k| self.b[k]).collect();
        WeightMatrix { a, b, sum_a: self.sum_a, sum_b: self.sum_b }
    }
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("weight entry"))
}

impl fmt::Display for WeightMatrix {
    /// Text form `a_1,…,a_N;b_1,…,b_N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.a)?;
        f.write_str(";")?;
        write_row(f, &self.b)
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[i64]) -> fmt::Result {
    for (k, x) in row.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl FromStr for WeightMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (top, bottom) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `a_1,…,a_N;b_1,…,b_N`, got {s:?}")))?;
        let row = |r: &str| -> Result<Vec<i64>> {
            r.split(',')
                .map(|x| {
                    x.parse::<i64>()
                        .map_err(|e| Error::Parse(format!("bad entry {x:?}: {e}")))
                })
                .collect()
        };
        WeightMatrix::new(row(top)?, row(bottom)?)
    }
}

/// Per-condition validation flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub columns_nonzero: bool,
    pub q_factorial: bool,
    pub picard_rank_two: bool,
    pub well_formed: bool,
    pub strictly_convex: bool,
    /// `{i | a_i·b − b_i·a > 0}` (0-based).
    pub s_plus: Vec<usize>,
    /// `{i | a_i·b − b_i·a < 0}` (0-based).
    pub s_minus: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.columns_nonzero
            && self.q_factorial
            && self.picard_rank_two
            && self.well_formed
            && self.strictly_convex
    }

    /// Names of the failing conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags = [
            (self.columns_nonzero, "columns_nonzero"),
            (self.strictly_convex, "strictly_convex"),
            (self.q_factorial, "q_factorial"),
            (self.picard_rank_two, "picard_rank_two"),
            (self.well_formed, "well_formed"),
        ];
        for (ok, name) in flags {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Evaluates the four retention conditions plus strict convexity.
///
/// * `q_factorial`: no column is parallel to `ω`.
/// * `picard_rank_two`: `dim S_+ = N − |s_−| ≥ 2` and `dim S_− = N − |s_+| ≥ 2`.
/// * `well_formed`: see [`is_well_formed`].
pub fn validate(w: &WeightMatrix) -> ValidationReport {
    let n = w.n();
    let columns_nonzero = w.columns().all(|c| c != (0, 0));
    let (s_plus, s_minus) = w.sign_split();
    let q_factorial = s_plus.len() + s_minus.len() == n;
    let picard_rank_two = n - s_minus.len() >= 2 && n - s_plus.len() >= 2;
    ValidationReport {
        columns_nonzero,
        q_factorial,
        picard_rank_two,
        well_formed: is_well_formed(w),
        strictly_convex: columns_nonzero && is_strictly_convex(w),
        s_plus,
        s_minus,
    }
}

#[inline]
fn minor(w: &WeightMatrix, i: usize, j: usize) -> i128 {
    w.a[i] as i128 * w.b[j] as i128 - w.b[i] as i128 * w.a[j] as i128
}

/// GCD of the 2×2 minors of `w` with column `skip` removed.
fn minor_gcd(w: &WeightMatrix, skip: Option<usize>) -> u128 {
    let mut g = 0u128;
    for i in 0..w.n() {
        if Some(i) == skip {
            continue;
        }
        for j in i + 1..w.n() {
            if Some(j) == skip {
                continue;
            }
            let m = minor(w, i, j).unsigned_abs();
            let (mut x, mut y) = (g, m);
            while y != 0 {
                let r = x % y;
                x = y;
                y = r;
            }
            g = x;
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// A weight matrix is standard when the GCD of its 2×2 minors is one.
pub fn is_standard(w: &WeightMatrix) -> bool {
    minor_gcd(w, None) == 1
}

/// True iff deleting any single column leaves a standard matrix.
pub fn is_well_formed(w: &WeightMatrix) -> bool {
    (0..w.n()).all(|k| minor_gcd(w, Some(k)) == 1)
}

/// Some `(u, v)` with `u·a_i + v·b_i > 0` for every column.
///
/// The feasible set is an open cone; when non-empty it contains either a
/// column itself (all columns on one ray) or the sum of two vectors on its
/// boundary rays, which are perpendicular to columns.
pub fn positive_functional(w: &WeightMatrix) -> Option<(i128, i128)> {
    if w.columns().any(|c| c == (0, 0)) {
        return None;
    }
    let works = |u: (i128, i128)| w.columns().all(|(x, y)| u.0 * x as i128 + u.1 * y as i128 > 0);
    for c in w.columns() {
        let u = (c.0 as i128, c.1 as i128);
        if works(u) {
            return Some(u);
        }
    }
    let perps: Vec<(i128, i128)> = w
        .columns()
        .flat_map(|(x, y)| [(-(y as i128), x as i128), (y as i128, -(x as i128))])
        .collect();
    for (k, p) in perps.iter().enumerate() {
        for q in &perps[k + 1..] {
            let u = (p.0 + q.0, p.1 + q.1);
            if u != (0, 0) && works(u) {
                return Some(u);
            }
        }
    }
    None
}

pub fn is_strictly_convex(w: &WeightMatrix) -> bool {
    positive_functional(w).is_some()
}

/// Fano index `gcd(a, b)`.
pub fn fano_index(w: &WeightMatrix) -> i64 {
    let g = lattice::gcd(w.sum_a as i128, w.sum_b as i128).expect("gcd of i64 values fits");
    g as i64
}

/// A weight matrix known to be in standard form: non-negative entries,
/// `b_1 = 0`, `a_1 ≥ 1`, columns in anticlockwise order and `a_N < b_N`.
///
/// Columns on a common ray are ordered by increasing Euclidean norm, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightMatrix", into = "WeightMatrix")]
pub struct StandardWeightMatrix(WeightMatrix);

impl StandardWeightMatrix {
    pub fn as_matrix(&self) -> &WeightMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> WeightMatrix {
        self.0
    }
}

impl std::ops::Deref for StandardWeightMatrix {
    type Target = WeightMatrix;

    fn deref(&self) -> &WeightMatrix {
        &self.0
    }
}

impl TryFrom<WeightMatrix> for StandardWeightMatrix {
    type Error = Error;

    /// Accepts `w` only if it already satisfies the standard-form invariants.
    fn try_from(w: WeightMatrix) -> Result<Self> {
        check_standard_form(&w)?;
        Ok(StandardWeightMatrix(w))
    }
}

impl From<StandardWeightMatrix> for WeightMatrix {
    fn from(s: StandardWeightMatrix) -> Self {
        s.0
    }
}

impl fmt::Display for StandardWeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Anticlockwise order for columns inside an open half-plane.
pub(crate) fn angular_order(p: (i64, i64), q: (i64, i64)) -> Ordering {
    let cross = p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128;
    if cross > 0 {
        Ordering::Less
    } else if cross < 0 {
        Ordering::Greater
    } else {
        let np = p.0 as i128 * p.0 as i128 + p.1 as i128 * p.1 as i128;
        let nq = q.0 as i128 * q.0 as i128 + q.1 as i128 * q.1 as i128;
        np.cmp(&nq).then(p.cmp(&q))
    }
}

fn check_standard_form(w: &WeightMatrix) -> Result<()> {
    let n = w.n();
    if w.a.iter().chain(&w.b).any(|&x| x < 0) {
        return Err(Error::NotStandard("negative entry"));
    }
    if w.b[0] != 0 || w.a[0] < 1 {
        return Err(Error::NotStandard("first column must be (a_1, 0) with a_1 ≥ 1"));
    }
    if w.a[n - 1] >= w.b[n - 1] {
        return Err(Error::NotStandard("last column must have a_N < b_N"));
    }
    if w.columns().any(|c| c == (0, 0)) {
        return Err(Error::NotStandard("zero column"));
    }
    let sorted = (1..n).all(|k| angular_order(w.column(k - 1), w.column(k)) != Ordering::Greater);
    if !sorted {
        return Err(Error::NotStandard("columns not in anticlockwise order"));
    }
    Ok(())
}

/// Sorts the columns anticlockwise (ties by norm, then lexicographically).
///
/// Only meaningful when all columns are nonzero and lie in an open half-plane
/// whose boundary is not crossed by the ordering, e.g. the first quadrant.
pub fn sort_columns(w: &WeightMatrix) -> WeightMatrix {
    let mut cols: Vec<(i64, i64)> = w.columns().collect();
    cols.sort_by(|&p, &q| angular_order(p, q));
    WeightMatrix::from_columns(&cols).expect("same shape")
}

/// Brings `w` to standard form with an `SL_2(Z)` change of basis and a column
/// permutation.
///
/// The clockwise-most ray is rotated onto the positive horizontal axis; the
/// remaining shear freedom is fixed by `0 ≤ a_N < b_N` for the anticlockwise-most
/// column.
pub fn standardize(w: &WeightMatrix) -> Result<StandardWeightMatrix> {
    if let Some(i) = w.columns().position(|c| c == (0, 0)) {
        return Err(Error::ZeroColumn(i));
    }
    if !is_strictly_convex(w) {
        return Err(Error::NotStrictlyConvex);
    }
    let cols: Vec<(i128, i128)> = w.columns().map(|(x, y)| (x as i128, y as i128)).collect();
    let cross = |p: (i128, i128), q: (i128, i128)| p.0 * q.1 - p.1 * q.0;

    // Clockwise-most column: every other column is anticlockwise of or parallel to it.
    let first = *cols
        .iter()
        .find(|&&p| cols.iter().all(|&q| cross(p, q) >= 0))
        .ok_or(Error::NotStrictlyConvex)?;
    let (g, s, t) = lattice::egcd(first.0, first.1)?;
    // U = [[s, t], [-b0/g, a0/g]] has determinant 1 and sends `first` to (g, 0).
    let (r0, r1) = ((s, t), (-first.1 / g, first.0 / g));
    let rotated: Vec<(i128, i128)> = cols
        .iter()
        .map(|&(x, y)| -> Result<(i128, i128)> {
            let nx = lattice::add(lattice::mul(r0.0, x)?, lattice::mul(r0.1, y)?)?;
            let ny = lattice::add(lattice::mul(r1.0, x)?, lattice::mul(r1.1, y)?)?;
            Ok((nx, ny))
        })
        .collect::<Result<_>>()?;

    let last = *rotated
        .iter()
        .find(|&&p| rotated.iter().all(|&q| cross(q, p) >= 0))
        .ok_or(Error::NotStrictlyConvex)?;
    if last.1 == 0 {
        return Err(Error::AllColumnsParallel);
    }
    let shear = -div_floor(last.0, last.1);
    let standard: Vec<(i64, i64)> = rotated
        .iter()
        .map(|&(x, y)| {
            let nx = lattice::add(x, lattice::mul(shear, y)?)?;
            Ok((to_i64(nx)?, to_i64(y)?))
        })
        .collect::<Result<_>>()?;
    let out = sort_columns(&WeightMatrix::from_columns(&standard)?);
    debug_assert!(check_standard_form(&out).is_ok(), "standardize produced {out}");
    Ok(StandardWeightMatrix(out))
}

/// Deduplication key for the variety a valid weight matrix defines.
///
/// Orientation-reversing changes of basis also give the same variety, so the
/// key is the smaller (as bytes of the text form) of the standard forms of
/// `W` and of `W` with rows exchanged.
pub fn canonical_key(w: &WeightMatrix) -> Result<Vec<u8>> {
    let direct = standardize(w)?.to_string().into_bytes();
    let flipped = standardize(&w.swap_rows())?.to_string().into_bytes();
    Ok(direct.min(flipped))
}

/// Draws a random matrix in the sampling shape of the balanced dataset and
/// returns it once its cyclically ordered columns form a standard matrix.
///
/// `a_1, b_N` are uniform on `1..=bound`, `a_N` on `0..b_N`, `b_1 = 0` and all
/// other entries uniform on `0..=bound`. Draws containing a zero column are
/// discarded and redrawn. Validity (conditions 1–4) is not checked here.
pub fn sample_random<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> StandardWeightMatrix {
    assert!(n >= 4, "need at least 4 columns");
    assert!(bound >= 1, "bound must be positive");
    loop {
        let mut a = vec![0i64; n];
        let mut b = vec![0i64; n];
        a[0] = rng.gen_range(1..=bound);
        for k in 1..n - 1 {
            a[k] = rng.gen_range(0..=bound);
            b[k] = rng.gen_range(0..=bound);
        }
        b[n - 1] = rng.gen_range(1..=bound);
        a[n - 1] = rng.gen_range(0..b[n - 1]);
        if a.iter().zip(&b).any(|(&x, &y)| x == 0 && y == 0) {
            continue;
        }
        let w = WeightMatrix::new(a, b).expect("shape checked");
        let sorted = sort_columns(&w);
        if let Ok(s) = StandardWeightMatrix::try_from(sorted) {
            return s;
        }
    }
}

/// Samples until the matrix passes every validation condition.
pub fn sample_valid<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> StandardWeightMatrix {
    loop {
        let w = sample_random(n, bound, rng);
        if validate(&w).is_valid() {
            return w;
        }
    }
}

/// Block product matrix `[[u, 0], [0, v]]` of two weight vectors, in standard form.
pub fn product_matrix(u: &[i64], v: &[i64]) -> Result<StandardWeightMatrix> {
    let mut a = u.to_vec();
    a.extend(std::iter::repeat(0).take(v.len()));
    let mut b = vec![0; u.len()];
    b.extend_from_slice(v);
    standardize(&WeightMatrix::new(a, b)?)
}
