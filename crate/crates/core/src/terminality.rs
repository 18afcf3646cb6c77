//! Terminality of the toric variety of a weight matrix, decided three ways.
//!
//! * [`terminal_prop1`] works directly from the weights. `P = conv{e_1..e_N}`
//!   is triangulated by the simplices `Δ_i = conv{e_j : j ≠ i}` for `i` in
//!   either `s_+` or `s_−`; each `Δ_i` is tested for stray lattice points by
//!   enumerating the finite group generated by `α_i/f_i` and `β_i/g_i` modulo
//!   `Z^(N−1)` in barycentric coordinates.
//! * [`oracle_terminal_fan`] builds the fan and, for every maximal cone,
//!   enumerates the quotient of the lattice by the cone's generators.
//! * [`oracle_terminal_polytope`] enumerates lattice points of `P` directly
//!   (low dimension only).
//!
//! [`wps_terminal`] is the rank-one analogue for weighted projective spaces.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{self, Fan};
use crate::lattice;
use crate::weights::StandardWeightMatrix;

/// Integer data attached to the simplex `Δ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexInvariants {
    /// The omitted vertex `i` (0-based).
    pub vertex: usize,
    /// `g_i = gcd(a_i, b_i)`.
    pub g: i64,
    /// `(A_i, B_i)` with `A_i·a_i + B_i·b_i = g_i`.
    pub bezout: (i64, i64),
    /// `α_i^j = (a_j·b_i − b_j·a_i) / g_i`.
    pub alpha: Vec<i64>,
    /// `β_i^j = −A_i·a_j − B_i·b_j`.
    pub beta: Vec<i64>,
    pub alpha_sum: i64,
    pub beta_sum: i64,
    /// `f_i = |α_i|·g_i / gcd(g_i, β_i)`.
    pub f: i64,
}

fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

fn check_vertex(w: &StandardWeightMatrix, i: usize) -> Result<()> {
    if i >= w.n() {
        return Err(Error::Invalid(format!("vertex index {i} out of range for N = {}", w.n())));
    }
    Ok(())
}

/// Invariants of `Δ_i` using the Bézout pair from the extended Euclidean algorithm.
pub fn simplex_invariants(w: &StandardWeightMatrix, i: usize) -> Result<SimplexInvariants> {
    check_vertex(w, i)?;
    let (ai, bi) = (w.a()[i] as i128, w.b()[i] as i128);
    let (_, s, t) = lattice::egcd(ai, bi)?;
    simplex_invariants_with_bezout(w, i, (narrow(s, "bezout")?, narrow(t, "bezout")?))
}

/// Invariants of `Δ_i` for a caller-supplied Bézout pair.
pub fn simplex_invariants_with_bezout(
    w: &StandardWeightMatrix,
    i: usize,
    bezout: (i64, i64),
) -> Result<SimplexInvariants> {
    check_vertex(w, i)?;
    let n = w.n();
    let (ai, bi) = (w.a()[i] as i128, w.b()[i] as i128);
    let g = lattice::gcd(ai, bi)?;
    if g == 0 {
        return Err(Error::ZeroColumn(i));
    }
    let (big_a, big_b) = (bezout.0 as i128, bezout.1 as i128);
    if lattice::add(lattice::mul(big_a, ai)?, lattice::mul(big_b, bi)?)? != g {
        return Err(Error::Invalid(format!("{bezout:?} is not a Bézout pair for column {i}")));
    }
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for (aj, bj) in w.columns() {
        let (aj, bj) = (aj as i128, bj as i128);
        let num = lattice::sub(lattice::mul(aj, bi)?, lattice::mul(bj, ai)?)?;
        debug_assert_eq!(num % g, 0, "α numerator must be divisible by g_i");
        alpha.push(narrow(num / g, "alpha")?);
        let b = lattice::sub(-lattice::mul(big_a, aj)?, lattice::mul(big_b, bj)?)?;
        beta.push(narrow(b, "beta")?);
    }
    let alpha_sum: i128 = alpha.iter().map(|&x| x as i128).sum();
    let beta_sum: i128 = beta.iter().map(|&x| x as i128).sum();
    if alpha_sum == 0 {
        return Err(Error::Invalid(format!("column {i} is parallel to the column sum")));
    }
    let f = lattice::mul(alpha_sum.abs(), g)? / lattice::gcd(g, beta_sum)?;
    Ok(SimplexInvariants {
        vertex: i,
        g: narrow(g, "g")?,
        bezout,
        alpha,
        beta,
        alpha_sum: narrow(alpha_sum, "alpha sum")?,
        beta_sum: narrow(beta_sum, "beta sum")?,
        f: narrow(f, "f")?,
    })
}

/// Searches the `(k, l)` grid for a class whose fractional vector sums to one
/// but is not the barycentric vector of the origin. Returns the first such pair.
///
/// A class with fractional sum one is the lattice point of `Δ_i` with those
/// barycentric coordinates. It is the origin only if they equal `α^j/α_i`
/// exactly, which requires every `α^j/α_i ≥ 0`; matching fractional parts
/// alone is not enough when the origin lies outside `Δ_i`.
///
/// Residues are kept as `i64` numerators over `M = f·g`, advanced
/// incrementally, so the inner loop is additions and comparisons only. Cost is
/// `O(f·g·N)`. Fails with `Overflow` if `M·(N+1)` exceeds `i64`.
pub fn prop1_witness(inv: &SimplexInvariants) -> Result<Option<(i64, i64)>> {
    let (f, g) = (inv.f as i128, inv.g as i128);
    let wide = lattice::mul(f, g)?;
    // Sums of up to N numerators below M must stay representable.
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("prop1 modulus"));
    narrow(lattice::mul(wide, inv.alpha.len() as i128 + 1)?)?;
    let modulus = narrow(wide)?;
    let alpha_abs = (inv.alpha_sum as i128).abs();
    let sign = (inv.alpha_sum as i128).signum();
    let scale = wide / alpha_abs;

    let step_k: Vec<i64> = inv
        .alpha
        .iter()
        .map(|&x| narrow(lattice::mul(x as i128, g)?.rem_euclid(wide)))
        .collect::<Result<_>>()?;
    let step_l: Vec<i64> = inv
        .beta
        .iter()
        .map(|&x| narrow(lattice::mul(x as i128, f)?.rem_euclid(wide)))
        .collect::<Result<_>>()?;
    // Barycentric coordinates α^j/α_i of the origin over M, when it lies in Δ_i.
    // Otherwise no class is the origin, even one sharing its fractional parts.
    let origin: Option<Vec<i64>> = if inv.alpha.iter().all(|&x| x as i128 * sign >= 0) {
        Some(
            inv.alpha
                .iter()
                .map(|&x| narrow(lattice::mul(x as i128 * sign, scale)?))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    let n = step_k.len();
    let mut base = vec![0i64; n];
    let mut cur = vec![0i64; n];
    for l in 0..inv.g {
        cur.copy_from_slice(&base);
        let mut total: i64 = cur.iter().sum();
        for k in 0..inv.f {
            if total == modulus && origin.as_deref() != Some(cur.as_slice()) {
                return Ok(Some((k, l)));
            }
            total = advance(&mut cur, &step_k, modulus);
        }
        advance(&mut base, &step_l, modulus);
    }
    Ok(None)
}

/// Adds `step` to `cur` modulo `m` and returns the new sum.
/// Entries stay in `[0, m)`, so nothing overflows once `m·(N+1)` fits.
#[inline]
fn advance(cur: &mut [i64], step: &[i64], m: i64) -> i64 {
    let mut total = 0i64;
    for (c, &s) in cur.iter_mut().zip(step) {
        let v = c.wrapping_add(s);
        let v = if v >= m { v.wrapping_sub(m) } else { v };
        *c = v;
        total = total.wrapping_add(v);
    }
    total
}

/// True iff the only lattice points of `Δ_i` are its vertices and the origin.
pub fn is_mostly_empty_prop1(w: &StandardWeightMatrix, i: usize) -> Result<bool> {
    Ok(prop1_witness(&simplex_invariants(w, i)?)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Prop1,
    FanOracle,
    PolytopeOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Prop1 => "prop1",
            Method::FanOracle => "fan_oracle",
            Method::PolytopeOracle => "polytope_oracle",
        }
    }
}

/// Evidence of non-terminality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A `(k, l)` class of `Δ_vertex` violating the criterion.
    Simplex { vertex: usize, k: i64, l: i64 },
    /// A lattice point of `P` (or of a cone's simplex) that is neither a vertex nor the origin.
    LatticePoint {
        point: Vec<i64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        cone: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalityVerdict {
    pub terminal: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl TerminalityVerdict {
    pub fn terminal(method: Method) -> Self {
        TerminalityVerdict { terminal: true, method, witness: None }
    }

    pub fn non_terminal(method: Method, witness: Witness) -> Self {
        TerminalityVerdict { terminal: false, method, witness: Some(witness) }
    }
}

/// The smaller of `s_+` and `s_−` (ties pick `s_+`).
pub fn triangulation_indices(w: &StandardWeightMatrix) -> Vec<usize> {
    let (plus, minus) = w.sign_split();
    if minus.len() < plus.len() {
        minus
    } else {
        plus
    }
}

/// Terminality straight from the weights.
pub fn terminal_prop1(w: &StandardWeightMatrix) -> Result<TerminalityVerdict> {
    for i in triangulation_indices(w) {
        let inv = simplex_invariants(w, i)?;
        if let Some((k, l)) = prop1_witness(&inv)? {
            return Ok(TerminalityVerdict::non_terminal(Method::Prop1, Witness::Simplex { vertex: i, k, l }));
        }
    }
    Ok(TerminalityVerdict::terminal(Method::Prop1))
}

/// Lattice points of the simplex `conv(0, generators)` other than its vertices,
/// found by enumerating `Z^d / (generator lattice)` through a Smith decomposition.
///
/// `generators` has the cone's rays as columns.
pub fn cone_witness(generators: &[Vec<i128>]) -> Result<Option<Vec<i64>>> {
    let d = generators.len();
    let snf = lattice::smith_normal_form(generators)?;
    if snf.diagonal.iter().any(|&x| x == 0) {
        return Err(Error::DegenerateCone(Vec::new()));
    }
    let top = *snf.diagonal.last().unwrap_or(&1);
    let factors: Vec<(usize, i128)> =
        snf.diagonal.iter().enumerate().filter(|(_, &x)| x > 1).map(|(m, &x)| (m, x)).collect();
    if factors.is_empty() {
        return Ok(None);
    }
    // λ = V·D⁻¹·y, scaled by `top`: column m of V contributes V[·][m]·top/d_m per unit of y_m.
    let steps: Vec<Vec<i128>> = factors
        .iter()
        .map(|&(m, dm)| {
            (0..d)
                .map(|k| Ok(lattice::mul(snf.v[k][m], top / dm)?.rem_euclid(top)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut digits = vec![0i128; factors.len()];
    let mut lambda = vec![0i128; d];
    loop {
        // advance the mixed-radix counter; lambda tracks Σ y_m·step_m mod top
        let mut pos = 0;
        loop {
            if pos == factors.len() {
                return Ok(None);
            }
            digits[pos] += 1;
            for k in 0..d {
                lambda[k] = (lambda[k] + steps[pos][k]) % top;
            }
            if digits[pos] < factors[pos].1 {
                break;
            }
            // wrapped: this digit returned to zero (d_m·step ≡ 0 mod top)
            digits[pos] = 0;
            pos += 1;
        }
        let total: i128 = lambda.iter().sum();
        if total <= top {
            // `lambda` is never zero here: y ≠ 0 represents a nonzero class.
            let point = (0..d)
                .map(|r| {
                    let s = (0..d).try_fold(0i128, |acc, k| {
                        lattice::add(acc, lattice::mul(generators[r][k], lambda[k])?)
                    })?;
                    debug_assert_eq!(s % top, 0);
                    narrow(s / top, "witness point")
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(point));
        }
    }
}

/// Terminality by building the fan and checking every maximal cone.
pub fn oracle_terminal_fan(w: &StandardWeightMatrix) -> Result<TerminalityVerdict> {
    let fan = Fan::new(w)?;
    oracle_terminal_fan_with(&fan)
}

/// Cone-by-cone check on an already constructed fan.
pub fn oracle_terminal_fan_with(fan: &Fan) -> Result<TerminalityVerdict> {
    for cone in &fan.cones.cones {
        let generators = fan::cone_matrix(&fan.rays, cone);
        let found = cone_witness(&generators).map_err(|e| match e {
            Error::DegenerateCone(_) => Error::DegenerateCone(cone.clone()),
            other => other,
        })?;
        if let Some(point) = found {
            return Ok(TerminalityVerdict::non_terminal(
                Method::FanOracle,
                Witness::LatticePoint { point, cone: Some(cone.clone()) },
            ));
        }
    }
    Ok(TerminalityVerdict::terminal(Method::FanOracle))
}

/// Largest `N − 2` accepted by [`oracle_terminal_polytope`].
pub const POLYTOPE_MAX_DIM: usize = 4;

/// Integer barycentric solver for one simplex: `λ·det = adj·(x, 1)`.
struct BarycentricSolver {
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl BarycentricSolver {
    /// `vertices` are `d + 1` points of `Z^d`.
    fn new(vertices: &[&Vec<i64>]) -> Result<Self> {
        let size = vertices.len();
        let mut m: Vec<Vec<Ratio<i128>>> = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| {
                        if r + 1 == size {
                            Ratio::from_integer(1)
                        } else {
                            Ratio::from_integer(vertices[c][r] as i128)
                        }
                    })
                    .collect()
            })
            .collect();
        let int_m: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
        let det = lattice::determinant(&int_m)?;
        if det == 0 {
            return Err(Error::Invalid("simplex is degenerate".into()));
        }
        // Gauss–Jordan on [m | I].
        let mut inv: Vec<Vec<Ratio<i128>>> = (0..size)
            .map(|r| (0..size).map(|c| Ratio::from_integer((r == c) as i128)).collect())
            .collect();
        for col in 0..size {
            let piv = (col..size).find(|&r| m[r][col] != Ratio::from_integer(0)).expect("nonsingular");
            m.swap(piv, col);
            inv.swap(piv, col);
            let p = m[col][col];
            for c in 0..size {
                m[col][c] /= p;
                inv[col][c] /= p;
            }
            for r in 0..size {
                if r != col && m[r][col] != Ratio::from_integer(0) {
                    let q = m[r][col];
                    for c in 0..size {
                        let (mc, ic) = (m[col][c], inv[col][c]);
                        m[r][c] -= q * mc;
                        inv[r][c] -= q * ic;
                    }
                }
            }
        }
        let adj = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = *x * Ratio::from_integer(det);
                        debug_assert!(y.is_integer());
                        y.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(BarycentricSolver { adj, det })
    }

    fn contains(&self, x: &[i64]) -> bool {
        let d = x.len();
        self.adj.iter().all(|row| {
            let s: i128 = (0..d).map(|k| row[k] * x[k] as i128).sum::<i128>() + row[d];
            s == 0 || (s > 0) == (self.det > 0)
        })
    }
}

/// Terminality by enumerating every lattice point in the bounding box of `P`.
///
/// Membership uses exact barycentric coordinates in the simplices `Δ_i`,
/// `i ∈ s_+ ∪ s_−`; each of `s_+` and `s_−` alone already covers `P`.
pub fn oracle_terminal_polytope(w: &StandardWeightMatrix) -> Result<TerminalityVerdict> {
    let n = w.n();
    let d = n - 2;
    if d > POLYTOPE_MAX_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    let rays = fan::kernel_rays(w)?;
    let (plus, minus) = w.sign_split();
    let solvers: Vec<BarycentricSolver> = plus
        .iter()
        .chain(&minus)
        .map(|&i| {
            let verts: Vec<&Vec<i64>> = (0..n).filter(|&j| j != i).map(|j| &rays.rays[j]).collect();
            BarycentricSolver::new(&verts)
        })
        .collect::<Result<_>>()?;

    let lo: Vec<i64> = (0..d).map(|r| rays.rays.iter().map(|v| v[r]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|r| rays.rays.iter().map(|v| v[r]).max().unwrap()).collect();
    let mut x = lo.clone();
    loop {
        let trivial = x.iter().all(|&c| c == 0) || rays.rays.iter().any(|v| *v == x);
        if !trivial && solvers.iter().any(|s| s.contains(&x)) {
            return Ok(TerminalityVerdict::non_terminal(
                Method::PolytopeOracle,
                Witness::LatticePoint { point: x, cone: None },
            ));
        }
        let mut pos = 0;
        loop {
            if pos == d {
                return Ok(TerminalityVerdict::terminal(Method::PolytopeOracle));
            }
            if x[pos] < hi[pos] {
                x[pos] += 1;
                break;
            }
            x[pos] = lo[pos];
            pos += 1;
        }
    }
}

/// True iff every weight vector obtained by deleting one entry has GCD 1.
pub fn wps_well_formed(weights: &[i64]) -> bool {
    weights.len() >= 2
        && weights.iter().all(|&x| x > 0)
        && (0..weights.len()).all(|skip| {
            weights
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .fold(0i128, |g, (_, &x)| lattice::gcd(g, x as i128).unwrap_or(0))
                == 1
        })
}

/// Terminality of the weighted projective space `P(weights)`:
/// `Σ_i {k·a_i/a} ∈ {2, …, N−2}` for every `k ∈ {2, …, a−2}`.
pub fn wps_terminal(weights: &[i64]) -> Result<bool> {
    if !wps_well_formed(weights) {
        return Err(Error::NotWellFormedWeights(weights.to_vec()));
    }
    let n = weights.len() as i128;
    let total: i128 = weights.iter().map(|&x| x as i128).sum();
    for k in 2..=total - 2 {
        let s: i128 = weights.iter().map(|&x| (k * x as i128) % total).sum();
        debug_assert_eq!(s % total, 0);
        let frac_sum = s / total;
        if frac_sum < 2 || frac_sum > n - 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{standardize, WeightMatrix};

    fn sw(s: &str) -> StandardWeightMatrix {
        standardize(&s.parse::<WeightMatrix>().unwrap()).unwrap()
    }

    #[test]
    fn invariants_p1_x_p1_vertex_3() {
        let inv = simplex_invariants(&sw("1,1,0,0;0,0,1,1"), 2).unwrap();
        assert_eq!(inv.g, 1);
        assert_eq!(inv.bezout, (0, 1));
        assert_eq!(inv.alpha, vec![1, 1, 0, 0]);
        assert_eq!(inv.alpha_sum, 2);
        assert_eq!(inv.beta, vec![0, 0, -1, -1]);
        assert_eq!(inv.beta_sum, -2);
        assert_eq!(inv.f, 2);
    }

    #[test]
    fn invariants_p1_x_p112_vertex_1() {
        let inv = simplex_invariants(&sw("1,1,0,0,0;0,0,1,1,2"), 0).unwrap();
        assert_eq!(inv.g, 1);
        assert_eq!(inv.alpha, vec![0, 0, -1, -1, -2]);
        assert_eq!(inv.alpha_sum, -4);
        assert_eq!(inv.beta, vec![-1, -1, 0, 0, 0]);
        assert_eq!(inv.f, 4);
    }

    #[test]
    fn diagonal_identities() {
        let w = sw("3,1,4,1,0;0,2,5,6,5");
        for i in 0..w.n() {
            if w.omega_cross(i) == 0 {
                continue;
            }
            let inv = simplex_invariants(&w, i).unwrap();
            assert_eq!(inv.alpha[i], 0);
            assert_eq!(inv.beta[i], -inv.g);
        }
    }

    #[test]
    fn mostly_empty_examples() {
        assert!(is_mostly_empty_prop1(&sw("1,1,0,0;0,0,1,1"), 2).unwrap());
        let w = sw("1,1,0,0,0;0,0,1,1,2");
        assert!(!is_mostly_empty_prop1(&w, 0).unwrap());
        let inv = simplex_invariants(&w, 0).unwrap();
        assert_eq!(prop1_witness(&inv).unwrap(), Some((2, 0)));
    }

    #[test]
    fn origin_outside_simplex() {
        // Origin has barycentrics (1, 1/3, 1/3, −2/3) in Δ_3; (e_1 + e_2 + e_4)/3
        // shares its fractional parts and is a genuine lattice point.
        let w = sw("1,1,1,2,0;0,1,1,3,1");
        let inv = simplex_invariants(&w, 3).unwrap();
        assert_eq!(inv.alpha, vec![3, 1, 1, 0, -2]);
        assert_eq!(prop1_witness(&inv).unwrap(), Some((1, 0)));
        assert!(!terminal_prop1(&w).unwrap().terminal);
        assert!(!oracle_terminal_fan(&w).unwrap().terminal);
        assert!(!oracle_terminal_polytope(&w).unwrap().terminal);
    }

    #[test]
    fn bad_bezout_rejected() {
        let w = sw("1,1,0,0;0,0,1,1");
        assert!(simplex_invariants_with_bezout(&w, 0, (2, 0)).is_err());
        assert!(simplex_invariants(&w, 9).is_err());
    }

    #[test]
    fn prop1_examples() {
        assert!(terminal_prop1(&sw("1,1,0,0;0,0,1,1")).unwrap().terminal);
        let v = terminal_prop1(&sw("1,1,0,0,0;0,0,1,1,2")).unwrap();
        assert!(!v.terminal);
        assert_eq!(v.witness, Some(Witness::Simplex { vertex: 0, k: 2, l: 0 }));
        assert!(terminal_prop1(&sw("1,1,0,0,0;0,0,1,1,1")).unwrap().terminal);
    }

    #[test]
    fn fan_oracle_examples() {
        let v = oracle_terminal_fan(&sw("1,1,0,0;0,0,1,1")).unwrap();
        assert!(v.terminal && v.witness.is_none());
        let w = sw("1,1,0,0,0;0,0,1,1,2");
        let v = oracle_terminal_fan(&w).unwrap();
        assert!(!v.terminal);
        let rays = fan::kernel_rays(&w).unwrap();
        let Some(Witness::LatticePoint { point, cone }) = v.witness else { panic!() };
        // ½(e_3 + e_4) = −e_5
        let minus_e5: Vec<i64> = rays.rays[4].iter().map(|x| -x).collect();
        assert_eq!(point, minus_e5);
        let cone = cone.unwrap();
        assert!(cone.contains(&2) && cone.contains(&3));
    }

    #[test]
    fn polytope_oracle_examples() {
        assert!(oracle_terminal_polytope(&sw("1,1,0,0;0,0,1,1")).unwrap().terminal);
        let w = sw("1,1,0,0,0;0,0,1,1,2");
        let v = oracle_terminal_polytope(&w).unwrap();
        let rays = fan::kernel_rays(&w).unwrap();
        let minus_e5: Vec<i64> = rays.rays[4].iter().map(|x| -x).collect();
        assert_eq!(v.witness, Some(Witness::LatticePoint { point: minus_e5, cone: None }));
        let big = sw("1,1,1,1,0,0,0;0,0,0,0,1,1,1");
        assert!(matches!(oracle_terminal_polytope(&big), Err(Error::DimensionTooLarge(5))));
    }

    #[test]
    fn wps_examples() {
        assert!(wps_terminal(&[1, 1, 1]).unwrap());
        assert!(!wps_terminal(&[1, 1, 2]).unwrap());
        assert!(wps_terminal(&[1, 1, 1, 1, 2]).unwrap());
        assert!(wps_terminal(&[1, 1]).unwrap());
        assert!(matches!(wps_terminal(&[2, 2, 1]), Err(Error::NotWellFormedWeights(_))));
        assert!(wps_terminal(&[0, 1, 1]).is_err());
    }

    #[test]
    fn verdict_json() {
        let v = terminal_prop1(&sw("1,1,0,0,0;0,0,1,1,2")).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"terminal":false,"method":"prop1","witness":{"kind":"simplex","vertex":0,"k":2,"l":0}}"#);
    }
}
