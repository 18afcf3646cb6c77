//! Growth coefficients `A`, `B` of the regularized quantum period.
//!
//! The balance point `[1 : ν]` is the unique positive root of
//! `F(ν) = Σ c_i·log(a_i + b_i·ν)` with `c_i = a_i·b − b_i·a` on the interval
//! where every `a_i + b_i·ν` is positive. That interval may extend below zero
//! when no column lies on the vertical axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{fano_index, StandardWeightMatrix};

/// Landscape coordinates of one weight matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub nu: f64,
    pub p: Vec<f64>,
    #[serde(rename = "A")]
    pub growth_a: f64,
    /// `-∞` if some `p_i` vanishes.
    #[serde(rename = "B")]
    pub growth_b: f64,
    pub ell: i64,
    pub dim: usize,
}

const MAX_EXPANSIONS: usize = 60;
const MAX_BISECTIONS: usize = 200;

/// `F(ν)`; terms with `c_i = 0` are skipped.
pub fn balance(w: &StandardWeightMatrix, nu: f64) -> f64 {
    (0..w.n())
        .filter_map(|i| {
            let c = w.omega_cross(i) as f64;
            (c != 0.0).then(|| c * (w.a()[i] as f64 + w.b()[i] as f64 * nu).ln())
        })
        .sum()
}

/// Left end of the admissible interval: `a_i + b_i·ν > 0` for all `i` iff `ν > nu_min`.
pub fn admissible_lower_bound(w: &StandardWeightMatrix) -> f64 {
    w.columns()
        .filter(|&(_, b)| b > 0)
        .map(|(a, b)| -(a as f64) / b as f64)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The root of the balance equation with `μ = 1`.
///
/// `F` tends to `+∞` at the left end of the admissible interval and to `−∞`
/// as `ν → ∞`. A sign change is bracketed from `ν = 1` by doubling upwards or
/// halving the distance to the left end, then bisected until the bracket
/// cannot shrink in binary64.
pub fn solve_balance(w: &StandardWeightMatrix) -> Result<f64> {
    let f = |nu: f64| balance(w, nu);
    let at_one = f(1.0);
    if at_one == 0.0 {
        return Ok(1.0);
    }
    let left = admissible_lower_bound(w);
    let (mut lo, mut hi) = (1.0f64, 1.0f64);
    let mut bracketed = false;
    for _ in 0..MAX_EXPANSIONS {
        if at_one > 0.0 {
            hi *= 2.0;
            if f(hi) < 0.0 {
                bracketed = true;
                break;
            }
            lo = hi;
        } else {
            lo = left + 0.5 * (lo - left);
            if lo <= left {
                break;
            }
            if f(lo) > 0.0 {
                bracketed = true;
                break;
            }
            hi = lo;
        }
    }
    if !bracketed {
        return Err(Error::NoRoot(format!("no sign change bracketed for {w} on [{lo:e}, {hi:e}]")));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// `p`, `A` and `B` at the balance point `ν`.
pub fn growth_coefficients(w: &StandardWeightMatrix, nu: f64) -> GrowthPoint {
    let n = w.n();
    let denom = w.sum_a() as f64 + nu * w.sum_b() as f64;
    let p: Vec<f64> = (0..n).map(|i| (w.a()[i] as f64 + nu * w.b()[i] as f64) / denom).collect();
    let growth_a = -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>();
    let ell = fano_index(w);
    let dim = n - 2;
    let growth_b = if p.iter().any(|&x| x <= 0.0) {
        log::warn!("{w}: some p_i vanishes at ν = {nu}; B is undefined");
        f64::NEG_INFINITY
    } else {
        let l2 = (ell as f64).powi(2);
        let weighted: f64 = (0..n).map(|i| (w.omega_cross(i) as f64).powi(2) / (l2 * p[i])).sum();
        -(dim as f64 / 2.0) * (2.0 * std::f64::consts::PI).ln()
            - 0.5 * p.iter().map(|x| x.ln()).sum::<f64>()
            - 0.5 * weighted.ln()
    };
    GrowthPoint { nu, p, growth_a, growth_b, ell, dim }
}

/// [`solve_balance`] followed by [`growth_coefficients`].
pub fn growth_point(w: &StandardWeightMatrix) -> Result<GrowthPoint> {
    Ok(growth_coefficients(w, solve_balance(w)?))
}
