//! The fan of the toric variety defined by a weight matrix.
//!
//! Rays are the rows of an integer basis matrix `M` of the right kernel of
//! `W`; maximal cones are indexed by complements of the column pairs `{i, j}`
//! whose open cone contains `ω = (a, b)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::weights::StandardWeightMatrix;

/// Primitive ray generators `e_1, …, e_N` in `Z^(N−2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaySet {
    pub rays: Vec<Vec<i64>>,
}

impl RaySet {
    /// Ambient dimension `N − 2`.
    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub(crate) fn as_i128(&self) -> IntMatrix {
        self.rays.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
    }
}

/// Maximal cones as sorted index sets of size `N − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalConeSet {
    pub cones: Vec<Vec<usize>>,
}

impl MaximalConeSet {
    /// The omitted pair `{i, j}` for each cone.
    pub fn complements(&self, n: usize) -> Vec<(usize, usize)> {
        self.cones
            .iter()
            .map(|cone| {
                let mut missing = (0..n).filter(|k| !cone.contains(k));
                (missing.next().unwrap(), missing.next().unwrap())
            })
            .collect()
    }
}

/// Rays of the fan: rows of a kernel basis of `W`.
///
/// The kernel lattice is put in Hermite normal form before transposing, so
/// the result depends only on `W`. Fails if a ray is imprimitive or repeated
/// or if the rays do not span the lattice.
pub fn kernel_rays(w: &StandardWeightMatrix) -> Result<RaySet> {
    let n = w.n();
    let rows: IntMatrix = vec![
        w.a().iter().map(|&x| x as i128).collect(),
        w.b().iter().map(|&x| x as i128).collect(),
    ];
    let kernel = lattice::integer_kernel(&rows, n)?;
    if kernel.len() != n - 2 {
        return Err(Error::Invalid(format!("weight matrix has rank {}", n - kernel.len())));
    }
    let basis = lattice::hermite_normal_form(&kernel)?;
    let rays: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            basis
                .iter()
                .map(|row| i64::try_from(row[i]).map_err(|_| Error::Overflow("ray entry")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let set = RaySet { rays };
    check_rays(&set)?;
    Ok(set)
}

fn check_rays(set: &RaySet) -> Result<()> {
    for (i, r) in set.rays.iter().enumerate() {
        let g = r.iter().try_fold(0i128, |g, &x| lattice::gcd(g, x as i128))?;
        if g != 1 {
            return Err(Error::ImprimitiveRay(i));
        }
        if let Some(j) = set.rays[..i].iter().position(|q| q == r) {
            return Err(Error::RepeatedRay(j, i));
        }
    }
    let hnf = lattice::hermite_normal_form(&set.as_i128())?;
    let unimodular = hnf.len() == set.dim() && (0..hnf.len()).all(|k| hnf[k][k] == 1);
    if !unimodular {
        return Err(Error::RaysDoNotSpan);
    }
    Ok(())
}

/// True iff `ω` is a strictly positive combination of columns `i` and `j`.
pub fn omega_in_open_cone(w: &StandardWeightMatrix, i: usize, j: usize) -> bool {
    let (di, dj) = (w.column(i), w.column(j));
    let omega = (w.sum_a(), w.sum_b());
    let cross = |p: (i64, i64), q: (i64, i64)| (p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128).signum();
    let det = cross(di, dj);
    det != 0 && cross(omega, dj) == det && cross(di, omega) == det
}

/// Maximal cones: complements of the pairs whose open cone contains `ω`.
pub fn maximal_cones(w: &StandardWeightMatrix) -> MaximalConeSet {
    let n = w.n();
    let mut cones = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if omega_in_open_cone(w, i, j) {
                cones.push((0..n).filter(|&k| k != i && k != j).collect());
            }
        }
    }
    MaximalConeSet { cones }
}

/// Generator matrix of a cone: column `m` is the ray `e_{cone[m]}`.
pub(crate) fn cone_matrix(rays: &RaySet, cone: &[usize]) -> IntMatrix {
    let d = rays.dim();
    (0..d).map(|r| cone.iter().map(|&k| rays.rays[k][r] as i128).collect()).collect()
}

/// Rays and maximal cones together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rays: RaySet,
    pub cones: MaximalConeSet,
}

impl Fan {
    pub fn new(w: &StandardWeightMatrix) -> Result<Self> {
        let rays = kernel_rays(w)?;
        let cones = maximal_cones(w);
        if cones.cones.is_empty() {
            return Err(Error::EmptyFan);
        }
        Ok(Fan { rays, cones })
    }

    /// Absolute determinant of each maximal cone's generators.
    pub fn cone_indices(&self) -> Result<Vec<i128>> {
        self.cones
            .cones
            .iter()
            .map(|cone| {
                let det = lattice::determinant(&cone_matrix(&self.rays, cone))?;
                if det == 0 {
                    return Err(Error::DegenerateCone(cone.clone()));
                }
                Ok(det.abs())
            })
            .collect()
    }
}

/// Smooth iff every maximal cone is unimodular.
pub fn is_smooth(w: &StandardWeightMatrix) -> Result<bool> {
    Ok(Fan::new(w)?.cone_indices()?.iter().all(|&d| d == 1))
}
