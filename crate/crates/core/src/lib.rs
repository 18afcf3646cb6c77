//! Terminality of Picard-rank-two toric Fano varieties given by 2×N weight
//! matrices, with fans, period growth coefficients and dataset generation.
//!
//! ```
//! use terminal_fano::{standardize, terminal_prop1, WeightMatrix};
//!
//! let w: WeightMatrix = "1,1,0,0,0;0,0,1,1,2".parse().unwrap();
//! let verdict = terminal_prop1(&standardize(&w).unwrap()).unwrap();
//! assert!(!verdict.terminal);
//! ```

pub mod bench;
pub mod classifier;
pub mod datagen;
pub mod error;
pub mod fan;
pub mod formats;
pub mod lattice;
pub mod period;
pub mod terminality;
pub mod weights;

pub use error::{Error, Result};
pub use fan::{is_smooth, kernel_rays, maximal_cones, Fan, MaximalConeSet, RaySet};
pub use period::{growth_coefficients, growth_point, solve_balance, GrowthPoint};
pub use terminality::{
    oracle_terminal_fan, oracle_terminal_polytope, terminal_prop1, wps_terminal, Method, TerminalityVerdict,
    Witness,
};
pub use weights::{canonical_key, standardize, validate, StandardWeightMatrix, ValidationReport, WeightMatrix};
