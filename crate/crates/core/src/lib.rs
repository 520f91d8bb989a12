//! Riemann solvers for the Aw-Rascle traffic model closed with the extended
//! Chaplygin pressure `p = A (rho/(1 - a rho))^Gamma - B/rho^kappa`.
//!
//! - [`eos`]: the pressure law and characteristic speeds
//! - [`exact_riemann`]: exact shock/rarefaction-plus-contact solutions
//! - [`limit_analysis`]: delta-shock predictions as `a, A -> 0`
//! - [`upwind_scheme`]: split coefficient matrix upwind scheme
//! - [`harness`]: experiment presets, config parsing and CSV output

pub mod eos;
pub mod error;
pub mod exact_riemann;
pub mod harness;
pub mod limit_analysis;
mod roots;
pub mod upwind_scheme;

pub use eos::{EosParams, State};
pub use error::{Error, Result};
pub use exact_riemann::{FirstWave, Region, RiemannSolution, SolutionKind};
pub use limit_analysis::{LimitPrediction, LimitRegion, SweepRow};
pub use upwind_scheme::{Field, Grid, SchemeConfig};
