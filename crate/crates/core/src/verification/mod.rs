//! Oracles and experiment definitions used by the tests and the driver.

pub mod cases;
pub mod norms;
pub mod reference1d;
pub mod riemann;
pub mod vortex;

pub use cases::{CaseName, CaseSetup, TestCaseSpec};
pub use norms::{l2_errors, observed_order, scatter_profile, Axis, FieldErrors, ProfilePoint};
pub use riemann::{ExactRiemann, RiemannProblem, RiemannState};
pub use vortex::Vortex;
