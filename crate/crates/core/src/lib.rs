//! Cell-centered Lagrangian hydrodynamics on moving triangular meshes.
//!
//! The solver evolves `(τ, v, S)` per cell with an entropy-conservative
//! scheme ([`ecl`]), an entropy-stable scheme ([`esl`]), or an adaptive
//! blend of the two ([`hybrid`]). Total energy is not evolved; it is
//! conserved as a consequence of the compatible discretization and is
//! audited by [`timeloop`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod boundary;
pub mod ecl;
pub mod eos;
pub mod error;
pub mod esl;
pub mod geometry;
pub mod hybrid;
pub mod io;
pub mod state;
pub mod timeloop;
pub mod vec2;
pub mod verification;

pub use eos::EosParams;
pub use error::{Error, Result};
pub use geometry::{BoundaryTag, Constraint, CornerGeometry, EdgeKind, Mesh};
pub use state::{CellState, MassField, Primitive, Rates};
pub use vec2::{Sym2, Vec2};
